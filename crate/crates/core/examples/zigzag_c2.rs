//! c2 of completed zigzags from the 4-valent formula and semilinear
//! reduction, checked at several q.
//!
//! cargo run --release --example zigzag_c2 [h...]

use std::time::Instant;

use c2core::graphs::zigzag;
use c2core::reduction::{infer_constant, slr_pipeline, Formula, SlrOptions};

fn main() -> c2core::Result<()> {
    let hs: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let hs = if hs.is_empty() { vec![3, 4, 5] } else { hs };
    for h in hs {
        let t = Instant::now();
        let g = zigzag(h, true)?;
        let p = match slr_pipeline(&g, Formula::FourValent { vertex: 0 }, SlrOptions::default())? {
            Ok(p) => p,
            Err(f) => {
                println!("zigzag {h}: {f}");
                continue;
            }
        };
        let r = infer_constant(&p, &[2, 3, 5, 7])?;
        println!(
            "zigzag {h}: c2 = {} (expected {}), consistent {}, |c2| < {}: {}, {:.1}s",
            r.c2,
            -((h * (h + 2)) as i64),
            r.consistent,
            r.bound,
            r.within_bound,
            t.elapsed().as_secs_f64()
        );
        for (name, v) in &r.summand_values {
            println!("  {name}: {v}");
        }
        for x in &r.residues {
            println!("  q = {}: residue {}", x.q, x.residue);
        }
    }
    Ok(())
}
