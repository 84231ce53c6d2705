//! Denominator reduction of zigzag graphs.
//!
//! cargo run --release --example denominator_reduction [h]

use c2core::graphs::zigzag;
use c2core::reduction::denominator_reduce_greedy;

fn main() -> c2core::Result<()> {
    let hmax: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    for h in 3..=hmax {
        let g = zigzag(h, false)?;
        let v = g.vertices_of_degree(3)[0];
        let inc: Vec<u32> = g.incident(v).iter().map(|e| e.label).collect();
        let run = denominator_reduce_greedy(&g, [inc[0], inc[1], inc[2]])?;
        println!("zigzag {h}: {:?}, order {:?}, c2 = {:?}", run.status, run.order, run.c2());
        let sizes: Vec<usize> = run.steps.iter().map(|d| d.len()).collect();
        println!("  terms in D3, D4, ...: {sizes:?}");
    }
    Ok(())
}
