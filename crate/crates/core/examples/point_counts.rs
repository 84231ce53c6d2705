//! Exact point counts over F_q and c2 by brute force.
//!
//! cargo run --release --example point_counts

use c2core::counting::{c2_bruteforce, c2_bruteforce_sharded, count_affine, edge_space, FiniteField};
use c2core::graphs::{complete_graph, cycle, subdivided_k4, zigzag};
use c2core::kirchhoff::{graph_polynomial, GraphPolyBackend};

fn main() -> c2core::Result<()> {
    let tri = cycle(3);
    for q in [2, 3, 4, 5, 7] {
        let f = FiniteField::new(q)?;
        let psi = graph_polynomial(&tri, GraphPolyBackend::Trees)?;
        let n = count_affine(&[psi], edge_space(&tri), &f)?.count;
        println!("triangle, q = {q}: [Psi] = {n}, c2 = {}", c2_bruteforce(&tri, &f)?);
    }
    for q in [2, 3, 5, 7] {
        let f = FiniteField::new(q)?;
        println!(
            "q = {q}: c2(K4) = {}, c2(zigzag 4) = {}, c2(subdivided K4) = {}",
            c2_bruteforce(&complete_graph(4), &f)?,
            c2_bruteforce(&zigzag(4, false)?, &f)?,
            c2_bruteforce(&subdivided_k4(), &f)?
        );
    }
    let f = FiniteField::new(3)?;
    println!("c2(K5) at q = 3 on 4 shards: {}", c2_bruteforce_sharded(&complete_graph(5), &f, 4)?);
    Ok(())
}
