//! Kirchhoff polynomial, Dodgson minors and the local data at 3- and
//! 4-valent vertices.
//!
//! cargo run --example graph_polynomials

use c2core::graphs::{complete_graph, zigzag};
use c2core::kirchhoff::{
    dodgson, graph_polynomial, DodgsonBackend, DodgsonSpec, FourValentData, GraphPolyBackend, ThreeValentData,
};

fn main() -> c2core::Result<()> {
    let k4 = complete_graph(4);
    let trees = graph_polynomial(&k4, GraphPolyBackend::Trees)?;
    let det = graph_polynomial(&k4, GraphPolyBackend::Determinant)?;
    println!("Psi(K4) has {} terms, backends agree: {}", trees.len(), trees == det);

    let m = dodgson(&k4, &DodgsonSpec::new(&[1], &[2], &[]), DodgsonBackend::Subgraphs)?;
    let e = dodgson(&k4, &DodgsonSpec::new(&[1], &[2], &[]), DodgsonBackend::Elimination)?;
    println!("Psi^(1,2)(K4) = {m}  (elimination backend agrees: {})", m == e);

    let z = zigzag(4, false)?;
    let v = z.vertices_of_degree(3)[0];
    let t = ThreeValentData::new(&z, v, DodgsonBackend::Subgraphs)?;
    println!("zigzag 4 at vertex {v}, edges {:?}", t.edges);
    println!("  f0 = {}", t.f0);
    println!("  Psi rebuilt from f0..f3, f123: {}", t.reconstruct() == graph_polynomial(&z, GraphPolyBackend::Trees)?);
    println!("  f0 f123 = f1 f2 + f1 f3 + f2 f3: {}", t.quadratic_identity_holds());

    let d = FourValentData::new(&complete_graph(5), 0, DodgsonBackend::Subgraphs)?;
    println!("K5 at vertex 0: a = {}", d.a);
    println!("  Psi^(12,34) = {}", d.psi_12_34);
    println!("  sign tables match the calibration: {}", d.matches_calibration());
    Ok(())
}
