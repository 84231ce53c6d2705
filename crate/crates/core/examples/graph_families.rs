//! Named graphs, the generated corpus and the JSON form.
//!
//! cargo run --example graph_families

use c2core::graphs::{circulant_12, complete_graph, connected_multigraphs, is_isomorphic, zigzag, Graph};

fn main() -> c2core::Result<()> {
    for h in 3..=6 {
        let z = zigzag(h, false)?;
        let c = zigzag(h, true)?;
        println!(
            "zigzag {h}: {} vertices, {} edges, {} loops, log-divergent {}; completed: {} vertices, 4-regular {}",
            z.vertex_count(),
            z.edge_count(),
            z.loop_number(),
            z.is_log_divergent(),
            c.vertex_count(),
            c.degrees().iter().all(|&d| d == 4)
        );
    }
    // the completed 3- and 4-loop zigzags are K5 and the octahedron
    println!("completed zigzag 3 is K5: {}", is_isomorphic(&zigzag(3, true)?, &complete_graph(5)));
    println!("completed zigzag 4 is C6(1,2): {}", is_isomorphic(&zigzag(4, true)?, &circulant_12(6)));

    let corpus = connected_multigraphs(6);
    println!("connected multigraphs with at most 6 edges, up to isomorphism: {}", corpus.len());

    let k4 = complete_graph(4);
    let json = k4.to_json();
    println!("K4 as JSON: {json}");
    assert_eq!(Graph::from_json(&json)?, k4);

    let (local, map) = complete_graph(5).localize(2)?;
    println!("K5 localized at vertex 2, new labels of the old edges: {map:?}");
    println!("{}", local.to_dot());
    Ok(())
}
