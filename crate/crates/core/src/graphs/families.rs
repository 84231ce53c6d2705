//! Named graphs and generated corpora.

use std::collections::BTreeSet;

use rand::Rng;

use super::graph::Graph;
use super::iso::canonical_form;
use crate::error::{Error, Result};

/// Complete graph `K_n`, edges `(i, j)` with `i < j` in lexicographic order.
pub fn complete_graph(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    Graph::new(n, &pairs).expect("valid complete graph")
}

/// Cycle on `n` vertices.
pub fn cycle(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &pairs).expect("valid cycle")
}

/// `k` parallel edges between two vertices.
pub fn banana(k: usize) -> Graph {
    Graph::new(2, &vec![(0, 1); k]).expect("valid banana")
}

/// Circulant `C_n(1, 2)`: edges `{i, i+1}` and `{i, i+2}` mod `n`.
pub fn circulant_12(n: usize) -> Graph {
    let mut pairs = Vec::with_capacity(2 * n);
    for i in 0..n {
        pairs.push((i, (i + 1) % n));
        pairs.push((i, (i + 2) % n));
    }
    Graph::new(n, &pairs).expect("valid circulant")
}

/// Zigzag family. `completed` gives the 4-regular `C_{h+2}(1,2)`; otherwise
/// vertex 0 is removed and labels are compacted to `1..=2h`.
pub fn zigzag(h: usize, completed: bool) -> Result<Graph> {
    if h < 3 {
        return Err(Error::ZigzagTooSmall(h));
    }
    let full = circulant_12(h + 2);
    if completed {
        Ok(full)
    } else {
        Ok(full.remove_vertex(0)?.compact_labels())
    }
}

/// `K4` with edge 1 subdivided by a new vertex (a 2-valent vertex).
pub fn subdivided_k4() -> Graph {
    Graph::new(5, &[(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        .expect("valid graph")
}

/// All connected multigraphs (self-loops allowed) with `1..=max_edges`
/// edges and no isolated vertices, one per isomorphism class, with labels in
/// canonical order.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    // every connected graph arises from one with one edge fewer by adding
    // an edge between old vertices or towards one new vertex
    let mut level: BTreeSet<(usize, Vec<(usize, usize)>)> = BTreeSet::new();
    level.insert((1, vec![(0, 0)]));
    level.insert((2, vec![(0, 1)]));
    for k in 1..=max_edges {
        for (n, pairs) in &level {
            out.push(Graph::new(*n, pairs).expect("valid"));
        }
        if k == max_edges {
            break;
        }
        let mut next = BTreeSet::new();
        for (n, pairs) in &level {
            for a in 0..*n {
                for b in a..=*n {
                    let n2 = if b == *n { n + 1 } else { *n };
                    let mut p = pairs.clone();
                    p.push((a, b));
                    let g = Graph::new(n2, &p).expect("valid");
                    next.insert((n2, canonical_form(&g)));
                }
            }
        }
        level = next;
    }
    out
}

/// Random connected multigraph: a random spanning tree on `n` vertices plus
/// extra edges (no self-loops) up to `n_edges`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, n_edges: usize) -> Graph {
    assert!(n >= 2 && n_edges + 1 >= n);
    let mut pairs = Vec::with_capacity(n_edges);
    for v in 1..n {
        pairs.push((rng.gen_range(0..v), v));
    }
    while pairs.len() < n_edges {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        pairs.push((a, b));
    }
    // shuffle labels so trees are not always the low labels
    for i in (1..pairs.len()).rev() {
        let j = rng.gen_range(0..=i);
        pairs.swap(i, j);
    }
    Graph::new(n, &pairs).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zigzag_counts() {
        for h in 3..=8 {
            let g = zigzag(h, true).unwrap();
            assert_eq!(g.edge_count(), 2 * h + 4);
            assert_eq!(g.loop_number(), h + 3);
            assert!(g.degrees().iter().all(|&d| d == 4));
            let z = zigzag(h, false).unwrap();
            assert_eq!((z.edge_count(), z.vertex_count(), z.loop_number()), (2 * h, h + 1, h));
        }
        assert!(zigzag(2, true).is_err());
    }

    #[test]
    fn small_corpus_sizes() {
        // loop, single edge; then double loop, loop plus edge, banana, path
        let g = connected_multigraphs(2);
        assert_eq!(g.iter().filter(|g| g.edge_count() == 1).count(), 2);
        assert_eq!(g.iter().filter(|g| g.edge_count() == 2).count(), 4);
    }
}
