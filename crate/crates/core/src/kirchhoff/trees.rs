//! Spanning trees and forests, incidence minors.

use crate::graphs::{Edge, Graph};
use crate::polyring::{Coeff, Monomial, Polynomial};

use super::bareiss::determinant;

#[derive(Clone)]
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

/// Number of components of the spanning subgraph formed by `edges`.
fn component_count(n: usize, edges: impl Iterator<Item = Edge>) -> usize {
    let mut d = Dsu::new(n);
    let mut c = n;
    for e in edges {
        if d.union(e.u, e.v) {
            c -= 1;
        }
    }
    c
}

/// Spanning forests with exactly `components` trees that contain every edge
/// in `forced` and avoid every edge in `forbidden`, as sorted label lists.
pub fn spanning_forests(
    g: &Graph,
    components: usize,
    forced: &[u32],
    forbidden: &[u32],
) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    if components == 0 || components > n.max(1) {
        return Vec::new();
    }
    let need = n - components;
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| !forbidden.contains(&e.label) && !e.is_loop())
        .copied()
        .collect();
    let mut d = Dsu::new(n);
    let mut chosen = Vec::new();
    for e in &edges {
        if forced.contains(&e.label) {
            if !d.union(e.u, e.v) {
                return Vec::new();
            }
            chosen.push(e.label);
        }
    }
    if forced.iter().any(|l| !edges.iter().any(|e| e.label == *l)) {
        return Vec::new();
    }
    let free: Vec<Edge> = edges
        .iter()
        .filter(|e| !forced.contains(&e.label))
        .copied()
        .collect();
    // the free edges must be able to bring the forest down to `components`
    if component_count(n, edges.iter().copied()) > components {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(&free, 0, need, &mut d, &mut chosen, &mut out, n, components);
    for t in &mut out {
        t.sort_unstable();
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn rec(
    free: &[Edge],
    i: usize,
    need: usize,
    d: &mut Dsu,
    chosen: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
    n: usize,
    components: usize,
) {
    if chosen.len() == need {
        out.push(chosen.clone());
        return;
    }
    if i == free.len() || free.len() - i < need - chosen.len() {
        return;
    }
    let e = free[i];
    // include
    let (a, b) = (d.find(e.u), d.find(e.v));
    if a != b {
        let saved = d.clone();
        d.union(a, b);
        chosen.push(e.label);
        rec(free, i + 1, need, d, chosen, out, n, components);
        chosen.pop();
        *d = saved;
    }
    // exclude, if the rest can still reach the target component count
    let mut probe = d.clone();
    let mut c = (0..n).filter(|&x| probe.find(x) == x).count();
    for f in &free[i + 1..] {
        if probe.union(f.u, f.v) {
            c -= 1;
        }
    }
    if c <= components {
        rec(free, i + 1, need, d, chosen, out, n, components);
    }
}

pub fn spanning_trees(g: &Graph) -> Vec<Vec<u32>> {
    spanning_forests(g, 1, &[], &[])
}

/// `det E[T]`: incidence rows of `labels` in label order, vertex columns
/// `0..n-1` (the last vertex column removed), orientation low to high id.
pub fn incidence_minor(g: &Graph, labels: &[u32]) -> Coeff {
    let n = g.vertex_count();
    if labels.len() + 1 != n.max(1) {
        return 0;
    }
    if n <= 1 {
        return 1;
    }
    let m: Vec<Vec<Coeff>> = labels
        .iter()
        .map(|&l| {
            let e = g.edge(l).expect("label in graph");
            let mut row = vec![0; n - 1];
            if !e.is_loop() {
                if e.u < n - 1 {
                    row[e.u] += 1;
                }
                if e.v < n - 1 {
                    row[e.v] -= 1;
                }
            }
            row
        })
        .collect();
    determinant(m)
}

/// Product of the variables of `g`'s edges outside `keep` and `skip`.
pub(crate) fn complement_monomial(g: &Graph, keep: &[u32], skip: &[u32]) -> Monomial {
    g.edges()
        .iter()
        .filter(|e| !keep.contains(&e.label) && !skip.contains(&e.label))
        .fold(Monomial::ONE, |m, e| m.mul(Monomial::var(e.var(), 1)))
}

/// Spanning forest polynomial: forests with one tree per block, each tree
/// containing its block and no vertex of another block; every vertex of `g`
/// lies in some tree.
pub fn forest_polynomial(g: &Graph, blocks: &[Vec<usize>]) -> crate::Result<Polynomial> {
    let mut seen = vec![false; g.vertex_count()];
    for b in blocks {
        if b.is_empty() {
            return Err(crate::Error::InvalidPartition("empty block".into()));
        }
        for &x in b {
            if x >= g.vertex_count() {
                return Err(crate::Error::UnknownVertex(x));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(crate::Error::InvalidPartition(format!("vertex {x} repeated")));
            }
        }
    }
    let forests = spanning_forests(g, blocks.len(), &[], &[]);
    let mut terms = Vec::new();
    for f in forests {
        let mut d = Dsu::new(g.vertex_count());
        for &l in &f {
            let e = g.edge(l).expect("label");
            d.union(e.u, e.v);
        }
        let roots: Vec<usize> = blocks.iter().map(|b| d.find(b[0])).collect();
        let ok = blocks.iter().zip(&roots).all(|(b, &r)| b.iter().all(|&x| d.find(x) == r))
            && (0..roots.len()).all(|i| (i + 1..roots.len()).all(|j| roots[i] != roots[j]));
        if ok {
            terms.push((complement_monomial(g, &f, &[]), 1));
        }
    }
    Ok(Polynomial::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle};

    #[test]
    fn tree_counts() {
        assert_eq!(spanning_trees(&cycle(3)).len(), 3);
        assert_eq!(spanning_trees(&complete_graph(4)).len(), 16);
        assert_eq!(spanning_trees(&complete_graph(5)).len(), 125);
    }

    #[test]
    fn incidence_minors_are_units_on_trees() {
        let g = complete_graph(4);
        for t in spanning_trees(&g) {
            assert_eq!(incidence_minor(&g, &t).abs(), 1);
        }
        assert_eq!(incidence_minor(&g, &[1, 2, 4]), 0);
    }

    #[test]
    fn two_forests_of_triangle() {
        // vertices 0 and 1 in different trees: {e2}, {e3} (edges 1-2 and 0-2)
        let g = cycle(3);
        let p = forest_polynomial(&g, &[vec![0], vec![1]]).unwrap();
        assert_eq!(p.len(), 2);
        assert!(forest_polynomial(&g, &[vec![0], vec![0]]).is_err());
    }
}
