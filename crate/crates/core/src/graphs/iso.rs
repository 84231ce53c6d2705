//! Brute-force isomorphism for small graphs.

use super::graph::Graph;

/// Vertex signature used to restrict permutations: degree, loop count and
/// the sorted multiset of neighbor degrees.
fn signatures(g: &Graph) -> Vec<(usize, usize, Vec<usize>)> {
    let deg = g.degrees();
    let adj = g.adjacency();
    (0..g.vertex_count())
        .map(|x| {
            let mut nd: Vec<usize> = Vec::new();
            for y in 0..g.vertex_count() {
                if y != x {
                    for _ in 0..adj[x][y] {
                        nd.push(deg[y]);
                    }
                }
            }
            nd.sort_unstable();
            (deg[x], adj[x][x], nd)
        })
        .collect()
}

/// Calls `visit(perm)` for every permutation that maps vertices to positions
/// ordered by signature, i.e. signature classes stay contiguous and sorted.
fn for_each_ordering(g: &Graph, mut visit: impl FnMut(&[usize])) {
    let sig = signatures(g);
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by(|&a, &b| sig[a].cmp(&sig[b]));
    // classes as runs in `order`
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &x in &order {
        match classes.last_mut() {
            Some(c) if sig[c[0]] == sig[x] => c.push(x),
            _ => classes.push(vec![x]),
        }
    }
    let mut perm = vec![0; g.vertex_count()];
    fn rec(
        classes: &mut [Vec<usize>],
        ci: usize,
        pos: usize,
        perm: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if ci == classes.len() {
            visit(perm);
            return;
        }
        let len = classes[ci].len();
        permute(classes, ci, 0, len, pos, perm, visit);
    }
    fn permute(
        classes: &mut [Vec<usize>],
        ci: usize,
        k: usize,
        len: usize,
        pos: usize,
        perm: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if k == len {
            for (i, &x) in classes[ci].iter().enumerate() {
                perm[x] = pos + i;
            }
            rec(classes, ci + 1, pos + len, perm, visit);
            return;
        }
        for i in k..len {
            classes[ci].swap(k, i);
            permute(classes, ci, k + 1, len, pos, perm, visit);
            classes[ci].swap(k, i);
        }
    }
    rec(&mut classes, 0, 0, &mut perm, &mut visit);
}

/// Lexicographically smallest sorted edge list over signature-respecting
/// vertex orderings. Equal forms mean isomorphic graphs (labels ignored).
pub fn canonical_form(g: &Graph) -> Vec<(usize, usize)> {
    let mut best: Option<Vec<(usize, usize)>> = None;
    for_each_ordering(g, |perm| {
        let mut e: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (perm[e.u], perm[e.v]);
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    });
    best.unwrap_or_default()
}

/// Isomorphism test ignoring edge labels. Intended for small graphs.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle};

    #[test]
    fn relabeled_graphs_are_isomorphic() {
        let g = cycle(5);
        let h = g.permute_vertices(&[3, 0, 4, 1, 2]);
        assert!(is_isomorphic(&g, &h));
        assert!(!is_isomorphic(&g, &complete_graph(5)));
    }

    #[test]
    fn path_vs_star() {
        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!is_isomorphic(&path, &star));
    }
}
