use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polyring::{Var, MAX_VARS};

/// An edge with a stable label. Endpoints are stored with `u <= v`; the
/// edge is oriented from `u` to `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub label: u32,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(label: u32, a: usize, b: usize) -> Edge {
        Edge {
            label,
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// Polynomial variable of this edge.
    pub fn var(&self) -> Var {
        Var::new(self.label).expect("edge labels fit the variable range")
    }
}

/// Labeled multigraph. Vertices are `0..vertex_count`; edges are kept in
/// increasing label order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInvariants {
    pub n_edges: usize,
    pub n_vertices: usize,
    pub loop_number: usize,
    pub delta: i64,
    pub degrees: Vec<usize>,
}

impl Graph {
    /// Graph with labels `1..=N` in the order given.
    pub fn new(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| Edge::new(i as u32 + 1, a, b))
            .collect();
        Graph::from_edges(vertex_count, edges)
    }

    /// Graph with explicit labels, which must be distinct and at most 31.
    pub fn from_edges(vertex_count: usize, mut edges: Vec<Edge>) -> Result<Graph> {
        edges.sort_by_key(|e| e.label);
        for w in edges.windows(2) {
            if w[0].label == w[1].label {
                return Err(Error::InvalidOrder(format!("duplicate edge label {}", w[0].label)));
            }
        }
        for e in &edges {
            if e.v >= vertex_count {
                return Err(Error::UnknownVertex(e.v));
            }
            if e.label as usize >= MAX_VARS || e.label == 0 {
                return Err(Error::VarOutOfRange(e.label));
            }
        }
        Ok(Graph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> Vec<u32> {
        self.edges.iter().map(|e| e.label).collect()
    }

    pub fn max_label(&self) -> u32 {
        self.edges.last().map(|e| e.label).unwrap_or(0)
    }

    pub fn edge(&self, label: u32) -> Result<Edge> {
        self.edges
            .binary_search_by_key(&label, |e| e.label)
            .map(|i| self.edges[i])
            .map_err(|_| Error::UnknownEdge(label))
    }

    pub fn has_edge(&self, label: u32) -> bool {
        self.edge(label).is_ok()
    }

    /// Valency; a self-loop counts twice.
    pub fn degree(&self, x: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == x) as usize + (e.v == x) as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    /// Edges incident to `x`, in label order.
    pub fn incident(&self, x: usize) -> Vec<Edge> {
        self.edges.iter().filter(|e| e.touches(x)).copied().collect()
    }

    pub fn vertices_of_degree(&self, k: usize) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == k)
            .map(|(i, _)| i)
            .collect()
    }

    /// Component index per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, e.u);
            let b = find(&mut parent, e.v);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut ids = BTreeMap::new();
        let mut comp = vec![0; self.vertex_count];
        for x in 0..self.vertex_count {
            let r = find(&mut parent, x);
            let next = ids.len();
            comp[x] = *ids.entry(r).or_insert(next);
        }
        (comp, ids.len())
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `N - |V| + k`.
    pub fn loop_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    pub fn invariants(&self) -> GraphInvariants {
        let h = self.loop_number();
        GraphInvariants {
            n_edges: self.edges.len(),
            n_vertices: self.vertex_count,
            loop_number: h,
            delta: 2 * h as i64 - self.edges.len() as i64,
            degrees: self.degrees(),
        }
    }

    pub fn is_log_divergent(&self) -> bool {
        self.edges.len() == 2 * self.loop_number()
    }

    pub fn delete_edge(&self, label: u32) -> Result<Graph> {
        self.edge(label)?;
        Ok(Graph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().filter(|e| e.label != label).copied().collect(),
        })
    }

    /// Merges the endpoints of `label`; the larger vertex id disappears and
    /// higher ids shift down by one.
    pub fn contract_edge(&self, label: u32) -> Result<Graph> {
        let e = self.edge(label)?;
        if e.is_loop() {
            return Err(Error::SelfLoopContraction(label));
        }
        let (keep, gone) = (e.u, e.v);
        let map = |x: usize| {
            if x == gone {
                keep
            } else if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .filter(|f| f.label != label)
            .map(|f| Edge::new(f.label, map(f.u), map(f.v)))
            .collect();
        Ok(Graph {
            vertex_count: self.vertex_count - 1,
            edges,
        })
    }

    /// Removes `x` with its incident edges; higher ids shift down by one.
    pub fn remove_vertex(&self, x: usize) -> Result<Graph> {
        if x >= self.vertex_count {
            return Err(Error::UnknownVertex(x));
        }
        let map = |y: usize| if y > x { y - 1 } else { y };
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.touches(x))
            .map(|e| Edge::new(e.label, map(e.u), map(e.v)))
            .collect();
        Ok(Graph {
            vertex_count: self.vertex_count - 1,
            edges,
        })
    }

    /// Adds a vertex joined to the four 3-valent vertices. New edges get
    /// labels after the current maximum.
    pub fn complete(&self) -> Result<Graph> {
        let deg = self.degrees();
        let three: Vec<usize> = (0..self.vertex_count).filter(|&x| deg[x] == 3).collect();
        if three.len() != 4 || deg.iter().any(|&d| d != 3 && d != 4) {
            return Err(Error::NotPhi4Shape);
        }
        let w = self.vertex_count;
        let mut edges = self.edges.clone();
        let base = self.max_label();
        for (i, &x) in three.iter().enumerate() {
            edges.push(Edge::new(base + 1 + i as u32, x, w));
        }
        Graph::from_edges(w + 1, edges)
    }

    /// Relabels edges to `1..=N` keeping their order.
    pub fn compact_labels(&self) -> Graph {
        Graph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| Edge::new(i as u32 + 1, e.u, e.v))
                .collect(),
        }
    }

    /// Applies a label map; it must be injective.
    pub fn relabel_edges(&self, map: impl Fn(u32) -> u32) -> Result<Graph> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(map(e.label), e.u, e.v))
            .collect();
        Graph::from_edges(self.vertex_count, edges)
    }

    /// Renumbers vertices by `perm[old] = new`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Graph {
        Graph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(e.label, perm[e.u], perm[e.v]))
                .collect(),
        }
    }

    /// Moves `x` to vertex 0 and relabels its incident edges `1..=deg` in
    /// their original label order; the remaining edges follow in order.
    /// Returns the new graph and `old_label[new_label - 1]`.
    pub fn localize(&self, x: usize) -> Result<(Graph, Vec<u32>)> {
        if x >= self.vertex_count {
            return Err(Error::UnknownVertex(x));
        }
        let perm: Vec<usize> = (0..self.vertex_count)
            .map(|y| match y.cmp(&x) {
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Less => y + 1,
                std::cmp::Ordering::Greater => y,
            })
            .collect();
        let moved = self.permute_vertices(&perm);
        let (near, far): (Vec<Edge>, Vec<Edge>) = moved.edges.iter().partition(|e| e.touches(0));
        let mut old = Vec::with_capacity(self.edges.len());
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in near.iter().chain(far.iter()) {
            old.push(e.label);
            edges.push(Edge::new(old.len() as u32, e.u, e.v));
        }
        Ok((
            Graph {
                vertex_count: self.vertex_count,
                edges,
            },
            old,
        ))
    }

    /// Multiplicity matrix, loops on the diagonal.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count;
        let mut a = vec![vec![0; n]; n];
        for e in &self.edges {
            a[e.u][e.v] += 1;
            if e.u != e.v {
                a[e.v][e.u] += 1;
            }
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn delete_and_contract() {
        let t = triangle();
        let d = t.delete_edge(1).unwrap();
        assert_eq!(d.loop_number(), 0);
        assert_eq!(d.labels(), vec![2, 3]);
        let c = t.contract_edge(1).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.loop_number(), 1);
        assert!(t.delete_edge(7).is_err());
    }

    #[test]
    fn self_loop_contraction_rejected() {
        let c = triangle().contract_edge(1).unwrap().contract_edge(2).unwrap();
        assert!(c.edge(3).unwrap().is_loop());
        assert!(matches!(c.contract_edge(3), Err(Error::SelfLoopContraction(3))));
    }

    #[test]
    fn remove_vertex_shifts_ids() {
        let t = triangle().remove_vertex(0).unwrap();
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.edges(), &[Edge::new(2, 0, 1)]);
        assert!(triangle().remove_vertex(3).is_err());
    }

    #[test]
    fn completion_needs_phi4_shape() {
        assert!(matches!(triangle().complete(), Err(Error::NotPhi4Shape)));
    }

    #[test]
    fn localize_puts_vertex_first() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)]).unwrap();
        let (l, old) = g.localize(3).unwrap();
        assert_eq!(old, vec![3, 4, 5, 1, 2]);
        assert!(l.edges()[..3].iter().all(|e| e.u == 0));
        assert_eq!(l.degree(0), 3);
    }
}
