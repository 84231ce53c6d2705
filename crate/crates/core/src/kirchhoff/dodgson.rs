use std::fmt;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::polyring::{Monomial, Polynomial};

use super::bareiss::determinant;
use super::trees::{complement_monomial, incidence_minor, spanning_forests, spanning_trees};

/// The matrix `[[D(a), E], [-E^T, 0]]` with edge rows in label order and the
/// highest vertex column removed.
#[derive(Clone, Debug)]
pub struct ExpandedMatrix {
    /// Edge label of each of the first `edge_rows` rows/columns.
    pub labels: Vec<u32>,
    pub entries: Vec<Vec<Polynomial>>,
}

impl ExpandedMatrix {
    pub fn new(g: &Graph) -> ExpandedMatrix {
        let ne = g.edge_count();
        let nv = g.vertex_count().saturating_sub(1);
        let size = ne + nv;
        let mut m = vec![vec![Polynomial::zero(); size]; size];
        for (r, e) in g.edges().iter().enumerate() {
            m[r][r] = Polynomial::var(e.var());
            if e.is_loop() {
                continue;
            }
            for (x, s) in [(e.u, 1), (e.v, -1)] {
                if x < nv {
                    m[r][ne + x] = Polynomial::constant(s);
                    m[ne + x][r] = Polynomial::constant(-s);
                }
            }
        }
        ExpandedMatrix {
            labels: g.labels(),
            entries: m,
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// `M(I; J)` with `a_k = 0` for `k` in `K`.
    pub fn minor(&self, spec: &DodgsonSpec) -> Vec<Vec<Polynomial>> {
        let ne = self.labels.len();
        let row_keep = |r: usize| r >= ne || !spec.i.contains(&self.labels[r]);
        let col_keep = |c: usize| c >= ne || !spec.j.contains(&self.labels[c]);
        let mut out = Vec::new();
        for r in (0..self.size()).filter(|&r| row_keep(r)) {
            let mut row = Vec::new();
            for c in (0..self.size()).filter(|&c| col_keep(c)) {
                let mut e = self.entries[r][c].clone();
                if r == c && r < ne && spec.k.contains(&self.labels[r]) {
                    e = Polynomial::zero();
                }
                row.push(e);
            }
            out.push(row);
        }
        out
    }

    pub fn determinant(&self) -> Polynomial {
        determinant(self.entries.clone())
    }
}

/// Names the minor `Psi^{I,J}_K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DodgsonSpec {
    pub i: Vec<u32>,
    pub j: Vec<u32>,
    pub k: Vec<u32>,
}

impl DodgsonSpec {
    pub fn new(i: &[u32], j: &[u32], k: &[u32]) -> DodgsonSpec {
        let s = |v: &[u32]| {
            let mut v = v.to_vec();
            v.sort_unstable();
            v
        };
        DodgsonSpec {
            i: s(i),
            j: s(j),
            k: s(k),
        }
    }

    /// `Psi^I_K = Psi^{I,I}_K`.
    pub fn principal(i: &[u32], k: &[u32]) -> DodgsonSpec {
        DodgsonSpec::new(i, i, k)
    }

    pub fn graph() -> DodgsonSpec {
        DodgsonSpec::default()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDodgsonSpec(m));
        if self.i.len() != self.j.len() {
            return bad(format!("|I| = {} but |J| = {}", self.i.len(), self.j.len()));
        }
        for set in [&self.i, &self.j, &self.k] {
            if set.windows(2).any(|w| w[0] == w[1]) {
                return bad("repeated edge".into());
            }
            for &l in set {
                g.edge(l)?;
            }
        }
        if self.k.iter().any(|l| self.i.contains(l) || self.j.contains(l)) {
            return bad("K meets I or J".into());
        }
        Ok(())
    }
}

impl fmt::Display for DodgsonSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "Psi^{{{};{}}}_{{{}}}", j(&self.i), j(&self.j), j(&self.k))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GraphPolyBackend {
    #[default]
    Trees,
    Determinant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DodgsonBackend {
    /// Enumeration over pairs of spanning trees with incidence-minor signs.
    #[default]
    Subgraphs,
    /// Fraction-free determinant of the minor.
    Elimination,
}

/// `Psi_G`: sum over spanning trees of the product of the other edges.
pub fn graph_polynomial(g: &Graph, backend: GraphPolyBackend) -> Result<Polynomial> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    Ok(match backend {
        GraphPolyBackend::Trees => Polynomial::from_terms(
            spanning_trees(g)
                .iter()
                .map(|t| (complement_monomial(g, t, &[]), 1)),
        ),
        GraphPolyBackend::Determinant => ExpandedMatrix::new(g).determinant(),
    })
}

/// `Psi^{I,J}_{G,K} = det M_G(I; J)` with `a_k = 0` on `K`.
pub fn dodgson(g: &Graph, spec: &DodgsonSpec, backend: DodgsonBackend) -> Result<Polynomial> {
    spec.validate(g)?;
    Ok(match backend {
        DodgsonBackend::Elimination => determinant(ExpandedMatrix::new(g).minor(spec)),
        DodgsonBackend::Subgraphs => dodgson_subgraphs(g, spec),
    })
}

fn dodgson_subgraphs(g: &Graph, spec: &DodgsonSpec) -> Polynomial {
    let (i, j) = (&spec.i, &spec.j);
    let mut forced: Vec<u32> = spec.k.clone();
    forced.extend(j.iter().filter(|l| !i.contains(l)));
    let mut terms: Vec<(Monomial, i128)> = Vec::new();
    for t1 in spanning_forests(g, 1, &forced, i) {
        // T2 = (T1 + I) - J
        let mut t2: Vec<u32> = t1
            .iter()
            .chain(i.iter())
            .filter(|l| !j.contains(l))
            .copied()
            .collect();
        t2.sort_unstable();
        let d2 = incidence_minor(g, &t2);
        if d2 == 0 {
            continue;
        }
        let d1 = incidence_minor(g, &t1);
        let mut parity = 0usize;
        let mut mono = Monomial::ONE;
        for e in g.edges() {
            if i.contains(&e.label) || t1.contains(&e.label) {
                continue;
            }
            parity += i.iter().filter(|&&x| x < e.label).count();
            parity += j.iter().filter(|&&x| x < e.label).count();
            mono = mono.mul(Monomial::var(e.var(), 1));
        }
        let sign = if parity.is_multiple_of(2) { 1 } else { -1 };
        terms.push((mono, sign * d1 * d2));
    }
    Polynomial::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{banana, complete_graph, cycle};
    use crate::polyring::x;

    #[test]
    fn small_graph_polynomials() {
        let c3 = cycle(3);
        let want = &(&x(1) + &x(2)) + &x(3);
        for b in [GraphPolyBackend::Trees, GraphPolyBackend::Determinant] {
            assert_eq!(graph_polynomial(&c3, b).unwrap(), want);
            assert_eq!(graph_polynomial(&banana(2), b).unwrap(), &x(1) + &x(2));
        }
        let k4 = graph_polynomial(&complete_graph(4), GraphPolyBackend::Trees).unwrap();
        assert_eq!(k4.len(), 16);
        assert!(k4.is_homogeneous() && k4.degree() == 3);
    }

    #[test]
    fn backends_agree_on_k4_minors() {
        let g = complete_graph(4);
        let specs = [
            DodgsonSpec::new(&[1], &[2], &[]),
            DodgsonSpec::new(&[1, 3], &[2, 6], &[4]),
            DodgsonSpec::new(&[2], &[2], &[5]),
            DodgsonSpec::new(&[1, 2], &[1, 5], &[]),
        ];
        for s in &specs {
            let a = dodgson(&g, s, DodgsonBackend::Subgraphs).unwrap();
            let b = dodgson(&g, s, DodgsonBackend::Elimination).unwrap();
            assert_eq!(a, b, "{s}");
        }
    }

    #[test]
    fn triangle_minor_is_unit() {
        let p = dodgson(&cycle(3), &DodgsonSpec::new(&[1], &[2], &[]), DodgsonBackend::Subgraphs)
            .unwrap();
        assert_eq!(p.constant_value().map(i128::abs), Some(1));
    }

    #[test]
    fn isolating_a_vertex_gives_zero() {
        // edges 1, 2, 3 of K4 all meet vertex 0
        let s = DodgsonSpec::principal(&[1, 2, 3], &[]);
        for b in [DodgsonBackend::Subgraphs, DodgsonBackend::Elimination] {
            assert!(dodgson(&complete_graph(4), &s, b).unwrap().is_zero());
        }
    }

    #[test]
    fn invalid_specs() {
        let g = cycle(3);
        assert!(dodgson(&g, &DodgsonSpec::new(&[1], &[], &[]), DodgsonBackend::Subgraphs).is_err());
        assert!(dodgson(&g, &DodgsonSpec::new(&[1], &[1], &[1]), DodgsonBackend::Subgraphs).is_err());
        assert!(dodgson(&g, &DodgsonSpec::new(&[9], &[1], &[]), DodgsonBackend::Subgraphs).is_err());
    }
}
