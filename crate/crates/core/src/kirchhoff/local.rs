//! Local structure of the graph polynomial at a 3- or 4-valent vertex, and
//! the two-edge surgery at a 4-valent vertex.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graphs::{Edge, Graph};
use crate::polyring::{x, Polynomial};

use super::dodgson::{dodgson, DodgsonBackend, DodgsonSpec};

fn halve(p: &Polynomial, what: &str) -> Result<Polynomial> {
    p.exact_div(&Polynomial::constant(2))
        .ok_or_else(|| Error::DivisibilityFailure(format!("{what} is not even")))
}

/// `s` with `p = s * q` for `s` in {1, -1}, or 0 when neither holds.
pub fn sign_between(p: &Polynomial, q: &Polynomial) -> i8 {
    if p == q {
        1
    } else if *p == -q {
        -1
    } else {
        0
    }
}

fn check_valency(g: &Graph, v: usize, want: usize) -> Result<Vec<Edge>> {
    if v >= g.vertex_count() {
        return Err(Error::UnknownVertex(v));
    }
    let d = g.degree(v);
    let inc = g.incident(v);
    if d != want || inc.iter().any(|e| e.is_loop()) {
        return Err(Error::WrongValency {
            vertex: v,
            expected: want,
            found: d,
        });
    }
    Ok(inc)
}

/// `Psi_G = f0 (a1 a2 + a2 a3 + a1 a3) + (f1 + f2) a3 + (f1 + f3) a2
/// + (f2 + f3) a1 + f123` around a 3-valent vertex with edges `a1, a2, a3`.
#[derive(Clone, Debug)]
pub struct ThreeValentData {
    /// Incident edge labels in the roles 1, 2, 3.
    pub edges: [u32; 3],
    pub f0: Polynomial,
    pub f: [Polynomial; 3],
    pub f123: Polynomial,
    /// `f_k = sign_k * Psi^{i,j}_k`; 0 records a mismatch.
    pub minor_signs: [i8; 3],
}

impl ThreeValentData {
    /// Roles follow the incident edges in label order.
    pub fn new(g: &Graph, v: usize, backend: DodgsonBackend) -> Result<ThreeValentData> {
        let inc = check_valency(g, v, 3)?;
        ThreeValentData::with_roles(g, v, [inc[0].label, inc[1].label, inc[2].label], backend)
    }

    /// Roles given explicitly as a permutation of the incident edges.
    pub fn with_roles(
        g: &Graph,
        v: usize,
        edges: [u32; 3],
        backend: DodgsonBackend,
    ) -> Result<ThreeValentData> {
        let inc = check_valency(g, v, 3)?;
        if g.vertex_count() < 3 {
            return Err(Error::TooFewVertices {
                needed: 3,
                found: g.vertex_count(),
            });
        }
        let mut sorted = edges;
        sorted.sort_unstable();
        let want: Vec<u32> = inc.iter().map(|e| e.label).collect();
        if sorted.as_slice() != want.as_slice() {
            return Err(Error::InvalidDodgsonSpec(format!(
                "{edges:?} are not the edges at vertex {v}"
            )));
        }
        let d = |s: DodgsonSpec| dodgson(g, &s, backend);
        let [e1, e2, e3] = edges;
        let f0 = d(DodgsonSpec::principal(&[e1, e2], &[e3]))?;
        // s_i = Psi^i_{jk} = f_j + f_k
        let s = [
            d(DodgsonSpec::principal(&[e1], &[e2, e3]))?,
            d(DodgsonSpec::principal(&[e2], &[e1, e3]))?,
            d(DodgsonSpec::principal(&[e3], &[e1, e2]))?,
        ];
        let f = [
            halve(&(&(&s[1] + &s[2]) - &s[0]), "f1")?,
            halve(&(&(&s[0] + &s[2]) - &s[1]), "f2")?,
            halve(&(&(&s[0] + &s[1]) - &s[2]), "f3")?,
        ];
        let f123 = d(DodgsonSpec::principal(&[], &[e1, e2, e3]))?;
        let mut minor_signs = [0i8; 3];
        for k in 0..3 {
            let (i, j) = match k {
                0 => (e2, e3),
                1 => (e1, e3),
                _ => (e1, e2),
            };
            let m = d(DodgsonSpec::new(&[i], &[j], &[edges[k]]))?;
            minor_signs[k] = sign_between(&f[k], &m);
        }
        Ok(ThreeValentData {
            edges,
            f0,
            f,
            f123,
            minor_signs,
        })
    }

    /// Right-hand side of the local expansion of `Psi_G`.
    pub fn reconstruct(&self) -> Polynomial {
        let [a1, a2, a3] = self.edges.map(x);
        let [f1, f2, f3] = &self.f;
        let quad = &(&(&a1 * &a2) + &(&a2 * &a3)) + &(&a1 * &a3);
        let mut out = &self.f0 * &quad;
        out = &out + &(&(f1 + f2) * &a3);
        out = &out + &(&(f1 + f3) * &a2);
        out = &out + &(&(f2 + f3) * &a1);
        &out + &self.f123
    }

    /// `f0 f123 = f1 f2 + f2 f3 + f1 f3`.
    pub fn quadratic_identity_holds(&self) -> bool {
        let [f1, f2, f3] = &self.f;
        let rhs = &(&(f1 * f2) + &(f2 * f3)) + &(f1 * f3);
        &self.f0 * &self.f123 == rhs
    }
}

/// Index triple helper: the two roles other than `i` and `t`, ascending.
fn others(i: usize, t: usize) -> (usize, usize) {
    let mut o = (1..=4).filter(|&r| r != i && r != t);
    (o.next().unwrap(), o.next().unwrap())
}

/// Data around a 4-valent vertex, computed on the localized graph in which
/// the vertex is 0 and its edges are labeled 1..4.
#[derive(Clone, Debug)]
pub struct FourValentData {
    /// The localized graph.
    pub local: Graph,
    /// Original label of each local label `1..=N`.
    pub original_labels: Vec<u32>,
    /// `a = Psi^{ijk}_t`.
    pub a: Polynomial,
    /// `b[(i, j)] = b^i_j`, solved from `Psi^{ij}_{kt} = b^i_k + b^i_t`.
    pub b: BTreeMap<(usize, usize), Polynomial>,
    /// `c[(i, j)] = c^{i,j}`, signed `Psi^{i,j}_{kt}` summing to `Psi^i_{jkt}`.
    pub c: BTreeMap<(usize, usize), Polynomial>,
    /// `b^i_j = sign * Psi^{ki,it}_j` with `k < t`; 0 records a mismatch.
    pub b_signs: BTreeMap<(usize, usize), i8>,
    /// `c^{i,j} = sign * Psi^{i,j}_{kt}`; 0 when no sign choice works.
    pub c_signs: BTreeMap<(usize, usize), i8>,
    /// `Psi^{ij}_{kt}` keyed by the sorted pair `(i, j)` with `i < j`.
    pub pair_minors: BTreeMap<(usize, usize), Polynomial>,
    /// `Psi^{12,34}`.
    pub psi_12_34: Polynomial,
    backend: DodgsonBackend,
}

impl FourValentData {
    pub fn new(g: &Graph, v: usize, backend: DodgsonBackend) -> Result<FourValentData> {
        check_valency(g, v, 4)?;
        let (local, original_labels) = g.localize(v)?;
        let d = |s: DodgsonSpec| dodgson(&local, &s, backend);
        let a = d(DodgsonSpec::principal(&[1, 2, 3], &[4]))?;
        let mut pair_minors = BTreeMap::new();
        for i in 1..=4usize {
            for j in i + 1..=4 {
                let (k, t) = others(i, j);
                let p = d(DodgsonSpec::principal(&[i as u32, j as u32], &[k as u32, t as u32]))?;
                pair_minors.insert((i, j), p);
            }
        }
        let pm = |i: usize, j: usize| &pair_minors[&(i.min(j), i.max(j))];
        let mut b = BTreeMap::new();
        let mut b_signs = BTreeMap::new();
        for i in 1..=4usize {
            for j in 1..=4usize {
                if i == j {
                    continue;
                }
                let (k, t) = others(i, j);
                // Psi^{ik}_{jt} = b^i_j + b^i_t, Psi^{it}_{jk} = b^i_j + b^i_k,
                // Psi^{ij}_{kt} = b^i_k + b^i_t
                let v = halve(&(&(pm(i, k) + pm(i, t)) - pm(i, j)), "b")?;
                let m = d(DodgsonSpec::new(
                    &[k as u32, i as u32],
                    &[i as u32, t as u32],
                    &[j as u32],
                ))?;
                b_signs.insert((i, j), sign_between(&v, &m));
                b.insert((i, j), v);
            }
        }
        let mut c = BTreeMap::new();
        let mut c_signs = BTreeMap::new();
        for i in 1..=4usize {
            let rest: Vec<usize> = (1..=4).filter(|&r| r != i).collect();
            let target = d(DodgsonSpec::principal(
                &[i as u32],
                &rest.iter().map(|&r| r as u32).collect::<Vec<_>>(),
            ))?;
            let mut minors = Vec::new();
            for &j in &rest {
                let (k, t) = others(i, j);
                minors.push(d(DodgsonSpec::new(&[i as u32], &[j as u32], &[k as u32, t as u32]))?);
            }
            let mut found = None;
            for mask in 0..8u32 {
                let s: Vec<i8> = (0..3).map(|n| if mask >> n & 1 == 1 { -1 } else { 1 }).collect();
                let sum = minors
                    .iter()
                    .zip(&s)
                    .fold(Polynomial::zero(), |acc, (m, &sg)| &acc + &m.scale(sg as i128));
                if sum == target {
                    found = Some(s);
                    break;
                }
            }
            for (n, &j) in rest.iter().enumerate() {
                let sg = found.as_ref().map_or(0, |s| s[n]);
                c_signs.insert((i, j), sg);
                c.insert((i, j), minors[n].scale(if sg == 0 { 1 } else { sg as i128 }));
            }
        }
        let psi_12_34 = d(DodgsonSpec::new(&[1, 2], &[3, 4], &[]))?;
        Ok(FourValentData {
            local,
            original_labels,
            a,
            b,
            c,
            b_signs,
            c_signs,
            pair_minors,
            psi_12_34,
            backend,
        })
    }

    fn minor(&self, i: &[u32], j: &[u32], k: &[u32]) -> Polynomial {
        dodgson(&self.local, &DodgsonSpec::new(i, j, k), self.backend).expect("valid local spec")
    }

    /// `Psi^{ijk}_t = a` and `Psi^{ijk,ijt} = +-a` for every role choice.
    pub fn check_a(&self) -> bool {
        (1..=4u32).all(|t| {
            let rest: Vec<u32> = (1..=4).filter(|&r| r != t).collect();
            let principal = self.minor(&rest, &rest, &[t]) == self.a;
            let mixed = (0..3).all(|drop| {
                let k = rest[drop];
                let ij: Vec<u32> = rest.iter().copied().filter(|&r| r != k).collect();
                let mut row = ij.clone();
                row.push(k);
                let mut col = ij;
                col.push(t);
                sign_between(&self.minor(&row, &col, &[]), &self.a) != 0
            });
            principal && mixed
        })
    }

    /// `Psi^{ij}_{kt} = b^i_k + b^i_t` and `Psi^i_{jkt} = sum_j c^{i,j}`.
    pub fn check_sums(&self) -> bool {
        let b_ok = (1..=4usize).all(|i| {
            (1..=4usize).filter(|&j| j != i).all(|j| {
                let (k, t) = others(i, j);
                self.pair_minors[&(i.min(j), i.max(j))] == &self.b[&(i, k)] + &self.b[&(i, t)]
            })
        });
        let c_ok = self.c_signs.values().all(|&s| s != 0);
        b_ok && c_ok
    }

    /// `(b^i_t)^2 - Psi^{ij}_{kt} Psi^{ik}_{jt}` is a multiple of `a`, for
    /// every `i != t` and both orders of the other two roles.
    pub fn check_square_mod_a(&self) -> bool {
        let pm = |i: usize, j: usize| &self.pair_minors[&(i.min(j), i.max(j))];
        self.b.iter().all(|(&(i, t), bt)| {
            let (j, k) = others(i, t);
            let diff = &(bt * bt) - &(pm(i, j) * pm(i, k));
            self.a.divides(&diff)
        })
    }

    /// Signs `(s, r)` with `Psi^{12,34} = s (b^2_4 - b^1_4) = r (b^2_3 - b^1_3)`.
    pub fn psi_12_34_signs(&self) -> Option<(i8, i8)> {
        let l = &self.b[&(2, 4)] - &self.b[&(1, 4)];
        let r = &self.b[&(2, 3)] - &self.b[&(1, 3)];
        match (sign_between(&self.psi_12_34, &l), sign_between(&self.psi_12_34, &r)) {
            (0, _) | (_, 0) => None,
            pair => Some(pair),
        }
    }

    /// Whether the sign tables agree with the calibrated ones.
    pub fn matches_calibration(&self) -> bool {
        B_SIGNS.iter().all(|(k, s)| self.b_signs[k] == *s)
            && C_SIGNS.iter().all(|(k, s)| self.c_signs[k] == *s)
            && self.psi_12_34_signs() == Some(E8888_SIGNS)
    }
}

/// Signs `b^i_j = sign * Psi^{ki,it}_j` (`k < t`) under the fixed matrix
/// convention, calibrated on `K_5` and checked on other graphs in tests.
pub const B_SIGNS: [((usize, usize), i8); 12] = [
    ((1, 2), 1),
    ((1, 3), -1),
    ((1, 4), 1),
    ((2, 1), 1),
    ((2, 3), -1),
    ((2, 4), 1),
    ((3, 1), 1),
    ((3, 2), -1),
    ((3, 4), 1),
    ((4, 1), 1),
    ((4, 2), -1),
    ((4, 3), 1),
];

/// `(s, r)` of [`FourValentData::psi_12_34_signs`]. The two differences
/// `b^2_4 - b^1_4` and `b^2_3 - b^1_3` are negatives of each other: both
/// `b^1` and `b^2` satisfy `b_3 + b_4 = Psi^{12}_{34}`.
pub const E8888_SIGNS: (i8, i8) = (1, -1);

/// `(-1)^{r_b}` with `r_b = k - t` when `(k - i)(t - i) > 0` and
/// `k - t - 1` otherwise, `k < t` the roles other than `i, j`.
pub fn textbook_b_sign(i: usize, j: usize) -> i8 {
    let (k, t) = others(i, j);
    let (k, t, i) = (k as i64, t as i64, i as i64);
    let r = if (k - i) * (t - i) > 0 { k - t } else { k - t - 1 };
    if r.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^{i - j - 1}`.
pub fn textbook_c_sign(i: usize, j: usize) -> i8 {
    if (i as i64 - j as i64 - 1).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Signs `c^{i,j} = sign * Psi^{i,j}_{kt}`, calibrated like [`B_SIGNS`].
pub const C_SIGNS: [((usize, usize), i8); 12] = [
    ((1, 2), 1),
    ((1, 3), -1),
    ((1, 4), 1),
    ((2, 1), 1),
    ((2, 3), 1),
    ((2, 4), -1),
    ((3, 1), -1),
    ((3, 2), 1),
    ((3, 4), 1),
    ((4, 1), 1),
    ((4, 2), -1),
    ((4, 3), 1),
];

/// Result of the two-edge surgery.
#[derive(Clone, Debug)]
pub struct Surgery {
    pub graph: Graph,
    pub s: u32,
    pub t: u32,
}

/// Removes the 4-valent vertex `v` and joins its neighbors in pairs by two
/// new edges `s` (first pair) and `t` (second pair). Without an explicit
/// pairing, `s` joins the far ends of the two lowest-labeled edges at `v` and
/// `t` the other two.
pub fn surgery(g: &Graph, v: usize, pairing: Option<[[usize; 2]; 2]>) -> Result<Surgery> {
    let inc = check_valency(g, v, 4)?;
    let nbrs: Vec<usize> = inc.iter().map(|e| e.other(v)).collect();
    let pairing = pairing.unwrap_or([[nbrs[0], nbrs[1]], [nbrs[2], nbrs[3]]]);
    let mut given: Vec<usize> = pairing.iter().flatten().copied().collect();
    let mut have = nbrs.clone();
    given.sort_unstable();
    have.sort_unstable();
    if given != have {
        return Err(Error::MalformedPairing(format!(
            "{pairing:?} is not a pairing of the neighbors {nbrs:?}"
        )));
    }
    let shift = |y: usize| if y > v { y - 1 } else { y };
    let base = g.remove_vertex(v)?;
    let s = g.max_label() + 1;
    let t = s + 1;
    let mut edges = base.edges().to_vec();
    edges.push(Edge::new(s, shift(pairing[0][0]), shift(pairing[0][1])));
    edges.push(Edge::new(t, shift(pairing[1][0]), shift(pairing[1][1])));
    Ok(Surgery {
        graph: Graph::from_edges(base.vertex_count(), edges)?,
        s,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle, zigzag};
    use crate::kirchhoff::{graph_polynomial, GraphPolyBackend};

    const SUB: DodgsonBackend = DodgsonBackend::Subgraphs;

    #[test]
    fn k4_three_valent() {
        let g = complete_graph(4);
        let psi = graph_polynomial(&g, GraphPolyBackend::Trees).unwrap();
        for v in 0..4 {
            let t = ThreeValentData::new(&g, v, SUB).unwrap();
            assert!(t.quadratic_identity_holds());
            assert_eq!(t.reconstruct(), psi);
            assert!(t.minor_signs.iter().all(|&s| s != 0));
        }
    }

    #[test]
    fn valency_errors() {
        let k5 = complete_graph(5);
        assert!(matches!(
            ThreeValentData::new(&k5, 0, SUB),
            Err(Error::WrongValency { .. })
        ));
        let k4 = complete_graph(4);
        assert!(FourValentData::new(&k4, 0, SUB).is_err());
        assert!(ThreeValentData::new(&cycle(3), 0, SUB).is_err());
    }

    #[test]
    fn k5_matches_calibration() {
        let d = FourValentData::new(&complete_graph(5), 2, SUB).unwrap();
        assert!(d.check_a() && d.check_sums() && d.check_square_mod_a());
        assert!(d.matches_calibration());
    }

    #[test]
    fn textbook_signs_relate_to_calibration() {
        for ((i, j), s) in B_SIGNS {
            assert_eq!(textbook_b_sign(i, j), -s);
        }
        for ((i, j), s) in C_SIGNS {
            assert_eq!(textbook_c_sign(i, j), s);
        }
    }

    #[test]
    fn surgery_shape_and_errors() {
        let g = zigzag(4, true).unwrap();
        let s = surgery(&g, 0, None).unwrap();
        assert_eq!(s.graph.edge_count(), g.edge_count() - 2);
        assert_eq!(s.graph.vertex_count(), g.vertex_count() - 1);
        let n: Vec<usize> = g.incident(0).iter().map(|e| e.other(0)).collect();
        assert!(surgery(&g, 0, Some([[n[0], n[0]], [n[2], n[3]]])).is_err());
    }
}
