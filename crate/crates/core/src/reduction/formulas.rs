//! Counting formulas around 3- and 4-valent vertices, and the elimination of
//! one variable from a system of linear polynomials.

use serde::{Deserialize, Serialize};

use crate::counting::{c2_bruteforce, count_affine, count_parallel, edge_space, CountResult, FiniteField};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::kirchhoff::{dodgson, graph_polynomial, DodgsonBackend, DodgsonSpec, GraphPolyBackend, ThreeValentData};
use crate::polyring::{linear_split, var, Polynomial, Var, VarSet};

const BACKEND: DodgsonBackend = DodgsonBackend::Subgraphs;

fn incident_labels(g: &Graph, v: usize, want: usize) -> Result<Vec<u32>> {
    if v >= g.vertex_count() {
        return Err(Error::UnknownVertex(v));
    }
    let found = g.degree(v);
    if found != want {
        return Err(Error::WrongValency {
            vertex: v,
            expected: want,
            found,
        });
    }
    Ok(g.incident(v).iter().map(|e| e.label).collect())
}

fn without(space: VarSet, labels: &[u32]) -> VarSet {
    labels.iter().fold(space, |s, &l| s.without(var(l)))
}

/// The pair `(f0, f3)` at a 3-valent vertex and the ambient space of the
/// remaining edges.
pub fn three_valent_pair(g: &Graph, v: usize, roles: [u32; 3]) -> Result<(Polynomial, Polynomial, VarSet)> {
    let t = ThreeValentData::with_roles(g, v, roles, BACKEND)?;
    let ambient = without(edge_space(g), &roles);
    Ok((t.f0, t.f[2].clone(), ambient))
}

/// `[f0, f3]_q mod q`, which is `c_2(G)` mod `q` at a 3-valent vertex.
pub fn c2_three_valent(g: &Graph, v: usize, field: &FiniteField) -> Result<u64> {
    let inc = incident_labels(g, v, 3)?;
    c2_three_valent_roles(g, v, [inc[0], inc[1], inc[2]], field)
}

/// As [`c2_three_valent`] with the edge playing role 3 chosen explicitly.
pub fn c2_three_valent_roles(g: &Graph, v: usize, roles: [u32; 3], field: &FiniteField) -> Result<u64> {
    incident_labels(g, v, 3)?;
    if g.vertex_count() < 4 {
        return Err(Error::TooFewVertices {
            needed: 4,
            found: g.vertex_count(),
        });
    }
    let (f0, f3, ambient) = three_valent_pair(g, v, roles)?;
    Ok(count_affine(&[f0, f3], ambient, field)?.residue())
}

/// The five summands of the 4-valent formula at `v`, on the localized graph
/// whose edges at `v` are `1..4`.
#[derive(Clone, Debug)]
pub struct FourValentTargets {
    pub local: Graph,
    /// `Psi^{13,24}` and `Psi^{14,23}` in the space of the edges away from `v`.
    pub pair: (Polynomial, Polynomial),
    pub ambient: VarSet,
    /// For `i = 1..4`, the pair `(f0, f3)` of `G \ i` at `v` and its ambient.
    pub three_valent: Vec<(Polynomial, Polynomial, VarSet)>,
}

pub fn four_valent_targets(g: &Graph, v: usize) -> Result<FourValentTargets> {
    incident_labels(g, v, 4)?;
    if g.vertex_count() < 5 {
        return Err(Error::TooFewVertices {
            needed: 5,
            found: g.vertex_count(),
        });
    }
    let (local, _) = g.localize(v)?;
    let d = |i: &[u32], j: &[u32]| dodgson(&local, &DodgsonSpec::new(i, j, &[]), BACKEND);
    let pair = (d(&[1, 3], &[2, 4])?, d(&[1, 4], &[2, 3])?);
    let ambient = without(edge_space(&local), &[1, 2, 3, 4]);
    let mut three_valent = Vec::with_capacity(4);
    for i in 1..=4u32 {
        let gi = local.delete_edge(i)?;
        let roles: Vec<u32> = (1..=4).filter(|&r| r != i).collect();
        three_valent.push(three_valent_pair(&gi, 0, [roles[0], roles[1], roles[2]])?);
    }
    Ok(FourValentTargets {
        local,
        pair,
        ambient,
        three_valent,
    })
}

/// `-([Psi^{13,24}, Psi^{14,23}]_q + sum_i c_2(G \ i)) mod q` with every
/// count done directly.
pub fn c2_four_valent_count(g: &Graph, v: usize, field: &FiniteField, shards: usize) -> Result<u64> {
    let t = four_valent_targets(g, v)?;
    let q = field.order() as i128;
    let mut total = count_parallel(&[t.pair.0, t.pair.1], t.ambient, field, shards)?.count as i128;
    for (f0, f3, a) in t.three_valent {
        total += count_parallel(&[f0, f3], a, field, shards)?.count as i128;
    }
    Ok((-total).rem_euclid(q) as u64)
}

/// One term `sign * q^q_power * [polys]` of a count decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTerm {
    pub sign: i8,
    pub q_power: u32,
    pub polys: Vec<Polynomial>,
}

/// Rewrites `[f_1, ..., f_n]` over `A` as a signed sum of counts over
/// `A \ x`, for polynomials of degree at most one in `x`.
pub fn eliminate_multi(polys: &[Polynomial], x: Var) -> Result<Vec<CountTerm>> {
    let splits = polys
        .iter()
        .map(|f| linear_split(f, x))
        .collect::<Result<Vec<_>>>()?;
    let n = polys.len();
    let term = |sign, q_power, polys| CountTerm {
        sign,
        q_power,
        polys,
    };
    // conditions f^x_i = f_{x,i} = 0 for i < k
    let closed = |k: usize| -> Vec<Polynomial> {
        splits[..k]
            .iter()
            .flat_map(|s| [s.leading.clone(), s.constant.clone()])
            .collect()
    };
    if n == 0 {
        return Ok(vec![term(1, 1, Vec::new())]);
    }
    let mut out = vec![term(1, 1, closed(n))];
    if n == 1 {
        out.push(term(1, 0, Vec::new()));
    }
    for k in 0..n.saturating_sub(1) {
        let mut sys = closed(k);
        let p = &splits[k];
        for s in &splits[k + 1..] {
            sys.push(&(&p.leading * &s.constant) - &(&p.constant * &s.leading));
        }
        out.push(term(1, 0, sys));
    }
    for k in 1..n.saturating_sub(1) {
        out.push(term(-1, 0, closed(k)));
    }
    out.push(term(-1, 0, splits.iter().map(|s| s.leading.clone()).collect()));
    Ok(out)
}

/// Evaluates a decomposition by counting every term over `ambient`.
pub fn sum_terms(terms: &[CountTerm], ambient: VarSet, field: &FiniteField) -> Result<i128> {
    let q = field.order() as i128;
    let mut total = 0i128;
    for t in terms {
        let c = count_affine(&t.polys, ambient, field)?.count as i128;
        total += t.sign as i128 * q.pow(t.q_power) * c;
    }
    Ok(total)
}

/// An integer identity or a congruence between two computed sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceCheck {
    pub name: String,
    /// 0 for exact equality.
    pub modulus: u128,
    pub lhs: i128,
    pub rhs: i128,
}

impl CongruenceCheck {
    pub fn holds(&self) -> bool {
        if self.modulus == 0 {
            self.lhs == self.rhs
        } else {
            (self.lhs - self.rhs).rem_euclid(self.modulus as i128) == 0
        }
    }
}

fn psi(g: &Graph) -> Result<Polynomial> {
    graph_polynomial(g, GraphPolyBackend::Trees)
}

fn n(polys: &[Polynomial], a: VarSet, f: &FiniteField, shards: usize) -> Result<i128> {
    Ok(count_parallel(polys, a, f, shards)?.count as i128)
}

/// Elimination of two edges `e1`, `e2` from `[Psi_G]`, compared exactly.
pub fn two_edge_elimination_check(g: &Graph, e1: u32, e2: u32, field: &FiniteField) -> Result<CongruenceCheck> {
    let q = field.order() as i128;
    let all = edge_space(g);
    let d = |i: &[u32], j: &[u32], k: &[u32]| dodgson(g, &DodgsonSpec::new(i, j, k), BACKEND);
    let p = |i: &[u32], k: &[u32]| dodgson(g, &DodgsonSpec::principal(i, k), BACKEND);
    let a1 = all.without(var(e1));
    let a12 = a1.without(var(e2));
    let four = [p(&[e1, e2], &[])?, p(&[e1], &[e2])?, p(&[e2], &[e1])?, p(&[], &[e1, e2])?];
    let lhs = n(&[psi(g)?], all, field, 1)?;
    let rhs = q.pow(all.len() as u32 - 1) - n(&[p(&[e1], &[])?], a1, field, 1)?
        + q * q * n(&four, a12, field, 1)?
        + q * n(&[d(&[e1], &[e2], &[])?], a12, field, 1)?
        - q * n(&[four[0].clone(), four[2].clone()], a12, field, 1)?;
    Ok(CongruenceCheck {
        name: "two-edge elimination".into(),
        modulus: 0,
        lhs,
        rhs,
    })
}

/// `[Psi^{12}, Psi^1_2, Psi^2_1, Psi_{12}]_q mod q` at a 4-valent vertex.
pub fn four_minor_residue(g: &Graph, v: usize, field: &FiniteField, shards: usize) -> Result<u64> {
    incident_labels(g, v, 4)?;
    let (local, _) = g.localize(v)?;
    let p = |i: &[u32], k: &[u32]| dodgson(&local, &DodgsonSpec::principal(i, k), BACKEND);
    let four = [p(&[1, 2], &[])?, p(&[1], &[2])?, p(&[2], &[1])?, p(&[], &[1, 2])?];
    let a = without(edge_space(&local), &[1, 2]);
    let r: CountResult = count_parallel(&four, a, field, shards)?;
    Ok(r.residue())
}

/// The congruence for `[Psi^{1,2}]_q` modulo `q^2` at a 4-valent vertex,
/// with `c_2(G \ 3)` and `c_2(G \ 4)` from brute force.
pub fn minor_12_congruence_check(g: &Graph, v: usize, field: &FiniteField, shards: usize) -> Result<CongruenceCheck> {
    let t = four_valent_targets(g, v)?;
    let q = field.order() as i128;
    let local = &t.local;
    let m12 = dodgson(local, &DodgsonSpec::new(&[1], &[2], &[]), BACKEND)?;
    let lhs = n(&[m12], without(edge_space(local), &[1, 2]), field, shards)?;
    let pair = n(&[t.pair.0, t.pair.1], t.ambient, field, shards)?;
    let c3 = c2_bruteforce(&local.delete_edge(3)?, field)? as i128;
    let c4 = c2_bruteforce(&local.delete_edge(4)?, field)? as i128;
    Ok(CongruenceCheck {
        name: "Psi^1_2 mod q^2".into(),
        modulus: (q * q) as u128,
        lhs,
        rhs: q * (-pair - c3 - c4),
    })
}

/// `[Psi_G]_q = -q^2 ([Psi^{13,24}, Psi^{14,23}]_q + sum_i c_2(G \ i))
/// mod q^3`, with `c_2(G \ i)` from brute force.
pub fn four_valent_congruence_check(g: &Graph, v: usize, field: &FiniteField, shards: usize) -> Result<CongruenceCheck> {
    let t = four_valent_targets(g, v)?;
    let q = field.order() as i128;
    let lhs = n(&[psi(&t.local)?], edge_space(&t.local), field, shards)?;
    let mut inner = n(&[t.pair.0, t.pair.1], t.ambient, field, shards)?;
    for i in 1..=4 {
        inner += c2_bruteforce(&t.local.delete_edge(i)?, field)? as i128;
    }
    Ok(CongruenceCheck {
        name: "4-valent congruence mod q^3".into(),
        modulus: q.pow(3) as u128,
        lhs,
        rhs: -q * q * inner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_affine;
    use crate::graphs::{complete_graph, zigzag};
    use crate::polyring::x;

    #[test]
    fn three_valent_k4() {
        let g = complete_graph(4);
        for q in [2, 3, 5] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(c2_three_valent(&g, 0, &f).unwrap(), q - 1);
            for roles in [[1, 2, 3], [3, 1, 2], [2, 3, 1]] {
                assert_eq!(c2_three_valent_roles(&g, 0, roles, &f).unwrap(), q - 1);
            }
        }
        assert!(c2_three_valent(&complete_graph(5), 0, &FiniteField::new(2).unwrap()).is_err());
    }

    #[test]
    fn four_valent_k5_count_mode() {
        let g = complete_graph(5);
        for (q, want) in [(2, 1), (3, 0), (5, 0)] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(c2_four_valent_count(&g, 0, &f, 1).unwrap(), want);
        }
    }

    #[test]
    fn elimination_matches_direct_count() {
        let f1 = &(&x(1) * &x(2)) + &x(3);
        let f2 = &(&x(1) * &x(3)) - &x(2);
        let f3 = &x(1) + &(&x(2) * &x(3));
        let all: VarSet = [1, 2, 3].map(var).into_iter().collect();
        for sys in [vec![f1.clone()], vec![f1.clone(), f2.clone()], vec![f1, f2, f3]] {
            let terms = eliminate_multi(&sys, var(1)).unwrap();
            for q in [2, 3, 4] {
                let f = FiniteField::new(q).unwrap();
                let lhs = count_affine(&sys, all, &f).unwrap().count as i128;
                assert_eq!(sum_terms(&terms, all.without(var(1)), &f).unwrap(), lhs);
            }
        }
    }

    #[test]
    fn two_edge_elimination_on_k4() {
        let f = FiniteField::new(3).unwrap();
        assert!(two_edge_elimination_check(&complete_graph(4), 1, 2, &f).unwrap().holds());
    }

    #[test]
    fn octahedron_pieces() {
        let g = zigzag(4, true).unwrap();
        let f = FiniteField::new(2).unwrap();
        assert_eq!(four_minor_residue(&g, 0, &f, 1).unwrap(), 0);
        assert!(four_valent_congruence_check(&g, 0, &f, 1).unwrap().holds());
        assert!(minor_12_congruence_check(&g, 0, &f, 1).unwrap().holds());
    }
}
