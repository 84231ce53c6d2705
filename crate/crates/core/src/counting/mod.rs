//! Exact point counts over finite fields.

mod engine;
mod field;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::kirchhoff::{graph_polynomial, GraphPolyBackend};
use crate::polyring::{linear_split, Polynomial, Var, VarSet};

use engine::Compiled;
pub use field::{Elem, FiniteField};

/// Number of common zeros in `F_q^n`, `n = |ambient|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub count: u128,
    pub ambient: VarSet,
    pub q: u64,
}

impl CountResult {
    pub fn dimension(&self) -> usize {
        self.ambient.len()
    }

    pub fn residue(&self) -> u64 {
        (self.count % self.q as u128) as u64
    }
}

fn check_ambient(polys: &[Polynomial], ambient: VarSet) -> Result<VarSet> {
    let used = polys.iter().fold(VarSet::EMPTY, |s, p| s.union(p.vars()));
    if let Some(v) = used.difference(ambient).iter().next() {
        return Err(Error::VariableOutsideAmbient(v.index()));
    }
    Ok(used)
}

/// Enumeration order: variables of the smallest polynomials first, so that
/// constraints close early; the last variable is linear in some polynomial
/// whenever possible.
fn variable_order(polys: &[Polynomial], used: VarSet) -> Vec<Var> {
    let mut by_size: Vec<&Polynomial> = polys.iter().filter(|p| !p.is_constant()).collect();
    by_size.sort_by_key(|p| (p.vars().len(), p.len()));
    let mut order: Vec<Var> = Vec::with_capacity(used.len());
    for p in &by_size {
        let mut fresh: Vec<Var> = p.vars().iter().filter(|v| !order.contains(v)).collect();
        // within a polynomial, high-degree variables first
        fresh.sort_by_key(|&v| std::cmp::Reverse(p.degree_in(v)));
        order.extend(fresh);
    }
    let linear = |v: Var| polys.iter().any(|p| p.degree_in(v) == 1);
    // prefer a linear variable from the last-closing polynomial
    if let Some(pos) = order.iter().rposition(|&v| linear(v)) {
        let v = order.remove(pos);
        order.push(v);
    }
    order
}

struct Prepared<'f> {
    compiled: Compiled<'f>,
    n: usize,
    /// Ambient variables that occur in no polynomial.
    free: usize,
}

fn prepare<'f>(polys: &[Polynomial], ambient: VarSet, field: &'f FiniteField) -> Result<Prepared<'f>> {
    let used = check_ambient(polys, ambient)?;
    let order = variable_order(polys, used);
    Ok(Prepared {
        compiled: Compiled::new(field, polys, &order),
        n: order.len(),
        free: ambient.len() - used.len(),
    })
}

/// `[f_1, ..., f_k]_q` in the affine space on `ambient`.
pub fn count_affine(polys: &[Polynomial], ambient: VarSet, field: &FiniteField) -> Result<CountResult> {
    let prep = prepare(polys, ambient, field)?;
    let c = &prep.compiled;
    let mut st = c.fresh_state();
    let core = match c.initial_active() {
        Some(active) => c.count_from(&mut st, 0, &active),
        None => 0,
    };
    Ok(CountResult {
        count: core * c.q().pow(prep.free as u32),
        ambient,
        q: field.order(),
    })
}

/// Same result as [`count_affine`], with the enumeration split into at least
/// `shards` disjoint prefix classes that run on the rayon pool.
pub fn count_parallel(
    polys: &[Polynomial],
    ambient: VarSet,
    field: &FiniteField,
    shards: usize,
) -> Result<CountResult> {
    if shards <= 1 {
        return count_affine(polys, ambient, field);
    }
    let prep = prepare(polys, ambient, field)?;
    let c = &prep.compiled;
    let q = c.q();
    // keep the last coordinate for the solver
    let mut depth = 0;
    while depth + 1 < prep.n && q.pow(depth as u32) < shards as u128 {
        depth += 1;
    }
    let prefixes = q.pow(depth as u32) as u64;
    let core: u128 = (0..prefixes)
        .into_par_iter()
        .map(|mut idx| {
            let mut prefix = Vec::with_capacity(depth);
            for _ in 0..depth {
                prefix.push((idx % q as u64) as Elem);
                idx /= q as u64;
            }
            let mut st = c.fresh_state();
            match c.apply_prefix(&mut st, &prefix) {
                Some(active) => c.count_from(&mut st, depth, &active),
                None => 0,
            }
        })
        .sum();
    Ok(CountResult {
        count: core * q.pow(prep.free as u32),
        ambient,
        q: field.order(),
    })
}

/// Total degree below the dimension, which forces `q | count`.
pub fn chevalley_warning_applies(polys: &[Polynomial], ambient: VarSet) -> bool {
    let total: u32 = polys.iter().map(|p| p.degree()).sum();
    (total as usize) < ambient.len()
}

/// Ambient space of a graph: one variable per edge.
pub fn edge_space(g: &Graph) -> VarSet {
    g.edges().iter().map(|e| e.var()).collect()
}

/// `[Psi_G]_q / q^2 mod q`, checking the divisibility on the way.
pub fn c2_bruteforce(g: &Graph, field: &FiniteField) -> Result<u64> {
    c2_bruteforce_sharded(g, field, 1)
}

pub fn c2_bruteforce_sharded(g: &Graph, field: &FiniteField, shards: usize) -> Result<u64> {
    if g.vertex_count() < 3 {
        return Err(Error::TooFewVertices {
            needed: 3,
            found: g.vertex_count(),
        });
    }
    let psi = graph_polynomial(g, GraphPolyBackend::Trees)?;
    let r = count_parallel(&[psi], edge_space(g), field, shards)?;
    let q = field.order() as u128;
    if r.count % (q * q) != 0 {
        return Err(Error::DivisibilityFailure(format!(
            "[Psi]_{} = {} is not divisible by q^2",
            q, r.count
        )));
    }
    Ok(((r.count / (q * q)) % q) as u64)
}

/// One side-by-side comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: i128,
    pub rhs: i128,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The four linear-elimination identities for `f`, `g` linear in `x` and an
/// extra condition `h`, as exact counts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearElimReport {
    pub q: u64,
    pub checks: Vec<IdentityCheck>,
}

impl LinearElimReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(IdentityCheck::holds)
    }
}

pub fn verify_linear_elim(
    f: &Polynomial,
    g: &Polynomial,
    h: &Polynomial,
    x: Var,
    field: &FiniteField,
) -> Result<LinearElimReport> {
    let fs = linear_split(f, x)?;
    let gs = linear_split(g, x)?;
    let big = f.vars().union(g.vars()).union(h.vars()).with(x);
    let small = big.without(x);
    let q = field.order() as i128;
    let n = |ps: &[&Polynomial], a: VarSet| -> Result<i128> {
        let owned: Vec<Polynomial> = ps.iter().map(|p| (*p).clone()).collect();
        Ok(count_affine(&owned, a, field)?.count as i128)
    };
    let (f1, f0, g1, g0) = (&fs.leading, &fs.constant, &gs.leading, &gs.constant);
    let res = &(f1 * g0) - &(g1 * f0);
    let checks = vec![
        IdentityCheck {
            name: "lin1".into(),
            lhs: n(&[f], big)?,
            rhs: q.pow(small.len() as u32) - n(&[f1], small)? + q * n(&[f1, f0], small)?,
        },
        IdentityCheck {
            name: "lin11".into(),
            lhs: n(&[f, h], big)?,
            rhs: n(&[h], small)? - n(&[f1, h], small)? + q * n(&[f1, f0, h], small)?,
        },
        IdentityCheck {
            name: "lin2".into(),
            lhs: n(&[f, g], big)?,
            rhs: q * n(&[f1, f0, g1, g0], small)? + n(&[&res], small)? - n(&[f1, g1], small)?,
        },
        IdentityCheck {
            name: "lin21".into(),
            lhs: n(&[f, g, h], big)?,
            rhs: q * n(&[f1, f0, g1, g0, h], small)? + n(&[&res, h], small)?
                - n(&[f1, g1, h], small)?,
        },
    ];
    Ok(LinearElimReport {
        q: field.order(),
        checks,
    })
}

/// Reference count by evaluating every point; for tests and small inputs.
pub fn count_naive(polys: &[Polynomial], ambient: VarSet, field: &FiniteField) -> Result<CountResult> {
    check_ambient(polys, ambient)?;
    let vars: Vec<Var> = ambient.iter().collect();
    let q = field.order() as usize;
    let mut point = vec![0 as Elem; vars.len()];
    let mut count = 0u128;
    let eval = |p: &Polynomial, point: &[Elem]| -> Elem {
        let mut acc = 0;
        for &(m, c) in p.terms() {
            let mut t = field.from_int(c);
            for (v, e) in m.iter() {
                let i = vars.iter().position(|&w| w == v).expect("checked");
                t = field.mul(t, field.pow(point[i], e));
            }
            acc = field.add(acc, t);
        }
        acc
    };
    loop {
        if polys.iter().all(|p| eval(p, &point) == 0) {
            count += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == point.len() {
                return Ok(CountResult {
                    count,
                    ambient,
                    q: field.order(),
                });
            }
            point[i] += 1;
            if point[i] as usize == q {
                point[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle, subdivided_k4};
    use crate::polyring::x;

    fn space(n: u32) -> VarSet {
        (1..=n).map(crate::polyring::var).collect()
    }

    #[test]
    fn linear_form_and_empty_system() {
        for q in [2, 3, 4, 5, 9] {
            let f = FiniteField::new(q).unwrap();
            let l = &(&x(1) + &x(2)) + &x(3);
            assert_eq!(count_affine(&[l], space(3), &f).unwrap().count, (q * q) as u128);
            assert_eq!(count_affine(&[], space(4), &f).unwrap().count, (q as u128).pow(4));
        }
    }

    #[test]
    fn variable_outside_ambient_is_rejected() {
        let f = FiniteField::new(2).unwrap();
        assert!(count_affine(&[x(5)], space(3), &f).is_err());
    }

    #[test]
    fn engine_matches_naive_evaluation() {
        let polys = [
            &(&(&x(1) * &x(2)) + &x(3).pow(2)) - &Polynomial::one(),
            &(&x(1) * &x(3)) + &x(2).scale(2),
        ];
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FiniteField::new(q).unwrap();
            for sys in [&polys[..1], &polys[1..], &polys[..]] {
                let a = count_affine(sys, space(4), &f).unwrap();
                let b = count_naive(sys, space(4), &f).unwrap();
                assert_eq!(a, b, "q={q}");
                assert_eq!(count_parallel(sys, space(4), &f, 5).unwrap(), b);
            }
        }
    }

    #[test]
    fn nonzero_constant_has_no_points() {
        let f = FiniteField::new(3).unwrap();
        assert_eq!(count_affine(&[Polynomial::constant(2)], space(2), &f).unwrap().count, 0);
        assert_eq!(count_affine(&[Polynomial::constant(3)], space(2), &f).unwrap().count, 9);
    }

    #[test]
    fn k4_count_divisible() {
        let g = complete_graph(4);
        let psi = graph_polynomial(&g, GraphPolyBackend::Trees).unwrap();
        let f = FiniteField::new(2).unwrap();
        let r = count_affine(std::slice::from_ref(&psi), edge_space(&g), &f).unwrap();
        assert_eq!(r, count_naive(&[psi], edge_space(&g), &f).unwrap());
        assert_eq!(r.count % 4, 0);
    }

    #[test]
    fn c2_small_graphs() {
        for q in [2, 3, 5, 7] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(c2_bruteforce(&complete_graph(4), &f).unwrap(), q - 1);
        }
        let f3 = FiniteField::new(3).unwrap();
        assert_eq!(c2_bruteforce(&subdivided_k4(), &f3).unwrap(), 0);
        assert_eq!(c2_bruteforce(&cycle(3), &f3).unwrap(), 1);
        assert!(c2_bruteforce(&cycle(2), &f3).is_err());
    }

    #[test]
    fn linear_elimination_example() {
        let f = &x(1) + &x(2);
        let g = &(&x(2) * &x(1)) + &Polynomial::one();
        let field = FiniteField::new(2).unwrap();
        let r = verify_linear_elim(&f, &g, &Polynomial::zero(), crate::polyring::var(1), &field)
            .unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert_eq!(r.checks.len(), 4);
    }

    #[test]
    fn chevalley_warning_predicate() {
        let l = &(&x(1) + &x(2)) + &x(3);
        assert!(chevalley_warning_applies(std::slice::from_ref(&l), space(3)));
        assert!(!chevalley_warning_applies(&[l.clone(), l.clone(), l], space(3)));
    }
}
