//! Depth-first point counting with precompiled partial substitution.
//!
//! Variables are fixed one at a time. For every polynomial and depth the
//! distinct monomials in the still-free variables are listed once, with a
//! map from the previous depth's monomials to (target slot, exponent of the
//! variable being fixed). Substituting a value is then one pass of table
//! lookups. The last variable is chosen linear in some polynomial, so the
//! final coordinate is solved instead of enumerated.

use std::collections::HashMap;

use super::field::{Elem, FiniteField};
use crate::polyring::{Monomial, Polynomial, Var};

struct Step {
    /// `(target slot, exponent)` per monomial of the previous depth.
    map: Vec<(u32, u8)>,
    /// Slot of the constant monomial at this depth, if present.
    const_slot: Option<u32>,
    len: usize,
}

struct CompiledPoly {
    /// Coefficients at depth 0.
    init: Vec<Elem>,
    /// `steps[d]` maps depth `d` to depth `d + 1`.
    steps: Vec<Step>,
    init_const: Option<u32>,
}

/// A system compiled for one field and one variable order.
pub(crate) struct Compiled<'f> {
    field: &'f FiniteField,
    polys: Vec<CompiledPoly>,
    /// Number of enumerated variables; the last one is solved when
    /// `linear_last` is set.
    n: usize,
    linear_last: bool,
    /// `pow[e][x] = x^e`.
    pow: Vec<Vec<Elem>>,
}

#[derive(Clone)]
pub(crate) struct State {
    /// `vals[i][d]`: coefficients of polynomial `i` at depth `d`.
    vals: Vec<Vec<Vec<Elem>>>,
}

/// Status of one polynomial after substitution.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Zero,
    NonzeroConstant,
    Open,
}

impl<'f> Compiled<'f> {
    /// `order` lists the variables in enumeration order; polynomials must not
    /// use others.
    pub(crate) fn new(field: &'f FiniteField, polys: &[Polynomial], order: &[Var]) -> Compiled<'f> {
        let n = order.len();
        let reduced: Vec<Vec<(Monomial, Elem)>> = polys
            .iter()
            .map(|p| {
                p.terms()
                    .iter()
                    .map(|&(m, c)| (m, field.from_int(c)))
                    .filter(|t| t.1 != 0)
                    .collect()
            })
            .collect();
        let mut maxdeg = 1;
        let mut compiled = Vec::with_capacity(polys.len());
        for terms in &reduced {
            let mut cur: Vec<Monomial> = terms.iter().map(|t| t.0).collect();
            let init: Vec<Elem> = terms.iter().map(|t| t.1).collect();
            let init_const = cur.iter().position(|m| m.is_one()).map(|i| i as u32);
            let mut steps = Vec::with_capacity(n);
            for &v in order {
                let mut slots: HashMap<Monomial, u32> = HashMap::new();
                let mut next: Vec<Monomial> = Vec::new();
                let mut map = Vec::with_capacity(cur.len());
                for m in &cur {
                    let e = m.exp(v);
                    maxdeg = maxdeg.max(e);
                    let rest = m.without(v);
                    let slot = *slots.entry(rest).or_insert_with(|| {
                        next.push(rest);
                        next.len() as u32 - 1
                    });
                    map.push((slot, e as u8));
                }
                let const_slot = slots.get(&Monomial::ONE).copied();
                steps.push(Step {
                    map,
                    const_slot,
                    len: next.len(),
                });
                cur = next;
            }
            compiled.push(CompiledPoly {
                init,
                steps,
                init_const,
            });
        }
        let pow = (0..=maxdeg)
            .map(|e| field.elements().map(|x| field.pow(x, e)).collect())
            .collect();
        let linear_last = n > 0
            && polys.iter().any(|p| p.degree_in(order[n - 1]) == 1);
        Compiled {
            field,
            polys: compiled,
            n,
            linear_last,
            pow,
        }
    }

    pub(crate) fn fresh_state(&self) -> State {
        State {
            vals: self
                .polys
                .iter()
                .map(|p| {
                    let mut v = Vec::with_capacity(self.n + 1);
                    v.push(p.init.clone());
                    for s in &p.steps {
                        v.push(vec![0; s.len]);
                    }
                    v
                })
                .collect(),
        }
    }

    fn status(vals: &[Elem], const_slot: Option<u32>) -> Status {
        let mut nonzero = false;
        for (i, &v) in vals.iter().enumerate() {
            if v != 0 {
                if Some(i as u32) != const_slot {
                    return Status::Open;
                }
                nonzero = true;
            }
        }
        if nonzero {
            Status::NonzeroConstant
        } else {
            Status::Zero
        }
    }

    /// Substitutes `x` for the variable at depth `d` into every active
    /// polynomial. Returns `false` if some polynomial became a nonzero
    /// constant; `active` is narrowed to the polynomials still open.
    fn substitute(&self, st: &mut State, d: usize, x: Elem, active: &[usize], next: &mut Vec<usize>) -> bool {
        next.clear();
        let f = self.field;
        for &i in active {
            let step = &self.polys[i].steps[d];
            let (lo, hi) = st.vals[i].split_at_mut(d + 1);
            let src = &lo[d];
            let dst = &mut hi[0];
            dst.iter_mut().for_each(|v| *v = 0);
            for (j, &(slot, e)) in step.map.iter().enumerate() {
                let c = src[j];
                if c == 0 {
                    continue;
                }
                let t = if e == 0 { c } else { f.mul(c, self.pow[e as usize][x as usize]) };
                let s = slot as usize;
                dst[s] = f.add(dst[s], t);
            }
            match Compiled::status(dst, step.const_slot) {
                Status::Zero => {}
                Status::NonzeroConstant => return false,
                Status::Open => next.push(i),
            }
        }
        true
    }

    /// Initial active set, or `None` when some polynomial is a nonzero
    /// constant.
    pub(crate) fn initial_active(&self) -> Option<Vec<usize>> {
        let mut active = Vec::new();
        for (i, p) in self.polys.iter().enumerate() {
            match Compiled::status(&p.init, p.init_const) {
                Status::Zero => {}
                Status::NonzeroConstant => return None,
                Status::Open => active.push(i),
            }
        }
        Some(active)
    }

    pub(crate) fn q(&self) -> u128 {
        self.field.order() as u128
    }

    /// Fixes the first `prefix.len()` variables; `None` if the system is
    /// already inconsistent.
    pub(crate) fn apply_prefix(&self, st: &mut State, prefix: &[Elem]) -> Option<Vec<usize>> {
        let mut active = self.initial_active()?;
        let mut next = Vec::new();
        for (d, &x) in prefix.iter().enumerate() {
            if active.is_empty() {
                return Some(active);
            }
            if !self.substitute(st, d, x, &active, &mut next) {
                return None;
            }
            std::mem::swap(&mut active, &mut next);
        }
        Some(active)
    }

    /// Counts solutions with the first `d` variables already fixed.
    pub(crate) fn count_from(&self, st: &mut State, d: usize, active: &[usize]) -> u128 {
        let q = self.q();
        if active.is_empty() {
            return q.pow((self.n - d) as u32);
        }
        if d == self.n {
            return 0;
        }
        if d + 1 == self.n && self.linear_last {
            return self.solve_last(st, d, active);
        }
        let mut total = 0u128;
        let mut next = Vec::with_capacity(active.len());
        for x in self.field.elements() {
            if self.substitute(st, d, x, active, &mut next) {
                let a = next.clone();
                total += self.count_from(st, d + 1, &a);
            }
        }
        total
    }

    /// Every active polynomial is univariate in the last variable here.
    fn solve_last(&self, st: &mut State, d: usize, active: &[usize]) -> u128 {
        let f = self.field;
        // find a polynomial of degree exactly one in the last variable
        let mut pick = None;
        for &i in active {
            let step = &self.polys[i].steps[d];
            let vals = &st.vals[i][d];
            let mut a = 0;
            let mut b = 0;
            let mut higher = false;
            for (j, &(_, e)) in step.map.iter().enumerate() {
                match e {
                    0 => b = f.add(b, vals[j]),
                    1 => a = f.add(a, vals[j]),
                    _ => higher |= vals[j] != 0,
                }
            }
            if !higher && a != 0 {
                pick = Some((a, b));
                break;
            }
        }
        let mut next = Vec::with_capacity(active.len());
        match pick {
            Some((a, b)) => {
                let x = f.mul(f.neg(b), f.inv(a));
                if self.substitute(st, d, x, active, &mut next) && next.is_empty() {
                    1
                } else {
                    0
                }
            }
            None => {
                let mut total = 0;
                for x in f.elements() {
                    if self.substitute(st, d, x, active, &mut next) && next.is_empty() {
                        total += 1;
                    }
                }
                total
            }
        }
    }
}
