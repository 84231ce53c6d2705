use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{Monomial, Var, VarSet};
use crate::error::{Error, Result};

/// Integer coefficient type. Arithmetic is checked; overflow panics
/// rather than wrapping.
pub type Coeff = i128;

pub(crate) fn cadd(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("coefficient overflow")
}

pub(crate) fn cmul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("coefficient overflow")
}

pub fn int_gcd(mut a: Coeff, mut b: Coeff) -> Coeff {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Sparse multivariate polynomial with exact integer coefficients.
///
/// Terms are kept sorted in decreasing monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(1)
    }

    pub fn constant(c: Coeff) -> Polynomial {
        Polynomial::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Polynomial {
        if c == 0 {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::monomial(Monomial::var(v, 1), 1)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(terms: I) -> Polynomial {
        let mut v: Vec<(Monomial, Coeff)> = terms.into_iter().collect();
        Polynomial::normalize(&mut v);
        Polynomial { terms: v }
    }

    fn normalize(v: &mut Vec<(Monomial, Coeff)>) {
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(v.len());
        for &(m, c) in v.iter() {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = cadd(last.1, c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1 == 0 {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1 == 0 {
                out.pop();
            }
        }
        *v = out;
    }

    /// Sum of variables, a convenience for tests and examples.
    pub fn sum_of_vars<I: IntoIterator<Item = Var>>(vars: I) -> Polynomial {
        Polynomial::from_terms(vars.into_iter().map(|v| (Monomial::var(v, 1), 1)))
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(Monomial, Coeff)> {
        self.terms.first().copied()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).min().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> VarSet {
        self.terms
            .iter()
            .fold(VarSet::EMPTY, |s, t| s.union(t.0.vars()))
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.iter().all(|t| t.0.degree() == d)
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.iter().all(|t| t.0.iter().all(|(_, e)| e <= 1))
    }

    pub fn scale(&self, c: Coeff) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|&(m, k)| (m, cmul(k, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial, c: Coeff) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|&(t, k)| (t.mul(m), cmul(k, c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Coefficient of `v^k`, as a polynomial free of `v`.
    pub fn coeff_of(&self, v: Var, k: u32) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .filter(|t| t.0.exp(v) == k)
                .map(|&(m, c)| (m.without(v), c)),
        )
    }

    /// All coefficients in `v`, indexed by power.
    pub fn coeffs_in(&self, v: Var) -> Vec<Polynomial> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); d + 1];
        for &(m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.without(v), c));
        }
        buckets.into_iter().map(Polynomial::from_terms).collect()
    }

    /// Replace `v` by an integer.
    pub fn substitute(&self, v: Var, value: Coeff) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|&(m, c)| {
            let e = m.exp(v);
            let mut k = c;
            for _ in 0..e {
                k = cmul(k, value);
            }
            (m.without(v), k)
        }))
    }

    /// Replace `v` by a polynomial.
    pub fn compose(&self, v: Var, with: &Polynomial) -> Polynomial {
        let coeffs = self.coeffs_in(v);
        let mut out = Polynomial::zero();
        for c in coeffs.iter().rev() {
            out = &(&out * with) + c;
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().filter_map(|&(m, c)| {
            let e = m.exp(v);
            (e > 0).then(|| (m.with_exp(v, e - 1), cmul(c, e as Coeff)))
        }))
    }

    /// Rename variables through `map`. Panics if `map` is not injective on
    /// the variables in use.
    pub fn rename(&self, map: impl Fn(Var) -> Var) -> Polynomial {
        let out = Polynomial::from_terms(self.terms.iter().map(|&(m, c)| {
            let mut r = Monomial::ONE;
            for (v, e) in m.iter() {
                let w = map(v);
                assert_eq!(r.exp(w), 0, "rename is not injective");
                r = r.with_exp(w, e);
            }
            (r, c)
        }));
        debug_assert_eq!(out.len(), self.len());
        out
    }

    /// Evaluate at an integer point given as a lookup by variable.
    pub fn eval(&self, point: impl Fn(Var) -> Coeff) -> Coeff {
        self.terms.iter().fold(0, |acc, &(m, c)| {
            let mut t = c;
            for (v, e) in m.iter() {
                for _ in 0..e {
                    t = cmul(t, point(v));
                }
            }
            cadd(acc, t)
        })
    }

    /// Integer content with the sign of the leading coefficient.
    pub fn content(&self) -> Coeff {
        let g = self.terms.iter().fold(0, |g, t| int_gcd(g, t.1));
        match self.terms.first() {
            Some(&(_, c)) if c < 0 => -g,
            _ => g,
        }
    }

    /// Divides out the integer content; the leading coefficient becomes positive.
    pub fn primitive(&self) -> Polynomial {
        let c = self.content();
        if c == 0 || c == 1 {
            return self.clone();
        }
        Polynomial {
            terms: self.terms.iter().map(|&(m, k)| (m, k / c)).collect(),
        }
    }

    /// Positive leading coefficient, content untouched.
    pub fn sign_normalized(&self) -> Polynomial {
        match self.terms.first() {
            Some(&(_, c)) if c < 0 => -self,
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = d.leading()?;
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if d.len() == 1 {
            let mut out = Vec::with_capacity(self.len());
            for &(m, c) in &self.terms {
                if c % dc != 0 {
                    return None;
                }
                out.push((m.checked_div(dm)?, c / dc));
            }
            return Some(Polynomial { terms: out });
        }
        let mut rem: BTreeMap<Monomial, Coeff> = self.terms.iter().copied().collect();
        let mut quot: Vec<(Monomial, Coeff)> = Vec::new();
        while let Some((&lm, &lc)) = rem.iter().next_back() {
            let qm = lm.checked_div(dm)?;
            if lc % dc != 0 {
                return None;
            }
            let qc = lc / dc;
            quot.push((qm, qc));
            for &(m, c) in &d.terms {
                let key = m.mul(qm);
                let val = cmul(c, qc);
                let e = rem.entry(key).or_insert(0);
                *e -= val;
                if *e == 0 {
                    rem.remove(&key);
                }
            }
        }
        Some(Polynomial { terms: quot })
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.exact_div(self).is_some()
    }

    fn combine(a: &[(Monomial, Coeff)], b: &[(Monomial, Coeff)], sign: Coeff) -> Polynomial {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, cmul(sign, b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = cadd(a[i].1, cmul(sign, b[j].1));
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, cmul(sign, c))));
        Polynomial { terms: out }
    }

    fn product(a: &[(Monomial, Coeff)], b: &[(Monomial, Coeff)]) -> Polynomial {
        if a.is_empty() || b.is_empty() {
            return Polynomial::zero();
        }
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        if small.len() == 1 {
            let (m, c) = small[0];
            return Polynomial {
                terms: large
                    .iter()
                    .map(|&(t, k)| (t.mul(m), cmul(k, c)))
                    .collect(),
            };
        }
        let mut acc: std::collections::HashMap<Monomial, Coeff> =
            std::collections::HashMap::with_capacity(large.len() * 2);
        for &(ma, ca) in small {
            for &(mb, cb) in large {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = cadd(*e, cmul(ca, cb));
            }
        }
        let mut v: Vec<(Monomial, Coeff)> = acc.into_iter().filter(|t| t.1 != 0).collect();
        v.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        Polynomial { terms: v }
    }
}

impl From<Coeff> for Polynomial {
    fn from(c: Coeff) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        Polynomial::combine(&self.terms, &rhs.terms, 1)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        Polynomial::combine(&self.terms, &rhs.terms, -1)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        Polynomial::product(&self.terms, &rhs.terms)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|&(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &'a Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `f = leading * x + constant` with neither part mentioning `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSplit {
    pub variable: Var,
    pub leading: Polynomial,
    pub constant: Polynomial,
}

impl LinearSplit {
    pub fn reconstruct(&self) -> Polynomial {
        &(&self.leading * &Polynomial::var(self.variable)) + &self.constant
    }
}

pub fn linear_split(f: &Polynomial, x: Var) -> Result<LinearSplit> {
    let d = f.degree_in(x);
    if d > 1 {
        return Err(Error::NotLinear(x.index()));
    }
    Ok(LinearSplit {
        variable: x,
        leading: f.coeff_of(x, 1),
        constant: f.coeff_of(x, 0),
    })
}

/// `f^x g_x - f_x g^x` for `f`, `g` of degree at most one in `x`.
pub fn resultant_linear(f: &Polynomial, g: &Polynomial, x: Var) -> Result<Polynomial> {
    let fs = linear_split(f, x)?;
    let gs = linear_split(g, x)?;
    Ok(&(&fs.leading * &gs.constant) - &(&fs.constant * &gs.leading))
}

/// Degree bookkeeping for a single polynomial or a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaInfo {
    pub degree: u32,
    pub n_vars: usize,
    pub delta: i64,
}

/// `2 deg f - N(f)` over the variables actually present.
pub fn delta_of(f: &Polynomial) -> Result<DeltaInfo> {
    if !f.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    let degree = f.degree();
    let n_vars = f.vars().len();
    Ok(DeltaInfo {
        degree,
        n_vars,
        delta: 2 * degree as i64 - n_vars as i64,
    })
}

/// `deg f + deg g - N(f, g)`.
pub fn delta_of_pair(f: &Polynomial, g: &Polynomial) -> Result<DeltaInfo> {
    if !f.is_homogeneous() || !g.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    let degree = f.degree() + g.degree();
    let n_vars = f.vars().union(g.vars()).len();
    Ok(DeltaInfo {
        degree,
        n_vars,
        delta: degree as i64 - n_vars as i64,
    })
}
