use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Number of variables a [`Monomial`] can carry.
pub const MAX_VARS: usize = 32;
/// Largest exponent a single variable may reach.
pub const MAX_EXP: u32 = 127;

const HIGH: u64 = 0x8080_8080_8080_8080;
const EVEN_BYTES: u64 = 0x00ff_00ff_00ff_00ff;
const SHORT_SUM: u64 = 0x0001_0001_0001_0001;

/// A polynomial variable. Variable `a<i>` stands for the edge with label `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u8);

impl Var {
    pub fn new(index: u32) -> Result<Var> {
        if (index as usize) < MAX_VARS {
            Ok(Var(index as u8))
        } else {
            Err(Error::VarOutOfRange(index))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

/// A set of variables, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u32) -> VarSet {
        VarSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.0) != 0
    }

    pub fn with(self, v: Var) -> VarSet {
        VarSet(self.0 | (1 << v.0))
    }

    pub fn without(self, v: Var) -> VarSet {
        VarSet(self.0 & !(1 << v.0))
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        let bits = self.0;
        (0..MAX_VARS as u8).filter(move |i| bits & (1 << i) != 0).map(Var)
    }
}

impl FromIterator<Var> for VarSet {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> Self {
        iter.into_iter().fold(VarSet::EMPTY, VarSet::with)
    }
}

/// Serialized as the ascending list of variable indices.
impl serde::Serialize for VarSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|v| v.0))
    }
}

impl<'de> serde::Deserialize<'de> for VarSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let idx = Vec::<u8>::deserialize(d)?;
        idx.into_iter()
            .map(|i| Var::new(i as u32).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

/// Exponent vector packed one byte per variable.
///
/// Bytes keep their top bit clear, so products and quotients can be
/// computed lane-wise on whole words with overflow detected from the
/// spare bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u64; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var, e: u32) -> Monomial {
        Monomial::ONE.with_exp(v, e)
    }

    pub fn exp(self, v: Var) -> u32 {
        let i = v.0 as usize;
        ((self.0[i / 8] >> (8 * (i % 8))) & 0xff) as u32
    }

    pub fn with_exp(mut self, v: Var, e: u32) -> Monomial {
        assert!(e <= MAX_EXP, "exponent {e} exceeds {MAX_EXP}");
        let i = v.0 as usize;
        let shift = 8 * (i % 8);
        self.0[i / 8] = (self.0[i / 8] & !(0xff << shift)) | ((e as u64) << shift);
        self
    }

    pub fn without(self, v: Var) -> Monomial {
        self.with_exp(v, 0)
    }

    pub fn degree(self) -> u32 {
        self.0
            .iter()
            .map(|w| {
                let pairs = (w & EVEN_BYTES) + ((w >> 8) & EVEN_BYTES);
                (pairs.wrapping_mul(SHORT_SUM) >> 48) as u32
            })
            .sum()
    }

    pub fn is_one(self) -> bool {
        self.0 == [0; 4]
    }

    pub fn vars(self) -> VarSet {
        let mut bits = 0u32;
        for (wi, w) in self.0.iter().enumerate() {
            if *w == 0 {
                continue;
            }
            for b in 0..8 {
                if (w >> (8 * b)) & 0xff != 0 {
                    bits |= 1 << (wi * 8 + b);
                }
            }
        }
        VarSet(bits)
    }

    pub fn iter(self) -> impl Iterator<Item = (Var, u32)> {
        self.vars().iter().map(move |v| (v, self.exp(v)))
    }

    /// Product, or `None` if some exponent would exceed [`MAX_EXP`].
    pub fn checked_mul(self, other: Monomial) -> Option<Monomial> {
        let mut out = [0u64; 4];
        for i in 0..4 {
            let s = self.0[i] + other.0[i];
            if s & HIGH != 0 {
                return None;
            }
            out[i] = s;
        }
        Some(Monomial(out))
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        self.checked_mul(other)
            .unwrap_or_else(|| panic!("exponent overflow multiplying monomials"))
    }

    /// Quotient `self / other` if `other` divides `self`.
    pub fn checked_div(self, other: Monomial) -> Option<Monomial> {
        let mut out = [0u64; 4];
        for i in 0..4 {
            let t = (self.0[i] | HIGH) - other.0[i];
            if t & HIGH != HIGH {
                return None;
            }
            out[i] = t ^ HIGH;
        }
        Some(Monomial(out))
    }

    pub fn divides(self, other: Monomial) -> bool {
        other.checked_div(self).is_some()
    }

    /// Square root when every exponent is even.
    pub fn sqrt(self) -> Option<Monomial> {
        let mut out = [0u64; 4];
        for i in 0..4 {
            if self.0[i] & 0x0101_0101_0101_0101 != 0 {
                return None;
            }
            out[i] = self.0[i] >> 1;
        }
        Some(Monomial(out))
    }

    /// Lane-wise minimum.
    pub fn gcd(self, other: Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for v in self.vars().intersection(other.vars()).iter() {
            m = m.with_exp(v, self.exp(v).min(other.exp(v)));
        }
        m
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        // highest variable is most significant
        for i in (0..4).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Graded order: total degree first, then lexicographic with the highest
/// variable most significant. This is a monomial order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Var {
        Var::new(i).unwrap()
    }

    #[test]
    fn lanes_multiply_and_divide() {
        let a = Monomial::var(v(3), 2).mul(Monomial::var(v(17), 1));
        let b = Monomial::var(v(3), 1);
        assert_eq!(a.degree(), 3);
        let q = a.checked_div(b).unwrap();
        assert_eq!(q.exp(v(3)), 1);
        assert_eq!(q.exp(v(17)), 1);
        assert!(b.checked_div(a).is_none());
        assert_eq!(q.mul(b), a);
    }

    #[test]
    fn overflow_is_detected() {
        let a = Monomial::var(v(31), 100);
        assert!(a.checked_mul(a).is_none());
        assert!(a.checked_mul(Monomial::var(v(31), 27)).is_some());
    }

    #[test]
    fn graded_order_is_multiplicative() {
        let a = Monomial::var(v(1), 2);
        let b = Monomial::var(v(2), 1);
        let c = Monomial::var(v(0), 3);
        assert!(a > b);
        assert!(a.mul(c) > b.mul(c));
    }

    #[test]
    fn var_range_is_checked() {
        assert!(Var::new(31).is_ok());
        assert!(Var::new(32).is_err());
    }

    #[test]
    fn varset_ops() {
        let s: VarSet = [v(1), v(4), v(9)].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(v(4)));
        assert_eq!(s.without(v(4)).len(), 2);
        assert_eq!(s.iter().map(|x| x.index()).collect::<Vec<_>>(), vec![1, 4, 9]);
    }
}
