//! Fraction-free determinants.

use crate::polyring::{Coeff, Polynomial};

/// Entries usable in fraction-free elimination.
pub trait BareissEntry: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division; panics when inexact, which would be a bug.
    fn div_exact(&self, d: &Self) -> Self;
    /// Smaller is a better pivot.
    fn cost(&self) -> (u32, usize);
}

impl BareissEntry for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Self {
        self.exact_div(d).expect("Bareiss division is exact")
    }
    fn cost(&self) -> (u32, usize) {
        (self.degree(), self.len())
    }
}

impl BareissEntry for Coeff {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("determinant overflow")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(*other).expect("determinant overflow")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Self {
        assert_eq!(self % d, 0, "Bareiss division is exact");
        self / d
    }
    fn cost(&self) -> (u32, usize) {
        (0, self.unsigned_abs().min(usize::MAX as u128) as usize)
    }
}

/// Determinant by Bareiss elimination with full pivoting on the cheapest
/// nonzero entry.
pub fn determinant<T: BareissEntry>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n {
        let mut best: Option<(usize, usize, (u32, usize))> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if !e.is_zero() {
                    let c = e.cost();
                    if best.is_none_or(|b| c < b.2) {
                        best = Some((i, j, c));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            return T::zero();
        };
        if pi != k {
            m.swap(pi, k);
            sign_flip = !sign_flip;
        }
        if pj != k {
            for row in m.iter_mut() {
                row.swap(pj, k);
            }
            sign_flip = !sign_flip;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            let lead = m[i][k].clone();
            for j in k + 1..n {
                let t = pivot.mul(&m[i][j]);
                let t = if lead.is_zero() || m[k][j].is_zero() {
                    t
                } else {
                    t.sub(&lead.mul(&m[k][j]))
                };
                m[i][j] = if t.is_zero() { t } else { t.div_exact(&prev) };
            }
            m[i][k] = T::zero();
        }
        prev = pivot;
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::x;

    #[test]
    fn integer_determinants() {
        assert_eq!(determinant::<Coeff>(vec![vec![2, 1], vec![7, 4]]), 1);
        assert_eq!(determinant::<Coeff>(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(
            determinant::<Coeff>(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]),
            0
        );
        assert_eq!(
            determinant::<Coeff>(vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]),
            6
        );
    }

    #[test]
    fn polynomial_determinant() {
        let m = vec![vec![x(1), Polynomial::one()], vec![Polynomial::one(), x(2)]];
        assert_eq!(determinant(m), &(&x(1) * &x(2)) - &Polynomial::one());
    }
}
