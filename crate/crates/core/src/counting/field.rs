use crate::error::{Error, Result};
use crate::polyring::Coeff;

/// Field element: index `sum c_i p^i` of the residue `sum c_i t^i`, so the
/// prime subfield is `0..p` with its usual labels.
pub type Elem = u8;

/// Irreducible moduli for the supported proper prime powers, as
/// `(q, p, k, low coefficients of the monic modulus)`.
const MODULI: &[(u32, u32, u32, &[u32])] = &[
    (4, 2, 2, &[1, 1]),
    (8, 2, 3, &[1, 1, 0]),
    (9, 3, 2, &[1, 0]),
    (16, 2, 4, &[1, 1, 0, 0]),
    (25, 5, 2, &[2, 0]),
    (27, 3, 3, &[1, 2, 0]),
];

/// `F_q` with full addition and multiplication tables.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FiniteField {
    /// Prime fields up to 251 and the prime powers 4, 8, 9, 16, 25, 27.
    pub fn new(q: u64) -> Result<FiniteField> {
        if q <= 251 && is_prime(q) {
            return Ok(FiniteField::build(q as u32, 1, &[]));
        }
        MODULI
            .iter()
            .find(|m| m.0 as u64 == q)
            .map(|&(_, p, k, low)| FiniteField::build(p, k, low))
            .ok_or(Error::UnsupportedField(q))
    }

    fn build(p: u32, k: u32, low: &[u32]) -> FiniteField {
        let q = p.pow(k);
        let digits = |x: u32| -> Vec<u32> { (0..k).map(|i| (x / p.pow(i)) % p).collect() };
        let index = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mut add = vec![0; (q * q) as usize];
        let mut mul = vec![0; (q * q) as usize];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = index(&s) as Elem;
                // schoolbook product then reduce by t^k = -(low)
                let mut prod = vec![0u32; (2 * k) as usize];
                for i in 0..k as usize {
                    for j in 0..k as usize {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for d in (k as usize..prod.len()).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    prod[d] = 0;
                    for (i, &m) in low.iter().enumerate() {
                        let idx = d - k as usize + i;
                        prod[idx] = (prod[idx] + (p - c) * m) % p;
                    }
                }
                mul[(a * q + b) as usize] = index(&prod[..k as usize]) as Elem;
            }
        }
        let mut neg = vec![0; q as usize];
        let mut inv = vec![0; q as usize];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b as Elem;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as Elem;
                }
            }
        }
        FiniteField {
            p,
            k,
            q,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero element (0 maps to 0).
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: Elem, e: u32) -> Elem {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Image of an integer.
    pub fn from_int(&self, c: Coeff) -> Elem {
        c.rem_euclid(self.p as Coeff) as Elem
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|x| x as Elem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if q <= 16 {
                        for &c in &els {
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unsupported_orders() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(32).is_err());
        assert!(FiniteField::new(1).is_err());
        assert!(FiniteField::new(251).is_ok());
    }

    #[test]
    fn integers_land_in_prime_field() {
        let f = FiniteField::new(9).unwrap();
        assert_eq!(f.from_int(-1), 2);
        assert_eq!(f.from_int(7), 1);
        assert_eq!(f.characteristic(), 3);
    }
}
