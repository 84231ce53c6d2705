//! gcd, square roots and the small factorizer used by the reductions.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modgcd::{modular_gcd, mulm, reduce, uni_gcd, P};
use super::monomial::{Monomial, Var, VarSet};
use super::poly::{Coeff, Polynomial};
use crate::error::{Error, Result};

// Images modulo a Mersenne prime certify most gcds trivial without
// running the remainder sequence, whose coefficients grow fast.
/// `f` as a univariate polynomial in `x` over `F_P`, other variables
/// evaluated at `pt`.
fn image(f: &Polynomial, x: Var, pt: &[u64; 32]) -> Vec<u64> {
    let mut out = vec![0u64; f.degree_in(x) as usize + 1];
    for &(m, c) in f.terms() {
        let mut t = reduce(c);
        for (v, e) in m.iter() {
            if v != x {
                for _ in 0..e {
                    t = mulm(t, pt[v.index() as usize]);
                }
            }
        }
        let k = m.exp(x) as usize;
        out[k] = (out[k] + t) % P;
    }
    out
}

/// Degree of the univariate gcd over `F_P`.
fn uni_gcd_degree(a: Vec<u64>, b: Vec<u64>) -> usize {
    uni_gcd(&a, &b).len().saturating_sub(1)
}

/// Upper bound on `deg_x gcd(f, g)`. The image keeps the degree of `f`,
/// so its gcd is at least as large as the true one.
fn gcd_degree_bound(f: &Polynomial, g: &Polynomial, x: Var, rng: &mut ChaCha8Rng) -> u32 {
    let df = f.degree_in(x) as usize;
    for _ in 0..3 {
        let mut pt = [0u64; 32];
        pt.iter_mut().for_each(|p| *p = rng.gen_range(1..P));
        let a = image(f, x, &pt);
        if a[df] == 0 {
            continue;
        }
        return uni_gcd_degree(a, image(g, x, &pt)) as u32;
    }
    f.degree_in(x).min(g.degree_in(x))
}

/// Degree bounds of `gcd(f, g)` in each common variable; zero entries are
/// left out.
fn gcd_support(f: &Polynomial, g: &Polynomial, common: VarSet) -> Vec<(Var, u32)> {
    let seed = (f.len() as u64) << 32 ^ g.len() as u64 ^ common.bits() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    common
        .iter()
        .map(|x| (x, gcd_degree_bound(f, g, x, &mut rng)))
        .filter(|t| t.1 > 0)
        .collect()
}

/// Coefficients of `f` with respect to the monomials in the variables
/// outside `keep`.
fn coeffs_outside(f: &Polynomial, keep: VarSet) -> Vec<Polynomial> {
    let mut groups: HashMap<Monomial, Vec<(Monomial, Coeff)>> = HashMap::new();
    for &(m, c) in f.terms() {
        let (mut inner, mut outer) = (Monomial::ONE, Monomial::ONE);
        for (v, e) in m.iter() {
            if keep.contains(v) {
                inner = inner.with_exp(v, e);
            } else {
                outer = outer.with_exp(v, e);
            }
        }
        groups.entry(outer).or_default().push((inner, c));
    }
    groups.into_values().map(Polynomial::from_terms).collect()
}

/// Normalized gcd: primitive integer form, positive leading coefficient.
///
/// Recursive primitive remainder sequence over `Z[rest][x]`. Results are
/// exact-division checked against both inputs in debug builds.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let r = gcd_inner(f, g);
    debug_assert!(f.is_zero() || r.divides(f));
    debug_assert!(g.is_zero() || r.divides(g));
    r
}

fn gcd_inner(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one();
    }
    if f == g {
        return f.primitive();
    }
    // monomial factors are cheap to peel off
    if f.len() == 1 || g.len() == 1 {
        let mf = monomial_gcd(f);
        let mg = monomial_gcd(g);
        return Polynomial::monomial(mf.gcd(mg), 1);
    }
    let common = f.vars().intersection(g.vars());
    if common.is_empty() {
        // any common factor would have to be free of all variables
        let mf = monomial_gcd(f);
        let mg = monomial_gcd(g);
        debug_assert!(mf.gcd(mg).is_one());
        return Polynomial::one();
    }
    let bounds = gcd_support(f, g, common);
    if bounds.is_empty() {
        return Polynomial::one();
    }
    let support = bounds.iter().fold(VarSet::default(), |s, t| s.with(t.0));
    // when the bounds reach the degrees of one input, try it as the gcd
    for (a, b) in [(f, g), (g, f)] {
        if a.vars() == support && bounds.iter().all(|&(x, d)| a.degree_in(x) == d) {
            let a = a.primitive();
            if a.divides(b) {
                return a;
            }
        }
    }
    if support != f.vars().union(g.vars()) {
        // the gcd divides every coefficient over the other variables
        let mut parts = coeffs_outside(f, support);
        parts.extend(coeffs_outside(g, support));
        parts.sort_by_key(|p| p.len());
        let mut h = Polynomial::zero();
        for p in &parts {
            h = gcd_inner(&h, p);
            if h.is_constant() {
                return Polynomial::one();
            }
        }
        return h;
    }
    let mut deg = [0u32; 32];
    bounds.iter().for_each(|&(v, d)| deg[v.index() as usize] = d);
    let mut rng = ChaCha8Rng::seed_from_u64(f.len() as u64 ^ (g.len() as u64) << 20);
    for _ in 0..2 {
        if let Some(h) = modular_gcd(f, g, &deg, &mut rng) {
            return h;
        }
    }
    let x = pick_main_var(f, g, common);
    let cf = content_in(f, x);
    let cg = content_in(g, x);
    let c = gcd_inner(&cf, &cg);
    let mut a = f.exact_div(&cf).expect("content divides");
    let mut b = g.exact_div(&cg).expect("content divides");
    if a.degree_in(x) < b.degree_in(x) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.degree_in(x) == 0 {
            // b is primitive in x, hence a unit up to content
            b = Polynomial::one();
            break;
        }
        let r = pseudo_rem(&a, &b, x);
        if r.is_zero() {
            break;
        }
        a = b;
        b = primitive_in(&r, x);
    }
    let out = &c * &primitive_in(&b, x);
    out.primitive()
}

fn pick_main_var(f: &Polynomial, g: &Polynomial, common: VarSet) -> Var {
    common
        .iter()
        .min_by_key(|&v| (f.degree_in(v) + g.degree_in(v), v))
        .expect("nonempty")
}

fn monomial_gcd(f: &Polynomial) -> Monomial {
    let mut it = f.terms().iter();
    let first = it.next().map(|t| t.0).unwrap_or(Monomial::ONE);
    it.fold(first, |m, t| m.gcd(t.0))
}

/// gcd of the coefficients of `f` viewed as a polynomial in `x`.
pub fn content_in(f: &Polynomial, x: Var) -> Polynomial {
    let mut coeffs = f.coeffs_in(x);
    coeffs.retain(|c| !c.is_zero());
    coeffs.sort_by_key(|c| c.len());
    let mut g = Polynomial::zero();
    for c in &coeffs {
        g = gcd_inner(&g, c);
        if g.is_constant() {
            return Polynomial::one();
        }
    }
    g
}

/// Divides out the content in `x` (and the integer content).
pub fn primitive_in(f: &Polynomial, x: Var) -> Polynomial {
    if f.is_zero() {
        return Polynomial::zero();
    }
    let c = content_in(f, x);
    f.exact_div(&c).expect("content divides").primitive()
}

/// Sparse pseudo-remainder of `a` by `b` in `x`.
pub fn pseudo_rem(a: &Polynomial, b: &Polynomial, x: Var) -> Polynomial {
    let db = b.degree_in(x);
    let lb = b.coeff_of(x, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lr = r.coeff_of(x, dr);
        let shift = Polynomial::monomial(Monomial::var(x, dr - db), 1);
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
        let c = r.content();
        if c.abs() > 1 {
            r = r.primitive();
        }
    }
    r
}

fn isqrt(n: Coeff) -> Option<Coeff> {
    if n < 0 {
        return None;
    }
    if n < 2 {
        return Some(n);
    }
    let mut x = (n as f64).sqrt() as Coeff;
    while x > 0 && x.checked_mul(x).is_none_or(|s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    (x * x == n).then_some(x)
}

/// `g` with `g^2 = f` and positive leading coefficient, if one exists.
pub fn poly_sqrt(f: &Polynomial) -> Option<Polynomial> {
    let Some((lm, lc)) = f.leading() else {
        return Some(Polynomial::zero());
    };
    let m0 = lm.sqrt()?;
    let c0 = isqrt(lc)?;
    if c0 == 0 {
        return None;
    }
    // exponents of a square root sit between half the min and half the max
    let vars = f.vars();
    let mut hi = Monomial::ONE;
    let mut lo = Monomial::ONE;
    for v in vars.iter() {
        let (mut mn, mut mx) = (u32::MAX, 0);
        for t in f.terms() {
            let e = t.0.exp(v);
            mn = mn.min(e);
            mx = mx.max(e);
        }
        if mn % 2 == 1 || mx % 2 == 1 {
            return None;
        }
        hi = hi.with_exp(v, mx / 2);
        lo = lo.with_exp(v, mn / 2);
    }
    let mut root = vec![(m0, c0)];
    let mut rem = f - &Polynomial::monomial(m0.mul(m0), c0 * c0);
    let mut last = m0;
    while let Some((rm, rc)) = rem.leading() {
        let tm = rm.checked_div(m0)?;
        if rc % (2 * c0) != 0 || tm >= last {
            return None;
        }
        if vars.iter().any(|v| tm.exp(v) > hi.exp(v) || tm.exp(v) < lo.exp(v))
            || !tm.vars().is_subset(vars)
        {
            return None;
        }
        let tc = rc / (2 * c0);
        // rem -= t * (2 g + t)
        let g_old = Polynomial::from_terms(root.iter().copied());
        let t = Polynomial::monomial(tm, tc);
        let corr = &t * &(&g_old.scale(2) + &t);
        rem = &rem - &corr;
        root.push((tm, tc));
        last = tm;
    }
    let g = Polynomial::from_terms(root);
    debug_assert_eq!(&(&g * &g), f);
    Some(g)
}

/// Factor `f` into two factors of degree one in `x`, when possible.
///
/// The discriminant must be a perfect square; candidate factors are made
/// primitive in `x` and accepted only after exact division.
pub fn split_quadratic(f: &Polynomial, x: Var) -> Result<Option<(Polynomial, Polynomial)>> {
    let d = f.degree_in(x);
    if d > 2 {
        return Err(Error::DegreeTooHigh {
            var: x.index(),
            found: d,
            max: 2,
        });
    }
    if d < 2 {
        return Ok(None);
    }
    let a = f.coeff_of(x, 2);
    let b = f.coeff_of(x, 1);
    let c = f.coeff_of(x, 0);
    let disc = &(&b * &b) - &(&a * &c).scale(4);
    let Some(r) = poly_sqrt(&disc) else {
        return Ok(None);
    };
    let xa = &Polynomial::var(x) * &a.scale(2);
    for root in [&r, &(-&r)] {
        let cand = &(&xa + &b) + root;
        let p1 = primitive_in(&cand, x);
        if p1.degree_in(x) != 1 {
            continue;
        }
        if let Some(p2) = f.exact_div(&p1) {
            if p2.degree_in(x) == 1 {
                let (p, q) = if p1 >= p2 { (p1, p2) } else { (p2, p1) };
                return Ok(Some((p, q)));
            }
        }
    }
    Ok(None)
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order on polynomials: compares term lists.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms().cmp(other.terms())
    }
}

/// Removes repeated factors: returns `(radical_part, repeated)` with
/// `f = radical_part * repeated` and every factor of `repeated` dividing
/// `radical_part`. `None` when `f` is already square-free in its
/// variables of degree at least two.
pub fn square_free_step(f: &Polynomial) -> Option<(Polynomial, Polynomial)> {
    for x in f.vars().iter() {
        if f.degree_in(x) < 2 {
            continue;
        }
        let cx = content_in(f, x);
        let prim = f.exact_div(&cx).expect("content divides");
        if prim.degree_in(x) < 2 {
            continue;
        }
        let s = gcd(&prim, &prim.derivative(x));
        if s.degree_in(x) >= 1 {
            let rad = f.exact_div(&s).expect("gcd divides");
            return Some((rad, s));
        }
    }
    None
}

/// A nontrivial factorization `f = g * h` from the limited factorizer:
/// integer content, content in a variable, or a quadratic split.
pub fn find_factorization(f: &Polynomial) -> Option<(Polynomial, Polynomial)> {
    if f.is_constant() {
        return None;
    }
    let vars = f.vars();
    // monomial factor
    let m = monomial_gcd(f);
    if !m.is_one() && f.len() > 1 {
        let mono = Polynomial::monomial(m, 1);
        let rest = f.exact_div(&mono).expect("monomial divides");
        return Some((mono, rest));
    }
    if f.len() == 1 {
        let (m, c) = f.terms()[0];
        if m.degree() > 1 {
            let (v, e) = m.iter().next().expect("nonconstant");
            let first = Polynomial::monomial(Monomial::var(v, 1), 1);
            let rest = Polynomial::monomial(m.with_exp(v, e - 1), c);
            return Some((first, rest));
        }
        return None;
    }
    if f.is_multilinear() {
        return multilinear_split(f);
    }
    let mut order: Vec<Var> = vars.iter().collect();
    order.sort_by_key(|&v| (f.degree_in(v), v));
    for &x in &order {
        let c = content_in(f, x);
        if !c.is_constant() {
            let rest = f.exact_div(&c).expect("content divides");
            return Some((c, rest));
        }
    }
    for &x in &order {
        if f.degree_in(x) == 2 {
            if let Ok(Some(pair)) = split_quadratic(f, x) {
                let (p, q) = pair;
                // restore the integer content lost to primitive parts
                let prod = &p * &q;
                let ratio = f.content() / prod.content();
                debug_assert_eq!(&prod.scale(ratio), f);
                return Some((p, q.scale(ratio)));
            }
        }
    }
    None
}

/// Splits a multilinear `f` into the irreducible factor holding its first
/// variable and the rest.
///
/// Factors of a multilinear polynomial have disjoint variables. Writing
/// `f = a x y + b x + c y + d`, the variables `x` and `y` lie in one
/// irreducible factor exactly when `a d - b c` is nonzero.
fn multilinear_split(f: &Polynomial) -> Option<(Polynomial, Polynomial)> {
    let vars = f.vars();
    let x = vars.iter().next()?;
    let (f1, f0) = (f.coeff_of(x, 1), f.coeff_of(x, 0));
    let mut own = VarSet::default().with(x);
    for y in vars.iter().skip(1) {
        let (a, b) = (f1.coeff_of(y, 1), f1.coeff_of(y, 0));
        let (c, d) = (f0.coeff_of(y, 1), f0.coeff_of(y, 0));
        if &a * &d != &b * &c {
            own = own.with(y);
        }
    }
    let outside = vars.difference(own);
    if outside.is_empty() {
        return None;
    }
    // evaluating the other factor at a point where it is nonzero leaves a
    // multiple of the factor holding x
    let mut rng = ChaCha8Rng::seed_from_u64(f.len() as u64);
    for _ in 0..32 {
        let mut p = f.clone();
        for v in outside.iter() {
            let val = rng.gen_range(1..=4) * if rng.gen::<bool>() { 1 } else { -1 };
            p = p.substitute(v, val);
        }
        if p.is_zero() {
            continue;
        }
        let p = p.primitive();
        let q = f.exact_div(&p).expect("factor divides");
        return Some((p, q));
    }
    None
}

/// Integer factorization into primes, for bad-prime bookkeeping.
pub fn prime_factors(n: Coeff) -> Vec<u64> {
    let mut n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p as u64);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{var, x};

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let f = &(&x(1) * &x(1)) - &(&x(2) * &x(2));
        let g = &x(1) - &x(2);
        // a2 leads a1 in the term order, so the normalized form is a2 - a1
        assert_eq!(gcd(&f, &g), -&g);
        assert_eq!(gcd(&f.scale(-3), &Polynomial::zero()), -&f);
    }

    #[test]
    fn gcd_finds_shared_factor() {
        let h = p("1*a1*a2 + 1*a3 + 2");
        let a = &h * &p("1*a1 + -1*a4");
        let b = &h * &p("1*a2^2 + 1*a4*a3 + 1");
        let g = gcd(&a, &b);
        assert!(h.divides(&g));
        assert!(g.divides(&a) && g.divides(&b));
    }

    #[test]
    fn sqrt_cases() {
        let s = &x(1) + &x(2);
        assert_eq!(poly_sqrt(&(&s * &s)), Some(s));
        assert_eq!(poly_sqrt(&(&x(1) * &x(2))), None);
        assert_eq!(poly_sqrt(&Polynomial::constant(9)), Some(Polynomial::constant(3)));
        assert_eq!(poly_sqrt(&Polynomial::constant(-4)), None);
    }

    #[test]
    fn quadratic_split() {
        let a = &(&x(2) * &x(1)) + &x(3);
        let b = &(&x(3) * &x(1)) + &x(2);
        let f = &a * &b;
        let (u, w) = split_quadratic(&f, var(1)).unwrap().unwrap();
        assert_eq!(&u * &w, f);
        assert_eq!(u.degree_in(var(1)), 1);
        assert_eq!(w.degree_in(var(1)), 1);
        let g = &(&x(1) * &x(1)) + &x(2);
        assert_eq!(split_quadratic(&g, var(1)).unwrap(), None);
        assert!(split_quadratic(&x(1).pow(3), var(1)).is_err());
    }

    #[test]
    fn quadratic_split_with_content() {
        // (2x + y)(x + 3y): leading coefficient 2 needs the content step
        let f = &(&x(1).scale(2) + &x(2)) * &(&x(1) + &x(2).scale(3));
        let (u, w) = split_quadratic(&f, var(1)).unwrap().unwrap();
        assert_eq!(&u * &w, f);
    }

    #[test]
    fn factorizer_finds_pieces() {
        let f = &(&x(1) + &x(2)) * &(&x(3) + &x(4));
        let (a, b) = find_factorization(&f).unwrap();
        assert_eq!(&a * &b, f);
        assert!(!a.is_constant() && !b.is_constant());
        assert!(find_factorization(&(&x(1) + &x(2))).is_none());
    }

    #[test]
    fn square_free_detects_square() {
        let s = &x(1) + &x(2);
        let f = &(&s * &s) * &x(3);
        let (rad, rep) = square_free_step(&f).unwrap();
        assert_eq!(&rad * &rep, f);
        assert!(rep.divides(&rad));
    }

    #[test]
    fn prime_factor_list() {
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(-7), vec![7]);
        assert!(prime_factors(1).is_empty());
    }
}
