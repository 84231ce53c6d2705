//! Dense modular gcd over `F_P`, one variable interpolated per level.
//!
//! Images are normalized monic in lex order with the earlier variables more
//! significant. Unlucky evaluation points show up as a larger leading
//! monomial and are skipped; a smaller one restarts the interpolation. The
//! lifted result is only trusted after exact division over the integers.

use std::cmp::Ordering;
use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::monomial::{Monomial, Var};
use super::poly::{int_gcd, Coeff, Polynomial};

pub(crate) const P: u64 = (1 << 61) - 1;

pub(crate) fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn addm(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P { s - P } else { s }
}

pub(crate) fn subm(a: u64, b: u64) -> u64 {
    if a >= b { a - b } else { a + P - b }
}

pub(crate) fn invm(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1, a, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b);
        }
        b = mulm(b, b);
        e >>= 1;
    }
    r
}

pub(crate) fn reduce(c: Coeff) -> u64 {
    c.rem_euclid(P as Coeff) as u64
}

// --- univariate, coefficient of x^i at index i ---

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn monic(mut a: Vec<u64>) -> Vec<u64> {
    trim(&mut a);
    if let Some(&l) = a.last() {
        let inv = invm(l);
        a.iter_mut().for_each(|c| *c = mulm(*c, inv));
    }
    a
}

/// Remainder of `a` by nonzero `b`, quotient pushed into `quot` if given.
fn uni_rem(mut a: Vec<u64>, b: &[u64], mut quot: Option<&mut Vec<u64>>) -> Vec<u64> {
    trim(&mut a);
    let inv = invm(*b.last().expect("nonzero divisor"));
    if let Some(q) = quot.as_deref_mut() {
        *q = vec![0; a.len().saturating_sub(b.len()) + 1];
    }
    while a.len() >= b.len() {
        let k = a.len() - b.len();
        let c = mulm(*a.last().expect("nonempty"), inv);
        if let Some(q) = quot.as_deref_mut() {
            q[k] = c;
        }
        for (i, &bi) in b.iter().enumerate() {
            a[k + i] = subm(a[k + i], mulm(c, bi));
        }
        trim(&mut a);
    }
    a
}

/// Monic gcd; zero when both are zero.
pub(crate) fn uni_gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = uni_rem(a, &b, None);
        a = b;
        b = r;
    }
    monic(a)
}

fn uni_div(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut q = Vec::new();
    let r = uni_rem(a.to_vec(), b, Some(&mut q));
    debug_assert!(r.is_empty());
    trim(&mut q);
    q
}

fn uni_eval(a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| addm(mulm(acc, x), c))
}

// --- multivariate over F_P ---

type ModPoly = HashMap<Monomial, u64>;

fn lex_cmp(a: Monomial, b: Monomial, vars: &[Var]) -> Ordering {
    for &v in vars {
        match a.exp(v).cmp(&b.exp(v)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

fn leading(f: &ModPoly, vars: &[Var]) -> Option<(Monomial, u64)> {
    f.iter()
        .map(|(&m, &c)| (m, c))
        .max_by(|a, b| lex_cmp(a.0, b.0, vars))
}

fn make_monic(f: &mut ModPoly, vars: &[Var]) {
    if let Some((_, c)) = leading(f, vars) {
        let inv = invm(c);
        f.values_mut().for_each(|v| *v = mulm(*v, inv));
    }
}

/// `f` as a polynomial in the other variables with coefficients in `F_P[y]`.
fn split_y(f: &ModPoly, y: Var) -> HashMap<Monomial, Vec<u64>> {
    let mut out: HashMap<Monomial, Vec<u64>> = HashMap::new();
    for (&m, &c) in f {
        let e = m.exp(y) as usize;
        let v = out.entry(m.without(y)).or_default();
        if v.len() <= e {
            v.resize(e + 1, 0);
        }
        v[e] = addm(v[e], c);
    }
    out
}

fn join_y(parts: &HashMap<Monomial, Vec<u64>>, y: Var) -> ModPoly {
    let mut out = ModPoly::new();
    for (&m, v) in parts {
        for (e, &c) in v.iter().enumerate() {
            if c != 0 {
                out.insert(m.with_exp(y, e as u32), c);
            }
        }
    }
    out
}

fn eval_y(parts: &HashMap<Monomial, Vec<u64>>, a: u64) -> ModPoly {
    parts
        .iter()
        .map(|(&m, v)| (m, uni_eval(v, a)))
        .filter(|t| t.1 != 0)
        .collect()
}

fn lead_coeff_y(parts: &HashMap<Monomial, Vec<u64>>, rest: &[Var]) -> Vec<u64> {
    let m = parts
        .keys()
        .copied()
        .max_by(|a, b| lex_cmp(*a, *b, rest))
        .expect("nonzero");
    parts[&m].clone()
}

struct Ctx<'a> {
    bounds: &'a [u32; 32],
    rng: &'a mut ChaCha8Rng,
}

/// Monic gcd of nonzero `f` and `g`, whose variables lie in `vars`.
fn mgcd(f: &ModPoly, g: &ModPoly, vars: &[Var], cx: &mut Ctx) -> Option<ModPoly> {
    let Some((&y, rest)) = vars.split_last() else {
        return Some(HashMap::from([(Monomial::ONE, 1)]));
    };
    let (fy, gy) = (split_y(f, y), split_y(g, y));
    let content = |p: &HashMap<Monomial, Vec<u64>>| {
        p.values().fold(Vec::new(), |acc, v| uni_gcd(&acc, v))
    };
    let (cf, cg) = (content(&fy), content(&gy));
    let c = uni_gcd(&cf, &cg);
    let fy: HashMap<_, _> = fy.iter().map(|(&m, v)| (m, uni_div(v, &cf))).collect();
    let gy: HashMap<_, _> = gy.iter().map(|(&m, v)| (m, uni_div(v, &cg))).collect();
    if rest.is_empty() {
        // univariate in y: the contents are the answer
        let mut out = join_y(&HashMap::from([(Monomial::ONE, c)]), y);
        make_monic(&mut out, vars);
        return Some(out);
    }
    let gamma = uni_gcd(&lead_coeff_y(&fy, rest), &lead_coeff_y(&gy, rest));
    let deg = |p: &HashMap<Monomial, Vec<u64>>| p.values().map(|v| v.len() - 1).max().unwrap_or(0);
    let dy = deg(&fy).min(deg(&gy)).min(cx.bounds[y.index() as usize] as usize) + gamma.len() - 1;

    let mut h: HashMap<Monomial, Vec<u64>> = HashMap::new();
    let mut newton = vec![1u64];
    let mut best: Option<Monomial> = None;
    let mut points = 0;
    let mut tries = 0;
    while points <= dy {
        tries += 1;
        if tries > 3 * dy + 20 {
            return None;
        }
        let a = cx.rng.gen_range(1..P);
        let ga = uni_eval(&gamma, a);
        if ga == 0 {
            continue;
        }
        let (fa, gb) = (eval_y(&fy, a), eval_y(&gy, a));
        if fa.is_empty() || gb.is_empty() {
            continue;
        }
        let ha = mgcd(&fa, &gb, rest, cx)?;
        let lm = leading(&ha, rest).expect("nonzero").0;
        let ord = best.map(|b| lex_cmp(lm, b, rest));
        match ord {
            Some(Ordering::Greater) => continue,
            Some(Ordering::Equal) => {}
            _ => {
                best = Some(lm);
                h.clear();
                newton = vec![1];
                points = 0;
            }
        }
        // Newton step: h += (ga * ha - h(a)) * newton / newton(a)
        let scale = invm(uni_eval(&newton, a));
        let mut keys: Vec<Monomial> = h.keys().copied().collect();
        keys.extend(ha.keys().copied().filter(|m| !h.contains_key(m)));
        for m in keys {
            let target = mulm(ha.get(&m).copied().unwrap_or(0), ga);
            let cur = h.get(&m).map_or(0, |v| uni_eval(v, a));
            let diff = mulm(subm(target, cur), scale);
            if diff == 0 {
                continue;
            }
            let v = h.entry(m).or_default();
            if v.len() < newton.len() {
                v.resize(newton.len(), 0);
            }
            for (i, &n) in newton.iter().enumerate() {
                v[i] = addm(v[i], mulm(diff, n));
            }
        }
        // newton *= (y - a)
        let mut next = vec![0u64; newton.len() + 1];
        for (i, &n) in newton.iter().enumerate() {
            next[i + 1] = addm(next[i + 1], n);
            next[i] = subm(next[i], mulm(a, n));
        }
        newton = next;
        points += 1;
    }
    h.values_mut().for_each(trim);
    h.retain(|_, v| !v.is_empty());
    let ch = content(&h);
    let mut out: HashMap<Monomial, Vec<u64>> = HashMap::new();
    for (m, v) in &h {
        let q = uni_div(v, &ch);
        // multiply back the common content in y
        let mut prod = vec![0u64; q.len() + c.len() - 1];
        for (i, &x) in q.iter().enumerate() {
            for (j, &z) in c.iter().enumerate() {
                prod[i + j] = addm(prod[i + j], mulm(x, z));
            }
        }
        out.insert(*m, prod);
    }
    let mut out = join_y(&out, y);
    make_monic(&mut out, vars);
    Some(out)
}

fn lex_leading_coeff(f: &Polynomial, vars: &[Var]) -> Coeff {
    f.terms()
        .iter()
        .max_by(|a, b| lex_cmp(a.0, b.0, vars))
        .expect("nonzero")
        .1
}

/// gcd of nonzero integer polynomials via images mod `P`, given upper bounds
/// on its degree per variable. `None` when the lifted candidate fails to
/// divide both inputs.
pub(crate) fn modular_gcd(
    f: &Polynomial,
    g: &Polynomial,
    bounds: &[u32; 32],
    rng: &mut ChaCha8Rng,
) -> Option<Polynomial> {
    let vars: Vec<Var> = f.vars().union(g.vars()).iter().collect();
    let to_mod = |p: &Polynomial| -> ModPoly {
        p.terms()
            .iter()
            .map(|&(m, c)| (m, reduce(c)))
            .filter(|t| t.1 != 0)
            .collect()
    };
    let (fm, gm) = (to_mod(f), to_mod(g));
    if fm.is_empty() || gm.is_empty() {
        return None;
    }
    let mut cx = Ctx { bounds, rng };
    let h = mgcd(&fm, &gm, &vars, &mut cx)?;
    // the lex leading coefficient of the true gcd divides this integer
    let lc = reduce(int_gcd(lex_leading_coeff(f, &vars), lex_leading_coeff(g, &vars)));
    let half = P / 2;
    let cand = Polynomial::from_terms(h.into_iter().map(|(m, c)| {
        let c = mulm(c, lc);
        (m, if c > half { c as Coeff - P as Coeff } else { c as Coeff })
    }))
    .primitive();
    (cand.divides(f) && cand.divides(g)).then_some(cand)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn univariate_gcd_mod_p() {
        // (x + 1)(x + 2) and (x + 1)(x + 3)
        let a = [2, 3, 1];
        let b = [3, 4, 1];
        assert_eq!(uni_gcd(&a, &b), vec![1, 1]);
        assert_eq!(uni_gcd(&[], &b), b.to_vec());
    }

    #[test]
    fn recovers_shared_factor() {
        let h = p("3*a1*a2 + 1*a3^2 + -2*a1*a3");
        let f = &h * &p("1*a1^2 + 5*a2*a3 + 1*a3^2");
        let g = &h * &p("2*a1*a2 + -1*a3^2");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let got = modular_gcd(&f, &g, &[4; 32], &mut rng).unwrap();
        assert!(got == h || got == -&h, "{got}");
    }

    #[test]
    fn coprime_inputs_give_one() {
        let f = p("1*a1*a2 + 1*a3");
        let g = p("1*a1 + 1*a2*a3");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(modular_gcd(&f, &g, &[2; 32], &mut rng), Some(Polynomial::one()));
    }
}
