//! Exact point-count identities and divisibilities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, VerifyOptions};
use crate::counting::{
    c2_bruteforce, chevalley_warning_applies, count_affine, edge_space, verify_linear_elim, FiniteField,
};
use crate::error::Result;
use crate::graphs::{complete_graph, connected_multigraphs, Graph};
use crate::kirchhoff::{dodgson, graph_polynomial, DodgsonBackend, DodgsonSpec, GraphPolyBackend};
use crate::polyring::{var, Monomial, Polynomial, Var, VarSet};
use crate::reduction::{c2_three_valent_roles, eliminate_multi, two_edge_elimination_check, sum_terms};

pub fn all(opts: VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let corpus = connected_multigraphs(6);
    Ok(vec![
        linear_elimination(&mut rng, 500, &[2, 3, 5])?,
        graph_divisibility(&corpus, &[2, 3, 4, 5])?,
        chevalley_warning(&mut rng, &corpus, 200)?,
        two_edge_elimination(&[2, 3])?,
        multi_elimination(&mut rng, 100, &[2, 3])?,
        k5_four_system()?,
        three_valent_formula(&corpus, &[2, 3])?,
    ])
}

/// Random polynomial in `vars` with degree at most `x_deg` in `x` and at most
/// 2 in the others.
fn random_poly(rng: &mut ChaCha8Rng, vars: &[Var], x: Var, x_deg: u32) -> Polynomial {
    let terms = rng.gen_range(0..=4);
    Polynomial::from_terms((0..terms).map(|_| {
        let m = vars.iter().fold(Monomial::ONE, |m, &v| {
            let cap = if v == x { x_deg } else { 2 };
            m.with_exp(v, rng.gen_range(0..=cap))
        });
        (m, rng.gen_range(-3..=3))
    }))
}

/// The four one- and two-polynomial elimination identities on random
/// triples linear in the eliminated variable.
pub fn linear_elimination(rng: &mut ChaCha8Rng, n: usize, qs: &[u64]) -> Result<Check> {
    let mut c = Check::new("linear elimination identities (exact counts)");
    let vars: Vec<Var> = (1..=4).map(var).collect();
    let x = vars[0];
    let fields: Vec<FiniteField> = qs.iter().map(|&q| FiniteField::new(q)).collect::<Result<_>>()?;
    for _ in 0..n {
        let f = random_poly(rng, &vars, x, 1);
        let g = random_poly(rng, &vars, x, 1);
        let h = random_poly(rng, &vars[1..], x, 0);
        for field in &fields {
            let r = verify_linear_elim(&f, &g, &h, x, field)?;
            c.record(r.all_hold(), || format!("q={} f={f} g={g} h={h}: {:?}", field.order(), r.checks));
        }
    }
    Ok(c)
}

fn psi(g: &Graph) -> Result<Polynomial> {
    graph_polynomial(g, GraphPolyBackend::Trees)
}

/// `q^2 | [Psi_G]` and `q | [Psi^e, Psi_e]` for every edge, on corpus graphs
/// with at least 3 vertices.
pub fn graph_divisibility(corpus: &[Graph], qs: &[u64]) -> Result<Check> {
    let mut c = Check::new("graph hypersurface divisibilities");
    for &q in qs {
        let field = FiniteField::new(q)?;
        let qq = q as u128;
        for g in corpus.iter().filter(|g| g.vertex_count() >= 3) {
            let p = psi(g)?;
            let all = edge_space(g);
            let n = count_affine(std::slice::from_ref(&p), all, &field)?.count;
            c.record(n % (qq * qq) == 0, || format!("q={q} {} [Psi]={n}", g.to_json()));
            for l in g.labels() {
                let x = var(l);
                let pair = [p.coeff_of(x, 1), p.coeff_of(x, 0)];
                let m = count_affine(&pair, all.without(x), &field)?.count;
                c.record(m % qq == 0, || format!("q={q} {} edge {l} count={m}", g.to_json()));
            }
        }
    }
    Ok(c)
}

/// Whenever the degrees sum below the dimension, the count is divisible by
/// `q`. Graph hypersurfaces of the corpus plus random systems.
pub fn chevalley_warning(rng: &mut ChaCha8Rng, corpus: &[Graph], random: usize) -> Result<Check> {
    let mut c = Check::new("Chevalley-Warning vanishing");
    let check = |polys: &[Polynomial], ambient: VarSet, c: &mut Check| -> Result<()> {
        if !chevalley_warning_applies(polys, ambient) {
            return Ok(());
        }
        for q in [2u64, 3, 4] {
            let n = count_affine(polys, ambient, &FiniteField::new(q)?)?.count;
            c.record(n % q as u128 == 0, || format!("q={q} {polys:?} count={n}"));
        }
        Ok(())
    };
    for g in corpus.iter().filter(|g| g.edge_count() <= 5) {
        check(&[psi(g)?], edge_space(g), &mut c)?;
    }
    let vars: Vec<Var> = (1..=6).map(var).collect();
    let ambient = vars.iter().fold(VarSet::default(), |s, &v| s.with(v));
    for _ in 0..random {
        let k = rng.gen_range(1..=2);
        let polys: Vec<Polynomial> = (0..k).map(|_| random_poly(rng, &vars, vars[0], 2)).collect();
        check(&polys, ambient, &mut c)?;
    }
    Ok(c)
}

/// Elimination of two edges from `[Psi_G]` as an exact integer identity on
/// `K_4` and `K_5`.
pub fn two_edge_elimination(qs: &[u64]) -> Result<Check> {
    let mut c = Check::new("two-edge elimination from [Psi] (exact)");
    // adjacent and non-adjacent edge pairs
    for (g, pairs) in [(complete_graph(4), [(1, 2), (1, 6)]), (complete_graph(5), [(1, 2), (1, 8)])] {
        for &q in qs {
            let field = FiniteField::new(q)?;
            for (e1, e2) in pairs {
                let r = two_edge_elimination_check(&g, e1, e2, &field)?;
                c.record(r.holds(), || format!("K{} q={q} edges {e1},{e2}: {} vs {}", g.vertex_count(), r.lhs, r.rhs));
            }
        }
    }
    Ok(c)
}

/// Elimination of one variable from systems of one or two polynomials
/// linear in it: the signed terms sum to the original count.
pub fn multi_elimination(rng: &mut ChaCha8Rng, n: usize, qs: &[u64]) -> Result<Check> {
    let mut c = Check::new("multi-polynomial elimination (exact)");
    let vars: Vec<Var> = (1..=4).map(var).collect();
    let ambient = vars.iter().fold(VarSet::default(), |s, &v| s.with(v));
    let x = vars[0];
    for i in 0..n {
        let k = 1 + i % 2;
        let polys: Vec<Polynomial> = (0..k).map(|_| random_poly(rng, &vars, x, 1)).collect();
        let terms = eliminate_multi(&polys, x)?;
        for &q in qs {
            let field = FiniteField::new(q)?;
            let lhs = count_affine(&polys, ambient, &field)?.count as i128;
            let rhs = sum_terms(&terms, ambient.without(x), &field)?;
            c.record(lhs == rhs, || format!("q={q} {polys:?}: {lhs} vs {rhs}"));
        }
    }
    Ok(c)
}

/// `(Psi^{12}, Psi^1_2, Psi^2_1, Psi_{12})` of `K_5` with `a_3` eliminated,
/// at `q = 2`.
pub fn k5_four_system() -> Result<Check> {
    let mut c = Check::new("K5 four-polynomial system, one variable eliminated (exact)");
    let g = complete_graph(5);
    let p = |i: &[u32], k: &[u32]| dodgson(&g, &DodgsonSpec::principal(i, k), DodgsonBackend::Subgraphs);
    let polys = [p(&[1, 2], &[])?, p(&[1], &[2])?, p(&[2], &[1])?, p(&[], &[1, 2])?];
    let ambient = edge_space(&g).without(var(1)).without(var(2));
    let field = FiniteField::new(2)?;
    let lhs = count_affine(&polys, ambient, &field)?.count as i128;
    let rhs = sum_terms(&eliminate_multi(&polys, var(3))?, ambient.without(var(3)), &field)?;
    c.record(lhs == rhs, || format!("{lhs} vs {rhs}"));
    Ok(c)
}

/// `[f0, f3] = c_2` at every 3-valent vertex and for every choice of the
/// edge playing role 3, on corpus graphs with at least 4 vertices and 4
/// edges.
pub fn three_valent_formula(corpus: &[Graph], qs: &[u64]) -> Result<Check> {
    let mut c = Check::new("c2 from a 3-valent vertex, every role assignment");
    for &q in qs {
        let field = FiniteField::new(q)?;
        // the 3-edge star has |V| = 4 yet [f0, f3] = 1 while c2 = 0: the
        // derivation drops a q^(N-3) term, which is 1 at N = 3
        for g in corpus.iter().filter(|g| g.vertex_count() >= 4 && g.edge_count() > 3) {
            let want = c2_bruteforce(g, &field)?;
            for v in g.vertices_of_degree(3) {
                let inc: Vec<u32> = g.incident(v).iter().map(|e| e.label).collect();
                if g.incident(v).iter().any(|e| e.is_loop()) {
                    continue;
                }
                for r in 0..3 {
                    let roles = [inc[(r + 1) % 3], inc[(r + 2) % 3], inc[r]];
                    let got = c2_three_valent_roles(g, v, roles, &field)?;
                    c.record(got == want, || format!("q={q} {} vertex {v} roles {roles:?}: {got} vs {want}", g.to_json()));
                }
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_is_a_boundary_case() {
        let star = Graph::new(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        let f = FiniteField::new(3).unwrap();
        assert_eq!(c2_bruteforce(&star, &f).unwrap(), 0);
        assert_eq!(c2_three_valent_roles(&star, 3, [1, 2, 3], &f).unwrap(), 1);
    }

    #[test]
    fn small_runs_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let corpus = connected_multigraphs(4);
        for c in [
            linear_elimination(&mut rng, 20, &[2, 3]).unwrap(),
            graph_divisibility(&corpus, &[2, 3]).unwrap(),
            multi_elimination(&mut rng, 10, &[2]).unwrap(),
            k5_four_system().unwrap(),
        ] {
            assert!(c.passed(), "{c}");
        }
    }
}
