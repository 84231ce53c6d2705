//! Polynomial identities among graph and Dodgson polynomials.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, VerifyOptions};
use crate::error::Result;
use crate::graphs::{circulant_12, complete_graph, connected_multigraphs, random_connected, zigzag, Graph};
use crate::kirchhoff::{
    determinant, dodgson, forest_polynomial, graph_polynomial, sign_between, surgery, DodgsonBackend,
    DodgsonSpec, FourValentData, GraphPolyBackend, ThreeValentData, E8888_SIGNS,
};
use crate::polyring::{x, Coeff, Polynomial};

const SUB: DodgsonBackend = DodgsonBackend::Subgraphs;

pub fn all(opts: VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    Ok(vec![
        backend_equivalence(&mut rng, 200)?,
        dodgson_backends(&mut rng, 100)?,
        contraction_deletion(6)?,
        contraction_deletion_dodgson(&mut rng, 100)?,
        dodgson_identity(&mut rng, 100)?,
        jacobi(&mut rng, 100),
        three_valent(&mut rng, 100)?,
        four_valent(&mut rng, 100)?,
        forest_decompositions()?,
        surgery_identities()?,
    ])
}

/// `Psi` with the conventions needed for minors: 0 when disconnected, 1 for
/// a single vertex without edges.
fn psi(g: &Graph) -> Result<Polynomial> {
    if !g.is_connected() {
        return Ok(Polynomial::zero());
    }
    if g.edge_count() == 0 {
        return Ok(Polynomial::one());
    }
    graph_polynomial(g, GraphPolyBackend::Trees)
}

fn random_graph(rng: &mut ChaCha8Rng, vertices: std::ops::RangeInclusive<usize>, max_edges: usize) -> Graph {
    let n = rng.gen_range(vertices);
    let m = rng.gen_range(n - 1..=max_edges.max(n - 1));
    random_connected(rng, n, m)
}

fn pick(rng: &mut ChaCha8Rng, from: &[u32], k: usize) -> Vec<u32> {
    from.choose_multiple(rng, k).copied().collect()
}

fn minus(from: &[u32], drop: &[u32]) -> Vec<u32> {
    from.iter().copied().filter(|l| !drop.contains(l)).collect()
}

fn with(v: &[u32], extra: &[u32]) -> Vec<u32> {
    v.iter().chain(extra).copied().collect()
}

/// Spanning-tree sum against the determinant of the expanded matrix, on
/// every connected multigraph with at most 6 edges and `random` random
/// graphs with at most 12 edges.
pub fn backend_equivalence(rng: &mut ChaCha8Rng, random: usize) -> Result<Check> {
    let mut c = Check::new("graph polynomial: spanning trees = determinant");
    let mut graphs = connected_multigraphs(6);
    for _ in 0..random {
        graphs.push(random_graph(rng, 2..=8, 12));
    }
    for g in &graphs {
        let a = graph_polynomial(g, GraphPolyBackend::Trees)?;
        let b = graph_polynomial(g, GraphPolyBackend::Determinant)?;
        c.record(a == b, || format!("{}: {a} vs {b}", g.to_json()));
    }
    Ok(c)
}

fn random_spec(rng: &mut ChaCha8Rng, g: &Graph, max_size: usize) -> DodgsonSpec {
    let labels = g.labels();
    let s = rng.gen_range(0..=max_size.min(labels.len() / 2));
    let i = pick(rng, &labels, s);
    let j = pick(rng, &labels, s);
    let rest = minus(&minus(&labels, &i), &j);
    let n = rng.gen_range(0..=2.min(rest.len()));
    let k = pick(rng, &rest, n);
    DodgsonSpec::new(&i, &j, &k)
}

/// Subgraph enumeration against elimination, equal up to one sign.
pub fn dodgson_backends(rng: &mut ChaCha8Rng, n: usize) -> Result<Check> {
    let mut c = Check::new("Dodgson minors: subgraph sum = elimination (up to sign)");
    for _ in 0..n {
        let g = random_graph(rng, 3..=6, 10);
        let spec = random_spec(rng, &g, 2);
        let a = dodgson(&g, &spec, SUB)?;
        let b = dodgson(&g, &spec, DodgsonBackend::Elimination)?;
        c.record(sign_between(&a, &b) != 0, || format!("{} {spec}: {a} vs {b}", g.to_json()));
    }
    Ok(c)
}

/// `Psi_G = Psi_{G \ e} a_e + Psi_{G // e}` for every non-loop edge of every
/// connected multigraph with at most `max_edges` edges.
pub fn contraction_deletion(max_edges: usize) -> Result<Check> {
    let mut c = Check::new("contraction-deletion on graph polynomials");
    for g in connected_multigraphs(max_edges) {
        let whole = psi(&g)?;
        for e in g.edges().iter().filter(|e| !e.is_loop()) {
            let rhs = &(&psi(&g.delete_edge(e.label)?)? * &x(e.label)) + &psi(&g.contract_edge(e.label)?)?;
            c.record(whole == rhs, || format!("{} edge {}", g.to_json(), e.label));
        }
    }
    Ok(c)
}

/// `Psi^{I,J}_K = +- a_e Psi^{Ie,Je}_K + Psi^{I,J}_{Ke}` on random minors.
pub fn contraction_deletion_dodgson(rng: &mut ChaCha8Rng, n: usize) -> Result<Check> {
    let mut c = Check::new("contraction-deletion on Dodgson minors (up to sign)");
    while c.instances < n {
        let g = random_graph(rng, 3..=6, 9);
        let spec = random_spec(rng, &g, 2);
        let used = with(&with(&spec.i, &spec.j), &spec.k);
        let free = minus(&g.labels(), &used);
        let Some(&e) = free.choose(rng) else { continue };
        let lhs = dodgson(&g, &spec, SUB)?;
        let del = dodgson(&g, &DodgsonSpec::new(&with(&spec.i, &[e]), &with(&spec.j, &[e]), &spec.k), SUB)?;
        let con = dodgson(&g, &DodgsonSpec::new(&spec.i, &spec.j, &with(&spec.k, &[e])), SUB)?;
        let t = &del * &x(e);
        let ok = lhs == &t + &con || lhs == &con - &t;
        c.record(ok, || format!("{} {spec} e={e}", g.to_json()));
    }
    Ok(c)
}

/// `Psi^{Ix,Jx} Psi^{Ia,Jb} - Psi^{Ix,Jb} Psi^{Ia,Jx} = +- Psi^{I,J} Psi^{Iax,Jbx}`.
pub fn dodgson_identity(rng: &mut ChaCha8Rng, n: usize) -> Result<Check> {
    let mut c = Check::new("first Dodgson identity (up to sign)");
    while c.instances < n {
        let g = random_graph(rng, 4..=7, 11);
        let labels = g.labels();
        if labels.len() < 5 {
            continue;
        }
        let s = rng.gen_range(0..=1);
        let ij = pick(rng, &labels, 2 * s);
        let (i, j) = ij.split_at(s);
        let rest = minus(&labels, &ij);
        let abx = pick(rng, &rest, 3);
        let (a, b, xx) = (abx[0], abx[1], abx[2]);
        let d = |r: &[u32], cl: &[u32]| dodgson(&g, &DodgsonSpec::new(&with(i, r), &with(j, cl), &[]), SUB);
        let lhs = &(&d(&[xx], &[xx])? * &d(&[a], &[b])?) - &(&d(&[xx], &[b])? * &d(&[a], &[xx])?);
        let rhs = &d(&[], &[])? * &d(&[a, xx], &[b, xx])?;
        c.record(sign_between(&lhs, &rhs) != 0, || {
            format!("{} I={i:?} J={j:?} a={a} b={b} x={xx}", g.to_json())
        });
    }
    Ok(c)
}

fn submatrix(m: &[Vec<Coeff>], idx: &[usize]) -> Vec<Vec<Coeff>> {
    idx.iter().map(|&r| idx.iter().map(|&c| m[r][c]).collect()).collect()
}

fn det(m: Vec<Vec<Coeff>>) -> Coeff {
    if m.is_empty() {
        1
    } else {
        determinant(m)
    }
}

fn adjugate(m: &[Vec<Coeff>]) -> Vec<Vec<Coeff>> {
    let n = m.len();
    let mut adj = vec![vec![0; n]; n];
    for r in 0..n {
        for s in 0..n {
            let minor: Vec<Vec<Coeff>> = (0..n)
                .filter(|&i| i != r)
                .map(|i| (0..n).filter(|&j| j != s).map(|j| m[i][j]).collect())
                .collect();
            let sign = if (r + s) % 2 == 0 { 1 } else { -1 };
            // transpose of the cofactor matrix
            adj[s][r] = sign * det(minor);
        }
    }
    adj
}

/// Jacobi's formula for minors of the adjugate, multiplied through by
/// `det M` so that every `k` in `0..=n` is covered:
/// `det M * det adj(M)[k..n] = det(M)^(n-k) * det M[0..k]`.
pub fn jacobi(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let mut c = Check::new("Jacobi formula for adjugate minors");
    let mut matrices = 0;
    while matrices < n {
        let size = rng.gen_range(1..=6);
        let m: Vec<Vec<Coeff>> = (0..size).map(|_| (0..size).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let d = det(m.clone());
        if d == 0 {
            continue;
        }
        matrices += 1;
        let adj = adjugate(&m);
        for k in 0..=size {
            let tail: Vec<usize> = (k..size).collect();
            let head: Vec<usize> = (0..k).collect();
            let lhs = d * det(submatrix(&adj, &tail));
            let rhs = d.pow((size - k) as u32) * det(submatrix(&m, &head));
            c.record(lhs == rhs, || format!("{m:?} k={k}"));
        }
    }
    c
}

/// `Psi^i = sum_{j != i} +- Psi^{i,j}` over the edges at a vertex, which
/// holds because removing all of them isolates the vertex.
fn vanishing_minor_row(g: &Graph, edges: &[u32], i: u32) -> Result<bool> {
    let target = dodgson(g, &DodgsonSpec::principal(&[i], &[]), SUB)?;
    let terms: Vec<Polynomial> = edges
        .iter()
        .filter(|&&j| j != i)
        .map(|&j| dodgson(g, &DodgsonSpec::new(&[i], &[j], &[]), SUB))
        .collect::<Result<_>>()?;
    Ok(sign_pattern(&target, &terms).is_some())
}

/// Signs `s` with `target = sum s_j terms_j`.
fn sign_pattern(target: &Polynomial, terms: &[Polynomial]) -> Option<Vec<i8>> {
    (0..1u32 << terms.len()).find_map(|mask| {
        let s: Vec<i8> = (0..terms.len()).map(|n| if mask >> n & 1 == 1 { -1 } else { 1 }).collect();
        let sum = terms
            .iter()
            .zip(&s)
            .fold(Polynomial::zero(), |acc, (t, &sg)| &acc + &t.scale(sg as Coeff));
        (sum == *target).then_some(s)
    })
}

fn loop_free_at(g: &Graph, v: usize) -> bool {
    g.incident(v).iter().all(|e| !e.is_loop())
}

/// Local expansion of `Psi_G` at a 3-valent vertex, the quadratic relation
/// among its coefficients and the vanishing-minor relation.
pub fn three_valent(rng: &mut ChaCha8Rng, random: usize) -> Result<Check> {
    let mut c = Check::new("3-valent vertex: expansion, quadratic relation, vanishing minor");
    let mut cases: Vec<(Graph, usize)> = Vec::new();
    let fixed = [complete_graph(4), zigzag(3, false)?, zigzag(4, false)?, zigzag(5, false)?];
    for g in fixed {
        for v in g.vertices_of_degree(3) {
            cases.push((g.clone(), v));
        }
    }
    let mut added = 0;
    while added < random {
        let g = random_graph(rng, 4..=7, 11);
        let vs: Vec<usize> = g.vertices_of_degree(3).into_iter().filter(|&v| loop_free_at(&g, v)).collect();
        if let Some(&v) = vs.choose(rng) {
            cases.push((g, v));
            added += 1;
        }
    }
    for (g, v) in &cases {
        let t = ThreeValentData::new(g, *v, SUB)?;
        let whole = psi(g)?;
        let edges: Vec<u32> = t.edges.to_vec();
        let mut ok = t.reconstruct() == whole && t.quadratic_identity_holds();
        for &i in &edges {
            ok &= vanishing_minor_row(g, &edges, i)?;
        }
        c.record(ok, || format!("{} vertex {v}", g.to_json()));
    }
    Ok(c)
}

/// Signs of `Psi^1 = +- Psi^{1,2} +- Psi^{1,3} +- Psi^{1,4}` on a localized graph.
fn first_row_signs(local: &Graph) -> Result<Option<Vec<i8>>> {
    let target = dodgson(local, &DodgsonSpec::principal(&[1], &[]), SUB)?;
    let terms: Vec<Polynomial> = (2..=4)
        .map(|j| dodgson(local, &DodgsonSpec::new(&[1], &[j], &[]), SUB))
        .collect::<Result<_>>()?;
    Ok(sign_pattern(&target, &terms))
}

/// The relations among `a`, `b^i_j`, `c^{i,j}` at a 4-valent vertex, with the
/// first-row signs calibrated on `K_5`.
pub fn four_valent(rng: &mut ChaCha8Rng, random: usize) -> Result<Check> {
    let mut c = Check::new("4-valent vertex: first row, sums, square mod a, Psi^{12,34}");
    let calib = first_row_signs(&complete_graph(5).localize(0)?.0)?;
    let mut cases: Vec<(Graph, usize)> = Vec::new();
    for g in [complete_graph(5), circulant_12(6), circulant_12(7), circulant_12(8)] {
        for v in 0..g.vertex_count() {
            cases.push((g.clone(), v));
        }
    }
    let mut added = 0;
    while added < random {
        let g = random_graph(rng, 5..=7, 12);
        // the relations need G \ v connected; otherwise a = 0 and Psi^{12,34} = 0
        let vs: Vec<usize> = g
            .vertices_of_degree(4)
            .into_iter()
            .filter(|&v| loop_free_at(&g, v) && g.remove_vertex(v).is_ok_and(|r| r.is_connected()))
            .collect();
        if let Some(&v) = vs.choose(rng) {
            cases.push((g, v));
            added += 1;
        }
    }
    for (g, v) in &cases {
        let d = FourValentData::new(g, *v, SUB)?;
        let row = first_row_signs(&d.local)?;
        let ok = calib.is_some()
            && row == calib
            && d.check_a()
            && d.check_sums()
            && d.check_square_mod_a()
            && match d.psi_12_34_signs() {
                // parallel edges at v can make both sides vanish; no sign then
                Some(_) if d.psi_12_34.is_zero() => true,
                signs => signs == Some(E8888_SIGNS),
            };
        c.record(ok, || format!("{} vertex {v}", g.to_json()));
    }
    Ok(c)
}

/// `Psi^{12,34}`, `b^1_4`, `b^2_4` as spanning forest polynomials of the
/// graph with the 4-valent vertex removed, blocks made of its neighbors.
pub fn forest_decompositions() -> Result<Check> {
    let mut c = Check::new("forest decompositions at a 4-valent vertex (up to sign)");
    for g in [complete_graph(5), circulant_12(6)] {
        for v in 0..g.vertex_count() {
            let d = FourValentData::new(&g, v, SUB)?;
            let rest = d.local.remove_vertex(0)?;
            // far ends of local edges 1..4, shifted by the removal of vertex 0
            let nb: Vec<usize> = (1..=4u32).map(|l| d.local.edge(l).map(|e| e.other(0) - 1)).collect::<Result<_>>()?;
            let phi = |blocks: &[&[usize]]| {
                let b: Vec<Vec<usize>> = blocks.iter().map(|s| s.iter().map(|&i| nb[i - 1]).collect()).collect();
                forest_polynomial(&rest, &b)
            };
            let p13_24 = phi(&[&[1, 3], &[2, 4]])?;
            let p23_14 = phi(&[&[2, 3], &[1, 4]])?;
            let p123_4 = phi(&[&[1, 2, 3], &[4]])?;
            let ok = sign_between(&d.psi_12_34, &(&p13_24 - &p23_14)) != 0
                && sign_between(&d.b[&(1, 4)], &(&p23_14 + &p123_4)) != 0
                && sign_between(&d.b[&(2, 4)], &(&p13_24 + &p123_4)) != 0;
            c.record(ok, || format!("{} vertex {v}", g.to_json()));
        }
    }
    Ok(c)
}

/// Minors at a 4-valent vertex against minors of the surgered graph in the
/// two new edges.
pub fn surgery_identities() -> Result<Check> {
    let mut c = Check::new("surgery: minors at the vertex = minors in the new edges (up to sign)");
    for g in [complete_graph(5), circulant_12(6), circulant_12(7)] {
        for v in 0..g.vertex_count() {
            let local = g.localize(v)?.0;
            let s = surgery(&local, 0, None)?;
            let dg = |i: &[u32], j: &[u32], k: &[u32]| dodgson(&local, &DodgsonSpec::new(i, j, k), SUB);
            let dh = |i: &[u32], j: &[u32], k: &[u32]| dodgson(&s.graph, &DodgsonSpec::new(i, j, k), SUB);
            let pairs = [
                (dg(&[1, 2], &[1, 2], &[3, 4])?, dh(&[s.s], &[s.s], &[s.t])?),
                (dg(&[3, 4], &[3, 4], &[1, 2])?, dh(&[s.t], &[s.t], &[s.s])?),
                (dg(&[1, 2], &[3, 4], &[])?, dh(&[s.s], &[s.t], &[])?),
            ];
            let ok = pairs.iter().all(|(a, b)| !a.is_zero() && sign_between(a, b) != 0);
            c.record(ok, || format!("{} vertex {v}", g.to_json()));
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for c in [
            backend_equivalence(&mut rng, 10).unwrap(),
            contraction_deletion(4).unwrap(),
            dodgson_identity(&mut rng, 10).unwrap(),
            jacobi(&mut rng, 10),
            three_valent(&mut rng, 5).unwrap(),
            four_valent(&mut rng, 5).unwrap(),
        ] {
            assert!(c.passed(), "{c}");
        }
    }

    #[test]
    fn broken_identity_is_caught() {
        let mut c = Check::new("x");
        let g = complete_graph(4);
        let a = psi(&g).unwrap();
        c.record(a == &a + &Polynomial::one(), || "off by one".into());
        assert!(!c.passed());
    }
}
