use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::kirchhoff::{DodgsonBackend, ThreeValentData};
use crate::polyring::{linear_split, prime_factors, split_quadratic, var, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DenominatorStatus {
    /// `D_{N-1}` reached; it is `m * a_N`.
    ReducedToEnd { coefficient: i128 },
    /// `D_k` vanished identically.
    WeightDrop { at: usize },
    /// `D_{k-1}` has no factorization into factors linear in `a_k`, or the
    /// order ran out.
    StuckAt { at: usize },
}

#[derive(Clone, Debug)]
pub struct DenominatorRun {
    pub order: Vec<u32>,
    /// `steps[i] = D_{i+3}`.
    pub steps: Vec<Polynomial>,
    /// Factor pair of `D_{k-1}` used for `D_k`, for `k >= 4`.
    pub factors: Vec<(Polynomial, Polynomial)>,
    pub status: DenominatorStatus,
    pub edge_count: usize,
}

impl DenominatorRun {
    /// `D_k`, if computed.
    pub fn d(&self, k: usize) -> Option<&Polynomial> {
        k.checked_sub(3).and_then(|i| self.steps.get(i))
    }

    /// The integer `c_2` for good primes: `(-1)^(N-3)` after a complete run,
    /// 0 after a weight drop.
    pub fn c2(&self) -> Option<i64> {
        match self.status {
            DenominatorStatus::ReducedToEnd { .. } => {
                Some(if (self.edge_count - 3).is_multiple_of(2) { 1 } else { -1 })
            }
            DenominatorStatus::WeightDrop { .. } => Some(0),
            DenominatorStatus::StuckAt { .. } => None,
        }
    }

    /// Primes dividing the final coefficient.
    pub fn bad_primes(&self) -> Vec<u64> {
        match self.status {
            DenominatorStatus::ReducedToEnd { coefficient } => prime_factors(coefficient),
            _ => Vec::new(),
        }
    }

    /// Every recorded factor pair multiplies back to its predecessor.
    pub fn factors_reconstruct(&self) -> bool {
        self.factors
            .iter()
            .zip(&self.steps)
            .all(|((f, g), d)| &(f * g) == d)
    }
}

fn check_log_divergent(g: &Graph) -> Result<()> {
    if !g.is_log_divergent() {
        return Err(Error::NotLogDivergent {
            edges: g.edge_count(),
            twice_loops: 2 * g.loop_number(),
        });
    }
    Ok(())
}

/// The 3-valent vertex carrying the first three edges of `order`.
fn start_vertex(g: &Graph, first: [u32; 3]) -> Result<usize> {
    let ends: Vec<[usize; 2]> = first
        .iter()
        .map(|&l| g.edge(l).map(|e| [e.u, e.v]))
        .collect::<Result<_>>()?;
    ends[0]
        .iter()
        .copied()
        .find(|x| ends[1].contains(x) && ends[2].contains(x) && g.degree(*x) == 3)
        .ok_or_else(|| {
            Error::InvalidOrder(format!("{first:?} do not meet at a 3-valent vertex"))
        })
}

/// Splits `d` into two factors linear in `a_l`. A degree-one `d` pairs with 1.
fn linear_factors(d: &Polynomial, l: u32) -> Option<(Polynomial, Polynomial)> {
    let x = var(l);
    match d.degree_in(x) {
        0 | 1 => Some((d.clone(), Polynomial::one())),
        2 => split_quadratic(d, x).ok().flatten(),
        _ => None,
    }
}

fn resultant(f: &Polynomial, g: &Polynomial, l: u32) -> Polynomial {
    let x = var(l);
    let fs = linear_split(f, x).expect("linear factor");
    let gs = linear_split(g, x).expect("linear factor");
    &(&fs.leading * &gs.constant) - &(&fs.constant * &gs.leading)
}

/// Denominator reduction along `order`, a permutation of the edge labels
/// whose first three edges meet at a 3-valent vertex.
pub fn denominator_reduce(g: &Graph, order: &[u32]) -> Result<DenominatorRun> {
    check_log_divergent(g)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != g.labels() {
        return Err(Error::InvalidOrder("not a permutation of the edge labels".into()));
    }
    let first = [order[0], order[1], order[2]];
    let v = start_vertex(g, first)?;
    let t = ThreeValentData::with_roles(g, v, first, DodgsonBackend::Subgraphs)?;
    let n = g.edge_count();
    let mut run = DenominatorRun {
        order: order.to_vec(),
        steps: vec![&t.f0 * &t.f[2]],
        factors: Vec::new(),
        status: DenominatorStatus::StuckAt { at: 4 },
        edge_count: n,
    };
    for k in 4..n {
        let prev = run.steps.last().expect("D3 present");
        if prev.is_zero() {
            run.status = DenominatorStatus::WeightDrop { at: k - 1 };
            return Ok(run);
        }
        let l = order[k - 1];
        let Some((f, h)) = linear_factors(prev, l) else {
            run.status = DenominatorStatus::StuckAt { at: k };
            return Ok(run);
        };
        let next = resultant(&f, &h, l);
        run.factors.push((f, h));
        run.steps.push(next);
    }
    let last = run.steps.last().expect("D3 present");
    run.status = if last.is_zero() {
        DenominatorStatus::WeightDrop { at: n - 1 }
    } else {
        match (last.len(), last.terms()[0]) {
            (1, (m, c)) if m.degree() == 1 && m.exp(var(order[n - 1])) == 1 => {
                DenominatorStatus::ReducedToEnd { coefficient: c }
            }
            _ => DenominatorStatus::StuckAt { at: n - 1 },
        }
    };
    Ok(run)
}

/// Denominator reduction that chooses each next edge among those whose
/// elimination factorizes, preferring the smallest resulting `D_k`.
pub fn denominator_reduce_greedy(g: &Graph, first: [u32; 3]) -> Result<DenominatorRun> {
    check_log_divergent(g)?;
    let mut order: Vec<u32> = first.to_vec();
    let mut rest: Vec<u32> = g.labels().into_iter().filter(|l| !first.contains(l)).collect();
    let v = start_vertex(g, first)?;
    let t = ThreeValentData::with_roles(g, v, first, DodgsonBackend::Subgraphs)?;
    let mut d = &t.f0 * &t.f[2];
    while rest.len() > 1 && !d.is_zero() {
        let mut best: Option<(usize, usize)> = None;
        for (i, &l) in rest.iter().enumerate() {
            if let Some((f, h)) = linear_factors(&d, l) {
                let size = resultant(&f, &h, l).len();
                if best.is_none_or(|b| size < b.1) {
                    best = Some((i, size));
                }
            }
        }
        let Some((i, _)) = best else { break };
        let l = rest.remove(i);
        let (f, h) = linear_factors(&d, l).expect("checked");
        d = resultant(&f, &h, l);
        order.push(l);
    }
    order.extend(rest);
    denominator_reduce(g, &order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, zigzag};

    #[test]
    fn k4_reduces_to_minus_one() {
        let g = complete_graph(4);
        // edges 1, 2, 3 meet at vertex 0
        let run = denominator_reduce(&g, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert!(matches!(run.status, DenominatorStatus::ReducedToEnd { .. }), "{:?}", run.status);
        assert_eq!(run.c2(), Some(-1));
        assert!(run.factors_reconstruct());
        assert_eq!(run.steps.len(), 3);
    }

    #[test]
    fn zigzag5_greedy() {
        let g = zigzag(5, false).unwrap();
        let v = g.vertices_of_degree(3)[0];
        let inc: Vec<u32> = g.incident(v).iter().map(|e| e.label).collect();
        let run = denominator_reduce_greedy(&g, [inc[0], inc[1], inc[2]]).unwrap();
        assert_eq!(run.c2(), Some(-1), "{:?}", run.status);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(denominator_reduce(&complete_graph(5), &(1..=10).collect::<Vec<_>>()).is_err());
        assert!(denominator_reduce(&complete_graph(4), &[1, 2, 4, 3, 5, 6]).is_err());
        assert!(denominator_reduce(&complete_graph(4), &[1, 2, 3]).is_err());
    }
}
