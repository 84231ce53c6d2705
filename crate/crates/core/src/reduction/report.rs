//! From reduction trees to an integer `c_2` with per-`q` residue checks.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::formulas::{c2_four_valent_count, four_valent_targets, three_valent_pair};
use super::slr::{slr_reduce, ReductionTree, SlrFailure, SlrOptions, Target};
use crate::counting::FiniteField;
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::polyring::VarSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Count,
    Slr,
}

/// Which vertex formula the summands come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Formula {
    /// `c_2 = [f0, f3]`.
    ThreeValent { vertex: usize },
    /// `c_2 = -([pair] + sum of four 3-valent pairs)`.
    FourValent { vertex: usize },
}

impl Formula {
    /// `c_2 = sign * (sum of summand counts)`.
    pub fn sign(self) -> i128 {
        match self {
            Formula::ThreeValent { .. } => 1,
            Formula::FourValent { .. } => -1,
        }
    }
}

/// A named summand target.
#[derive(Clone, Debug)]
pub struct Summand {
    pub name: String,
    pub target: Target,
    pub ambient: VarSet,
}

/// Complete trees for every summand.
#[derive(Clone, Debug)]
pub struct SlrPipeline {
    pub formula: Formula,
    pub loops: usize,
    pub trees: Vec<(String, ReductionTree)>,
}

/// The summand whose reduction failed.
#[derive(Clone, Debug)]
pub struct PipelineFailure {
    pub summand: String,
    pub failure: SlrFailure,
}

impl fmt::Display for PipelineFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "summand {}: {}", self.summand, self.failure)
    }
}

/// The vertex formula to use: a 3-valent vertex if there is one, else a
/// 4-valent vertex.
pub fn choose_formula(g: &Graph) -> Result<Formula> {
    let deg3 = g.vertices_of_degree(3);
    if let Some(&v) = deg3.first() {
        return Ok(Formula::ThreeValent { vertex: v });
    }
    match g.vertices_of_degree(4).first() {
        Some(&v) => Ok(Formula::FourValent { vertex: v }),
        None => Err(Error::Usage("graph has no 3- or 4-valent vertex".into())),
    }
}

pub fn summands(g: &Graph, formula: Formula) -> Result<Vec<Summand>> {
    match formula {
        Formula::ThreeValent { vertex } => {
            let inc: Vec<u32> = g.incident(vertex).iter().map(|e| e.label).collect();
            if inc.len() != 3 {
                return Err(Error::WrongValency {
                    vertex,
                    expected: 3,
                    found: inc.len(),
                });
            }
            let (f0, f3, ambient) = three_valent_pair(g, vertex, [inc[0], inc[1], inc[2]])?;
            Ok(vec![Summand {
                name: "f0,f3".into(),
                target: Target::pair(f0, f3),
                ambient,
            }])
        }
        Formula::FourValent { vertex } => {
            let t = four_valent_targets(g, vertex)?;
            let mut out = vec![Summand {
                name: "pair".into(),
                target: Target::pair(t.pair.0, t.pair.1),
                ambient: t.ambient,
            }];
            for (i, (f0, f3, ambient)) in t.three_valent.into_iter().enumerate() {
                out.push(Summand {
                    name: format!("minus-edge-{}", i + 1),
                    target: Target::pair(f0, f3),
                    ambient,
                });
            }
            Ok(out)
        }
    }
}

/// Reduces every summand, concurrently. The outer error is for invalid
/// input; the inner one names the first summand that got stuck.
pub fn slr_pipeline(
    g: &Graph,
    formula: Formula,
    opts: SlrOptions,
) -> Result<std::result::Result<SlrPipeline, PipelineFailure>> {
    let parts = summands(g, formula)?;
    let results: Vec<_> = parts
        .into_par_iter()
        .map(|s| slr_reduce(s.target, s.ambient, opts).map(|r| (s.name, r)))
        .collect::<Result<_>>()?;
    let mut trees = Vec::with_capacity(results.len());
    for (name, r) in results {
        match r {
            Ok(t) => trees.push((name, t)),
            Err(failure) => return Ok(Err(PipelineFailure { summand: name, failure })),
        }
    }
    Ok(Ok(SlrPipeline {
        formula,
        loops: g.loop_number(),
        trees,
    }))
}

impl SlrPipeline {
    /// `c_2` modulo `q` from exact per-field tree evaluation.
    pub fn residue(&self, field: &FiniteField) -> Result<u64> {
        let q = field.order() as i128;
        let mut total = 0i128;
        for (_, t) in &self.trees {
            total += t.evaluate(field)? as i128;
        }
        Ok((self.formula.sign() * total).rem_euclid(q) as u64)
    }

    /// The integer `c_2` valid away from bad primes.
    pub fn c2(&self) -> i128 {
        self.formula.sign() * self.trees.iter().map(|(_, t)| t.value()).sum::<i128>()
    }

    pub fn bad_prime_candidates(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.trees.iter().flat_map(|(_, t)| t.bad_prime_candidates()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// `c_2` at a 4-valent vertex, counting directly or through reduction trees.
pub fn c2_four_valent(g: &Graph, v: usize, field: &FiniteField, mode: Mode, shards: usize) -> Result<u64> {
    match mode {
        Mode::Count => c2_four_valent_count(g, v, field, shards),
        Mode::Slr => {
            let formula = Formula::FourValent { vertex: v };
            match slr_pipeline(g, formula, SlrOptions::default())? {
                Ok(p) => p.residue(field),
                Err(f) => Err(Error::ReductionFailed(f.to_string())),
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BadPrimeStatus {
    /// Divides a leaf coefficient; the residue was not seen to deviate.
    Candidate,
    /// The residue at this characteristic deviates from the constant.
    Verified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPrime {
    pub p: u64,
    pub status: BadPrimeStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCheck {
    pub q: u64,
    /// From evaluating the trees over `F_q`.
    pub residue: u64,
    /// `c_2` reduced mod `q`.
    pub expected: u64,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2Report {
    pub formula: Formula,
    pub loops: usize,
    /// The integer `c` with `c_2 = -c`.
    pub constant: i128,
    pub c2: i128,
    /// `4^h / 2`.
    pub bound: i128,
    pub within_bound: bool,
    pub residues: Vec<ResidueCheck>,
    pub bad_primes: Vec<BadPrime>,
    /// Every residue agrees except possibly at candidate bad primes.
    pub consistent: bool,
    pub summand_values: Vec<(String, i128)>,
}

/// Combines the trees into the integer constant and checks it against the
/// residues at each sampled `q`.
pub fn infer_constant(p: &SlrPipeline, qs: &[u64]) -> Result<C2Report> {
    let c2 = p.c2();
    let bound = 4i128.pow(p.loops as u32) / 2;
    let candidates = p.bad_prime_candidates();
    let mut verified = Vec::new();
    let mut residues = Vec::with_capacity(qs.len());
    let mut consistent = true;
    for &q in qs {
        let field = FiniteField::new(q)?;
        let residue = p.residue(&field)?;
        let expected = c2.rem_euclid(q as i128) as u64;
        let agrees = residue == expected;
        if !agrees {
            let ch = field.characteristic();
            if candidates.contains(&ch) {
                verified.push(ch);
            } else {
                consistent = false;
            }
        }
        residues.push(ResidueCheck {
            q,
            residue,
            expected,
            agrees,
        });
    }
    let bad_primes = candidates
        .into_iter()
        .map(|p| BadPrime {
            p,
            status: if verified.contains(&p) {
                BadPrimeStatus::Verified
            } else {
                BadPrimeStatus::Candidate
            },
        })
        .collect();
    Ok(C2Report {
        formula: p.formula,
        loops: p.loops,
        constant: -c2,
        c2,
        bound,
        within_bound: c2.abs() < bound,
        residues,
        bad_primes,
        consistent,
        summand_values: p.trees.iter().map(|(n, t)| (n.clone(), t.value())).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::c2_bruteforce;
    use crate::graphs::{complete_graph, zigzag};

    #[test]
    fn k5_pipeline() {
        let g = complete_graph(5);
        let p = slr_pipeline(&g, Formula::FourValent { vertex: 0 }, SlrOptions::default())
            .unwrap()
            .unwrap();
        let r = infer_constant(&p, &[2, 3, 5, 7]).unwrap();
        assert!(r.consistent && r.within_bound);
        // brute force fixes the residues independently
        for (q, want) in [(2, 1), (3, 0)] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(c2_bruteforce(&g, &f).unwrap(), want);
            assert_eq!(r.residues.iter().find(|x| x.q == q).unwrap().residue, want);
        }
    }

    #[test]
    fn modes_agree_on_k5() {
        let g = complete_graph(5);
        let f = FiniteField::new(3).unwrap();
        assert_eq!(
            c2_four_valent(&g, 0, &f, Mode::Count, 1).unwrap(),
            c2_four_valent(&g, 0, &f, Mode::Slr, 1).unwrap()
        );
    }

    #[test]
    fn three_valent_zigzag() {
        let g = zigzag(4, false).unwrap();
        let formula = choose_formula(&g).unwrap();
        assert!(matches!(formula, Formula::ThreeValent { .. }));
        let p = slr_pipeline(&g, formula, SlrOptions::default()).unwrap().unwrap();
        let f = FiniteField::new(3).unwrap();
        assert_eq!(p.residue(&f).unwrap(), c2_bruteforce(&g, &f).unwrap());
    }
}
