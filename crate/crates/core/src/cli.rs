//! Command drivers behind the `c2tool` binary. Each command returns its
//! report and exit code so it can be driven from tests and examples.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::counting::{c2_bruteforce_sharded, FiniteField};
use crate::error::{Error, Result};
use crate::graphs::{complete_graph, zigzag, Graph};
use crate::polyring::{Polynomial, VarSet};
use crate::reduction::{
    c2_four_valent, c2_three_valent, choose_formula, denominator_reduce_greedy, infer_constant, slr_pipeline,
    slr_reduce, C2Report, DenominatorStatus, Formula, Mode, ReductionTree, SlrOptions, Target, Trace,
};
use crate::verify::{run_suite, Suite, SuiteReport, VerifyOptions};

/// Stable exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSource {
    File(PathBuf),
    /// `zigzag:h`, `zigzag:h:completed` or `k:n`.
    Gen(String),
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph> {
        match self {
            GraphSource::File(p) => Graph::from_json(&fs::read_to_string(p)?),
            GraphSource::Gen(s) => generate(s),
        }
    }
}

/// Parses a generator spec.
pub fn generate(spec: &str) -> Result<Graph> {
    let bad = || Error::Usage(format!("bad generator '{spec}', expected zigzag:h[:completed] or k:n"));
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match parts.as_slice() {
        ["zigzag", h] => zigzag(num(h)?, false),
        ["zigzag", h, "completed"] => zigzag(num(h)?, true),
        ["k", n] => match num(n)? {
            n @ 2.. => Ok(complete_graph(n)),
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Bruteforce,
    ThreeValent,
    FourValent,
    Denominator,
    Slr,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Bruteforce,
        Method::ThreeValent,
        Method::FourValent,
        Method::Denominator,
        Method::Slr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Bruteforce => "bruteforce",
            Method::ThreeValent => "three-valent",
            Method::FourValent => "four-valent",
            Method::Denominator => "denominator",
            Method::Slr => "slr",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown method '{s}'")))
    }
}

/// Parses `2,3,5` into field orders, rejecting unsupported ones.
pub fn parse_qs(s: &str) -> Result<Vec<u64>> {
    let qs = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Usage(format!("bad q '{t}'"))))
        .collect::<Result<Vec<_>>>()?;
    for &q in &qs {
        FiniteField::new(q)?;
    }
    Ok(qs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    C2,
    Verify(String),
    Reduce,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub source: Option<GraphSource>,
    /// Polynomial target for `reduce`, one polynomial or two separated by `;`.
    pub target: Option<String>,
    pub qs: Vec<u64>,
    pub method: Method,
    pub threads: usize,
    pub json: bool,
    pub trace: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::C2,
            source: None,
            target: None,
            qs: vec![2, 3, 5, 7],
            method: Method::Bruteforce,
            threads: 1,
            json: false,
            trace: None,
        }
    }
}

/// Printed report and exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

/// Exit code for an error escaping a command.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::UnknownSuite(_) | Error::Parse(_) | Error::UnsupportedField(_) => EXIT_USAGE,
        Error::WrongValency { .. } | Error::TooFewVertices { .. } | Error::NotLogDivergent { .. } => EXIT_USAGE,
        Error::ZigzagTooSmall(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Runs `cfg` on a rayon pool of `cfg.threads` workers.
pub fn run(cfg: &RunConfig) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.threads.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                code: EXIT_FAILURE,
                output: format!("error: {e}\n"),
            }
        }
    };
    let r = pool.install(|| match &cfg.command {
        Command::C2 => cmd_c2(cfg),
        Command::Verify(s) => cmd_verify(s, cfg),
        Command::Reduce => cmd_reduce(cfg),
    });
    r.unwrap_or_else(|e| Outcome {
        code: error_code(&e),
        output: format!("error: {e}\n"),
    })
}

fn graph(cfg: &RunConfig) -> Result<Graph> {
    cfg.source
        .as_ref()
        .ok_or_else(|| Error::Usage("need --graph PATH or --gen SPEC".into()))?
        .load()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub loops: usize,
}

impl GraphSummary {
    fn of(g: &Graph) -> GraphSummary {
        GraphSummary {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            loops: g.loop_number(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residue {
    pub q: u64,
    pub c2: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenominatorSummary {
    pub order: Vec<u32>,
    pub status: DenominatorStatus,
    pub c2: Option<i64>,
    pub bad_primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2Output {
    pub graph: GraphSummary,
    pub method: Method,
    pub residues: Vec<Residue>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vertex: Option<usize>,
    /// Inferred constant, for `slr` and `four-valent`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<C2Report>,
    /// Why no constant was inferred.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub denominator: Option<DenominatorSummary>,
}

fn vertex_of_degree(g: &Graph, k: usize) -> Result<usize> {
    g.vertices_of_degree(k)
        .first()
        .copied()
        .ok_or_else(|| Error::Usage(format!("graph has no {k}-valent vertex")))
}

fn residues(qs: &[u64], f: impl Fn(&FiniteField) -> Result<u64>) -> Result<Vec<Residue>> {
    qs.iter()
        .map(|&q| Ok(Residue { q, c2: f(&FiniteField::new(q)?)? }))
        .collect()
}

/// `c_2` residues by the chosen method.
pub fn compute_c2(g: &Graph, method: Method, qs: &[u64], shards: usize) -> Result<C2Output> {
    let mut out = C2Output {
        graph: GraphSummary::of(g),
        method,
        residues: Vec::new(),
        vertex: None,
        report: None,
        note: None,
        denominator: None,
    };
    match method {
        Method::Bruteforce => out.residues = residues(qs, |f| c2_bruteforce_sharded(g, f, shards))?,
        Method::ThreeValent => {
            let v = vertex_of_degree(g, 3)?;
            out.vertex = Some(v);
            out.residues = residues(qs, |f| c2_three_valent(g, v, f))?;
        }
        Method::FourValent => {
            let v = vertex_of_degree(g, 4)?;
            out.vertex = Some(v);
            out.residues = residues(qs, |f| c2_four_valent(g, v, f, Mode::Count, shards))?;
            match slr_pipeline(g, Formula::FourValent { vertex: v }, SlrOptions::default())? {
                Ok(p) => out.report = Some(infer_constant(&p, qs)?),
                Err(f) => out.note = Some(format!("no constant: {f}")),
            }
        }
        Method::Denominator => {
            let v = vertex_of_degree(g, 3)?;
            let inc: Vec<u32> = g.incident(v).iter().map(|e| e.label).collect();
            let run = denominator_reduce_greedy(g, [inc[0], inc[1], inc[2]])?;
            out.vertex = Some(v);
            if let Some(c2) = run.c2() {
                out.residues = qs
                    .iter()
                    .map(|&q| Residue {
                        q,
                        c2: (c2 as i128).rem_euclid(q as i128) as u64,
                    })
                    .collect();
            }
            out.denominator = Some(DenominatorSummary {
                c2: run.c2(),
                bad_primes: run.bad_primes(),
                status: run.status,
                order: run.order,
            });
        }
        Method::Slr => {
            let formula = choose_formula(g)?;
            out.vertex = Some(match formula {
                Formula::ThreeValent { vertex } | Formula::FourValent { vertex } => vertex,
            });
            let p = slr_pipeline(g, formula, SlrOptions::default())?
                .map_err(|f| Error::ReductionFailed(f.to_string()))?;
            let r = infer_constant(&p, qs)?;
            out.residues = r.residues.iter().map(|x| Residue { q: x.q, c2: x.residue }).collect();
            out.report = Some(r);
        }
    }
    Ok(out)
}

impl C2Output {
    /// An inconsistent constant, a bound violation, or a stuck denominator
    /// reduction.
    pub fn is_failure(&self) -> bool {
        let report_bad = self.report.as_ref().is_some_and(|r| !r.consistent || !r.within_bound);
        let dr_bad = self.denominator.as_ref().is_some_and(|d| d.c2.is_none());
        let mismatch = match (&self.report, self.method) {
            (Some(r), Method::FourValent) => self
                .residues
                .iter()
                .any(|x| x.c2 != r.c2.rem_euclid(x.q as i128) as u64 && !r.bad_primes.iter().any(|b| x.q % b.p == 0)),
            _ => false,
        };
        report_bad || dr_bad || mismatch
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let g = &self.graph;
        let _ = writeln!(s, "graph: {} vertices, {} edges, {} loops", g.vertices, g.edges, g.loops);
        let _ = write!(s, "method: {}", self.method.name());
        if let Some(v) = self.vertex {
            let _ = write!(s, " at vertex {v}");
        }
        s.push('\n');
        for r in &self.residues {
            let _ = writeln!(s, "q = {}: c2 = {}", r.q, r.c2);
        }
        if let Some(d) = &self.denominator {
            let _ = writeln!(s, "denominator reduction: {:?}, order {:?}", d.status, d.order);
        }
        if let Some(r) = &self.report {
            let _ = writeln!(s, "c2 = {} (constant c = {}), |c| < {}: {}", r.c2, r.constant, r.bound, r.within_bound);
            let _ = writeln!(s, "residues consistent: {}", r.consistent);
            for b in &r.bad_primes {
                let _ = writeln!(s, "bad prime {}: {:?}", b.p, b.status);
            }
        }
        if let Some(n) = &self.note {
            let _ = writeln!(s, "{n}");
        }
        s
    }
}

fn render<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<String> {
    if json {
        Ok(serde_json::to_string_pretty(value)? + "\n")
    } else {
        Ok(text())
    }
}

pub fn cmd_c2(cfg: &RunConfig) -> Result<Outcome> {
    let g = graph(cfg)?;
    let out = compute_c2(&g, cfg.method, &cfg.qs, cfg.threads)?;
    Ok(Outcome {
        code: if out.is_failure() { EXIT_FAILURE } else { EXIT_OK },
        output: render(cfg.json, &out, || out.to_text())?,
    })
}

/// `suite` is a suite name or `all`.
pub fn cmd_verify(suite: &str, cfg: &RunConfig) -> Result<Outcome> {
    let suites = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>()?]
    };
    let opts = VerifyOptions {
        shards: cfg.threads,
        ..VerifyOptions::default()
    };
    let reports: Vec<SuiteReport> = suites.into_iter().map(|s| run_suite(s, opts)).collect::<Result<_>>()?;
    let ok = reports.iter().all(SuiteReport::passed);
    let output = render(cfg.json, &reports, || {
        let mut s = String::new();
        for r in &reports {
            let _ = writeln!(s, "suite {}", r.suite);
            for c in &r.checks {
                let _ = writeln!(s, "  {c}");
            }
        }
        s
    })?;
    Ok(Outcome {
        code: if ok { EXIT_OK } else { EXIT_FAILURE },
        output,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedTrace {
    pub name: String,
    pub trace: Trace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReduceOutput {
    Complete {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        formula: Option<Formula>,
        trees: Vec<NamedTrace>,
    },
    Failed {
        summand: String,
        /// The smallest node with no applicable rule.
        target: Vec<String>,
        ambient: VarSet,
        explored: usize,
        budget_exhausted: bool,
    },
}

fn parse_target(s: &str) -> Result<(Target, VarSet)> {
    let polys = s.split(';').map(|p| p.trim().parse::<Polynomial>()).collect::<Result<Vec<_>>>()?;
    let t = match polys.as_slice() {
        [f] => Target::single(f.clone()),
        [f, g] => Target::pair(f.clone(), g.clone()),
        _ => return Err(Error::Usage("a target is one polynomial or two separated by ';'".into())),
    };
    let a = t.vars();
    Ok((t, a))
}

/// Reduces the graph's summands (or a polynomial target), replays every
/// tree, and writes the trace to `cfg.trace`.
pub fn reduce(cfg: &RunConfig) -> Result<ReduceOutput> {
    let (formula, parts) = match (&cfg.target, &cfg.source) {
        (Some(t), None) => {
            let (t, a) = parse_target(t)?;
            (None, vec![("target".to_string(), t, a)])
        }
        (None, Some(_)) => {
            let g = graph(cfg)?;
            let formula = choose_formula(&g)?;
            let parts = crate::reduction::summands(&g, formula)?;
            (Some(formula), parts.into_iter().map(|s| (s.name, s.target, s.ambient)).collect())
        }
        _ => return Err(Error::Usage("need exactly one of --graph, --gen or --target".into())),
    };
    let mut trees = Vec::new();
    for (name, t, a) in parts {
        match slr_reduce(t, a, SlrOptions::default())? {
            Ok(tree) => {
                tree.replay().map_err(Error::ReductionFailed)?;
                let trace = tree.to_trace();
                ReductionTree::from_trace(&trace)?.replay().map_err(Error::ReductionFailed)?;
                trees.push(NamedTrace { name, trace });
            }
            Err(f) => {
                return Ok(ReduceOutput::Failed {
                    summand: name,
                    target: f.target.polys().iter().map(|p| p.to_string()).collect(),
                    ambient: f.ambient,
                    explored: f.explored,
                    budget_exhausted: f.budget_exhausted,
                })
            }
        }
    }
    Ok(ReduceOutput::Complete { formula, trees })
}

pub fn cmd_reduce(cfg: &RunConfig) -> Result<Outcome> {
    let path = cfg
        .trace
        .as_ref()
        .ok_or_else(|| Error::Usage("reduce needs --trace PATH".into()))?;
    // fail before a long reduction rather than after it
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty() && !d.is_dir()) {
        return Err(Error::Usage(format!("trace directory {} does not exist", dir.display())));
    }
    let out = reduce(cfg)?;
    fs::write(path, serde_json::to_string_pretty(&out)? + "\n")?;
    let (code, summary) = match &out {
        ReduceOutput::Complete { trees, .. } => {
            let mut s = String::new();
            for t in trees {
                let _ = writeln!(s, "{}: {} nodes, value {}", t.name, t.trace.nodes.len(), t.trace.value);
            }
            (EXIT_OK, s)
        }
        ReduceOutput::Failed { summand, target, .. } => {
            (EXIT_FAILURE, format!("{summand}: no reduction at [{}]\n", target.join(", ")))
        }
    };
    Ok(Outcome {
        code,
        output: render(cfg.json, &out, || format!("{summary}trace written to {}\n", path.display()))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2_cfg(gen: &str, q: u64, method: Method) -> RunConfig {
        RunConfig {
            source: Some(GraphSource::Gen(gen.into())),
            qs: vec![q],
            method,
            ..RunConfig::default()
        }
    }

    #[test]
    fn generators() {
        assert_eq!(generate("k:5").unwrap().edge_count(), 10);
        assert_eq!(generate("zigzag:4:completed").unwrap().vertex_count(), 6);
        assert_eq!(generate("zigzag:3").unwrap().edge_count(), 6);
        for bad in ["k:1", "zigzag", "zigzag:x", "cube:3", "zigzag:3:open"] {
            assert!(generate(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn k5_four_valent_at_7() {
        let o = run(&RunConfig {
            json: true,
            ..c2_cfg("zigzag:3:completed", 7, Method::FourValent)
        });
        assert_eq!(o.code, EXIT_OK);
        let out: C2Output = serde_json::from_str(&o.output).unwrap();
        assert_eq!(out.residues, vec![Residue { q: 7, c2: 6 }]);
        assert_eq!(out.report.unwrap().c2, -15);
    }

    #[test]
    fn methods_agree_on_k4() {
        for m in [Method::Bruteforce, Method::ThreeValent, Method::Denominator, Method::Slr] {
            let o = compute_c2(&generate("zigzag:3").unwrap(), m, &[5], 1).unwrap();
            assert_eq!(o.residues, vec![Residue { q: 5, c2: 4 }], "{}", m.name());
        }
    }

    #[test]
    fn usage_errors() {
        let o = run(&c2_cfg("k:4", 3, Method::FourValent));
        assert_eq!(o.code, EXIT_USAGE);
        let o = run(&RunConfig {
            command: Command::Verify("bogus".into()),
            ..RunConfig::default()
        });
        assert_eq!(o.code, EXIT_USAGE);
        assert!(matches!(parse_qs("2,6"), Err(Error::UnsupportedField(6))));
        let o = run(&RunConfig {
            command: Command::Reduce,
            ..c2_cfg("k:5", 2, Method::Slr)
        });
        assert_eq!(o.code, EXIT_USAGE);
    }

    #[test]
    fn json_round_trips() {
        let o = run(&RunConfig {
            json: true,
            ..c2_cfg("k:5", 3, Method::Slr)
        });
        let back: C2Output = serde_json::from_str(&o.output).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap() + "\n", o.output);
    }
}
