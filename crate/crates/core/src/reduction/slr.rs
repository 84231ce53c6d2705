//! Semilinear reduction of homogeneous polynomials and pairs.
//!
//! A target is reduced by recursively applying linear splits, pair splits,
//! factorizations and the axis rule until every branch ends in an
//! elementary case. Each node records the ambient space its count lives in,
//! and its value is the count modulo `q` for every `q` outside the primes
//! flagged by the node's integer coefficients.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::counting::{count_affine, FiniteField};
use crate::error::{Error, Result};
use crate::polyring::{find_factorization, linear_split, prime_factors, square_free_step, Coeff, Polynomial, Var, VarSet};

/// A single polynomial or an unordered pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Single(Polynomial),
    Pair(Polynomial, Polynomial),
}

impl Target {
    /// Signs normalized and pair members sorted, so that equal zero sets
    /// given in different ways share memo entries.
    pub fn single(f: Polynomial) -> Target {
        Target::Single(f.sign_normalized())
    }

    pub fn pair(f: Polynomial, g: Polynomial) -> Target {
        let (f, g) = (f.sign_normalized(), g.sign_normalized());
        if f <= g {
            Target::Pair(f, g)
        } else {
            Target::Pair(g, f)
        }
    }

    pub fn polys(&self) -> Vec<&Polynomial> {
        match self {
            Target::Single(f) => vec![f],
            Target::Pair(f, g) => vec![f, g],
        }
    }

    pub fn vars(&self) -> VarSet {
        self.polys().iter().fold(VarSet::EMPTY, |s, p| s.union(p.vars()))
    }

    pub fn total_degree(&self) -> u32 {
        self.polys().iter().map(|p| p.degree()).sum()
    }

    pub fn term_count(&self) -> usize {
        self.polys().iter().map(|p| p.len()).sum()
    }

    fn is_homogeneous(&self) -> bool {
        self.polys().iter().all(|p| p.is_homogeneous())
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Single(p) => write!(f, "[{p}]"),
            Target::Pair(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// Elementary cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Leaf {
    /// Some ambient variable does not occur, so the count is a multiple of
    /// `q`.
    Cone,
    /// Total degree below the number of variables.
    ElementaryCw,
    /// A constant polynomial in the 0-dimensional space, or a pair with a
    /// nonzero constant member.
    Constant,
    /// `m x^k` in the line of `x`.
    ElementaryLinear,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Leaf(Leaf),
    /// `h = m h'` with `|m| > 1`; child `h'`.
    Content { m: Coeff },
    /// `h = s * h'` with `s | h'`; child `h'`.
    SquareAbsorb { factor: Polynomial },
    /// `h = f g`; children `f`, `g`, `(f, g)`.
    Product,
    /// Child `f^x` in `A \ x`.
    LinearSplit,
    /// Children `f^x g_x - f_x g^x` and `(f^x, g^x)` in `A \ x`.
    PairSplit,
    /// `(f, m x^k)`; child `m f_x` in `A \ x`.
    AxisPair { m: Coeff },
    /// Pair with a zero member or two equal members; child the single one.
    Collapse,
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::Leaf(Leaf::Cone) => "cone",
            Rule::Leaf(Leaf::ElementaryCw) => "elementary-cw",
            Rule::Leaf(Leaf::Constant) => "constant",
            Rule::Leaf(Leaf::ElementaryLinear) => "elementary-linear",
            Rule::Content { .. } => "content",
            Rule::SquareAbsorb { .. } => "square-absorb",
            Rule::Product => "product",
            Rule::LinearSplit => "linear-split",
            Rule::PairSplit => "pair-split",
            Rule::AxisPair { .. } => "axis-pair",
            Rule::Collapse => "collapse",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub target: Target,
    pub ambient: VarSet,
    pub rule: Rule,
    pub var: Option<Var>,
    pub children: Vec<usize>,
}

/// A complete reduction, stored as a DAG (identical subtargets are shared).
#[derive(Clone, Debug)]
pub struct ReductionTree {
    pub nodes: Vec<Node>,
    pub root: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Prefer the variable whose children have the fewest terms.
    #[default]
    Greedy,
    /// Variables in increasing label order.
    LabelOrder,
}

#[derive(Clone, Copy, Debug)]
pub struct SlrOptions {
    pub strategy: Strategy,
    /// Cap on distinct (target, ambient) pairs examined.
    pub max_nodes: usize,
}

impl Default for SlrOptions {
    fn default() -> Self {
        SlrOptions {
            strategy: Strategy::Greedy,
            max_nodes: 2_000_000,
        }
    }
}

/// Where a reduction got stuck.
#[derive(Clone, Debug)]
pub struct SlrFailure {
    /// Smallest node at which no rule applied.
    pub target: Target,
    pub ambient: VarSet,
    pub explored: usize,
    pub budget_exhausted: bool,
}

impl fmt::Display for SlrFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "no reduction for {} in {} variables {:?} ({} nodes explored{})",
            self.target,
            self.ambient.len(),
            self.ambient,
            self.explored,
            if self.budget_exhausted { ", budget exhausted" } else { "" }
        )
    }
}

struct Builder {
    opts: SlrOptions,
    nodes: Vec<Node>,
    memo: HashMap<(Target, VarSet), Option<usize>>,
    dead_ends: Vec<(Target, VarSet)>,
    exhausted: bool,
}

fn single_var_monomial(p: &Polynomial) -> Option<(Var, Coeff)> {
    match p.terms() {
        [(m, c)] if m.vars().len() == 1 => Some((m.vars().iter().next()?, *c)),
        _ => None,
    }
}

impl Builder {
    fn push(&mut self, target: Target, ambient: VarSet, rule: Rule, var: Option<Var>, children: Vec<usize>) -> usize {
        self.nodes.push(Node {
            target,
            ambient,
            rule,
            var,
            children,
        });
        self.nodes.len() - 1
    }

    fn reduce(&mut self, target: Target, ambient: VarSet) -> Option<usize> {
        let key = (target, ambient);
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        if self.memo.len() >= self.opts.max_nodes {
            self.exhausted = true;
            return None;
        }
        // provisional failure guards against cycles
        self.memo.insert(key.clone(), None);
        let out = self.reduce_uncached(&key.0, ambient);
        self.memo.insert(key, out);
        out
    }

    fn leaf(&mut self, t: &Target, a: VarSet, leaf: Leaf) -> Option<usize> {
        Some(self.push(t.clone(), a, Rule::Leaf(leaf), None, Vec::new()))
    }

    fn reduce_uncached(&mut self, t: &Target, a: VarSet) -> Option<usize> {
        if t.vars() != a {
            return self.leaf(t, a, Leaf::Cone);
        }
        if let Target::Pair(f, g) = t {
            if f.is_zero() || g.is_zero() || f == g {
                let keep = if f.is_zero() { g } else { f };
                let c = self.reduce(Target::single(keep.clone()), a)?;
                return Some(self.push(t.clone(), a, Rule::Collapse, None, vec![c]));
            }
            if f.is_constant() || g.is_constant() {
                return self.leaf(t, a, Leaf::Constant);
            }
        }
        if let Target::Single(f) = t {
            if f.is_constant() {
                return self.leaf(t, a, Leaf::Constant);
            }
        }
        if (t.total_degree() as usize) < a.len() {
            return self.leaf(t, a, Leaf::ElementaryCw);
        }
        match t {
            Target::Single(f) => self.reduce_single(t, f, a),
            Target::Pair(f, g) => self.reduce_pair(t, f, g, a),
        }
    }

    fn ordered(&self, mut cands: Vec<(Var, usize)>) -> Vec<Var> {
        match self.opts.strategy {
            Strategy::Greedy => cands.sort_by_key(|&(v, size)| (size, v)),
            Strategy::LabelOrder => cands.sort_by_key(|&(v, _)| v),
        }
        cands.into_iter().map(|c| c.0).collect()
    }

    fn reduce_single(&mut self, t: &Target, f: &Polynomial, a: VarSet) -> Option<usize> {
        if a.len() == 1 && f.len() == 1 {
            return self.leaf(t, a, Leaf::ElementaryLinear);
        }
        let m = f.content().abs();
        if m > 1 {
            let c = self.reduce(Target::single(f.primitive()), a)?;
            return Some(self.push(t.clone(), a, Rule::Content { m }, None, vec![c]));
        }
        if let Some((rad, s)) = square_free_step(f) {
            let c = self.reduce(Target::single(rad), a)?;
            return Some(self.push(t.clone(), a, Rule::SquareAbsorb { factor: s }, None, vec![c]));
        }
        let mut any_rule = false;
        if let Some((p, q)) = find_factorization(f) {
            any_rule = true;
            if let Some(id) = self.try_product(t, p, q, a) {
                return Some(id);
            }
        }
        let cands: Vec<(Var, usize)> = a
            .iter()
            .filter(|&x| f.degree_in(x) == 1)
            .map(|x| (x, f.coeff_of(x, 1).len()))
            .collect();
        any_rule |= !cands.is_empty();
        for x in self.ordered(cands) {
            let lead = f.coeff_of(x, 1);
            if let Some(c) = self.reduce(Target::single(lead), a.without(x)) {
                return Some(self.push(t.clone(), a, Rule::LinearSplit, Some(x), vec![c]));
            }
            if self.exhausted {
                return None;
            }
        }
        if !any_rule {
            self.dead_ends.push((t.clone(), a));
        }
        None
    }

    fn try_product(&mut self, t: &Target, p: Polynomial, q: Polynomial, a: VarSet) -> Option<usize> {
        let cp = self.reduce(Target::single(p.clone()), a)?;
        let cq = self.reduce(Target::single(q.clone()), a)?;
        let cpq = self.reduce(Target::pair(p, q), a)?;
        Some(self.push(t.clone(), a, Rule::Product, None, vec![cp, cq, cpq]))
    }

    fn reduce_pair(&mut self, t: &Target, f: &Polynomial, g: &Polynomial, a: VarSet) -> Option<usize> {
        for (this, other) in [(f, g), (g, f)] {
            if let Some((x, m)) = single_var_monomial(other) {
                let rest = this.substitute(x, 0).scale(m);
                let c = self.reduce(Target::single(rest), a.without(x))?;
                return Some(self.push(t.clone(), a, Rule::AxisPair { m }, Some(x), vec![c]));
            }
        }
        let cands: Vec<(Var, usize)> = a
            .iter()
            .filter(|&x| f.degree_in(x) <= 1 && g.degree_in(x) <= 1)
            .map(|x| {
                let size = f.coeff_of(x, 1).len() * g.len() + g.coeff_of(x, 1).len() * f.len();
                (x, size)
            })
            .collect();
        if cands.is_empty() {
            self.dead_ends.push((t.clone(), a));
            return None;
        }
        for x in self.ordered(cands) {
            let (fs, gs) = (linear_split(f, x).ok()?, linear_split(g, x).ok()?);
            let res = &(&fs.leading * &gs.constant) - &(&fs.constant * &gs.leading);
            let b = a.without(x);
            let Some(cr) = self.reduce(Target::single(res), b) else {
                if self.exhausted {
                    return None;
                }
                continue;
            };
            if let Some(cl) = self.reduce(Target::pair(fs.leading, gs.leading), b) {
                return Some(self.push(t.clone(), a, Rule::PairSplit, Some(x), vec![cr, cl]));
            }
            if self.exhausted {
                return None;
            }
        }
        None
    }
}

/// Reduces `target` over `ambient`, which must contain its variables.
pub fn slr_reduce(target: Target, ambient: VarSet, opts: SlrOptions) -> Result<std::result::Result<ReductionTree, SlrFailure>> {
    if !target.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    if let Some(v) = target.vars().difference(ambient).iter().next() {
        return Err(Error::VariableOutsideAmbient(v.index()));
    }
    let mut b = Builder {
        opts,
        nodes: Vec::new(),
        memo: HashMap::new(),
        dead_ends: Vec::new(),
        exhausted: false,
    };
    let root = b.reduce(target.clone(), ambient);
    Ok(match root {
        Some(root) => Ok(compact(b.nodes, root)),
        None => {
            let (t, a) = b
                .dead_ends
                .iter()
                .min_by_key(|(t, a)| (t.term_count(), a.len()))
                .cloned()
                .unwrap_or((target, ambient));
            Err(SlrFailure {
                target: t,
                ambient: a,
                explored: b.memo.len(),
                budget_exhausted: b.exhausted,
            })
        }
    })
}

/// Keeps only nodes reachable from `root`, children before parents.
fn compact(nodes: Vec<Node>, root: usize) -> ReductionTree {
    let mut new_id: Vec<Option<usize>> = vec![None; nodes.len()];
    let mut order = Vec::new();
    let mut stack = vec![(root, false)];
    while let Some((id, expanded)) = stack.pop() {
        if new_id[id].is_some() {
            continue;
        }
        if expanded {
            new_id[id] = Some(order.len());
            order.push(id);
        } else {
            stack.push((id, true));
            for &c in &nodes[id].children {
                if new_id[c].is_none() {
                    stack.push((c, false));
                }
            }
        }
    }
    let out: Vec<Node> = order
        .iter()
        .map(|&id| {
            let mut n = nodes[id].clone();
            n.children = n.children.iter().map(|&c| new_id[c].expect("reachable")).collect();
            n
        })
        .collect();
    ReductionTree {
        root: new_id[root].expect("root"),
        nodes: out,
    }
}

fn same_up_to_sign(a: &Polynomial, b: &Polynomial) -> bool {
    a == b || a == &-b
}

fn pair_matches(t: &Target, f: &Polynomial, g: &Polynomial) -> bool {
    match t {
        Target::Pair(a, b) => {
            (same_up_to_sign(a, f) && same_up_to_sign(b, g)) || (same_up_to_sign(a, g) && same_up_to_sign(b, f))
        }
        Target::Single(_) => false,
    }
}

fn single_matches(t: &Target, f: &Polynomial) -> bool {
    matches!(t, Target::Single(a) if same_up_to_sign(a, f))
}

impl ReductionTree {
    pub fn root_node(&self) -> &Node {
        &self.nodes[self.root]
    }

    /// Counts modulo `q` for all good `q`, per node.
    pub fn node_values(&self) -> Vec<i128> {
        let mut val = vec![0i128; self.nodes.len()];
        for (id, n) in self.nodes.iter().enumerate() {
            let c = |i: usize| val[n.children[i]];
            val[id] = match &n.rule {
                Rule::Leaf(Leaf::ElementaryLinear) => 1,
                Rule::Leaf(Leaf::Constant) => match &n.target {
                    Target::Single(f) if f.is_zero() && n.ambient.is_empty() => 1,
                    _ => 0,
                },
                Rule::Leaf(_) => 0,
                Rule::Content { .. } | Rule::SquareAbsorb { .. } | Rule::AxisPair { .. } | Rule::Collapse => c(0),
                Rule::Product => c(0) + c(1) - c(2),
                Rule::LinearSplit => -c(0),
                Rule::PairSplit => c(0) - c(1),
            };
        }
        val
    }

    /// Value of the root for all `q` outside the bad-prime candidates.
    pub fn value(&self) -> i128 {
        self.node_values()[self.root]
    }

    /// Prime divisors of the integer coefficients whose vanishing changes a
    /// rule.
    pub fn bad_prime_candidates(&self) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for n in &self.nodes {
            let m = match (&n.rule, &n.target) {
                (Rule::Content { m } | Rule::AxisPair { m }, _) => *m,
                (Rule::Leaf(Leaf::ElementaryLinear), Target::Single(f)) => f.terms()[0].1,
                (Rule::Leaf(Leaf::Constant), t) => t
                    .polys()
                    .iter()
                    .filter_map(|p| p.constant_value())
                    .find(|&c| c != 0)
                    .unwrap_or(1),
                _ => 1,
            };
            out.extend(prime_factors(m));
        }
        out.into_iter().collect()
    }

    /// The root count modulo `q`. Nodes whose rule degenerates at the
    /// characteristic are counted directly.
    pub fn evaluate(&self, field: &FiniteField) -> Result<u64> {
        let p = field.characteristic() as i128;
        let q = field.order() as i128;
        let divides = |m: Coeff| m % p == 0;
        let mut val = vec![0i128; self.nodes.len()];
        for (id, n) in self.nodes.iter().enumerate() {
            let c = |i: usize| val[n.children[i]];
            let direct = || -> Result<i128> {
                let polys: Vec<Polynomial> = n.target.polys().into_iter().cloned().collect();
                Ok((count_affine(&polys, n.ambient, field)?.count % q as u128) as i128)
            };
            val[id] = match &n.rule {
                Rule::Leaf(Leaf::ElementaryLinear) => {
                    let m = n.target.polys()[0].terms()[0].1;
                    i128::from(!divides(m))
                }
                Rule::Leaf(Leaf::Constant) => match &n.target {
                    Target::Single(f) => {
                        let k = f.constant_value().unwrap_or(0);
                        i128::from(divides(k) && n.ambient.is_empty())
                    }
                    Target::Pair(..) => {
                        let bad = n.target.polys().iter().any(|f| f.constant_value().is_some_and(|k| k != 0 && divides(k)));
                        if bad {
                            direct()?
                        } else {
                            0
                        }
                    }
                },
                Rule::Leaf(_) => 0,
                Rule::Content { m } => {
                    if divides(*m) {
                        i128::from(n.ambient.is_empty())
                    } else {
                        c(0)
                    }
                }
                Rule::AxisPair { m } => {
                    if divides(*m) {
                        direct()?
                    } else {
                        c(0)
                    }
                }
                Rule::SquareAbsorb { .. } | Rule::Collapse => c(0),
                Rule::Product => c(0) + c(1) - c(2),
                Rule::LinearSplit => -c(0),
                Rule::PairSplit => c(0) - c(1),
            }
            .rem_euclid(q);
        }
        Ok(val[self.root] as u64)
    }

    /// Re-derives every node from its parent under the recorded rule.
    pub fn replay(&self) -> std::result::Result<(), String> {
        for (id, n) in self.nodes.iter().enumerate() {
            let err = |why: &str| Err(format!("node {id} ({}): {why}", n.rule.tag()));
            if n.children.iter().any(|&c| c >= id) {
                return err("child does not precede parent");
            }
            let ch = |i: usize| &self.nodes[n.children[i]];
            let arity = match n.rule {
                Rule::Leaf(_) => 0,
                Rule::Product => 3,
                Rule::PairSplit => 2,
                _ => 1,
            };
            if n.children.len() != arity {
                return err("wrong number of children");
            }
            let vars = n.target.vars();
            let x = n.var;
            let ok = match (&n.rule, &n.target) {
                (Rule::Leaf(Leaf::Cone), _) => vars.is_subset(n.ambient) && vars != n.ambient,
                (Rule::Leaf(Leaf::ElementaryCw), _) => {
                    vars == n.ambient && (n.target.total_degree() as usize) < n.ambient.len()
                }
                (Rule::Leaf(Leaf::Constant), Target::Single(f)) => f.is_constant() && n.ambient.is_empty(),
                (Rule::Leaf(Leaf::Constant), Target::Pair(f, g)) => {
                    f.constant_value().is_some_and(|c| c != 0) || g.constant_value().is_some_and(|c| c != 0)
                }
                (Rule::Leaf(Leaf::ElementaryLinear), Target::Single(f)) => {
                    f.len() == 1 && n.ambient.len() == 1 && vars == n.ambient
                }
                (Rule::Content { m }, Target::Single(f)) => {
                    m.abs() > 1 && ch(0).ambient == n.ambient && single_matches(&ch(0).target, &f.primitive())
                        && f.primitive().scale(*m) == f.sign_normalized().scale(m.signum())
                }
                (Rule::SquareAbsorb { factor }, Target::Single(f)) => match &ch(0).target {
                    Target::Single(r) => {
                        factor.degree() >= 1
                            && ch(0).ambient == n.ambient
                            && same_up_to_sign(&(r * factor), f)
                            && factor.divides(r)
                    }
                    _ => false,
                },
                (Rule::Product, Target::Single(h)) => match (&ch(0).target, &ch(1).target) {
                    (Target::Single(p), Target::Single(q)) => {
                        same_up_to_sign(&(p * q), h)
                            && pair_matches(&ch(2).target, p, q)
                            && (0..3).all(|i| ch(i).ambient == n.ambient)
                    }
                    _ => false,
                },
                (Rule::LinearSplit, Target::Single(f)) => x.is_some_and(|x| {
                    f.degree_in(x) == 1
                        && n.ambient.len() >= 2
                        && ch(0).ambient == n.ambient.without(x)
                        && single_matches(&ch(0).target, &f.coeff_of(x, 1))
                }),
                (Rule::PairSplit, Target::Pair(f, g)) => x.is_some_and(|x| {
                    let (Ok(fs), Ok(gs)) = (linear_split(f, x), linear_split(g, x)) else {
                        return false;
                    };
                    let res = &(&fs.leading * &gs.constant) - &(&fs.constant * &gs.leading);
                    let b = n.ambient.without(x);
                    ch(0).ambient == b
                        && ch(1).ambient == b
                        && single_matches(&ch(0).target, &res)
                        && pair_matches(&ch(1).target, &fs.leading, &gs.leading)
                }),
                (Rule::AxisPair { m }, Target::Pair(f, g)) => x.is_some_and(|x| {
                    [(f, g), (g, f)].iter().any(|(this, other)| {
                        single_var_monomial(other).is_some_and(|(y, c)| y == x && c.abs() == m.abs())
                            && ch(0).ambient == n.ambient.without(x)
                            && single_matches(&ch(0).target, &this.substitute(x, 0).scale(*m))
                    })
                }),
                (Rule::Collapse, Target::Pair(f, g)) => {
                    let keep = if f.is_zero() { g } else { f };
                    (f.is_zero() || g.is_zero() || same_up_to_sign(f, g))
                        && ch(0).ambient == n.ambient
                        && single_matches(&ch(0).target, keep)
                }
                _ => false,
            };
            if !ok {
                return err("children do not follow from the target");
            }
        }
        Ok(())
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n.rule, Rule::Leaf(_))).count()
    }

    pub fn to_trace(&self) -> Trace {
        let values = self.node_values();
        Trace {
            root: self.root,
            value: values[self.root],
            bad_prime_candidates: self.bad_prime_candidates(),
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, n)| TraceNode {
                    id,
                    rule: n.rule.tag().to_string(),
                    var: n.var.map(|v| v.index()),
                    ambient: n.ambient,
                    target: n.target.polys().iter().map(|p| p.to_string()).collect(),
                    children: n.children.clone(),
                    m: match &n.rule {
                        Rule::Content { m } | Rule::AxisPair { m } => Some(m.to_string()),
                        _ => None,
                    },
                    factor: match &n.rule {
                        Rule::SquareAbsorb { factor } => Some(factor.to_string()),
                        _ => None,
                    },
                    value: values[id],
                })
                .collect(),
        }
    }

    /// Rebuilds a tree from a trace; the result still needs [`Self::replay`].
    pub fn from_trace(t: &Trace) -> Result<ReductionTree> {
        let parse = |s: &str| s.parse::<Polynomial>();
        let coeff = |s: &Option<String>| -> Result<Coeff> {
            s.as_deref()
                .ok_or_else(|| Error::Parse("missing coefficient".into()))?
                .parse()
                .map_err(|_| Error::Parse("bad coefficient".into()))
        };
        let mut nodes = Vec::with_capacity(t.nodes.len());
        for n in &t.nodes {
            let target = match n.target.as_slice() {
                [f] => Target::Single(parse(f)?),
                [f, g] => Target::Pair(parse(f)?, parse(g)?),
                _ => return Err(Error::Parse(format!("node {} has {} polynomials", n.id, n.target.len()))),
            };
            let rule = match n.rule.as_str() {
                "cone" => Rule::Leaf(Leaf::Cone),
                "elementary-cw" => Rule::Leaf(Leaf::ElementaryCw),
                "constant" => Rule::Leaf(Leaf::Constant),
                "elementary-linear" => Rule::Leaf(Leaf::ElementaryLinear),
                "content" => Rule::Content { m: coeff(&n.m)? },
                "square-absorb" => Rule::SquareAbsorb {
                    factor: parse(n.factor.as_deref().unwrap_or(""))?,
                },
                "product" => Rule::Product,
                "linear-split" => Rule::LinearSplit,
                "pair-split" => Rule::PairSplit,
                "axis-pair" => Rule::AxisPair { m: coeff(&n.m)? },
                "collapse" => Rule::Collapse,
                other => return Err(Error::Parse(format!("unknown rule {other}"))),
            };
            let var = n.var.map(|i| Var::new(i as u32)).transpose()?;
            if n.children.iter().any(|&c| c >= t.nodes.len()) {
                return Err(Error::Parse(format!("node {} has a dangling child", n.id)));
            }
            nodes.push(Node {
                target,
                ambient: n.ambient,
                rule,
                var,
                children: n.children.clone(),
            });
        }
        if t.root >= nodes.len() {
            return Err(Error::Parse("root out of range".into()));
        }
        Ok(ReductionTree { nodes, root: t.root })
    }
}

/// JSON form of a reduction tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub root: usize,
    pub value: i128,
    pub bad_prime_candidates: Vec<u64>,
    pub nodes: Vec<TraceNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceNode {
    pub id: usize,
    pub rule: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub var: Option<u8>,
    pub ambient: VarSet,
    pub target: Vec<String>,
    pub children: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factor: Option<String>,
    pub value: i128,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{var, x};

    fn space(v: &[u32]) -> VarSet {
        v.iter().map(|&i| var(i)).collect()
    }

    fn reduce(t: Target, a: VarSet) -> ReductionTree {
        slr_reduce(t, a, SlrOptions::default()).unwrap().unwrap()
    }

    #[test]
    fn single_linear_leaf() {
        let t = reduce(Target::single(x(1).scale(3)), space(&[1]));
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.root_node().rule, Rule::Leaf(Leaf::ElementaryLinear));
        assert_eq!(t.evaluate(&FiniteField::new(5).unwrap()).unwrap(), 1);
        assert_eq!(t.evaluate(&FiniteField::new(3).unwrap()).unwrap(), 0);
        assert_eq!(t.bad_prime_candidates(), vec![3]);
    }

    #[test]
    fn cw_leaf() {
        let f = &(&x(1) + &x(2)) + &x(3);
        let t = reduce(Target::single(f), space(&[1, 2, 3]));
        assert_eq!(t.root_node().rule, Rule::Leaf(Leaf::ElementaryCw));
        for q in [2, 3, 5] {
            assert_eq!(t.evaluate(&FiniteField::new(q).unwrap()).unwrap(), 0);
        }
    }

    #[test]
    fn pair_reduction_matches_counts() {
        // degree 4 in 4 variables: not elementary
        let f = &(&x(1) * &x(2)) + &(&x(3) * &x(4));
        let g = &(&x(1) * &x(3)) + &(&x(2) * &x(4));
        let a = space(&[1, 2, 3, 4]);
        let t = reduce(Target::pair(f.clone(), g.clone()), a);
        t.replay().unwrap();
        for q in [2, 3, 4, 5, 7] {
            let field = FiniteField::new(q).unwrap();
            let want = count_affine(&[f.clone(), g.clone()], a, &field).unwrap().residue();
            assert_eq!(t.evaluate(&field).unwrap(), want, "q={q}");
            if !t.bad_prime_candidates().contains(&field.characteristic()) {
                assert_eq!(t.value().rem_euclid(q as i128) as u64, want);
            }
        }
    }

    #[test]
    fn trace_round_trip() {
        let f = &(&x(1) * &x(2)).scale(4) + &(&x(3) * &x(4));
        let g = &(&x(1) * &x(3)) + &(&x(2) * &x(4));
        let t = reduce(Target::pair(f, g), space(&[1, 2, 3, 4]));
        let json = serde_json::to_string(&t.to_trace()).unwrap();
        let back: Trace = serde_json::from_str(&json).unwrap();
        let rebuilt = ReductionTree::from_trace(&back).unwrap();
        rebuilt.replay().unwrap();
        assert_eq!(rebuilt.value(), t.value());
        assert_eq!(serde_json::to_string(&rebuilt.to_trace()).unwrap(), json);
    }

    #[test]
    fn tampered_tree_fails_replay() {
        let f = &(&x(1) * &x(2)) + &(&x(3) * &x(4));
        let g = &(&x(1) * &x(3)) + &(&x(2) * &x(4));
        let mut t = reduce(Target::pair(f, g), space(&[1, 2, 3, 4]));
        let root = t.root;
        t.nodes[root].var = Some(var(9));
        assert!(t.replay().is_err());
    }

    #[test]
    fn sum_of_squares_is_a_dead_end() {
        let f = &x(2).pow(2) + &x(3).pow(2);
        let fail = slr_reduce(Target::single(f.clone()), space(&[2, 3]), SlrOptions::default())
            .unwrap()
            .unwrap_err();
        assert_eq!(fail.target, Target::single(f));
        assert!(!fail.budget_exhausted);
    }

    #[test]
    fn non_homogeneous_rejected() {
        let f = &x(1) + &Polynomial::one();
        assert!(slr_reduce(Target::single(f), space(&[1]), SlrOptions::default()).is_err());
    }
}
