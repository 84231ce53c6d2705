//! Denominator reduction, the 3- and 4-valent formulas and semilinear
//! reduction.

mod denominator;
mod formulas;
mod report;
mod slr;

pub use denominator::{denominator_reduce, denominator_reduce_greedy, DenominatorRun, DenominatorStatus};
pub use formulas::{
    c2_four_valent_count, c2_three_valent, c2_three_valent_roles, eliminate_multi, four_valent_targets,
    two_edge_elimination_check, minor_12_congruence_check, four_minor_residue, sum_terms, four_valent_congruence_check, three_valent_pair,
    CongruenceCheck, CountTerm, FourValentTargets,
};
pub use slr::{
    slr_reduce, Leaf, Node, ReductionTree, Rule, SlrFailure, SlrOptions, Strategy, Target, Trace, TraceNode,
};
pub use report::{
    c2_four_valent, choose_formula, infer_constant, slr_pipeline, summands, BadPrime, BadPrimeStatus, C2Report,
    Formula, Mode, PipelineFailure, ResidueCheck, SlrPipeline, Summand,
};
