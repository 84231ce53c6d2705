//! A reduction tree as a JSON trace, rebuilt and replayed; and a target
//! with no reduction.
//!
//! cargo run --example reduction_trace

use c2core::counting::FiniteField;
use c2core::polyring::{x, VarSet};
use c2core::reduction::{slr_reduce, ReductionTree, SlrOptions, Target, Trace};

fn main() -> c2core::Result<()> {
    let f = &(&x(1) * &x(2)) + &(&x(3) * &x(4));
    let g = &(&x(1) * &x(3)) + &(&x(2) * &x(4));
    let ambient: VarSet = f.vars().union(g.vars());
    let tree = slr_reduce(Target::pair(f, g), ambient, SlrOptions::default())?.expect("reducible");
    let json = serde_json::to_string_pretty(&tree.to_trace())?;
    println!("{json}");

    let back: Trace = serde_json::from_str(&json)?;
    let rebuilt = ReductionTree::from_trace(&back)?;
    println!("replay: {:?}", rebuilt.replay());
    for q in [2, 3, 4, 5] {
        println!("q = {q}: value mod q = {}", rebuilt.evaluate(&FiniteField::new(q)?)?);
    }

    let stuck = &x(1).pow(2) + &x(2).pow(2);
    match slr_reduce(Target::single(stuck.clone()), stuck.vars(), SlrOptions::default())? {
        Ok(_) => println!("unexpectedly reduced"),
        Err(fail) => println!("{fail}"),
    }
    Ok(())
}
