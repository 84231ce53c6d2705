//! Every verification suite, as `c2tool verify all` runs them.
//!
//! cargo run --release --example verify_suites [suite]

use c2core::verify::{run_suite, Suite, VerifyOptions};

fn main() -> c2core::Result<()> {
    let suites = match std::env::args().nth(1) {
        Some(s) => vec![s.parse::<Suite>()?],
        None => Suite::ALL.to_vec(),
    };
    for s in suites {
        let r = run_suite(s, VerifyOptions::default())?;
        println!("suite {s}: {}", if r.passed() { "pass" } else { "FAIL" });
        for c in &r.checks {
            println!("  {c}");
        }
    }
    Ok(())
}
