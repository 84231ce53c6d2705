//! Randomized and exhaustive checks of the identities, counting lemmas and
//! reductions, grouped into named suites.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod counts;
pub mod identities;
pub mod reductions;

/// Counterexamples kept per check.
const MAX_DUMPS: usize = 5;

/// Outcome of one named check over many instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    /// The first few counterexamples.
    pub counterexamples: Vec<String>,
}

impl Check {
    pub fn new(name: &str) -> Check {
        Check {
            name: name.to_string(),
            instances: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    /// Records one instance; `dump` is only built on failure.
    pub fn record(&mut self, ok: bool, dump: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_DUMPS {
                self.counterexamples.push(dump());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} instances, {} failures)", self.name, self.instances, self.failures)?;
        for c in &self.counterexamples {
            write!(f, "\n    counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Counting,
    FourValent,
    Slr,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Identities, Suite::Counting, Suite::FourValent, Suite::Slr];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Counting => "counting",
            Suite::FourValent => "theorem3",
            Suite::Slr => "slr",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Worker shards for the larger point counts.
    pub shards: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 2024, shards: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

pub fn run_suite(suite: Suite, opts: VerifyOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Identities => identities::all(opts)?,
        Suite::Counting => counts::all(opts)?,
        Suite::FourValent => reductions::four_valent_suite(opts)?,
        Suite::Slr => reductions::slr_suite(opts)?,
    };
    Ok(SuiteReport { suite, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("bogus".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn empty_check_does_not_pass() {
        let mut c = Check::new("x");
        assert!(!c.passed());
        c.record(true, String::new);
        assert!(c.passed());
        c.record(false, || "bad".into());
        assert!(!c.passed());
        assert_eq!(c.counterexamples, vec!["bad".to_string()]);
    }
}
