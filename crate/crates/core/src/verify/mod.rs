//! Randomized numerical verification of every identity the library implements.
//!
//! Each case draws a fresh commuting family from a seed derived from
//! `(seed, suite, case_id)`, evaluates both sides of one identity with
//! independent engines, and records `||lhs - rhs||_F / (1 + ||rhs||_F)`.

mod case;
mod claims;
mod suites;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use case::{case_seed, Case};
pub use claims::Claim;
pub use suites::{find, Check, Pairs, Schedule, Suite, SUITES};

use crate::error::{Error, Result};
use crate::matcore::relative_residual;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub trials: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 42, dims: vec![1, 2, 3], trials: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationCase {
    pub suite: String,
    pub case_id: u64,
    pub check: String,
    pub seed: u64,
    pub dimension: usize,
    pub inputs_digest: String,
    /// `None` when the engines failed; `error` then says why.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: f64,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub max_residual: Option<f64>,
    /// Largest `residual / tolerance`; below one means every case passed.
    pub worst_ratio: Option<f64>,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<VerificationCase>,
    pub summary: SuiteSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub suites: usize,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: VerifyConfig,
    pub suites: Vec<SuiteReport>,
    pub summary: ReportSummary,
}

struct Planned {
    case_id: u64,
    dim: usize,
    check: &'static Check,
}

fn plan(suite: &'static Suite, cfg: &VerifyConfig) -> Vec<Planned> {
    let dims: Vec<usize> = if suite.scalar_only { vec![1] } else { cfg.dims.clone() };
    let mut out = Vec::new();
    for &dim in &dims {
        for trial in 0..cfg.trials {
            for check in suite.checks {
                let run = match check.schedule {
                    Schedule::Every => true,
                    Schedule::Once => trial == 0,
                    Schedule::ScalarOnly => dim == 1,
                };
                if run {
                    out.push(Planned { case_id: out.len() as u64, dim, check });
                }
            }
        }
    }
    out
}

fn residual_of(pairs: &Pairs) -> Result<f64> {
    let mut worst = 0.0f64;
    for (lhs, rhs) in pairs {
        if lhs.dim() != rhs.dim() {
            return Err(Error::ShapeError(format!("sides have dimensions {} and {}", lhs.dim(), rhs.dim())));
        }
        let r = relative_residual(lhs, rhs);
        if !r.is_finite() {
            return Err(Error::Overflow("non-finite residual".into()));
        }
        worst = worst.max(r);
    }
    Ok(worst)
}

fn run_case(suite: &Suite, seed: u64, p: &Planned) -> VerificationCase {
    let start = Instant::now();
    let mut digest = String::new();
    let outcome = Case::new(case_seed(seed, suite.name, p.case_id), p.dim).and_then(|mut case| {
        let pairs = (p.check.run)(&mut case);
        digest = case.digest();
        residual_of(&pairs?)
    });
    let (residual, error) = match outcome {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    VerificationCase {
        suite: suite.name.to_string(),
        case_id: p.case_id,
        check: p.check.name.to_string(),
        seed,
        dimension: p.dim,
        inputs_digest: digest,
        residual,
        tolerance: p.check.tolerance,
        pass: residual.is_some_and(|r| r <= p.check.tolerance),
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        error,
    }
}

/// Runs one suite; cases execute in parallel and are reported in `case_id` order.
pub fn run_suite(suite: &'static Suite, cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let planned = plan(suite, cfg);
    let cases: Vec<VerificationCase> = planned.par_iter().map(|p| run_case(suite, cfg.seed, p)).collect();
    let passed = cases.iter().filter(|c| c.pass).count();
    let max_residual = cases.iter().filter_map(|c| c.residual).reduce(f64::max);
    let worst_ratio = cases.iter().filter_map(|c| c.residual.map(|r| r / c.tolerance)).reduce(f64::max);
    let summary = SuiteSummary {
        cases: cases.len(),
        passed,
        failed: cases.len() - passed,
        max_residual,
        worst_ratio,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    SuiteReport { suite: suite.name.to_string(), cases, summary }
}

/// Resolves suite names; `"all"` selects the whole registry in registry order.
pub fn resolve(names: &[String]) -> Result<Vec<&'static Suite>> {
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return Ok(SUITES.iter().collect());
    }
    let mut out: Vec<&'static Suite> = Vec::new();
    for n in names {
        let s = find(n).ok_or_else(|| Error::InvalidInput(format!("unknown suite '{n}'")))?;
        if !out.iter().any(|o| o.name == s.name) {
            out.push(s);
        }
    }
    Ok(out)
}

pub fn run(names: &[String], cfg: &VerifyConfig) -> Result<VerificationReport> {
    if cfg.dims.is_empty() || cfg.dims.contains(&0) {
        return Err(Error::InvalidInput("dims must be a non-empty list of positive integers".into()));
    }
    let suites: Vec<SuiteReport> = resolve(names)?.into_iter().map(|s| run_suite(s, cfg)).collect();
    let cases = suites.iter().map(|s| s.summary.cases).sum();
    let passed = suites.iter().map(|s| s.summary.passed).sum();
    let summary = ReportSummary { suites: suites.len(), cases, passed, failed: cases - passed };
    Ok(VerificationReport { config: cfg.clone(), suites, summary })
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    /// One case per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,case_id,check,seed,dimension,inputs_digest,residual,tolerance,pass,runtime_ms,error\n");
        for s in &self.suites {
            for c in &s.cases {
                let residual = c.residual.map(|r| format!("{r:e}")).unwrap_or_default();
                let error = c.error.as_deref().unwrap_or("").replace('"', "\"\"");
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{:e},{},{:.3},\"{}\"\n",
                    c.suite, c.case_id, c.check, c.seed, c.dimension, c.inputs_digest, residual, c.tolerance, c.pass, c.runtime_ms, error
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn every_claim_is_checked_by_exactly_one_suite() {
        let mut owner: BTreeMap<Claim, Vec<&str>> = BTreeMap::new();
        for s in SUITES {
            for c in s.claims() {
                owner.entry(c).or_default().push(s.name);
            }
        }
        for c in Claim::ALL {
            let suites = owner.get(&c).cloned().unwrap_or_default();
            assert_eq!(suites.len(), 1, "{c:?} is checked by {suites:?}");
        }
        assert_eq!(owner.len(), Claim::ALL.len());
    }

    #[test]
    fn suite_names_are_unique_and_resolvable() {
        for (i, s) in SUITES.iter().enumerate() {
            assert!(SUITES[..i].iter().all(|o| o.name != s.name));
            assert_eq!(find(s.name).map(|f| f.name), Some(s.name));
        }
        assert!(resolve(&["nope".into()]).is_err());
        assert_eq!(resolve(&["all".into()]).unwrap().len(), SUITES.len());
    }

    #[test]
    fn case_seeds_separate_suites_and_cases() {
        assert_ne!(case_seed(1, "a", 0), case_seed(1, "b", 0));
        assert_ne!(case_seed(1, "a", 0), case_seed(1, "a", 1));
        assert_ne!(case_seed(1, "a", 0), case_seed(2, "a", 0));
        assert_eq!(case_seed(7, "decompositions", 3), case_seed(7, "decompositions", 3));
    }

    #[test]
    fn small_run_is_deterministic() {
        let cfg = VerifyConfig { seed: 3, dims: vec![2], trials: 2 };
        let names = vec!["decompositions".to_string()];
        let a = run(&names, &cfg).unwrap();
        let b = run(&names, &cfg).unwrap();
        let res = |r: &VerificationReport| r.suites[0].cases.iter().map(|c| (c.residual, c.inputs_digest.clone())).collect::<Vec<_>>();
        assert_eq!(res(&a), res(&b));
        assert!(a.all_passed(), "{}", a.to_json());
    }
}
