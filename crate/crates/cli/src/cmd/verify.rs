//! `verify`: certification suites and the summary implication.

use brannan_core::constants::FROZEN_INFIMA;
use brannan_core::minimize::{self, MinimizationResult, SearchConfig};
use brannan_core::verify::{self, BrannanGrid, Half, MonotonicityGrid, SampleConfig, Summary, VerificationReport};
use serde_json::{json, Value};

use super::{CliError, Exit, Output};
use crate::args::{GridPreset, HalfArg, Suite, VerifyArgs};
use crate::exec::Pool;
use crate::format;

const COARSE_SAMPLES: usize = 50;

fn sample_cfg(args: &VerifyArgs, seed: u64) -> SampleConfig {
    let default = match args.grid {
        GridPreset::Default => SampleConfig::default().samples,
        GridPreset::Coarse => COARSE_SAMPLES,
    };
    SampleConfig { samples: args.samples.unwrap_or(default), seed, n_list: args.n_list.clone().map(|d| d.0), beta: None }
}

pub fn suite_report(suite: Suite, args: &VerifyArgs, seed: u64, pool: &Pool) -> VerificationReport {
    let coarse = args.grid == GridPreset::Coarse;
    match suite {
        Suite::Representations => verify::verify_representations(&sample_cfg(args, seed), pool),
        Suite::Decomposition => verify::verify_decomposition(&sample_cfg(args, seed), pool),
        Suite::Chain => verify::verify_inequality_chain(&sample_cfg(args, seed), &FROZEN_INFIMA, pool),
        Suite::Brannan => {
            let grid = if coarse { BrannanGrid::coarse() } else { BrannanGrid::default() };
            let n_list = args.n_list.clone().map_or_else(verify::default_brannan_degrees, |d| d.0);
            verify::verify_brannan_direct(&n_list, &grid, pool)
        }
        Suite::Monotonicity => {
            let half = match args.half {
                HalfArg::Both => Half::Both,
                HalfArg::F1 => Half::F1,
                HalfArg::F2 => Half::F2,
            };
            let base = if coarse { MonotonicityGrid::coarse() } else { MonotonicityGrid::default() };
            verify::verify_monotonicity(&MonotonicityGrid { half, ..base }, &FROZEN_INFIMA, pool)
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
}

/// A certification failure of an infimum search becomes its (non-positive)
/// value; numerical failures propagate.
fn infimum(r: brannan_core::Result<MinimizationResult>) -> Result<f64, CliError> {
    match r {
        Ok(r) => Ok(r.value),
        Err(brannan_core::Error::Certification { value, .. }) => Ok(value),
        Err(e) => Err(e.into()),
    }
}

pub fn summary(chain: &VerificationReport, pool: &Pool) -> Result<Summary, CliError> {
    let cfg = SearchConfig::default();
    Ok(Summary {
        p5: infimum(minimize::compute_inf_p5(FROZEN_INFIMA, &cfg, pool))?,
        f1: infimum(minimize::compute_inf_f1(&cfg, pool))?,
        f2: infimum(minimize::compute_inf_f2(&cfg, pool))?,
        chain_passed: chain.passed,
    })
}

pub fn run(args: &VerifyArgs, seed: u64, pool: &Pool) -> Result<Output, CliError> {
    if let Some(n) = &args.n_list {
        if args.suite == Suite::Brannan && n.0.iter().any(|k| k % 2 == 0) {
            return Err(CliError::usage("the brannan suite takes odd degrees only"));
        }
    }
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![Suite::Representations, Suite::Decomposition, Suite::Chain, Suite::Brannan, Suite::Monotonicity],
        s => vec![s],
    };
    let reports: Vec<VerificationReport> = suites.iter().map(|&s| suite_report(s, args, seed, pool)).collect();
    let summary = match args.suite {
        Suite::All => Some(summary(reports.iter().find(|r| r.suite == "chain").unwrap(), pool)?),
        _ => None,
    };
    let exit = if reports.iter().any(|r| !r.errors.is_empty()) {
        Exit::Numerical
    } else if reports.iter().all(|r| r.passed) && summary.as_ref().map_or(true, Summary::certified) {
        Exit::Pass
    } else {
        Exit::Fail
    };
    let stdout = if args.json {
        let v = match &summary {
            None => format::report(&reports[0]),
            Some(s) => json!({
                "reports": reports.iter().map(format::report).collect::<Vec<Value>>(),
                "summary": {
                    "inf_p5": s.p5,
                    "inf_f1": s.f1,
                    "inf_f2": s.f2,
                    "chain_passed": s.chain_passed,
                    "certified": s.certified(),
                    "statement": s.statement(),
                },
            }),
        };
        format::to_string(&v)
    } else {
        let mut out: String = reports.iter().map(VerificationReport::to_text).collect();
        if let Some(s) = &summary {
            out += &format!("inf P5 = {:+.12e}, inf F1 = {:+.12e}, inf F2 = {:+.12e}\n", s.p5, s.f1, s.f2);
            out += &s.statement();
            out.push('\n');
        }
        out
    };
    Ok(Output { stdout, exit })
}
