//! AGM against Machin timings, each run checked against its counterpart.

use std::io::Write;
use std::time::Instant;

use picalc_core::{fx_to_decimal, MulPolicy, PrecisionContext};
use serde::{Deserialize, Serialize};

use crate::algo::{compute_pi, PiAlgorithm};
use crate::error::CliError;
use crate::verify::agreement_prefix;

/// One benchmark row. `agreement_prefix` counts the fractional digits on
/// which this run agrees with the other algorithm's run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub digits: u64,
    pub mul_policy: String,
    pub wall_time_s: f64,
    pub iterations_or_terms: u64,
    pub agreement_prefix: u64,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub digits: Vec<u64>,
    pub policies: Vec<MulPolicy>,
    pub repeat: usize,
}

pub fn bench_algorithms() -> [PiAlgorithm; 2] {
    [PiAlgorithm::Agm, "machin@machin".parse().expect("builtin formula")]
}

pub fn median(samples: &[f64]) -> f64 {
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Runs every (digits, policy, algorithm) combination `repeat` times and
/// reports the median wall time. Decimal conversion is outside the timed
/// region.
pub fn run_bench(cfg: &BenchConfig, make_ctx: impl Fn(u64) -> Result<PrecisionContext, CliError>) -> Result<Vec<BenchRecord>, CliError> {
    if cfg.repeat == 0 {
        return Err(CliError::Usage("--repeat must be at least 1".into()));
    }
    let algos = bench_algorithms();
    let mut records = Vec::new();
    for &digits in &cfg.digits {
        for &policy in &cfg.policies {
            let ctx = make_ctx(digits)?.with_policy(policy);
            let mut rows = Vec::new();
            for algo in &algos {
                let mut times = Vec::with_capacity(cfg.repeat);
                let mut last = None;
                for _ in 0..cfg.repeat {
                    let start = Instant::now();
                    let run = compute_pi(algo, &ctx)?;
                    times.push(start.elapsed().as_secs_f64());
                    last = Some(run);
                }
                let run = last.expect("repeat >= 1");
                rows.push((algo.label(), median(&times), run.iterations_or_terms.unwrap_or(0), fx_to_decimal(&run.value, digits)?));
            }
            let agreement = agreement_prefix(&rows[0].3, &rows[1].3);
            for (algorithm, wall_time_s, iterations_or_terms, _) in rows {
                records.push(BenchRecord {
                    algorithm,
                    digits,
                    mul_policy: policy.label().to_string(),
                    wall_time_s,
                    iterations_or_terms,
                    agreement_prefix: agreement,
                });
            }
        }
    }
    Ok(records)
}

pub fn all_verified(records: &[BenchRecord]) -> bool {
    records.iter().all(|r| r.agreement_prefix >= r.digits)
}

/// agm/machin wall-time ratio per (digits, policy), in record order.
pub fn time_ratios(records: &[BenchRecord]) -> Vec<(u64, String, f64)> {
    let mut out = Vec::new();
    for agm in records.iter().filter(|r| r.algorithm == "agm") {
        let machin = records
            .iter()
            .find(|r| r.algorithm.starts_with("machin") && r.digits == agm.digits && r.mul_policy == agm.mul_policy);
        if let Some(m) = machin {
            out.push((agm.digits, agm.mul_policy.clone(), agm.wall_time_s / m.wall_time_s));
        }
    }
    out
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(|e| CliError::Failure(format!("CSV output failed: {e}")))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(records: &[BenchRecord], mut out: W) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, records).map_err(|e| CliError::Failure(format!("JSON output failed: {e}")))?;
    writeln!(out)?;
    Ok(())
}
