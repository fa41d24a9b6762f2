//! Arithmetic-geometric mean with the Σ 2^(n−1)·c_n² accumulator, and the
//! two π algorithms built on it.
//!
//! For a run started at (1, k′) the mean gives K(k) = π / (2M) and the
//! accumulator gives E(k)/K(k) = 1 − S. Legendre's relation
//! E·K′ + E′·K − K·K′ = π/2 then yields π = 2·M·M′ / (1 − S − S′), which at
//! k = k′ = 1/√2 is the Brent–Salamin formula π = 2·M² / (1 − 2S).

use std::io::Write;

use crate::bigfixed::{FixedReal, PrecisionContext};
use crate::error::{Error, Result};

/// Extra bits the π routines carry internally beyond the caller's context,
/// so results are within a few ulps at the caller's scale.
pub(crate) const INTERNAL_EXTRA_BITS: u64 = 32;

/// One row of the AGM trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgmRow {
    pub a: FixedReal,
    pub b: FixedReal,
    /// c_n² = a_n² − b_n².
    pub c_sq: FixedReal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgmResult {
    pub mean: FixedReal,
    /// S = Σ_{n≥0} 2^(n−1)·c_n².
    pub c_sum: FixedReal,
    pub iterations: usize,
    pub trace: Vec<AgmRow>,
}

fn iteration_limit(ctx: &PrecisionContext) -> usize {
    8 * (ctx.working_bits() as f64).log2().ceil() as usize
}

/// Runs the AGM from (a0, b0) until a_n − b_n <= 2^(−working_bits + guard_bits/2).
///
/// The last step only forms (a_n + b_n)/2, which doubles the correct bits of
/// the mean without another square root; it counts as an iteration.
pub fn agm_run(a0: &FixedReal, b0: &FixedReal, ctx: &PrecisionContext) -> Result<AgmResult> {
    ctx.check(a0)?;
    ctx.check(b0)?;
    if !b0.is_positive() || b0 > a0 {
        return Err(Error::Domain("AGM needs 0 < b0 <= a0".into()));
    }
    let policy = ctx.mul_policy();
    let s = ctx.working_bits();
    let tol = ctx.agm_tolerance();
    let limit = iteration_limit(ctx);

    let c0_sq = &ctx.sqr(a0) - &ctx.sqr(b0);
    let mut c_sum = c0_sq.mul_pow2(-1);
    let mut trace = vec![AgmRow { a: a0.clone(), b: b0.clone(), c_sq: c0_sq }];
    let mut a = a0.clone();
    let mut b = b0.clone();
    let mut n: u64 = 0;
    loop {
        let gap = &a - &b;
        // c_{n+1}² = gap²/4 enters S with weight 2^n; shifting the exact
        // square once keeps the weighted term within one ulp.
        let gap_sq = gap.mantissa().square(policy);
        let weighted = FixedReal::from_parts(gap_sq.shift(n as i64 - 2 - s as i64), s);
        c_sum = &c_sum + &weighted;
        n += 1;
        let a_next = (&a + &b).mul_pow2(-1);
        if gap <= tol {
            return Ok(AgmResult { mean: a_next, c_sum, iterations: n as usize, trace });
        }
        if n as usize >= limit {
            return Err(Error::Consistency(format!("AGM did not converge within {limit} iterations")));
        }
        let b_next = ctx.sqrt(&ctx.mul(&a, &b))?;
        let c_sq = FixedReal::from_parts(gap_sq.shr_trunc(s + 2), s);
        a = a_next;
        b = b_next;
        trace.push(AgmRow { a: a.clone(), b: b.clone(), c_sq });
    }
}

fn inv_sqrt2(ctx: &PrecisionContext) -> Result<FixedReal> {
    ctx.sqrt(&ctx.from_ratio(1, 2)?)
}

/// π by the classic Brent–Salamin iteration (k = k′ = 1/√2).
pub fn pi_brent_salamin(ctx: &PrecisionContext) -> Result<FixedReal> {
    pi_brent_salamin_traced(ctx).map(|(pi, _)| pi)
}

/// π together with the AGM trace (kept at the internal precision).
pub fn pi_brent_salamin_traced(ctx: &PrecisionContext) -> Result<(FixedReal, AgmResult)> {
    let inner = ctx.extended(INTERNAL_EXTRA_BITS);
    let run = agm_run(&inner.one(), &inv_sqrt2(&inner)?, &inner)?;
    let pi = brent_salamin_combine(&run.mean, &run.c_sum, &inner)?;
    Ok((pi.rescale(ctx.working_bits()), run))
}

// π = 2·M² / (1 − 2S)
fn brent_salamin_combine(mean: &FixedReal, c_sum: &FixedReal, ctx: &PrecisionContext) -> Result<FixedReal> {
    let denom = &ctx.one() - &c_sum.mul_pow2(1);
    ctx.div(&ctx.sqr(mean).mul_pow2(1), &denom)
}

/// A modulus and its complement; k′ is always derived from k, never supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusPair {
    k: FixedReal,
    k_prime: FixedReal,
}

impl ModulusPair {
    pub fn new(k: &FixedReal, ctx: &PrecisionContext) -> Result<Self> {
        ctx.check(k)?;
        if !k.is_positive() || *k >= ctx.one() {
            return Err(Error::Domain("modulus k must lie in (0, 1)".into()));
        }
        let k_prime = ctx.sqrt(&(&ctx.one() - &ctx.sqr(k)))?;
        Ok(ModulusPair { k: k.clone(), k_prime })
    }

    pub fn from_decimal(k: &str, ctx: &PrecisionContext) -> Result<Self> {
        Self::new(&ctx.parse(k)?, ctx)
    }

    pub fn k(&self) -> &FixedReal {
        &self.k
    }

    pub fn k_prime(&self) -> &FixedReal {
        &self.k_prime
    }
}

struct LegendreRuns {
    // Run from (1, k′): K(k) = π / (2·mean).
    direct: AgmResult,
    // Run from (1, k): K(k′) = π / (2·mean).
    complement: AgmResult,
}

fn legendre_runs(pair: &ModulusPair, ctx: &PrecisionContext) -> Result<LegendreRuns> {
    let one = ctx.one();
    let (direct, complement) = std::thread::scope(|scope| {
        let handle = scope.spawn(|| agm_run(&one, &pair.k_prime, ctx));
        let complement = agm_run(&one, &pair.k, ctx);
        (handle.join().expect("AGM worker panicked"), complement)
    });
    Ok(LegendreRuns { direct: direct?, complement: complement? })
}

/// π from two AGM runs at complementary moduli via Legendre's relation.
pub fn pi_legendre_family(k: &FixedReal, ctx: &PrecisionContext) -> Result<FixedReal> {
    ctx.check(k)?;
    let inner = ctx.extended(INTERNAL_EXTRA_BITS);
    let pair = ModulusPair::new(&k.rescale(inner.working_bits()), &inner)?;
    let runs = legendre_runs(&pair, &inner)?;
    let num = inner.mul(&runs.direct.mean, &runs.complement.mean).mul_pow2(1);
    let denom = &(&inner.one() - &runs.direct.c_sum) - &runs.complement.c_sum;
    Ok(inner.div(&num, &denom)?.rescale(ctx.working_bits()))
}

/// E·K′ + E′·K − K·K′ − π/2 with K, E from the AGM and π from Brent–Salamin.
pub fn legendre_residual(k: &FixedReal, ctx: &PrecisionContext) -> Result<FixedReal> {
    ctx.check(k)?;
    let pair = ModulusPair::new(k, ctx)?;
    let runs = legendre_runs(&pair, ctx)?;
    let pi = pi_brent_salamin(ctx)?;
    let half_pi = pi.mul_pow2(-1);
    let big_k = ctx.div(&half_pi, &runs.direct.mean)?;
    let big_k_prime = ctx.div(&half_pi, &runs.complement.mean)?;
    let big_e = ctx.mul(&big_k, &(&ctx.one() - &runs.direct.c_sum));
    let big_e_prime = ctx.mul(&big_k_prime, &(&ctx.one() - &runs.complement.c_sum));
    let lhs = &(&ctx.mul(&big_e, &big_k_prime) + &ctx.mul(&big_e_prime, &big_k)) - &ctx.mul(&big_k, &big_k_prime);
    Ok(&lhs - &half_pi)
}

/// Convergence of the Brent–Salamin π estimate, one row per AGM trace row.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub iteration: usize,
    pub a: FixedReal,
    pub b: FixedReal,
    pub c_sq: FixedReal,
    /// The π estimate if the iteration stopped after this row.
    pub estimate: FixedReal,
    /// Correct decimal digits of the estimate against the converged value.
    pub correct_digits: u64,
}

/// Rebuilds the π estimate after each row of a Brent–Salamin trace.
pub fn convergence_rows(run: &AgmResult, ctx: &PrecisionContext) -> Result<Vec<ConvergenceRow>> {
    let s = ctx.working_bits();
    let policy = ctx.mul_policy();
    let first = run.trace.first().ok_or_else(|| Error::Consistency("empty AGM trace".into()))?;
    ctx.check(&first.a)?;
    let final_pi = brent_salamin_combine(&run.mean, &run.c_sum, ctx)?;
    let max_digits = (s as f64 * std::f64::consts::LOG10_2).floor() as u64;

    let mut partial = first.c_sq.mul_pow2(-1);
    let mut rows = Vec::with_capacity(run.trace.len());
    for (n, row) in run.trace.iter().enumerate() {
        if n > 0 {
            partial = &partial + &row.c_sq.mul_pow2(n as i64 - 1);
        }
        let gap = &row.a - &row.b;
        let tail = FixedReal::from_parts(gap.mantissa().square(policy).shift(n as i64 - 2 - s as i64), s);
        let mean = (&row.a + &row.b).mul_pow2(-1);
        let estimate = brent_salamin_combine(&mean, &(&partial + &tail), ctx)?;
        let err = (&estimate - &final_pi).abs();
        let correct_digits = match err.log2_floor() {
            None => max_digits,
            Some(e) => (((-(e + 1)) as f64) * std::f64::consts::LOG10_2).floor().clamp(0.0, max_digits as f64) as u64,
        };
        rows.push(ConvergenceRow {
            iteration: n,
            a: row.a.clone(),
            b: row.b.clone(),
            c_sq: row.c_sq.clone(),
            estimate,
            correct_digits,
        });
    }
    Ok(rows)
}

/// Writes `iteration,a_n,b_n,c_n_sq,correct_digits` rows; a_n and b_n are
/// printed with `value_digits` decimals, c_n² in scientific notation.
pub fn write_trace_csv<W: Write>(rows: &[ConvergenceRow], value_digits: u64, mut out: W) -> std::io::Result<()> {
    writeln!(out, "iteration,a_n,b_n,c_n_sq,correct_digits")?;
    for r in rows {
        let a = crate::bigfixed::fx_to_decimal(&r.a, value_digits).map_err(std::io::Error::other)?;
        let b = crate::bigfixed::fx_to_decimal(&r.b, value_digits).map_err(std::io::Error::other)?;
        writeln!(out, "{},{},{},{},{}", r.iteration, a, b, r.c_sq.to_sci_string(8), r.correct_digits)?;
    }
    Ok(())
}
