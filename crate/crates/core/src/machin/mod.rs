//! Machin-like formulas π/4 = Σ cᵢ·arctan(1/nᵢ), with each arctangent's
//! Maclaurin series summed exactly by binary splitting.

mod formula;
mod split;

pub use formula::{formula_validate, ArctanTerm, MachinFormula};
pub use split::{split_sum, SplitFraction};

use crate::agm::INTERNAL_EXTRA_BITS;
use crate::bigfixed::{BigInt, FixedReal, PrecisionContext};
use crate::error::{Error, Result};

/// Number of series terms `arctan_recip` sums for 1/n at this context.
///
/// The smallest J whose first omitted term 1/((2J+1)·n^(2J+1)) is at most
/// 2^−(working_bits − guard_bits/2 + 2).
pub fn arctan_term_count(n: u64, ctx: &PrecisionContext) -> u64 {
    let target = (ctx.working_bits() - ctx.guard_bits() / 2 + 2) as f64;
    let log_n = (n as f64).log2();
    let covered = |j: u64| (2 * j + 1) as f64 * log_n + ((2 * j + 1) as f64).log2();
    let mut j = ((target / log_n - 1.0) / 2.0).floor().max(1.0) as u64;
    while j > 1 && covered(j - 1) >= target + 1e-6 {
        j -= 1;
    }
    while covered(j) < target + 1e-6 {
        j += 1;
    }
    j
}

/// arctan(1/n) within 2^(−working_bits + guard_bits/2).
pub fn arctan_recip(n: u64, ctx: &PrecisionContext) -> Result<FixedReal> {
    if n < 2 {
        return Err(Error::Domain(format!("arctan(1/n) needs n >= 2, got {n}")));
    }
    let terms = arctan_term_count(n, ctx);
    let frac = split_sum(n, 0, terms, ctx.mul_policy());
    frac.to_fixed(ctx)
}

/// π = 4·Σ cᵢ·arctan(1/nᵢ) for a validated formula.
pub fn pi_machin(f: &MachinFormula, ctx: &PrecisionContext) -> Result<FixedReal> {
    if !formula_validate(f) {
        return Err(Error::InvalidFormula(format!("`{f}` is not an identity for π/4")));
    }
    let inner = ctx.extended(INTERNAL_EXTRA_BITS);
    let mut sum = inner.zero();
    for term in f.terms() {
        let at = arctan_recip(term.recip_arg, &inner)?;
        sum = &sum + &at.mul_int(term.coeff);
    }
    Ok(sum.mul_pow2(2).rescale(ctx.working_bits()))
}

/// Total series terms `pi_machin` sums for this formula.
pub fn machin_term_count(f: &MachinFormula, ctx: &PrecisionContext) -> u64 {
    let inner = ctx.extended(INTERNAL_EXTRA_BITS);
    f.terms().iter().map(|t| arctan_term_count(t.recip_arg, &inner)).sum()
}

impl SplitFraction {
    /// num/den at the context scale, by one full-precision division.
    pub fn to_fixed(&self, ctx: &PrecisionContext) -> Result<FixedReal> {
        let scaled = self.num.magnitude().shl(ctx.working_bits());
        let (q, _) = scaled.div_rem(&self.den, ctx.mul_policy())?;
        Ok(FixedReal::from_parts(BigInt::from_parts(self.num.is_negative(), q), ctx.working_bits()))
    }
}
