//! Natural logarithm through the AGM, exponential by Newton inversion of the
//! logarithm, and the named constants built from them.
//!
//! For large s, ln(s) = π / (2·M(1, 4/s)) + O(ln(s)/s²). Arguments are
//! shifted by a power of two until that error falls below the working
//! precision, and the shift is undone with a cached ln 2.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::agm::{agm_run, pi_brent_salamin, INTERNAL_EXTRA_BITS};
use crate::bigfixed::{BigInt, FixedReal, MulPolicy, Natural, PrecisionContext};
use crate::error::{Error, Result};

/// Largest |x| accepted by [`exp_newton`].
pub const EXP_ARG_LIMIT: i64 = 1 << 20;

// Below this the Newton ladder stops halving and the seed is refined twice.
const LADDER_FLOOR: u64 = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum CacheName {
    Pi,
    Ln2,
}

type Slot = Arc<Mutex<Option<FixedReal>>>;
type Cache = Mutex<HashMap<(CacheName, u64, MulPolicy), Slot>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

// The map lock is held only to find the slot; the slot lock serializes the
// first fill of one key without blocking other keys.
fn cached(name: CacheName, ctx: &PrecisionContext, fill: impl FnOnce() -> Result<FixedReal>) -> Result<FixedReal> {
    let key = (name, ctx.working_bits(), ctx.mul_policy());
    let slot = {
        let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
        map.entry(key).or_default().clone()
    };
    let mut value = slot.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(v) = value.as_ref() {
        return Ok(v.clone());
    }
    let v = fill()?;
    *value = Some(v.clone());
    Ok(v)
}

/// Drops every cached π and ln 2.
pub fn clear_constant_cache() {
    cache().lock().unwrap_or_else(|e| e.into_inner()).clear();
}

// The AGM for ln runs with half as many bits again: 4/s is about
// 2^(−t/2), so at scale t it would carry only t/2 significant bits.
fn agm_context(t: u64, policy: MulPolicy) -> Result<PrecisionContext> {
    Ok(PrecisionContext::from_working_bits(t + t.div_ceil(2) + 16)?.with_policy(policy))
}

fn shift_exponent(t: u64) -> u64 {
    t.div_ceil(2) + 2
}

fn pi_at(ectx: &PrecisionContext) -> Result<FixedReal> {
    cached(CacheName::Pi, ectx, || pi_brent_salamin(ectx))
}

// ln 2 = π / (2q·M(1, 2^(2−q))) at the AGM scale for target precision t.
fn ln2_at(t: u64, ectx: &PrecisionContext) -> Result<FixedReal> {
    cached(CacheName::Ln2, ectx, || {
        let q = shift_exponent(t);
        let run = agm_run(&ectx.one(), &ectx.pow2_neg(q - 2), ectx)?;
        ectx.div(&pi_at(ectx)?, &run.mean.mul_int(2 * q as i64))
    })
}

// ln x at scale t, for x at any scale.
fn ln_scaled(x: &FixedReal, t: u64, policy: MulPolicy) -> Result<FixedReal> {
    if !x.is_positive() {
        return Err(Error::Domain("logarithm of a non-positive number".into()));
    }
    let ectx = agm_context(t, policy)?;
    let e = ectx.working_bits() as i64;
    let mant = x.mantissa().magnitude();
    // s = x·2^m with log2 s in [t/2 + 2, t/2 + 3)
    let log2_x = mant.bit_len() as i64 - 1 - x.scale_bits() as i64;
    let m = shift_exponent(t) as i64 - log2_x;
    // 4/s = 2^(2 − m + scale) / mant
    let k = 2 - m + x.scale_bits() as i64 + e;
    debug_assert!(k >= 0);
    let (b0, _) = Natural::pow2(k as u64).div_rem(mant, policy)?;
    let run = agm_run(&ectx.one(), &FixedReal::from_parts(BigInt::from_natural(b0), e as u64), &ectx)?;
    let ln_s = ectx.div(&pi_at(&ectx)?, &run.mean.mul_int(2))?;
    let ln_x = &ln_s - &ln2_at(t, &ectx)?.mul_int(m);
    Ok(ln_x.rescale(t))
}

/// ln x for x > 0, within 2^(−working_bits + guard_bits/2).
pub fn ln_agm(x: &FixedReal, ctx: &PrecisionContext) -> Result<FixedReal> {
    ctx.check(x)?;
    let t = ctx.working_bits() + INTERNAL_EXTRA_BITS;
    Ok(ln_scaled(x, t, ctx.mul_policy())?.rescale(ctx.working_bits()))
}

/// ln 2 from the AGM with s = 2^q, cached per precision and policy.
pub fn const_ln2(ctx: &PrecisionContext) -> Result<FixedReal> {
    let t = ctx.working_bits() + INTERNAL_EXTRA_BITS;
    let ectx = agm_context(t, ctx.mul_policy())?;
    Ok(ln2_at(t, &ectx)?.rescale(ctx.working_bits()))
}

// Precisions for the Newton steps, ascending, ending at `top`.
fn newton_ladder(top: u64) -> Vec<u64> {
    let mut ladder = vec![top];
    let mut p = top;
    while p > LADDER_FLOOR {
        p = p.div_ceil(2) + 8;
        ladder.push(p);
    }
    // the seed is good to about 30 bits, so the bottom rung runs twice
    ladder.push(p);
    ladder.reverse();
    ladder
}

// e^x for x >= 0 at scale t.
fn exp_nonneg(x: &FixedReal, t: u64, policy: MulPolicy) -> Result<FixedReal> {
    let ladder = newton_ladder(t);
    let xf = x.to_f64();
    let k = (xf / std::f64::consts::LN_2).round();
    let r = xf - k * std::f64::consts::LN_2;
    let mut y = FixedReal::from_f64(r.exp(), ladder[0])?.mul_pow2(k as i64);
    for &p in &ladder {
        y = y.rescale(p);
        let residual = &x.rescale(p) - &ln_scaled(&y, p, policy)?;
        y = &y + &y.mul(&residual, policy);
    }
    Ok(y)
}

/// e^x for |x| <= 2^20, within a relative 2^(−working_bits + guard_bits).
///
/// Newton's iteration y ← y + y·(x − ln y) doubles the correct bits per
/// step, so each step runs at roughly twice the precision of the last.
/// Negative arguments go through 1/e^|x|.
pub fn exp_newton(x: &FixedReal, ctx: &PrecisionContext) -> Result<FixedReal> {
    ctx.check(x)?;
    if x.abs() > FixedReal::from_int(EXP_ARG_LIMIT, x.scale_bits()) {
        return Err(Error::Domain(format!("exp argument outside [-2^20, 2^20]: {}", x.to_sci_string(6))));
    }
    let inner = ctx.extended(INTERNAL_EXTRA_BITS);
    let y = exp_nonneg(&x.abs().rescale(inner.working_bits()), inner.working_bits(), ctx.mul_policy())?;
    let y = if x.is_negative() { inner.recip(&y)? } else { y };
    Ok(y.rescale(ctx.working_bits()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstantName {
    Pi,
    EPi,
    PiOverE,
    Ln2,
}

impl ConstantName {
    pub const ALL: [ConstantName; 4] = [ConstantName::Pi, ConstantName::EPi, ConstantName::PiOverE, ConstantName::Ln2];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstantName::Pi => "pi",
            ConstantName::EPi => "e_pi",
            ConstantName::PiOverE => "pi_over_e",
            ConstantName::Ln2 => "ln2",
        }
    }
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstantName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstantName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownConstant(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedConstant {
    pub name: ConstantName,
    pub value: FixedReal,
    pub digits: u64,
}

impl NamedConstant {
    /// The value truncated to `digits` fractional digits.
    pub fn to_decimal(&self) -> Result<String> {
        crate::bigfixed::fx_to_decimal(&self.value, self.digits)
    }
}

/// Evaluates `pi`, `e_pi`, `pi_over_e` or `ln2` at the context's digits.
pub fn named_constant(name: &str, ctx: &PrecisionContext) -> Result<NamedConstant> {
    let name: ConstantName = name.parse()?;
    let inner = ctx.extended(INTERNAL_EXTRA_BITS);
    let value = match name {
        ConstantName::Pi => pi_brent_salamin(ctx)?,
        ConstantName::Ln2 => const_ln2(ctx)?,
        ConstantName::EPi => exp_newton(&pi_brent_salamin(&inner)?, &inner)?.rescale(ctx.working_bits()),
        ConstantName::PiOverE => {
            let inv_e = exp_newton(&inner.from_int(-1), &inner)?;
            inner.mul(&pi_brent_salamin(&inner)?, &inv_e).rescale(ctx.working_bits())
        }
    };
    Ok(NamedConstant { name, value, digits: ctx.decimal_digits() })
}
