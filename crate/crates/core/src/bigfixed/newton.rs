//! Division and square root by Newton iteration with precision doubling.
//!
//! Each routine computes an approximation from multiplications only and then
//! fixes the last unit with an exact correction step, so callers always see
//! exact floors.

use super::bigint::BigInt;
use super::mul::MulPolicy;
use super::natural::Natural;
use crate::error::{Error, Result};

// Below this many bits the seeds are computed directly in machine arithmetic.
const RECIP_BASE_BITS: u64 = 62;
const RSQRT_BASE_BITS: u64 = 48;

/// R with |R − 2^(bitlen(d) + prec) / d| <= 2. `d` must be nonzero.
pub(crate) fn recip_approx(d: &Natural, prec: u64, policy: MulPolicy) -> Natural {
    let n = d.bit_len();
    debug_assert!(n > 0);
    if prec <= RECIP_BASE_BITS {
        let (top, _) = d.top_bits(64);
        let tb = top.bit_len();
        let num = 1u128 << (tb + prec);
        return Natural::from_u128(num / top.to_u64().unwrap() as u128);
    }
    let h = prec / 2 + 2;
    let rh = recip_approx(d, h, policy);
    let (dt, _) = d.top_bits(prec + 16);
    let tb = dt.bit_len();
    // err = 1 − d·x in units of 2^-(tb + h)
    let prod = BigInt::from_natural(dt.mul(&rh, policy));
    let err = &BigInt::from_natural(Natural::pow2(tb + h)) - &prod;
    let corr = err.mul_natural(&rh, policy).shr_floor(tb + 2 * h - prec);
    let base = BigInt::from_natural(rh.shl(prec - h));
    let r = &base + &corr;
    debug_assert!(!r.is_negative());
    r.into_magnitude()
}

/// floor(2^exp / d).
pub(crate) fn pow2_div(exp: u64, d: &Natural, policy: MulPolicy) -> Result<Natural> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = d.bit_len();
    if exp + 1 < n {
        return Ok(Natural::zero());
    }
    if d.is_power_of_two() {
        return Ok(Natural::pow2(exp - (n - 1)));
    }
    // q ≈ 2^exp / d = R · 2^(exp − n − prec)
    let prec = exp - n + 3;
    let r = recip_approx(d, prec, policy);
    let q = r.shr(3);
    let target = Natural::pow2(exp);
    Ok(correct_quotient(q, d, &target, policy).0)
}

/// Floor division with remainder.
pub(crate) fn div_rem(num: &Natural, d: &Natural, policy: MulPolicy) -> Result<(Natural, Natural)> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num < d {
        return Ok((Natural::zero(), num.clone()));
    }
    if let Some(dv) = d.to_u64() {
        let (q, r) = num.div_rem_u64(dv);
        return Ok((q, Natural::from_u64(r)));
    }
    if let (Some(a), Some(b)) = (num.to_u128(), d.to_u128()) {
        return Ok((Natural::from_u128(a / b), Natural::from_u128(a % b)));
    }
    let n = d.bit_len();
    let qbits = num.bit_len() - n + 1;
    let prec = qbits + 4;
    let r = recip_approx(d, prec, policy);
    // Only the leading bits of the numerator influence the quotient estimate.
    let (nt, sh) = num.top_bits(qbits + 8);
    let total = n + prec;
    let prod = nt.mul(&r, policy);
    let q = if sh >= total { prod.shl(sh - total) } else { prod.shr(total - sh) };
    Ok(correct_quotient(q, d, num, policy))
}

// Adjusts an estimate q of floor(num / d) that is off by a few units.
fn correct_quotient(mut q: Natural, d: &Natural, num: &Natural, policy: MulPolicy) -> (Natural, Natural) {
    let mut prod = q.mul(d, policy);
    let mut steps = 0;
    while &prod > num {
        q = &q - &Natural::one();
        prod = &prod - d;
        steps += 1;
        debug_assert!(steps < 64, "quotient estimate too far above");
    }
    let mut rem = num - &prod;
    while &rem >= d {
        q = q.add_u64(1);
        rem = &rem - d;
        steps += 1;
        debug_assert!(steps < 64, "quotient estimate too far below");
    }
    (q, rem)
}

/// R with |R − 2^prec / sqrt(u)| <= 2 where u = x / 2^(2k), k = ceil(bitlen(x) / 2).
fn rsqrt_approx(x: &Natural, k: u64, prec: u64, policy: MulPolicy) -> Natural {
    if prec <= RSQRT_BASE_BITS {
        let (top, sh) = x.top_bits(64);
        let u = top.to_u64().unwrap() as f64 * 2f64.powi(sh as i32 - 2 * k as i32);
        let r = u.sqrt().recip() * 2f64.powi(prec as i32);
        return Natural::from_u64(r as u64);
    }
    let h = prec / 2 + 2;
    let rh = rsqrt_approx(x, k, h, policy);
    // u ≈ ut / 2^ub
    let (ut, sh) = x.top_bits(prec + 16);
    let ub = 2 * k - sh;
    let rsq = rh.square(policy);
    let t = BigInt::from_natural(ut.mul(&rsq, policy));
    // err = 1 − u·r² in units of 2^-(ub + 2h)
    let err = &BigInt::from_natural(Natural::pow2(ub + 2 * h)) - &t;
    let corr = err.mul_natural(&rh, policy).shr_floor(ub + 3 * h - prec + 1);
    let r = &BigInt::from_natural(rh.shl(prec - h)) + &corr;
    debug_assert!(!r.is_negative());
    r.into_magnitude()
}

/// floor(sqrt(x)), via the reciprocal square root and one multiplication.
pub(crate) fn isqrt(x: &Natural, policy: MulPolicy) -> Natural {
    if x.is_zero() {
        return Natural::zero();
    }
    let mut y = if let Some(v) = x.to_u128() {
        Natural::from_u64(isqrt_u128(v))
    } else {
        let k = x.bit_len().div_ceil(2);
        let prec = k + 4;
        let r = rsqrt_approx(x, k, prec, policy);
        // sqrt(x) = x · r / 2^(k + prec)
        let (xt, sh) = x.top_bits(k + 16);
        let total = k + prec;
        let prod = xt.mul(&r, policy);
        if sh >= total {
            prod.shl(sh - total)
        } else {
            prod.shr(total - sh)
        }
    };
    let mut sq = y.square(policy);
    let mut steps = 0;
    while &sq > x {
        sq = &sq - &(&y.shl(1) - &Natural::one());
        y = &y - &Natural::one();
        steps += 1;
        debug_assert!(steps < 64);
    }
    loop {
        let next = &(&sq + &y.shl(1)) + &Natural::one();
        if &next > x {
            break;
        }
        sq = next;
        y = y.add_u64(1);
        steps += 1;
        debug_assert!(steps < 64);
    }
    y
}

fn isqrt_u128(v: u128) -> u64 {
    let mut y = ((v as f64).sqrt() as u128).min(u64::MAX as u128);
    while y * y > v {
        y -= 1;
    }
    while (y + 1).checked_mul(y + 1).is_some_and(|s| s <= v) {
        y += 1;
    }
    y as u64
}

impl Natural {
    /// Floor division with remainder.
    pub fn div_rem(&self, d: &Natural, policy: MulPolicy) -> Result<(Natural, Natural)> {
        div_rem(self, d, policy)
    }

    /// floor(sqrt(self)).
    pub fn isqrt(&self, policy: MulPolicy) -> Natural {
        isqrt(self, policy)
    }
}
