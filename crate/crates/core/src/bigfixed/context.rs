use super::fixed::{self, FixedReal};
use super::mul::MulPolicy;
use crate::error::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const MIN_GUARD_BITS: u64 = 32;

/// Requested decimal digits together with the binary precision used to
/// produce them.
///
/// Every [`FixedReal`] combined under a context carries exactly
/// `working_bits` fraction bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    decimal_digits: u64,
    working_bits: u64,
    guard_bits: u64,
    mul_policy: MulPolicy,
}

fn ceil_log2(x: u64) -> u64 {
    64 - (x.max(1) - 1).leading_zeros() as u64
}

fn digits_to_bits(digits: u64) -> u64 {
    (digits as f64 * LOG2_10).ceil() as u64
}

impl PrecisionContext {
    /// Context for `decimal_digits` digits with the default guard policy
    /// `32 + ceil(log2(working_bits))`.
    pub fn new(decimal_digits: u64) -> Result<Self> {
        if decimal_digits == 0 {
            return Err(Error::Precision("decimal digits must be positive".into()));
        }
        let base = digits_to_bits(decimal_digits);
        let mut guard = MIN_GUARD_BITS;
        loop {
            let next = MIN_GUARD_BITS + ceil_log2(base + guard);
            if next == guard {
                break;
            }
            guard = next;
        }
        Ok(PrecisionContext {
            decimal_digits,
            working_bits: base + guard,
            guard_bits: guard,
            mul_policy: MulPolicy::Auto,
        })
    }

    /// Context with an exact binary precision; the digit count is whatever
    /// the precision supports after guard bits.
    pub fn from_working_bits(working_bits: u64) -> Result<Self> {
        let guard = MIN_GUARD_BITS + ceil_log2(working_bits);
        let usable = working_bits.saturating_sub(guard);
        let mut digits = (usable as f64 / LOG2_10).floor() as u64;
        while digits > 0 && digits_to_bits(digits) > usable {
            digits -= 1;
        }
        if digits == 0 {
            return Err(Error::Precision(format!("{working_bits} working bits leave no room for digits")));
        }
        Ok(PrecisionContext { decimal_digits: digits, working_bits, guard_bits: guard, mul_policy: MulPolicy::Auto })
    }

    /// Replaces the guard policy, keeping the requested digits.
    pub fn with_guard_bits(self, guard_bits: u64) -> Result<Self> {
        if guard_bits < MIN_GUARD_BITS {
            return Err(Error::Precision(format!("guard bits must be at least {MIN_GUARD_BITS}, got {guard_bits}")));
        }
        Ok(PrecisionContext {
            working_bits: digits_to_bits(self.decimal_digits) + guard_bits,
            guard_bits,
            ..self
        })
    }

    pub fn with_policy(self, mul_policy: MulPolicy) -> Self {
        PrecisionContext { mul_policy, ..self }
    }

    /// Same digits, guard and policy with `extra` more working bits.
    pub fn extended(&self, extra: u64) -> Self {
        PrecisionContext { working_bits: self.working_bits + extra, ..*self }
    }

    pub fn decimal_digits(&self) -> u64 {
        self.decimal_digits
    }

    pub fn working_bits(&self) -> u64 {
        self.working_bits
    }

    pub fn guard_bits(&self) -> u64 {
        self.guard_bits
    }

    pub fn mul_policy(&self) -> MulPolicy {
        self.mul_policy
    }

    pub fn check(&self, x: &FixedReal) -> Result<()> {
        if x.scale_bits() == self.working_bits {
            Ok(())
        } else {
            Err(Error::ScaleMismatch { expected: self.working_bits, found: x.scale_bits() })
        }
    }

    pub fn zero(&self) -> FixedReal {
        FixedReal::zero(self.working_bits)
    }

    pub fn one(&self) -> FixedReal {
        FixedReal::from_int(1, self.working_bits)
    }

    pub fn from_int(&self, v: i64) -> FixedReal {
        FixedReal::from_int(v, self.working_bits)
    }

    pub fn from_ratio(&self, num: i64, den: u64) -> Result<FixedReal> {
        FixedReal::from_ratio(num, den, self.working_bits)
    }

    pub fn parse(&self, s: &str) -> Result<FixedReal> {
        FixedReal::parse_decimal(s, self.working_bits, self.mul_policy)
    }

    /// 2^-k at this scale (zero when k exceeds the working bits).
    pub fn pow2_neg(&self, k: u64) -> FixedReal {
        FixedReal::one_ulp(self.working_bits).mul_pow2(self.working_bits as i64 - k as i64)
    }

    /// The AGM stopping gap 2^(−working_bits + guard_bits/2).
    pub fn agm_tolerance(&self) -> FixedReal {
        FixedReal::one_ulp(self.working_bits).mul_pow2((self.guard_bits / 2) as i64)
    }

    pub fn mul(&self, a: &FixedReal, b: &FixedReal) -> FixedReal {
        a.mul(b, self.mul_policy)
    }

    pub fn sqr(&self, a: &FixedReal) -> FixedReal {
        a.square(self.mul_policy)
    }

    pub fn recip(&self, x: &FixedReal) -> Result<FixedReal> {
        fixed::fx_recip(x, self)
    }

    /// a / b = a · recip(b).
    pub fn div(&self, a: &FixedReal, b: &FixedReal) -> Result<FixedReal> {
        Ok(self.mul(a, &self.recip(b)?))
    }

    pub fn sqrt(&self, x: &FixedReal) -> Result<FixedReal> {
        fixed::fx_sqrt(x, self)
    }

    /// Decimal rendering limited to the digits this context guarantees.
    pub fn to_decimal(&self, x: &FixedReal, digits: u64) -> Result<String> {
        if digits > self.decimal_digits {
            return Err(Error::Precision(format!(
                "{digits} digits requested from a {}-digit context",
                self.decimal_digits
            )));
        }
        fixed::decimal_string(x, digits, self.mul_policy)
    }
}
