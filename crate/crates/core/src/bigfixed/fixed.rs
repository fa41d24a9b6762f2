use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::bigint::{BigInt, Sign};
use super::context::PrecisionContext;
use super::mul::MulPolicy;
use super::natural::Natural;
use super::{newton, radix};
use crate::error::{Error, Result};

/// Signed fixed-point real: `mantissa / 2^scale_bits`.
///
/// Arithmetic truncates toward zero. Operands of `+`, `-` and the
/// multiplication methods must share a scale; mixing scales is a logic
/// error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FixedReal {
    mantissa: BigInt,
    scale_bits: u64,
}

impl FixedReal {
    pub fn from_parts(mantissa: BigInt, scale_bits: u64) -> Self {
        FixedReal { mantissa, scale_bits }
    }

    pub fn zero(scale_bits: u64) -> Self {
        FixedReal { mantissa: BigInt::zero(), scale_bits }
    }

    pub fn one_ulp(scale_bits: u64) -> Self {
        FixedReal { mantissa: BigInt::from_i64(1), scale_bits }
    }

    pub fn from_int(v: i64, scale_bits: u64) -> Self {
        FixedReal { mantissa: BigInt::from_i64(v).shl(scale_bits), scale_bits }
    }

    /// num / den, truncated toward zero.
    pub fn from_ratio(num: i64, den: u64, scale_bits: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let scaled = Natural::from_u64(num.unsigned_abs()).shl(scale_bits);
        let (q, _) = newton::div_rem(&scaled, &Natural::from_u64(den), MulPolicy::Auto)?;
        Ok(FixedReal { mantissa: BigInt::from_parts(num < 0, q), scale_bits })
    }

    /// Exact binary value of a finite double, truncated to the scale.
    pub fn from_f64(x: f64, scale_bits: u64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite value {x}")));
        }
        if x == 0.0 {
            return Ok(Self::zero(scale_bits));
        }
        let bits = x.abs().to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1 << 52) - 1);
        let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | 1 << 52, exp - 1075) };
        let mantissa = BigInt::from_parts(x < 0.0, Natural::from_u64(m)).shift(e + scale_bits as i64);
        Ok(FixedReal { mantissa, scale_bits })
    }

    /// Parses `[-+]digits[.digits]`, truncating toward zero.
    pub fn parse_decimal(s: &str, scale_bits: u64, policy: MulPolicy) -> Result<Self> {
        let t = s.trim();
        let (negative, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::Parse(format!("not a decimal number: `{s}`")));
        }
        let digits = format!("{int_part}{frac_part}");
        let n = radix::from_decimal_str(&digits, policy)
            .map_err(|_| Error::Parse(format!("not a decimal number: `{s}`")))?;
        let den = Natural::from_u64(10).pow(frac_part.len() as u64, policy);
        let (q, _) = newton::div_rem(&n.shl(scale_bits), &den, policy)?;
        Ok(FixedReal { mantissa: BigInt::from_parts(negative, q), scale_bits })
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale_bits(&self) -> u64 {
        self.scale_bits
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn sign(&self) -> Sign {
        self.mantissa.sign()
    }

    pub fn abs(&self) -> FixedReal {
        FixedReal { mantissa: self.mantissa.abs(), scale_bits: self.scale_bits }
    }

    fn same_scale(&self, other: &FixedReal) {
        assert_eq!(self.scale_bits, other.scale_bits, "fixed-point operands at different scales");
    }

    pub fn mul(&self, other: &FixedReal, policy: MulPolicy) -> FixedReal {
        self.same_scale(other);
        let p = self.mantissa.mul(&other.mantissa, policy);
        FixedReal { mantissa: p.shr_trunc(self.scale_bits), scale_bits: self.scale_bits }
    }

    pub fn square(&self, policy: MulPolicy) -> FixedReal {
        let p = self.mantissa.square(policy);
        FixedReal { mantissa: p.shr_trunc(self.scale_bits), scale_bits: self.scale_bits }
    }

    pub fn mul_int(&self, m: i64) -> FixedReal {
        FixedReal { mantissa: self.mantissa.mul_i64(m), scale_bits: self.scale_bits }
    }

    /// Division by a word, truncating toward zero.
    pub fn div_int(&self, d: u64) -> FixedReal {
        let (q, _) = self.mantissa.magnitude().div_rem_u64(d);
        FixedReal { mantissa: BigInt::from_parts(self.is_negative(), q), scale_bits: self.scale_bits }
    }

    /// self · 2^k; negative k truncates.
    pub fn mul_pow2(&self, k: i64) -> FixedReal {
        FixedReal { mantissa: self.mantissa.shift(k), scale_bits: self.scale_bits }
    }

    /// Same value at another scale; lowering the scale truncates.
    pub fn rescale(&self, scale_bits: u64) -> FixedReal {
        FixedReal { mantissa: self.mantissa.shift(scale_bits as i64 - self.scale_bits as i64), scale_bits }
    }

    /// |self − other| in units of the last place.
    pub fn ulps_from(&self, other: &FixedReal) -> Natural {
        self.same_scale(other);
        (&self.mantissa - &other.mantissa).into_magnitude()
    }

    pub fn to_f64(&self) -> f64 {
        let (m, e) = self.mantissa.magnitude().to_f64_parts();
        let v = m * 2f64.powf((e - self.scale_bits as i64) as f64);
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// floor(log2 |self|), or None for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        let b = self.mantissa.magnitude().bit_len();
        (b > 0).then(|| b as i64 - 1 - self.scale_bits as i64)
    }

    /// Short scientific rendering such as `1.2345e-678`, for reports.
    pub fn to_sci_string(&self, significant: usize) -> String {
        let mag = self.mantissa.magnitude();
        if mag.is_zero() {
            return "0".to_string();
        }
        let (m, e) = mag.to_f64_parts();
        let log10 = m.log10() + (e - self.scale_bits as i64) as f64 * std::f64::consts::LOG10_2;
        let mut exp = log10.floor();
        let mut lead = 10f64.powf(log10 - exp);
        if lead >= 9.999_999_999_999 {
            lead /= 10.0;
            exp += 1.0;
        }
        let sign = if self.is_negative() { "-" } else { "" };
        format!("{sign}{:.*}e{}", significant.saturating_sub(1), lead, exp as i64)
    }
}

/// 1/x truncated toward zero at the scale of `x`, i.e. within one ulp.
pub fn fx_recip(x: &FixedReal, ctx: &PrecisionContext) -> Result<FixedReal> {
    ctx.check(x)?;
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let s = x.scale_bits;
    let q = newton::pow2_div(2 * s, x.mantissa.magnitude(), ctx.mul_policy())?;
    Ok(FixedReal { mantissa: BigInt::from_parts(x.is_negative(), q), scale_bits: s })
}

/// sqrt(x) truncated at the scale of `x`: result² <= x < (result + ulp)².
pub fn fx_sqrt(x: &FixedReal, ctx: &PrecisionContext) -> Result<FixedReal> {
    ctx.check(x)?;
    if x.is_negative() {
        return Err(Error::Domain("square root of a negative number".into()));
    }
    let s = x.scale_bits;
    let r = newton::isqrt(&x.mantissa.magnitude().shl(s), ctx.mul_policy());
    Ok(FixedReal { mantissa: BigInt::from_natural(r), scale_bits: s })
}

/// Truncated decimal expansion with exactly `digits` fractional digits.
///
/// Fails when `digits` exceeds what the scale can resolve.
pub fn fx_to_decimal(x: &FixedReal, digits: u64) -> Result<String> {
    let capacity = (x.scale_bits as f64 * std::f64::consts::LOG10_2).floor() as u64;
    if digits > capacity {
        return Err(Error::Precision(format!(
            "{digits} digits requested from a value with {} fraction bits",
            x.scale_bits
        )));
    }
    decimal_string(x, digits, MulPolicy::Auto)
}

pub(crate) fn decimal_string(x: &FixedReal, digits: u64, policy: MulPolicy) -> Result<String> {
    if digits == 0 {
        return Err(Error::Precision("at least one fractional digit is required".into()));
    }
    let mag = x.mantissa.magnitude();
    let scaled = mag.mul(&Natural::from_u64(10).pow(digits, policy), policy).shr(x.scale_bits);
    let body = radix::to_decimal_string(&scaled, policy);
    let width = digits as usize + 1;
    let body = if body.len() < width { format!("{}{body}", "0".repeat(width - body.len())) } else { body };
    let (int_part, frac_part) = body.split_at(body.len() - digits as usize);
    let sign = if x.is_negative() && !scaled.is_zero() { "-" } else { "" };
    Ok(format!("{sign}{int_part}.{frac_part}"))
}

impl Add<&FixedReal> for &FixedReal {
    type Output = FixedReal;
    fn add(self, other: &FixedReal) -> FixedReal {
        self.same_scale(other);
        FixedReal { mantissa: &self.mantissa + &other.mantissa, scale_bits: self.scale_bits }
    }
}

impl Sub<&FixedReal> for &FixedReal {
    type Output = FixedReal;
    fn sub(self, other: &FixedReal) -> FixedReal {
        self.same_scale(other);
        FixedReal { mantissa: &self.mantissa - &other.mantissa, scale_bits: self.scale_bits }
    }
}

impl Add for FixedReal {
    type Output = FixedReal;
    fn add(self, other: FixedReal) -> FixedReal {
        &self + &other
    }
}

impl Sub for FixedReal {
    type Output = FixedReal;
    fn sub(self, other: FixedReal) -> FixedReal {
        &self - &other
    }
}

impl Neg for &FixedReal {
    type Output = FixedReal;
    fn neg(self) -> FixedReal {
        FixedReal { mantissa: -&self.mantissa, scale_bits: self.scale_bits }
    }
}

impl Neg for FixedReal {
    type Output = FixedReal;
    fn neg(self) -> FixedReal {
        FixedReal { mantissa: -self.mantissa, scale_bits: self.scale_bits }
    }
}

impl Ord for FixedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.same_scale(other);
        self.mantissa.cmp(&other.mantissa)
    }
}

impl PartialOrd for FixedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FixedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FixedReal({} @ {} bits: {:?})", self.to_sci_string(17), self.scale_bits, self.mantissa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(digits: u64) -> PrecisionContext {
        PrecisionContext::new(digits).unwrap()
    }

    #[test]
    fn recip_exact_cases() {
        let c = ctx(30);
        assert_eq!(fx_recip(&c.one(), &c).unwrap(), c.one());
        assert_eq!(fx_recip(&c.from_int(2), &c).unwrap(), c.from_ratio(1, 2).unwrap());
        assert_eq!(fx_recip(&c.from_int(-4), &c).unwrap(), c.from_ratio(-1, 4).unwrap());
        assert_eq!(fx_recip(&c.zero(), &c), Err(Error::DivisionByZero));
    }

    #[test]
    fn recip_of_three_at_64_bits() {
        let c = PrecisionContext::from_working_bits(64).unwrap();
        let r = fx_recip(&c.from_int(3), &c).unwrap();
        // floor(2^64 / 3) from u128 arithmetic
        let expected = (1u128 << 64) / 3;
        assert_eq!(r.mantissa().to_i128(), Some(expected as i128));
    }

    #[test]
    fn sqrt_exact_cases() {
        let c = ctx(40);
        assert_eq!(fx_sqrt(&c.zero(), &c).unwrap(), c.zero());
        assert_eq!(fx_sqrt(&c.one(), &c).unwrap(), c.one());
        assert_eq!(fx_sqrt(&c.from_int(4), &c).unwrap(), c.from_int(2));
        assert!(matches!(fx_sqrt(&c.from_int(-1), &c), Err(Error::Domain(_))));
    }

    #[test]
    fn sqrt_two_squares_back() {
        let c = ctx(100);
        let two = c.from_int(2);
        let r = fx_sqrt(&two, &c).unwrap();
        let sq = r.square(MulPolicy::Auto);
        assert!(sq.ulps_from(&two) <= Natural::from_u64(8));
        assert!(c.to_decimal(&r, 30).unwrap().starts_with("1.414213562373095048801688724209"));
    }

    #[test]
    fn decimal_formatting() {
        let c = ctx(10);
        assert_eq!(fx_to_decimal(&c.from_ratio(1, 2).unwrap(), 3).unwrap(), "0.500");
        assert_eq!(fx_to_decimal(&c.from_ratio(-9, 4).unwrap(), 2).unwrap(), "-2.25");
        assert_eq!(fx_to_decimal(&c.from_int(-12), 1).unwrap(), "-12.0");
        assert!(fx_to_decimal(&c.one(), 1000).is_err());
        assert!(c.to_decimal(&c.one(), 11).is_err());
    }

    #[test]
    fn parse_and_print() {
        let c = ctx(60);
        let x = c.parse("-3.14159").unwrap();
        assert_eq!(c.to_decimal(&x, 4).unwrap(), "-3.1415");
        assert_eq!(c.parse("0.25").unwrap(), c.from_ratio(1, 4).unwrap());
        assert_eq!(c.parse("7").unwrap(), c.from_int(7));
        assert_eq!(c.parse(".5").unwrap(), c.from_ratio(1, 2).unwrap());
        assert!(c.parse("1.2.3").is_err());
        assert!(c.parse("").is_err());
        assert!(c.parse("abc").is_err());
    }

    #[test]
    fn from_f64_is_exact() {
        let x = FixedReal::from_f64(0.1, 80).unwrap();
        assert_eq!(x.to_f64(), 0.1);
        assert_eq!(FixedReal::from_f64(-2.5, 8).unwrap(), FixedReal::from_ratio(-5, 2, 8).unwrap());
    }

    #[test]
    fn sci_rendering() {
        let c = ctx(30);
        assert_eq!(c.from_int(1234).to_sci_string(3), "1.23e3");
        assert_eq!(c.pow2_neg(10).to_sci_string(4), "9.766e-4");
        assert_eq!(c.zero().to_sci_string(4), "0");
    }
}
