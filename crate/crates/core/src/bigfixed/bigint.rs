use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::mul::MulPolicy;
use super::natural::Natural;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// Sign-magnitude integer. The sign is `Zero` exactly when the magnitude is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigInt {
    sign: Sign,
    magnitude: Natural,
}

impl BigInt {
    pub fn zero() -> Self {
        BigInt { sign: Sign::Zero, magnitude: Natural::zero() }
    }

    pub fn from_natural(n: Natural) -> Self {
        Self::from_parts(false, n)
    }

    pub fn from_parts(negative: bool, magnitude: Natural) -> Self {
        let sign = if magnitude.is_zero() {
            Sign::Zero
        } else if negative {
            Sign::Negative
        } else {
            Sign::Positive
        };
        BigInt { sign, magnitude }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_parts(v < 0, Natural::from_u64(v.unsigned_abs()))
    }

    pub fn from_i128(v: i128) -> Self {
        Self::from_parts(v < 0, Natural::from_u128(v.unsigned_abs()))
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn magnitude(&self) -> &Natural {
        &self.magnitude
    }

    pub fn into_magnitude(self) -> Natural {
        self.magnitude
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Negative
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Positive
    }

    pub fn abs(&self) -> BigInt {
        BigInt::from_natural(self.magnitude.clone())
    }

    pub fn to_i128(&self) -> Option<i128> {
        let m = self.magnitude.to_u128()?;
        let v = i128::try_from(m).ok()?;
        Some(if self.is_negative() { -v } else { v })
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.magnitude.to_f64();
        if self.is_negative() {
            -m
        } else {
            m
        }
    }

    pub fn mul(&self, other: &BigInt, policy: MulPolicy) -> BigInt {
        BigInt { sign: self.sign.times(other.sign), magnitude: self.magnitude.mul(&other.magnitude, policy) }
    }

    pub fn mul_natural(&self, other: &Natural, policy: MulPolicy) -> BigInt {
        Self::from_parts(self.is_negative(), self.magnitude.mul(other, policy))
    }

    pub fn square(&self, policy: MulPolicy) -> BigInt {
        BigInt::from_natural(self.magnitude.square(policy))
    }

    pub fn mul_i64(&self, m: i64) -> BigInt {
        Self::from_parts(self.is_negative() != (m < 0), self.magnitude.mul_u64(m.unsigned_abs()))
    }

    pub fn shl(&self, bits: u64) -> BigInt {
        BigInt { sign: self.sign, magnitude: self.magnitude.shl(bits) }
    }

    /// Division by 2^bits, truncating toward zero.
    pub fn shr_trunc(&self, bits: u64) -> BigInt {
        Self::from_parts(self.is_negative(), self.magnitude.shr(bits))
    }

    /// Division by 2^bits, rounding toward negative infinity.
    pub fn shr_floor(&self, bits: u64) -> BigInt {
        let q = self.magnitude.shr(bits);
        if self.is_negative() && !self.magnitude.low_bits(bits).is_zero() {
            Self::from_parts(true, q.add_u64(1))
        } else {
            Self::from_parts(self.is_negative(), q)
        }
    }

    /// Shift by a signed amount: left for positive `bits`, truncating right otherwise.
    pub fn shift(&self, bits: i64) -> BigInt {
        if bits >= 0 {
            self.shl(bits as u64)
        } else {
            self.shr_trunc(bits.unsigned_abs())
        }
    }
}

impl From<i64> for BigInt {
    fn from(v: i64) -> Self {
        BigInt::from_i64(v)
    }
}

impl From<Natural> for BigInt {
    fn from(n: Natural) -> Self {
        BigInt::from_natural(n)
    }
}

impl Ord for BigInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                Sign::Zero => Ordering::Equal,
                Sign::Positive => self.magnitude.cmp(&other.magnitude),
                Sign::Negative => other.magnitude.cmp(&self.magnitude),
            },
            o => o,
        }
    }
}

impl PartialOrd for BigInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &BigInt {
    type Output = BigInt;
    fn neg(self) -> BigInt {
        BigInt { sign: self.sign.flip(), magnitude: self.magnitude.clone() }
    }
}

impl Neg for BigInt {
    type Output = BigInt;
    fn neg(mut self) -> BigInt {
        self.sign = self.sign.flip();
        self
    }
}

impl Add<&BigInt> for &BigInt {
    type Output = BigInt;
    fn add(self, other: &BigInt) -> BigInt {
        match (self.sign, other.sign) {
            (Sign::Zero, _) => other.clone(),
            (_, Sign::Zero) => self.clone(),
            (a, b) if a == b => BigInt { sign: a, magnitude: &self.magnitude + &other.magnitude },
            _ => {
                let (diff, flipped) = self.magnitude.abs_diff(&other.magnitude);
                let negative = if flipped { other.is_negative() } else { self.is_negative() };
                BigInt::from_parts(negative, diff)
            }
        }
    }
}

impl Sub<&BigInt> for &BigInt {
    type Output = BigInt;
    fn sub(self, other: &BigInt) -> BigInt {
        self + &(-other)
    }
}

impl Add for BigInt {
    type Output = BigInt;
    fn add(self, other: BigInt) -> BigInt {
        &self + &other
    }
}

impl Sub for BigInt {
    type Output = BigInt;
    fn sub(self, other: BigInt) -> BigInt {
        &self - &other
    }
}

impl fmt::Debug for BigInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.is_negative() { "-" } else { "" };
        write!(f, "BigInt({s}0x{:x})", self.magnitude)
    }
}

impl fmt::Display for BigInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            f.write_str("-")?;
        }
        write!(f, "{}", self.magnitude)
    }
}
