use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Sub, SubAssign};

use super::mul::{self, MulPolicy};

pub type Limb = u64;
pub const LIMB_BITS: u32 = Limb::BITS;

/// Arbitrary-precision unsigned integer.
///
/// Limbs are little-endian and never carry a trailing zero limb, so zero is
/// the empty vector and equality is limb-wise equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Natural {
    limbs: Vec<Limb>,
}

impl Natural {
    pub fn zero() -> Self {
        Natural { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Natural { limbs: vec![1] }
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_limbs(vec![v])
    }

    pub fn from_u128(v: u128) -> Self {
        Self::from_limbs(vec![v as u64, (v >> 64) as u64])
    }

    /// Builds a natural from little-endian limbs, dropping trailing zeros.
    pub fn from_limbs(mut limbs: Vec<Limb>) -> Self {
        trim(&mut limbs);
        Natural { limbs }
    }

    pub fn limbs(&self) -> &[Limb] {
        &self.limbs
    }

    pub fn into_limbs(self) -> Vec<Limb> {
        self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    /// Number of limbs; zero has none.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.limbs.len()
    }

    pub fn bit_len(&self) -> u64 {
        match self.limbs.last() {
            None => 0,
            Some(&top) => {
                (self.limbs.len() as u64 - 1) * LIMB_BITS as u64 + (LIMB_BITS - top.leading_zeros()) as u64
            }
        }
    }

    pub fn bit(&self, i: u64) -> bool {
        let limb = (i / LIMB_BITS as u64) as usize;
        limb < self.limbs.len() && (self.limbs[limb] >> (i % LIMB_BITS as u64)) & 1 == 1
    }

    pub fn trailing_zeros(&self) -> Option<u64> {
        let i = self.limbs.iter().position(|&l| l != 0)?;
        Some(i as u64 * LIMB_BITS as u64 + self.limbs[i].trailing_zeros() as u64)
    }

    pub fn is_power_of_two(&self) -> bool {
        !self.is_zero() && self.trailing_zeros() == Some(self.bit_len() - 1)
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0] as u128),
            2 => Some(self.limbs[0] as u128 | (self.limbs[1] as u128) << 64),
            _ => None,
        }
    }

    /// 2^k.
    pub fn pow2(k: u64) -> Self {
        let mut limbs = vec![0; (k / LIMB_BITS as u64) as usize + 1];
        *limbs.last_mut().unwrap() = 1 << (k % LIMB_BITS as u64);
        Natural { limbs }
    }

    pub fn shl(&self, bits: u64) -> Self {
        if self.is_zero() {
            return Natural::zero();
        }
        let words = (bits / LIMB_BITS as u64) as usize;
        let sh = (bits % LIMB_BITS as u64) as u32;
        let mut out = Vec::with_capacity(self.limbs.len() + words + 1);
        out.resize(words, 0);
        if sh == 0 {
            out.extend_from_slice(&self.limbs);
        } else {
            let mut carry = 0;
            for &l in &self.limbs {
                out.push((l << sh) | carry);
                carry = l >> (LIMB_BITS - sh);
            }
            out.push(carry);
        }
        Self::from_limbs(out)
    }

    /// Floor division by 2^bits.
    pub fn shr(&self, bits: u64) -> Self {
        let words = (bits / LIMB_BITS as u64) as usize;
        if words >= self.limbs.len() {
            return Natural::zero();
        }
        let sh = (bits % LIMB_BITS as u64) as u32;
        let src = &self.limbs[words..];
        let out = if sh == 0 {
            src.to_vec()
        } else {
            let mut out = Vec::with_capacity(src.len());
            for i in 0..src.len() {
                let hi = src.get(i + 1).map_or(0, |&h| h << (LIMB_BITS - sh));
                out.push((src[i] >> sh) | hi);
            }
            out
        };
        Self::from_limbs(out)
    }

    /// self mod 2^bits.
    pub fn low_bits(&self, bits: u64) -> Self {
        let words = (bits / LIMB_BITS as u64) as usize;
        if words >= self.limbs.len() {
            return self.clone();
        }
        let mut out = self.limbs[..=words].to_vec();
        let sh = (bits % LIMB_BITS as u64) as u32;
        out[words] &= (1u64 << sh).wrapping_sub(1);
        Self::from_limbs(out)
    }

    /// Keeps the `bits` most significant bits; returns them with the shift applied.
    pub fn top_bits(&self, bits: u64) -> (Self, u64) {
        let len = self.bit_len();
        if len <= bits {
            (self.clone(), 0)
        } else {
            let shift = len - bits;
            (self.shr(shift), shift)
        }
    }

    pub fn checked_sub(&self, other: &Natural) -> Option<Natural> {
        if cmp_limbs(&self.limbs, &other.limbs) == Ordering::Less {
            return None;
        }
        let mut out = self.limbs.clone();
        let borrow = sub_assign_limbs(&mut out, &other.limbs);
        debug_assert!(!borrow);
        Some(Self::from_limbs(out))
    }

    /// |self − other| and whether self < other.
    pub fn abs_diff(&self, other: &Natural) -> (Natural, bool) {
        match self.cmp(other) {
            Ordering::Less => (other - self, true),
            _ => (self - other, false),
        }
    }

    pub fn add_u64(&self, v: u64) -> Self {
        self + &Natural::from_u64(v)
    }

    pub fn mul_u64(&self, m: u64) -> Self {
        if m == 0 || self.is_zero() {
            return Natural::zero();
        }
        let mut out = Vec::with_capacity(self.limbs.len() + 1);
        let mut carry = 0u64;
        for &l in &self.limbs {
            let t = l as u128 * m as u128 + carry as u128;
            out.push(t as u64);
            carry = (t >> 64) as u64;
        }
        out.push(carry);
        Self::from_limbs(out)
    }

    /// Division by a single word. Panics on a zero divisor.
    pub fn div_rem_u64(&self, d: u64) -> (Natural, u64) {
        assert!(d != 0, "division by zero");
        let mut q = vec![0u64; self.limbs.len()];
        let mut rem = 0u128;
        for i in (0..self.limbs.len()).rev() {
            let cur = (rem << 64) | self.limbs[i] as u128;
            q[i] = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
        (Self::from_limbs(q), rem as u64)
    }

    pub fn mul(&self, other: &Natural, policy: MulPolicy) -> Natural {
        Self::from_limbs(mul::mul_limbs(&self.limbs, &other.limbs, policy))
    }

    pub fn square(&self, policy: MulPolicy) -> Natural {
        Self::from_limbs(mul::sqr_limbs(&self.limbs, policy))
    }

    pub fn pow(&self, mut exp: u64, policy: MulPolicy) -> Natural {
        let mut base = self.clone();
        let mut acc = Natural::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, policy);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square(policy);
            }
        }
        acc
    }

    /// Approximate value as `mantissa * 2^exp` with a 64-bit mantissa.
    pub fn to_f64_parts(&self) -> (f64, i64) {
        let (top, shift) = self.top_bits(64);
        (top.to_u64().unwrap() as f64, shift as i64)
    }

    pub fn to_f64(&self) -> f64 {
        let (m, e) = self.to_f64_parts();
        m * 2f64.powi(e.min(i32::MAX as i64) as i32)
    }

    /// Hex dump of the limbs, most significant first.
    pub fn to_hex(&self) -> String {
        format!("{:x}", self)
    }
}

pub(crate) fn trim(v: &mut Vec<Limb>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn cmp_limbs(a: &[Limb], b: &[Limb]) -> Ordering {
    // Both trimmed.
    a.len().cmp(&b.len()).then_with(|| {
        for i in (0..a.len()).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// acc += b << (64 * offset); grows acc as needed.
pub(crate) fn add_at(acc: &mut Vec<Limb>, b: &[Limb], offset: usize) {
    if acc.len() < offset + b.len() {
        acc.resize(offset + b.len(), 0);
    }
    let mut carry = false;
    for (i, &bl) in b.iter().enumerate() {
        let (s1, c1) = acc[offset + i].overflowing_add(bl);
        let (s2, c2) = s1.overflowing_add(carry as u64);
        acc[offset + i] = s2;
        carry = c1 || c2;
    }
    let mut i = offset + b.len();
    while carry {
        if i == acc.len() {
            acc.push(1);
            break;
        }
        let (s, c) = acc[i].overflowing_add(1);
        acc[i] = s;
        carry = c;
        i += 1;
    }
}

/// a -= b in place; returns the final borrow. Requires a.len() >= b.len().
pub(crate) fn sub_assign_limbs(a: &mut [Limb], b: &[Limb]) -> bool {
    let mut borrow = false;
    for i in 0..a.len() {
        let bl = if i < b.len() { b[i] } else if !borrow { break } else { 0 };
        let (d1, o1) = a[i].overflowing_sub(bl);
        let (d2, o2) = d1.overflowing_sub(borrow as u64);
        a[i] = d2;
        borrow = o1 || o2;
    }
    borrow
}

impl Ord for Natural {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_limbs(&self.limbs, &other.limbs)
    }
}

impl PartialOrd for Natural {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Natural> for &Natural {
    type Output = Natural;
    fn add(self, other: &Natural) -> Natural {
        let (long, short) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = long.limbs.clone();
        add_at(&mut out, &short.limbs, 0);
        Natural::from_limbs(out)
    }
}

impl Add for Natural {
    type Output = Natural;
    fn add(self, other: Natural) -> Natural {
        &self + &other
    }
}

impl AddAssign<&Natural> for Natural {
    fn add_assign(&mut self, other: &Natural) {
        add_at(&mut self.limbs, &other.limbs, 0);
    }
}

impl Sub<&Natural> for &Natural {
    type Output = Natural;
    /// Panics if `other > self`.
    fn sub(self, other: &Natural) -> Natural {
        self.checked_sub(other).expect("natural subtraction underflow")
    }
}

impl Sub for Natural {
    type Output = Natural;
    fn sub(self, other: Natural) -> Natural {
        &self - &other
    }
}

impl SubAssign<&Natural> for Natural {
    fn sub_assign(&mut self, other: &Natural) {
        assert!(cmp_limbs(&self.limbs, &other.limbs) != Ordering::Less, "natural subtraction underflow");
        sub_assign_limbs(&mut self.limbs, &other.limbs);
        trim(&mut self.limbs);
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural::from_u64(v)
    }
}

impl fmt::LowerHex for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.limbs.split_last() {
            None => write!(f, "0"),
            Some((top, rest)) => {
                write!(f, "{:x}", top)?;
                for l in rest.iter().rev() {
                    write!(f, "{:016x}", l)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Natural(0x{:x})", self)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::radix::to_decimal_string(self, MulPolicy::Auto))
    }
}
