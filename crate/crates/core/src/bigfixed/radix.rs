//! Decimal conversion by divide and conquer over the powers 10^(19·2^i),
//! so both directions run in a constant number of multiplications per level.

use super::mul::MulPolicy;
use super::natural::Natural;
use super::newton;
use crate::error::{Error, Result};

const CHUNK_DIGITS: usize = 19;
const CHUNK: u64 = 10_000_000_000_000_000_000;
// Naturals at or below this many limbs are converted word by word.
const BASE_LIMBS: usize = 24;

// powers[i] = 10^(19 · 2^i)
fn powers_until(limit_bits: u64, policy: MulPolicy) -> Vec<Natural> {
    let mut powers = vec![Natural::from_u64(CHUNK)];
    while powers.last().unwrap().bit_len() * 2 <= limit_bits + 64 {
        let next = powers.last().unwrap().square(policy);
        powers.push(next);
    }
    powers
}

pub(crate) fn to_decimal_string(n: &Natural, policy: MulPolicy) -> String {
    if n.is_zero() {
        return "0".to_string();
    }
    let powers = powers_until(n.bit_len(), policy);
    let mut out = String::new();
    // powers.last()^2 > n, so n < powers[level + 1] for level = len - 1.
    convert(n, powers.len() - 1, None, &powers, policy, &mut out);
    out
}

fn convert(n: &Natural, level: usize, pad: Option<usize>, powers: &[Natural], policy: MulPolicy, out: &mut String) {
    if level == 0 || n.len() <= BASE_LIMBS {
        let digits = base_case(n);
        if let Some(width) = pad {
            for _ in digits.len()..width {
                out.push('0');
            }
        }
        out.push_str(&digits);
        return;
    }
    let p = &powers[level];
    if n < p {
        convert(n, level - 1, pad, powers, policy, out);
        return;
    }
    let (q, r) = newton::div_rem(n, p, policy).expect("nonzero power of ten");
    let low_width = CHUNK_DIGITS << level;
    convert(&q, level - 1, pad.map(|w| w - low_width), powers, policy, out);
    convert(&r, level - 1, Some(low_width), powers, policy, out);
}

fn base_case(n: &Natural) -> String {
    if n.is_zero() {
        return String::new();
    }
    let mut chunks = Vec::new();
    let mut cur = n.clone();
    while !cur.is_zero() {
        let (q, r) = cur.div_rem_u64(CHUNK);
        chunks.push(r);
        cur = q;
    }
    let mut s = chunks.pop().unwrap().to_string();
    for c in chunks.iter().rev() {
        s.push_str(&format!("{c:019}"));
    }
    s
}

/// Parses a string of ASCII decimal digits.
pub(crate) fn from_decimal_str(s: &str, policy: MulPolicy) -> Result<Natural> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a decimal digit string: `{s}`")));
    }
    let s = s.trim_start_matches('0');
    if s.is_empty() {
        return Ok(Natural::zero());
    }
    // 10^19 < 2^64, so len(s) * 4 bits bounds the value.
    let powers = powers_until(s.len() as u64 * 4, policy);
    Ok(parse_range(s.as_bytes(), &powers, policy))
}

impl std::str::FromStr for Natural {
    type Err = Error;

    fn from_str(s: &str) -> Result<Natural> {
        from_decimal_str(s, MulPolicy::Auto)
    }
}

fn parse_range(s: &[u8], powers: &[Natural], policy: MulPolicy) -> Natural {
    if s.len() <= CHUNK_DIGITS * BASE_LIMBS {
        let mut acc = Natural::zero();
        for chunk in s.chunks(CHUNK_DIGITS) {
            let v: u64 = std::str::from_utf8(chunk).unwrap().parse().unwrap();
            let scale = 10u64.pow(chunk.len() as u32);
            acc = acc.mul_u64(scale).add_u64(v);
        }
        return acc;
    }
    let mut level = 0;
    while (CHUNK_DIGITS << (level + 1)) < s.len() {
        level += 1;
    }
    let low_len = CHUNK_DIGITS << level;
    let (hi, lo) = s.split_at(s.len() - low_len);
    let high = parse_range(hi, powers, policy);
    let low = parse_range(lo, powers, policy);
    &high.mul(&powers[level], policy) + &low
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(to_decimal_string(&Natural::zero(), MulPolicy::Auto), "0");
        assert_eq!(to_decimal_string(&Natural::from_u64(u64::MAX), MulPolicy::Auto), "18446744073709551615");
        assert_eq!(from_decimal_str("000123", MulPolicy::Auto).unwrap().to_u64(), Some(123));
        assert!(from_decimal_str("12a", MulPolicy::Auto).is_err());
        assert!(from_decimal_str("", MulPolicy::Auto).is_err());
    }

    #[test]
    fn powers_of_ten_keep_inner_zeros() {
        let policy = MulPolicy::Auto;
        for e in [19u64, 38, 100, 456, 1000, 5000] {
            let n = Natural::from_u64(10).pow(e, policy);
            let s = to_decimal_string(&n, policy);
            assert_eq!(s.len() as u64, e + 1);
            assert!(s.starts_with('1') && s[1..].bytes().all(|b| b == b'0'));
            assert_eq!(from_decimal_str(&s, policy).unwrap(), n);
        }
    }

    #[test]
    fn long_round_trip() {
        let digits: String = (0..12345).map(|i| char::from(b'0' + ((i * 7 + i / 13) % 10) as u8)).collect();
        let digits = format!("9{digits}");
        for p in [MulPolicy::Schoolbook, MulPolicy::Auto] {
            let n = from_decimal_str(&digits, p).unwrap();
            assert_eq!(to_decimal_string(&n, p), digits);
        }
    }
}
