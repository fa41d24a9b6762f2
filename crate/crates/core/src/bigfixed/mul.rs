use std::fmt;
use std::str::FromStr;

use super::natural::{add_at, sub_assign_limbs, trim, Limb, Natural};
use super::ntt;
use crate::error::{Error, Result};

/// Smaller operand length (limbs) at which Karatsuba takes over from schoolbook.
pub const KARATSUBA_THRESHOLD: usize = 32;
/// Smaller operand length below which `Auto` never uses the NTT. Above it,
/// `Auto` compares calibrated cost estimates, since the transform pads the
/// product length to a power of two.
pub const NTT_THRESHOLD: usize = 512;
/// Below this the `Ntt` policy still multiplies by schoolbook.
pub const NTT_FORCED_MIN: usize = 16;

/// Which multiplication algorithms may be used.
///
/// `Schoolbook` disables every fast algorithm, including inside the Newton
/// loops of division and square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MulPolicy {
    Schoolbook,
    Karatsuba,
    Ntt,
    #[default]
    Auto,
}

impl MulPolicy {
    pub const ALL: [MulPolicy; 4] = [MulPolicy::Schoolbook, MulPolicy::Karatsuba, MulPolicy::Ntt, MulPolicy::Auto];

    pub fn label(self) -> &'static str {
        match self {
            MulPolicy::Schoolbook => "schoolbook",
            MulPolicy::Karatsuba => "karatsuba",
            MulPolicy::Ntt => "ntt",
            MulPolicy::Auto => "auto",
        }
    }
}

impl fmt::Display for MulPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for MulPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schoolbook" => Ok(MulPolicy::Schoolbook),
            "karatsuba" => Ok(MulPolicy::Karatsuba),
            "ntt" => Ok(MulPolicy::Ntt),
            "auto" => Ok(MulPolicy::Auto),
            other => Err(Error::Parse(format!("unknown multiplication policy `{other}`"))),
        }
    }
}

/// Exact product of two naturals under an explicit policy.
///
/// Unlike [`Natural::mul`], which quietly falls back to Karatsuba, this
/// reports an oversized NTT request as [`Error::NttCapacity`].
pub fn nat_mul(a: &Natural, b: &Natural, policy: MulPolicy) -> Result<Natural> {
    if policy == MulPolicy::Ntt && a.len().min(b.len()) >= NTT_FORCED_MIN {
        ntt::check_capacity(a.len() + b.len())?;
    }
    Ok(a.mul(b, policy))
}

pub(crate) fn mul_limbs(a: &[Limb], b: &[Limb], policy: MulPolicy) -> Vec<Limb> {
    let mut out = dispatch(a, b, policy, false);
    trim(&mut out);
    out
}

pub(crate) fn sqr_limbs(a: &[Limb], policy: MulPolicy) -> Vec<Limb> {
    let mut out = dispatch(a, a, policy, true);
    trim(&mut out);
    out
}

fn dispatch(a: &[Limb], b: &[Limb], policy: MulPolicy, square: bool) -> Vec<Limb> {
    let a = trimmed(a);
    let b = trimmed(b);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let n = b.len();
    let ntt_ok = ntt::check_capacity(a.len() + b.len()).is_ok();
    match policy {
        MulPolicy::Schoolbook => schoolbook(a, b),
        MulPolicy::Karatsuba if n < KARATSUBA_THRESHOLD => schoolbook(a, b),
        MulPolicy::Karatsuba => karatsuba(a, b, policy),
        MulPolicy::Ntt if n < NTT_FORCED_MIN => schoolbook(a, b),
        MulPolicy::Ntt if ntt_ok => ntt_mul(a, b, square),
        MulPolicy::Ntt => karatsuba(a, b, MulPolicy::Karatsuba),
        MulPolicy::Auto if n < KARATSUBA_THRESHOLD => schoolbook(a, b),
        MulPolicy::Auto if ntt_ok && auto_prefers_ntt(a.len(), n) => ntt_mul(a, b, square),
        MulPolicy::Auto => karatsuba(a, b, policy),
    }
}

// Costs measured on this implementation: one length-L transform product
// takes about 2·L·log2(L) units, where a balanced n-limb Karatsuba product
// takes n^1.585 units; unbalanced Karatsuba runs one product per chunk.
fn auto_prefers_ntt(long: usize, short: usize) -> bool {
    if short < NTT_THRESHOLD {
        return false;
    }
    let l = (long + short).next_power_of_two() as f64;
    let ntt = 2.0 * l * l.log2();
    let karatsuba = long.div_ceil(short) as f64 * (short as f64).powf(1.585);
    ntt < karatsuba
}

fn ntt_mul(a: &[Limb], b: &[Limb], square: bool) -> Vec<Limb> {
    if square {
        ntt::square(a)
    } else {
        ntt::multiply(a, b)
    }
}

fn trimmed(a: &[Limb]) -> &[Limb] {
    let mut n = a.len();
    while n > 0 && a[n - 1] == 0 {
        n -= 1;
    }
    &a[..n]
}

pub(crate) fn schoolbook(a: &[Limb], b: &[Limb]) -> Vec<Limb> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &bi) in b.iter().enumerate() {
        if bi == 0 {
            continue;
        }
        let mut carry = 0u64;
        let row = &mut out[i..i + a.len()];
        for (o, &aj) in row.iter_mut().zip(a) {
            let t = aj as u128 * bi as u128 + *o as u128 + carry as u128;
            *o = t as u64;
            carry = (t >> 64) as u64;
        }
        out[i + a.len()] = carry;
    }
    out
}

// Requires a.len() >= b.len() >= KARATSUBA_THRESHOLD.
fn karatsuba(a: &[Limb], b: &[Limb], policy: MulPolicy) -> Vec<Limb> {
    let n = b.len();
    if a.len() >= 2 * n {
        let mut out = vec![0u64; a.len() + n];
        for (i, chunk) in a.chunks(n).enumerate() {
            let p = dispatch(chunk, b, policy, false);
            add_at(&mut out, &p, i * n);
        }
        return out;
    }
    let m = a.len().div_ceil(2);
    let (a0, a1) = a.split_at(m);
    let mut out = vec![0u64; a.len() + n];
    if n <= m {
        let lo = dispatch(a0, b, policy, false);
        let hi = dispatch(a1, b, policy, false);
        add_at(&mut out, &lo, 0);
        add_at(&mut out, &hi, m);
        out.truncate(a.len() + n);
        return out;
    }
    let (b0, b1) = b.split_at(m);
    let z0 = dispatch(a0, b0, policy, false);
    let z2 = dispatch(a1, b1, policy, false);
    let mut sa = a0.to_vec();
    add_at(&mut sa, a1, 0);
    let mut sb = b0.to_vec();
    add_at(&mut sb, b1, 0);
    let mut z1 = dispatch(&sa, &sb, policy, false);
    let borrow0 = sub_assign_limbs(&mut z1, trimmed(&z0));
    let borrow2 = sub_assign_limbs(&mut z1, trimmed(&z2));
    debug_assert!(!borrow0 && !borrow2);
    add_at(&mut out, &z0, 0);
    add_at(&mut out, trimmed(&z1), m);
    add_at(&mut out, &z2, 2 * m);
    out.truncate(a.len() + n);
    out
}
