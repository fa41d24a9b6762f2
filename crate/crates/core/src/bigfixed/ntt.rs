//! Three-prime number-theoretic transform for full 64-bit limbs.
//!
//! Each limb is one transform coefficient. A convolution coefficient is
//! below `len * 2^128`, and the three primes multiply to about 2^184, so
//! CRT recovers every coefficient exactly while `len <= 2^55`.

use super::natural::Limb;
use crate::error::{Error, Result};

const P1: u64 = 4_179_340_454_199_820_289; // 29 * 2^57 + 1
const P2: u64 = 2_485_986_994_308_513_793; // 69 * 2^55 + 1
const P3: u64 = 1_945_555_039_024_054_273; // 27 * 2^56 + 1

/// Longest supported transform (limited by the 2-adicity of P2).
pub const MAX_TRANSFORM_LEN: u128 = 1 << 55;

/// Checks that a product with `result_limbs` limbs fits the transform.
pub fn check_capacity(result_limbs: usize) -> Result<()> {
    let len = (result_limbs.max(1) as u128).next_power_of_two();
    if len > MAX_TRANSFORM_LEN {
        Err(Error::NttCapacity { len, max: MAX_TRANSFORM_LEN })
    } else {
        Ok(())
    }
}

const fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Montgomery arithmetic modulo a prime `P` below 2^62 with generator `G`.
struct Field<const P: u64, const G: u64>;

impl<const P: u64, const G: u64> Field<P, G> {
    const R: u64 = ((1u128 << 64) % P as u128) as u64;
    const R2: u64 = (Self::R as u128 * Self::R as u128 % P as u128) as u64;
    // -P^-1 mod 2^64
    const NEG_PINV: u64 = {
        let mut inv: u64 = 1;
        let mut i = 0;
        while i < 6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(P.wrapping_mul(inv)));
            i += 1;
        }
        inv.wrapping_neg()
    };

    // x * 2^-64 mod P, valid for x < P * 2^64.
    #[inline(always)]
    fn reduce(x: u128) -> u64 {
        let m = (x as u64).wrapping_mul(Self::NEG_PINV);
        let t = ((x + m as u128 * P as u128) >> 64) as u64;
        if t >= P {
            t - P
        } else {
            t
        }
    }

    #[inline(always)]
    fn mul(a: u64, b: u64) -> u64 {
        Self::reduce(a as u128 * b as u128)
    }

    #[inline(always)]
    fn add(a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= P {
            s - P
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + P - b
        }
    }

    fn to_mont(a: u64) -> u64 {
        Self::mul(a % P, Self::R2)
    }

    fn from_mont(a: u64) -> u64 {
        Self::reduce(a as u128)
    }

    fn pow(mut base: u64, mut exp: u64) -> u64 {
        let mut acc = Self::R;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Self::mul(acc, base);
            }
            base = Self::mul(base, base);
            exp >>= 1;
        }
        acc
    }

    // Powers w^0..w^(n/2) of a primitive n-th root, Montgomery form.
    fn roots(n: usize, inverse: bool) -> Vec<u64> {
        let mut w = Self::pow(Self::to_mont(G), (P - 1) / n as u64);
        if inverse {
            w = Self::pow(w, n as u64 - 1);
        }
        let half = (n / 2).max(1);
        let mut out = Vec::with_capacity(half);
        let mut cur = Self::R;
        for _ in 0..half {
            out.push(cur);
            cur = Self::mul(cur, w);
        }
        out
    }

    // Decimation in frequency: natural order in, bit-reversed order out.
    fn forward(a: &mut [u64], roots: &[u64]) {
        let n = a.len();
        let mut half = n / 2;
        while half >= 1 {
            let stride = n / (2 * half);
            for block in a.chunks_exact_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                for j in 0..half {
                    let u = lo[j];
                    let v = hi[j];
                    lo[j] = Self::add(u, v);
                    hi[j] = Self::mul(Self::sub(u, v), roots[j * stride]);
                }
            }
            half /= 2;
        }
    }

    // Decimation in time: bit-reversed order in, natural order out (unscaled).
    fn inverse(a: &mut [u64], roots: &[u64]) {
        let n = a.len();
        let mut half = 1;
        while half < n {
            let stride = n / (2 * half);
            for block in a.chunks_exact_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                for j in 0..half {
                    let u = lo[j];
                    let v = Self::mul(hi[j], roots[j * stride]);
                    lo[j] = Self::add(u, v);
                    hi[j] = Self::sub(u, v);
                }
            }
            half *= 2;
        }
    }

    fn load(src: &[Limb], n: usize) -> Vec<u64> {
        let mut v: Vec<u64> = src.iter().map(|&x| Self::to_mont(x)).collect();
        v.resize(n, 0);
        v
    }

    /// Cyclic convolution of `a` and `b` (length n), residues in normal form.
    fn convolve(a: &[Limb], b: Option<&[Limb]>, n: usize) -> Vec<u64> {
        let fw = Self::roots(n, false);
        let mut fa = Self::load(a, n);
        Self::forward(&mut fa, &fw);
        match b {
            Some(b) => {
                let mut fb = Self::load(b, n);
                Self::forward(&mut fb, &fw);
                for (x, y) in fa.iter_mut().zip(&fb) {
                    *x = Self::mul(*x, *y);
                }
            }
            None => {
                for x in fa.iter_mut() {
                    *x = Self::mul(*x, *x);
                }
            }
        }
        drop(fw);
        let inv = Self::roots(n, true);
        Self::inverse(&mut fa, &inv);
        let n_inv = Self::pow(Self::to_mont(n as u64), P - 2);
        for x in fa.iter_mut() {
            *x = Self::from_mont(Self::mul(*x, n_inv));
        }
        fa
    }
}

type F1 = Field<P1, 3>;
type F2 = Field<P2, 5>;
type F3 = Field<P3, 5>;

const P1P2: u128 = P1 as u128 * P2 as u128;

pub fn multiply(a: &[Limb], b: &[Limb]) -> Vec<Limb> {
    product(a, Some(b))
}

pub fn square(a: &[Limb]) -> Vec<Limb> {
    product(a, None)
}

fn product(a: &[Limb], b: Option<&[Limb]>) -> Vec<Limb> {
    let out_len = a.len() + b.map_or(a.len(), <[Limb]>::len);
    let n = out_len.next_power_of_two();
    debug_assert!(n as u128 <= MAX_TRANSFORM_LEN);
    let r1 = F1::convolve(a, b, n);
    let r2 = F2::convolve(a, b, n);
    let r3 = F3::convolve(a, b, n);

    // Garner constants, Montgomery form in the target field.
    let inv_p1_mod_p2 = F2::to_mont(pow_mod(P1 % P2, P2 - 2, P2));
    let p1_mod_p3 = F3::to_mont(P1 % P3);
    let inv_p1p2_mod_p3 = F3::to_mont(pow_mod((P1P2 % P3 as u128) as u64, P3 - 2, P3));
    let (p12_lo, p12_hi) = (P1P2 as u64, (P1P2 >> 64) as u64);

    let mut out = vec![0u64; out_len];
    let mut carry = [0u64; 3];
    for i in 0..out_len {
        let x1 = r1[i];
        // mul(a, c_mont) = a * c mod P for a normal-form operand.
        let x2 = F2::mul(F2::sub(r2[i], x1 % P2), inv_p1_mod_p2);
        let t = F3::sub(F3::sub(r3[i], x1 % P3), F3::mul(x2, p1_mod_p3));
        let x3 = F3::mul(t, inv_p1p2_mod_p3);

        // value = x1 + x2 * P1 + x3 * P1 * P2, accumulated into carry.
        let low = x1 as u128 + x2 as u128 * P1 as u128;
        let m_lo = x3 as u128 * p12_lo as u128;
        let m_hi = x3 as u128 * p12_hi as u128;
        let mut acc = [0u64; 4];
        add3(&mut acc, [low as u64, (low >> 64) as u64, 0]);
        add3(&mut acc, [m_lo as u64, (m_lo >> 64) as u64, 0]);
        add3(&mut acc, [0, m_hi as u64, (m_hi >> 64) as u64]);
        add3(&mut acc, carry);
        out[i] = acc[0];
        carry = [acc[1], acc[2], acc[3]];
    }
    debug_assert!(carry == [0, 0, 0]);
    out
}

fn add3(acc: &mut [u64; 4], v: [u64; 3]) {
    let mut c = false;
    for i in 0..3 {
        let (s1, o1) = acc[i].overflowing_add(v[i]);
        let (s2, o2) = s1.overflowing_add(c as u64);
        acc[i] = s2;
        c = o1 || o2;
    }
    acc[3] += c as u64;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfixed::mul::schoolbook;

    #[test]
    fn montgomery_constants() {
        assert_eq!(P1.wrapping_mul(F1::NEG_PINV.wrapping_neg()), 1);
        assert_eq!(F2::from_mont(F2::to_mont(12345)), 12345);
        assert_eq!(F3::from_mont(F3::mul(F3::to_mont(7), F3::to_mont(6))), 42);
        // P - 1 has order 2 so the generator's half power is -1.
        assert_eq!(F1::from_mont(F1::pow(F1::to_mont(3), (P1 - 1) / 2)), P1 - 1);
    }

    #[test]
    fn transform_round_trip() {
        let n = 64;
        let data: Vec<u64> = (0..n as u64).map(|i| i * 7919 % 1000).collect();
        let mut a: Vec<u64> = data.iter().map(|&x| F2::to_mont(x)).collect();
        F2::forward(&mut a, &F2::roots(n, false));
        F2::inverse(&mut a, &F2::roots(n, true));
        let n_inv = F2::pow(F2::to_mont(n as u64), P2 - 2);
        let back: Vec<u64> = a.iter().map(|&x| F2::from_mont(F2::mul(x, n_inv))).collect();
        assert_eq!(back, data);
    }

    #[test]
    fn matches_schoolbook_on_extreme_limbs() {
        for len in [1usize, 2, 3, 10, 33, 100] {
            let a = vec![u64::MAX; len];
            let b = vec![u64::MAX - 1; len + 3];
            assert_eq!(multiply(&a, &b), schoolbook(&a, &b));
            assert_eq!(square(&a), schoolbook(&a, &a));
        }
    }

    #[test]
    fn capacity_is_reported() {
        assert!(check_capacity(1 << 20).is_ok());
        let err = check_capacity((1usize << 55) + 1).unwrap_err();
        assert!(matches!(err, Error::NttCapacity { .. }));
    }
}
