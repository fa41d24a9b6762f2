//! Results checked against exact arithmetic from num-bigint / num-rational.

use num_bigint::{BigInt as Big, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use picalc_core::{
    const_ln2, exp_newton, ln_agm, pi_brent_salamin, pi_legendre_family, pi_machin, split_sum, FixedReal,
    MachinFormula, ModulusPair, MulPolicy, Natural, PrecisionContext,
};

fn to_big(n: &Natural) -> BigUint {
    let bytes: Vec<u8> = n.limbs().iter().flat_map(|l| l.to_le_bytes()).collect();
    BigUint::from_bytes_le(&bytes)
}

fn from_big(n: &BigUint) -> Natural {
    Natural::from_limbs(n.to_u64_digits())
}

fn frac(num: i64, den: &Big) -> BigRational {
    BigRational::new(Big::from(num), den.clone())
}

// atan(1/n) lies between consecutive partial sums of its alternating series.
fn atan_recip_bracket(n: u64, terms: u64) -> (BigRational, BigRational) {
    let n2 = Big::from(n * n);
    let mut power = Big::from(n);
    let mut sum = BigRational::zero();
    let mut prev = sum.clone();
    for j in 0..=terms {
        prev = sum.clone();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        sum += frac(sign, &(&power * Big::from(2 * j + 1)));
        power *= &n2;
    }
    if prev < sum {
        (prev, sum)
    } else {
        (sum, prev)
    }
}

fn floor_digits(x: &BigRational, digits: usize) -> String {
    let scaled = x * BigRational::from_integer(Big::from(10u32).pow(digits as u32));
    let s = format!("{:0>width$}", scaled.floor().to_integer().to_string(), width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{int}.{frac}")
}

/// π to `digits` digits from Machin's formula by bracketing partial sums.
fn pi_reference(digits: usize) -> String {
    let terms = (digits as f64 / 1.39).ceil() as u64 + 4;
    let (a_lo, a_hi) = atan_recip_bracket(5, terms);
    let (b_lo, b_hi) = atan_recip_bracket(239, terms);
    let k16 = BigRational::from_integer(Big::from(16));
    let k4 = BigRational::from_integer(Big::from(4));
    let lo = &k16 * &a_lo - &k4 * &b_hi;
    let hi = &k16 * &a_hi - &k4 * &b_lo;
    let (s_lo, s_hi) = (floor_digits(&lo, digits), floor_digits(&hi, digits));
    assert_eq!(s_lo, s_hi, "bracket too wide to fix {digits} digits");
    s_lo
}

/// ln 2 = 2·atanh(1/3) = Σ 2 / ((2j+1)·3^(2j+1)); the tail after J terms is
/// below twice the next term.
fn ln2_reference(digits: usize) -> String {
    let terms = (digits as f64 / 0.95).ceil() as u64 + 4;
    let mut sum = BigRational::zero();
    let mut power = Big::from(3);
    for j in 0..terms {
        sum += frac(2, &(&power * Big::from(2 * j + 1)));
        power *= Big::from(9);
    }
    let tail = frac(4, &(&power * Big::from(2 * terms + 1)));
    let lo = floor_digits(&sum, digits);
    assert_eq!(lo, floor_digits(&(sum + tail), digits));
    lo
}

/// e = Σ 1/j!; the tail after J terms is below 2/J!.
fn e_reference(digits: usize) -> String {
    let mut sum = BigRational::zero();
    let mut fact = Big::one();
    let mut j = 0u64;
    loop {
        if j > 0 {
            fact *= Big::from(j);
        }
        sum += frac(1, &fact);
        j += 1;
        if fact.to_string().len() > digits + 5 {
            break;
        }
    }
    let tail = frac(2, &fact);
    let lo = floor_digits(&sum, digits);
    assert_eq!(lo, floor_digits(&(sum + tail), digits));
    lo
}

#[test]
fn pi_at_fifty_digits_matches_machin_partial_sums() {
    let reference = pi_reference(50);
    assert_eq!(reference, "3.14159265358979323846264338327950288419716939937510");
    let ctx = PrecisionContext::new(50).unwrap();
    let k = ModulusPair::from_decimal("0.6", &ctx).unwrap();
    let machin = MachinFormula::builtin("gauss3").unwrap();
    for (label, v) in [
        ("brent-salamin", pi_brent_salamin(&ctx).unwrap()),
        ("legendre", pi_legendre_family(k.k(), &ctx).unwrap()),
        ("gauss3", pi_machin(&machin, &ctx).unwrap()),
    ] {
        assert_eq!(ctx.to_decimal(&v, 50).unwrap(), reference, "{label}");
    }
}

#[test]
fn pi_at_thousand_digits_under_every_policy() {
    let reference = pi_reference(1000);
    for policy in MulPolicy::ALL {
        let ctx = PrecisionContext::new(1000).unwrap().with_policy(policy);
        assert_eq!(ctx.to_decimal(&pi_brent_salamin(&ctx).unwrap(), 1000).unwrap(), reference, "{policy}");
    }
}

#[test]
fn split_sum_equals_naive_rationals() {
    for n in 2..=50u64 {
        for lo in 0..=12u64 {
            for hi in lo..=12u64 {
                let mut naive = BigRational::zero();
                for j in lo..hi {
                    let den = Big::from(2 * j + 1) * Big::from(n).pow((2 * j + 1) as u32);
                    naive += frac(if j % 2 == 0 { 1 } else { -1 }, &den);
                }
                let got = split_sum(n, lo, hi, MulPolicy::Auto);
                let mag = Big::from(to_big(got.num.magnitude()));
                let num = if got.num.is_negative() { -mag } else { mag };
                let ours = BigRational::new(num, Big::from(to_big(&got.den)));
                assert_eq!(ours, naive, "n={n} [{lo},{hi})");
            }
        }
    }
}

#[test]
fn ln2_matches_atanh_series() {
    for digits in [50u64, 400] {
        let ctx = PrecisionContext::new(digits).unwrap();
        let reference = ln2_reference(digits as usize);
        assert_eq!(ctx.to_decimal(&ln_agm(&ctx.from_int(2), &ctx).unwrap(), digits).unwrap(), reference);
        assert_eq!(ctx.to_decimal(&const_ln2(&ctx).unwrap(), digits).unwrap(), reference);
    }
}

#[test]
fn e_matches_factorial_series() {
    for digits in [30u64, 300] {
        let ctx = PrecisionContext::new(digits).unwrap();
        let e = exp_newton(&ctx.one(), &ctx).unwrap();
        assert_eq!(ctx.to_decimal(&e, digits).unwrap(), e_reference(digits as usize));
    }
    assert!(e_reference(30).starts_with("2.718281828459045235360287471352"));
}

#[test]
fn small_operands_match_machine_arithmetic() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..10_000 {
        let a: u64 = rng.gen();
        let width = rng.gen_range(0..63);
        let b: u64 = rng.gen_range(1..=u64::MAX >> width);
        let (na, nb) = (Natural::from_u64(a), Natural::from_u64(b));
        let policy = MulPolicy::ALL[rng.gen_range(0..4)];
        assert_eq!((&na + &nb).to_u128(), Some(a as u128 + b as u128));
        assert_eq!(na.mul(&nb, policy).to_u128(), Some(a as u128 * b as u128));
        assert_eq!(na.abs_diff(&nb).0.to_u64(), Some(a.abs_diff(b)));
        let (q, r) = na.div_rem(&nb, policy).unwrap();
        assert_eq!((q.to_u64(), r.to_u64()), (Some(a / b), Some(a % b)));
        let s = rng.gen_range(0..64);
        assert_eq!(na.shr(s).to_u64(), Some(a >> s));
        assert_eq!(na.shl(s).to_u128(), Some((a as u128) << s));
        let root = na.isqrt(policy).to_u64().unwrap() as u128;
        assert!(root * root <= a as u128 && (root + 1) * (root + 1) > a as u128);
        assert_eq!(na.to_string(), a.to_string());
    }
}

#[test]
fn large_operands_match_num_bigint() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..60 {
        let la = rng.gen_range(1..1500);
        let lb = rng.gen_range(1..1500);
        let a = Natural::from_limbs((0..la).map(|_| rng.gen()).collect());
        let b = Natural::from_limbs((0..lb).map(|_| rng.gen()).collect());
        if b.is_zero() {
            continue;
        }
        let (ba, bb) = (to_big(&a), to_big(&b));
        let policy = MulPolicy::ALL[rng.gen_range(0..4)];
        assert_eq!(to_big(&a.mul(&b, policy)), &ba * &bb);
        let (q, r) = a.div_rem(&b, policy).unwrap();
        assert_eq!((to_big(&q), to_big(&r)), (&ba / &bb, &ba % &bb));
        assert_eq!(to_big(&a.isqrt(policy)), ba.sqrt());
        assert_eq!(a.to_string(), ba.to_string());
        assert_eq!(a.to_string().parse::<Natural>().unwrap(), a);
        assert_eq!(from_big(&ba), a);
    }
}

#[test]
fn fixed_point_sqrt_and_recip_are_floors() {
    let mut rng = StdRng::seed_from_u64(3);
    let ctx = PrecisionContext::from_working_bits(700).unwrap();
    let s = ctx.working_bits();
    for _ in 0..100 {
        let m = Natural::from_limbs((0..rng.gen_range(1..20)).map(|_| rng.gen()).collect());
        if m.is_zero() {
            continue;
        }
        let x = FixedReal::from_parts(picalc_core::BigInt::from_natural(m.clone()), s);
        let bm = to_big(&m);
        let root = ctx.sqrt(&x).unwrap();
        assert_eq!(to_big(root.mantissa().magnitude()), (&bm << s).sqrt());
        let inv = ctx.recip(&x).unwrap();
        assert_eq!(to_big(inv.mantissa().magnitude()), (BigUint::one() << (2 * s)) / &bm);
    }
}

#[test]
fn decimal_output_matches_exact_scaling() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..50 {
        let s = rng.gen_range(64..3000u64);
        let digits = (s as f64 * std::f64::consts::LOG10_2).floor() as u64;
        let mag = Natural::from_limbs((0..rng.gen_range(1..60)).map(|_| rng.gen()).collect());
        let negative = rng.gen_bool(0.5);
        let x = FixedReal::from_parts(picalc_core::BigInt::from_parts(negative, mag.clone()), s);
        let scaled = (to_big(&mag) * BigUint::from(10u32).pow(digits as u32)) >> s;
        let mut body = scaled.to_string();
        if body.len() <= digits as usize {
            body = format!("{}{body}", "0".repeat(digits as usize + 1 - body.len()));
        }
        let (int, fr) = body.split_at(body.len() - digits as usize);
        let sign = if negative && !scaled.is_zero() { "-" } else { "" };
        assert_eq!(picalc_core::fx_to_decimal(&x, digits).unwrap(), format!("{sign}{int}.{fr}"));
    }
}
