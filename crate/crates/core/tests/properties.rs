use proptest::collection::vec;
use proptest::prelude::*;

use picalc_core::{
    exp_newton, formula_validate, ln_agm, split_sum, ArctanTerm, BigInt, FixedReal, MachinFormula, MulPolicy,
    Natural, PrecisionContext, SplitFraction,
};

fn natural(max_limbs: usize) -> impl Strategy<Value = Natural> {
    vec(any::<u64>(), 0..=max_limbs).prop_map(Natural::from_limbs)
}

fn within(a: &FixedReal, b: &FixedReal, log2_tol: i64) -> bool {
    let ulp = FixedReal::one_ulp(a.scale_bits());
    (a - b).abs() <= ulp.mul_pow2(a.scale_bits() as i64 + log2_tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn policies_agree_on_large_operands(a in vec(any::<u64>(), 10..=10_000), b in vec(any::<u64>(), 10..=10_000)) {
        let (a, b) = (Natural::from_limbs(a), Natural::from_limbs(b));
        let reference = a.mul(&b, MulPolicy::Schoolbook);
        for policy in [MulPolicy::Karatsuba, MulPolicy::Ntt, MulPolicy::Auto] {
            prop_assert_eq!(&a.mul(&b, policy), &reference);
        }
        prop_assert_eq!(a.square(MulPolicy::Ntt), a.mul(&a, MulPolicy::Schoolbook));
    }
}

proptest! {
    #[test]
    fn div_rem_reconstructs(n in natural(80), d in natural(40)) {
        prop_assume!(!d.is_zero());
        for policy in MulPolicy::ALL {
            let (q, r) = n.div_rem(&d, policy).unwrap();
            prop_assert!(r < d);
            prop_assert_eq!(&(&q.mul(&d, policy) + &r), &n);
        }
    }

    #[test]
    fn isqrt_brackets(x in natural(60)) {
        let r = x.isqrt(MulPolicy::Auto);
        let next = r.add_u64(1);
        prop_assert!(r.square(MulPolicy::Auto) <= x);
        prop_assert!(next.square(MulPolicy::Auto) > x);
    }

    #[test]
    fn fixed_sqrt_brackets(m in natural(12)) {
        let ctx = PrecisionContext::from_working_bits(256).unwrap();
        let x = FixedReal::from_parts(BigInt::from_natural(m), 256);
        let r = ctx.sqrt(&x).unwrap();
        let up = &r + &FixedReal::one_ulp(256);
        // squares at double scale are exact
        let sq = |v: &FixedReal| v.mantissa().magnitude().square(MulPolicy::Auto);
        let target = x.mantissa().magnitude().shl(256);
        prop_assert!(sq(&r) <= target);
        prop_assert!(sq(&up) > target);
    }

    #[test]
    fn decimal_round_trip(x in natural(300)) {
        let s = x.to_string();
        prop_assert!(s == "0" || !s.starts_with('0'));
        prop_assert_eq!(s.parse::<Natural>().unwrap(), x);
    }

    #[test]
    fn fixed_decimal_round_trip(int in 0u64..1_000_000, frac in "[0-9]{1,60}", negative in any::<bool>()) {
        let ctx = PrecisionContext::new(60).unwrap();
        let sign = if negative { "-" } else { "" };
        let text = format!("{sign}{int}.{frac}");
        let x = ctx.parse(&text).unwrap();
        let back = ctx.to_decimal(&x, frac.len() as u64).unwrap();
        // parsing truncates toward zero, so only the last digit may drop by one
        let digits = |s: &str| s.trim_start_matches('-').replace('.', "").parse::<num_bigint::BigUint>().unwrap();
        let (want, got) = (digits(&text), digits(&back));
        prop_assert!(got == want || &got + 1u32 == want, "{} -> {}", text, back);
        if got != 0u32.into() {
            prop_assert_eq!(back.starts_with('-'), negative);
        }
    }

    #[test]
    fn shifts_invert(x in natural(20), k in 0u64..500) {
        prop_assert_eq!(x.shl(k).shr(k), x);
    }

    #[test]
    fn split_point_does_not_matter(n in 2u64..1000, lo in 0u64..40, len in 0u64..40, cut in 0u64..40) {
        let hi = lo + len;
        let mid = lo + cut.min(len);
        let p = MulPolicy::Auto;
        let whole = split_sum(n, lo, hi, p);
        let (l, r) = (split_sum(n, lo, mid, p), split_sum(n, mid, hi, p));
        let joined = SplitFraction {
            num: &l.num.mul_natural(&r.den, p) + &r.num.mul_natural(&l.den, p),
            den: l.den.mul(&r.den, p),
        };
        prop_assert!(whole.same_value(&joined));
    }

    #[test]
    fn perturbed_builtins_are_rejected(which in 0usize..3, term in 0usize..3, coeff in any::<bool>(), up in any::<bool>()) {
        let name = ["machin", "euler", "gauss3"][which];
        let f = MachinFormula::builtin(name).unwrap();
        let mut terms = f.terms().to_vec();
        let i = term % terms.len();
        let t = &mut terms[i];
        let delta = if up { 1 } else { -1 };
        if coeff {
            t.coeff += delta;
        } else {
            t.recip_arg = (t.recip_arg as i64 + delta) as u64;
        }
        prop_assume!(terms.iter().all(|t| t.coeff != 0 && t.recip_arg >= 2));
        let g = MachinFormula::new("perturbed", terms).unwrap();
        prop_assert!(!formula_validate(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn ln_exp_round_trip(num in -5000i64..=5000) {
        let ctx = PrecisionContext::new(120).unwrap();
        let x = ctx.from_ratio(num, 1000).unwrap();
        let tol = -(ctx.working_bits() as i64) + ctx.guard_bits() as i64;
        let back = ln_agm(&exp_newton(&x, &ctx).unwrap(), &ctx).unwrap();
        prop_assert!(within(&back, &x, tol));
    }

    #[test]
    fn exp_ln_round_trip(num in 1i64..=100_000) {
        let ctx = PrecisionContext::new(120).unwrap();
        let y = ctx.from_ratio(num, 1000).unwrap();
        let back = exp_newton(&ln_agm(&y, &ctx).unwrap(), &ctx).unwrap();
        // relative tolerance: scale the bound by max(y, 1)
        let tol = -(ctx.working_bits() as i64) + ctx.guard_bits() as i64 + 7;
        prop_assert!(within(&back, &y, tol));
    }

    #[test]
    fn ln_is_a_homomorphism(a in 500i64..=100_000, b in 500i64..=100_000) {
        let ctx = PrecisionContext::new(120).unwrap();
        let (x, y) = (ctx.from_ratio(a, 1000).unwrap(), ctx.from_ratio(b, 1000).unwrap());
        let tol = -(ctx.working_bits() as i64) + ctx.guard_bits() as i64;
        let lhs = ln_agm(&ctx.mul(&x, &y), &ctx).unwrap();
        let rhs = &ln_agm(&x, &ctx).unwrap() + &ln_agm(&y, &ctx).unwrap();
        prop_assert!(within(&lhs, &rhs, tol));
    }

    #[test]
    fn exp_is_a_homomorphism(a in -3000i64..=3000, b in -3000i64..=3000) {
        let ctx = PrecisionContext::new(120).unwrap();
        let (x, y) = (ctx.from_ratio(a, 1000).unwrap(), ctx.from_ratio(b, 1000).unwrap());
        let tol = -(ctx.working_bits() as i64) + ctx.guard_bits() as i64 + 9;
        let lhs = exp_newton(&(&x + &y), &ctx).unwrap();
        let rhs = ctx.mul(&exp_newton(&x, &ctx).unwrap(), &exp_newton(&y, &ctx).unwrap());
        prop_assert!(within(&lhs, &rhs, tol));
    }
}

#[test]
fn single_term_formulas_are_all_rejected() {
    for c in -8i64..=8 {
        for n in 2u64..=50 {
            if c == 0 {
                continue;
            }
            let f = MachinFormula::new("single", vec![ArctanTerm::new(c, n).unwrap()]).unwrap();
            assert!(!formula_validate(&f), "{c}*atan(1/{n})");
        }
    }
}
