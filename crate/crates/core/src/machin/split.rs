use crate::bigfixed::{BigInt, MulPolicy, Natural};

/// An exact fraction num/den with den > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitFraction {
    pub num: BigInt,
    pub den: Natural,
}

impl SplitFraction {
    pub fn zero() -> Self {
        SplitFraction { num: BigInt::zero(), den: Natural::one() }
    }

    /// Exact rational equality by cross-multiplication.
    pub fn same_value(&self, other: &SplitFraction) -> bool {
        let p = MulPolicy::Auto;
        self.num.mul_natural(&other.den, p) == other.num.mul_natural(&self.den, p)
    }
}

// Accumulators for the range [lo, hi) of Σ_j (1/b_j) · Π_{i≤j} p_i/q_i with
// p_0 = 1, q_0 = n, p_j = −1, q_j = n² (j ≥ 1) and b_j = 2j + 1. The range's
// local sum is t / (b · q); p_product is ±1.
struct Node {
    p_negative: bool,
    q: Natural,
    b: Natural,
    t: BigInt,
}

fn split(n: u64, lo: u64, hi: u64, policy: MulPolicy) -> Node {
    if hi - lo == 1 {
        let first = lo == 0;
        return Node {
            p_negative: !first,
            q: if first { Natural::from_u64(n) } else { Natural::from_u64(n).square(policy) },
            b: Natural::from_u64(2 * lo + 1),
            t: BigInt::from_i64(if first { 1 } else { -1 }),
        };
    }
    let mid = lo + (hi - lo) / 2;
    let (left, right) = if hi - lo >= 4096 {
        std::thread::scope(|s| {
            let h = s.spawn(|| split(n, lo, mid, policy));
            let right = split(n, mid, hi, policy);
            (h.join().expect("split worker panicked"), right)
        })
    } else {
        (split(n, lo, mid, policy), split(n, mid, hi, policy))
    };
    // t = b_R·q_R·t_L + p_L·b_L·t_R
    let bq_right = right.b.mul(&right.q, policy);
    let lhs = left.t.mul_natural(&bq_right, policy);
    let mut rhs = right.t.mul_natural(&left.b, policy);
    if left.p_negative {
        rhs = -rhs;
    }
    Node {
        p_negative: left.p_negative != right.p_negative,
        q: left.q.mul(&right.q, policy),
        b: left.b.mul(&right.b, policy),
        t: &lhs + &rhs,
    }
}

/// Σ_{j=lo}^{hi−1} (−1)^j / ((2j+1)·n^(2j+1)) as one exact fraction.
///
/// Balanced binary splitting. Subranges carry a common product of the
/// ratios p/q instead of separate denominators, so sizes stay linear in the
/// number of terms. A single leaf gives exactly (−1)^lo / ((2lo+1)·n^(2lo+1)).
pub fn split_sum(n: u64, lo: u64, hi: u64, policy: MulPolicy) -> SplitFraction {
    assert!(n >= 2, "split_sum needs n >= 2");
    assert!(lo <= hi, "split_sum needs lo <= hi");
    if lo == hi {
        return SplitFraction::zero();
    }
    let node = split(n, lo, hi, policy);
    let mut den = node.b.mul(&node.q, policy);
    let mut num = node.t;
    // Prefix Π_{i<lo} p_i/q_i = (−1)^(lo−1) / n^(2lo−1) for lo ≥ 1.
    if lo > 0 {
        den = den.mul(&Natural::from_u64(n).pow(2 * lo - 1, policy), policy);
        if (lo - 1) % 2 == 1 {
            num = -num;
        }
    }
    SplitFraction { num, den }
}
