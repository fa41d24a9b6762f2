//! Arbitrary-precision fixed-point arithmetic and three independent ways of
//! computing π: the Brent–Salamin AGM iteration, the Legendre-relation family
//! over a free modulus `k`, and Machin-like arctangent formulas summed by
//! binary splitting. An AGM-based logarithm and a Newton exponential sit on
//! top, giving constants such as e^π and π/e at the same asymptotic cost.

pub mod agm;
pub mod bigfixed;
pub mod elemfn;
pub mod error;
pub mod machin;

pub use agm::{
    agm_run, convergence_rows, legendre_residual, pi_brent_salamin, pi_brent_salamin_traced,
    pi_legendre_family, write_trace_csv, AgmResult, AgmRow, ConvergenceRow, ModulusPair,
};
pub use bigfixed::{
    fx_recip, fx_sqrt, fx_to_decimal, nat_mul, BigInt, FixedReal, MulPolicy, Natural,
    PrecisionContext, Sign,
};
pub use elemfn::{
    clear_constant_cache, const_ln2, exp_newton, ln_agm, named_constant, ConstantName,
    NamedConstant,
};
pub use error::{Error, Result};
pub use machin::{
    arctan_recip, arctan_term_count, formula_validate, machin_term_count, pi_machin, split_sum, ArctanTerm,
    MachinFormula, SplitFraction,
};
