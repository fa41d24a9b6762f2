//! Arbitrary-precision naturals, signed integers and a fixed-point real
//! layer. Multiplication is selectable (schoolbook, Karatsuba, NTT);
//! division and square root reduce to multiplication through Newton
//! iteration, so the multiplication policy governs the cost of everything.

mod bigint;
mod context;
mod fixed;
mod mul;
mod natural;
mod newton;
mod ntt;
mod radix;

pub use bigint::{BigInt, Sign};
pub use context::PrecisionContext;
pub use fixed::{fx_recip, fx_sqrt, fx_to_decimal, FixedReal};
pub use mul::{nat_mul, MulPolicy, KARATSUBA_THRESHOLD, NTT_FORCED_MIN, NTT_THRESHOLD};
pub use natural::{Limb, Natural, LIMB_BITS};
pub use ntt::{check_capacity as ntt_check_capacity, MAX_TRANSFORM_LEN as NTT_MAX_TRANSFORM_LEN};
