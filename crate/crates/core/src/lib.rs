//! Exact counts of abelian extensions of `F_q((t))` by conductor.
//!
//! The closed forms live in [`counting`] and [`local`]; [`oracle`] is an
//! independent element-level model of the same counting problem used to
//! check them.

mod arith;
pub mod counting;
pub mod error;
pub mod groups;
pub mod local;
pub mod oracle;
pub mod verify;

pub use arith::{fmt_ratio, parse_ratio, to_f64 as ratio_to_f64};
pub use error::{Error, Result};
pub use groups::{FiniteAbelianGroup, PPrimaryType, RankVector};
pub use local::{CountBreakdown, ExampleShape, LocalField};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
