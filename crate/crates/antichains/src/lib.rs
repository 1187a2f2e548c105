//! Exact computation of the size of the largest antichain in a product of
//! linear orders `[m_1] x ... x [m_n]` under componentwise order.
//!
//! Several independent routes to the same number are provided so they can be
//! cross-checked against each other:
//!
//! * closed-form summations ([`closed_forms`]),
//! * Whitney-number convolution over rank profiles ([`rank`]),
//! * brute-force enumeration and a Dilworth/matching oracle ([`oracle`]).
//!
//! The asymptotic constant `g(n) = lim S(m,n)/m^{n-1}` is evaluated in exact
//! rational arithmetic ([`asymptotics`]).

pub mod asymptotics;
pub mod cli;
pub mod closed_forms;
pub mod numeric;
pub mod oracle;
pub mod rank;

pub use numeric::{ExactInteger, ExactRational};
pub use rank::{RankProfile, ShapeVector};

use num_bigint::BigInt;

/// Errors surfaced by the library API.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape must contain at least one chain length")]
    EmptyShape,
    #[error("chain lengths must be positive, got {0}")]
    NonPositiveChainLength(i64),
    #[error("malformed shape entry: {0}")]
    MalformedShape(String),
    #[error("parameter out of range: {0}")]
    UnsupportedParameter(String),
    #[error("instance too large: product of chain lengths is {size}, cap is {cap}")]
    CapExceeded { size: BigInt, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
