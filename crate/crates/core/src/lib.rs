//! Refinement of two-term Machin-like formulas.
//!
//! Starting from a verified seed `a0·arctan(u0) + a1·arctan(u1) = π/4`, the
//! continued fraction of `arctan(u0)/arctan(u1)` is expanded one partial
//! quotient at a time, each step producing a new two-term identity with
//! smaller arguments. Everything is exact: rationals for the arguments,
//! Gaussian integers for tangent algebra, and rational-endpoint intervals
//! wherever a transcendental value has to be bounded.

pub mod approx;
pub mod arctan;
pub mod cli;
pub mod error;
pub mod exact;
pub mod identity;
pub mod precision;
pub mod refine;

pub use error::{Error, Result};
