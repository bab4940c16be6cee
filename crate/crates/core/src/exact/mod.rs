//! Exact rational and Gaussian-rational arithmetic, plus interval
//! enclosures of arctan and π.

mod gaussian;
mod interval;
mod rational;
mod series;

pub use gaussian::{combination_product, tan_combination, GaussianInteger, GaussianRational};
pub use interval::Interval;
pub use rational::{is_canonical, rational_arith, ArithOp, Rational};
pub use series::{
    arctan_interval, arctan_interval_with_terms, arctan_partial_sum, arctan_term_count,
    pi_interval, pi_interval_from_terms, EULER_TERMS,
};
