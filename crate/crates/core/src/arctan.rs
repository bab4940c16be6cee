//! One step of the arctangent continued fraction.
//!
//! Given `arctan u > arctan v > 0`, find the partial quotient `q` and the
//! remainder argument `w` with `arctan u = q·arctan v + arctan w`,
//! `0 <= w < v`. Angles are never evaluated: arctan is strictly increasing,
//! so comparing angles reduces to comparing their tangents.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{GaussianInteger, Rational};

/// `tan(arctan x - arctan y) = (x - y)/(1 + xy)`, for `x >= y >= 0`.
pub fn arctan_sub(x: &Rational, y: &Rational) -> Result<Rational> {
    if y.is_negative() || x < y {
        return Err(Error::Precondition(format!(
            "arctan_sub needs x >= y >= 0, got x = {x}, y = {y}"
        )));
    }
    let den = Rational::one() + x * y;
    (x - y).checked_div(&den)
}

/// `tan(arctan x + arctan y) = (x + y)/(1 - xy)`, for `x, y >= 0` and `xy < 1`.
pub fn arctan_add(x: &Rational, y: &Rational) -> Result<Rational> {
    if x.is_negative() || y.is_negative() {
        return Err(Error::Precondition(format!(
            "arctan_add needs x, y >= 0, got x = {x}, y = {y}"
        )));
    }
    let xy = x * y;
    if xy >= 1 {
        return Err(Error::Domain(format!(
            "arctan({x}) + arctan({y}) reaches pi/2"
        )));
    }
    (x + y).checked_div(&(Rational::one() - xy))
}

/// How the partial quotient is extracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Subtract `arctan v` one at a time.
    Linear,
    /// Exponential then binary search on the sign of
    /// `im((1 + iu)(1 - iv)^q)`.
    #[default]
    Doubling,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Linear => "linear",
            Strategy::Doubling => "doubling",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "linear" => Ok(Strategy::Linear),
            "doubling" => Ok(Strategy::Doubling),
            other => Err(Error::Parse {
                column: 1,
                message: format!("unknown strategy {other:?} (expected linear or doubling)"),
            }),
        }
    }
}

/// `arctan u = q·arctan v + arctan w` with `0 < w < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepResult {
    pub q: u64,
    pub w: Rational,
}

/// Extracts one partial quotient. See [`step_traced`] for the probe log.
pub fn step(u: &Rational, v: &Rational, strategy: Strategy) -> Result<StepResult> {
    step_traced(u, v, strategy).map(|(r, _)| r)
}

/// Like [`step`], also returning every exponent `q` probed by the doubling
/// search (empty for the linear strategy).
///
/// Doubling relies on `sign(im) = sign(angle)` for the probed angles
/// `arctan u - q·arctan v`. With `u, v < 1` every probe stays below
/// `2(q + 1)`, which keeps the angle inside `(-π, π/4]`. A seed step with
/// `u >= 1` falls back to the linear strategy.
pub fn step_traced(u: &Rational, v: &Rational, strategy: Strategy) -> Result<(StepResult, Vec<u64>)> {
    if !v.is_positive() || u <= v {
        return Err(Error::Precondition(format!(
            "step needs u > v > 0, got u = {u}, v = {v}"
        )));
    }
    match strategy {
        Strategy::Doubling if *u < 1 => doubling(u, v),
        _ => linear(u, v).map(|r| (r, Vec::new())),
    }
}

fn degenerate(u: &Rational, v: &Rational) -> Error {
    Error::DegenerateRatio {
        u: Box::new(u.clone()),
        v: Box::new(v.clone()),
    }
}

fn linear(u: &Rational, v: &Rational) -> Result<StepResult> {
    let mut w = u.clone();
    let mut q = 0u64;
    while &w >= v {
        w = arctan_sub(&w, v)?;
        q += 1;
    }
    if w.is_zero() {
        return Err(degenerate(u, v));
    }
    Ok(StepResult { q, w })
}

fn doubling(u: &Rational, v: &Rational) -> Result<(StepResult, Vec<u64>)> {
    let base = GaussianInteger::from_tangent(u);
    // Angle -arctan v, up to a positive real factor.
    let rot = GaussianInteger::from_tangent(v).conj();
    let mut probes = Vec::new();

    // powers[j] = rot^(2^j)
    let mut powers = vec![rot];
    let mut cur = base.mul(&powers[0]);
    probes.push(1);
    if cur.im.is_zero() {
        return Err(degenerate(u, v));
    }
    // Invariant: cur = base·rot^lo with positive imaginary part.
    let mut lo = 1u64;
    loop {
        let j = powers.len() - 1;
        let candidate = cur.mul(&powers[j]);
        let probe = lo << 1;
        probes.push(probe);
        if candidate.im.is_zero() {
            return Err(degenerate(u, v));
        }
        if candidate.im.is_negative() {
            break;
        }
        cur = candidate;
        lo = probe;
        powers.push(powers[j].square());
    }
    // Overshoot at 2·lo; the answer is in [lo, 2·lo).
    for j in (0..powers.len() - 1).rev() {
        let candidate = cur.mul(&powers[j]);
        let probe = lo + (1u64 << j);
        probes.push(probe);
        if candidate.im.is_zero() {
            return Err(degenerate(u, v));
        }
        if candidate.im.is_positive() {
            cur = candidate;
            lo = probe;
        }
    }
    let w = cur.tangent()?;
    Ok((StepResult { q: lo, w }, probes))
}
