//! Machin-like identities `Σ c_i·arctan(u_i) = π/4` and their exact
//! verification.
//!
//! Verification has two stages. The tangent stage decides exactly whether
//! `tan(Σ c_i·arctan u_i) = 1`, which pins the sum to `π/4 + kπ`. The branch
//! stage encloses the sum in an interval narrow enough to force `k = 0`.
//! Only the elementary bounds `3 < π < 4` are used: the branch candidates
//! other than `π/4` lie outside `(-2, 3)`, while `π/4` lies in `(1/2, 1)`.

mod balance;
pub mod corpus;
mod text;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

pub use balance::{balance_test, BalanceBlock, BalanceOutcome, BalanceWitness, INERT_PRIME};

use crate::error::{Error, Result};
use crate::exact::{arctan_interval, combination_product, pi_interval, pi_interval_from_terms};
use crate::exact::{GaussianInteger, Interval, Rational};
use crate::precision::PrecisionBudget;
use crate::refine::RefinementRecord;

/// One `coef·arctan(arg)` summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coef: i64,
    pub arg: Rational,
}

impl Term {
    pub fn new(coef: i64, arg: Rational) -> Self {
        Term { coef, arg }
    }
}

/// A claimed identity `Σ coef_i·arctan(arg_i) = π/4`. Not necessarily true;
/// see [`verify`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MachinIdentity {
    terms: Vec<Term>,
}

impl MachinIdentity {
    /// Needs at least one term, nonzero coefficients and positive arguments.
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("identity needs at least one term".into()));
        }
        for t in &terms {
            if t.coef == 0 {
                return Err(Error::Domain(format!("zero coefficient on arctan({})", t.arg)));
            }
            if !t.arg.is_positive() {
                return Err(Error::Domain(format!("arctan argument must be positive, got {}", t.arg)));
            }
        }
        Ok(MachinIdentity { terms })
    }

    pub fn from_pairs(pairs: &[(i64, Rational)]) -> Result<Self> {
        MachinIdentity::new(pairs.iter().map(|(c, u)| Term::new(*c, u.clone())).collect())
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn pairs(&self) -> Vec<(i64, Rational)> {
        self.terms.iter().map(|t| (t.coef, t.arg.clone())).collect()
    }

    /// Rough bit length of the Gaussian product the tangent stage would form.
    pub fn product_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| t.coef.unsigned_abs().saturating_mul(t.arg.numer().bits().max(t.arg.denom().bits())))
            .fold(0u64, u64::saturating_add)
    }
}

impl fmt::Display for MachinIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let arg = format!("atan({}/{})", t.arg.numer(), t.arg.denom());
            match (i, t.coef < 0) {
                (0, false) => write!(f, "{}*{arg}", t.coef)?,
                (0, true) => write!(f, "-{}*{arg}", t.coef.unsigned_abs())?,
                (_, false) => write!(f, " + {}*{arg}", t.coef)?,
                (_, true) => write!(f, " - {}*{arg}", t.coef.unsigned_abs())?,
            }
        }
        f.write_str(" = pi/4")
    }
}

impl FromStr for MachinIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        text::parse(s)
    }
}

/// Above this many product bits the tangent stage switches from the full
/// Gaussian product to the valuation balance test.
pub const PRODUCT_BIT_LIMIT: u64 = 1 << 18;

/// How the tangent stage decides `tan(Σ) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TangentRoute {
    /// Product when it is small, balance test otherwise.
    #[default]
    Auto,
    Product,
    Balance,
}

/// Exact evidence that the tangent of the sum is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TangentWitness {
    /// The Gaussian product `Π (den_i + i·num_i)^c_i` (conjugated for negative
    /// `c_i`), whose parts are equal.
    Product(GaussianInteger),
    Balance(BalanceWitness),
}

/// Proof that an identity holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub tangent: TangentWitness,
    /// Enclosure of `Σ c_i·arctan(u_i)`, inside `(-2, 3)`.
    pub angle_sum: Interval,
}

/// An identity together with the certificate that proves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifiedIdentity {
    identity: MachinIdentity,
    certificate: Certificate,
}

impl VerifiedIdentity {
    pub fn identity(&self) -> &MachinIdentity {
        &self.identity
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }
}

/// Why an identity is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// The exact tangent of the sum, which is not 1.
    Tangent(Rational),
    /// The sum is an odd multiple of π/2.
    Pole,
    /// A split prime whose valuations do not cancel, so the tangent is not 1.
    Unbalanced(BalanceBlock),
    /// Valuations cancel but the product points along 1, i or 1 - i
    /// (tangent 0, pole or -1); the residue is the product modulo
    /// [`INERT_PRIME`].
    Direction((u64, u64)),
    /// The tangent is 1 but the sum is `π/4 + kπ` with `k ≠ 0`.
    Branch(Interval),
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::Tangent(t) => write!(f, "tangent of the sum is {t}, not 1"),
            Refutation::Pole => f.write_str("tangent of the sum is a pole"),
            Refutation::Unbalanced(b) => write!(
                f,
                "valuations at {} do not cancel ({} vs {}), so the tangent is not 1",
                b.base, b.reference_side, b.conjugate_side
            ),
            Refutation::Direction((re, im)) => write!(
                f,
                "product is ({re} + {im}i) mod 2^61-1, not along 1 + i; the tangent is not 1"
            ),
            Refutation::Branch(s) => write!(f, "tangent is 1 but the sum lies in {s}, away from pi/4"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    True(VerifiedIdentity),
    False(Refutation),
    /// Not decided within the precision budget. Never a mathematical claim.
    Inconclusive(String),
}

impl Verdict {
    pub fn is_true(&self) -> bool {
        matches!(self, Verdict::True(_))
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Verdict::False(_))
    }
}

/// Verifies with the automatic tangent route and the environment's
/// precision budget.
pub fn verify(id: &MachinIdentity) -> Verdict {
    verify_with(id, TangentRoute::Auto, PrecisionBudget::from_env())
}

pub fn verify_with(id: &MachinIdentity, route: TangentRoute, budget: PrecisionBudget) -> Verdict {
    let tangent = match tangent_stage(id, route) {
        Ok(Ok(w)) => w,
        Ok(Err(r)) => return Verdict::False(r),
        Err(e) => return Verdict::Inconclusive(e.to_string()),
    };
    match branch_stage(id, budget) {
        Ok(Branch::Pinned(angle_sum)) => Verdict::True(VerifiedIdentity {
            identity: id.clone(),
            certificate: Certificate { tangent, angle_sum },
        }),
        Ok(Branch::Other(s)) => Verdict::False(Refutation::Branch(s)),
        Ok(Branch::Undecided(s)) => Verdict::Inconclusive(format!(
            "sum enclosure {s} does not separate the branches within {} bits",
            budget.max_bits
        )),
        Err(e) => Verdict::Inconclusive(e.to_string()),
    }
}

/// Decides `tan(Σ) = 1` exactly, ignoring the branch.
pub fn tangent_stage(id: &MachinIdentity, route: TangentRoute) -> Result<Result<TangentWitness, Refutation>> {
    let use_product = match route {
        TangentRoute::Auto => id.product_bits() <= PRODUCT_BIT_LIMIT,
        TangentRoute::Product => true,
        TangentRoute::Balance => false,
    };
    let pairs = id.pairs();
    if use_product {
        let p = combination_product(&pairs)?;
        if p.re.is_zero() {
            return Ok(Err(Refutation::Pole));
        }
        if p.re != p.im {
            return Ok(Err(Refutation::Tangent(p.tangent()?)));
        }
        return Ok(Ok(TangentWitness::Product(p)));
    }
    Ok(match balance_test(&pairs)? {
        BalanceOutcome::One(w) => Ok(TangentWitness::Balance(w)),
        BalanceOutcome::Unbalanced(b) => Err(Refutation::Unbalanced(b)),
        BalanceOutcome::WrongDirection(r) => Err(Refutation::Direction(r)),
    })
}

enum Branch {
    Pinned(Interval),
    Other(Interval),
    Undecided(Interval),
}

fn branch_stage(id: &MachinIdentity, budget: PrecisionBudget) -> Result<Branch> {
    let (lower_cut, upper_cut) = (Rational::from_integer(-2), Rational::from_integer(3));
    let (half, one) = (Rational::new(1, 2)?, Rational::one());
    let mut bits = 2u64;
    loop {
        let s = angle_sum_enclosure(id, &Rational::pow2(-(bits as i64)))?;
        if s.lo() > &lower_cut && s.hi() < &upper_cut {
            return Ok(Branch::Pinned(s));
        }
        if s.lo() > &one || s.hi() < &half {
            return Ok(Branch::Other(s));
        }
        bits *= 2;
        if !budget.allows_bits(bits) {
            return Ok(Branch::Undecided(s));
        }
    }
}

/// Enclosure of `arctan x` of width at most `eps` for any `x >= 0`.
///
/// Arguments at or above 1 go through `arctan x = π/2 - arctan(1/x)` with
/// the π enclosure from [`pi_interval`].
pub fn arctan_enclosure(x: &Rational, eps: &Rational) -> Result<Interval> {
    if *x < 1 {
        return arctan_interval(x, eps);
    }
    let quarter = Rational::new(1, 4)?;
    let half = Rational::new(1, 2)?;
    if *x == 1 {
        return Ok(pi_interval(&(eps * Rational::from_integer(4)))?.scale(&quarter));
    }
    let right_angle = pi_interval(eps)?.scale(&half);
    Ok(right_angle.sub(&arctan_interval(&x.recip()?, &(eps * &half))?))
}

/// Enclosure of `Σ c_i·arctan(u_i)` of width at most `width`.
pub fn angle_sum_enclosure(id: &MachinIdentity, width: &Rational) -> Result<Interval> {
    let m = id.terms.len() as i64;
    let mut acc = Interval::point(Rational::zero());
    for t in &id.terms {
        let eps = width.checked_div(&Rational::from_integer(t.coef.unsigned_abs() as i64 * m))?;
        let enc = arctan_enclosure(&t.arg, &eps)?;
        acc = acc.add(&enc.scale(&Rational::from_integer(t.coef)));
    }
    Ok(acc)
}

/// `a_{-n}·arctan u_n + a_{-n+1}·arctan u_{n+1} = π/4` for a refinement
/// record. Verify it with [`crate::refine::refined_verdict`].
pub fn refined_identity(record: &RefinementRecord) -> Result<MachinIdentity> {
    record.identity()
}

/// Enclosure of π of width at most `eps` from a verified identity whose
/// arguments are all below 1.
pub fn pi_interval_with(id: &VerifiedIdentity, eps: &Rational) -> Result<Interval> {
    if id.identity.terms.iter().any(|t| t.arg >= 1) {
        return Err(Error::Domain(format!("{} has an argument >= 1", id.identity)));
    }
    pi_interval_from_terms(&id.identity.pairs(), eps)
}
