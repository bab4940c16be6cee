//! The refinement stream.
//!
//! From a verified seed `a0·arctan u0 + a1·arctan u1 = π/4`, each step writes
//! `arctan u_n = q_n·arctan u_{n+1} + arctan u_{n+2}` and carries the
//! coefficients along with `a_{-n-1} = q_n·a_{-n} + a_{-n+1}`, so that every
//! record is again a two-term identity. The partial quotients `q_n` are those
//! of `α = arctan u0 / arctan u1`, whose convergents `N_n/D_n` are tracked
//! alongside.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arctan::{step, Strategy};
use crate::error::{Error, Result};
use crate::exact::{GaussianInteger, Interval, Rational};
use crate::identity::{self, arctan_enclosure, MachinIdentity, Verdict, VerifiedIdentity};
use crate::precision::{escalate, Check, PrecisionBudget};

/// A verified two-term identity with `u0 > u1 > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    a0: i64,
    a1: i64,
    u0: Rational,
    u1: Rational,
    verified: VerifiedIdentity,
}

impl Seed {
    /// Checks `u0 > u1 > 0` and verifies the identity exactly.
    pub fn new(a0: i64, a1: i64, u0: Rational, u1: Rational) -> Result<Seed> {
        if !u1.is_positive() || u0 <= u1 {
            return Err(Error::SeedInvalid(format!("need u0 > u1 > 0, got u0 = {u0}, u1 = {u1}")));
        }
        let id = MachinIdentity::from_pairs(&[(a0, u0.clone()), (a1, u1.clone())])
            .map_err(|e| Error::SeedInvalid(e.to_string()))?;
        match identity::verify(&id) {
            Verdict::True(verified) => Ok(Seed { a0, a1, u0, u1, verified }),
            Verdict::False(why) => Err(Error::SeedInvalid(format!("{id} is false: {why}"))),
            Verdict::Inconclusive(why) => Err(Error::Inconclusive(format!("seed {id}: {why}"))),
        }
    }

    /// `arctan(1/2) + arctan(1/3) = π/4`.
    pub fn euler() -> Seed {
        Seed::new(1, 1, Rational::new(1, 2).expect("nonzero"), Rational::new(1, 3).expect("nonzero"))
            .expect("the Euler seed verifies")
    }

    /// Skips verification, for exercising error paths in tests.
    #[cfg(test)]
    pub(crate) fn unverified(a0: i64, a1: i64, u0: Rational, u1: Rational) -> Seed {
        let id = MachinIdentity::from_pairs(&[(1, Rational::new(1, 2).unwrap()), (1, Rational::new(1, 3).unwrap())])
            .unwrap();
        let Verdict::True(verified) = identity::verify(&id) else {
            unreachable!()
        };
        Seed { a0, a1, u0, u1, verified }
    }

    pub fn a0(&self) -> i64 {
        self.a0
    }

    pub fn a1(&self) -> i64 {
        self.a1
    }

    pub fn u0(&self) -> &Rational {
        &self.u0
    }

    pub fn u1(&self) -> &Rational {
        &self.u1
    }

    pub fn verified(&self) -> &VerifiedIdentity {
        &self.verified
    }
}

/// Convergent `num/den` of `α`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Convergent {
    pub num: BigInt,
    pub den: BigInt,
}

impl Convergent {
    fn new(num: i64, den: i64) -> Self {
        Convergent {
            num: num.into(),
            den: den.into(),
        }
    }

    fn next(&self, prev: &Convergent, q: u64) -> Convergent {
        Convergent {
            num: &self.num * q + &prev.num,
            den: &self.den * q + &prev.den,
        }
    }
}

/// One refinement generation: `a_n·arctan u_n + a_prev·arctan u_next = π/4`.
///
/// `a_n` is `a_{-n}`, `a_prev` is `a_{-n+1}` and `a_next` is
/// `a_{-n-1} = q·a_n + a_prev`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RefinementRecord {
    pub n: usize,
    pub q: u64,
    pub u_n: Rational,
    pub u_next: Rational,
    pub a_n: BigInt,
    pub a_prev: BigInt,
    pub a_next: BigInt,
    /// `(N_n, D_n)`.
    pub convergent: Convergent,
    /// `(N_{n-1}, D_{n-1})`, the `(1, 0)` sentinel at `n = 0`.
    pub prev: Convergent,
    /// `(N_{n-2}, D_{n-2})`, sentinels below `n = 2`.
    pub prev2: Convergent,
    /// `F_{n+1}`, a lower bound for `D_n`.
    pub fib: BigUint,
}

impl RefinementRecord {
    /// The two-term identity this record asserts.
    pub fn identity(&self) -> Result<MachinIdentity> {
        let coef = |a: &BigInt| {
            a.to_i64()
                .ok_or_else(|| Error::Internal(format!("coefficient {a} does not fit in 64 bits")))
        };
        MachinIdentity::from_pairs(&[(coef(&self.a_n)?, self.u_n.clone()), (coef(&self.a_prev)?, self.u_next.clone())])
    }

    /// `r_n = 4(a_{-n}·u_n + a_{-n+1}·u_{n+1})`.
    pub fn pi_approximation(&self) -> Rational {
        (self.u_n.scale(&self.a_n) + self.u_next.scale(&self.a_prev)).scale(&BigInt::from(4))
    }
}

/// Lazy stream of records. Holds only the state of the current generation.
#[derive(Debug, Clone)]
pub struct Refinement {
    strategy: Strategy,
    n: usize,
    u: Rational,
    v: Rational,
    a_cur: BigInt,
    a_prev: BigInt,
    prev2: Convergent,
    prev: Convergent,
    fib: BigUint,
    fib_next: BigUint,
    done: bool,
}

impl Refinement {
    pub fn new(seed: &Seed, strategy: Strategy) -> Self {
        Refinement {
            strategy,
            n: 0,
            u: seed.u0.clone(),
            v: seed.u1.clone(),
            a_cur: seed.a0.into(),
            a_prev: seed.a1.into(),
            prev2: Convergent::new(0, 1),
            prev: Convergent::new(1, 0),
            fib: BigUint::one(),
            fib_next: BigUint::one(),
            done: false,
        }
    }

    /// Continues after record `n = qs.len() - 1`, given that record's
    /// arguments and coefficients and every partial quotient so far.
    ///
    /// The record's identity is re-verified and its last quotient recomputed
    /// before anything is trusted.
    pub fn resume(
        seed: &Seed,
        qs: &[u64],
        u_n: &Rational,
        u_next: &Rational,
        a_n: &BigInt,
        a_prev: &BigInt,
        strategy: Strategy,
    ) -> Result<Self> {
        let Some((&q_last, _)) = qs.split_last() else {
            return Err(Error::Precondition("resume needs at least one record".into()));
        };
        let mut r = Refinement::new(seed, strategy);
        for &q in &qs[..qs.len() - 1] {
            r.advance_convergents(q);
        }
        r.n = qs.len() - 1;
        r.u = u_n.clone();
        r.v = u_next.clone();
        r.a_cur = a_n.clone();
        r.a_prev = a_prev.clone();
        let record = r
            .next()
            .ok_or_else(|| Error::Internal("stream ended early".into()))??;
        if record.q != q_last {
            return Err(Error::Precondition(format!(
                "record {} claims q = {q_last} but the step gives {}",
                record.n, record.q
            )));
        }
        refined_verdict(&record)?;
        Ok(r)
    }

    fn advance_convergents(&mut self, q: u64) -> Convergent {
        let cur = self.prev.next(&self.prev2, q);
        self.prev2 = std::mem::replace(&mut self.prev, cur.clone());
        let f = &self.fib + &self.fib_next;
        self.fib = std::mem::replace(&mut self.fib_next, f);
        cur
    }
}

impl Iterator for Refinement {
    type Item = Result<RefinementRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let s = match step(&self.u, &self.v, self.strategy) {
            Ok(s) => s,
            Err(e) => {
                self.done = true;
                return Some(Err(e));
            }
        };
        let (prev2, prev, fib) = (self.prev2.clone(), self.prev.clone(), self.fib.clone());
        let convergent = self.advance_convergents(s.q);
        let a_next = &self.a_cur * s.q + &self.a_prev;
        let record = RefinementRecord {
            n: self.n,
            q: s.q,
            u_n: std::mem::replace(&mut self.u, self.v.clone()),
            u_next: std::mem::replace(&mut self.v, s.w),
            a_prev: std::mem::replace(&mut self.a_prev, self.a_cur.clone()),
            a_n: std::mem::replace(&mut self.a_cur, a_next.clone()),
            a_next,
            convergent,
            prev,
            prev2,
            fib,
        };
        self.n += 1;
        Some(Ok(record))
    }
}

/// Records `0..depth`.
pub fn refine_stream(seed: &Seed, depth: usize, strategy: Strategy) -> Result<Vec<RefinementRecord>> {
    if depth == 0 {
        return Err(Error::Precondition("depth must be at least 1".into()));
    }
    Refinement::new(seed, strategy).take(depth).collect()
}

/// Verifies a record's identity; anything but true is an internal error.
pub fn refined_verdict(record: &RefinementRecord) -> Result<VerifiedIdentity> {
    let id = record.identity()?;
    match identity::verify(&id) {
        Verdict::True(v) => Ok(v),
        Verdict::False(why) => Err(Error::Internal(format!("record {} gives false identity {id}: {why}", record.n))),
        Verdict::Inconclusive(why) => Err(Error::Inconclusive(format!("record {}: {why}", record.n))),
    }
}

/// `a0·N_n + a1·D_n`, which equals `a_{-n-1}`.
pub fn coefficient_closed_form(seed: &Seed, record: &RefinementRecord) -> BigInt {
    &record.convergent.num * seed.a0 + &record.convergent.den * seed.a1
}

/// Checks `arctan u_n = (-1)^n (D_{n-2}·arctan u0 - N_{n-2}·arctan u1)`.
///
/// Exactly on tangents first, then by intervals to rule out a difference
/// of a nonzero multiple of π. Needs `n >= 2`.
pub fn argument_closed_form_check(seed: &Seed, record: &RefinementRecord) -> Result<bool> {
    if record.n < 2 {
        return Err(Error::Precondition(format!("closed form needs n >= 2, got {}", record.n)));
    }
    let exponent = |x: &BigInt| {
        x.to_u64()
            .ok_or_else(|| Error::Domain(format!("exponent {x} out of range")))
    };
    let (d, nn) = (exponent(&record.prev2.den)?, exponent(&record.prev2.num)?);
    let product = GaussianInteger::from_tangent(&seed.u0)
        .pow(d)
        .mul(&GaussianInteger::from_tangent(&seed.u1).conj().pow(nn));
    let target = if record.n.is_multiple_of(2) { record.u_n.clone() } else { -&record.u_n };
    if product.tangent()? != target {
        return Ok(false);
    }

    // Same tangent, so the two sides differ by kπ; an enclosure of the
    // difference inside (-3, 3) forces k = 0.
    let width = Rational::new(1, 4)?;
    let lhs = MachinIdentity::from_pairs(&[
        (to_i64(&record.prev2.den)?, seed.u0.clone()),
        (-to_i64(&record.prev2.num)?, seed.u1.clone()),
    ])?;
    let combination = identity::angle_sum_enclosure(&lhs, &width)?;
    let mut rhs = arctan_enclosure(&record.u_n, &width)?;
    if record.n % 2 == 1 {
        rhs = rhs.neg();
    }
    let gap = combination.sub(&rhs);
    Ok(gap.lo() > &Rational::from_integer(-3) && gap.hi() < &Rational::from_integer(3))
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Domain(format!("coefficient {x} out of range")))
}

/// `F_n` by the recurrence.
pub fn fibonacci(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// Starting precision `10^-(digits of D^2 + 10)`.
pub(crate) fn start_digits(d: &BigInt) -> u64 {
    (d * d).to_string().len() as u64 + 10
}

/// `arctan u_n <= arctan u1 / D_{n-1}`. Equality holds at `n = 1`, so only
/// `n >= 2` can be decided.
pub fn corollary2_check(seed: &Seed, record: &RefinementRecord, budget: PrecisionBudget) -> Result<Check> {
    if record.n < 2 {
        return Err(Error::Precondition(format!("bound needs n >= 2, got {}", record.n)));
    }
    let d = Rational::from(record.prev.den.clone());
    escalate(start_digits(&record.prev.den), budget, |eps| {
        let lhs = arctan_enclosure(&record.u_n, eps)?;
        let rhs = arctan_enclosure(&seed.u1, eps)?.div(&Interval::point(d.clone()))?;
        Ok(if lhs.hi() <= rhs.lo() {
            Some(true)
        } else if lhs.lo() > rhs.hi() {
            Some(false)
        } else {
            None
        })
    })
}

/// Enclosure of `α = arctan u0 / arctan u1` of width roughly `eps`.
pub fn ratio_enclosure(seed: &Seed, eps: &Rational) -> Result<Interval> {
    arctan_enclosure(&seed.u0, eps)?.div(&arctan_enclosure(&seed.u1, eps)?)
}

/// `|α - N_n/D_n| <= 1/(D_n·D_{n+1})`, with `D_{n+1}` taken from the next
/// record.
pub fn convergent_bound_check(
    seed: &Seed,
    record: &RefinementRecord,
    next: &RefinementRecord,
    budget: PrecisionBudget,
) -> Result<Check> {
    if next.n != record.n + 1 || next.prev != record.convergent {
        return Err(Error::Precondition(format!(
            "record {} does not follow record {}",
            next.n, record.n
        )));
    }
    let c = &record.convergent;
    let centre = Rational::new(c.num.clone(), c.den.clone())?;
    let radius = Rational::new(BigInt::one(), &c.den * &next.convergent.den)?;
    let allowed = Interval::new(&centre - &radius, &centre + &radius)?;
    let scale = next.convergent.den.abs();
    escalate(start_digits(&scale), budget, |eps| {
        let alpha = ratio_enclosure(seed, eps)?;
        Ok(if allowed.contains_interval(&alpha) {
            Some(true)
        } else if !allowed.intersects(&alpha) {
            Some(false)
        } else {
            None
        })
    })
}
