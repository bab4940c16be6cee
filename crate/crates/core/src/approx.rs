//! Rational approximations of π from refined identities, and certified
//! decimal digits.
//!
//! Replacing each `arctan x` by `x` in record `n` gives
//! `r_n = 4(a_{-n}·u_n + a_{-n+1}·u_{n+1})`, which tends to π with error
//! `O(1/D_{n-1}^2)`. Errors are reported as intervals built from exact
//! enclosures of π, never from a floating reference value.

use std::thread;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{arctan_interval_with_terms, arctan_term_count, pi_interval, Interval, Rational};
use crate::precision::{escalate, Check, PrecisionBudget};
use crate::refine::{start_digits, Refinement, RefinementRecord, Seed};
use crate::arctan::Strategy;

/// Approximation data for one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxRecord {
    pub n: usize,
    /// `r_n`, exact.
    pub r: Rational,
    /// Encloses `r_n - π`.
    pub err: Interval,
    /// Encloses `|r_n - π|·D_{n-1}^2`.
    pub err_scaled: Interval,
    /// `a_{-n-1}/D_n`, exact.
    pub coeff_ratio: Interval,
}

/// Builds the approximation record for `record` against an enclosure of π.
pub fn approx_record(record: &RefinementRecord, pi: &Interval) -> Result<ApproxRecord> {
    let r = record.pi_approximation();
    let err = Interval::point(r.clone()).sub(pi);
    let d = Rational::from(record.prev.den.clone());
    let err_scaled = err.abs().scale(&(&d * &d));
    let coeff_ratio = Interval::point(Rational::new(record.a_next.clone(), record.convergent.den.clone())?);
    Ok(ApproxRecord {
        n: record.n,
        r,
        err,
        err_scaled,
        coeff_ratio,
    })
}

/// Records `0..depth` with error enclosures from `pi_interval(eps)`.
pub fn approx_sequence(seed: &Seed, depth: usize, eps: &Rational) -> Result<Vec<ApproxRecord>> {
    if depth == 0 {
        return Err(Error::Precondition("depth must be at least 1".into()));
    }
    let pi = pi_interval(eps)?;
    Refinement::new(seed, Strategy::default())
        .take(depth)
        .map(|rec| approx_record(&rec?, &pi))
        .collect()
}

/// Enclosures of `|r_{n+1} - π| / |r_n - π|` for consecutive records.
pub fn error_ratios(records: &[ApproxRecord]) -> Result<Vec<Interval>> {
    records
        .windows(2)
        .map(|w| w[1].err.abs().div(&w[0].err.abs()))
        .collect()
}

/// Whether the geometric mean of `ratios` is below `bound`, decided on the
/// product `Π ratios < bound^k`.
pub fn geometric_mean_below(ratios: &[Interval], bound: &Rational) -> Check {
    let product = ratios
        .iter()
        .fold(Interval::point(Rational::one()), |acc, r| acc.mul(r));
    let limit = bound.pow(ratios.len() as u32);
    if product.hi() < &limit {
        Check::Holds
    } else if product.lo() >= &limit {
        Check::Fails
    } else {
        Check::Inconclusive
    }
}

/// Comparison of `a_{-n-1}/D_n` with its limit `(π/4)/arctan u1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientAsymptotics {
    pub n: usize,
    pub ratio: Rational,
    /// Encloses `(π/4)/arctan u1`.
    pub limit: Interval,
    /// `|a0|/D_n^2`, which bounds `|ratio - limit|`.
    pub tolerance: Rational,
    pub within_tolerance: Check,
    /// First index from which every `a_{-n-1}` in the records is positive.
    pub positive_from: Option<usize>,
}

/// Checks the deepest record against `(π/4)/arctan u1`.
///
/// The limit equals `a0·α + a1` and the ratio equals `a0·N_n/D_n + a1`, so
/// their distance is `|a0|·|α - N_n/D_n| <= |a0|/D_n^2`.
pub fn coefficient_asymptotic_check(
    seed: &Seed,
    records: &[RefinementRecord],
    budget: PrecisionBudget,
) -> Result<CoefficientAsymptotics> {
    if records.len() < 3 {
        return Err(Error::Precondition("need at least 3 records".into()));
    }
    let last = records.last().expect("nonempty");
    let d = &last.convergent.den;
    let ratio = Rational::new(last.a_next.clone(), d.clone())?;
    let tolerance = Rational::new(BigInt::from(seed.a0().unsigned_abs()), d * d)?;
    let allowed = Interval::new(&ratio - &tolerance, &ratio + &tolerance)?;
    let limit_at = |eps: &Rational| -> Result<Interval> {
        let quarter_pi = pi_interval(eps)?.scale(&Rational::new(1, 4)?);
        quarter_pi.div(&crate::identity::arctan_enclosure(seed.u1(), eps)?)
    };
    let mut limit = limit_at(&Rational::pow10(-10))?;
    let within_tolerance = escalate(start_digits(d), budget, |eps| {
        limit = limit_at(eps)?;
        Ok(if allowed.contains_interval(&limit) {
            Some(true)
        } else if !allowed.intersects(&limit) {
            Some(false)
        } else {
            None
        })
    })?;
    let positive_from = records
        .iter()
        .rposition(|r| !r.a_next.is_positive())
        .map_or(Some(records[0].n), |i| records.get(i + 1).map(|r| r.n));
    Ok(CoefficientAsymptotics {
        n: last.n,
        ratio,
        limit,
        tolerance,
        within_tolerance,
        positive_from,
    })
}

/// Certified decimal digits of π and what it took to get them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitsReport {
    /// `3.` followed by the requested number of decimals.
    pub digits: String,
    pub n: usize,
    /// Series terms summed for `arctan u_n` and `arctan u_{n+1}`.
    pub terms: [usize; 2],
    /// Extra decimal places of precision requested beyond the minimum.
    pub guard: u32,
    pub enclosure: Interval,
}

/// Extra precision tried before giving up; each retry adds this many places.
const GUARD_STEP: u32 = 8;

/// π to `digits` decimals from record `n`'s identity.
///
/// The series term counts are fixed up front from the alternating-series
/// bound so the enclosure width stays below `10^-(digits + 2)`. Printed
/// digits are the common truncated prefix of both enclosure endpoints; when
/// the endpoints straddle a digit boundary the precision is raised and the
/// evaluation repeated.
pub fn pi_digits(seed: &Seed, n: usize, digits: u32, budget: PrecisionBudget) -> Result<DigitsReport> {
    if n < 1 {
        return Err(Error::Precondition("digits need n >= 1".into()));
    }
    if digits < 1 {
        return Err(Error::Precondition("need at least one digit".into()));
    }
    let record = Refinement::new(seed, Strategy::default())
        .nth(n)
        .ok_or_else(|| Error::Internal("stream ended early".into()))??;
    if record.u_n >= 1 {
        return Err(Error::Precondition(format!("u_{n} = {} is not below 1", record.u_n)));
    }
    let mut guard = 0;
    loop {
        let places = digits + 3 + guard;
        if !budget.allows_digits(places as u64) {
            return Err(Error::PrecisionExhausted(format!(
                "no certified {digits}-digit prefix within {} bits",
                budget.max_bits
            )));
        }
        let (enclosure, terms) = record_pi_enclosure(&record, places)?;
        let lo = enclosure.lo().to_decimal_trunc(digits as usize);
        let hi = enclosure.hi().to_decimal_trunc(digits as usize);
        if lo == hi {
            return Ok(DigitsReport {
                digits: lo,
                n,
                terms,
                guard,
                enclosure,
            });
        }
        guard += GUARD_STEP;
    }
}

/// `4(a·arctan u + b·arctan v)` of width at most `10^-places`, the two
/// arctangents evaluated on separate threads.
fn record_pi_enclosure(record: &RefinementRecord, places: u32) -> Result<(Interval, [usize; 2])> {
    let width = Rational::pow10(-(places as i32));
    let parts = [(&record.a_n, &record.u_n), (&record.a_prev, &record.u_next)];
    let plans = parts
        .iter()
        .map(|(a, u)| {
            // Each of the two terms gets half the width after scaling by 4|a|.
            let weight = Rational::from(BigInt::from(8) * a.abs());
            let k = arctan_term_count(u, &width.checked_div(&weight)?)?;
            Ok(k)
        })
        .collect::<Result<Vec<_>>>()?;
    let enclosures: Vec<Interval> = thread::scope(|s| {
        let handles: Vec<_> = parts
            .iter()
            .zip(&plans)
            .map(|((_, u), &k)| s.spawn(move || arctan_interval_with_terms(u, k)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("series thread")).collect()
    });
    let four = Rational::from_integer(4);
    let sum = parts
        .iter()
        .zip(&enclosures)
        .fold(Interval::point(Rational::zero()), |acc, ((a, _), e)| {
            acc.add(&e.scale(&Rational::from((*a).clone())))
        })
        .scale(&four);
    Ok((sum, [plans[0], plans[1]]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn first_approximations() {
        let a = approx_sequence(&Seed::euler(), 4, &Rational::pow10(-8)).unwrap();
        let r: Vec<_> = a.iter().map(|a| a.r.clone()).collect();
        assert_eq!(r, [q("10/3"), q("68/21"), q("1748/553"), q("216791924/68976559")]);
        assert_eq!(a[0].r.to_decimal_trunc(3), "3.333");
        // 10/3 - π = 0.1917406797435...
        assert!(a[0].err.contains(&q("0.191740679743")));
        assert!(a[0].err.width() <= Rational::pow10(-8));
    }

    #[test]
    fn coefficient_ratio_approaches_its_limit() {
        let seed = Seed::euler();
        let records = crate::refine::refine_stream(&seed, 6, Strategy::Doubling).unwrap();
        let c = coefficient_asymptotic_check(&seed, &records, PrecisionBudget::default()).unwrap();
        assert_eq!(c.ratio, q("83/34"));
        assert_eq!(c.within_tolerance, Check::Holds);
        assert_eq!(c.positive_from, Some(0));
        // (π/4)/arctan(1/3) = 2.44101...
        assert!(c.limit.lo() > &q("2.4410") && c.limit.hi() < &q("2.4411"));
    }

    #[test]
    fn digits_examples() {
        let seed = Seed::euler();
        let b = PrecisionBudget::default();
        assert_eq!(pi_digits(&seed, 2, 10, b).unwrap().digits, "3.1415926535");
        assert_eq!(pi_digits(&seed, 1, 1, b).unwrap().digits, "3.1");
        assert!(matches!(pi_digits(&seed, 0, 5, b), Err(Error::Precondition(_))));
    }

    #[test]
    fn deeper_records_need_fewer_terms() {
        let seed = Seed::euler();
        let b = PrecisionBudget::default();
        let shallow = pi_digits(&seed, 1, 50, b).unwrap();
        let deep = pi_digits(&seed, 3, 50, b).unwrap();
        assert_eq!(shallow.digits, deep.digits);
        assert!(deep.terms.iter().sum::<usize>() < shallow.terms.iter().sum::<usize>());
    }

    #[test]
    fn tiny_budget_is_a_precision_error() {
        let r = pi_digits(&Seed::euler(), 2, 40, PrecisionBudget::new(64));
        assert!(matches!(r, Err(Error::PrecisionExhausted(_))));
    }
}
