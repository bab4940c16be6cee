//! Rigorous arctangent and π enclosures from the Gregory–Leibniz series.
//!
//! For `0 < x < 1` the series `Σ (-1)^j x^(2j+1)/(2j+1)` alternates with
//! strictly decreasing terms, so `arctan x` lies between any two consecutive
//! partial sums and the gap is exactly the first omitted term.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{Interval, Rational};

/// Terms the default π enclosure is built on: `arctan(1/2) + arctan(1/3) = π/4`.
pub const EULER_TERMS: [(i64, i64, i64); 2] = [(1, 1, 2), (1, 1, 3)];

fn check_series_domain(x: &Rational) -> Result<()> {
    if x.is_negative() || *x >= 1 {
        return Err(Error::Domain(format!(
            "arctan series needs 0 <= x < 1, got {x}"
        )));
    }
    Ok(())
}

fn check_eps(eps: &Rational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    Ok(())
}

/// Smallest `k` such that the first omitted term `x^(2k+1)/(2k+1)` is at
/// most `eps`; summing `k` terms then leaves a tail no larger than `eps`.
pub fn arctan_term_count(x: &Rational, eps: &Rational) -> Result<usize> {
    check_series_domain(x)?;
    check_eps(eps)?;
    if x.is_zero() {
        return Ok(0);
    }
    // x^(2k+1) <= eps (2k+1) with x = p/d, checked on integers:
    // p^(2k+1) * eps.den <= eps.num * (2k+1) * d^(2k+1)
    let (p, d) = (x.numer(), x.denom());
    let (p2, d2) = (p * p, d * d);
    let (mut ppow, mut dpow) = (p.clone(), d.clone());
    let mut k = 0usize;
    loop {
        let lhs = &ppow * eps.denom();
        let rhs = eps.numer() * BigInt::from(2 * k + 1) * &dpow;
        if lhs <= rhs {
            return Ok(k);
        }
        ppow *= &p2;
        dpow *= &d2;
        k += 1;
    }
}

/// Partial sum of the first `k` series terms, combined over one common
/// denominator so only a single reduction happens.
pub fn arctan_partial_sum(x: &Rational, k: usize) -> Rational {
    if k == 0 || x.is_zero() {
        return Rational::zero();
    }
    let (p, d) = (x.numer(), x.denom());
    let lcm = (1..k)
        .map(|j| BigInt::from(2 * j + 1))
        .fold(BigInt::one(), |acc, m| acc.lcm(&m));
    let (y, z) = (p * p, d * d);
    // acc_m = Σ_{j<=m} c_j y^j z^(m-j), c_j = (-1)^j lcm/(2j+1)
    let mut acc = lcm.clone();
    let mut ypow = BigInt::one();
    for j in 1..k {
        ypow *= &y;
        let c = &lcm / BigInt::from(2 * j + 1);
        acc = acc * &z + if j % 2 == 0 { c * &ypow } else { -(c * &ypow) };
    }
    let den = lcm * d.pow((2 * k - 1) as u32);
    Rational::new(acc * p, den).expect("positive denominator")
}

/// The `k`-th series term `(-1)^k x^(2k+1)/(2k+1)`.
fn arctan_term(x: &Rational, k: usize) -> Rational {
    let t = x.pow((2 * k + 1) as u32);
    let t = t.checked_div(&Rational::from_integer(2 * k as i64 + 1)).expect("odd divisor");
    if k.is_multiple_of(2) {
        t
    } else {
        -t
    }
}

/// Enclosure of `arctan x` of width at most `eps`, for `0 <= x < 1`.
///
/// The endpoints are the partial sums with `k` and `k + 1` terms, where `k`
/// comes from [`arctan_term_count`].
pub fn arctan_interval(x: &Rational, eps: &Rational) -> Result<Interval> {
    let k = arctan_term_count(x, eps)?;
    Ok(arctan_interval_with_terms(x, k))
}

/// Enclosure between the partial sums with `k` and `k + 1` terms.
pub fn arctan_interval_with_terms(x: &Rational, k: usize) -> Interval {
    if x.is_zero() {
        return Interval::point(Rational::zero());
    }
    let s_k = arctan_partial_sum(x, k);
    let s_next = &s_k + arctan_term(x, k);
    Interval::hull(s_k, s_next)
}

/// Enclosure of `4 · Σ coef_i · arctan(arg_i)` of width at most `eps`.
///
/// The terms must form an identity summing to π/4 for the result to enclose
/// π; this function only does the arithmetic. Every argument must be < 1.
pub fn pi_interval_from_terms(terms: &[(i64, Rational)], eps: &Rational) -> Result<Interval> {
    check_eps(eps)?;
    if terms.is_empty() {
        return Err(Error::Domain("no terms".into()));
    }
    let mut acc = Interval::point(Rational::zero());
    for (coef, arg) in terms {
        let weight = Rational::from_integer(4 * coef.unsigned_abs() as i64 * terms.len() as i64);
        let term_eps = eps.checked_div(&weight)?;
        let enc = arctan_interval(arg, &term_eps)?;
        acc = acc.add(&enc.scale(&Rational::from_integer(4 * coef)));
    }
    Ok(acc)
}

/// Enclosure of π of width at most `eps`, from `arctan(1/2) + arctan(1/3) = π/4`.
pub fn pi_interval(eps: &Rational) -> Result<Interval> {
    let terms: Vec<(i64, Rational)> = EULER_TERMS
        .iter()
        .map(|&(c, p, q)| (c, Rational::new(p, q).expect("nonzero")))
        .collect();
    pi_interval_from_terms(&terms, eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    /// Independent oracle: plain rational summation term by term.
    fn naive_partial_sum(x: &Rational, k: usize) -> Rational {
        (0..k).fold(Rational::zero(), |acc, j| {
            let t = x.pow((2 * j + 1) as u32).checked_div(&Rational::from_integer(2 * j as i64 + 1)).unwrap();
            if j % 2 == 0 {
                acc + t
            } else {
                acc - t
            }
        })
    }

    #[test]
    fn common_denominator_sum_matches_naive_sum() {
        for x in ["1/2", "1/3", "3/79", "24478/873121", "99/100"] {
            for k in 0..25 {
                assert_eq!(arctan_partial_sum(&q(x), k), naive_partial_sum(&q(x), k), "x={x} k={k}");
            }
        }
    }

    #[test]
    fn zero_argument_is_exact() {
        assert_eq!(arctan_interval(&q("0"), &q("1/10")).unwrap(), Interval::point(q("0")));
    }

    #[test]
    fn arctan_half_and_third() {
        let eps = q("1e-6");
        for (x, approx) in [("1/2", "0.4636476"), ("1/3", "0.3217505")] {
            let oracle = naive_partial_sum(&q(x), 20);
            let enc = arctan_interval(&q(x), &eps).unwrap();
            assert!(enc.width() <= eps);
            // The 20-term oracle is within 1e-12 of arctan x for both arguments.
            assert!((enc.midpoint() - &oracle).abs() <= eps);
            assert!((enc.midpoint() - q(approx)).abs() <= q("2e-6"));
        }
    }

    #[test]
    fn domain_is_enforced() {
        assert!(matches!(arctan_interval(&q("1"), &q("1/10")), Err(Error::Domain(_))));
        assert!(matches!(arctan_interval(&q("-1/2"), &q("1/10")), Err(Error::Domain(_))));
        assert!(matches!(arctan_interval(&q("1/2"), &q("0")), Err(Error::Domain(_))));
    }

    #[test]
    fn term_count_is_minimal() {
        let x = q("1/5");
        let eps = q("1e-20");
        let k = arctan_term_count(&x, &eps).unwrap();
        let term = |k: usize| x.pow((2 * k + 1) as u32).checked_div(&Rational::from_integer(2 * k as i64 + 1)).unwrap();
        assert!(term(k) <= eps);
        assert!(term(k - 1) > eps);
    }

    #[test]
    fn pi_enclosures_have_requested_width() {
        for e in [-3, -6, -12] {
            let eps = Rational::pow10(e);
            let pi = pi_interval(&eps).unwrap();
            assert!(pi.width() <= eps);
            let known = Interval::new(q("3.14159265358979"), q("3.14159265358980")).unwrap();
            assert!(pi.intersects(&known));
        }
        // 355/113 - 0.00027 sits 2.7e-4 below pi, so a valid enclosure of
        // width 1e-3 is only guaranteed to come within eps of it.
        let eps = q("1e-3");
        let pi = pi_interval(&eps).unwrap();
        let target = q("355/113") - q("0.00027");
        assert!(pi.lo() - &eps <= target && target <= pi.hi() + &eps);
        let eps = q("1e-15");
        let pi = pi_interval(&eps).unwrap();
        let machin = pi_interval_from_terms(&[(4, q("1/5")), (-1, q("1/239"))], &eps).unwrap();
        assert!(pi.intersects(&machin));
        let target = q("3.141592653589793");
        assert!(pi.lo() - &eps <= target && target <= pi.hi() + &eps);
    }
}
