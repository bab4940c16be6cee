//! Gaussian integers and Gaussian rationals.
//!
//! Multiplying `1 + i·u` factors adds the angles `arctan u`, so the tangent
//! of any integer combination of arctangents is the ratio `im/re` of a
//! product. This is the exact carrier for the arctangent addition and
//! subtraction formulas applied any number of times.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// `re + i·im` with integer parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianInteger {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInteger {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInteger {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn one() -> Self {
        GaussianInteger::new(1, 0)
    }

    /// `den + i·num` for `u = num/den`: a positive real multiple of `1 + i·u`,
    /// so it carries the angle `arctan u` with integral parts.
    pub fn from_tangent(u: &Rational) -> Self {
        GaussianInteger {
            re: u.denom().clone(),
            im: u.numer().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianInteger {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn mul(&self, other: &GaussianInteger) -> GaussianInteger {
        // Three multiplications instead of four.
        let ac = &self.re * &other.re;
        let bd = &self.im * &other.im;
        let cross = (&self.re + &self.im) * (&other.re + &other.im);
        GaussianInteger {
            im: cross - &ac - &bd,
            re: ac - bd,
        }
    }

    pub fn square(&self) -> GaussianInteger {
        GaussianInteger {
            re: (&self.re + &self.im) * (&self.re - &self.im),
            im: (&self.re * &self.im) << 1u32,
        }
    }

    /// `self^exp` by square-and-multiply.
    pub fn pow(&self, mut exp: u64) -> GaussianInteger {
        let mut acc = GaussianInteger::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Power with a signed exponent, up to a positive real factor: negative
    /// exponents use the conjugate (`z^-k = conj(z)^k / |z|^2k`).
    pub fn pow_direction(&self, exp: i64) -> GaussianInteger {
        if exp >= 0 {
            self.pow(exp as u64)
        } else {
            self.conj().pow(exp.unsigned_abs())
        }
    }

    /// `im/re` as a reduced rational.
    pub fn tangent(&self) -> Result<Rational> {
        if self.re.is_zero() {
            return Err(Error::Pole);
        }
        Rational::new(self.im.clone(), self.re.clone())
    }
}

impl fmt::Debug for GaussianInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {}i)", self.re, if self.im.is_negative() { '-' } else { '+' }, self.im.abs())
    }
}

/// `re + i·im` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }

    /// `1 + i·u`.
    pub fn from_tangent(u: &Rational) -> Self {
        GaussianRational::new(Rational::one(), u.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn mul(&self, other: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn inverse(&self) -> Result<GaussianRational> {
        if self.is_zero() {
            return Err(Error::ZeroPower);
        }
        let n = self.norm();
        Ok(GaussianRational {
            re: self.re.checked_div(&n)?,
            im: (-&self.im).checked_div(&n)?,
        })
    }

    /// Exact `self^k` by square-and-multiply.
    ///
    /// For `k < 0` this returns the true inverse power `(z^-1)^|k|`, not a
    /// rescaled conjugate power. Callers that only need the direction can use
    /// [`GaussianInteger::pow_direction`], which skips the division.
    pub fn pow(&self, k: i64) -> Result<GaussianRational> {
        if self.is_zero() {
            return Err(Error::ZeroPower);
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut acc = GaussianRational::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `im/re`, the tangent of the argument.
    pub fn tangent(&self) -> Result<Rational> {
        self.im.checked_div(&self.re).map_err(|_| Error::Pole)
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

/// Product `Π (den_i + i·num_i)^coef_i`, conjugating for negative
/// coefficients. Its argument is `Σ coef_i·arctan(arg_i)` and all parts stay
/// integral.
pub fn combination_product(terms: &[(i64, Rational)]) -> Result<GaussianInteger> {
    let mut acc = GaussianInteger::one();
    for (coef, arg) in terms {
        if !arg.is_positive() {
            return Err(Error::Domain(format!("arctan argument must be positive, got {arg}")));
        }
        acc = acc.mul(&GaussianInteger::from_tangent(arg).pow_direction(*coef));
    }
    Ok(acc)
}

/// `tan(Σ coef_i·arctan(arg_i))`, exactly.
///
/// Fails with [`Error::Pole`] when the combination is an odd multiple of π/2.
/// Since tan has period π no range condition on the angle sum is needed.
pub fn tan_combination(terms: &[(i64, Rational)]) -> Result<Rational> {
    combination_product(terms)?.tangent()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn gr(re: &str, im: &str) -> GaussianRational {
        GaussianRational::new(q(re), q(im))
    }

    #[test]
    fn one_plus_i_squared() {
        assert_eq!(gr("1", "1").mul(&gr("1", "1")), gr("0", "2"));
    }

    #[test]
    fn euler_product_has_equal_parts() {
        let p = gr("1", "1/2").mul(&gr("1", "1/3"));
        assert_eq!(p, gr("5/6", "5/6"));
    }

    #[test]
    fn multiplicative_identity() {
        let z = gr("3/7", "-2/5");
        assert_eq!(z.mul(&GaussianRational::one()), z);
    }

    #[test]
    fn fourth_power_by_repeated_multiplication() {
        let z = gr("1", "1/5");
        let folded = (0..4).fold(GaussianRational::one(), |acc, _| acc.mul(&z));
        assert_eq!(folded, gr("476/625", "480/625"));
        assert_eq!(z.pow(4).unwrap(), folded);
    }

    #[test]
    fn zeroth_power_and_inverse() {
        assert_eq!(gr("2", "3").pow(0).unwrap(), GaussianRational::one());
        assert_eq!(gr("1", "1").pow(-1).unwrap(), gr("1/2", "-1/2"));
        assert_eq!(
            GaussianRational::default().pow(-1),
            Err(Error::ZeroPower)
        );
    }

    #[test]
    fn tangent_combinations_of_classical_formulas() {
        assert_eq!(tan_combination(&[(4, q("1/5")), (-1, q("1/239"))]).unwrap(), q("1"));
        assert_eq!(tan_combination(&[(1, q("1/2")), (1, q("1/3"))]).unwrap(), q("1"));
        assert_eq!(tan_combination(&[(1, q("7/9")), (-1, q("7/9"))]).unwrap(), q("0"));
    }

    #[test]
    fn pole_is_reported() {
        // 2·arctan(1) = π/2.
        assert_eq!(tan_combination(&[(2, q("1"))]), Err(Error::Pole));
    }

    #[test]
    fn non_positive_arguments_are_rejected() {
        assert!(matches!(tan_combination(&[(1, q("0"))]), Err(Error::Domain(_))));
        assert!(matches!(tan_combination(&[(1, q("-1/2"))]), Err(Error::Domain(_))));
    }

    #[test]
    fn integer_and_rational_powers_agree_on_direction() {
        let u = q("3/79");
        for k in -6i64..=6 {
            let a = GaussianInteger::from_tangent(&u).pow_direction(k).tangent().unwrap();
            let b = GaussianRational::from_tangent(&u).pow(k).unwrap().tangent().unwrap();
            assert_eq!(a, b, "k = {k}");
        }
    }
}
