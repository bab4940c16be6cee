//! Deciding `tan(Σ c_i·arctan u_i) = 1` without forming the product.
//!
//! Write `z_i = den_i + i·num_i`. The claim is `Π z_i^c_i ∈ (1 + i)·Q*`.
//! Each `z_i` is primitive (no rational prime divides it), so for every split
//! prime `p = π·π̄` it is divisible by at most one of `π`, `π̄`. The claim
//! holds iff
//!
//! 1. for every split prime the signed valuations cancel:
//!    `Σ c_i (v_π(z_i) - v_π̄(z_i)) = 0`, and
//! 2. what is left, a rational times a unit times a power of `1 + i`, points
//!    along `±(1 + i)`.
//!
//! Primes are never factored. The odd parts of the norms `|z_i|^2` are split
//! into a pairwise coprime base; at each base element `b` the side of `z_i`
//! is encoded by `t_i = -den_i / num_i mod b`, a square root of -1 that
//! agrees between two terms exactly at the primes where they share a side.
//! Splitting `b` along `gcd(b, t_i - t_j)` until all sides are uniform makes
//! condition 1 one integer equation per base element. Condition 2 is read off
//! the product reduced modulo an inert prime `P ≡ 3 (mod 4)`: the leftover
//! rational factor is built from split primes and 2 only, so it survives the
//! reduction and `re ≡ im (mod P)` holds exactly for the `±(1 + i)` direction.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Inert prime used for the direction residue: `2^61 - 1 ≡ 3 (mod 4)`.
pub const INERT_PRIME: u64 = (1 << 61) - 1;

/// Signed valuation totals at one coprime base element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceBlock {
    pub base: BigUint,
    /// `Σ c_i·e_i` over terms on the reference side.
    pub reference_side: i128,
    /// `Σ c_i·e_i` over terms on the conjugate side.
    pub conjugate_side: i128,
}

impl BalanceBlock {
    pub fn is_balanced(&self) -> bool {
        self.reference_side == self.conjugate_side
    }
}

/// Evidence that the combination's tangent is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceWitness {
    pub blocks: Vec<BalanceBlock>,
    /// The product reduced into `F_P[i]`, as `(re, im)`.
    pub residue: (u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceOutcome {
    One(BalanceWitness),
    /// Some base element is unbalanced.
    Unbalanced(BalanceBlock),
    /// Balanced, but the residue is not along `±(1 + i)`; the tangent is
    /// 0, -1, or a pole.
    WrongDirection((u64, u64)),
}

struct Term {
    coef: i64,
    x: BigUint,
    y: BigUint,
    odd_norm: BigUint,
}

/// Runs the balance test on `(coef, arg)` pairs with positive arguments.
pub fn balance_test(terms: &[(i64, Rational)]) -> Result<BalanceOutcome> {
    let terms = terms
        .iter()
        .map(|(coef, arg)| {
            if !arg.is_positive() {
                return Err(Error::Domain(format!("arctan argument must be positive, got {arg}")));
            }
            let x = arg.denom().to_biguint().expect("positive");
            let y = arg.numer().to_biguint().expect("positive");
            let norm = &x * &x + &y * &y;
            let odd_norm = &norm >> norm.trailing_zeros().unwrap_or(0);
            Ok(Term { coef: *coef, x, y, odd_norm })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut base = coprime_base(terms.iter().map(|t| t.odd_norm.clone()).collect());
    refine_by_side(&mut base, &terms)?;

    let mut blocks = Vec::with_capacity(base.len());
    for b in &base {
        let members: Vec<(usize, u32)> = terms
            .iter()
            .enumerate()
            .filter_map(|(i, t)| {
                let e = multiplicity(&t.odd_norm, b);
                (e > 0).then_some((i, e))
            })
            .collect();
        let reference = side_residue(&terms[members[0].0], b)?;
        let mut block = BalanceBlock {
            base: b.clone(),
            reference_side: 0,
            conjugate_side: 0,
        };
        for &(i, e) in &members {
            let weight = terms[i].coef as i128 * e as i128;
            match same_side(&side_residue(&terms[i], b)?, &reference, b)? {
                true => block.reference_side += weight,
                false => block.conjugate_side += weight,
            }
        }
        if !block.is_balanced() {
            return Ok(BalanceOutcome::Unbalanced(block));
        }
        blocks.push(block);
    }

    let residue = product_mod_inert(&terms);
    if residue.0 == residue.1 {
        Ok(BalanceOutcome::One(BalanceWitness { blocks, residue }))
    } else {
        Ok(BalanceOutcome::WrongDirection(residue))
    }
}

/// Pairwise coprime base whose products of powers give every input.
pub(crate) fn coprime_base(values: Vec<BigUint>) -> Vec<BigUint> {
    let mut base: Vec<BigUint> = values.into_iter().filter(|v| !v.is_one()).collect();
    base.sort();
    base.dedup();
    'restart: loop {
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if g.is_one() {
                    continue;
                }
                let y = base.swap_remove(j);
                let x = base.swap_remove(i);
                // x·y shrinks to x·y/g, so this terminates.
                for v in [&x / &g, &y / &g, g] {
                    if !v.is_one() {
                        base.push(v);
                    }
                }
                base.sort();
                base.dedup();
                continue 'restart;
            }
        }
        return base;
    }
}

/// Largest `e` with `b^e | n`.
fn multiplicity(n: &BigUint, b: &BigUint) -> u32 {
    let mut e = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(b);
        if !r.is_zero() {
            return e;
        }
        rest = q;
        e += 1;
    }
}

/// `-x/y mod b`, a square root of -1 modulo `b` whenever `b` divides the norm.
fn side_residue(t: &Term, b: &BigUint) -> Result<BigUint> {
    let y_inv = BigInt::from(t.y.clone())
        .modinv(&BigInt::from(b.clone()))
        .ok_or_else(|| Error::Internal("argument numerator shares a factor with its norm".into()))?;
    let y_inv = y_inv.to_biguint().expect("modinv is non-negative");
    let prod = (&t.x % b) * y_inv % b;
    Ok((b - prod) % b)
}

/// Whether two side residues agree modulo every prime of `b`.
fn same_side(t: &BigUint, reference: &BigUint, b: &BigUint) -> Result<bool> {
    if ((t + b - reference) % b).is_zero() {
        Ok(true)
    } else if ((t + reference) % b).is_zero() {
        Ok(false)
    } else {
        Err(Error::Internal(format!("base element {b} has mixed sides")))
    }
}

/// Splits base elements until every term sits on a single side of each.
fn refine_by_side(base: &mut Vec<BigUint>, terms: &[Term]) -> Result<()> {
    'restart: loop {
        for bi in 0..base.len() {
            let b = base[bi].clone();
            let members: Vec<&Term> = terms.iter().filter(|t| (&t.odd_norm % &b).is_zero()).collect();
            let Some(first) = members.first() else {
                continue;
            };
            let reference = side_residue(first, &b)?;
            for t in &members[1..] {
                let r = side_residue(t, &b)?;
                let d = ((r + &b - &reference) % &b).gcd(&b);
                if !d.is_one() && d != b {
                    base.swap_remove(bi);
                    base.push(&b / &d);
                    base.push(d);
                    continue 'restart;
                }
            }
        }
        return Ok(());
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Fp2 {
    re: u64,
    im: u64,
}

const P: u128 = INERT_PRIME as u128;

impl Fp2 {
    const ONE: Fp2 = Fp2 { re: 1, im: 0 };

    fn mul(self, o: Fp2) -> Fp2 {
        let (a, b, c, d) = (self.re as u128, self.im as u128, o.re as u128, o.im as u128);
        let re = (a * c % P + P - b * d % P) % P;
        let im = (a * d % P + b * c % P) % P;
        Fp2 { re: re as u64, im: im as u64 }
    }

    fn pow(self, mut e: u64) -> Fp2 {
        let (mut acc, mut base) = (Fp2::ONE, self);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    fn inverse(self) -> Fp2 {
        let (a, b) = (self.re as u128, self.im as u128);
        let norm = Fp2 { re: ((a * a + b * b) % P) as u64, im: 0 };
        let inv = norm.pow(INERT_PRIME - 2).re as u128;
        Fp2 {
            re: (a * inv % P) as u64,
            im: ((P - b) % P * inv % P) as u64,
        }
    }
}

fn reduce(n: &BigUint) -> u64 {
    (n % INERT_PRIME).to_u64().expect("reduced below 2^61")
}

/// `Π z_i^c_i` in `F_P[i]`. Every `z_i` is a unit there because `P` is inert
/// and `z_i` is primitive.
fn product_mod_inert(terms: &[Term]) -> (u64, u64) {
    let acc = terms.iter().fold(Fp2::ONE, |acc, t| {
        let z = Fp2 { re: reduce(&t.x), im: reduce(&t.y) };
        let z = if t.coef < 0 { z.inverse() } else { z };
        acc.mul(z.pow(t.coef.unsigned_abs()))
    });
    (acc.re, acc.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn is_one(terms: &[(i64, &str)]) -> bool {
        let terms: Vec<_> = terms.iter().map(|&(c, u)| (c, q(u))).collect();
        matches!(balance_test(&terms).unwrap(), BalanceOutcome::One(_))
    }

    #[test]
    fn coprime_base_of_prime_powers() {
        let v = |n: u64| BigUint::from(n);
        assert_eq!(coprime_base(vec![v(125), v(625)]), vec![v(5)]);
        assert_eq!(coprime_base(vec![v(12), v(18)]), vec![v(2), v(3)]);
        assert_eq!(coprime_base(vec![v(1), v(65), v(85)]), vec![v(5), v(13), v(17)]);
    }

    #[test]
    fn classical_identities_are_balanced() {
        assert!(is_one(&[(1, "1/2"), (1, "1/3")]));
        assert!(is_one(&[(4, "1/5"), (-1, "1/239")]));
        assert!(is_one(&[(12, "1/18"), (8, "1/57"), (-5, "1/239")]));
        assert!(is_one(&[(1, "2"), (-1, "1/3")]));
        assert!(is_one(&[(1, "1")]));
    }

    #[test]
    fn wrong_tangents_are_rejected() {
        assert!(!is_one(&[(1, "1/2"), (1, "1/4")]));
        assert!(!is_one(&[(4, "1/5"), (1, "1/239")]));
        // tan(2·arctan 1) is a pole; tan(3·arctan 1) = -1.
        assert!(!is_one(&[(2, "1")]));
        assert!(!is_one(&[(3, "1")]));
        // Balanced at 5 but pointing along 1 - i: tan = -1.
        assert!(!is_one(&[(-1, "1/2"), (-1, "1/3")]));
    }

    #[test]
    fn sides_split_a_shared_composite_norm() {
        // 1 + 8i and 4 + 7i both have norm 65 = 5·13 but sit on different
        // sides of 5 and the same side of 13 (or vice versa).
        let terms = vec![(1, q("8")), (1, q("7/4"))];
        let outcome = balance_test(&terms).unwrap();
        assert!(matches!(outcome, BalanceOutcome::Unbalanced(_)));
    }

    #[test]
    fn five_pi_over_four_passes_the_tangent_test() {
        // Only the interval stage can reject this one.
        assert!(is_one(&[(5, "1/2"), (5, "1/3")]));
    }
}
