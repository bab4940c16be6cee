//! Cap on adaptive interval precision.

use crate::error::Result;
use crate::exact::Rational;

/// Environment variable overriding [`DEFAULT_MAX_PRECISION_BITS`].
pub const MAX_PRECISION_ENV: &str = "MACHIN_REFINE_MAX_PRECISION_BITS";

pub const DEFAULT_MAX_PRECISION_BITS: u64 = 1 << 16;

/// Upper bound on the precision, in bits, that any escalation loop may
/// request before giving up with an inconclusive outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionBudget {
    pub max_bits: u64,
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        PrecisionBudget {
            max_bits: DEFAULT_MAX_PRECISION_BITS,
        }
    }
}

impl PrecisionBudget {
    pub fn new(max_bits: u64) -> Self {
        PrecisionBudget { max_bits }
    }

    /// Reads [`MAX_PRECISION_ENV`], falling back to the default when unset
    /// or unparsable.
    pub fn from_env() -> Self {
        std::env::var(MAX_PRECISION_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&b| b > 0)
            .map(PrecisionBudget::new)
            .unwrap_or_default()
    }

    pub fn allows_bits(&self, bits: u64) -> bool {
        bits <= self.max_bits
    }

    /// Whether `10^-digits` is within the cap.
    pub fn allows_digits(&self, digits: u64) -> bool {
        // log2(10) < 3.33
        self.allows_bits(digits.saturating_mul(333) / 100)
    }
}

/// Outcome of an interval comparison between transcendental quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Holds,
    Fails,
    /// Not separated before the precision cap.
    Inconclusive,
}

/// Runs `decide` at `eps = 10^-digits`, doubling `digits` until it returns
/// an answer or the budget runs out.
pub fn escalate(
    start_digits: u64,
    budget: PrecisionBudget,
    mut decide: impl FnMut(&Rational) -> Result<Option<bool>>,
) -> Result<Check> {
    let mut digits = start_digits;
    while budget.allows_digits(digits) {
        match decide(&Rational::pow10(-(digits as i32)))? {
            Some(true) => return Ok(Check::Holds),
            Some(false) => return Ok(Check::Fails),
            None => digits *= 2,
        }
    }
    Ok(Check::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_and_bit_caps() {
        let b = PrecisionBudget::new(100);
        assert!(b.allows_bits(100));
        assert!(!b.allows_bits(101));
        assert!(b.allows_digits(30));
        assert!(!b.allows_digits(31));
    }
}
