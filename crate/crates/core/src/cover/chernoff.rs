//! Multiplicative tail-bound calculators for sums of independent
//! Bernoulli(p) variables: the upper tail `P(mean ≥ 2p) ≤ exp(−np/4)` and
//! the lower tail `P(mean ≤ p/2) ≤ exp(−np/8)`. Exponents are exact
//! rationals; only the final bound is a float.

use serde::Serialize;

use crate::scalar::Rational;
use crate::{Error, Result};

/// An exponential tail bound `exp(exponent)` with the exponent kept exact.
#[derive(Clone, Debug, Serialize)]
pub struct ChernoffBound {
    pub exponent: Rational,
    pub bound: f64,
}

fn tail(n: u64, p: &Rational, divisor: i64) -> Result<ChernoffBound> {
    if p.is_negative() || *p > Rational::one() {
        return Err(Error::ProbabilityOutOfRange);
    }
    let exponent = -(Rational::from(n as i64) * p) * Rational::new(1, divisor);
    let bound = exponent.to_f64().exp();
    Ok(ChernoffBound { exponent, bound })
}

/// Upper tail: exponent `−np/4`.
pub fn chernoff_upper(n: u64, p: &Rational) -> Result<ChernoffBound> {
    tail(n, p, 4)
}

/// Lower tail: exponent `−np/8`.
pub fn chernoff_lower(n: u64, p: &Rational) -> Result<ChernoffBound> {
    tail(n, p, 8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn upper_tail_examples() {
        let b = chernoff_upper(100, &r(1, 2)).unwrap();
        assert_eq!(b.exponent, r(-25, 2));
        assert!((b.bound - (-12.5f64).exp()).abs() < 1e-18);

        let b = chernoff_upper(0, &r(1, 3)).unwrap();
        assert_eq!(b.exponent, Rational::zero());
        assert_eq!(b.bound, 1.0);

        let b = chernoff_upper(400, &r(1, 4)).unwrap();
        assert_eq!(b.exponent, Rational::from(-25));
    }

    #[test]
    fn lower_tail_divisor() {
        let b = chernoff_lower(400, &r(1, 4)).unwrap();
        assert_eq!(b.exponent, r(-25, 2));
    }

    #[test]
    fn probability_domain_enforced() {
        assert_eq!(
            chernoff_upper(10, &r(3, 2)).unwrap_err(),
            Error::ProbabilityOutOfRange
        );
        assert_eq!(
            chernoff_lower(10, &r(-1, 2)).unwrap_err(),
            Error::ProbabilityOutOfRange
        );
    }
}
