use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::{Error, Result};

/// Trial-division limit for squarefree extraction. Radicands whose square
/// part only involves primes above this bound are not fully reduced; the
/// extraction is exact for all radicands below `LIMIT³ = 10¹²`, far beyond
/// anything the desk-scale pipelines produce.
const TRIAL_LIMIT: u64 = 10_000;

/// Element `a + b·√d` of a real quadratic extension of the rationals.
///
/// Canonical form: `d` is a squarefree integer, `d > 1` whenever `b ≠ 0`,
/// and `d = 1` with `b = 0` for plain rationals. Canonical forms are unique
/// per value, so the derived structural equality is value equality: two
/// canonical values with `b ≠ 0` and different radicands denote different
/// reals (√d and √d' are independent over Q), and rational values compare as
/// rationals.
///
/// The derived `Ord` is structural — a deterministic total order used for
/// canonical sorting and deduplication, not the numeric order. Numeric
/// comparisons go through [`QuadExt::sign`] and [`QuadExt::cmp_value`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    #[serde(with = "bigint_string")]
    d: BigInt,
}

mod bigint_string {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        BigInt::from_str(&raw).map_err(de::Error::custom)
    }
}

/// Splits `n > 0` as `s²·d` with `d` squarefree (see [`TRIAL_LIMIT`]).
fn extract_square_part(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut square_root = BigInt::one();
    let mut squarefree = BigInt::one();
    let mut rest = n.clone();

    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(TRIAL_LIMIT);
    while &p * &p <= rest && p <= limit {
        if rest.is_multiple_of(&p) {
            let mut exp = 0u32;
            while rest.is_multiple_of(&p) {
                rest /= &p;
                exp += 1;
            }
            square_root *= p.pow(exp / 2);
            if exp % 2 == 1 {
                squarefree *= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }

    if !rest.is_one() {
        let root = rest.sqrt();
        if &root * &root == rest {
            square_root *= root;
        } else {
            squarefree *= rest;
        }
    }
    (square_root, squarefree)
}

impl QuadExt {
    /// Embeds a rational into the tower (`b = 0`, `d = 1`).
    pub fn from_rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        QuadExt::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        QuadExt::from_rational(Rational::one())
    }

    /// Canonical `a + b·√r` for a rational radicand `r ≥ 0`: square factors
    /// of `r` move into `b`, the radicand's denominator is rationalized, and
    /// a vanishing irrational part collapses to the rational form.
    pub fn with_radical(a: Rational, b: Rational, r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        if b.is_zero() || r.is_zero() {
            return Ok(QuadExt::from_rational(a));
        }
        // √(p/q) = √(p·q)/q with p·q > 0.
        let pq = r.numer() * r.denom();
        let (s, d) = extract_square_part(&pq);
        let scale = Rational::new(s, r.denom().clone());
        let b = b * scale;
        if d.is_one() {
            Ok(QuadExt::from_rational(a + b))
        } else {
            Ok(QuadExt { a, b, d })
        }
    }

    /// Canonical √r for rational `r ≥ 0`.
    pub fn sqrt(r: &Rational) -> Result<Self> {
        QuadExt::with_radical(Rational::zero(), Rational::one(), r)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Radicand both operands can live under, or an error when they span
    /// genuinely different quadratic fields.
    fn joint_radicand(&self, other: &QuadExt) -> Result<BigInt> {
        if self.b.is_zero() {
            Ok(other.d.clone())
        } else if other.b.is_zero() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(Error::IncommensurableFields)
        }
    }

    fn canonical(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() {
            QuadExt::from_rational(a)
        } else {
            debug_assert!(!d.is_one());
            QuadExt { a, b, d }
        }
    }

    pub fn add(&self, other: &QuadExt) -> Result<QuadExt> {
        let d = self.joint_radicand(other)?;
        Ok(QuadExt::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn sub(&self, other: &QuadExt) -> Result<QuadExt> {
        let d = self.joint_radicand(other)?;
        Ok(QuadExt::canonical(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn mul(&self, other: &QuadExt) -> Result<QuadExt> {
        let d = self.joint_radicand(other)?;
        let rad = Rational::from(d.clone());
        let a = &self.a * &other.a + &(&self.b * &other.b) * &rad;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadExt::canonical(a, b, d))
    }

    pub fn div(&self, other: &QuadExt) -> Result<QuadExt> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.joint_radicand(other)?;
        // (a + b√d)⁻¹ = (a − b√d) / (a² − b²d); the norm is nonzero because
        // √d is irrational for canonical d > 1.
        let norm = other.a.square() - other.b.square() * Rational::from(other.d.clone());
        debug_assert!(!norm.is_zero());
        let inv_norm = norm.recip().expect("nonzero norm");
        let inv = QuadExt::canonical(&other.a * &inv_norm, -(&other.b) * &inv_norm, d);
        self.mul(&inv)
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt::canonical(-&self.a, -&self.b, self.d.clone())
    }

    /// Self times a rational scalar; always stays in the same field.
    pub fn scale(&self, c: &Rational) -> QuadExt {
        QuadExt::canonical(&self.a * c, &self.b * c, self.d.clone())
    }

    /// Self plus a rational; always stays in the same field.
    pub fn add_rational(&self, c: &Rational) -> QuadExt {
        QuadExt::canonical(&self.a + c, self.b.clone(), self.d.clone())
    }

    pub fn square(&self) -> QuadExt {
        self.mul(self).expect("same field")
    }

    /// Exact sign of `a + b·√d`, decided by rational comparisons of `a²`
    /// against `b²·d` with case analysis on the signs of `a` and `b`.
    pub fn sign(&self) -> i32 {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: |a| vs |b|√d decides.
        let lhs = self.a.square();
        let rhs = self.b.square() * Rational::from(self.d.clone());
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Numeric comparison inside one quadratic field (sign of the
    /// difference). Errors on incommensurable operands.
    pub fn cmp_value(&self, other: &QuadExt) -> Result<std::cmp::Ordering> {
        Ok(match self.sub(other)?.sign() {
            s if s < 0 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        })
    }

    /// Approximate value for reports. Never used in predicates.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, self.b.abs(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        QuadExt::from_rational(a)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_rational(Rational::from(n))
    }
}
