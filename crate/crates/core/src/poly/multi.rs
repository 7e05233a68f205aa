use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{QuadExt, Rational};
use crate::Result;

/// Exponent triple of a monomial `x^i · y^j · z^k`.
///
/// Ordered by graded lexicographic order with `x > y > z`: higher total
/// degree first, ties broken lexicographically on `(i, j, k)`. This is the
/// one monomial order used everywhere — coefficient vectors, kernel bases
/// and canonical polynomial scaling all refer to it.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Monomial {
    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        Monomial { x, y, z }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y + self.z
    }

    /// All monomials of total degree ≤ `d`, largest (graded-lex) first.
    /// This fixed enumeration is the column order of every interpolation
    /// matrix, which makes kernel bases and tie-breaks reproducible.
    pub fn all_up_to_degree(d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for total in 0..=d {
            for x in 0..=total {
                for y in 0..=(total - x) {
                    out.push(Monomial::new(x, y, total - x - y));
                }
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| (self.x, self.y, self.z).cmp(&(other.x, other.y, other.z)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}y^{}z^{}", self.x, self.y, self.z)
    }
}

/// Multivariate polynomial over the rationals in variables `x, y, z`.
///
/// Terms are a map from exponent triples to nonzero coefficients; zero
/// coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::new(0, 0, 0), c);
        p
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn var_x() -> Self {
        MultiPoly::monomial(Monomial::new(1, 0, 0), Rational::one())
    }

    pub fn var_y() -> Self {
        MultiPoly::monomial(Monomial::new(0, 1, 0), Rational::one())
    }

    pub fn var_z() -> Self {
        MultiPoly::monomial(Monomial::new(0, 0, 1), Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c · m`, dropping the entry if the coefficient cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial (check [`is_zero`] first
    /// where the distinction matters).
    ///
    /// [`is_zero`]: MultiPoly::is_zero
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms largest monomial first.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(
                    Monomial::new(m1.x + m2.x, m1.y + m2.y, m1.z + m2.z),
                    c1 * c2,
                );
            }
        }
        out
    }

    pub fn eval(&self, x: &Rational, y: &Rational, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..m.x {
                term *= x;
            }
            for _ in 0..m.y {
                term *= y;
            }
            for _ in 0..m.z {
                term *= z;
            }
            acc += &term;
        }
        acc
    }

    /// Exact evaluation at a point with quadratic-extension coordinates.
    /// Errors only when the coordinates span incommensurable fields.
    pub fn eval_ext(&self, x: &QuadExt, y: &QuadExt, z: &QuadExt) -> Result<QuadExt> {
        let mut acc = QuadExt::zero();
        for (m, c) in &self.terms {
            let mut term = QuadExt::from_rational(c.clone());
            for _ in 0..m.x {
                term = term.mul(x)?;
            }
            for _ in 0..m.y {
                term = term.mul(y)?;
            }
            for _ in 0..m.z {
                term = term.mul(z)?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Coefficient vector over the fixed monomial enumeration.
    pub fn coeff_vector(&self, monomials: &[Monomial]) -> Vec<Rational> {
        monomials.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coeff_vector(monomials: &[Monomial], coeffs: &[Rational]) -> MultiPoly {
        debug_assert_eq!(monomials.len(), coeffs.len());
        MultiPoly::from_terms(
            monomials
                .iter()
                .zip(coeffs.iter())
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Canonical representative of the projective class: coprime integer
    /// coefficients with the leading (graded-lex largest) one positive.
    pub fn canonical_scaled(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let monos: Vec<Monomial> = self.terms.keys().rev().copied().collect();
        let coeffs: Vec<Rational> = monos.iter().map(|m| self.coeff(m)).collect();
        let ints = crate::scalar::scale_to_coprime_integers(&coeffs);
        MultiPoly::from_terms(
            monos
                .into_iter()
                .zip(ints.into_iter().map(Rational::from)),
        )
    }

    /// True when the two polynomials agree up to a nonzero rational factor.
    pub fn proportional_to(&self, other: &MultiPoly) -> bool {
        self.canonical_scaled() == other.canonical_scaled()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let vars: Vec<String> = [("x", m.x), ("y", m.y), ("z", m.z)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| {
                    if *e == 1 {
                        (*v).to_string()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == Rational::one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: [u32; 3],
    coeff: Rational,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms_desc()
            .map(|(m, c)| TermRepr {
                exp: [m.x, m.y, m.z],
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut poly = MultiPoly::zero();
        for t in terms {
            if t.coeff.is_zero() {
                return Err(D::Error::custom("zero coefficient stored in polynomial"));
            }
            let m = Monomial::new(t.exp[0], t.exp[1], t.exp[2]);
            if !poly.coeff(&m).is_zero() {
                return Err(D::Error::custom("duplicate exponent in polynomial"));
            }
            poly.add_term(m, t.coeff);
        }
        Ok(poly)
    }
}
