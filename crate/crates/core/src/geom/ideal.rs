//! Ideal points of circles: the two isotropic directions of a circle's
//! plane, i.e. the points where the plane's line at infinity meets the
//! conic `x² + y² + z² = 0, w = 0`.
//!
//! Two circles share their ideal pair exactly when their planes are equal
//! or parallel, so the pair is a canonical key for that relation.
//!
//! For a rational plane normal the isotropic directions generally involve a
//! real square root on top of the Gaussian unit: components live in
//! Q(i, √d) and are stored as complex numbers whose real and imaginary
//! parts are [`QuadExt`] values. Axis-aligned planes come out with plain
//! Gaussian-rational coordinates, e.g. `(1 : i : 0)` for any horizontal
//! plane.

use std::fmt;

use super::circle::Circle;
use crate::scalar::QuadExt;
use crate::Result;

/// Complex scalar with quadratic-extension components: `re + im·i` where
/// `re, im ∈ Q(√d)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtComplex {
    pub re: QuadExt,
    pub im: QuadExt,
}

impl ExtComplex {
    pub fn new(re: QuadExt, im: QuadExt) -> Self {
        ExtComplex { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExtComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, other: &ExtComplex) -> Result<ExtComplex> {
        Ok(ExtComplex {
            re: self.re.mul(&other.re)?.sub(&self.im.mul(&other.im)?)?,
            im: self.re.mul(&other.im)?.add(&self.im.mul(&other.re)?)?,
        })
    }

    pub fn div(&self, other: &ExtComplex) -> Result<ExtComplex> {
        // 1/(re + im·i) = (re − im·i)/(re² + im²); the denominator is a sum
        // of squares of reals, zero only for the zero complex number.
        let norm = other.re.square().add(&other.im.square())?;
        let num = self.mul(&other.conj())?;
        Ok(ExtComplex {
            re: num.re.div(&norm)?,
            im: num.im.div(&norm)?,
        })
    }
}

impl fmt::Debug for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})i", self.re, self.im)
    }
}

/// Unordered pair of isotropic projective directions, stored canonically:
/// each direction is scaled so its first nonzero component is 1, and the
/// two are sorted structurally. Structural equality is therefore equality
/// of the underlying point pairs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IdealPair {
    dirs: [[ExtComplex; 3]; 2],
}

impl IdealPair {
    pub fn directions(&self) -> &[[ExtComplex; 3]; 2] {
        &self.dirs
    }
}

fn canonical_direction(dir: [ExtComplex; 3]) -> [ExtComplex; 3] {
    let lead = dir
        .iter()
        .find(|c| !c.is_zero())
        .expect("projective direction is nonzero")
        .clone();
    [
        dir[0].div(&lead).expect("shared field"),
        dir[1].div(&lead).expect("shared field"),
        dir[2].div(&lead).expect("shared field"),
    ]
}

/// The two ideal points of a circle. Depends only on the plane normal (up
/// to scale), never on the center or radius.
pub fn ideal_points(circle: &Circle) -> IdealPair {
    let frame = circle.frame();
    // Isotropic directions e1 ± i·s·e2 with s = √(|e1|²/|e2|²):
    // (e1 + t·e2)·(e1 + t·e2) = |e1|² + t²|e2|² vanishes at t = ±i·s.
    let ratio = &frame.e1_sq * frame.e2_sq.recip().expect("nonzero basis vector");
    let s = QuadExt::sqrt(&ratio).expect("positive ratio");

    let build = |sign: i64| -> [ExtComplex; 3] {
        let factor = s.scale(&sign.into());
        [
            ExtComplex::new(
                QuadExt::from_rational(frame.e1.x.clone()),
                factor.scale(&frame.e2.x),
            ),
            ExtComplex::new(
                QuadExt::from_rational(frame.e1.y.clone()),
                factor.scale(&frame.e2.y),
            ),
            ExtComplex::new(
                QuadExt::from_rational(frame.e1.z.clone()),
                factor.scale(&frame.e2.z),
            ),
        ]
    };

    let mut dirs = [
        canonical_direction(build(1)),
        canonical_direction(build(-1)),
    ];
    dirs.sort();
    IdealPair { dirs }
}

/// Componentwise check that a direction satisfies `x² + y² + z² = 0`; used
/// by the test suite to validate constructions.
pub fn is_isotropic(dir: &[ExtComplex; 3]) -> Result<bool> {
    let mut re = QuadExt::zero();
    let mut im = QuadExt::zero();
    for c in dir {
        let sq = c.mul(c)?;
        re = re.add(&sq.re)?;
        im = im.add(&sq.im)?;
    }
    Ok(re.is_zero() && im.is_zero())
}
