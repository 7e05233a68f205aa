use std::fmt;

use serde::ser::SerializeStruct;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::point::{Point3, RatPoint3};
use crate::scalar::{scale_to_coprime_integers, Rational};
use crate::{Error, Result};

/// Circle in R³: supporting plane `normal · x = offset`, center on that
/// plane, and squared radius.
///
/// Only the squared radius is stored — the radius itself is usually
/// irrational, while every predicate below is polynomial in `r²`, which
/// keeps all circle data rational.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circle {
    normal: RatPoint3,
    offset: Rational,
    center: RatPoint3,
    r2: Rational,
}

/// Orthogonal rational frame of a circle's plane: `e1 ⊥ e2`, both
/// perpendicular to the normal. Plane points are `center + u·e1 + v·e2`,
/// and the circle itself is `|e1|²·u² + |e2|²·v² = r²`.
///
/// The frame is a deterministic function of the canonical (scaled) normal,
/// so circles in parallel planes share one frame.
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneFrame {
    pub e1: RatPoint3,
    pub e2: RatPoint3,
    pub e1_sq: Rational,
    pub e2_sq: Rational,
}

impl Circle {
    pub fn new(
        normal: RatPoint3,
        offset: Rational,
        center: RatPoint3,
        r2: Rational,
    ) -> Result<Circle> {
        if normal.is_zero() {
            return Err(Error::InvalidCircle("plane normal is zero"));
        }
        if normal.dot(&center) != offset {
            return Err(Error::InvalidCircle("center does not lie on the plane"));
        }
        if !r2.is_positive() {
            return Err(Error::InvalidCircle("squared radius must be positive"));
        }
        Ok(Circle {
            normal,
            offset,
            center,
            r2,
        })
    }

    /// Circle `z = height`, centered on the z-axis.
    pub fn horizontal(height: Rational, r2: Rational) -> Result<Circle> {
        Circle::new(
            RatPoint3::from_ints(0, 0, 1),
            height.clone(),
            RatPoint3::new(Rational::zero(), Rational::zero(), height),
            r2,
        )
    }

    /// Unit circle in the plane `z = 0`.
    pub fn unit_xy() -> Circle {
        Circle::horizontal(Rational::zero(), Rational::one()).expect("valid circle")
    }

    pub fn normal(&self) -> &RatPoint3 {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn center(&self) -> &RatPoint3 {
        &self.center
    }

    pub fn r2(&self) -> &Rational {
        &self.r2
    }

    /// Normal scaled to coprime integers with the first nonzero entry
    /// positive: a canonical key for "same or parallel plane".
    pub fn canonical_normal(&self) -> RatPoint3 {
        let ints = scale_to_coprime_integers(&[
            self.normal.x.clone(),
            self.normal.y.clone(),
            self.normal.z.clone(),
        ]);
        RatPoint3::new(
            Rational::from(ints[0].clone()),
            Rational::from(ints[1].clone()),
            Rational::from(ints[2].clone()),
        )
    }

    /// Deterministic orthogonal frame of the supporting plane.
    pub fn frame(&self) -> PlaneFrame {
        let n = self.canonical_normal();
        // First coordinate axis not parallel to n; n ∥ e_x iff y = z = 0.
        let axis = if n.y.is_zero() && n.z.is_zero() {
            RatPoint3::from_ints(0, 1, 0)
        } else {
            RatPoint3::from_ints(1, 0, 0)
        };
        let e1 = n.cross(&axis);
        let e2 = n.cross(&e1);
        debug_assert!(!e1.is_zero() && !e2.is_zero());
        let e1_sq = e1.norm2();
        let e2_sq = e2.norm2();
        PlaneFrame {
            e1,
            e2,
            e1_sq,
            e2_sq,
        }
    }

    pub fn on_plane_rat(&self, pt: &RatPoint3) -> bool {
        self.normal.dot(pt) == self.offset
    }

    pub fn contains_rat(&self, pt: &RatPoint3) -> bool {
        self.on_plane_rat(pt) && pt.sub(&self.center).norm2() == self.r2
    }

    /// Exact membership of a quadratic-extension point. Errors only when
    /// the point's coordinates span incommensurable fields.
    pub fn contains_point(&self, pt: &Point3) -> Result<bool> {
        // Plane equation.
        let plane = pt
            .x
            .scale(&self.normal.x)
            .add(&pt.y.scale(&self.normal.y))?
            .add(&pt.z.scale(&self.normal.z))?
            .add_rational(&-&self.offset);
        if !plane.is_zero() {
            return Ok(false);
        }
        // Squared distance to the center.
        let dx = pt.x.add_rational(&-&self.center.x);
        let dy = pt.y.add_rational(&-&self.center.y);
        let dz = pt.z.add_rational(&-&self.center.z);
        let dist2 = dx.square().add(&dy.square())?.add(&dz.square())?;
        Ok(dist2.add_rational(&-&self.r2).is_zero())
    }
}

impl fmt::Debug for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Circle[n={} offset={} center={} r2={}]",
            self.normal, self.offset, self.center, self.r2
        )
    }
}

impl Serialize for Circle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Circle", 4)?;
        s.serialize_field("normal", &self.normal)?;
        s.serialize_field("offset", &self.offset)?;
        s.serialize_field("center", &self.center)?;
        s.serialize_field("r2", &self.r2)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct CircleRepr {
    normal: RatPoint3,
    offset: Rational,
    center: RatPoint3,
    r2: Rational,
}

impl<'de> Deserialize<'de> for Circle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CircleRepr::deserialize(deserializer)?;
        Circle::new(repr.normal, repr.offset, repr.center, repr.r2).map_err(de::Error::custom)
    }
}
