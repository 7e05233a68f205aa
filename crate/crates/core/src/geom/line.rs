use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::point::{Point3, RatPoint3};
use crate::scalar::{scale_to_coprime_integers, QuadExt, Rational};
use crate::{Error, Result};

/// Plücker six-tuple of a line, computed from the homogenizations
/// `(x : y : z : 1)` of two points on it:
///
/// ```text
/// (x₁y₂−x₂y₁, x₁z₂−x₂z₁, x₁w₂−x₂w₁, y₁z₂−y₂z₁, y₁w₂−y₂w₁, z₁w₂−z₂w₁)
/// ```
///
/// Stored canonically scaled: coprime integers, first nonzero entry
/// positive, so structural equality is projective equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pluecker([BigInt; 6]);

impl Pluecker {
    /// Coordinates from two distinct rational points.
    pub fn from_points(p: &RatPoint3, q: &RatPoint3) -> Result<Pluecker> {
        if p == q {
            return Err(Error::DegenerateLine);
        }
        let raw = [
            &p.x * &q.y - &q.x * &p.y,
            &p.x * &q.z - &q.x * &p.z,
            &p.x - &q.x,
            &p.y * &q.z - &q.y * &p.z,
            &p.y - &q.y,
            &p.z - &q.z,
        ];
        let ints = scale_to_coprime_integers(&raw);
        Ok(Pluecker(ints.try_into().expect("six coordinates")))
    }

    pub fn coords(&self) -> &[BigInt; 6] {
        &self.0
    }

    /// The bilinear pairing whose vanishing characterizes coplanar
    /// (intersecting or parallel) line pairs.
    pub fn pairing(&self, other: &Pluecker) -> BigInt {
        let a = &self.0;
        let b = &other.0;
        &a[0] * &b[5] - &a[1] * &b[4] + &a[2] * &b[3] + &a[3] * &b[2] - &a[4] * &b[1]
            + &a[5] * &b[0]
    }
}

impl fmt::Debug for Pluecker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {}, {})",
            self.0[0], self.0[1], self.0[2], self.0[3], self.0[4], self.0[5]
        )
    }
}

/// Line in R³ through two distinct rational anchor points, with its
/// canonical Plücker tuple cached.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    p: RatPoint3,
    q: RatPoint3,
    pluecker: Pluecker,
}

impl Line {
    pub fn new(p: RatPoint3, q: RatPoint3) -> Result<Line> {
        let pluecker = Pluecker::from_points(&p, &q)?;
        Ok(Line { p, q, pluecker })
    }

    pub fn from_ints(p: (i64, i64, i64), q: (i64, i64, i64)) -> Result<Line> {
        Line::new(
            RatPoint3::from_ints(p.0, p.1, p.2),
            RatPoint3::from_ints(q.0, q.1, q.2),
        )
    }

    pub fn anchor(&self) -> &RatPoint3 {
        &self.p
    }

    pub fn second_anchor(&self) -> &RatPoint3 {
        &self.q
    }

    /// Direction `q − p` (nonzero by the anchor invariant).
    pub fn direction(&self) -> RatPoint3 {
        self.q.sub(&self.p)
    }

    pub fn pluecker(&self) -> &Pluecker {
        &self.pluecker
    }

    /// Affine parametrization `p + t·(q − p)`.
    pub fn point_at(&self, t: &Rational) -> RatPoint3 {
        self.p.add(&self.direction().scale(t))
    }

    /// Same parametrization with a quadratic-extension parameter.
    pub fn point_at_ext(&self, t: &QuadExt) -> Point3 {
        let d = self.direction();
        Point3::new(
            t.scale(&d.x).add_rational(&self.p.x),
            t.scale(&d.y).add_rational(&self.p.y),
            t.scale(&d.z).add_rational(&self.p.z),
        )
    }

    pub fn contains_rat(&self, pt: &RatPoint3) -> bool {
        pt.sub(&self.p).cross(&self.direction()).is_zero()
    }

    /// Exact membership of a quadratic-extension point. Errors only when
    /// the point's coordinates span incommensurable fields (such a point
    /// cannot lie on a rational line, but the arithmetic cannot say so
    /// without the compatibility check).
    pub fn contains_point(&self, pt: &Point3) -> Result<bool> {
        let d = self.direction();
        let vx = pt.x.add_rational(&-&self.p.x);
        let vy = pt.y.add_rational(&-&self.p.y);
        let vz = pt.z.add_rational(&-&self.p.z);
        // (pt − p) × d = 0 componentwise.
        let c1 = vy.scale(&d.z).sub(&vz.scale(&d.y))?;
        let c2 = vz.scale(&d.x).sub(&vx.scale(&d.z))?;
        let c3 = vx.scale(&d.y).sub(&vy.scale(&d.x))?;
        Ok(c1.is_zero() && c2.is_zero() && c3.is_zero())
    }
}

/// True iff the two lines are coplanar (they intersect, possibly at
/// infinity — parallel lines count): the Plücker pairing vanishes.
pub fn lines_coplanar(a: &Line, b: &Line) -> bool {
    a.pluecker().pairing(b.pluecker()).is_zero()
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line[{} -> {}]", self.p, self.q)
    }
}

impl Serialize for Line {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Line", 2)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("q", &self.q)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct LineRepr {
    p: RatPoint3,
    q: RatPoint3,
}

impl<'de> Deserialize<'de> for Line {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = LineRepr::deserialize(deserializer)?;
        Line::new(repr.p, repr.q).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn degenerate_line_rejected() {
        assert_eq!(
            Line::from_ints((1, 2, 3), (1, 2, 3)).unwrap_err(),
            Error::DegenerateLine
        );
    }

    #[test]
    fn pluecker_examples() {
        // x-axis: raw tuple (0,0,−1,0,0,0) flips to canonical (0,0,1,0,0,0).
        let l = Line::from_ints((0, 0, 0), (1, 0, 0)).unwrap();
        assert_eq!(
            l.pluecker().coords(),
            &[big(0), big(0), big(1), big(0), big(0), big(0)]
        );

        // y-axis: raw (0,0,0,0,−1,0), canonical (0,0,0,0,1,0).
        let l = Line::from_ints((0, 0, 0), (0, 1, 0)).unwrap();
        assert_eq!(
            l.pluecker().coords(),
            &[big(0), big(0), big(0), big(0), big(1), big(0)]
        );

        // Direct substitution into the defining formula.
        let l = Line::from_ints((1, 1, 0), (1, 1, 1)).unwrap();
        assert_eq!(
            l.pluecker().coords(),
            &[big(0), big(1), big(0), big(1), big(0), big(-1)]
        );
    }

    #[test]
    fn pluecker_is_scale_invariant() {
        let a = Line::from_ints((0, 0, 0), (1, 2, 3)).unwrap();
        let b = Line::from_ints((2, 4, 6), (3, 6, 9)).unwrap();
        assert_eq!(a.pluecker(), b.pluecker());
    }

    #[test]
    fn coplanarity_examples() {
        let x_axis = Line::from_ints((0, 0, 0), (1, 0, 0)).unwrap();
        let y_axis = Line::from_ints((0, 0, 0), (0, 1, 0)).unwrap();
        // Meet at the origin.
        assert!(lines_coplanar(&x_axis, &y_axis));

        // Parallel to the x-axis: coplanar (meet at infinity).
        let shifted = Line::from_ints((0, 0, 1), (1, 0, 1)).unwrap();
        assert!(lines_coplanar(&x_axis, &shifted));

        // Skew.
        let skew = Line::from_ints((0, 0, 1), (0, 1, 1)).unwrap();
        assert!(!lines_coplanar(&x_axis, &skew));
    }

    #[test]
    fn membership() {
        let l = Line::from_ints((0, 0, 0), (1, 1, 0)).unwrap();
        assert!(l.contains_rat(&RatPoint3::from_ints(5, 5, 0)));
        assert!(!l.contains_rat(&RatPoint3::from_ints(5, 4, 0)));
    }

    #[test]
    fn scene_json_shape() {
        let l = Line::from_ints((0, 0, 0), (1, 0, 0)).unwrap();
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, r#"{"p":["0","0","0"],"q":["1","0","0"]}"#);
        let back: Line = serde_json::from_str(&json).unwrap();
        assert_eq!(back, l);
        // Degenerate anchors are a parse error, not a panic.
        assert!(
            serde_json::from_str::<Line>(r#"{"p":["1","0","0"],"q":["1","0","0"]}"#).is_err()
        );
    }
}
