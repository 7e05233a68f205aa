use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{QuadExt, Rational};

/// Point (or direction) in R³ with rational coordinates. All scene data —
/// line anchors, circle centers, plane normals — is rational; only derived
/// intersection points need the quadratic tower.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPoint3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl RatPoint3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        RatPoint3 { x, y, z }
    }

    pub fn origin() -> Self {
        RatPoint3::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        RatPoint3::new(x.into(), y.into(), z.into())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &RatPoint3) -> Rational {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &RatPoint3) -> RatPoint3 {
        RatPoint3 {
            x: &self.y * &other.z - &self.z * &other.y,
            y: &self.z * &other.x - &self.x * &other.z,
            z: &self.x * &other.y - &self.y * &other.x,
        }
    }

    pub fn add(&self, other: &RatPoint3) -> RatPoint3 {
        RatPoint3 {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
            z: &self.z + &other.z,
        }
    }

    pub fn sub(&self, other: &RatPoint3) -> RatPoint3 {
        RatPoint3 {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
            z: &self.z - &other.z,
        }
    }

    pub fn scale(&self, c: &Rational) -> RatPoint3 {
        RatPoint3 {
            x: &self.x * c,
            y: &self.y * c,
            z: &self.z * c,
        }
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }
}

impl fmt::Display for RatPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Debug for RatPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Scene JSON writes points as plain three-element arrays of rationals.
impl Serialize for RatPoint3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [&self.x, &self.y, &self.z].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatPoint3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [x, y, z] = <[Rational; 3]>::deserialize(deserializer)?;
        Ok(RatPoint3 { x, y, z })
    }
}

/// Point in R³ with quadratic-extension coordinates: the coordinate type of
/// line–circle intersection points, whose entries satisfy quadratic
/// equations over the scene's rational data.
///
/// The derived `Ord` is the structural order on canonical coordinate forms;
/// since canonical forms are unique per value, structural equality is exact
/// point equality and the order is a valid deduplication key.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point3 {
    pub x: QuadExt,
    pub y: QuadExt,
    pub z: QuadExt,
}

impl Point3 {
    pub fn new(x: QuadExt, y: QuadExt, z: QuadExt) -> Self {
        Point3 { x, y, z }
    }

    /// Approximate coordinates for reports.
    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }
}

impl From<RatPoint3> for Point3 {
    fn from(p: RatPoint3) -> Self {
        Point3 {
            x: QuadExt::from_rational(p.x),
            y: QuadExt::from_rational(p.y),
            z: QuadExt::from_rational(p.z),
        }
    }
}

impl From<&RatPoint3> for Point3 {
    fn from(p: &RatPoint3) -> Self {
        Point3::from(p.clone())
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Debug for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
