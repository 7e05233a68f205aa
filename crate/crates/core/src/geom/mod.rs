//! Lines, circles, planes and quadrics in R³ with exact incidence
//! predicates: Plücker coordinates, line–circle intersection over the
//! quadratic tower, and circle ideal points on the absolute conic.

mod circle;
mod ideal;
mod intersect;
mod line;
mod point;
mod quadric;
mod scene;

pub use circle::{Circle, PlaneFrame};
pub use ideal::{ideal_points, is_isotropic, ExtComplex, IdealPair};
pub use intersect::line_circle_intersection;
pub use line::{lines_coplanar, Line, Pluecker};
pub use point::{Point3, RatPoint3};
pub use quadric::Quadric;
pub use scene::{curve_label, CurveRef, Scene};
