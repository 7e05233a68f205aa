use super::circle::Circle;
use super::line::Line;
use super::point::Point3;
use crate::scalar::{QuadExt, Rational};

/// Exact intersection of a line and a circle in R³: at most two points,
/// with coordinates in a single real quadratic extension of the scene's
/// rationals. Points at projective infinity are excluded — incidence counts
/// are about affine real points.
///
/// Returned points are sorted by their canonical coordinate order, so the
/// result is deterministic.
pub fn line_circle_intersection(line: &Line, circle: &Circle) -> Vec<Point3> {
    let n = circle.normal();
    let p = line.anchor();
    let dir = line.direction();
    let n_dot_dir = n.dot(&dir);
    let plane_residual = n.dot(p) - circle.offset();

    let mut points = if n_dot_dir.is_zero() {
        if !plane_residual.is_zero() {
            // Parallel to the plane but off it.
            return Vec::new();
        }
        in_plane_intersection(line, circle)
    } else {
        // Transversal: a single rational crossing point, kept iff it is on
        // the circle.
        let t = -plane_residual / n_dot_dir;
        let pt = line.point_at(&t);
        if circle.contains_rat(&pt) {
            vec![Point3::from(pt)]
        } else {
            Vec::new()
        }
    };
    points.sort();
    points
}

/// Line inside the circle's plane: solve `|p + t·dir − center|² = r²`
/// exactly. The roots live in Q(√disc).
fn in_plane_intersection(line: &Line, circle: &Circle) -> Vec<Point3> {
    let dir = line.direction();
    let w = line.anchor().sub(circle.center());
    let a = dir.norm2();
    let b = Rational::from(2) * w.dot(&dir);
    let c = w.norm2() - circle.r2();
    let disc = b.square() - Rational::from(4) * &a * &c;

    match disc.sign() {
        -1 => Vec::new(),
        0 => {
            let t = -b / (Rational::from(2) * &a);
            vec![Point3::from(line.point_at(&t))]
        }
        _ => {
            let sqrt_disc = QuadExt::sqrt(&disc).expect("positive discriminant");
            let inv_2a = (Rational::from(2) * &a).recip().expect("nonzero leading term");
            let base = QuadExt::from_rational(-&b);
            let t1 = base.sub(&sqrt_disc).expect("same field").scale(&inv_2a);
            let t2 = base.add(&sqrt_disc).expect("same field").scale(&inv_2a);
            vec![line.point_at_ext(&t1), line.point_at_ext(&t2)]
        }
    }
}
