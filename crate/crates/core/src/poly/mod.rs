//! Multivariate polynomials over the rationals: evaluation, restriction to
//! lines, reduction modulo a circle, and exact nullspaces.
//!
//! Restriction and reduction are the two containment predicates of the
//! whole crate: a surface contains a line iff the restricted univariate
//! polynomial is identically zero, and contains a circle iff the reduced
//! remainder is. Both are linear in the surface's coefficients, which is
//! what makes interpolation through curves a rational linear system.

mod multi;
mod nullspace;
mod uni;

pub use multi::{Monomial, MultiPoly};
pub use nullspace::{nullspace, rank};
pub use uni::UniPoly;

use crate::geom::{Circle, CurveRef, Line};
use crate::scalar::Rational;

/// Substitutes the line's affine parametrization `p + t·(q − p)` into `q`.
/// The result has degree ≤ deg Q and is identically zero iff the line lies
/// on the surface (a nonzero restriction of degree d has at most d roots,
/// while containment needs infinitely many).
pub fn restrict_to_line(poly: &MultiPoly, line: &Line) -> UniPoly {
    if poly.is_zero() {
        return UniPoly::zero();
    }
    let p = line.anchor();
    let d = line.direction();
    let deg = poly.degree() as usize;
    let pow_x = linear_powers(UniPoly::linear(p.x.clone(), d.x.clone()), deg);
    let pow_y = linear_powers(UniPoly::linear(p.y.clone(), d.y.clone()), deg);
    let pow_z = linear_powers(UniPoly::linear(p.z.clone(), d.z.clone()), deg);

    let mut acc = UniPoly::zero();
    for (m, c) in poly.terms_desc() {
        let term = pow_x[m.x as usize]
            .mul(&pow_y[m.y as usize])
            .mul(&pow_z[m.z as usize])
            .scale(c);
        acc = acc.add(&term);
    }
    acc
}

fn linear_powers(base: UniPoly, up_to: usize) -> Vec<UniPoly> {
    let mut powers = Vec::with_capacity(up_to + 1);
    powers.push(UniPoly::constant(Rational::one()));
    for k in 1..=up_to {
        let next = powers[k - 1].mul(&base);
        powers.push(next);
    }
    powers
}

/// Remainder of a surface modulo a circle: bivariate in the circle's plane
/// coordinates `(u, v)` with `v`-degree ≤ 1, i.e. `A(u) + v·B(u)`.
///
/// `A` has degree ≤ d and `B` degree ≤ d − 1, so the remainder carries
/// exactly `2d + 1` coefficients — the circle's containment constraints at
/// degree d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CircleRemainder {
    pub a: UniPoly,
    pub b: UniPoly,
}

impl CircleRemainder {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The `2d + 1` remainder coefficients at ambient degree `d`:
    /// `A₀ … A_d, B₀ … B_{d−1}`.
    pub fn coefficients(&self, d: u32) -> Vec<Rational> {
        let d = d as usize;
        let mut out = Vec::with_capacity(2 * d + 1);
        for k in 0..=d {
            out.push(self.a.coeff(k));
        }
        for k in 0..d {
            out.push(self.b.coeff(k));
        }
        out
    }
}

/// Expresses `poly` in the circle's orthogonal plane frame and reduces it
/// modulo the circle's equation `|e1|²·u² + |e2|²·v² = r²` by eliminating
/// `v²`. The remainder is identically zero iff the circle lies on the
/// surface: on the circle each `u` carries two `v` values for all but
/// finitely many `u`, which forces both `A` and `B` to vanish as
/// polynomials.
pub fn reduce_on_circle(poly: &MultiPoly, circle: &Circle) -> CircleRemainder {
    let frame = circle.frame();
    let ctr = circle.center();
    let deg = poly.degree() as usize;

    // x = ctr.x + u·e1.x + v·e2.x, similarly for y, z.
    let pow_x = bilinear_powers(&ctr.x, &frame.e1.x, &frame.e2.x, deg);
    let pow_y = bilinear_powers(&ctr.y, &frame.e1.y, &frame.e2.y, deg);
    let pow_z = bilinear_powers(&ctr.z, &frame.e1.z, &frame.e2.z, deg);

    let mut acc = BiPoly::zero();
    for (m, c) in poly.terms_desc() {
        let term = pow_x[m.x as usize]
            .mul(&pow_y[m.y as usize])
            .mul(&pow_z[m.z as usize])
            .scale(c);
        acc = acc.add(&term);
    }

    // v² ≡ (r² − |e1|²·u²) / |e2|² on the circle.
    let inv_e2 = frame.e2_sq.recip().expect("nonzero basis vector");
    let v2_sub = UniPoly::new(vec![
        circle.r2() * &inv_e2,
        Rational::zero(),
        -&frame.e1_sq * &inv_e2,
    ]);
    for k in (2..acc.by_v.len()).rev() {
        let top = std::mem::replace(&mut acc.by_v[k], UniPoly::zero());
        if top.is_zero() {
            continue;
        }
        let reduced = top.mul(&v2_sub);
        acc.by_v[k - 2] = acc.by_v[k - 2].add(&reduced);
    }

    let a = acc.by_v.first().cloned().unwrap_or_else(UniPoly::zero);
    let b = acc.by_v.get(1).cloned().unwrap_or_else(UniPoly::zero);
    CircleRemainder { a, b }
}

/// Exact containment of a curve in the zero set of a polynomial.
pub fn curve_vanishes(poly: &MultiPoly, curve: CurveRef<'_>) -> bool {
    match curve {
        CurveRef::Line(line) => restrict_to_line(poly, line).is_zero(),
        CurveRef::Circle(circle) => reduce_on_circle(poly, circle).is_zero(),
    }
}

/// Bivariate polynomial in `(u, v)` stored as coefficients-of-`v^k`, each a
/// univariate polynomial in `u`.
#[derive(Clone)]
struct BiPoly {
    by_v: Vec<UniPoly>,
}

impl BiPoly {
    fn zero() -> Self {
        BiPoly { by_v: Vec::new() }
    }

    fn constant(c: Rational) -> Self {
        BiPoly {
            by_v: vec![UniPoly::constant(c)],
        }
    }

    /// `c + a·u + b·v`.
    fn linear(c: Rational, a: Rational, b: Rational) -> Self {
        BiPoly {
            by_v: vec![UniPoly::linear(c, a), UniPoly::constant(b)],
        }
    }

    fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.by_v.len().max(other.by_v.len());
        let by_v = (0..n)
            .map(|k| {
                let a = self.by_v.get(k).cloned().unwrap_or_else(UniPoly::zero);
                let b = other.by_v.get(k).cloned().unwrap_or_else(UniPoly::zero);
                a.add(&b)
            })
            .collect();
        BiPoly { by_v }
    }

    fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.by_v.is_empty() || other.by_v.is_empty() {
            return BiPoly::zero();
        }
        let mut by_v = vec![UniPoly::zero(); self.by_v.len() + other.by_v.len() - 1];
        for (i, a) in self.by_v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.by_v.iter().enumerate() {
                by_v[i + j] = by_v[i + j].add(&a.mul(b));
            }
        }
        BiPoly { by_v }
    }

    fn scale(&self, c: &Rational) -> BiPoly {
        BiPoly {
            by_v: self.by_v.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

fn bilinear_powers(c: &Rational, a: &Rational, b: &Rational, up_to: usize) -> Vec<BiPoly> {
    let base = BiPoly::linear(c.clone(), a.clone(), b.clone());
    let mut powers = Vec::with_capacity(up_to + 1);
    powers.push(BiPoly::constant(Rational::one()));
    for k in 1..=up_to {
        let next = powers[k - 1].mul(&base);
        powers.push(next);
    }
    powers
}
