//! Minimal-degree algebraic surfaces through curve families.
//!
//! A degree-d polynomial vanishes on a line iff the `d + 1` coefficients of
//! its restriction vanish, and on a circle iff the `2d + 1` coefficients of
//! its reduced remainder vanish. Both conditions are linear in the
//! polynomial's coefficients, so "some nonzero surface of degree ≤ d
//! contains every curve" is exactly "the constraint matrix has a nontrivial
//! kernel" — no point sampling, no radical coordinates. The dimension count
//! `(n + m)(2d + 1) < C(d+3, 3)` guarantees a solution at degree
//! `⌊√(12(n + m))⌋`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::geom::{CurveRef, RatPoint3};
use crate::poly::{nullspace, reduce_on_circle, restrict_to_line, Monomial, MultiPoly};
use crate::scalar::Rational;
use crate::{Error, Result};

/// A fitted surface: the canonical kernel vector at the minimal feasible
/// degree, plus the kernel dimension there.
#[derive(Clone, Debug)]
pub struct MinDegreeFit {
    pub surface: MultiPoly,
    pub degree: u32,
    pub kernel_dim: usize,
}

/// Upper bound `⌊√(12·count)⌋` on the minimal degree of a surface through
/// `count` curves.
pub fn degree_bound(count: usize) -> u32 {
    u32::try_from(BigInt::from(12usize * count).sqrt()).expect("desk-scale curve counts")
}

/// Linear functionals on the degree-`d` coefficient space whose common
/// vanishing is exact containment of the curve: `d + 1` rows for a line,
/// `2d + 1` for a circle. Columns follow the fixed descending monomial
/// enumeration of [`Monomial::all_up_to_degree`].
pub fn containment_constraints(curve: CurveRef<'_>, d: u32) -> Vec<Vec<Rational>> {
    debug_assert!(d >= 1);
    let monomials = Monomial::all_up_to_degree(d);
    constraints_for(curve, d, &monomials)
}

fn constraints_for(curve: CurveRef<'_>, d: u32, monomials: &[Monomial]) -> Vec<Vec<Rational>> {
    let row_count = match curve {
        CurveRef::Line(_) => d as usize + 1,
        CurveRef::Circle(_) => 2 * d as usize + 1,
    };
    let mut rows = vec![vec![Rational::zero(); monomials.len()]; row_count];
    for (col, m) in monomials.iter().enumerate() {
        let basis = MultiPoly::monomial(*m, Rational::one());
        match curve {
            CurveRef::Line(line) => {
                let restricted = restrict_to_line(&basis, line);
                for (row, slot) in rows.iter_mut().enumerate() {
                    slot[col] = restricted.coeff(row);
                }
            }
            CurveRef::Circle(circle) => {
                let remainder = reduce_on_circle(&basis, circle);
                let coeffs = remainder.coefficients(d);
                for (row, slot) in rows.iter_mut().enumerate() {
                    slot[col] = coeffs[row].clone();
                }
            }
        }
    }
    rows
}

fn assemble_matrix(curves: &[CurveRef<'_>], d: u32) -> (Vec<Vec<Rational>>, Vec<Monomial>) {
    let monomials = Monomial::all_up_to_degree(d);
    let blocks: Vec<Vec<Vec<Rational>>> = curves
        .par_iter()
        .map(|curve| constraints_for(*curve, d, &monomials))
        .collect();
    (blocks.into_iter().flatten().collect(), monomials)
}

/// Nonzero surface of degree ≤ `max_degree` containing every curve, if one
/// exists: the canonical first kernel vector at the smallest feasible
/// degree.
pub fn surface_of_degree_at_most(
    curves: &[CurveRef<'_>],
    max_degree: u32,
) -> Option<MinDegreeFit> {
    for d in 1..=max_degree {
        let (matrix, monomials) = assemble_matrix(curves, d);
        let kernel = nullspace(&matrix, monomials.len());
        if let Some(first) = kernel.first() {
            let surface = MultiPoly::from_coeff_vector(&monomials, first);
            return Some(MinDegreeFit {
                surface,
                degree: d,
                kernel_dim: kernel.len(),
            });
        }
    }
    None
}

/// The minimal-degree surface through a nonempty curve collection.
///
/// The returned degree `d*` is minimal — the constraint system at `d* − 1`
/// had only the zero solution, which is how the search proceeds — and the
/// dimension count caps `d*` at [`degree_bound`]. Exact containment of
/// every input curve is re-verified before returning.
pub fn min_degree_surface(curves: &[CurveRef<'_>]) -> Result<MinDegreeFit> {
    if curves.is_empty() {
        return Err(Error::EmptyCollection("min_degree_surface needs curves"));
    }
    let bound = degree_bound(curves.len()).max(1);
    let fit = surface_of_degree_at_most(curves, bound).ok_or_else(|| {
        Error::Internal(format!(
            "no surface of degree <= {bound} through {} curves; the dimension \
             count rules this out",
            curves.len()
        ))
    })?;
    for (i, curve) in curves.iter().enumerate() {
        if !crate::poly::curve_vanishes(&fit.surface, *curve) {
            return Err(Error::Internal(format!(
                "fitted surface fails exact containment of curve {i}"
            )));
        }
    }
    Ok(fit)
}

/// Nonzero polynomial of degree ≤ `d` vanishing at all the points, or
/// `None` when the evaluation matrix has full column rank. With fewer than
/// `C(d+3, 3)` points a surface always exists.
pub fn surface_through_points(points: &[RatPoint3], d: u32) -> Option<MultiPoly> {
    debug_assert!(d >= 1);
    let monomials = Monomial::all_up_to_degree(d);
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            monomials
                .iter()
                .map(|m| MultiPoly::monomial(*m, Rational::one()).eval(&p.x, &p.y, &p.z))
                .collect()
        })
        .collect();
    let kernel = nullspace(&rows, monomials.len());
    kernel
        .first()
        .map(|v| MultiPoly::from_coeff_vector(&monomials, v))
}
