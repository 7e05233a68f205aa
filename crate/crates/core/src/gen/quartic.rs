//! Exact validator for the doubly ruled complex quartic
//! `(x² + y² + z²)² + ((x + iy)² − z²)·w² = 0` in CP³.
//!
//! The surface carries the rational parametrization
//!
//! ```text
//! Φ(t, s) = ( t² − 1 : i(t² − 1 − 2st) : s(t² + 1) : s(t² − 1) + 4t )
//! ```
//!
//! whose `t = const` slices are lines and `s = const` slices are conics
//! ("complex circles"); a line and a circle of the two families meet at the
//! shared parameter point Φ(t, s), so `|T|·|S|` parameter pairs yield
//! `|T|·|S|` intersection points. All checks below run in exact
//! Gaussian-rational arithmetic and failures are reported verbatim, never
//! patched.

use serde::Serialize;

use crate::scalar::{GaussRational, Rational};
use crate::{Error, Result};

/// Φ(t, s): the parametrized point in CP³ as four Gaussian rationals.
pub fn quartic_point(t: &Rational, s: &Rational) -> [GaussRational; 4] {
    let t2m1 = t.square() - Rational::one();
    let x = GaussRational::from_rational(t2m1.clone());
    let y = GaussRational::new(
        Rational::zero(),
        &t2m1 - &(Rational::from(2) * s * t),
    );
    let z = GaussRational::from_rational(s * (t.square() + Rational::one()));
    let w = GaussRational::from_rational(s * &t2m1 + Rational::from(4) * t);
    [x, y, z, w]
}

/// The homogenized quartic `(x² + y² + z²)² + ((x + iy)² − z²)·w²` at a
/// projective point.
pub fn quartic_surface_eval(p: &[GaussRational; 4]) -> GaussRational {
    let [x, y, z, w] = p;
    let sum_sq = x.square() + y.square() + z.square();
    let x_plus_iy = x + &(&GaussRational::i() * y);
    &sum_sq.square() + &(&(&x_plus_iy.square() - &z.square()) * &w.square())
}

/// Line slice `t = const`: base Φ(t, 0) and the s-direction vector. The
/// point Φ(t, s) must equal `base + s·dir` exactly.
fn line_slice(t: &Rational) -> ([GaussRational; 4], [GaussRational; 4]) {
    let base = quartic_point(t, &Rational::zero());
    let dir = [
        GaussRational::zero(),
        GaussRational::new(Rational::zero(), Rational::from(-2) * t),
        GaussRational::from_rational(t.square() + Rational::one()),
        GaussRational::from_rational(t.square() - Rational::one()),
    ];
    (base, dir)
}

/// Projective equality: all 2×2 minors of the two coordinate vectors
/// vanish.
fn projectively_equal(p: &[GaussRational; 4], q: &[GaussRational; 4]) -> bool {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if !(&(&p[i] * &q[j]) - &(&p[j] * &q[i])).is_zero() {
                return false;
            }
        }
    }
    true
}

/// One verification failure, reported with its exact parameters.
#[derive(Clone, Debug, Serialize)]
pub struct QuarticFailure {
    pub t: Rational,
    pub s: Rational,
    pub kind: String,
    pub detail: String,
}

/// Outcome of the exact verification over a `T × S` parameter grid.
#[derive(Clone, Debug, Serialize)]
pub struct QuarticReport {
    pub pairs_checked: usize,
    pub failures: Vec<QuarticFailure>,
    /// Number of pairwise-distinct projective points on the grid; equals
    /// `pairs_checked` when the check passes.
    pub distinct_points: usize,
    pub expected_intersections: usize,
    /// `s` values whose conic slice degenerates to a doubly covered line
    /// (exactly `s = 0` for this parametrization); informational.
    pub degenerate_circle_params: Vec<Rational>,
    /// True when the grid is large enough (≥ 9 distinct `t`, ≥ 5 distinct
    /// `s`) that vanishing on it forces the composed polynomial — of
    /// t-degree ≤ 8 and s-degree ≤ 4 — to vanish identically, i.e. the
    /// parametrization provably lies on the quartic.
    pub identity_certified: bool,
    pub passed: bool,
}

/// Verifies, over exact Gaussian-rational arithmetic, that (a) every
/// parametrized grid point satisfies the homogenized quartic and (b) every
/// `(t, s)` pair is a genuine line–circle intersection — the point is a
/// valid projective point lying on the `t`-line, and grid points are
/// pairwise distinct, so the families realize `|T|·|S|` intersections.
pub fn complex_quartic_check(ts: &[Rational], ss: &[Rational]) -> Result<QuarticReport> {
    if ts.is_empty() || ss.is_empty() {
        return Err(Error::Precondition(
            "complex_quartic_check needs nonempty parameter grids".into(),
        ));
    }
    for (name, values) in [("t", ts), ("s", ss)] {
        let mut sorted = values.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != values.len() {
            return Err(Error::Precondition(format!(
                "duplicate {name} values in the parameter grid"
            )));
        }
    }

    let mut failures = Vec::new();
    let mut points = Vec::with_capacity(ts.len() * ss.len());

    for t in ts {
        let (base, dir) = line_slice(t);
        for s in ss {
            let p = quartic_point(t, s);
            if p.iter().all(GaussRational::is_zero) {
                failures.push(QuarticFailure {
                    t: t.clone(),
                    s: s.clone(),
                    kind: "invalid-point".into(),
                    detail: "all four coordinates vanish".into(),
                });
                continue;
            }
            let on_surface = quartic_surface_eval(&p);
            if !on_surface.is_zero() {
                failures.push(QuarticFailure {
                    t: t.clone(),
                    s: s.clone(),
                    kind: "off-surface".into(),
                    detail: format!("surface form evaluates to {on_surface}"),
                });
            }
            // Φ(t, s) must be base + s·dir, coordinate by coordinate.
            let mut on_line = true;
            for k in 0..4 {
                let expect = &base[k] + &(&dir[k] * &GaussRational::from_rational(s.clone()));
                if expect != p[k] {
                    on_line = false;
                }
            }
            if !on_line {
                failures.push(QuarticFailure {
                    t: t.clone(),
                    s: s.clone(),
                    kind: "off-line".into(),
                    detail: "point is not on its t = const line".into(),
                });
            }
            points.push(p);
        }
    }

    // Pairwise projective distinctness.
    let mut distinct = points.len();
    'outer: for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if projectively_equal(&points[i], &points[j]) {
                distinct -= 1;
                continue 'outer;
            }
        }
    }

    // Conic slice degenerates iff the three t-coefficient vectors of
    // Φ(·, s) have rank ≤ 2, which happens exactly at s = 0 here.
    let degenerate_circle_params: Vec<Rational> =
        ss.iter().filter(|s| s.is_zero()).cloned().collect();

    let expected = ts.len() * ss.len();
    let identity_certified = failures.is_empty() && ts.len() >= 9 && ss.len() >= 5;
    let passed = failures.is_empty() && distinct == expected;
    Ok(QuarticReport {
        pairs_checked: expected,
        failures,
        distinct_points: distinct,
        expected_intersections: expected,
        degenerate_circle_params,
        identity_certified,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn shared_point_at_t1_s0() {
        // Both slices pass through (0 : 0 : 0 : 4).
        let p = quartic_point(&r(1), &r(0));
        assert!(projectively_equal(
            &p,
            &[
                GaussRational::zero(),
                GaussRational::zero(),
                GaussRational::zero(),
                GaussRational::one()
            ]
        ));
        assert!(quartic_surface_eval(&p).is_zero());
    }

    #[test]
    fn parametrization_satisfies_the_quartic_on_random_pairs() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let t = Rational::new(rng.random_range(-20i64..=20), rng.random_range(1i64..=7));
            let s = Rational::new(rng.random_range(-20i64..=20), rng.random_range(1i64..=7));
            let p = quartic_point(&t, &s);
            assert!(quartic_surface_eval(&p).is_zero(), "t={t} s={s}");
        }
    }

    #[test]
    fn ten_by_ten_grid_passes() {
        let ts: Vec<Rational> = (1..=10).map(r).collect();
        let ss: Vec<Rational> = (1..=10).map(r).collect();
        let report = complex_quartic_check(&ts, &ss).unwrap();
        assert!(report.passed);
        assert!(report.failures.is_empty());
        assert_eq!(report.distinct_points, 100);
        assert!(report.identity_certified);
        assert!(report.degenerate_circle_params.is_empty());
    }

    #[test]
    fn grid_preconditions() {
        assert!(matches!(
            complex_quartic_check(&[], &[r(1)]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            complex_quartic_check(&[r(1), r(1)], &[r(1)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn degenerate_circle_parameter_is_reported() {
        let ts: Vec<Rational> = (1..=2).map(r).collect();
        let ss: Vec<Rational> = (0..=1).map(r).collect();
        let report = complex_quartic_check(&ts, &ss).unwrap();
        assert_eq!(report.degenerate_circle_params, vec![r(0)]);
    }
}
