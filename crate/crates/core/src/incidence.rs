//! The deduplicated set of line–circle intersection points and the
//! statistics the bound reports are about.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::detect::{QuadricKind, StructuredFamily};
use crate::geom::{line_circle_intersection, Circle, Line, Point3};
use crate::scalar::Rational;

/// One intersection point with the complete list of curves through it.
#[derive(Clone, Debug, Serialize)]
pub struct IncidencePoint {
    pub point: Point3,
    pub lines: Vec<usize>,
    pub circles: Vec<usize>,
}

/// All points lying on at least one line and at least one circle of the
/// scene, deduplicated exactly across quadratic fields, with per-curve
/// incidence counts.
#[derive(Clone, Debug, Serialize)]
pub struct IncidenceReport {
    pub points: Vec<IncidencePoint>,
    pub total_points: usize,
    pub per_line_counts: Vec<usize>,
    pub per_circle_counts: Vec<usize>,
}

impl IncidenceReport {
    /// Incidence count of a curve by global index (lines first, then
    /// circles).
    pub fn count_for_curve(&self, index: usize) -> usize {
        if index < self.per_line_counts.len() {
            self.per_line_counts[index]
        } else {
            self.per_circle_counts[index - self.per_line_counts.len()]
        }
    }

    /// CSV export: one row per point, coordinates in exact radical form,
    /// curve id lists separated by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,z,lines,circles\n");
        for entry in &self.points {
            let ids = |v: &[usize]| {
                v.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(";")
            };
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                entry.point.x,
                entry.point.y,
                entry.point.z,
                ids(&entry.lines),
                ids(&entry.circles)
            ));
        }
        out
    }
}

/// Computes the full incidence set: the union over all line–circle pairs of
/// their exact intersections, deduplicated by canonical coordinate form.
/// Each surviving point is then tested against every curve — including the
/// ones it did not arise from — so multi-incident points carry complete
/// membership lists.
pub fn all_incidences(lines: &[Line], circles: &[Circle]) -> IncidenceReport {
    let pair_points: Vec<Vec<Point3>> = lines
        .par_iter()
        .flat_map(|line| {
            circles
                .par_iter()
                .map(move |circle| line_circle_intersection(line, circle))
        })
        .collect();

    let dedup: BTreeSet<Point3> = pair_points.into_iter().flatten().collect();
    let dedup: Vec<Point3> = dedup.into_iter().collect();

    let points: Vec<IncidencePoint> = dedup
        .into_par_iter()
        .map(|point| {
            let on = |contained: crate::Result<bool>| {
                contained.expect("intersection coordinates share one quadratic field")
            };
            let line_ids: Vec<usize> = lines
                .iter()
                .enumerate()
                .filter(|(_, l)| on(l.contains_point(&point)))
                .map(|(i, _)| i)
                .collect();
            let circle_ids: Vec<usize> = circles
                .iter()
                .enumerate()
                .filter(|(_, c)| on(c.contains_point(&point)))
                .map(|(i, _)| i)
                .collect();
            IncidencePoint {
                point,
                lines: line_ids,
                circles: circle_ids,
            }
        })
        .collect();

    let mut per_line_counts = vec![0usize; lines.len()];
    let mut per_circle_counts = vec![0usize; circles.len()];
    for entry in &points {
        for &i in &entry.lines {
            per_line_counts[i] += 1;
        }
        for &j in &entry.circles {
            per_circle_counts[j] += 1;
        }
    }

    let total_points = points.len();
    // Each pair contributes at most two points.
    debug_assert!(total_points <= 2 * lines.len() * circles.len());
    IncidenceReport {
        points,
        total_points,
        per_line_counts,
        per_circle_counts,
    }
}

/// The quantities the headline bound talks about, plus the structured
/// escape clause, evaluated on one scene.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub lines: usize,
    pub circles: usize,
    pub a: Rational,
    pub total_points: usize,
    /// `1000·A·(n + m)`, exactly.
    pub bound_rhs: Rational,
    /// `|P| ≤ 1000·A·(n + m)`, compared exactly.
    pub bound_holds: bool,
    /// `|P| / (n + m)^{3/2}` as a float, for scaling studies.
    pub ratio_three_halves: f64,
    /// Whether `A ≥ 10⁵·min(n, m)^{1/2}` (compared exactly via squares).
    /// At desk scale this regime usually makes the bound vacuous; it is
    /// reported, never asserted.
    pub regime_holds: bool,
    /// Whether some detected structured family has at least `A` members.
    pub family_reaching_a: bool,
    pub largest_family_size: usize,
    pub largest_family_kind: Option<QuadricKind>,
}

/// Builds the bound report from an incidence count and the detected
/// structured families (pass the output of
/// [`crate::detect::find_structured_families`]).
pub fn bound_report(
    lines: &[Line],
    circles: &[Circle],
    a: &Rational,
    report: &IncidenceReport,
    families: &[StructuredFamily],
) -> BoundReport {
    let n = lines.len();
    let m = circles.len();
    let total = Rational::from((n + m) as i64);
    let bound_rhs = Rational::from(1000) * a * &total;
    let total_points = report.total_points;
    let bound_holds = Rational::from(total_points as i64) <= bound_rhs;

    let ratio_three_halves = if n + m == 0 {
        0.0
    } else {
        total_points as f64 / ((n + m) as f64).powf(1.5)
    };

    // A ≥ 10⁵·√min ⇔ A ≥ 0 and A² ≥ 10¹⁰·min.
    let min_nm = n.min(m) as i64;
    let regime_holds = !a.is_negative()
        && a.square() >= Rational::from(BigInt::from(10_000_000_000i64) * min_nm);

    let largest = families.first();
    BoundReport {
        lines: n,
        circles: m,
        a: a.clone(),
        total_points,
        bound_rhs,
        bound_holds,
        ratio_three_halves,
        regime_holds,
        family_reaching_a: families
            .iter()
            .any(|f| Rational::from(f.members.len() as i64) >= *a),
        largest_family_size: largest.map_or(0, |f| f.members.len()),
        largest_family_kind: largest.map(|f| f.kind),
    }
}
