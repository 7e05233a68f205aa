//! Report shapes the CLI emits. Field order is the serialization order, so
//! reports are byte-stable for fixed inputs and seeds.

use serde::Serialize;

use incidence_lab::cover::{CoverResult, PruneResult};
use incidence_lab::detect::StructuredFamily;
use incidence_lab::fitter::{degree_bound, MinDegreeFit};
use incidence_lab::geom::Scene;
use incidence_lab::incidence::BoundReport;
use incidence_lab::poly::MultiPoly;
use incidence_lab::scalar::Rational;

#[derive(Serialize)]
pub struct FitReport {
    pub lines: usize,
    pub circles: usize,
    pub degree: u32,
    pub kernel_dim: usize,
    /// `⌊√(12(n+m))⌋`, the dimension-count cap the fit degree must respect.
    pub degree_bound: u32,
    pub surface: MultiPoly,
}

impl FitReport {
    pub fn new(scene: &Scene, fit: MinDegreeFit) -> Self {
        FitReport {
            lines: scene.lines.len(),
            circles: scene.circles.len(),
            degree: fit.degree,
            kernel_dim: fit.kernel_dim,
            degree_bound: degree_bound(scene.curve_count()),
            surface: fit.surface,
        }
    }
}

#[derive(Serialize)]
pub struct CoverReport {
    #[serde(flatten)]
    pub result: CoverResult,
    /// `500·min(n, m)/A`, the degree budget the total is compared against.
    pub degree_budget: Rational,
    pub within_budget: bool,
}

impl CoverReport {
    pub fn new(scene: &Scene, a: &Rational, result: CoverResult) -> Self {
        Self::build(scene.lines.len(), scene.circles.len(), a, result)
    }

    pub fn from_pruned(pruned: &PruneResult, a: &Rational, result: CoverResult) -> Self {
        Self::build(pruned.lines.len(), pruned.circles.len(), a, result)
    }

    fn build(n: usize, m: usize, a: &Rational, result: CoverResult) -> Self {
        let degree_budget = Rational::from(500) * Rational::from(n.min(m) as i64)
            * a.recip().expect("A > 0 checked upstream");
        let within_budget = Rational::from(result.total_degree as i64) <= degree_budget;
        CoverReport {
            result,
            degree_budget,
            within_budget,
        }
    }
}

#[derive(Serialize)]
pub struct PruneSummary {
    pub kept_lines: usize,
    pub kept_circles: usize,
    pub removed_lines: Vec<usize>,
    pub removed_circles: Vec<usize>,
}

impl PruneSummary {
    pub fn new(pruned: &PruneResult) -> Self {
        PruneSummary {
            kept_lines: pruned.lines.len(),
            kept_circles: pruned.circles.len(),
            removed_lines: pruned.removed_lines.clone(),
            removed_circles: pruned.removed_circles.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub input_lines: usize,
    pub input_circles: usize,
    pub prune: PruneSummary,
    pub bound: BoundReport,
    pub families: Vec<StructuredFamily>,
    pub cover: CoverReport,
}
