//! The randomized surface-covering loop: repeatedly Bernoulli-sample the
//! smaller curve collection, fit a low-degree surface through the sample,
//! absorb every curve the surface contains exactly, and recurse on the
//! residual. Plus the combinatorial side tools: vertex–edge matching and
//! the Chernoff tail calculators the statistical suite checks against.

mod chernoff;
mod matching;

pub use chernoff::{chernoff_lower, chernoff_upper, ChernoffBound};
pub use matching::{greedy_matching, IncidenceGraph};

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::geom::{Circle, CurveRef, Line};
use crate::incidence::all_incidences;
use crate::poly::{curve_vanishes, MultiPoly};
use crate::scalar::Rational;
use crate::{Error, Result};

/// Outcome of the covering loop. Curves are addressed by global index:
/// lines first in input order, then circles.
#[derive(Clone, Debug, Serialize)]
pub struct CoverResult {
    /// One fitted surface per round, in round order.
    pub factors: Vec<MultiPoly>,
    /// Per curve, the index of the first factor containing it exactly.
    pub assignment: Vec<usize>,
    /// Sum of the factor degrees.
    pub total_degree: u32,
    pub rounds: usize,
    pub seed: u64,
}

/// One sampling round: the fitted surface and everything it absorbed.
#[derive(Clone, Debug)]
pub struct SampleRound {
    pub surface: MultiPoly,
    /// Global indices of absorbed curves (lines first, then circles).
    pub absorbed: Vec<usize>,
    /// Global indices of the sampled curves.
    pub sample: Vec<usize>,
    /// Sampling probability actually used (clamped to [0, 1]).
    pub p: Rational,
    pub tries: u32,
}

/// Exact Bernoulli(p) from one uniform u64 draw: accept iff
/// `u / 2⁶⁴ < p`, decided by integer cross-multiplication.
fn bernoulli(rng: &mut ChaCha8Rng, p: &Rational) -> bool {
    let u: u64 = rng.random();
    BigInt::from(u) * p.denom() < p.numer() << 64
}

struct Residual<'a> {
    lines: Vec<(usize, &'a Line)>,
    circles: Vec<(usize, &'a Circle)>,
}

impl<'a> Residual<'a> {
    fn full(lines: &'a [Line], circles: &'a [Circle]) -> Self {
        Residual {
            lines: lines.iter().enumerate().collect(),
            circles: circles
                .iter()
                .enumerate()
                .map(|(j, c)| (lines.len() + j, c))
                .collect(),
        }
    }

    fn is_empty(&self) -> bool {
        self.lines.is_empty() && self.circles.is_empty()
    }

    /// Size of the smaller nonempty collection; when one side is empty the
    /// other side is the one to sample.
    fn sampling_size(&self) -> usize {
        match (self.lines.len(), self.circles.len()) {
            (0, m) => m,
            (n, 0) => n,
            (n, m) => n.min(m),
        }
    }

    /// Lines are sampled when `n ≤ m` (ties go to lines), mirroring the
    /// role swap when circles form the smaller collection.
    fn sample_lines(&self) -> bool {
        if self.circles.is_empty() {
            true
        } else if self.lines.is_empty() {
            false
        } else {
            self.lines.len() <= self.circles.len()
        }
    }

    fn remove(&mut self, absorbed: &[usize]) {
        let gone: std::collections::BTreeSet<usize> = absorbed.iter().copied().collect();
        self.lines.retain(|(id, _)| !gone.contains(id));
        self.circles.retain(|(id, _)| !gone.contains(id));
    }
}

/// One sampling round against the current residual collections.
fn sample_round_inner(
    residual: &Residual<'_>,
    degree_cap: u32,
    rng: &mut ChaCha8Rng,
    retry_cap: u32,
    round: usize,
) -> Result<SampleRound> {
    if residual.is_empty() {
        return Err(Error::EmptyCollection("sampling round needs curves"));
    }
    let sample_lines = residual.sample_lines();
    let side_len = if sample_lines {
        residual.lines.len()
    } else {
        residual.circles.len()
    };

    // p = min(1, D² / (25·k)) over the sampled collection of size k.
    let p_raw = Rational::new(
        BigInt::from(degree_cap) * BigInt::from(degree_cap),
        BigInt::from(25usize * side_len),
    );
    let p = if p_raw > Rational::one() {
        Rational::one()
    } else {
        p_raw
    };
    let exhaustive = p == Rational::one();

    let mut last_sample_size = 0usize;
    let mut last_detail = String::from("no viable sample drawn");
    for tries in 1..=retry_cap {
        let sample_positions: Vec<usize> = if exhaustive {
            (0..side_len).collect()
        } else {
            (0..side_len).filter(|_| bernoulli(rng, &p)).collect()
        };
        last_sample_size = sample_positions.len();

        if sample_positions.is_empty() {
            last_detail = "empty sample".into();
            continue;
        }

        let curves: Vec<CurveRef<'_>> = sample_positions
            .iter()
            .map(|&i| {
                if sample_lines {
                    CurveRef::Line(residual.lines[i].1)
                } else {
                    CurveRef::Circle(residual.circles[i].1)
                }
            })
            .collect();
        // A small sample is guaranteed to fit within the cap by the
        // dimension count; larger draws can fail, in which case the answer
        // is a fresh sample, never a raised cap.
        let fit = crate::fitter::min_degree_surface(&curves)?;
        if fit.degree > degree_cap {
            last_detail = format!(
                "minimal degree {} through the sample exceeds the cap {}",
                fit.degree, degree_cap
            );
            if exhaustive {
                // Resampling cannot change a deterministic full sample.
                return Err(Error::RoundFailed {
                    round,
                    tries,
                    sample_size: last_sample_size,
                    degree_cap,
                    detail: last_detail,
                });
            }
            continue;
        }

        let absorbed_lines: Vec<usize> = residual
            .lines
            .par_iter()
            .filter(|(_, line)| curve_vanishes(&fit.surface, CurveRef::Line(line)))
            .map(|(id, _)| *id)
            .collect();
        let absorbed_circles: Vec<usize> = residual
            .circles
            .par_iter()
            .filter(|(_, circle)| curve_vanishes(&fit.surface, CurveRef::Circle(circle)))
            .map(|(id, _)| *id)
            .collect();
        let mut absorbed = absorbed_lines;
        absorbed.extend(absorbed_circles);

        let sample: Vec<usize> = sample_positions
            .iter()
            .map(|&i| {
                if sample_lines {
                    residual.lines[i].0
                } else {
                    residual.circles[i].0
                }
            })
            .collect();
        debug_assert!(sample.iter().all(|id| absorbed.contains(id)));
        return Ok(SampleRound {
            surface: fit.surface,
            absorbed,
            sample,
            p,
            tries,
        });
    }
    Err(Error::RoundFailed {
        round,
        tries: retry_cap,
        sample_size: last_sample_size,
        degree_cap,
        detail: last_detail,
    })
}

/// Standalone sampling round over full collections; `degree_cap` plays the
/// role of D. Deterministic for a fixed seed.
pub fn sample_round(
    lines: &[Line],
    circles: &[Circle],
    degree_cap: u32,
    seed: u64,
    retry_cap: u32,
) -> Result<SampleRound> {
    let residual = Residual::full(lines, circles);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_round_inner(&residual, degree_cap.max(1), &mut rng, retry_cap.max(1), 0)
}

/// Per-round degree cap `⌈200·k/A⌉` for the current smaller collection
/// size `k`.
fn round_degree_cap(k: usize, a: &Rational) -> u32 {
    let d = (Rational::from(200) * Rational::from(k as i64) * a.recip().expect("A > 0")).ceil();
    u32::try_from(d).unwrap_or(u32::MAX).max(1)
}

/// Runs sampling rounds until every curve is absorbed.
///
/// Precondition (the caller prunes first): `A > 0` and every curve carries
/// at least `A` incidence points. Each round fits a surface through a
/// sample of the smaller residual collection with degree cap
/// `⌈200·min(n, m)/A⌉` and absorbs all curves the surface contains
/// exactly; the sampled curves are always absorbed, so the loop
/// terminates. The result is deterministic for a fixed seed.
pub fn cover_collections(
    lines: &[Line],
    circles: &[Circle],
    a: &Rational,
    seed: u64,
    max_rounds: Option<usize>,
    retry_cap: u32,
) -> Result<CoverResult> {
    if !a.is_positive() {
        return Err(Error::Precondition("cover requires A > 0".into()));
    }
    let total = lines.len() + circles.len();
    let round_limit = max_rounds.unwrap_or(total);
    let retry_cap = retry_cap.max(1);

    let mut residual = Residual::full(lines, circles);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<MultiPoly> = Vec::new();

    while !residual.is_empty() {
        if factors.len() >= round_limit {
            return Err(Error::RoundFailed {
                round: factors.len(),
                tries: 0,
                sample_size: 0,
                degree_cap: 0,
                detail: format!("round limit {round_limit} reached with curves left"),
            });
        }
        let cap = round_degree_cap(residual.sampling_size(), a);
        let round = sample_round_inner(&residual, cap, &mut rng, retry_cap, factors.len())?;
        residual.remove(&round.absorbed);
        factors.push(round.surface);
    }

    // A curve's assignment is the first factor containing it, which may
    // precede the round that absorbed it.
    let assignment: Vec<usize> = (0..total)
        .map(|id| {
            let curve = if id < lines.len() {
                CurveRef::Line(&lines[id])
            } else {
                CurveRef::Circle(&circles[id - lines.len()])
            };
            factors
                .iter()
                .position(|f| curve_vanishes(f, curve))
                .ok_or(id)
        })
        .collect::<std::result::Result<_, _>>()
        .map_err(|id| Error::Internal(format!("curve {id} missing from every factor")))?;

    let total_degree = factors.iter().map(MultiPoly::degree).sum();
    Ok(CoverResult {
        rounds: factors.len(),
        factors,
        assignment,
        total_degree,
        seed,
    })
}

/// Survivors of iterated low-incidence removal, with the original indices
/// of everything removed.
#[derive(Clone, Debug, Serialize)]
pub struct PruneResult {
    pub lines: Vec<Line>,
    pub circles: Vec<Circle>,
    /// Original indices into the input line collection, ascending.
    pub removed_lines: Vec<usize>,
    /// Original indices into the input circle collection, ascending.
    pub removed_circles: Vec<usize>,
}

/// Fixpoint of removing curves with fewer than `A` incidence points:
/// recompute the incidence set, drop the first deficient curve (ascending
/// global index, lines before circles), repeat. Every survivor has at
/// least `A` points of the survivors' incidence set, and running prune on
/// its own output changes nothing.
pub fn prune(lines: &[Line], circles: &[Circle], a: &Rational) -> PruneResult {
    let mut kept_lines: Vec<(usize, Line)> = lines.iter().cloned().enumerate().collect();
    let mut kept_circles: Vec<(usize, Circle)> = circles.iter().cloned().enumerate().collect();
    let mut removed_lines = Vec::new();
    let mut removed_circles = Vec::new();

    loop {
        let line_refs: Vec<Line> = kept_lines.iter().map(|(_, l)| l.clone()).collect();
        let circle_refs: Vec<Circle> = kept_circles.iter().map(|(_, c)| c.clone()).collect();
        let report = all_incidences(&line_refs, &circle_refs);

        let deficient_line = report
            .per_line_counts
            .iter()
            .position(|&c| Rational::from(c as i64) < *a);
        if let Some(i) = deficient_line {
            removed_lines.push(kept_lines.remove(i).0);
            continue;
        }
        let deficient_circle = report
            .per_circle_counts
            .iter()
            .position(|&c| Rational::from(c as i64) < *a);
        if let Some(j) = deficient_circle {
            removed_circles.push(kept_circles.remove(j).0);
            continue;
        }
        break;
    }

    removed_lines.sort_unstable();
    removed_circles.sort_unstable();
    PruneResult {
        lines: kept_lines.into_iter().map(|(_, l)| l).collect(),
        circles: kept_circles.into_iter().map(|(_, c)| c).collect(),
        removed_lines,
        removed_circles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn rat(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn cover_base_case_is_empty() {
        let result = cover_collections(&[], &[], &rat(5), 0, None, 20).unwrap();
        assert_eq!(result.rounds, 0);
        assert_eq!(result.total_degree, 0);
        assert!(result.factors.is_empty());
        assert!(result.assignment.is_empty());
    }

    #[test]
    fn all_curves_on_one_hyperboloid_need_one_quadric() {
        let scene = gen::hyperboloid(6, 6, gen::RulingFamily::First).unwrap();
        let result =
            cover_collections(&scene.lines, &scene.circles, &rat(5), 7, None, 20).unwrap();
        assert_eq!(result.rounds, 1);
        assert_eq!(result.total_degree, 2);
        assert!(result.factors[0].proportional_to(&gen::hyperboloid_poly()));
        assert!(result.assignment.iter().all(|&f| f == 0));
    }

    #[test]
    fn plane_plus_hyperboloid_cover() {
        // Five rulings and circles of the quadric plus a planar family:
        // one exhaustive round fits the degree-3 product and absorbs
        // everything.
        let mut scene = gen::hyperboloid(5, 5, gen::RulingFamily::First).unwrap();
        scene.merge(gen::planar(5, 5).unwrap());
        let result =
            cover_collections(&scene.lines, &scene.circles, &rat(5), 3, None, 20).unwrap();
        assert!(result.rounds <= 2);
        assert!(result.total_degree <= 3);
        for (id, &f) in result.assignment.iter().enumerate() {
            assert!(curve_vanishes(&result.factors[f], scene.curve(id)));
        }
    }

    #[test]
    fn cover_is_deterministic_per_seed() {
        let scene = gen::hyperboloid(4, 7, gen::RulingFamily::Both).unwrap();
        let a = cover_collections(&scene.lines, &scene.circles, &rat(3), 42, None, 20).unwrap();
        let b = cover_collections(&scene.lines, &scene.circles, &rat(3), 42, None, 20).unwrap();
        assert_eq!(a.factors, b.factors);
        assert_eq!(a.assignment, b.assignment);
    }

    #[test]
    fn invalid_a_rejected() {
        assert!(matches!(
            cover_collections(&[], &[], &rat(0), 0, None, 20),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn exhaustive_sample_round_on_a_plane() {
        // Cap large enough that p clamps to 1: the deterministic full
        // sample fits the plane z = 0 and absorbs the coplanar circles too.
        let mut scene = gen::planar(3, 2).unwrap();
        let round = sample_round(&scene.lines, &scene.circles, 30, 1, 20).unwrap();
        assert_eq!(round.surface, crate::poly::MultiPoly::var_z());
        assert_eq!(round.absorbed.len(), 5);
        scene.lines.clear();
        assert!(sample_round(&scene.lines, &[], 1, 1, 20).is_err());
    }

    #[test]
    fn degree_one_round_recovers_the_plane() {
        // Genuine sub-sampling at cap D = 1: p = 1/50 over the two circles
        // (the smaller collection). Seed 0 draws a nonempty sample on some
        // retry; any coplanar sample fits z = 0 within the cap, which then
        // absorbs every line and circle of the scene.
        let scene = gen::planar(3, 2).unwrap();
        let round = sample_round(&scene.lines, &scene.circles, 1, 0, 64).unwrap();
        assert!(round.p < Rational::one());
        assert_eq!(round.surface, crate::poly::MultiPoly::var_z());
        assert_eq!(round.absorbed.len(), 5);
    }

    #[test]
    fn sampled_round_with_small_probability() {
        // Genuine sub-sampling: D = 2 over 10 rulings gives p = 4/250.
        // Seed 178 draws three pairwise skew rulings on some retry; the
        // unique degree-2 surface through them is the hyperboloid itself,
        // which absorbs all 22 curves.
        let scene = gen::hyperboloid(10, 12, gen::RulingFamily::First).unwrap();
        let round = sample_round(&scene.lines, &scene.circles, 2, 178, 64).unwrap();
        assert!(round.p < Rational::one());
        assert_eq!(round.sample.len(), 3);
        assert!(round.surface.proportional_to(&gen::hyperboloid_poly()));
        assert_eq!(round.absorbed.len(), 22);
        for &id in &round.sample {
            assert!(round.absorbed.contains(&id));
        }

        // Other seeds draw smaller samples: still valid rounds, absorbing
        // at least what they sampled within the cap.
        let round = sample_round(&scene.lines, &scene.circles, 2, 19, 64).unwrap();
        assert!(!round.sample.is_empty());
        assert!(round.surface.degree() <= 2);
        for &id in &round.sample {
            assert!(round.absorbed.contains(&id));
        }
    }

    #[test]
    fn prune_keeps_rich_configurations() {
        let scene = gen::hyperboloid(4, 4, gen::RulingFamily::First).unwrap();
        // Every curve has 4 incidence points.
        let result = prune(&scene.lines, &scene.circles, &rat(4));
        assert_eq!(result.lines.len(), 4);
        assert_eq!(result.circles.len(), 4);
        assert!(result.removed_lines.is_empty());
    }

    #[test]
    fn prune_removes_everything_sparse() {
        let scene = gen::generic(4, 4, 9).unwrap();
        // Generic curves have almost surely no incidences at all.
        let result = prune(&scene.lines, &scene.circles, &rat(1));
        let report = all_incidences(&result.lines, &result.circles);
        for count in report
            .per_line_counts
            .iter()
            .chain(report.per_circle_counts.iter())
        {
            assert!(*count >= 1);
        }
    }

    #[test]
    fn prune_cascade_example() {
        // One line crossing three big circles: with A = 2 each circle has
        // only 1 point, so the circles fall, and then the line follows.
        let scene = gen::planar(1, 3).unwrap();
        let result = prune(&scene.lines, &scene.circles, &rat(3));
        assert!(result.lines.is_empty());
        assert!(result.circles.is_empty());
        assert_eq!(result.removed_lines, vec![0]);
        assert_eq!(result.removed_circles, vec![0, 1, 2]);
    }

    #[test]
    fn prune_is_idempotent() {
        let mut scene = gen::hyperboloid(3, 5, gen::RulingFamily::Both).unwrap();
        scene.merge(gen::generic(2, 2, 17).unwrap());
        let once = prune(&scene.lines, &scene.circles, &rat(2));
        let twice = prune(&once.lines, &once.circles, &rat(2));
        assert_eq!(once.lines, twice.lines);
        assert_eq!(once.circles, twice.circles);
        assert!(twice.removed_lines.is_empty());
        assert!(twice.removed_circles.is_empty());
    }
}
