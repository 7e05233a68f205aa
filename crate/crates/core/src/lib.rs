//! Exact-arithmetic toolkit for line–circle incidence experiments in R³.
//!
//! Everything a predicate decides is decided exactly: scalars live in a tower
//! of arbitrary-precision rationals, real quadratic extensions Q(√d) and
//! Gaussian rationals Q(i); intersection points, interpolating surfaces,
//! quadric signatures and containment checks never touch floating point.
//! Floats appear only in human-facing report fields (probability bounds,
//! ratios) where they are clearly labelled as approximations.
//!
//! The crate is organised around the experiment pipeline:
//!
//! * [`scalar`] — the exact scalar tower.
//! * [`geom`] — lines, circles, planes, quadrics and their incidence
//!   predicates (Plücker coordinates, ideal points of circles).
//! * [`poly`] — multivariate polynomials, restriction to curves, exact
//!   nullspaces via fraction-free elimination.
//! * [`fitter`] — minimal-degree surfaces through curve families.
//! * [`incidence`] — the deduplicated set of line–circle intersection points
//!   and per-curve statistics.
//! * [`cover`] — the randomized surface-covering loop with its combinatorial
//!   helpers (vertex–edge matching, tail-bound calculators, pruning).
//! * [`detect`] — recovery and exact classification of low-degree structured
//!   families (planes, one-sheet hyperboloids, cones, cylinders).
//! * [`gen`] — deterministic scene generators and the Gaussian-rational
//!   validator for the doubly ruled complex quartic.

pub mod cover;
pub mod detect;
pub mod error;
pub mod fitter;
pub mod gen;
pub mod geom;
pub mod incidence;
pub mod poly;
pub mod scalar;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Cap rayon's global thread pool from the `INCIDENCE_LAB_THREADS`
/// environment variable.
///
/// Does nothing if the variable is unset, unparsable, or a pool has already
/// been installed (results do not depend on thread count; only wall time
/// does).
pub fn init_thread_pool_from_env() {
    if let Ok(raw) = std::env::var("INCIDENCE_LAB_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}
