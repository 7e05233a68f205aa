//! Recovery and exact classification of low-degree structured families:
//! planes and one-sheet hyperboloids (with elliptic cones and cylinders
//! folded into the hyperboloid class) containing many curves of a scene.
//!
//! Classification works on exact inertia of the symmetric 4×4 form and its
//! 3×3 principal block. Eigenvalue signs are counted with Descartes' rule
//! on the characteristic polynomial — exact for symmetric matrices, whose
//! spectra are real — so no floating point enters the classifier.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fitter::surface_of_degree_at_most;
use crate::geom::{Circle, CurveRef, Line, Quadric};
use crate::poly::{curve_vanishes, nullspace, Monomial, MultiPoly};
use crate::scalar::Rational;
use crate::{Error, Result};

/// Classification of a degree ≤ 2 surface.
///
/// Everything with full-rank signature (2,2) reports as
/// `HyperboloidOneSheet`: those are exactly the doubly ruled quadrics, the
/// class the structured-family search is after. Elliptic cones and
/// cylinders are kept as their own tags so reports stay informative, but
/// they count as hyperboloids for family detection.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadricKind {
    Plane,
    HyperboloidOneSheet,
    Cone,
    Cylinder,
    OtherQuadric,
}

impl QuadricKind {
    /// Kinds that qualify a family as structured.
    pub fn is_structured(self) -> bool {
        !matches!(self, QuadricKind::OtherQuadric)
    }
}

impl std::fmt::Display for QuadricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            QuadricKind::Plane => "plane",
            QuadricKind::HyperboloidOneSheet => "hyperboloid-one-sheet",
            QuadricKind::Cone => "cone",
            QuadricKind::Cylinder => "cylinder",
            QuadricKind::OtherQuadric => "other-quadric",
        };
        write!(f, "{name}")
    }
}

/// Exact inertia of a symmetric rational matrix: positive, negative and
/// zero eigenvalue counts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Inertia {
    pos: usize,
    neg: usize,
    zero: usize,
}

impl Inertia {
    fn rank(&self) -> usize {
        self.pos + self.neg
    }

    /// Signature with orientation removed: scaling a quadric by −1 swaps
    /// positive and negative counts without changing the surface.
    fn unoriented(&self) -> (usize, usize) {
        (self.pos.max(self.neg), self.pos.min(self.neg))
    }
}

/// Characteristic polynomial det(λI − M) by the Faddeev–LeVerrier
/// recurrence, exact over the rationals. Returns the monic coefficient
/// vector `[c₀, …, c_{n−1}, 1]`.
fn char_poly(m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    let identity = |scale: &Rational| -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { scale.clone() } else { Rational::zero() })
                    .collect()
            })
            .collect()
    };
    let mat_mul = |a: &[Vec<Rational>], b: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let trace = |a: &[Vec<Rational>]| -> Rational { (0..n).map(|i| a[i][i].clone()).sum() };

    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut aux = identity(&Rational::one());
    for k in 1..=n {
        if k > 1 {
            // aux ← M·aux + c_{n−k+1}·I
            let mut next = mat_mul(m, &aux);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &coeffs[n - k + 1];
            }
            aux = next;
        }
        let product = mat_mul(m, &aux);
        coeffs[n - k] = -(trace(&product) * Rational::new(1, k as i64));
    }
    coeffs
}

/// Inertia via Descartes' rule on the characteristic polynomial. All roots
/// of a symmetric matrix are real, so the sign-variation counts are exact,
/// not just bounds.
fn inertia(m: &[Vec<Rational>]) -> Inertia {
    let n = m.len();
    let coeffs = char_poly(m);
    let zero = coeffs.iter().take_while(|c| c.is_zero()).count();

    let variations = |signs: &mut dyn Iterator<Item = i32>| -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    };

    let pos = variations(&mut coeffs.iter().map(Rational::sign));
    // p(−λ) flips the sign of odd-power coefficients.
    let neg = variations(&mut coeffs.iter().enumerate().map(|(k, c)| {
        if k % 2 == 1 {
            -c.sign()
        } else {
            c.sign()
        }
    }));
    debug_assert_eq!(pos + neg + zero, n);
    Inertia { pos, neg, zero }
}

/// Exact classification of a degree-1 or degree-2 surface by the inertia
/// of its homogeneous 4×4 form and the 3×3 principal block.
pub fn classify_quadric(q: &Quadric) -> Result<QuadricKind> {
    match q.degree() {
        1 => Ok(QuadricKind::Plane),
        2 => {
            let m4: Vec<Vec<Rational>> = q.matrix().iter().map(|r| r.to_vec()).collect();
            let m3: Vec<Vec<Rational>> =
                q.principal_block().iter().map(|r| r.to_vec()).collect();
            let i4 = inertia(&m4);
            let i3 = inertia(&m3);

            let kind = if i4.rank() == 4 && i4.unoriented() == (2, 2) {
                // Doubly ruled: the hyperboloid class proper.
                QuadricKind::HyperboloidOneSheet
            } else if i4.rank() == 3 && i3.rank() == 3 && i3.unoriented() == (2, 1) {
                // Vertex form with a real cone of lines.
                QuadricKind::Cone
            } else if i4.rank() == 3
                && i3.rank() == 2
                && i3.unoriented() == (2, 0)
                && i4.unoriented() == (2, 1)
            {
                // Elliptic section swept along a line, with real points.
                QuadricKind::Cylinder
            } else {
                QuadricKind::OtherQuadric
            };
            Ok(kind)
        }
        d => Err(Error::DegreeOutOfRange(d)),
    }
}

/// A surface of degree ≤ 2 together with every curve it contains exactly.
#[derive(Clone, Debug, Serialize)]
pub struct StructuredFamily {
    pub surface: MultiPoly,
    pub kind: QuadricKind,
    /// Global indices of member curves (lines first, then circles).
    pub members: Vec<usize>,
}

/// Quadric through a seed of curves via the 10-column degree-2 containment
/// system (3 conditions per line, 5 per circle): the canonical kernel
/// vector, or `None` when the system has full column rank.
pub fn fit_quadric_to_seed(seed: &[CurveRef<'_>]) -> Result<Option<Quadric>> {
    if seed.is_empty() {
        return Err(Error::Precondition("quadric seed must be nonempty".into()));
    }
    let monomials = Monomial::all_up_to_degree(2);
    let mut rows = Vec::new();
    for curve in seed {
        rows.extend(crate::fitter::containment_constraints(*curve, 2));
    }
    let kernel = nullspace(&rows, monomials.len());
    match kernel.first() {
        None => Ok(None),
        Some(v) => {
            let poly = MultiPoly::from_coeff_vector(&monomials, v);
            Ok(Some(Quadric::from_affine(&poly)?))
        }
    }
}

/// Searches for planes and hyperboloid-class quadrics containing at least
/// `A` curves: fit a minimal surface of degree ≤ 2 through curve triples
/// (every triple when there are at most `EXHAUSTIVE_TRIPLE_CAP`, otherwise
/// `seed_budget` seeded random triples), absorb all contained curves, keep
/// structured kinds with enough members, deduplicate by canonical surface
/// and sort by member count (descending), ties by surface order.
pub fn find_structured_families(
    lines: &[Line],
    circles: &[Circle],
    a: &Rational,
    seed: u64,
    seed_budget: usize,
) -> Result<Vec<StructuredFamily>> {
    if *a < Rational::from(3) {
        return Err(Error::Precondition(
            "family detection requires A >= 3".into(),
        ));
    }
    let curves: Vec<CurveRef<'_>> = lines
        .iter()
        .map(CurveRef::Line)
        .chain(circles.iter().map(CurveRef::Circle))
        .collect();
    let total = curves.len();
    if total < 3 {
        return Ok(Vec::new());
    }

    let triples = enumerate_triples(total, seed, seed_budget);
    let surfaces: BTreeSet<MultiPoly> = triples
        .par_iter()
        .filter_map(|&(i, j, k)| {
            surface_of_degree_at_most(&[curves[i], curves[j], curves[k]], 2)
                .map(|fit| fit.surface.canonical_scaled())
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    let mut families: Vec<StructuredFamily> = surfaces
        .into_iter()
        .filter_map(|surface| {
            let quadric = Quadric::from_affine(&surface).ok()?;
            let kind = classify_quadric(&quadric).ok()?;
            if !kind.is_structured() {
                return None;
            }
            let members: Vec<usize> = curves
                .par_iter()
                .enumerate()
                .filter(|(_, c)| curve_vanishes(&surface, **c))
                .map(|(i, _)| i)
                .collect();
            if Rational::from(members.len() as i64) < *a {
                return None;
            }
            Some(StructuredFamily {
                surface,
                kind,
                members,
            })
        })
        .collect();

    families.sort_by(|x, y| {
        y.members
            .len()
            .cmp(&x.members.len())
            .then_with(|| x.surface.cmp(&y.surface))
    });
    Ok(families)
}

/// Exhaustive enumeration below this many triples, seeded sampling above.
const EXHAUSTIVE_TRIPLE_CAP: u128 = 2000;

fn enumerate_triples(total: usize, seed: u64, budget: usize) -> Vec<(usize, usize, usize)> {
    let t = total as u128;
    let count = t * (t - 1) * (t - 2) / 6;
    if count <= EXHAUSTIVE_TRIPLE_CAP {
        let mut triples = Vec::with_capacity(count as usize);
        for i in 0..total {
            for j in (i + 1)..total {
                for k in (j + 1)..total {
                    triples.push((i, j, k));
                }
            }
        }
        triples
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut set = BTreeSet::new();
        for _ in 0..budget {
            let mut pick = [0usize; 3];
            loop {
                for slot in &mut pick {
                    *slot = rng.random_range(0..total);
                }
                pick.sort_unstable();
                if pick[0] != pick[1] && pick[1] != pick[2] {
                    break;
                }
            }
            set.insert((pick[0], pick[1], pick[2]));
        }
        set.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::poly::Monomial;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn poly_of(terms: &[((u32, u32, u32), i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            terms
                .iter()
                .map(|&((x, y, z), c)| (Monomial::new(x, y, z), r(c))),
        )
    }

    fn kind_of(terms: &[((u32, u32, u32), i64)]) -> QuadricKind {
        classify_quadric(&Quadric::from_affine(&poly_of(terms)).unwrap()).unwrap()
    }

    #[test]
    fn taxonomy() {
        // x² + y² − z² − 1: the hyperboloid itself.
        assert_eq!(
            kind_of(&[((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 2), -1), ((0, 0, 0), -1)]),
            QuadricKind::HyperboloidOneSheet
        );
        // x² + y² − 1: elliptic cylinder.
        assert_eq!(
            kind_of(&[((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 0), -1)]),
            QuadricKind::Cylinder
        );
        // x² + y² + z² − 1: sphere.
        assert_eq!(
            kind_of(&[((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 2), 1), ((0, 0, 0), -1)]),
            QuadricKind::OtherQuadric
        );
        // x² + y² − z²: elliptic cone.
        assert_eq!(
            kind_of(&[((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 2), -1)]),
            QuadricKind::Cone
        );
        // x² + y² − z² + 1: two sheets.
        assert_eq!(
            kind_of(&[((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 2), -1), ((0, 0, 0), 1)]),
            QuadricKind::OtherQuadric
        );
        // x² − y² − 1: hyperbolic cylinder has no elliptic section.
        assert_eq!(
            kind_of(&[((2, 0, 0), 1), ((0, 2, 0), -1), ((0, 0, 0), -1)]),
            QuadricKind::OtherQuadric
        );
        // y² − x: parabolic cylinder.
        assert_eq!(
            kind_of(&[((0, 2, 0), 1), ((1, 0, 0), -1)]),
            QuadricKind::OtherQuadric
        );
        // x² + y² + z²: the imaginary cone has a single real point.
        assert_eq!(
            kind_of(&[((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 2), 1)]),
            QuadricKind::OtherQuadric
        );
        // x² − y² (plane pair) and x² (double plane) are rank-deficient.
        assert_eq!(
            kind_of(&[((2, 0, 0), 1), ((0, 2, 0), -1)]),
            QuadricKind::OtherQuadric
        );
        assert_eq!(kind_of(&[((2, 0, 0), 1)]), QuadricKind::OtherQuadric);
        // z = 0: a plane.
        assert_eq!(kind_of(&[((0, 0, 1), 1)]), QuadricKind::Plane);
        // Hyperbolic paraboloid x² − y² − z: doubly ruled, signature (2,2).
        assert_eq!(
            kind_of(&[((2, 0, 0), 1), ((0, 2, 0), -1), ((0, 0, 1), -1)]),
            QuadricKind::HyperboloidOneSheet
        );
    }

    #[test]
    fn classification_ignores_scaling() {
        let h = poly_of(&[((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 2), -1), ((0, 0, 0), -1)]);
        for scale in [r(-1), Rational::new(3, 7), r(-12)] {
            let q = Quadric::from_affine(&h.scale(&scale)).unwrap();
            assert_eq!(classify_quadric(&q).unwrap(), QuadricKind::HyperboloidOneSheet);
        }
    }

    #[test]
    fn constant_polynomial_rejected() {
        let q = Quadric::from_affine(&MultiPoly::constant(r(1))).unwrap();
        assert!(matches!(
            classify_quadric(&q),
            Err(Error::DegreeOutOfRange(0))
        ));
    }

    #[test]
    fn seed_fit_recovers_the_quadric_from_three_rulings() {
        let scene = gen::hyperboloid(3, 0, gen::RulingFamily::First).unwrap();
        let seed: Vec<CurveRef<'_>> = scene.lines.iter().map(CurveRef::Line).collect();
        let q = fit_quadric_to_seed(&seed).unwrap().unwrap();
        assert_eq!(
            q.to_affine().canonical_scaled(),
            gen::hyperboloid_poly().canonical_scaled()
        );
    }

    #[test]
    fn seed_fit_on_two_crossing_lines_is_degenerate() {
        let a = Line::from_ints((0, 0, 0), (1, 0, 0)).unwrap();
        let b = Line::from_ints((0, 0, 0), (0, 1, 0)).unwrap();
        let q = fit_quadric_to_seed(&[CurveRef::Line(&a), CurveRef::Line(&b)])
            .unwrap()
            .unwrap();
        // Six conditions on ten coefficients always leave a surface; it is
        // a degenerate quadric through the two lines.
        assert_eq!(classify_quadric(&q).unwrap(), QuadricKind::OtherQuadric);
        assert!(curve_vanishes(&q.to_affine(), CurveRef::Line(&a)));
        assert!(curve_vanishes(&q.to_affine(), CurveRef::Line(&b)));
    }

    #[test]
    fn seed_fit_full_rank_returns_none() {
        // Two generic circles and a generic line: 13 conditions of full
        // column rank on a fixed seeded instance.
        let scene = gen::generic(1, 2, 23).unwrap();
        let seed: Vec<CurveRef<'_>> = scene.curves();
        assert!(fit_quadric_to_seed(&seed).unwrap().is_none());
        assert!(fit_quadric_to_seed(&[]).is_err());
    }

    #[test]
    fn hyperboloid_family_detected_exactly_once() {
        let scene = gen::hyperboloid(10, 10, gen::RulingFamily::First).unwrap();
        let families =
            find_structured_families(&scene.lines, &scene.circles, &r(5), 0, 2000).unwrap();
        assert_eq!(families.len(), 1);
        let fam = &families[0];
        assert_eq!(fam.kind, QuadricKind::HyperboloidOneSheet);
        assert_eq!(fam.members.len(), 20);
        assert!(fam.surface.proportional_to(&gen::hyperboloid_poly()));
        // Soundness: every reported member is contained exactly.
        for &id in &fam.members {
            assert!(curve_vanishes(&fam.surface, scene.curve(id)));
        }
    }

    #[test]
    fn plane_family_detected() {
        let mut scene = gen::planar(6, 0).unwrap();
        scene.merge(gen::generic(0, 3, 31).unwrap());
        let families =
            find_structured_families(&scene.lines, &scene.circles, &r(5), 0, 2000).unwrap();
        let plane = families
            .iter()
            .find(|f| f.kind == QuadricKind::Plane)
            .expect("plane family");
        assert!(plane.members.len() >= 6);
        assert_eq!(plane.surface, MultiPoly::var_z());
    }

    #[test]
    fn generic_scene_has_no_families() {
        // Three pairwise skew lines always span a regulus, which this
        // classifier reports as a hyperboloid; a scene must have at most
        // two lines for "no structured family at A = 3" to be attainable.
        let scene = gen::generic(2, 6, 77).unwrap();
        let families =
            find_structured_families(&scene.lines, &scene.circles, &r(3), 0, 2000).unwrap();
        assert!(families.is_empty());

        // With more generic lines the line-triple reguli appear, but they
        // stop at three members: A = 4 filters them all out.
        let scene = gen::generic(5, 5, 77).unwrap();
        let families =
            find_structured_families(&scene.lines, &scene.circles, &r(4), 0, 2000).unwrap();
        assert!(families.is_empty());
        let at_three =
            find_structured_families(&scene.lines, &scene.circles, &r(3), 0, 2000).unwrap();
        assert!(at_three.iter().all(|f| f.members.len() == 3));
    }

    #[test]
    fn a_below_three_rejected() {
        assert!(matches!(
            find_structured_families(&[], &[], &r(2), 0, 100),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn classification_is_invariant_under_rational_rigid_motions() {
        // Rotation from the quaternion (2, 1, 0, 2) plus a translation,
        // applied by congruence to the homogeneous matrix.
        let h = poly_of(&[((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 2), -1), ((0, 0, 0), -1)]);
        let q = Quadric::from_affine(&h).unwrap();
        let moved = rigid_image(&q, (2, 1, 0, 2), (3, -1, 2));
        assert_eq!(classify_quadric(&moved).unwrap(), QuadricKind::HyperboloidOneSheet);

        let cyl = poly_of(&[((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 0), -4)]);
        let q = Quadric::from_affine(&cyl).unwrap();
        let moved = rigid_image(&q, (1, 2, 3, 4), (0, 5, -2));
        assert_eq!(classify_quadric(&moved).unwrap(), QuadricKind::Cylinder);
    }

    /// Image of a quadric under a rational rotation (unit quaternion up to
    /// scale) followed by a translation: congruence transform of the 4×4
    /// matrix, rebuilt as a polynomial.
    fn rigid_image(q: &Quadric, quat: (i64, i64, i64, i64), t: (i64, i64, i64)) -> Quadric {
        let (a, b, c, d) = quat;
        let n = r(a * a + b * b + c * c + d * d);
        let rot = [
            [
                r(a * a + b * b - c * c - d * d),
                r(2 * (b * c - a * d)),
                r(2 * (b * d + a * c)),
            ],
            [
                r(2 * (b * c + a * d)),
                r(a * a - b * b + c * c - d * d),
                r(2 * (c * d - a * b)),
            ],
            [
                r(2 * (b * d - a * c)),
                r(2 * (c * d + a * b)),
                r(a * a - b * b - c * c + d * d),
            ],
        ];
        // Homogeneous S = [R/|q|², t; 0, 1]; M' = Sᵀ M S.
        let mut s: Vec<Vec<Rational>> = (0..4)
            .map(|_| (0..4).map(|_| Rational::zero()).collect())
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] = &rot[i][j] * &n.recip().unwrap();
            }
        }
        s[0][3] = r(t.0);
        s[1][3] = r(t.1);
        s[2][3] = r(t.2);
        s[3][3] = Rational::one();

        let m = q.matrix();
        let mut m2: Vec<Vec<Rational>> = (0..4)
            .map(|_| (0..4).map(|_| Rational::zero()).collect())
            .collect();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Rational::zero();
                for k in 0..4 {
                    for l in 0..4 {
                        acc += &(&(&s[k][i] * &m[k][l]) * &s[l][j]);
                    }
                }
                m2[i][j] = acc;
            }
        }
        // Rebuild the affine polynomial from the congruent matrix.
        let mut poly = MultiPoly::zero();
        let vars = [
            Monomial::new(1, 0, 0),
            Monomial::new(0, 1, 0),
            Monomial::new(0, 0, 1),
            Monomial::new(0, 0, 0),
        ];
        for i in 0..4 {
            for j in 0..4 {
                let mono = Monomial::new(
                    vars[i].x + vars[j].x,
                    vars[i].y + vars[j].y,
                    vars[i].z + vars[j].z,
                );
                poly.add_term(mono, m2[i][j].clone());
            }
        }
        Quadric::from_affine(&poly).unwrap()
    }
}
