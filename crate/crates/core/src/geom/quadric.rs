use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{Monomial, MultiPoly};
use crate::scalar::{scale_to_coprime_integers, Rational};
use crate::{Error, Result};

/// Homogeneous degree-2 monomials over `(x, y, z, w)` in the fixed storage
/// order. Affine polynomials of degree ≤ 2 homogenize into this basis with
/// `w` absorbing the missing degree.
const QUAD_SLOTS: [(u32, u32, u32, u32); 10] = [
    (2, 0, 0, 0), // x²
    (1, 1, 0, 0), // xy
    (1, 0, 1, 0), // xz
    (1, 0, 0, 1), // xw
    (0, 2, 0, 0), // y²
    (0, 1, 1, 0), // yz
    (0, 1, 0, 1), // yw
    (0, 0, 2, 0), // z²
    (0, 0, 1, 1), // zw
    (0, 0, 0, 2), // w²
];

/// Index of the pure-quadratic slots (degree 2 in `x, y, z`).
const PURE_QUADRATIC: [usize; 6] = [0, 1, 2, 4, 5, 7];
/// Index of the linear slots (degree 1 in `x, y, z`).
const LINEAR: [usize; 3] = [3, 6, 8];

/// Quadric surface as the ten coefficients of a symmetric homogeneous form
/// over `(x : y : z : w)`, canonically scaled to coprime integers with the
/// first nonzero entry (in the fixed slot order) positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Quadric {
    coeffs: [Rational; 10],
}

impl Quadric {
    /// Homogenizes an affine polynomial of degree 1 or 2.
    pub fn from_affine(p: &MultiPoly) -> Result<Quadric> {
        if p.is_zero() {
            return Err(Error::Precondition(
                "quadric requires a nonzero polynomial".into(),
            ));
        }
        if p.degree() > 2 {
            return Err(Error::DegreeOutOfRange(p.degree()));
        }
        let mut coeffs: [Rational; 10] = std::array::from_fn(|_| Rational::zero());
        for (m, c) in p.terms_desc() {
            let w = 2 - m.degree();
            let slot = QUAD_SLOTS
                .iter()
                .position(|&(x, y, z, wexp)| (x, y, z, wexp) == (m.x, m.y, m.z, w))
                .expect("degree <= 2 monomial");
            coeffs[slot] = c.clone();
        }
        let ints = scale_to_coprime_integers(&coeffs);
        Ok(Quadric {
            coeffs: std::array::from_fn(|i| Rational::from(ints[i].clone())),
        })
    }

    /// Dehomogenizes back to an affine polynomial (`w = 1`).
    pub fn to_affine(&self) -> MultiPoly {
        MultiPoly::from_terms(self.coeffs.iter().enumerate().map(|(i, c)| {
            let (x, y, z, _) = QUAD_SLOTS[i];
            (Monomial::new(x, y, z), c.clone())
        }))
    }

    /// 1 for planes (no pure quadratic part), 2 otherwise.
    pub fn degree(&self) -> u32 {
        if PURE_QUADRATIC.iter().any(|&i| !self.coeffs[i].is_zero()) {
            2
        } else if LINEAR.iter().any(|&i| !self.coeffs[i].is_zero()) {
            1
        } else {
            0
        }
    }

    /// Symmetric 4×4 matrix `M` with `Q(v) = vᵀMv` over `(x, y, z, w)`:
    /// diagonal entries are the square coefficients, off-diagonal entries
    /// half the mixed ones.
    pub fn matrix(&self) -> [[Rational; 4]; 4] {
        let mut m: [[Rational; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
        let half = Rational::new(1, 2);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (x, y, z, w) = QUAD_SLOTS[i];
            let exps = [x, y, z, w];
            let vars: Vec<usize> = (0..4).filter(|&v| exps[v] > 0).collect();
            match vars.len() {
                1 => m[vars[0]][vars[0]] = c.clone(),
                2 => {
                    let entry = c * &half;
                    m[vars[0]][vars[1]] = entry.clone();
                    m[vars[1]][vars[0]] = entry;
                }
                _ => unreachable!("degree-2 monomials touch at most two variables"),
            }
        }
        m
    }

    /// The 3×3 principal block over `(x, y, z)`.
    pub fn principal_block(&self) -> [[Rational; 3]; 3] {
        let m = self.matrix();
        std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].clone()))
    }

    pub fn coeffs(&self) -> &[Rational; 10] {
        &self.coeffs
    }
}

impl fmt::Debug for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quadric[{}]", self.to_affine())
    }
}

impl fmt::Display for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_affine())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn hyperboloid() -> MultiPoly {
        MultiPoly::from_terms([
            (Monomial::new(2, 0, 0), r(1)),
            (Monomial::new(0, 2, 0), r(1)),
            (Monomial::new(0, 0, 2), r(-1)),
            (Monomial::new(0, 0, 0), r(-1)),
        ])
    }

    #[test]
    fn affine_round_trip() {
        let q = Quadric::from_affine(&hyperboloid()).unwrap();
        assert_eq!(q.to_affine(), hyperboloid());
        assert_eq!(q.degree(), 2);
    }

    #[test]
    fn canonical_scaling_is_projective() {
        let a = Quadric::from_affine(&hyperboloid()).unwrap();
        let b = Quadric::from_affine(&hyperboloid().scale(&Rational::new(-2, 3))).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn plane_degree() {
        let q = Quadric::from_affine(&MultiPoly::var_z()).unwrap();
        assert_eq!(q.degree(), 1);
    }

    #[test]
    fn degree_cap_enforced() {
        let cubic = MultiPoly::var_x()
            .mul(&MultiPoly::var_x())
            .mul(&MultiPoly::var_x());
        assert!(matches!(
            Quadric::from_affine(&cubic),
            Err(Error::DegreeOutOfRange(3))
        ));
    }

    #[test]
    fn matrix_of_the_hyperboloid() {
        let q = Quadric::from_affine(&hyperboloid()).unwrap();
        let m = q.matrix();
        assert_eq!(m[0][0], r(1));
        assert_eq!(m[1][1], r(1));
        assert_eq!(m[2][2], r(-1));
        assert_eq!(m[3][3], r(-1));
        assert_eq!(m[0][1], r(0));
    }

    #[test]
    fn mixed_terms_split_across_the_matrix() {
        // xy + zw: off-diagonal halves.
        let p = MultiPoly::from_terms([
            (Monomial::new(1, 1, 0), r(1)),
            (Monomial::new(0, 0, 1), r(1)), // z (affine) -> zw
        ]);
        let q = Quadric::from_affine(&p).unwrap();
        let m = q.matrix();
        assert_eq!(m[0][1], Rational::new(1, 2));
        assert_eq!(m[2][3], Rational::new(1, 2));
        assert_eq!(m[1][0], m[0][1]);
    }
}
