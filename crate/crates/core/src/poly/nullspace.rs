//! Exact kernels of rational matrices via fraction-free (Bareiss)
//! elimination.
//!
//! Rows are cleared to integers, eliminated with the one-step Bareiss
//! update (every division is exact, so intermediate entries stay minors of
//! the input instead of blowing up), and kernels are read off the echelon
//! form by back-substitution over the rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{scale_to_coprime_integers, Rational};

/// Echelon form of an integer matrix together with its pivot columns.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
}

fn to_integer_rows(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), ncols);
            let ints = scale_to_coprime_integers(row);
            debug_assert_eq!(ints.len(), ncols);
            ints
        })
        .collect()
}

// The update reads the pivot row while writing the current one; the index
// loop is the clearest way to express that.
#[allow(clippy::needless_range_loop)]
fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;
    let mut prev_pivot = BigInt::one();

    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        let Some(src) = (pivot_row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, src);
        let pivot = m[pivot_row][col].clone();
        for r in pivot_row + 1..nrows {
            let lead = std::mem::replace(&mut m[r][col], BigInt::zero());
            for c in col + 1..ncols {
                let numerator = &pivot * &m[r][c] - &lead * &m[pivot_row][c];
                // The one-step update divides exactly: entries are minors
                // of the input and the previous pivot divides each
                // numerator (Sylvester's identity). BigInt division would
                // truncate silently, so guard it in debug builds.
                debug_assert!(
                    (&numerator % &prev_pivot).is_zero(),
                    "inexact division in fraction-free elimination"
                );
                m[r][c] = numerator / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        pivot_cols.push(col);
        pivot_row += 1;
    }
    Echelon {
        rows: m,
        pivot_cols,
    }
}

/// Rank of a rational matrix, computed exactly.
pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    bareiss(to_integer_rows(rows, ncols), ncols).pivot_cols.len()
}

/// Canonical basis of the exact kernel `{v : M·v = 0}`.
///
/// One basis vector per free column, in ascending free-column order: the
/// vector has a 1 in its free column, 0 in every other free column, and the
/// pivot coordinates solved by back-substitution. Each vector is then scaled
/// to coprime integers with its first nonzero entry positive. The result is
/// a deterministic function of the matrix — the same system always yields
/// the same basis, which is what makes fitted surfaces reproducible.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = bareiss(to_integer_rows(rows, ncols), ncols);
    let pivot_cols = &ech.pivot_cols;
    let is_pivot = {
        let mut mask = vec![false; ncols];
        for &c in pivot_cols {
            mask[c] = true;
        }
        mask
    };

    let mut basis = Vec::with_capacity(ncols - pivot_cols.len());
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        // Pivot rows bottom-up; row i has its pivot in pivot_cols[i].
        for (i, &pc) in pivot_cols.iter().enumerate().rev() {
            let row = &ech.rows[i];
            let mut acc = Rational::zero();
            for c in pc + 1..ncols {
                if !v[c].is_zero() && !row[c].is_zero() {
                    acc += &(Rational::from(row[c].clone()) * &v[c]);
                }
            }
            if acc.is_zero() {
                v[pc] = Rational::zero();
            } else {
                v[pc] = -acc / Rational::from(row[pc].clone());
            }
        }
        let ints = scale_to_coprime_integers(&v);
        basis.push(ints.into_iter().map(Rational::from).collect());
    }
    basis
}
