//! Exact matrix permanents.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Largest dimension accepted by the factorial-time enumeration.
pub const NAIVE_MAX_DIM: usize = 10;
/// Largest dimension accepted by Ryser's formula.
pub const RYSER_MAX_DIM: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Naive,
    Ryser,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PermanentResult {
    pub value: Complex64,
    pub algorithm: Algorithm,
    pub dimension: usize,
}

pub fn permanent(a: &ComplexMatrix, algorithm: Algorithm) -> Result<PermanentResult> {
    let value = match algorithm {
        Algorithm::Naive => permanent_naive(a)?,
        Algorithm::Ryser => permanent_ryser(a)?,
    };
    Ok(PermanentResult {
        value,
        algorithm,
        dimension: a.rows(),
    })
}

fn require_square(a: &ComplexMatrix) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "permanent needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(a.rows())
}

/// Σ over all permutations σ of Π_j A[j, σ(j)], by direct enumeration.
pub fn permanent_naive(a: &ComplexMatrix) -> Result<Complex64> {
    let n = require_square(a)?;
    if n > NAIVE_MAX_DIM {
        return Err(Error::SizeGuard(format!(
            "naive permanent limited to n <= {NAIVE_MAX_DIM}, got {n}"
        )));
    }
    let mut used = vec![false; n];
    Ok(naive_rec(a, 0, &mut used))
}

fn naive_rec(a: &ComplexMatrix, row: usize, used: &mut [bool]) -> Complex64 {
    let n = used.len();
    if row == n {
        return Complex64::new(1.0, 0.0);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for col in 0..n {
        if !used[col] {
            used[col] = true;
            acc += a[(row, col)] * naive_rec(a, row + 1, used);
            used[col] = false;
        }
    }
    acc
}

/// Ryser's inclusion-exclusion formula
///
/// ```text
/// perm(A) = (-1)^n Σ_{S ⊆ [n]} (-1)^{|S|} Π_i Σ_{k ∈ S} A[i, k]
/// ```
///
/// walked in Gray-code order so each subset differs from the previous one by
/// a single column and the row sums update in O(n). Total cost O(2^n n).
pub fn permanent_ryser(a: &ComplexMatrix) -> Result<Complex64> {
    let n = require_square(a)?;
    if n > RYSER_MAX_DIM {
        return Err(Error::SizeGuard(format!(
            "Ryser permanent limited to n <= {RYSER_MAX_DIM}, got {n}"
        )));
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut in_subset = vec![false; n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut subset_size = 0usize;

    for step in 1u64..(1u64 << n) {
        // Gray code g(step) = step ^ (step >> 1) flips bit trailing_zeros(step).
        let col = step.trailing_zeros() as usize;
        let sign = if in_subset[col] { -1.0 } else { 1.0 };
        in_subset[col] = !in_subset[col];
        if sign > 0.0 {
            subset_size += 1;
        } else {
            subset_size -= 1;
        }
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s += sign * a[(i, col)];
        }
        let prod: Complex64 = row_sums.iter().product();
        if subset_size.is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    if n % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// Permanent of the empty (0 x 0) matrix.
pub const EMPTY_PERMANENT: Complex64 = Complex64 { re: 1.0, im: 0.0 };
