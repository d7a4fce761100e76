//! Dense complex matrices, unitaries and permutation networks.
//!
//! Convention: `U[(j, k)]` couples input mode `j` (row) to output mode `k`
//! (column), so a creation operator evolves as `a†_j -> Σ_k U[(j, k)] a†_k`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::PhotonConfiguration;

/// Default bound used when a matrix is promoted to a [`UnitaryMatrix`].
pub const DEFAULT_UNITARITY_TOL: f64 = 1e-10;

/// Row-major dense complex matrix with finite entries.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

/// On-disk layout: `{"rows": r, "cols": c, "entries": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        let entries = raw.entries.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
        ComplexMatrix::from_vec(raw.rows, raw.cols, entries)
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl ComplexMatrix {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(format!("entry ({}, {})", pos / cols, pos % cols)));
        }
        Ok(ComplexMatrix { rows, cols, entries })
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        ComplexMatrix::from_vec(n_rows, n_cols, rows.concat())
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Zero matrix. Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ComplexMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = ComplexMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        t.entries.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Submatrix built from explicit row and column index lists (repeats allowed).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::Shape(format!(
                "row index {r} out of range for {} rows",
                self.rows
            )));
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::Shape(format!(
                "column index {c} out of range for {} columns",
                self.cols
            )));
        }
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self[(r, c)])
            .collect();
        ComplexMatrix::from_vec(rows.len(), cols.len(), entries)
    }

    /// Top-left `n x n` block.
    pub fn leading_block(&self, n: usize) -> Result<Self> {
        let idx: Vec<usize> = (0..n).collect();
        self.select(&idx, &idx)
    }

    /// Largest entrywise modulus of `A†A - I`.
    pub fn unitarity_defect(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "unitarity needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                // (A†A)_{ij} = Σ_k conj(A_ki) A_kj
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self[(k, i)].conj() * self[(k, j)];
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        Ok(worst)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Square matrix that passed a unitarity check at `tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    matrix: ComplexMatrix,
    tolerance: f64,
}

impl UnitaryMatrix {
    pub fn new(matrix: ComplexMatrix, tolerance: f64) -> Result<Self> {
        if !check_unitarity(&matrix, tolerance)? {
            return Err(Error::InvalidArgument(format!(
                "matrix is not unitary within {tolerance:e} (defect {:e})",
                matrix.unitarity_defect()?
            )));
        }
        Ok(UnitaryMatrix { matrix, tolerance })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Number of modes.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.matrix
    }

    /// Balanced two-mode coupler `(1/√2)[[1, 1], [1, -1]]`.
    pub fn balanced_beamsplitter() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = ComplexMatrix::from_real_rows(&[vec![h, h], vec![h, -h]]).expect("2x2");
        UnitaryMatrix::new(m, DEFAULT_UNITARITY_TOL).expect("balanced coupler is unitary")
    }
}

impl std::ops::Deref for UnitaryMatrix {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Bijection on `{0, .., m-1}`; input mode `j` is routed to output mode `mapping[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationSpec {
    mapping: Vec<usize>,
}

impl PermutationSpec {
    /// Zero-based mapping.
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let m = mapping.len();
        if m == 0 {
            return Err(Error::InvalidPermutation("empty mapping".into()));
        }
        let mut seen = vec![false; m];
        for &t in &mapping {
            if t >= m {
                return Err(Error::InvalidPermutation(format!(
                    "target {t} out of range for {m} modes"
                )));
            }
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidPermutation(format!("target {t} appears more than once")));
            }
        }
        Ok(PermutationSpec { mapping })
    }

    /// One-based mapping, as written on the command line: `(2, 1)` swaps two modes.
    pub fn from_one_based(mapping: &[usize]) -> Result<Self> {
        if mapping.contains(&0) {
            return Err(Error::InvalidPermutation("one-based mapping contains 0".into()));
        }
        PermutationSpec::new(mapping.iter().map(|&t| t - 1).collect())
    }

    pub fn identity(m: usize) -> Self {
        PermutationSpec {
            mapping: (0..m).collect(),
        }
    }

    /// Uniformly random permutation of `m` modes.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut mapping: Vec<usize> = (0..m).collect();
        rand::seq::SliceRandom::shuffle(mapping.as_mut_slice(), rng);
        PermutationSpec { mapping }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (j, &t) in self.mapping.iter().enumerate() {
            inv[t] = j;
        }
        PermutationSpec { mapping: inv }
    }

    /// Whether the first `n` inputs are routed onto the first `n` outputs.
    pub fn preserves_leading(&self, n: usize) -> bool {
        self.mapping.iter().take(n).all(|&t| t < n)
    }
}

/// Haar-distributed `m x m` unitary, deterministic in `seed`.
///
/// Draws an i.i.d. standard complex Gaussian matrix, takes its Householder QR
/// factorization `Z = QR`, and returns `Q Λ` with `Λ = diag(r_kk / |r_kk|)`.
/// Without the phase correction the distribution of `Q` depends on the QR
/// routine's sign choices and is not Haar.
pub fn haar_random_unitary(m: usize, seed: u64) -> Result<UnitaryMatrix> {
    if m == 0 {
        return Err(Error::InvalidArgument("mode count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let entries = (0..m * m)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    let z = ComplexMatrix::from_vec(m, m, entries)?;
    let (mut q, r_diag) = householder_qr(&z);
    for (k, r) in r_diag.iter().enumerate() {
        let phase = if r.norm() > 0.0 {
            r / r.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..m {
            q[(i, k)] *= phase;
        }
    }
    UnitaryMatrix::new(q, 1e-12)
}

/// Returns `Q` and the diagonal of `R` for a square matrix.
fn householder_qr(a: &ComplexMatrix) -> (ComplexMatrix, Vec<Complex64>) {
    let n = a.rows();
    let mut r = a.clone();
    let mut reflectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);

    for k in 0..n {
        let norm_x = (k..n).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        let x0 = r[(k, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm_x;

        let mut v: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let v_norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if v_norm > 0.0 {
            v.iter_mut().for_each(|z| *z /= v_norm);
            // R <- (I - 2 v v†) R on the trailing block
            for c in k..n {
                let dot: Complex64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * r[(k + i, c)]).sum();
                for (i, vi) in v.iter().enumerate() {
                    r[(k + i, c)] -= 2.0 * vi * dot;
                }
            }
        }
        diag.push(r[(k, k)]);
        reflectors.push(v);
    }

    // Q = H_0 H_1 ... H_{n-1}, accumulated right to left onto the identity.
    let mut q = ComplexMatrix::identity(n);
    for (k, v) in reflectors.iter().enumerate().rev() {
        for c in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * q[(k + i, c)]).sum();
            for (i, vi) in v.iter().enumerate() {
                q[(k + i, c)] -= 2.0 * vi * dot;
            }
        }
    }
    (q, diag)
}

/// 0/1 matrix with a single 1 at `(j, spec[j])` in each row.
pub fn permutation_unitary(spec: &PermutationSpec) -> UnitaryMatrix {
    let m = spec.len();
    let mut p = ComplexMatrix::zeros(m, m);
    for (j, &k) in spec.mapping().iter().enumerate() {
        p[(j, k)] = Complex64::new(1.0, 0.0);
    }
    UnitaryMatrix {
        matrix: p,
        tolerance: 0.0,
    }
}

/// The `n x n` matrix whose permanent gives the amplitude of output `config`.
///
/// Rows are the occupied input modes `0..n`; column `k` is repeated
/// `config[k]` times, in nondecreasing `k`.
pub fn submatrix_for_output(u: &UnitaryMatrix, n: usize, config: &PhotonConfiguration) -> Result<ComplexMatrix> {
    let m = u.dim();
    if config.modes() != m {
        return Err(Error::ConfigurationMismatch(format!(
            "configuration has {} modes, network has {m}",
            config.modes()
        )));
    }
    if config.total() != n {
        return Err(Error::ConfigurationMismatch(format!(
            "configuration holds {} photons, expected {n}",
            config.total()
        )));
    }
    if n > m {
        return Err(Error::ConfigurationMismatch(format!(
            "{n} photons exceed {m} input modes"
        )));
    }
    if n == 0 {
        return Err(Error::ConfigurationMismatch("no photons, submatrix is empty".into()));
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = config
        .occupations()
        .iter()
        .enumerate()
        .flat_map(|(k, &t)| std::iter::repeat_n(k, t))
        .collect();
    u.matrix().select(&rows, &cols)
}

/// `true` iff `max |A†A - I| <= tol`.
pub fn check_unitarity(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(a.unitarity_defect()? <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn haar_one_mode_is_a_phase() {
        for seed in 0..5 {
            let u = haar_random_unitary(1, seed).unwrap();
            assert!((u[(0, 0)].norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn haar_is_deterministic() {
        let a = haar_random_unitary(4, 7).unwrap();
        let b = haar_random_unitary(4, 7).unwrap();
        assert_eq!(a.entries(), b.entries());
        let c = haar_random_unitary(4, 8).unwrap();
        assert_ne!(a.entries(), c.entries());
    }

    #[test]
    fn haar_is_unitary() {
        let u = haar_random_unitary(6, 1).unwrap();
        assert!(check_unitarity(&u, 1e-12).unwrap());
        for m in [2, 5, 9, 16] {
            let u = haar_random_unitary(m, 99).unwrap();
            assert!(u.unitarity_defect().unwrap() <= 1e-12, "m={m}");
        }
    }

    #[test]
    fn haar_rejects_zero_modes() {
        assert!(haar_random_unitary(0, 1).is_err());
    }

    #[test]
    fn haar_diagonal_phase_is_uniform() {
        // Without the phase correction Householder QR leaves arg(U_00) strongly biased.
        let samples = 4000;
        let mean: Complex64 = (0..samples)
            .map(|s| {
                let u = haar_random_unitary(2, s).unwrap();
                u[(0, 0)] / u[(0, 0)].norm()
            })
            .sum::<Complex64>()
            / samples as f64;
        assert!(mean.norm() < 0.06, "mean phase {mean}");
    }

    #[test]
    fn haar_entry_moment() {
        // E|U_ij|^2 = 1/m for Haar unitaries.
        let m = 3;
        let draws = 3000;
        let acc: f64 = (0..draws)
            .map(|s| haar_random_unitary(m, 10_000 + s).unwrap()[(0, 2)].norm_sqr())
            .sum();
        let mean = acc / draws as f64;
        assert!((mean - 1.0 / 3.0).abs() < 0.02, "{mean}");
    }

    #[test]
    fn identity_permutation() {
        let p = permutation_unitary(&PermutationSpec::identity(3));
        assert_eq!(p.matrix(), &ComplexMatrix::identity(3));
    }

    #[test]
    fn swap_permutation() {
        let spec = PermutationSpec::from_one_based(&[2, 1]).unwrap();
        let p = permutation_unitary(&spec);
        let expected = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(p.matrix(), &expected);
        assert!(check_unitarity(&p, 0.0).unwrap());
    }

    #[test]
    fn invalid_permutations() {
        assert!(matches!(
            PermutationSpec::new(vec![0, 0]),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            PermutationSpec::new(vec![0, 2]),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            PermutationSpec::new(vec![]),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(PermutationSpec::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn check_unitarity_cases() {
        assert!(check_unitarity(&ComplexMatrix::identity(4), 0.0).unwrap());
        let d = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert!(!check_unitarity(&d, 1e-9).unwrap());
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(check_unitarity(&rect, 1.0), Err(Error::Shape(_))));
        let u = haar_random_unitary(5, 3).unwrap();
        assert!(check_unitarity(&u, 1e-12).unwrap());
    }

    #[test]
    fn submatrix_identity_case() {
        let u = UnitaryMatrix::new(ComplexMatrix::identity(3), 0.0).unwrap();
        let t = PhotonConfiguration::new(vec![1, 1, 0]);
        let s = submatrix_for_output(&u, 2, &t).unwrap();
        assert_eq!(s, ComplexMatrix::identity(2));
    }

    #[test]
    fn submatrix_full_configuration_is_whole_matrix() {
        let u = haar_random_unitary(4, 11).unwrap();
        let t = PhotonConfiguration::new(vec![1; 4]);
        let s = submatrix_for_output(&u, 4, &t).unwrap();
        assert_eq!(&s, u.matrix());
    }

    #[test]
    fn submatrix_repeats_columns() {
        let u = haar_random_unitary(2, 5).unwrap();
        let s = submatrix_for_output(&u, 2, &PhotonConfiguration::new(vec![2, 0])).unwrap();
        for r in 0..2 {
            assert_eq!(s[(r, 0)], u[(r, 0)]);
            assert_eq!(s[(r, 1)], u[(r, 0)]);
        }
    }

    #[test]
    fn submatrix_rejects_mismatch() {
        let u = haar_random_unitary(3, 5).unwrap();
        let err = submatrix_for_output(&u, 2, &PhotonConfiguration::new(vec![1, 1, 1]));
        assert!(matches!(err, Err(Error::ConfigurationMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let u = haar_random_unitary(3, 2).unwrap();
        let text = serde_json::to_string(u.matrix()).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, u.matrix());
        let bad = r#"{"rows": 2, "cols": 2, "entries": [[1.0, 0.0]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(bad).is_err());
    }

    #[test]
    fn matmul_with_adjoint_is_identity() {
        let u = haar_random_unitary(4, 21).unwrap();
        let p = u.adjoint().matmul(&u).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { c(1.0) } else { c(0.0) };
                assert!((p[(i, j)] - expect).norm() < 1e-12);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::SeedableRng;

        proptest! {
            #[test]
            fn permutation_has_one_unit_per_row_and_column(m in 1usize..10, seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let p = permutation_unitary(&PermutationSpec::random(m, &mut rng));
                for i in 0..m {
                    let row_ones = (0..m).filter(|&k| p[(i, k)] == c(1.0)).count();
                    let col_ones = (0..m).filter(|&k| p[(k, i)] == c(1.0)).count();
                    prop_assert_eq!(row_ones, 1);
                    prop_assert_eq!(col_ones, 1);
                }
                prop_assert!(check_unitarity(&p, 0.0).unwrap());
            }

            #[test]
            fn leading_configuration_selects_top_left_block(m in 1usize..8, frac in 0.0f64..1.0, seed in any::<u64>()) {
                let n = 1 + ((m - 1) as f64 * frac) as usize;
                let u = haar_random_unitary(m, seed).unwrap();
                let mut occ = vec![0; m];
                occ[..n].iter_mut().for_each(|t| *t = 1);
                let s = submatrix_for_output(&u, n, &PhotonConfiguration::new(occ)).unwrap();
                prop_assert_eq!(s, u.leading_block(n).unwrap());
            }
        }
    }
}
