//! Closed-form phase-space quantities for the single-photon input state.
//!
//! Two index conventions appear here. Displacement amplitudes evolve along
//! rows, `μ_j = Σ_k λ_k U[j, k]`. The Wigner function and every integrand in
//! [`crate::mcint`] use columns, `β_j = Σ_k α_k U[k, j]`. Both give the same
//! `|perm|²` on the leading block, since the permanent is transpose invariant.

use std::f64::consts::FRAC_2_PI;
use std::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::UnitaryMatrix;

/// One point of m-mode phase space.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSpacePoint(Vec<Complex64>);

impl PhaseSpacePoint {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("phase-space amplitude".into()));
        }
        Ok(PhaseSpacePoint(amplitudes))
    }

    pub fn zeros(m: usize) -> Self {
        PhaseSpacePoint(vec![Complex64::new(0.0, 0.0); m])
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl Index<usize> for PhaseSpacePoint {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

fn require_dims(u: &UnitaryMatrix, point: &[Complex64], n: Option<usize>) -> Result<()> {
    if point.len() != u.dim() {
        return Err(Error::Shape(format!(
            "point has {} modes, network has {}",
            point.len(),
            u.dim()
        )));
    }
    if let Some(n) = n {
        if n > u.dim() {
            return Err(Error::Shape(format!("{n} photons exceed {} modes", u.dim())));
        }
    }
    Ok(())
}

/// `μ_j = Σ_k λ_k U[j, k]`: the amplitudes of the displacement product after
/// passing through the network.
pub fn displaced_amplitudes(u: &UnitaryMatrix, lam: &PhaseSpacePoint) -> Result<PhaseSpacePoint> {
    require_dims(u, lam.amplitudes(), None)?;
    let mu = (0..u.dim())
        .map(|j| u.row(j).iter().zip(lam.amplitudes()).map(|(ujk, lk)| lk * ujk).sum())
        .collect();
    Ok(PhaseSpacePoint(mu))
}

/// `<1| D(λ) |1> = e^{-|λ|²/2} (1 - |λ|²)`.
pub fn single_photon_overlap(lam: Complex64) -> Complex64 {
    let r2 = lam.norm_sqr();
    Complex64::new((-0.5 * r2).exp() * (1.0 - r2), 0.0)
}

/// `<0| D(λ) |0> = e^{-|λ|²/2}`.
pub fn vacuum_overlap(lam: Complex64) -> Complex64 {
    Complex64::new((-0.5 * lam.norm_sqr()).exp(), 0.0)
}

/// `Σ_j |λ_j|²`.
pub fn total_energy(lam: &PhaseSpacePoint) -> f64 {
    lam.amplitudes().iter().map(Complex64::norm_sqr).sum()
}

/// Characteristic function of the evolved state `U (|1><1|^{⊗n} ⊗ |0><0|^{⊗(m-n)}) U†`:
/// `e^{-E(μ)/2} Π_{j<n} (1 - |μ_j|²)`. Real for this input.
pub fn characteristic_function(u: &UnitaryMatrix, n: usize, lam: &PhaseSpacePoint) -> Result<f64> {
    require_dims(u, lam.amplitudes(), Some(n))?;
    let mu = displaced_amplitudes(u, lam)?;
    let energy = total_energy(&mu);
    let photons: f64 = mu.amplitudes()[..n].iter().map(|z| 1.0 - z.norm_sqr()).product();
    Ok((-0.5 * energy).exp() * photons)
}

/// `β_j = Σ_k α_k U[k, j]` for `j < n`.
pub(crate) fn column_projections(u: &UnitaryMatrix, n: usize, alpha: &[Complex64], out: &mut [Complex64]) {
    let m = alpha.len();
    for (j, slot) in out.iter_mut().enumerate().take(n) {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, a) in alpha.iter().enumerate().take(m) {
            acc += a * u[(k, j)];
        }
        *slot = acc;
    }
}

/// `(2/π)^m e^{-2|α|²} Π_{j<n} (4|Σ_k α_k U[k, j]|² - 1)`.
pub fn wigner_closed_form(u: &UnitaryMatrix, n: usize, alpha: &PhaseSpacePoint) -> Result<f64> {
    require_dims(u, alpha.amplitudes(), Some(n))?;
    let m = u.dim();
    let mut beta = vec![Complex64::new(0.0, 0.0); n];
    column_projections(u, n, alpha.amplitudes(), &mut beta);
    let photons: f64 = beta.iter().map(|b| 4.0 * b.norm_sqr() - 1.0).product();
    Ok(FRAC_2_PI.powi(m as i32) * (-2.0 * total_energy(alpha)).exp() * photons)
}

/// Symmetric-ordered kernel of `n_1 ... n_n`: `Π_{j<n} (|α_j|² - 1/2)`.
pub fn number_kernel(alpha: &PhaseSpacePoint, n: usize) -> f64 {
    alpha.amplitudes().iter().take(n).map(|a| a.norm_sqr() - 0.5).product()
}
