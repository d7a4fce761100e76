//! Monte-Carlo evaluation of the phase-space probability integrals.
//!
//! Every integrand here carries the Gaussian weight `e^{-2|α|²}` per mode.
//! Sampling each mode from the normalized density `(2/π) e^{-2|α|²}` absorbs
//! that weight and its `(2/π)^m` prefactor, leaving a polynomial residual
//! whose sample mean is an unbiased estimate of the integral.
//!
//! Samples are split into fixed-size chunks. Chunk `i` draws from ChaCha
//! stream `i` of the run seed, chunk statistics are merged in chunk order,
//! and so the result does not depend on how many workers ran the chunks.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_8, PI};
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, PermutationSpec, UnitaryMatrix};
use crate::permanent::{permanent_ryser, EMPTY_PERMANENT};
use crate::phasespace::{column_projections, wigner_closed_form, PhaseSpacePoint};

/// Samples per substream.
pub const CHUNK_SIZE: u64 = 4096;
pub const MIN_SAMPLES: u64 = 1000;
/// Statistical tolerance, in standard errors, for every equivalence check.
pub const Z_THRESHOLD: f64 = 4.0;

/// Per-component standard deviation of Re and Im under `(2/π) e^{-2|α|²}`.
const MATCHED_STD: f64 = 0.5;
/// Per-component standard deviation under `(1/π) e^{-|α|²}`.
const COHERENT_STD: f64 = FRAC_1_SQRT_2;

/// Which member of the simplification chain to integrate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IntegralForm {
    /// m-dimensional, column sums over all m modes, with the `-1` term.
    Full,
    /// m-dimensional, column sums truncated to the first n modes.
    Truncated,
    /// Truncated with the `-1` term dropped and a `4^n` prefactor.
    NoConstant,
    /// n-dimensional, `(8/π)^n` prefactor.
    Reduced,
}

impl IntegralForm {
    pub const ALL: [IntegralForm; 4] = [
        IntegralForm::Full,
        IntegralForm::Truncated,
        IntegralForm::NoConstant,
        IntegralForm::Reduced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IntegralForm::Full => "FULL",
            IntegralForm::Truncated => "TRUNCATED",
            IntegralForm::NoConstant => "NO_CONSTANT",
            IntegralForm::Reduced => "REDUCED",
        }
    }
}

impl fmt::Display for IntegralForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for IntegralForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntegralForm::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s) || f.name().replace('_', "-").eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown integral form {s:?}")))
    }
}

/// Single-mode Gaussian integrals the simplification chain relies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GaussianIdentity {
    /// `∫ e^{-2|α|²} (|α|² - 1/2) d²α = 0`
    IdZer,
    /// `∫ e^{-2|α|²} d²α = π/2`
    IdPi,
    /// `∫ e^{-2|α|²} α² (|α|² - 1/2) d²α = 0`, real part
    IdZer2,
    /// `∫ e^{-2|α|²} |α|² (|α|² - 1/2) d²α = π/8`
    IdPi2,
}

impl GaussianIdentity {
    pub const ALL: [GaussianIdentity; 4] = [
        GaussianIdentity::IdZer,
        GaussianIdentity::IdPi,
        GaussianIdentity::IdZer2,
        GaussianIdentity::IdPi2,
    ];

    pub fn reference(self) -> f64 {
        match self {
            GaussianIdentity::IdZer | GaussianIdentity::IdZer2 => 0.0,
            GaussianIdentity::IdPi => FRAC_PI_2,
            GaussianIdentity::IdPi2 => FRAC_PI_8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GaussianIdentity::IdZer => "IDZER",
            GaussianIdentity::IdPi => "IDPI",
            GaussianIdentity::IdZer2 => "IDZER2",
            GaussianIdentity::IdPi2 => "IDPI2",
        }
    }

    fn integrand(self, a: Complex64) -> f64 {
        let r2 = a.norm_sqr();
        let weight = (-2.0 * r2).exp();
        match self {
            GaussianIdentity::IdZer => weight * (r2 - 0.5),
            GaussianIdentity::IdPi => weight,
            GaussianIdentity::IdZer2 => weight * (a * a).re * (r2 - 0.5),
            GaussianIdentity::IdPi2 => weight * r2 * (r2 - 0.5),
        }
    }
}

impl fmt::Display for GaussianIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What an [`MCEstimate`] estimated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateTag {
    Form(IntegralForm),
    Identity(GaussianIdentity),
    WignerNormalization,
    Custom,
}

impl fmt::Display for EstimateTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimateTag::Form(form) => form.fmt(f),
            EstimateTag::Identity(id) => id.fmt(f),
            EstimateTag::WignerNormalization => f.write_str("WIGNER_NORM"),
            EstimateTag::Custom => f.write_str("CUSTOM"),
        }
    }
}

impl Serialize for EstimateTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Streaming mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Combines two disjoint sample sets (Chan et al. pairwise update).
    pub fn merge(&self, other: &RunningStats) -> RunningStats {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / count as f64;
        RunningStats {
            count,
            mean: self.mean + delta * w,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * w,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn sample_variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.sample_variance() / self.count as f64).sqrt()
        }
    }
}

/// Merges in index order by recursive halving; the tree shape depends only on the length.
fn merge_pairwise(stats: &[RunningStats]) -> RunningStats {
    match stats.len() {
        0 => RunningStats::default(),
        1 => stats[0],
        len => {
            let (left, right) = stats.split_at(len / 2);
            merge_pairwise(left).merge(&merge_pairwise(right))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub form: EstimateTag,
}

impl MCEstimate {
    /// Standard score of the estimate against `reference`.
    pub fn z_score(&self, reference: f64) -> f64 {
        z_score(self.mean - reference, self.std_error)
    }

    pub fn within(&self, reference: f64, n_sigma: f64) -> bool {
        (self.mean - reference).abs() <= n_sigma * self.std_error
    }
}

fn z_score(diff: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        diff / scale
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

/// Draws one m-mode point from `(2/π)^m e^{-2|α|²}`: Re and Im of every
/// component are independent `N(0, 1/4)`, so `E|α_j|² = 1/2`.
pub fn sample_gaussian_phase_space<R: Rng + ?Sized>(m: usize, rng: &mut R) -> PhaseSpacePoint {
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    fill_gaussian(&mut buf, MATCHED_STD, rng);
    PhaseSpacePoint::new(buf).expect("gaussian draws are finite")
}

fn fill_gaussian<R: Rng + ?Sized>(buf: &mut [Complex64], std: f64, rng: &mut R) {
    for z in buf.iter_mut() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *z = Complex64::new(std * re, std * im);
    }
}

/// Random stream for chunk `index` of a run seeded with `seed`.
pub fn chunk_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Sample budget, seed, and worker count for a Monte-Carlo run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonteCarlo {
    n_samples: u64,
    seed: u64,
    workers: Option<usize>,
}

impl MonteCarlo {
    pub fn new(n_samples: u64, seed: u64) -> Result<Self> {
        if n_samples < MIN_SAMPLES {
            return Err(Error::InvalidArgument(format!(
                "at least {MIN_SAMPLES} samples required, got {n_samples}"
            )));
        }
        Ok(MonteCarlo {
            n_samples,
            seed,
            workers: None,
        })
    }

    /// Fixes the worker count. Changes wall time only.
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers.max(1));
        self
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Mean of `integrand(α)` over `α` drawn from `(2/π)^dims e^{-2|α|²}`.
    pub fn estimate<F>(&self, dims: usize, tag: EstimateTag, integrand: F) -> Result<MCEstimate>
    where
        F: Fn(&[Complex64]) -> f64 + Sync,
    {
        self.estimate_with_std(dims, MATCHED_STD, tag, integrand)
    }

    fn estimate_with_std<F>(&self, dims: usize, std: f64, tag: EstimateTag, integrand: F) -> Result<MCEstimate>
    where
        F: Fn(&[Complex64]) -> f64 + Sync,
    {
        let n_chunks = self.n_samples.div_ceil(CHUNK_SIZE);
        let run_chunk = |index: u64| -> Result<RunningStats> {
            let start = index * CHUNK_SIZE;
            let len = CHUNK_SIZE.min(self.n_samples - start);
            let mut rng = chunk_rng(self.seed, index);
            let mut alpha = vec![Complex64::new(0.0, 0.0); dims];
            let mut stats = RunningStats::default();
            for i in 0..len {
                fill_gaussian(&mut alpha, std, &mut rng);
                let value = integrand(&alpha);
                if !value.is_finite() {
                    return Err(Error::NonFinite(format!(
                        "{tag} integrand returned {value} at sample {} (chunk {index}, seed {})",
                        start + i,
                        self.seed
                    )));
                }
                stats.push(value);
            }
            Ok(stats)
        };

        let chunks: Vec<RunningStats> = match self.workers {
            Some(1) => (0..n_chunks).map(run_chunk).collect::<Result<_>>()?,
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .map_err(|e| Error::InvalidArgument(format!("cannot start {w} workers: {e}")))?;
                pool.install(|| (0..n_chunks).into_par_iter().map(run_chunk).collect::<Result<_>>())?
            }
            None => (0..n_chunks).into_par_iter().map(run_chunk).collect::<Result<_>>()?,
        };
        let total = merge_pairwise(&chunks);
        Ok(MCEstimate {
            mean: total.mean(),
            std_error: total.std_error(),
            n_samples: total.count(),
            seed: self.seed,
            form: tag,
        })
    }

    /// Estimates the probability of one photon in each of the first `n` outputs.
    pub fn probability(&self, u: &UnitaryMatrix, n: usize, form: IntegralForm) -> Result<MCEstimate> {
        let m = u.dim();
        if n > m {
            return Err(Error::InvalidArgument(format!("{n} photons exceed {m} modes")));
        }
        let tag = EstimateTag::Form(form);
        let four_n = 4f64.powi(n as i32);
        match form {
            IntegralForm::Full => self.estimate(m, tag, |alpha| {
                let mut beta = [Complex64::new(0.0, 0.0); MAX_STACK];
                let beta = projections(u, n, alpha, &mut beta);
                (0..n)
                    .map(|j| (4.0 * beta[j].norm_sqr() - 1.0) * (alpha[j].norm_sqr() - 0.5))
                    .product()
            }),
            IntegralForm::Truncated => {
                let block = leading_unitary_block(u, n)?;
                self.estimate(m, tag, |alpha| {
                    let mut beta = [Complex64::new(0.0, 0.0); MAX_STACK];
                    let beta = block_projections(&block, n, alpha, &mut beta);
                    (0..n)
                        .map(|j| (4.0 * beta[j].norm_sqr() - 1.0) * (alpha[j].norm_sqr() - 0.5))
                        .product()
                })
            }
            IntegralForm::NoConstant | IntegralForm::Reduced => {
                let block = leading_unitary_block(u, n)?;
                let dims = if form == IntegralForm::Reduced { n } else { m };
                self.estimate(dims, tag, |alpha| {
                    let mut beta = [Complex64::new(0.0, 0.0); MAX_STACK];
                    let beta = block_projections(&block, n, alpha, &mut beta);
                    four_n
                        * (0..n)
                            .map(|j| beta[j].norm_sqr() * (alpha[j].norm_sqr() - 0.5))
                            .product::<f64>()
                })
            }
        }
    }

    /// Single-mode estimate of one Gaussian identity.
    ///
    /// Samples come from the wider density `(1/π) e^{-|α|²}` and carry the
    /// importance weight `π e^{|α|²}`. The matched density would turn the
    /// normalization identity into a constant.
    pub fn identity(&self, which: GaussianIdentity) -> Result<MCEstimate> {
        self.estimate_with_std(1, COHERENT_STD, EstimateTag::Identity(which), |alpha| {
            let a = alpha[0];
            which.integrand(a) * PI * a.norm_sqr().exp()
        })
    }

    /// `∫ W(α) d²α` over all m modes; exactly 1 for a normalized state.
    pub fn wigner_normalization(&self, u: &UnitaryMatrix, n: usize) -> Result<MCEstimate> {
        let m = u.dim();
        if n > m {
            return Err(Error::InvalidArgument(format!("{n} photons exceed {m} modes")));
        }
        let density_norm = std::f64::consts::FRAC_2_PI.powi(m as i32);
        self.estimate(m, EstimateTag::WignerNormalization, |alpha| {
            let point = PhaseSpacePoint::new(alpha.to_vec()).expect("finite draw");
            let energy: f64 = alpha.iter().map(Complex64::norm_sqr).sum();
            let density = density_norm * (-2.0 * energy).exp();
            wigner_closed_form(u, n, &point).expect("shapes checked") / density
        })
    }

    /// Runs every integral form on the same seed and scores each against the permanent.
    pub fn cross_form_report(&self, u: &UnitaryMatrix, n: usize) -> Result<CrossFormReport> {
        let reference = permanent_probability(u, n)?;
        let estimates = IntegralForm::ALL
            .into_iter()
            .map(|form| self.probability(u, n, form))
            .collect::<Result<Vec<_>>>()?;
        let forms = estimates
            .iter()
            .map(|e| FormResult {
                form: e.form,
                mean: e.mean,
                std_error: e.std_error,
                n_samples: e.n_samples,
                seed: e.seed,
                reference,
                z: e.z_score(reference),
            })
            .collect();
        let mut pairwise = Vec::new();
        for (i, a) in estimates.iter().enumerate() {
            for b in &estimates[i + 1..] {
                let scale = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
                pairwise.push(PairwiseZ {
                    a: a.form,
                    b: b.form,
                    z: z_score(a.mean - b.mean, scale),
                });
            }
        }
        let mut by_variance: Vec<&MCEstimate> = estimates.iter().collect();
        by_variance.sort_by(|a, b| a.std_error.total_cmp(&b.std_error));
        Ok(CrossFormReport {
            n,
            m: u.dim(),
            reference,
            forms,
            pairwise,
            variance_order: by_variance.into_iter().map(|e| e.form).collect(),
        })
    }
}

const MAX_STACK: usize = 32;

fn projections<'a>(
    u: &UnitaryMatrix,
    n: usize,
    alpha: &[Complex64],
    buf: &'a mut [Complex64; MAX_STACK],
) -> &'a [Complex64] {
    assert!(n <= MAX_STACK, "photon count above {MAX_STACK}");
    column_projections(u, n, alpha, &mut buf[..n]);
    &buf[..n]
}

/// `β_j = Σ_{k<n} α_k B[k, j]` for the leading block `B`.
fn block_projections<'a>(
    block: &ComplexMatrix,
    n: usize,
    alpha: &[Complex64],
    buf: &'a mut [Complex64; MAX_STACK],
) -> &'a [Complex64] {
    assert!(n <= MAX_STACK, "photon count above {MAX_STACK}");
    for (j, slot) in buf.iter_mut().enumerate().take(n) {
        *slot = (0..n).map(|k| alpha[k] * block[(k, j)]).sum();
    }
    &buf[..n]
}

/// Leading `n x n` block, or a 1x1 placeholder when `n = 0`.
fn leading_unitary_block(u: &UnitaryMatrix, n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Ok(ComplexMatrix::zeros(1, 1));
    }
    u.leading_block(n)
}

/// `|perm(U[..n, ..n])|²` by Ryser's formula.
pub fn permanent_probability(u: &UnitaryMatrix, n: usize) -> Result<f64> {
    if n > u.dim() {
        return Err(Error::InvalidArgument(format!("{n} photons exceed {} modes", u.dim())));
    }
    if n == 0 {
        return Ok(EMPTY_PERMANENT.norm_sqr());
    }
    Ok(permanent_ryser(&u.leading_block(n)?)?.norm_sqr())
}

/// One form's line in a [`CrossFormReport`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FormResult {
    pub form: EstimateTag,
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub reference: f64,
    pub z: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairwiseZ {
    pub a: EstimateTag,
    pub b: EstimateTag,
    pub z: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossFormReport {
    pub n: usize,
    pub m: usize,
    pub reference: f64,
    pub forms: Vec<FormResult>,
    pub pairwise: Vec<PairwiseZ>,
    /// Forms sorted by increasing standard error. Reported, never asserted.
    pub variance_order: Vec<EstimateTag>,
}

impl CrossFormReport {
    /// Every form within `n_sigma` of the permanent.
    pub fn passes(&self, n_sigma: f64) -> bool {
        self.forms.iter().all(|f| f.z.abs() <= n_sigma)
    }
}

pub fn mc_probability(
    u: &UnitaryMatrix,
    n: usize,
    form: IntegralForm,
    n_samples: u64,
    seed: u64,
) -> Result<MCEstimate> {
    MonteCarlo::new(n_samples, seed)?.probability(u, n, form)
}

pub fn verify_identity(which: GaussianIdentity, n_samples: u64, seed: u64) -> Result<MCEstimate> {
    MonteCarlo::new(n_samples, seed)?.identity(which)
}

pub fn cross_form_report(u: &UnitaryMatrix, n: usize, n_samples: u64, seed: u64) -> Result<CrossFormReport> {
    MonteCarlo::new(n_samples, seed)?.cross_form_report(u, n)
}

/// `E[|α|^{2k}]` under `(2/π) e^{-2|α|²}`: `|α|²` is exponential with mean 1/2.
fn radial_moment(k: u32) -> f64 {
    (1..=k).map(|i| i as f64 / 2.0).product()
}

/// Exact FULL-form probability for a permutation network.
///
/// With `U = P_σ` the column sums collapse to single modes,
/// `Σ_k α_k U[k, j] = α_{σ⁻¹(j)}`, and the integral factors into one
/// Gaussian integral per mode. Per-mode factors (after the `(2/π)` weight):
/// number kernel and photon factor together give 1, the photon factor alone
/// gives 1, an empty mode gives 1, and a bare number kernel gives 0. So the
/// result is 1 when σ keeps the first `n` modes among themselves and 0
/// otherwise.
pub fn analytic_permutation_probability(spec: &PermutationSpec, n: usize) -> Result<f64> {
    let m = spec.len();
    if n > m {
        return Err(Error::InvalidArgument(format!("{n} photons exceed {m} modes")));
    }
    let (x1, x2) = (radial_moment(1), radial_moment(2));
    let photon_and_kernel = 4.0 * x2 - 3.0 * x1 + 0.5; // E[(4x - 1)(x - 1/2)]
    let photon_only = 4.0 * x1 - 1.0;
    let kernel_only = x1 - 0.5;

    let mut value = 1.0;
    for (k, &target) in spec.mapping().iter().enumerate() {
        let has_kernel = k < n;
        let has_photon = target < n;
        value *= match (has_kernel, has_photon) {
            (true, true) => photon_and_kernel,
            (true, false) => kernel_only,
            (false, true) => photon_only,
            (false, false) => 1.0,
        };
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_random_unitary, permutation_unitary};

    #[test]
    fn running_stats_match_two_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1 - 3.0).collect();
        let mut s = RunningStats::default();
        xs.iter().for_each(|&x| s.push(x));
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        assert!((s.mean() - mean).abs() < 1e-12);
        assert!((s.sample_variance() - var).abs() < 1e-10);
    }

    #[test]
    fn merge_equals_sequential() {
        let xs: Vec<f64> = (0..500).map(|i| (i as f64).sin() * 10.0).collect();
        let mut whole = RunningStats::default();
        xs.iter().for_each(|&x| whole.push(x));
        let parts: Vec<RunningStats> = xs
            .chunks(37)
            .map(|c| {
                let mut s = RunningStats::default();
                c.iter().for_each(|&x| s.push(x));
                s
            })
            .collect();
        let merged = merge_pairwise(&parts);
        assert_eq!(merged.count(), 500);
        assert!((merged.mean() - whole.mean()).abs() < 1e-12);
        assert!((merged.sample_variance() - whole.sample_variance()).abs() < 1e-9);
        assert_eq!(merge_pairwise(&[]), RunningStats::default());
    }

    #[test]
    fn gaussian_sampler_moments() {
        let mut rng = chunk_rng(42, 0);
        let draws = 1_000_000;
        let mut r2 = RunningStats::default();
        let mut re = RunningStats::default();
        let mut im = RunningStats::default();
        for _ in 0..draws {
            let p = sample_gaussian_phase_space(1, &mut rng);
            r2.push(p[0].norm_sqr());
            re.push(p[0].re);
            im.push(p[0].im);
        }
        assert!((r2.mean() - 0.5).abs() <= 0.002, "{}", r2.mean());
        assert!(re.mean().abs() <= 4.0 * re.std_error());
        assert!(im.mean().abs() <= 4.0 * im.std_error());
    }

    #[test]
    fn sampler_is_deterministic() {
        let a: Vec<_> = (0..5)
            .map({
                let mut rng = chunk_rng(9, 3);
                move |_| sample_gaussian_phase_space(3, &mut rng)
            })
            .collect();
        let b: Vec<_> = (0..5)
            .map({
                let mut rng = chunk_rng(9, 3);
                move |_| sample_gaussian_phase_space(3, &mut rng)
            })
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_small_budgets() {
        assert!(MonteCarlo::new(999, 0).is_err());
        let u = haar_random_unitary(2, 0).unwrap();
        assert!(mc_probability(&u, 1, IntegralForm::Full, 10, 0).is_err());
        assert!(mc_probability(&u, 3, IntegralForm::Full, 1000, 0).is_err());
    }

    #[test]
    fn non_finite_integrand_aborts() {
        let mc = MonteCarlo::new(1000, 1).unwrap();
        let err = mc.estimate(1, EstimateTag::Custom, |a| if a[0].re > 0.5 { f64::NAN } else { 0.0 });
        assert!(matches!(err, Err(Error::NonFinite(_))));
    }

    #[test]
    fn partial_final_chunk_counts_every_sample() {
        let mc = MonteCarlo::new(CHUNK_SIZE * 2 + 17, 5).unwrap();
        let est = mc.estimate(2, EstimateTag::Custom, |_| 1.0).unwrap();
        assert_eq!(est.n_samples, CHUNK_SIZE * 2 + 17);
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn analytic_permutation_cases() {
        assert_eq!(
            analytic_permutation_probability(&PermutationSpec::identity(1), 1).unwrap(),
            1.0
        );
        assert_eq!(
            analytic_permutation_probability(&PermutationSpec::identity(4), 0).unwrap(),
            1.0
        );
        // (3 1 2 | 5 6 4): leading block mapped onto itself
        let keep = PermutationSpec::from_one_based(&[3, 1, 2, 5, 6, 4]).unwrap();
        assert_eq!(analytic_permutation_probability(&keep, 3).unwrap(), 1.0);
        // sends input 1 to output 4: no coincidence in the first three outputs
        let leak = PermutationSpec::from_one_based(&[4, 1, 2, 3, 6, 5]).unwrap();
        assert_eq!(analytic_permutation_probability(&leak, 3).unwrap(), 0.0);
        assert_eq!(permanent_probability(&permutation_unitary(&leak), 3).unwrap(), 0.0);
        assert!(analytic_permutation_probability(&keep, 7).is_err());
    }

    #[test]
    fn radial_moments() {
        assert_eq!(radial_moment(0), 1.0);
        assert_eq!(radial_moment(1), 0.5);
        assert_eq!(radial_moment(2), 0.5);
        assert_eq!(radial_moment(3), 0.75);
    }

    #[test]
    fn form_names_parse() {
        for f in IntegralForm::ALL {
            assert_eq!(f.name().parse::<IntegralForm>().unwrap(), f);
        }
        assert_eq!("no-constant".parse::<IntegralForm>().unwrap(), IntegralForm::NoConstant);
        assert!("bogus".parse::<IntegralForm>().is_err());
    }

    #[test]
    fn estimate_json_shape() {
        let est = verify_identity(GaussianIdentity::IdPi, 1000, 3).unwrap();
        let v: serde_json::Value = serde_json::to_value(est).unwrap();
        assert_eq!(v["form"], "IDPI");
        assert_eq!(v["n_samples"], 1000);
        assert_eq!(v["seed"], 3);
    }

    #[test]
    fn z_scores() {
        assert_eq!(z_score(0.0, 0.0), 0.0);
        assert_eq!(z_score(1.0, 0.0), f64::INFINITY);
        assert_eq!(z_score(-2.0, 0.5), -4.0);
    }
}
