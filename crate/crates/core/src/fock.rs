//! Output amplitudes in the photon-number basis.
//!
//! The input is always one photon in each of the modes `0..n` and vacuum
//! elsewhere. An output configuration `T` has amplitude
//! `perm(U_T) / sqrt(Π_k T_k!)`, where `U_T` comes from
//! [`submatrix_for_output`].

use std::fmt;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{submatrix_for_output, UnitaryMatrix};
use crate::permanent::{permanent_ryser, EMPTY_PERMANENT};

/// Most configurations [`output_distribution`] will tabulate.
pub const MAX_DISTRIBUTION_ENTRIES: u64 = 1_000_000;
pub const ORACLE_MAX_PHOTONS: usize = 5;
pub const ORACLE_MAX_MODES: usize = 8;

const MAX_FACTORIAL: usize = 30;

/// Photon count per mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhotonConfiguration(Vec<usize>);

impl PhotonConfiguration {
    pub fn new(occupations: Vec<usize>) -> Self {
        PhotonConfiguration(occupations)
    }

    /// `n` photons in the first `n` of `m` modes.
    pub fn leading(n: usize, m: usize) -> Self {
        PhotonConfiguration((0..m).map(|k| usize::from(k < n)).collect())
    }

    pub fn occupations(&self) -> &[usize] {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Parses whitespace- or comma-separated occupations, e.g. `"1 1 0"`.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|e| Error::InvalidArgument(format!("bad occupation {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(PhotonConfiguration)
    }
}

impl fmt::Display for PhotonConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistributionEntry {
    pub config: PhotonConfiguration,
    pub amplitude: Complex64,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputDistribution {
    pub n: usize,
    pub m: usize,
    pub entries: Vec<DistributionEntry>,
}

impl OutputDistribution {
    pub fn total_probability(&self) -> f64 {
        self.entries.iter().map(|e| e.probability).sum()
    }

    pub fn probability_of(&self, config: &PhotonConfiguration) -> Option<f64> {
        self.entries.iter().find(|e| &e.config == config).map(|e| e.probability)
    }

    /// CSV with header `T,re_amp,im_amp,prob`; `T` is space-separated occupations.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "T,re_amp,im_amp,prob")?;
        for e in &self.entries {
            writeln!(
                out,
                "{},{:e},{:e},{:e}",
                e.config, e.amplitude.re, e.amplitude.im, e.probability
            )?;
        }
        Ok(())
    }
}

/// All weak compositions of `n` into `m` parts, in lexicographic order.
pub fn enumerate_configurations(n: usize, m: usize) -> Vec<PhotonConfiguration> {
    assert!(m >= 1, "need at least one mode");
    let mut out = Vec::new();
    let mut current = vec![0; m];
    compositions(n, 0, &mut current, &mut out);
    out
}

fn compositions(remaining: usize, pos: usize, current: &mut Vec<usize>, out: &mut Vec<PhotonConfiguration>) {
    let m = current.len();
    if pos == m - 1 {
        current[pos] = remaining;
        out.push(PhotonConfiguration(current.clone()));
        return;
    }
    for t in 0..=remaining {
        current[pos] = t;
        compositions(remaining - t, pos + 1, current, out);
    }
}

/// `C(n + m - 1, n)`, the number of ways to place `n` photons in `m` modes.
pub fn configuration_count(n: usize, m: usize) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one mode".into()));
    }
    let mut acc: u128 = 1;
    for i in 1..=n as u128 {
        // acc * (m - 1 + i) / i stays integral: it is C(m - 1 + i, i).
        acc = acc
            .checked_mul(m as u128 - 1 + i)
            .ok_or_else(|| Error::Overflow(format!("C({}, {n}) exceeds 64 bits", n + m - 1)))?
            / i;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow(format!("C({}, {n}) exceeds 64 bits", n + m - 1)))
}

fn factorial(k: usize) -> Result<f64> {
    if k > MAX_FACTORIAL {
        return Err(Error::SizeGuard(format!("occupation {k} exceeds {MAX_FACTORIAL}")));
    }
    Ok((1..=k).map(|i| i as f64).product())
}

fn occupation_factorials(config: &PhotonConfiguration) -> Result<f64> {
    config
        .occupations()
        .iter()
        .try_fold(1.0, |acc, &t| Ok(acc * factorial(t)?))
}

fn check_config(u: &UnitaryMatrix, n: usize, config: &PhotonConfiguration) -> Result<()> {
    if config.modes() != u.dim() {
        return Err(Error::ConfigurationMismatch(format!(
            "configuration has {} modes, network has {}",
            config.modes(),
            u.dim()
        )));
    }
    if config.total() != n {
        return Err(Error::ConfigurationMismatch(format!(
            "configuration holds {} photons, expected {n}",
            config.total()
        )));
    }
    if n > u.dim() {
        return Err(Error::ConfigurationMismatch(format!(
            "{n} photons exceed {} modes",
            u.dim()
        )));
    }
    Ok(())
}

/// `perm(U_T) / sqrt(Π_k T_k!)`.
pub fn amplitude(u: &UnitaryMatrix, n: usize, config: &PhotonConfiguration) -> Result<Complex64> {
    check_config(u, n, config)?;
    if n == 0 {
        return Ok(EMPTY_PERMANENT);
    }
    let sub = submatrix_for_output(u, n, config)?;
    Ok(permanent_ryser(&sub)? / occupation_factorials(config)?.sqrt())
}

/// Amplitude by expanding `Π_j Σ_k U[j, k] a†_k |0>` term by term.
///
/// Every map `f: {0..n} -> {0..m}` contributes `Π_j U[j, f(j)]` to the
/// configuration given by the multiset image of `f`. Normal-ordering
/// `Π_k (a†_k)^{T_k} |0> = sqrt(Π_k T_k!) |T>` supplies the final factor.
/// Costs `m^n`, independent of any permanent routine.
pub fn fock_oracle_amplitude(u: &UnitaryMatrix, n: usize, config: &PhotonConfiguration) -> Result<Complex64> {
    check_config(u, n, config)?;
    let m = u.dim();
    if n > ORACLE_MAX_PHOTONS || m > ORACLE_MAX_MODES {
        return Err(Error::SizeGuard(format!(
            "brute-force expansion limited to n <= {ORACLE_MAX_PHOTONS}, m <= {ORACLE_MAX_MODES}"
        )));
    }
    let target = config.occupations();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut image = vec![0usize; m];
    let total_maps = m.pow(n as u32);
    for code in 0..total_maps {
        image.iter_mut().for_each(|c| *c = 0);
        let mut term = Complex64::new(1.0, 0.0);
        let mut rest = code;
        for j in 0..n {
            let k = rest % m;
            rest /= m;
            image[k] += 1;
            term *= u[(j, k)];
        }
        if image == target {
            sum += term;
        }
    }
    Ok(sum * occupation_factorials(config)?.sqrt())
}

/// Full table of amplitudes and probabilities over every output configuration.
pub fn output_distribution(u: &UnitaryMatrix, n: usize) -> Result<OutputDistribution> {
    let m = u.dim();
    if n > m {
        return Err(Error::InvalidArgument(format!("{n} photons exceed {m} modes")));
    }
    let count = configuration_count(n, m)?;
    if count > MAX_DISTRIBUTION_ENTRIES {
        return Err(Error::SizeGuard(format!(
            "{count} configurations exceed the limit of {MAX_DISTRIBUTION_ENTRIES}"
        )));
    }
    let entries = enumerate_configurations(n, m)
        .into_par_iter()
        .map(|config| {
            let amp = amplitude(u, n, &config)?;
            Ok(DistributionEntry {
                probability: amp.norm_sqr(),
                amplitude: amp,
                config,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OutputDistribution { n, m, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_random_unitary, permutation_unitary, ComplexMatrix, PermutationSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(v: &[usize]) -> PhotonConfiguration {
        PhotonConfiguration::new(v.to_vec())
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_configurations(1, 1), vec![cfg(&[1])]);
        assert_eq!(
            enumerate_configurations(2, 2),
            vec![cfg(&[0, 2]), cfg(&[1, 1]), cfg(&[2, 0])]
        );
        assert_eq!(enumerate_configurations(3, 5).len(), 35);
        assert_eq!(enumerate_configurations(0, 3), vec![cfg(&[0, 0, 0])]);
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let all = enumerate_configurations(4, 4);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|c| c.total() == 4));
    }

    #[test]
    fn counts() {
        for m in 1..10 {
            assert_eq!(configuration_count(1, m).unwrap(), m as u64);
        }
        assert_eq!(configuration_count(2, 2).unwrap(), 3);
        assert_eq!(configuration_count(3, 5).unwrap(), 35);
        for n in 0..6 {
            for m in 1..6 {
                assert_eq!(
                    configuration_count(n, m).unwrap(),
                    enumerate_configurations(n, m).len() as u64
                );
            }
        }
        // C(66, 33) < 2^64 < C(68, 34)
        assert_eq!(configuration_count(33, 34).unwrap(), 7_219_428_434_016_265_740);
        assert!(matches!(configuration_count(34, 35), Err(Error::Overflow(_))));
        assert!(matches!(configuration_count(1000, 1000), Err(Error::Overflow(_))));
    }

    #[test]
    fn identity_network_amplitude() {
        let u = UnitaryMatrix::new(ComplexMatrix::identity(3), 0.0).unwrap();
        assert_eq!(amplitude(&u, 3, &cfg(&[1, 1, 1])).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(
            fock_oracle_amplitude(&u, 3, &cfg(&[1, 1, 1])).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn hong_ou_mandel() {
        let h = UnitaryMatrix::balanced_beamsplitter();
        let coincidence = amplitude(&h, 2, &cfg(&[1, 1])).unwrap();
        assert_eq!(coincidence.norm_sqr(), 0.0);
        assert!(fock_oracle_amplitude(&h, 2, &cfg(&[1, 1])).unwrap().norm() <= 1e-12);

        let bunched = amplitude(&h, 2, &cfg(&[2, 0])).unwrap();
        assert!((bunched - Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        let sub = submatrix_for_output(&h, 2, &cfg(&[2, 0])).unwrap();
        assert!((permanent_ryser(&sub).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let oracle = fock_oracle_amplitude(&h, 2, &cfg(&[2, 0])).unwrap();
        assert!((oracle - bunched).norm() < 1e-15);
    }

    #[test]
    fn hong_ou_mandel_distribution() {
        let d = output_distribution(&UnitaryMatrix::balanced_beamsplitter(), 2).unwrap();
        let probs: Vec<f64> = d.entries.iter().map(|e| e.probability).collect();
        // lexicographic order: (0,2), (1,1), (2,0)
        assert!((probs[0] - 0.5).abs() < 1e-15);
        assert_eq!(probs[1], 0.0);
        assert!((probs[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn identity_distribution_is_point_mass() {
        let u = UnitaryMatrix::new(ComplexMatrix::identity(2), 0.0).unwrap();
        let d = output_distribution(&u, 2).unwrap();
        assert_eq!(d.probability_of(&cfg(&[1, 1])), Some(1.0));
        assert_eq!(d.probability_of(&cfg(&[2, 0])), Some(0.0));
        assert_eq!(d.probability_of(&cfg(&[0, 2])), Some(0.0));
    }

    #[test]
    fn oracle_matches_permanent_route() {
        for (n, m) in [(1, 1), (2, 3), (3, 4), (3, 5), (4, 4), (5, 6)] {
            let u = haar_random_unitary(m, (n * 31 + m) as u64).unwrap();
            for t in enumerate_configurations(n, m) {
                let a = amplitude(&u, n, &t).unwrap();
                let b = fock_oracle_amplitude(&u, n, &t).unwrap();
                assert!((a - b).norm() <= 1e-10, "{t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn normalization_for_haar_networks() {
        for n in 0..=3 {
            for m in n.max(1)..=5 {
                let u = haar_random_unitary(m, 1000 + (n * 10 + m) as u64).unwrap();
                let d = output_distribution(&u, n).unwrap();
                assert_eq!(d.entries.len() as u64, configuration_count(n, m).unwrap());
                assert!((d.total_probability() - 1.0).abs() <= 1e-9, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn permutation_routes_deterministically() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for m in 2..=5 {
            for n in 1..=m.min(3) {
                let spec = PermutationSpec::random(m, &mut rng);
                let p = permutation_unitary(&spec);
                let mut target = vec![0; m];
                for &k in &spec.mapping()[..n] {
                    target[k] += 1;
                }
                let d = output_distribution(&p, n).unwrap();
                for e in &d.entries {
                    let expected = if e.config.occupations() == target.as_slice() {
                        1.0
                    } else {
                        0.0
                    };
                    assert_eq!(e.probability, expected);
                }
            }
        }
    }

    #[test]
    fn guards_and_mismatches() {
        let u = haar_random_unitary(3, 1).unwrap();
        assert!(matches!(
            amplitude(&u, 2, &cfg(&[1, 1, 1])),
            Err(Error::ConfigurationMismatch(_))
        ));
        assert!(matches!(
            amplitude(&u, 2, &cfg(&[1, 1])),
            Err(Error::ConfigurationMismatch(_))
        ));
        let big = haar_random_unitary(9, 1).unwrap();
        let t = PhotonConfiguration::leading(2, 9);
        assert!(matches!(fock_oracle_amplitude(&big, 2, &t), Err(Error::SizeGuard(_))));
        let wide = haar_random_unitary(30, 1).unwrap();
        assert!(matches!(output_distribution(&wide, 12), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn csv_export() {
        let d = output_distribution(&UnitaryMatrix::balanced_beamsplitter(), 2).unwrap();
        let mut buf = Vec::new();
        d.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "T,re_amp,im_amp,prob");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("1 1,"));
    }

    #[test]
    fn parse_configuration() {
        assert_eq!(PhotonConfiguration::parse("1 1 0").unwrap(), cfg(&[1, 1, 0]));
        assert_eq!(PhotonConfiguration::parse("2,0").unwrap(), cfg(&[2, 0]));
        assert!(PhotonConfiguration::parse("1 x").is_err());
    }
}
