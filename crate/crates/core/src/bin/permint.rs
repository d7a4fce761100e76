use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use permint::fock::{amplitude, output_distribution, PhotonConfiguration};
use permint::linalg::{
    haar_random_unitary, permutation_unitary, ComplexMatrix, PermutationSpec, UnitaryMatrix, DEFAULT_UNITARITY_TOL,
};
use permint::macmahon::permanent_via_macmahon;
use permint::mcint::{GaussianIdentity, IntegralForm, MonteCarlo, Z_THRESHOLD};
use permint::permanent::{permanent_naive, permanent_ryser};
use permint::Error;

/// Directory used for outputs when `--output` is not given.
const OUT_DIR_ENV: &str = "PERMINT_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "permint",
    version,
    about = "Permanents and phase-space integrals for linear-optical networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a Haar-random (or permutation) unitary as JSON.
    GenUnitary {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One-based mapping, e.g. "2 1 3"; overrides the random draw.
        #[arg(long)]
        permutation: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Permanent of a square matrix.
    Permanent {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Ryser)]
        algo: Algo,
    },
    /// Output amplitude of one photon configuration.
    Amplitude {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        n: usize,
        /// Occupations, e.g. "1 1 0".
        #[arg(long)]
        config: String,
    },
    /// Full output distribution as CSV.
    Distribution {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Monte-Carlo estimate of one integral form.
    McIntegrate {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "FULL")]
        form: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// All four integral forms against the permanent; exit 2 on any |z| > 4.
    VerifyEquivalence {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Monte-Carlo checks of the four Gaussian identities; exit 2 on failure.
    Identities {
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Naive,
    Ryser,
    Macmahon,
}

enum Failure {
    Input(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::GenUnitary {
            m,
            seed,
            permutation,
            output,
        } => {
            let u = match permutation {
                Some(text) => {
                    let mapping = parse_indices(&text)?;
                    if mapping.len() != m {
                        return Err(Error::InvalidArgument(format!(
                            "permutation has {} entries, --m is {m}",
                            mapping.len()
                        ))
                        .into());
                    }
                    permutation_unitary(&PermutationSpec::from_one_based(&mapping)?)
                }
                None => haar_random_unitary(m, seed)?,
            };
            let mut out = open_output(output, "unitary.json")?;
            serde_json::to_writer_pretty(&mut out, u.matrix()).map_err(Error::from)?;
            writeln!(out)?;
            out.flush()?;
        }
        Command::Permanent { matrix, algo } => {
            let a = load_matrix(&matrix)?;
            let (value, name) = match algo {
                Algo::Naive => (permanent_naive(&a)?, "naive"),
                Algo::Ryser => (permanent_ryser(&a)?, "ryser"),
                Algo::Macmahon => {
                    let u = UnitaryMatrix::new(a.clone(), DEFAULT_UNITARITY_TOL)?;
                    (permanent_via_macmahon(&u, a.rows())?, "macmahon")
                }
            };
            print_json(&json!({
                "algorithm": name,
                "dimension": a.rows(),
                "re": value.re,
                "im": value.im,
            }))?;
        }
        Command::Amplitude { matrix, n, config } => {
            let u = load_unitary(&matrix)?;
            let t = PhotonConfiguration::parse(&config)?;
            let amp = amplitude(&u, n, &t)?;
            print_json(&json!({
                "config": t.occupations(),
                "re": amp.re,
                "im": amp.im,
                "probability": amp.norm_sqr(),
            }))?;
        }
        Command::Distribution { matrix, n, output } => {
            let u = load_unitary(&matrix)?;
            let dist = output_distribution(&u, n)?;
            let mut out = open_output(output, "distribution.csv")?;
            dist.write_csv(&mut out)?;
            out.flush()?;
        }
        Command::McIntegrate {
            matrix,
            n,
            form,
            samples,
            seed,
            workers,
        } => {
            let u = load_unitary(&matrix)?;
            let form: IntegralForm = form.parse()?;
            let est = monte_carlo(samples, seed, workers)?.probability(&u, n, form)?;
            print_json(&est)?;
        }
        Command::VerifyEquivalence {
            matrix,
            n,
            samples,
            seed,
            workers,
        } => {
            let u = load_unitary(&matrix)?;
            let report = monte_carlo(samples, seed, workers)?.cross_form_report(&u, n)?;
            print_json(&report)?;
            if !report.passes(Z_THRESHOLD) {
                let worst = report.forms.iter().map(|f| f.z.abs()).fold(0.0, f64::max);
                return Err(Failure::Verification(format!(
                    "largest |z| = {worst:.3} > {Z_THRESHOLD}"
                )));
            }
        }
        Command::Identities { samples, seed, workers } => {
            let mc = monte_carlo(samples, seed, workers)?;
            let mut failed = Vec::new();
            for which in GaussianIdentity::ALL {
                let est = mc.identity(which)?;
                let reference = which.reference();
                let z = est.z_score(reference);
                let pass = est.within(reference, Z_THRESHOLD);
                print_json(&json!({
                    "form": est.form,
                    "mean": est.mean,
                    "std_error": est.std_error,
                    "n_samples": est.n_samples,
                    "seed": est.seed,
                    "reference": reference,
                    "z": z,
                    "pass": pass,
                }))?;
                if !pass {
                    failed.push(which.name());
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Verification(format!(
                    "identities outside {Z_THRESHOLD} sigma: {}",
                    failed.join(", ")
                )));
            }
        }
    }
    Ok(())
}

fn monte_carlo(samples: u64, seed: u64, workers: Option<usize>) -> Result<MonteCarlo, Error> {
    let mc = MonteCarlo::new(samples, seed)?;
    Ok(match workers {
        Some(w) => mc.with_workers(w),
        None => mc,
    })
}

fn parse_indices(text: &str) -> Result<Vec<usize>, Error> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|e| Error::InvalidArgument(format!("bad index {s:?}: {e}")))
        })
        .collect()
}

fn load_matrix(path: &Path) -> Result<ComplexMatrix, Error> {
    let file = File::open(path)?;
    Ok(serde_json::from_reader(io::BufReader::new(file))?)
}

fn load_unitary(path: &Path) -> Result<UnitaryMatrix, Error> {
    UnitaryMatrix::new(load_matrix(path)?, DEFAULT_UNITARITY_TOL)
}

fn open_output(path: Option<PathBuf>, default_name: &str) -> Result<Box<dyn Write>, Error> {
    let path = path.or_else(|| std::env::var_os(OUT_DIR_ENV).map(|dir| PathBuf::from(dir).join(default_name)));
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}
