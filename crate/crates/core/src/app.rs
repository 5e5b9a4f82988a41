//! Command-line surface. `run` is the whole program minus logger setup, so
//! tests can drive it in-process and assert on exit codes.
//!
//! Exit codes: 0 success, 1 a verification or equality failure, 2 an I/O or
//! configuration problem.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::curvature::verify_curvature_identities;
use crate::error::{Error, Result};
use crate::fiber::{verify_fiber_identities, SU3Structure};
use crate::hodge_model::{build_model, degree2_block, verify_hodge_model};
use crate::jets::verify_jet_identities;
use crate::linalg::{poly_from_roots, q};
use crate::report::{parse_sections, Section, VerificationCertificate};
use crate::spectra::{parse_cutoff, SpectraConfig, SpectralBundle, SpectralEngine, DEFAULT_CUTOFF};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "nearkahler", version, about = "Identity certificates and Laplace spectra for nearly Kähler 6-manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Block cache directory (spectrum and moduli only).
    #[arg(long, global = true, env = "NEARKAHLER_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol_cluster: f64,

    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_operator: f64,

    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol_oracle: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the algebraic identities and the spectral engine's invariants.
    Verify {
        /// fiber|curvature|jets|hodge|spectra|all, or 2..6
        #[arg(long, default_value = "all")]
        section: String,
        /// Casimir cutoff for the spectral block sweep.
        #[arg(long, default_value = "24")]
        cutoff: String,
    },
    /// Merged eigenvalue list of one Laplacian up to a Casimir cutoff.
    Spectrum {
        /// lambda0|lambda2|coclosed11|tt
        #[arg(long)]
        bundle: String,
        #[arg(long, default_value_t = DEFAULT_CUTOFF.to_string())]
        cutoff: String,
    },
    /// Blockwise comparison of Einstein deformations with E(2) + E(6) + E(12).
    Moduli {
        #[arg(long, default_value_t = DEFAULT_CUTOFF.to_string())]
        cutoff: String,
    },
}

/// Degree-2 Laplacian on span{φ, δσ, *dσ} of the model complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Degree2Table {
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub charpoly: Vec<String>,
    pub eigenvalues: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub certificate: VerificationCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral_cutoff: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree2: Option<Degree2Table>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = self.certificate.to_text();
        if let Some(c) = &self.spectral_cutoff {
            let _ = writeln!(out, "spectral blocks checked up to Casimir {c}");
        }
        if let Some(t) = &self.degree2 {
            let _ = writeln!(out, "degree-2 Laplacian on {{{}}} (column k is Δ of basis element k):", t.basis.join(", "));
            for (name, row) in t.basis.iter().zip(&t.matrix) {
                let _ = writeln!(out, "  {name:>4} | {}", row.iter().map(|x| format!("{x:>6}")).collect::<String>());
            }
            let _ = writeln!(out, "  characteristic polynomial (ascending): [{}]", t.charpoly.join(", "));
            let _ = writeln!(out, "  eigenvalues: {}", t.eigenvalues.join(", "));
        }
        out
    }
}

fn degree2_table() -> Result<Option<Degree2Table>> {
    let models = build_model()?;
    let Some(m) = degree2_block(&models.a) else { return Ok(None) };
    let chi = m.charpoly();
    let roots = [q(2), q(6), q(12)];
    let eigenvalues = if chi == poly_from_roots(&roots) {
        roots.iter().map(|r| r.to_string()).collect()
    } else {
        vec!["characteristic polynomial does not split as (λ−2)(λ−6)(λ−12)".to_string()]
    };
    Ok(Some(Degree2Table {
        basis: vec!["φ".into(), "δσ".into(), "*dσ".into()],
        matrix: (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect(),
        charpoly: chi.iter().map(|x| x.to_string()).collect(),
        eigenvalues,
    }))
}

enum Outcome {
    Pass(String),
    Fail(String, String),
}

fn config(cli: &Cli) -> SpectraConfig {
    SpectraConfig {
        tol_cluster: cli.tol_cluster,
        tol_operator: cli.tol_operator,
        tol_oracle: cli.tol_oracle,
    }
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Text => text(value),
    })
}

fn run_verify(cli: &Cli, section: &str, cutoff: &str) -> Result<Outcome> {
    let sections = parse_sections(section)?;
    let cutoff = parse_cutoff(cutoff)?;
    config(cli).validate()?;
    let s = SU3Structure::standard();
    let mut checks = Vec::new();
    let mut spectral_cutoff = None;
    let mut degree2 = None;
    for sec in &sections {
        match sec {
            Section::Fiber => checks.extend(verify_fiber_identities(&s)?),
            Section::Curvature => checks.extend(verify_curvature_identities(&s)?),
            Section::Jets => checks.extend(verify_jet_identities(&s)?),
            Section::Hodge => {
                checks.extend(verify_hodge_model()?);
                degree2 = degree2_table()?;
            }
            Section::Spectra => {
                let engine = match SpectralEngine::new(config(cli), None) {
                    Ok(e) => e,
                    // a broken setup is a verification failure, with its diagnostic
                    Err(Error::Geometry(msg)) => {
                        return Ok(Outcome::Fail(String::new(), format!("spectral setup: {msg}")))
                    }
                    Err(e) => return Err(e),
                };
                checks.extend(engine.verify(cutoff)?);
                spectral_cutoff = Some(cutoff.to_string());
            }
        }
    }
    let report = VerifyReport {
        certificate: VerificationCertificate::new(sections, checks),
        spectral_cutoff,
        degree2,
    };
    let body = render(cli.format, &report, VerifyReport::to_text)?;
    Ok(if report.certificate.passed {
        Outcome::Pass(body)
    } else {
        let first = report.certificate.failures().next().expect("a failure");
        let why = format!(
            "identity {} fails at {}",
            first.id,
            first.witness.as_deref().unwrap_or("?")
        );
        Outcome::Fail(body, why)
    })
}

fn engine(cli: &Cli) -> Result<SpectralEngine> {
    SpectralEngine::new(config(cli), cli.cache_dir.clone())
}

fn run_spectrum(cli: &Cli, bundle: &str, cutoff: &str) -> Result<Outcome> {
    let bundle: SpectralBundle = bundle.parse()?;
    let cutoff = parse_cutoff(cutoff)?;
    let report = engine(cli)?.spectrum(bundle, cutoff)?;
    Ok(Outcome::Pass(render(cli.format, &report, |r| r.to_text())?))
}

fn run_moduli(cli: &Cli, cutoff: &str) -> Result<Outcome> {
    let cutoff = parse_cutoff(cutoff)?;
    let report = engine(cli)?.moduli(cutoff)?;
    let body = render(cli.format, &report, |r| r.to_text())?;
    Ok(if report.equality {
        Outcome::Pass(body)
    } else {
        let why = match report.blocks.iter().find(|b| !b.equal) {
            Some(b) => format!(
                "block {}: dim ker(Δ_L − 10)|TT = {} but E(2) + E(6) + E(12) = {}",
                b.irrep, b.tt10, b.e_sum
            ),
            None => "totals differ".to_string(),
        };
        Outcome::Fail(body, why)
    })
}

fn write_output(path: Option<&Path>, body: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, body)?;
            writeln!(out, "wrote {}", p.display())?;
        }
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Io(_) | Error::Json(_) | Error::Cache(_) => EXIT_CONFIG,
        _ => EXIT_VERIFY,
    }
}

/// Parses `args` (program name first), runs the command, writes the report
/// to `out` or `--output`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            if e.use_stderr() {
                eprint!("{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Verify { section, cutoff } => run_verify(&cli, section, cutoff),
        Command::Spectrum { bundle, cutoff } => run_spectrum(&cli, bundle, cutoff),
        Command::Moduli { cutoff } => run_moduli(&cli, cutoff),
    };
    let (body, failure) = match outcome {
        Ok(Outcome::Pass(b)) => (b, None),
        Ok(Outcome::Fail(b, why)) => (b, Some(why)),
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    if !body.is_empty() {
        if let Err(e) = write_output(cli.output.as_deref(), &body, out) {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    }
    match failure {
        None => EXIT_OK,
        Some(why) => {
            eprintln!("verification failed: {why}");
            EXIT_VERIFY
        }
    }
}
