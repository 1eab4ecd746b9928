//! Command-line front end: input parsing, command drivers and report rendering.

pub mod format;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use tvariety::betti::{betti_report, BettiReport};
use tvariety::divisorial::{
    faces_at, is_complete_variety, is_contraction_free, support, validate_divisorial_fan,
    CurvePoint,
};
use tvariety::hpoly::{h_polynomial, HVector};
use tvariety::ErrorCategory;

pub use format::{FanDocument, InputDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_AXIOM: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("parse error at line {line}, column {column}{}: {message}", at_path(.path))]
    Parse {
        line: usize,
        column: usize,
        path: String,
        message: String,
    },

    #[error("{path}: {source}")]
    Field {
        path: String,
        source: tvariety::Error,
    },

    #[error(transparent)]
    Core(#[from] tvariety::Error),
}

fn at_path(path: &str) -> String {
    if path.is_empty() {
        String::new()
    } else {
        format!(" ({path})")
    }
}

fn category_code(c: ErrorCategory) -> i32 {
    match c {
        ErrorCategory::Input => EXIT_PARSE,
        ErrorCategory::Axiom => EXIT_AXIOM,
        ErrorCategory::Precondition => EXIT_PRECONDITION,
        ErrorCategory::Internal => EXIT_INTERNAL,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } | CliError::Parse { .. } => EXIT_PARSE,
            CliError::Field { source, .. } | CliError::Core(source) => {
                category_code(source.category())
            }
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tvariety", version, about = "Intersection cohomology of complexity-one T-varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a divisorial fan.
    Validate { file: PathBuf },
    /// Poincaré polynomial of intersection cohomology.
    Betti {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// h-vector of a complete fan.
    ToricH { fanfile: PathBuf },
    /// Torus orbits in the fibre over a point.
    Orbits {
        file: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Refine a fan to a simplicial one.
    Simplicialize {
        fanfile: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

/// Everything a command prints, with its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn execute(command: &Command) -> Outcome {
    match dispatch(command) {
        Ok((stdout, code)) => Outcome {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn dispatch(command: &Command) -> Result<(String, i32), CliError> {
    match command {
        Command::Validate { file } => validate(&read(file)?),
        Command::Betti { file, format } => Ok((betti(&read(file)?, *format)?, EXIT_OK)),
        Command::ToricH { fanfile } => Ok((toric_h(&read(fanfile)?)?, EXIT_OK)),
        Command::Orbits { file, point } => orbits(&read(file)?, point),
        Command::Simplicialize { fanfile, output } => {
            let (written, summary) = simplicialize(&read(fanfile)?)?;
            std::fs::write(output, written).map_err(|source| CliError::Write {
                path: output.clone(),
                source,
            })?;
            Ok((summary, EXIT_OK))
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The validation report and its exit status.
pub fn validate(text: &str) -> Result<(String, i32), CliError> {
    let e = InputDocument::parse(text)?.to_fan()?;
    let report = validate_divisorial_fan(&e);
    let mut out = String::new();
    writeln!(out, "valid: {}", yes_no(report.is_valid())).unwrap();
    writeln!(out, "members: {}", e.divisors().len()).unwrap();
    for v in &report.violations {
        writeln!(out, "violation: {v}").unwrap();
    }
    for n in &report.notes {
        writeln!(out, "note: {n}").unwrap();
    }
    if !report.is_valid() {
        return Ok((out, EXIT_AXIOM));
    }
    writeln!(out, "support: [{}]", support(&e).join(", ")).unwrap();
    writeln!(out, "contraction-free: {}", yes_no(is_contraction_free(&e).holds)).unwrap();
    writeln!(out, "complete: {}", yes_no(is_complete_variety(&e))).unwrap();
    Ok((out, EXIT_OK))
}

#[derive(Serialize)]
struct MachineReport<'a> {
    poincare: Vec<i64>,
    dim: usize,
    h_tail: &'a [i64],
    h_slices: std::collections::BTreeMap<&'a str, &'a [i64]>,
    genus: u32,
    support_size: usize,
    pipeline: &'static str,
    diagnostics: &'a [String],
}

fn tuple(xs: &[i64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn render_text(r: &BettiReport) -> String {
    let mut out = String::new();
    writeln!(out, "P(t) = {}", r.poincare).unwrap();
    writeln!(out, "betti = {}", tuple(&r.betti_numbers())).unwrap();
    writeln!(out, "dim = {}", r.dim).unwrap();
    writeln!(out, "genus = {}", r.genus).unwrap();
    writeln!(out, "support_size = {}", r.support_size).unwrap();
    writeln!(out, "h_tail = {}", r.h_tail).unwrap();
    for (y, h) in &r.h_slices {
        writeln!(out, "h_slice[{y}] = {h}").unwrap();
    }
    writeln!(out, "pipeline = {}", r.pipeline).unwrap();
    for d in &r.diagnostics {
        writeln!(out, "diagnostic: {d}").unwrap();
    }
    out
}

/// Compact JSON, keys in the order of the report fields, one trailing newline.
pub fn render_machine(r: &BettiReport) -> String {
    let m = MachineReport {
        poincare: r.betti_numbers(),
        dim: r.dim,
        h_tail: r.h_tail.coeffs(),
        h_slices: r
            .h_slices
            .iter()
            .map(|(y, h)| (y.as_str(), h.coeffs()))
            .collect(),
        genus: r.genus,
        support_size: r.support_size,
        pipeline: r.pipeline.as_str(),
        diagnostics: &r.diagnostics,
    };
    let mut s = serde_json::to_string(&m).expect("serializable");
    s.push('\n');
    s
}

pub fn betti(text: &str, format: ReportFormat) -> Result<String, CliError> {
    let e = InputDocument::parse(text)?.to_fan()?;
    let r = betti_report(&e)?;
    Ok(match format {
        ReportFormat::Text => render_text(&r),
        ReportFormat::Machine => render_machine(&r),
    })
}

pub fn toric_h(text: &str) -> Result<String, CliError> {
    let fan = FanDocument::parse(text)?.to_fan()?;
    let h = h_polynomial(&fan.cone_poset()?);
    let hv = HVector::from_polynomial(&h, fan.ambient_rank());
    Ok(format!("h = {}\nP(t) = {}\n", tuple(&hv.0), h.in_t_squared()))
}

pub fn orbits(text: &str, point: &str) -> Result<(String, i32), CliError> {
    let e = InputDocument::parse(text)?.to_fan()?;
    let report = validate_divisorial_fan(&e);
    if !report.is_valid() {
        return Err(tvariety::Error::InvalidFan(report.summary()).into());
    }
    let (y, kind) = if e.curve().has_point(point) {
        (CurvePoint::Labeled(point), "labelled")
    } else {
        (CurvePoint::Generic, "generic")
    };
    let faces = faces_at(&e, y);
    let mut out = String::new();
    writeln!(out, "point {point} ({kind}): {} orbits", faces.len()).unwrap();
    for (f, codim) in &faces {
        writeln!(out, "orbit of dimension {codim}: {f}").unwrap();
    }
    Ok((out, EXIT_OK))
}

/// The refined fan file and a one-line summary.
pub fn simplicialize(text: &str) -> Result<(String, String), CliError> {
    let fan = FanDocument::parse(text)?.to_fan()?;
    let refined = fan.simplicialize()?;
    let doc = FanDocument::from_fan(&refined);
    let summary = format!(
        "{} maximal cones refined into {}\n",
        fan.maximal_indices().len(),
        doc.cones.len()
    );
    Ok((doc.to_json(), summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tvariety::Error;

    #[test]
    fn exit_codes_follow_error_categories() {
        let code = |e: Error| CliError::from(e).exit_code();
        assert_eq!(code(Error::UnknownPoint("q".into())), EXIT_PARSE);
        assert_eq!(code(Error::InvalidFan("x".into())), EXIT_AXIOM);
        assert_eq!(code(Error::NotComplete), EXIT_PRECONDITION);
        assert_eq!(code(Error::Precondition("x".into())), EXIT_PRECONDITION);
        assert_eq!(code(Error::Invariant("main and simplicial disagree".into())), EXIT_INTERNAL);
    }
}
