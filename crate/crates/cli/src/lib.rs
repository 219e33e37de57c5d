//! Command-line front end for `qudit-entropy`.
//!
//! Exit codes: 0 success or all inequalities satisfied, 1 an inequality is
//! violated or the matrix is not a density matrix, 2 invalid input or an
//! undefined entropy.

pub mod args;
pub mod plot;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use serde::Serialize;

use qudit_entropy::density::{read_matrix, validate, write_matrix, DensityMatrix};
use qudit_entropy::entropy::{
    check_bipartite, check_extra, check_paper_ssa, check_ssa_consistent, matrix_entropy, EntropyOptions,
    InequalityReport,
};
use qudit_entropy::linalg::ComplexMatrix;
use qudit_entropy::partition::{left_marginal, paper_map, right_marginal, tri_marginal, PaperMap};
use qudit_entropy::search::run_search;
use qudit_entropy::toymodel::{sweep_csv, toy_density, toy_sweep, ToyView};
use qudit_entropy::Error;

use crate::args::{Cli, Command, Emit, Inequality, Side};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// A failure that ends the command with exit code 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NegativeSpectrum { .. } => Failure(format!("{e} (the state is outside the PSD cone)")),
            other => Failure(other.to_string()),
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Validate { file, psd_tol } => cmd_validate(&file, psd_tol, out),
        Command::Reduce { file, split, side, tri, keep, paper_map: map } => {
            let m = load(&file)?;
            let reduced = match (split, tri, map) {
                (Some(split), _, _) => match side.unwrap_or(Side::Left) {
                    Side::Left => left_marginal(&m, split)?,
                    Side::Right => right_marginal(&m, split)?,
                },
                (_, Some(tri), _) => {
                    let keep = keep.ok_or_else(|| Failure("--tri needs --keep".into()))?;
                    tri_marginal(&m, tri, keep)?
                }
                (_, _, Some(which)) => paper_map(&m, which)?,
                _ => return Err(Failure("select one of --split, --tri, --paper-map".into())),
            };
            emit(out, write_matrix(&reduced))
        }
        Command::Entropy { file, split, base, force } => {
            let rho = load_density(&file, force)?;
            let opts = EntropyOptions::with_base(base.into());
            let mut doc = serde_json::Map::new();
            let s = matrix_entropy(rho.matrix(), &opts)?;
            doc.insert("S".into(), s.into());
            if let Some(split) = split {
                let s1 = matrix_entropy(&left_marginal(rho.matrix(), split)?, &opts)?;
                let s2 = matrix_entropy(&right_marginal(rho.matrix(), split)?, &opts)?;
                doc.insert("split".into(), split.to_string().into());
                doc.insert("S_1".into(), s1.into());
                doc.insert("S_2".into(), s2.into());
                doc.insert("I".into(), (s1 + s2 - s).into());
            }
            emit(out, to_json(&doc)?)
        }
        Command::Check { file, inequality, split, tri, base, force } => {
            let rho = load_density(&file, force)?;
            let opts = EntropyOptions::with_base(base.into());
            let reports = run_check(&rho, inequality, split, tri, &opts)?;
            let all = reports.iter().all(|r| r.satisfied);
            #[derive(Serialize)]
            struct CheckOutput<'a> {
                reports: &'a [InequalityReport],
                all_satisfied: bool,
            }
            write_text(out, &to_json(&CheckOutput { reports: &reports, all_satisfied: all })?)?;
            Ok(if all { EXIT_OK } else { EXIT_VIOLATED })
        }
        Command::Toy { p, emit: which } => {
            let state = toy_density(p)?;
            let view = match which {
                Emit::Full => ToyView::Full,
                Emit::Padded => ToyView::Padded,
                Emit::R1 => ToyView::Map(PaperMap::R1),
                Emit::R2 => ToyView::Map(PaperMap::R2),
                Emit::Rho12 => ToyView::Map(PaperMap::Rho12),
                Emit::Rho23 => ToyView::Map(PaperMap::Rho23),
                Emit::Rho2 => ToyView::Map(PaperMap::Rho2),
                Emit::T1 => ToyView::Map(PaperMap::Rho1T),
                Emit::T3 => ToyView::Map(PaperMap::Rho3T),
            };
            emit(out, write_matrix(&view.of(&state.matrix)?))
        }
        Command::Sweep { from, to, steps, out: csv_path, svg } => {
            let records = toy_sweep(from, to, steps, &EntropyOptions::default())?;
            write_file(&csv_path, &sweep_csv(&records))?;
            if let Some(svg_path) = svg {
                write_file(&svg_path, &plot::sweep_svg(&records))?;
            }
            let valid = records.iter().filter(|r| r.valid).count();
            write_text(
                out,
                &format!("wrote {} rows ({valid} valid) to {}\n", records.len(), csv_path.display()),
            )?;
            Ok(EXIT_OK)
        }
        Command::Search { dim, trials, seed, target, log } => {
            let run = run_search(target, dim, trials, seed, &EntropyOptions::default())?;
            if let Some(path) = log {
                write_file(&path, &run.slack_log())?;
            }
            emit(out, to_json(&run.summary)?)
        }
    }
}

fn cmd_validate(file: &Path, psd_tol: f64, out: &mut dyn Write) -> CmdResult {
    let m = load(file)?;
    let report = validate(&m, psd_tol);
    #[derive(Serialize)]
    struct ValidateOutput {
        dim: usize,
        #[serde(flatten)]
        report: qudit_entropy::ValidationReport,
        valid: bool,
    }
    let valid = report.is_valid();
    write_text(out, &to_json(&ValidateOutput { dim: m.dim(), report, valid })?)?;
    Ok(if valid { EXIT_OK } else { EXIT_VIOLATED })
}

fn run_check(
    rho: &DensityMatrix,
    inequality: Inequality,
    split: Option<qudit_entropy::BipartiteSplit>,
    tri: Option<qudit_entropy::TripartiteSplit>,
    opts: &EntropyOptions,
) -> Result<Vec<InequalityReport>, Failure> {
    let need_split = || split.ok_or_else(|| Failure("this inequality needs --split n,m".into()));
    Ok(match inequality {
        Inequality::Subadd => vec![check_bipartite(rho, need_split()?, opts)?[0].clone()],
        Inequality::ArakiLieb => vec![check_bipartite(rho, need_split()?, opts)?[1].clone()],
        Inequality::SsaConsistent => {
            let tri = tri.ok_or_else(|| Failure("ssa-consistent needs --tri d1,d2,d3".into()))?;
            vec![check_ssa_consistent(rho, tri, opts)?]
        }
        Inequality::SsaPaper => vec![check_paper_ssa(rho, opts)?],
        Inequality::Extra => check_extra(rho, opts)?.to_vec(),
    })
}

fn load(path: &Path) -> Result<ComplexMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    read_matrix(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_density(path: &Path, force: bool) -> Result<DensityMatrix, Failure> {
    let m = load(path)?;
    let loaded = if force { DensityMatrix::forced(m) } else { DensityMatrix::new(m) };
    loaded.map_err(|e| match e {
        Error::InvalidDensity(report) if !force && report.is_admissible_forced() => Failure(format!(
            "not a density matrix ({report}); pass --force to admit non-PSD matrices"
        )),
        other => other.into(),
    })
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn write_text(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure(format!("stdout: {e}")))
}

fn emit(out: &mut dyn Write, text: String) -> CmdResult {
    write_text(out, &text)?;
    Ok(EXIT_OK)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

