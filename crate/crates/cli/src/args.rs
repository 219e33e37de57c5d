use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use qudit_entropy::entropy::LogBase;
use qudit_entropy::partition::{BipartiteSplit, FactorSet, PaperMap, TripartiteSplit};
use qudit_entropy::search::SearchTarget;
use qudit_entropy::toymodel::{DEFAULT_STEPS, P_MAX};

#[derive(Debug, Parser)]
#[command(name = "qudit-entropy", version, about = "Entropies and entropic inequalities of virtual qudit subsystems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a matrix file holds a density matrix.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = qudit_entropy::density::PSD_TOL)]
        psd_tol: f64,
    },

    /// Write a reduced matrix to standard output.
    #[command(group(ArgGroup::new("map").required(true).args(["split", "tri", "paper_map"])))]
    Reduce {
        file: PathBuf,
        /// Box partition n,m.
        #[arg(long, value_parser = parse_bipartite, requires = "side")]
        split: Option<BipartiteSplit>,
        #[arg(long, value_enum)]
        side: Option<Side>,
        /// Tripartite split d1,d2,d3.
        #[arg(long, value_parser = parse_tripartite, requires = "keep")]
        tri: Option<TripartiteSplit>,
        /// Factors to keep, e.g. 2 or 1,2.
        #[arg(long, value_parser = parse_factor_set)]
        keep: Option<FactorSet>,
        /// One of R1, R2, RHO12, RHO23, RHO2, RHO1T, RHO3T.
        #[arg(long, value_parser = parse_paper_map)]
        paper_map: Option<PaperMap>,
    },

    /// Print the von Neumann entropy, and the mutual information for a split.
    Entropy {
        file: PathBuf,
        #[arg(long, value_parser = parse_bipartite)]
        split: Option<BipartiteSplit>,
        #[arg(long, value_enum, default_value_t = Base::Natural)]
        base: Base,
        /// Admit Hermitian unit-trace matrices that are not PSD.
        #[arg(long)]
        force: bool,
    },

    /// Evaluate an entropic inequality.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        inequality: Inequality,
        #[arg(long, value_parser = parse_bipartite)]
        split: Option<BipartiteSplit>,
        #[arg(long, value_parser = parse_tripartite)]
        tri: Option<TripartiteSplit>,
        #[arg(long, value_enum, default_value_t = Base::Natural)]
        base: Base,
        #[arg(long)]
        force: bool,
    },

    /// Emit the toy-model matrix or one of its marginals.
    Toy {
        /// Parameter in [0, 1/45]; fractions such as 1/90 are accepted.
        #[arg(long, value_parser = parse_real)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Emit::Full)]
        emit: Emit,
    },

    /// Tabulate the toy-model informations over a grid of p.
    Sweep {
        #[arg(long, value_parser = parse_real, default_value_t = 0.0)]
        from: f64,
        #[arg(long, value_parser = parse_real, default_value_t = P_MAX)]
        to: f64,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },

    /// Randomized search for violations of the spin-9/2 inequalities.
    Search {
        #[arg(long, default_value_t = 10)]
        dim: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_target)]
        target: SearchTarget,
        /// Write one `trial_index,slack` row per trial.
        #[arg(long)]
        log: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Base {
    Natural,
    Two,
}

impl From<Base> for LogBase {
    fn from(b: Base) -> Self {
        match b {
            Base::Natural => LogBase::Natural,
            Base::Two => LogBase::Two,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Inequality {
    Subadd,
    ArakiLieb,
    SsaConsistent,
    SsaPaper,
    Extra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Full,
    Padded,
    R1,
    R2,
    Rho12,
    Rho23,
    Rho2,
    T1,
    T3,
}

fn parse_list(s: &str, len: usize) -> Result<Vec<usize>, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if parts.len() != len {
        return Err(format!("expected {len} comma-separated integers, got {s:?}"));
    }
    Ok(parts)
}

fn parse_bipartite(s: &str) -> Result<BipartiteSplit, String> {
    let v = parse_list(s, 2)?;
    BipartiteSplit::new(v[0], v[1]).map_err(|e| e.to_string())
}

fn parse_tripartite(s: &str) -> Result<TripartiteSplit, String> {
    let v = parse_list(s, 3)?;
    TripartiteSplit::new(v[0], v[1], v[2]).map_err(|e| e.to_string())
}

fn parse_factor_set(s: &str) -> Result<FactorSet, String> {
    s.parse().map_err(|e: qudit_entropy::Error| e.to_string())
}

fn parse_paper_map(s: &str) -> Result<PaperMap, String> {
    s.parse().map_err(|e: qudit_entropy::Error| e.to_string())
}

fn parse_target(s: &str) -> Result<SearchTarget, String> {
    s.parse().map_err(|e: qudit_entropy::Error| e.to_string())
}

/// A decimal number or a fraction `a/b`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
            let den: f64 = den.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
            num / den
        }
        None => s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?,
    };
    if !value.is_finite() {
        return Err(format!("{s:?} is not a finite number"));
    }
    Ok(value)
}
