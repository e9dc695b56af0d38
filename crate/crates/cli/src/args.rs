use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(name = "gupc", version, about = "Coulomb problem with a minimal length: spectra, states and checks")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON file with default option values; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true)]
    pub mass: Option<f64>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// Output file (standard output if absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Initial Gauss-Legendre panel count.
    #[arg(long, global = true)]
    pub quad_panels: Option<usize>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    pub quad_tol: Option<f64>,
    /// Log to stderr (-v info, -vv debug).
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveTable {
    /// Ψ_n on a momentum grid.
    Values,
    /// Norms under the candidate measures.
    Norms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MlTable {
    /// Closed, printed and quadrature overlaps for ξ pairs.
    Overlaps,
    /// ψ_ξ on a momentum grid.
    Values,
    /// Norms and position moments per ξ.
    Norms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Odd,
    Principal,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PGrid {
    #[arg(long)]
    pub p_min: Option<f64>,
    #[arg(long)]
    pub p_max: Option<f64>,
    /// Number of grid points, endpoints included.
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels n = 0..=nmax.
    #[command(allow_negative_numbers = true)]
    Spectrum {
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Momentum-space eigenfunctions.
    #[command(allow_negative_numbers = true)]
    Wavefunction {
        /// 0-based level.
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        grid: PGrid,
        /// Add the β = 0 closed form as extra columns.
        #[arg(long)]
        beta_zero: bool,
        #[arg(long, value_enum)]
        branch: Option<Branch>,
        #[arg(long, value_enum)]
        table: Option<WaveTable>,
    },
    /// Maximally localized states.
    #[command(allow_negative_numbers = true)]
    Mlstate {
        #[arg(long, value_enum)]
        table: Option<MlTable>,
        /// Pairs `xi1:xi2` separated by commas.
        #[arg(long)]
        pairs: Option<String>,
        /// Centres separated by commas.
        #[arg(long, value_delimiter = ',')]
        xi: Option<Vec<f64>>,
        #[command(flatten)]
        grid: PGrid,
    },
    /// Truncated bound-state sum for the fixed-energy Green function.
    #[command(allow_negative_numbers = true)]
    Green {
        #[arg(long)]
        pb: Option<f64>,
        #[arg(long)]
        pa: Option<f64>,
        #[arg(long)]
        e_min: Option<f64>,
        #[arg(long)]
        e_max: Option<f64>,
        #[arg(long)]
        e_points: Option<usize>,
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long)]
        eta: Option<f64>,
    },
    /// Run the verification suite.
    #[command(allow_negative_numbers = true)]
    Verify {
        /// Keep only groups or checks whose name contains this text.
        #[arg(long)]
        filter: Option<String>,
        /// β values for the model, state and oracle groups.
        #[arg(long, value_delimiter = ',')]
        betas: Option<Vec<f64>>,
    },
}
