//! Option resolution: flag, then config file, then built-in default.
//! Everything is validated here, before any computation starts.

use std::path::{Path, PathBuf};

use gup_coulomb::model::energy_exact;
use gup_coulomb::numerics::QuadratureSpec;
use gup_coulomb::states::{default_eta, BranchConvention, DEFAULT_N_MAX};
use gup_coulomb::ModelParams;
use serde::Deserialize;

use crate::args::{Branch, Cli, Command, Format, MlTable, PGrid, WaveTable};
use crate::error::{CliError, CliResult};

/// Keys accepted in the JSON config file. Unknown keys are rejected.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub hbar: Option<f64>,
    pub mass: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub quad_panels: Option<usize>,
    pub quad_tol: Option<f64>,
    pub nmax: Option<u32>,
    pub n: Option<u32>,
    pub p_min: Option<f64>,
    pub p_max: Option<f64>,
    pub points: Option<usize>,
    pub beta_zero: Option<bool>,
    pub branch: Option<Branch>,
    pub wave_table: Option<WaveTable>,
    pub ml_table: Option<MlTable>,
    pub pairs: Option<String>,
    pub xi: Option<Vec<f64>>,
    pub pb: Option<f64>,
    pub pa: Option<f64>,
    pub e_min: Option<f64>,
    pub e_max: Option<f64>,
    pub e_points: Option<usize>,
    pub eta: Option<f64>,
    pub filter: Option<String>,
    pub betas: Option<Vec<f64>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::config(format!("bad config {}: {e}", path.display())))
    }
}

/// Uniform grid `min, …, max` with `points` nodes; one point means `[min]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    fn new(name: &str, min: f64, max: f64, points: usize) -> CliResult<Self> {
        if points == 0 {
            return Err(CliError::config(format!("{name}: grid needs at least one point")));
        }
        if !(min.is_finite() && max.is_finite()) {
            return Err(CliError::config(format!("{name}: grid bounds must be finite")));
        }
        if points > 1 && min >= max {
            return Err(CliError::config(format!("{name}: need min < max, got [{min}, {max}]")));
        }
        Ok(Self { min, max, points })
    }

    pub fn nodes(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points).map(|i| self.min + step * i as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandConfig {
    Spectrum {
        nmax: u32,
    },
    Wavefunction {
        n: u32,
        grid: Grid,
        beta_zero: bool,
        branch: BranchConvention,
        table: WaveTable,
    },
    Mlstate {
        table: MlTable,
        pairs: Vec<(f64, f64)>,
        xi: Vec<f64>,
        grid: Grid,
    },
    Green {
        p_b: f64,
        p_a: f64,
        energies: Grid,
        n_max: u32,
        eta: f64,
    },
    Verify {
        filter: Option<String>,
        betas: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    pub quad: QuadratureSpec,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub verbose: u8,
    pub command: CommandConfig,
}

fn finite(name: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(format!("{name} must be finite, got {v}")))
    }
}

fn parse_pairs(text: &str) -> CliResult<Vec<(f64, f64)>> {
    text.split(',')
        .map(|item| {
            let (a, b) = item
                .split_once(':')
                .ok_or_else(|| CliError::config(format!("pair `{item}` is not of the form xi1:xi2")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::config(format!("pair `{item}`: `{s}` is not a number")))
                    .and_then(|v| finite("pair entry", v))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

fn quad_spec(panels: Option<usize>, tol: Option<f64>) -> CliResult<QuadratureSpec> {
    let mut spec = QuadratureSpec::default();
    if let Some(p) = panels {
        if p == 0 {
            return Err(CliError::config("quad-panels must be at least 1"));
        }
        spec.panels = p;
    }
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0 && t < 1.0) {
            return Err(CliError::config(format!("quad-tol must lie in (0, 1), got {t}")));
        }
        spec.rel_tol = t;
        spec.abs_tol = 0.1 * t;
    }
    spec.validate()?;
    Ok(spec)
}

fn grid(name: &str, g: &PGrid, file: &FileConfig, default: (f64, f64, usize)) -> CliResult<Grid> {
    Grid::new(
        name,
        g.p_min.or(file.p_min).unwrap_or(default.0),
        g.p_max.or(file.p_max).unwrap_or(default.1),
        g.points.or(file.points).unwrap_or(default.2),
    )
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> CliResult<Self> {
        let c = &cli.common;
        let file = match &c.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let params = ModelParams::new(
            c.hbar.or(file.hbar).unwrap_or(1.0),
            c.mass.or(file.mass).unwrap_or(1.0),
            c.alpha.or(file.alpha).unwrap_or(1.0),
            c.beta.or(file.beta).unwrap_or(0.0),
        )?;
        let quad = quad_spec(c.quad_panels.or(file.quad_panels), c.quad_tol.or(file.quad_tol))?;
        let default_format = match cli.command {
            Command::Verify { .. } => Format::Json,
            _ => Format::Csv,
        };
        let format = c.format.or(file.format).unwrap_or(default_format);
        let out = c.out.clone().or(file.out.clone());

        let command = match &cli.command {
            Command::Spectrum { nmax } => CommandConfig::Spectrum {
                nmax: nmax.or(file.nmax).unwrap_or(5),
            },
            Command::Wavefunction {
                n,
                grid: g,
                beta_zero,
                branch,
                table,
            } => CommandConfig::Wavefunction {
                n: n.or(file.n).unwrap_or(0),
                grid: grid("p grid", g, &file, (0.0, 10.0, 101))?,
                beta_zero: *beta_zero || file.beta_zero.unwrap_or(false),
                branch: match branch.or(file.branch).unwrap_or(Branch::Odd) {
                    Branch::Odd => BranchConvention::OddExtension,
                    Branch::Principal => BranchConvention::PrincipalBranch,
                },
                table: table.or(file.wave_table).unwrap_or(WaveTable::Values),
            },
            Command::Mlstate {
                table,
                pairs,
                xi,
                grid: g,
            } => {
                if params.beta() <= 0.0 {
                    return Err(CliError::config("mlstate needs beta > 0"));
                }
                let scale = params.hbar() * params.beta().sqrt();
                let pairs = match pairs.as_deref().or(file.pairs.as_deref()) {
                    Some(text) => parse_pairs(text)?,
                    None => vec![(0.0, 0.0), (2.0 * scale, 0.0), (4.0 * scale, 0.0)],
                };
                let xi = xi.clone().or(file.xi.clone()).unwrap_or_else(|| vec![0.0]);
                if xi.is_empty() {
                    return Err(CliError::config("xi list is empty"));
                }
                for &x in &xi {
                    finite("xi", x)?;
                }
                CommandConfig::Mlstate {
                    table: table.or(file.ml_table).unwrap_or(MlTable::Overlaps),
                    pairs,
                    xi,
                    grid: grid("p grid", g, &file, (-10.0, 10.0, 201))?,
                }
            }
            Command::Green {
                pb,
                pa,
                e_min,
                e_max,
                e_points,
                nmax,
                eta,
            } => {
                let e0 = energy_exact(&params, 0);
                let eta = eta.or(file.eta).unwrap_or_else(|| default_eta(&params));
                if !(eta.is_finite() && eta > 0.0) {
                    return Err(CliError::config(format!("eta must be positive, got {eta}")));
                }
                let n_max = nmax.or(file.nmax).unwrap_or(DEFAULT_N_MAX);
                if n_max < 1 {
                    return Err(CliError::config("nmax must be at least 1"));
                }
                CommandConfig::Green {
                    p_b: finite("pb", pb.or(file.pb).unwrap_or(0.5))?,
                    p_a: finite("pa", pa.or(file.pa).unwrap_or(1.0))?,
                    energies: Grid::new(
                        "energy grid",
                        e_min.or(file.e_min).unwrap_or(2.0 * e0),
                        e_max.or(file.e_max).unwrap_or(-e0),
                        e_points.or(file.e_points).unwrap_or(301),
                    )?,
                    n_max,
                    eta,
                }
            }
            Command::Verify { filter, betas } => {
                let betas = betas
                    .clone()
                    .or(file.betas.clone())
                    .unwrap_or_else(|| vec![0.0, 3.0 / 32.0, 1.0]);
                if betas.is_empty() {
                    return Err(CliError::config("betas list is empty"));
                }
                for &b in &betas {
                    params.with_beta(b)?;
                }
                CommandConfig::Verify {
                    filter: filter.clone().or(file.filter.clone()),
                    betas,
                }
            }
        };
        Ok(Self {
            params,
            quad,
            format,
            out,
            verbose: c.verbose,
            command,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn resolve(args: &[&str]) -> CliResult<RunConfig> {
        let cli = Cli::try_parse_from(std::iter::once("gupc").chain(args.iter().copied())).unwrap();
        RunConfig::resolve(&cli)
    }

    #[test]
    fn defaults() {
        let rc = resolve(&["spectrum"]).unwrap();
        assert_eq!(rc.params, ModelParams::natural(0.0).unwrap());
        assert_eq!(rc.format, Format::Csv);
        assert_eq!(rc.command, CommandConfig::Spectrum { nmax: 5 });
        assert_eq!(resolve(&["verify"]).unwrap().format, Format::Json);
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"beta": 0.5, "nmax": 7, "hbar": 2.0}"#).unwrap();
        let p = path.to_str().unwrap();
        let rc = resolve(&["spectrum", "--config", p, "--beta", "0.25"]).unwrap();
        assert_eq!(rc.params.beta(), 0.25);
        assert_eq!(rc.params.hbar(), 2.0);
        assert_eq!(rc.command, CommandConfig::Spectrum { nmax: 7 });
    }

    #[test]
    fn rejects_bad_values() {
        assert!(matches!(resolve(&["spectrum", "--quad-tol", "-1"]), Err(CliError::Config(_))));
        assert!(matches!(resolve(&["spectrum", "--quad-panels", "0"]), Err(CliError::Config(_))));
        assert!(matches!(resolve(&["spectrum", "--beta", "-0.1"]), Err(CliError::Config(_))));
        assert!(matches!(resolve(&["wavefunction", "--points", "0"]), Err(CliError::Config(_))));
        assert!(matches!(resolve(&["mlstate"]), Err(CliError::Config(_))));
        assert!(matches!(resolve(&["mlstate", "--beta", "1", "--pairs", "1;2"]), Err(CliError::Config(_))));
        assert!(matches!(resolve(&["green", "--eta", "0"]), Err(CliError::Config(_))));
    }

    #[test]
    fn unknown_config_key() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"bta": 0.5}"#).unwrap();
        assert!(matches!(
            resolve(&["spectrum", "--config", path.to_str().unwrap()]),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn pairs_and_grid() {
        assert_eq!(parse_pairs("0:1, 2.5:-3").unwrap(), vec![(0.0, 1.0), (2.5, -3.0)]);
        let g = Grid::new("g", -1.0, 1.0, 5).unwrap();
        assert_eq!(g.nodes(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(Grid::new("g", 3.0, 3.0, 1).unwrap().nodes(), vec![3.0]);
    }
}
