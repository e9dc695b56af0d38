//! Finite-difference oracle for the dimensionless Pöschl-Teller bracket.
//!
//! Diagonalizes `−u'' + λ(λ−1)tan²(s)·u = ε·u` on `(−π/2, π/2)` with Dirichlet
//! walls at `±(π/2 − wall_offset)`, using the second-order central-difference
//! tridiagonal matrix. The exact levels are `ε_n = n² + (2n+1)λ`, which is
//! the bracket consumed by the spectral condition.

use std::f64::consts::{FRAC_PI_2, PI};

use super::tridiag::SymTridiagonal;
use crate::error::{Error, Result};
use crate::model::{energy_exact, lambda_param, ModelParams};
use crate::report::{Provenance, Tolerance, VerificationReport};

pub const MIN_GRID_POINTS: usize = 201;
pub const MAX_LEVELS: usize = 10;
/// Relative eigenvalue shift tolerated when the wall inset doubles.
pub const WALL_SENSITIVITY: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtOracleSpec {
    /// Grid points including both wall nodes.
    pub grid_points: usize,
    pub wall_offset: f64,
}

impl Default for PtOracleSpec {
    fn default() -> Self {
        Self {
            grid_points: 4001,
            wall_offset: 1e-9,
        }
    }
}

impl PtOracleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < MIN_GRID_POINTS {
            return Err(Error::invalid(
                "grid_points",
                format!("need at least {MIN_GRID_POINTS}, got {}", self.grid_points),
            ));
        }
        if !(self.wall_offset.is_finite() && self.wall_offset > 0.0 && self.wall_offset < 0.25) {
            return Err(Error::invalid(
                "wall_offset",
                format!("must lie in (0, 0.25), got {}", self.wall_offset),
            ));
        }
        Ok(())
    }

    /// Node spacing.
    pub fn step(&self) -> f64 {
        (PI - 2.0 * self.wall_offset) / (self.grid_points - 1) as f64
    }
}

/// The tridiagonal FD matrix on the interior nodes.
pub fn pt_fd_matrix(lam: f64, spec: &PtOracleSpec) -> Result<SymTridiagonal> {
    spec.validate()?;
    let h = spec.step();
    let left = -FRAC_PI_2 + spec.wall_offset;
    let strength = lam * (lam - 1.0);
    let interior = spec.grid_points - 2;
    let diag: Vec<f64> = (1..=interior)
        .map(|j| {
            let t = (left + h * j as f64).tan();
            2.0 / (h * h) + strength * t * t
        })
        .collect();
    let off = vec![-1.0 / (h * h); interior - 1];
    SymTridiagonal::new(diag, off)
}

fn raw_levels(lam: f64, spec: &PtOracleSpec, k: usize) -> Result<Vec<f64>> {
    pt_fd_matrix(lam, spec)?.lowest_eigenvalues(k)
}

/// Lowest `k` eigenvalues on one grid, with a wall-sensitivity check.
pub fn pt_fd_eigenvalues(lam: f64, spec: &PtOracleSpec, k: usize) -> Result<Vec<f64>> {
    if !(lam.is_finite() && lam >= 1.0) {
        return Err(Error::invalid("lam", format!("need λ ≥ 1, got {lam}")));
    }
    if k == 0 || k > MAX_LEVELS {
        return Err(Error::invalid("k", format!("need 1 ≤ k ≤ {MAX_LEVELS}, got {k}")));
    }
    let levels = raw_levels(lam, spec, k)?;
    let doubled = PtOracleSpec {
        wall_offset: 2.0 * spec.wall_offset,
        ..*spec
    };
    let shifted = raw_levels(lam, &doubled, k)?;
    for (index, (a, b)) in levels.iter().zip(&shifted).enumerate() {
        let shift = ((a - b) / a).abs();
        if shift > WALL_SENSITIVITY {
            return Err(Error::WallOffsetTooLarge { index, shift });
        }
    }
    Ok(levels)
}

/// Two-level Richardson extrapolation over grids with `M`, `2M`, `4M` intervals,
/// removing the h² and h⁴ terms. `finest_points` counts nodes of the `4M` grid.
pub fn pt_fd_eigenvalues_extrapolated(lam: f64, finest_points: usize, wall_offset: f64, k: usize) -> Result<Vec<f64>> {
    let intervals = finest_points.checked_sub(1).filter(|m| m % 4 == 0).ok_or_else(|| {
        Error::invalid("finest_points", format!("need 4M + 1 nodes, got {finest_points}"))
    })?;
    let grids = [intervals / 4, intervals / 2, intervals].map(|m| PtOracleSpec {
        grid_points: m + 1,
        wall_offset,
    });
    let levels: Vec<Vec<f64>> = grids
        .iter()
        .map(|g| pt_fd_eigenvalues(lam, g, k))
        .collect::<Result<_>>()?;
    Ok((0..k)
        .map(|i| {
            let (c, m, f) = (levels[0][i], levels[1][i], levels[2][i]);
            let r1 = (4.0 * m - c) / 3.0;
            let r2 = (4.0 * f - m) / 3.0;
            (16.0 * r2 - r1) / 15.0
        })
        .collect())
}

/// Finest grid of the default oracle: 8001 nodes (2000, 4000, 8000 intervals).
pub const ORACLE_FINEST_POINTS: usize = 8001;
pub const ORACLE_TOLERANCE: f64 = 1e-5;

/// Oracle energies from the extrapolated FD bracket and the spectral condition
/// `ħ²p_E⁴/(2m²)·ε_n = α²p_E²/2`, compared against the exact spectrum.
pub fn verify_spectrum_against_oracle(params: &ModelParams, k: usize) -> Result<Vec<VerificationReport>> {
    if k == 0 || k > 6 {
        return Err(Error::invalid("k", format!("need 1 ≤ k ≤ 6, got {k}")));
    }
    let lam = lambda_param(params);
    let brackets = pt_fd_eigenvalues_extrapolated(lam, ORACLE_FINEST_POINTS, PtOracleSpec::default().wall_offset, k)?;
    let (hbar, m, alpha) = (params.hbar(), params.mass(), params.alpha());
    Ok(brackets
        .iter()
        .enumerate()
        .map(|(n, &eps)| {
            let pe2 = alpha * alpha * m * m / (hbar * hbar * eps);
            let oracle_energy = -pe2 / (2.0 * m);
            VerificationReport::check(
                format!("oracle/spectrum beta={} n={n}", params.beta()),
                energy_exact(params, n as u32),
                oracle_energy,
                Provenance::Oracle,
                Tolerance::Relative(ORACLE_TOLERANCE),
            )
        })
        .collect())
}
