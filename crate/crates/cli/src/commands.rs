//! Table-producing subcommands.

use gup_coulomb::model::{energy_exact, energy_expanded_paper, BoundState};
use gup_coulomb::numerics::QuadratureSpec;
use gup_coulomb::states::{
    eigenfunction_norm, green_function, ml_norm_sq_analytic, ml_norm_sq_at, ml_overlap_closed, ml_overlap_paper,
    ml_overlap_quadrature, ml_position_moments, psi_beta_zero, BranchConvention, MlState, MomentumEigenfunction,
    NormMeasure,
};
use gup_coulomb::ModelParams;
use serde::{Deserialize, Serialize};

use crate::config::Grid;
use crate::error::CliResult;
use crate::output::{fmt_f64, Row};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub n: u32,
    pub n_tilde: u32,
    pub energy_exact: f64,
    pub energy_expanded_paper: f64,
    pub p_e: f64,
    pub lambda: f64,
    pub delta: f64,
}

impl Row for SpectrumRow {
    const HEADER: &'static [&'static str] =
        &["n", "n_tilde", "energy_exact", "energy_expanded_paper", "p_e", "lambda", "delta"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.n_tilde.to_string(),
            fmt_f64(self.energy_exact),
            fmt_f64(self.energy_expanded_paper),
            fmt_f64(self.p_e),
            fmt_f64(self.lambda),
            fmt_f64(self.delta),
        ]
    }
}

pub fn spectrum(params: &ModelParams, nmax: u32) -> CliResult<Vec<SpectrumRow>> {
    let delta = params.scales().delta_dimensionless;
    (0..=nmax)
        .map(|n| {
            let s = BoundState::new(*params, n);
            Ok(SpectrumRow {
                n,
                n_tilde: s.n_tilde,
                energy_exact: s.energy,
                energy_expanded_paper: energy_expanded_paper(params, s.n_tilde)?,
                p_e: s.p_e,
                lambda: s.lambda,
                delta,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveRow {
    pub p: f64,
    pub re: f64,
    pub im: f64,
    pub abs_sq: f64,
}

impl Row for WaveRow {
    const HEADER: &'static [&'static str] = &["p", "re", "im", "abs_sq"];
    fn fields(&self) -> Vec<String> {
        [self.p, self.re, self.im, self.abs_sq].map(fmt_f64).to_vec()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveRowWithReference {
    pub p: f64,
    pub re: f64,
    pub im: f64,
    pub abs_sq: f64,
    pub beta_zero_re: f64,
    pub beta_zero_im: f64,
}

impl Row for WaveRowWithReference {
    const HEADER: &'static [&'static str] = &["p", "re", "im", "abs_sq", "beta_zero_re", "beta_zero_im"];
    fn fields(&self) -> Vec<String> {
        [self.p, self.re, self.im, self.abs_sq, self.beta_zero_re, self.beta_zero_im]
            .map(fmt_f64)
            .to_vec()
    }
}

pub fn wavefunction(params: &ModelParams, n: u32, grid: &Grid, branch: BranchConvention) -> CliResult<Vec<WaveRow>> {
    let psi = MomentumEigenfunction::with_branch(BoundState::new(*params, n), branch)?;
    Ok(grid
        .nodes()
        .into_iter()
        .map(|p| {
            let v = psi.value(p);
            WaveRow {
                p,
                re: v.re,
                im: v.im,
                abs_sq: v.norm_sqr(),
            }
        })
        .collect())
}

/// Adds the β = 0 closed form for the same ñ, using the β = 0 momentum scale.
pub fn wavefunction_with_reference(
    params: &ModelParams,
    n: u32,
    grid: &Grid,
    branch: BranchConvention,
) -> CliResult<Vec<WaveRowWithReference>> {
    let p_e0 = BoundState::new(params.with_beta(0.0)?, n).p_e;
    wavefunction(params, n, grid, branch)?
        .into_iter()
        .map(|r| {
            let b = psi_beta_zero(n + 1, p_e0, r.p)?;
            Ok(WaveRowWithReference {
                p: r.p,
                re: r.re,
                im: r.im,
                abs_sq: r.abs_sq,
                beta_zero_re: b.re,
                beta_zero_im: b.im,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormRow {
    pub n: u32,
    pub beta: f64,
    pub measure: String,
    pub domain: String,
    pub value: f64,
}

impl Row for NormRow {
    const HEADER: &'static [&'static str] = &["n", "beta", "measure", "domain", "value"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            fmt_f64(self.beta),
            self.measure.clone(),
            self.domain.clone(),
            fmt_f64(self.value),
        ]
    }
}

pub fn wavefunction_norms(params: &ModelParams, n: u32, spec: &QuadratureSpec) -> CliResult<Vec<NormRow>> {
    let state = BoundState::new(*params, n);
    let mut rows = Vec::new();
    for measure in NormMeasure::ALL {
        for (full, domain) in [(false, "half"), (true, "full")] {
            rows.push(NormRow {
                n,
                beta: params.beta(),
                measure: measure.label().to_string(),
                domain: domain.to_string(),
                value: eigenfunction_norm(&state, measure, full, spec)?,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapRow {
    pub xi1: f64,
    pub xi2: f64,
    pub a: f64,
    pub closed: f64,
    pub paper: f64,
    pub quadrature_re: f64,
    pub quadrature_im: f64,
    pub quadrature_err: f64,
}

impl Row for OverlapRow {
    const HEADER: &'static [&'static str] =
        &["xi1", "xi2", "a", "closed", "paper", "quadrature_re", "quadrature_im", "quadrature_err"];
    fn fields(&self) -> Vec<String> {
        [
            self.xi1,
            self.xi2,
            self.a,
            self.closed,
            self.paper,
            self.quadrature_re,
            self.quadrature_im,
            self.quadrature_err,
        ]
        .map(fmt_f64)
        .to_vec()
    }
}

pub fn ml_overlaps(params: &ModelParams, pairs: &[(f64, f64)], spec: &QuadratureSpec) -> CliResult<Vec<OverlapRow>> {
    let scale = params.hbar() * params.beta().sqrt();
    pairs
        .iter()
        .map(|&(xi1, xi2)| {
            let q = ml_overlap_quadrature(xi1, xi2, params, spec)?;
            Ok(OverlapRow {
                xi1,
                xi2,
                a: (xi1 - xi2) / scale,
                closed: ml_overlap_closed(xi1, xi2, params)?,
                paper: ml_overlap_paper(xi1, xi2, params)?,
                quadrature_re: q.value.re,
                quadrature_im: q.value.im,
                quadrature_err: q.err_estimate,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlValueRow {
    pub xi: f64,
    pub p: f64,
    pub re: f64,
    pub im: f64,
    pub abs_sq: f64,
}

impl Row for MlValueRow {
    const HEADER: &'static [&'static str] = &["xi", "p", "re", "im", "abs_sq"];
    fn fields(&self) -> Vec<String> {
        [self.xi, self.p, self.re, self.im, self.abs_sq].map(fmt_f64).to_vec()
    }
}

pub fn ml_values(params: &ModelParams, xis: &[f64], grid: &Grid) -> CliResult<Vec<MlValueRow>> {
    let mut rows = Vec::new();
    for &xi in xis {
        let state = MlState::new(xi, *params)?;
        for p in grid.nodes() {
            let v = state.value(p);
            rows.push(MlValueRow {
                xi,
                p,
                re: v.re,
                im: v.im,
                abs_sq: v.norm_sqr(),
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlNormRow {
    pub xi: f64,
    pub norm_quadrature: f64,
    pub norm_analytic: f64,
    pub mean_x: f64,
    pub delta_x: f64,
    pub delta_p: f64,
    pub gup_bound: f64,
}

impl Row for MlNormRow {
    const HEADER: &'static [&'static str] =
        &["xi", "norm_quadrature", "norm_analytic", "mean_x", "delta_x", "delta_p", "gup_bound"];
    fn fields(&self) -> Vec<String> {
        [
            self.xi,
            self.norm_quadrature,
            self.norm_analytic,
            self.mean_x,
            self.delta_x,
            self.delta_p,
            self.gup_bound,
        ]
        .map(fmt_f64)
        .to_vec()
    }
}

pub fn ml_norms(params: &ModelParams, xis: &[f64], spec: &QuadratureSpec) -> CliResult<Vec<MlNormRow>> {
    xis.iter()
        .map(|&xi| {
            let m = ml_position_moments(xi, params, spec)?;
            Ok(MlNormRow {
                xi,
                norm_quadrature: ml_norm_sq_at(xi, params, spec)?.value,
                norm_analytic: ml_norm_sq_analytic(params),
                mean_x: m.mean,
                delta_x: m.delta_x(),
                delta_p: m.delta_p(),
                gup_bound: 0.5 * params.hbar() * (1.0 + params.beta() * m.p_variance),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreenRow {
    pub p_b: f64,
    pub p_a: f64,
    pub energy: f64,
    pub re: f64,
    pub im: f64,
    pub truncation_estimate: f64,
    pub nearest_level: u32,
    pub nearest_level_energy: f64,
}

impl Row for GreenRow {
    const HEADER: &'static [&'static str] = &[
        "p_b",
        "p_a",
        "energy",
        "re",
        "im",
        "truncation_estimate",
        "nearest_level",
        "nearest_level_energy",
    ];
    fn fields(&self) -> Vec<String> {
        let mut f: Vec<String> = [self.p_b, self.p_a, self.energy, self.re, self.im, self.truncation_estimate]
            .map(fmt_f64)
            .to_vec();
        f.push(self.nearest_level.to_string());
        f.push(fmt_f64(self.nearest_level_energy));
        f
    }
}

pub fn green(params: &ModelParams, p_b: f64, p_a: f64, energies: &Grid, n_max: u32, eta: f64) -> CliResult<Vec<GreenRow>> {
    let levels: Vec<f64> = (0..=n_max).map(|n| energy_exact(params, n)).collect();
    energies
        .nodes()
        .into_iter()
        .map(|e| {
            let g = green_function(params, p_b, p_a, e, n_max, eta)?;
            let (nearest, level) = levels
                .iter()
                .enumerate()
                .map(|(i, &l)| (i, l))
                .fold((0, levels[0]), |best, cur| if (cur.1 - e).abs() < (best.1 - e).abs() { cur } else { best });
            Ok(GreenRow {
                p_b,
                p_a,
                energy: e,
                re: g.value.re,
                im: g.value.im,
                truncation_estimate: g.truncation_estimate,
                nearest_level: nearest as u32,
                nearest_level_energy: level,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_beta_zero() {
        let rows = spectrum(&ModelParams::natural(0.0).unwrap(), 3).unwrap();
        let e: Vec<f64> = rows.iter().map(|r| r.energy_exact).collect();
        assert_eq!(e, vec![-0.5, -0.125, -0.5 / 9.0, -0.03125]);
        assert_eq!(rows[2].n_tilde, 3);
    }

    #[test]
    fn wavefunction_origin_row() {
        let grid = Grid { min: 0.0, max: 2.0, points: 5 };
        let rows = wavefunction(&ModelParams::natural(3.0 / 32.0).unwrap(), 1, &grid, BranchConvention::OddExtension).unwrap();
        assert_eq!(rows[0].abs_sq, 0.0);
    }

    #[test]
    fn green_annotates_levels() {
        let p = ModelParams::natural(0.0).unwrap();
        let grid = Grid { min: -0.5, max: -0.125, points: 2 };
        let rows = green(&p, 0.5, 1.0, &grid, 8, 1e-6).unwrap();
        assert_eq!((rows[0].nearest_level, rows[1].nearest_level), (0, 1));
    }
}
