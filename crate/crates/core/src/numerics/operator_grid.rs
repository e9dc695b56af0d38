//! Grid realization of `X = iħ(1+βp²) d/dp` and `P = p` for checking the
//! deformed commutator `[X, P] = iħ(1+βp²)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::ModelParams;

pub const MIN_NODES: usize = 801;
/// Fraction of the grid excluded at each end from residual measurements.
pub const EDGE_FRACTION: f64 = 0.1;

/// Uniform momentum grid with banded `X` and diagonal `P`.
#[derive(Debug, Clone)]
pub struct OperatorGrid {
    p_nodes: Vec<f64>,
    step: f64,
    /// Row `i` of X: `x_coeff[i]·(f[i+1] − f[i−1])`; end rows are zero.
    x_coeff: Vec<Complex64>,
}

impl OperatorGrid {
    /// Nodes `−P, −P+h, …, P` with `h = 2P/(nodes−1)`.
    pub fn new(params: &ModelParams, half_width: f64, nodes: usize) -> Result<Self> {
        if nodes < MIN_NODES {
            return Err(Error::invalid("nodes", format!("need at least {MIN_NODES}, got {nodes}")));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::invalid("half_width", format!("must be positive, got {half_width}")));
        }
        let step = 2.0 * half_width / (nodes - 1) as f64;
        let p_nodes: Vec<f64> = (0..nodes).map(|i| -half_width + step * i as f64).collect();
        let (hbar, beta) = (params.hbar(), params.beta());
        let x_coeff = p_nodes
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if i == 0 || i == nodes - 1 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, hbar * (1.0 + beta * p * p) / (2.0 * step))
                }
            })
            .collect();
        Ok(Self { p_nodes, step, x_coeff })
    }

    /// Grid on `[−half_width, half_width]` whose spacing is `step` (rounded to fit).
    pub fn with_step(params: &ModelParams, half_width: f64, step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::invalid("step", format!("must be positive, got {step}")));
        }
        let nodes = (2.0 * half_width / step).round() as usize + 1;
        Self::new(params, half_width, nodes)
    }

    pub fn p_nodes(&self) -> &[f64] {
        &self.p_nodes
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn apply_x(&self, f: &[Complex64]) -> Vec<Complex64> {
        let n = self.p_nodes.len();
        (0..n)
            .map(|i| {
                if i == 0 || i == n - 1 {
                    Complex64::new(0.0, 0.0)
                } else {
                    self.x_coeff[i] * (f[i + 1] - f[i - 1])
                }
            })
            .collect()
    }

    pub fn apply_p(&self, f: &[Complex64]) -> Vec<Complex64> {
        f.iter().zip(&self.p_nodes).map(|(v, p)| v * p).collect()
    }

    /// `[X, P]f = X(Pf) − P(Xf)` on the grid.
    pub fn commutator(&self, f: &[Complex64]) -> Vec<Complex64> {
        let xp = self.apply_x(&self.apply_p(f));
        let px = self.apply_p(&self.apply_x(f));
        xp.iter().zip(&px).map(|(a, b)| a - b).collect()
    }

    /// Indices kept after dropping [`EDGE_FRACTION`] of the span at each end.
    pub fn interior(&self) -> std::ops::Range<usize> {
        let n = self.p_nodes.len();
        let cut = ((n - 1) as f64 * EDGE_FRACTION - 1e-9).ceil() as usize;
        cut.max(1)..(n - cut).min(n - 1)
    }

    /// `max |([X,P]f)(p) − iħ(1+βp²)f(p)| / max|f|` over the interior band.
    pub fn commutator_residual_for<F: Fn(f64) -> f64>(&self, params: &ModelParams, f: F) -> f64 {
        let values: Vec<Complex64> = self.p_nodes.iter().map(|&p| Complex64::new(f(p), 0.0)).collect();
        let comm = self.commutator(&values);
        let (hbar, beta) = (params.hbar(), params.beta());
        let scale = values.iter().fold(0.0f64, |a, v| a.max(v.norm()));
        let worst = self
            .interior()
            .map(|i| {
                let p = self.p_nodes[i];
                let target = Complex64::new(0.0, hbar * (1.0 + beta * p * p)) * values[i];
                (comm[i] - target).norm()
            })
            .fold(0.0f64, f64::max);
        if scale > 0.0 {
            worst / scale
        } else {
            worst
        }
    }
}

/// Fixed test functions: unit-width Gaussians (centred and shifted) and
/// polynomial·Gaussians of degree one and two.
pub fn commutator_test_functions() -> Vec<(&'static str, fn(f64) -> f64)> {
    vec![
        ("gaussian", |p| (-0.5 * p * p).exp()),
        ("gaussian_shifted", |p| (-0.5 * (p - 1.0) * (p - 1.0)).exp()),
        ("p_gaussian", |p| p * (-0.5 * p * p).exp()),
        ("p2m1_gaussian", |p| (p * p - 1.0) * (-0.5 * p * p).exp()),
    ]
}

/// Worst residual over [`commutator_test_functions`].
pub fn commutator_residual(params: &ModelParams, grid: &OperatorGrid) -> f64 {
    commutator_test_functions()
        .into_iter()
        .map(|(_, f)| grid.commutator_residual_for(params, f))
        .fold(0.0, f64::max)
}

/// Least-squares slope of `ln(residual)` against `ln(h)`.
pub fn convergence_slope(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
