//! Maximally localized states
//! `ψ_ξ(p) = (2πħ)^{-1/2}(1+βp²)^{-1/2} exp[−iξ·arctan(p√β)/(ħ√β)]`.
//!
//! Inner products use the deformed measure `Dp = dp/(1+βp²)`. Under
//! `p = tan(φ)/√β` every integral here becomes a trigonometric integral over
//! φ ∈ (−π/2, π/2), which is what the quadrature engine integrates.
//!
//! Applying `X = iħ(1+βp²)d/dp` to ψ_ξ gives `Xψ_ξ = (ξ − iħβp)ψ_ξ`, so
//! position moments reduce to momentum-space integrals of `|ξ − iħβp|²`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::numerics::quadrature::{integrate_deformed, Mapping, Quadrature, QuadratureSpec, Weight};

fn require_deformed(params: &ModelParams) -> Result<()> {
    if params.beta() > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("beta", "maximally localized states need beta > 0"))
    }
}

fn whole_line(spec: &QuadratureSpec) -> QuadratureSpec {
    spec.with_mapping(Mapping::CompactifyArctan)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlState {
    pub xi: f64,
    pub params: ModelParams,
}

impl MlState {
    pub fn new(xi: f64, params: ModelParams) -> Result<Self> {
        require_deformed(&params)?;
        if !xi.is_finite() {
            return Err(Error::invalid("xi", "must be finite"));
        }
        Ok(Self { xi, params })
    }

    pub fn value(&self, p: f64) -> Complex64 {
        let (hbar, sb) = (self.params.hbar(), self.params.beta().sqrt());
        let modulus = 1.0 / ((2.0 * PI * hbar).sqrt() * (1.0 + sb * sb * p * p).sqrt());
        Complex64::from_polar(modulus, -self.xi * (p * sb).atan() / (hbar * sb))
    }
}

pub fn ml_value(xi: f64, params: &ModelParams, p: f64) -> Result<Complex64> {
    Ok(MlState::new(xi, *params)?.value(p))
}

/// `∫Dp |ψ_ξ|²` by quadrature; analytically `1/(4ħ√β)` for every ξ.
pub fn ml_norm_sq(params: &ModelParams, spec: &QuadratureSpec) -> Result<Quadrature<f64>> {
    ml_norm_sq_at(0.0, params, spec)
}

pub fn ml_norm_sq_at(xi: f64, params: &ModelParams, spec: &QuadratureSpec) -> Result<Quadrature<f64>> {
    let state = MlState::new(xi, *params)?;
    integrate_deformed(|p| state.value(p).norm_sqr(), Weight::Inv1pBp2, params, &whole_line(spec))
}

pub fn ml_norm_sq_analytic(params: &ModelParams) -> f64 {
    1.0 / (4.0 * params.hbar() * params.beta().sqrt())
}

/// `⟨ψ_ξ1|ψ_ξ2⟩` by quadrature of the deformed-measure inner product.
pub fn ml_overlap_quadrature(xi1: f64, xi2: f64, params: &ModelParams, spec: &QuadratureSpec) -> Result<Quadrature<Complex64>> {
    let a = MlState::new(xi1, *params)?;
    let b = MlState::new(xi2, *params)?;
    integrate_deformed(|p| a.value(p).conj() * b.value(p), Weight::Inv1pBp2, params, &whole_line(spec))
}

/// `sin(x)/x` with its limit at 0.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `sin(aπ/2)/(a(4−a²))` with the removable singularities at 0 and ±2 resolved.
fn overlap_kernel(a: f64) -> f64 {
    let t = a.abs();
    if t < 1.0 {
        FRAC_PI_2 * sinc(t * FRAC_PI_2) / (4.0 - t * t)
    } else if (t - 2.0).abs() < 0.5 {
        // sin(tπ/2) = −sin(επ/2), 4 − t² = −ε(2+t) with ε = t − 2
        let eps = t - 2.0;
        FRAC_PI_2 * sinc(eps * FRAC_PI_2) / (t * (2.0 + t))
    } else {
        (t * FRAC_PI_2).sin() / (t * (4.0 - t * t))
    }
}

/// Closed form of the overlap, `(2/(πħ√β))·sin(aπ/2)/(a(4−a²))` with
/// `a = (ξ1−ξ2)/(ħ√β)`. Even in `a`; `1/(4ħ√β)` at `a = 0`, `1/(8ħ√β)` at
/// `a = ±2`, zero at even `|a| ≥ 4`.
pub fn ml_overlap_closed(xi1: f64, xi2: f64, params: &ModelParams) -> Result<f64> {
    require_deformed(params)?;
    let scale = params.hbar() * params.beta().sqrt();
    Ok(2.0 / (PI * scale) * overlap_kernel((xi1 - xi2) / scale))
}

/// The printed closed form, `(2/(πħ√β))·sin(uπ/2)/(u(u²+4))` with
/// `u = (ξ−ξ')π/(ħ√β)`, kept verbatim for comparison.
pub fn ml_overlap_paper(xi1: f64, xi2: f64, params: &ModelParams) -> Result<f64> {
    require_deformed(params)?;
    let scale = params.hbar() * params.beta().sqrt();
    let u = (xi1 - xi2) * PI / scale;
    let kernel = if u.abs() < 1e-8 {
        FRAC_PI_2 / 4.0
    } else {
        (u * FRAC_PI_2).sin() / (u * (u * u + 4.0))
    };
    Ok(2.0 / (PI * scale) * kernel)
}

/// `(1/4πħm)∫p²(1+βp²)^{-3}dp` by quadrature.
pub fn ml_kinetic_expectation(params: &ModelParams, spec: &QuadratureSpec) -> Result<Quadrature<f64>> {
    require_deformed(params)?;
    let pref = 1.0 / (4.0 * PI * params.hbar() * params.mass());
    let q = integrate_deformed(|p| p * p, Weight::InvCube, params, &whole_line(spec))?;
    Ok(Quadrature {
        value: pref * q.value,
        err_estimate: pref * q.err_estimate,
        panels: q.panels,
    })
}

/// `1/(32β^{3/2}ħm)`, the exact value of the kinetic integral.
pub fn ml_kinetic_analytic(params: &ModelParams) -> f64 {
    1.0 / (32.0 * params.beta().powf(1.5) * params.hbar() * params.mass())
}

/// `1/(8β^{3/2}ħm)`, the printed value of the same integral.
pub fn ml_kinetic_paper(params: &ModelParams) -> f64 {
    1.0 / (8.0 * params.beta().powf(1.5) * params.hbar() * params.mass())
}

/// Normalized first and second moments of X and P in an ml state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionMoments {
    pub mean: f64,
    pub variance: f64,
    pub p_mean: f64,
    pub p_variance: f64,
}

impl PositionMoments {
    pub fn delta_x(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn delta_p(&self) -> f64 {
        self.p_variance.sqrt()
    }
}

/// Moments under the deformed measure using `Xψ = (ξ − iħβp)ψ`:
/// `⟨X⟩ = ⟨ψ|Xψ⟩/N`, `⟨X²⟩ = ‖Xψ‖²/N` (X is symmetric under Dp).
pub fn ml_position_moments(xi: f64, params: &ModelParams, spec: &QuadratureSpec) -> Result<PositionMoments> {
    let state = MlState::new(xi, *params)?;
    let (hbar, beta) = (params.hbar(), params.beta());
    let spec = whole_line(spec);
    let x_action = |p: f64| Complex64::new(xi, -hbar * beta * p) * state.value(p);

    let norm: Quadrature<f64> = integrate_deformed(|p| state.value(p).norm_sqr(), Weight::Inv1pBp2, params, &spec)?;
    let x1: Quadrature<Complex64> =
        integrate_deformed(|p| state.value(p).conj() * x_action(p), Weight::Inv1pBp2, params, &spec)?;
    let x2: Quadrature<f64> = integrate_deformed(|p| x_action(p).norm_sqr(), Weight::Inv1pBp2, params, &spec)?;
    let p1: Quadrature<f64> = integrate_deformed(|p| p * state.value(p).norm_sqr(), Weight::Inv1pBp2, params, &spec)?;
    let p2: Quadrature<f64> =
        integrate_deformed(|p| p * p * state.value(p).norm_sqr(), Weight::Inv1pBp2, params, &spec)?;

    let n = norm.value;
    let mean = x1.value.re / n;
    let p_mean = p1.value / n;
    Ok(PositionMoments {
        mean,
        variance: x2.value / n - mean * mean,
        p_mean,
        p_variance: p2.value / n - p_mean * p_mean,
    })
}

/// Closure weight applied in the completeness probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureWeight {
    /// `(1+βp²)`, which resolves the identity for these states.
    Identity,
    /// `(1+βp²)²` as printed; returns `(1+βp²)f` instead of `f`.
    Printed,
}

impl ClosureWeight {
    fn eval(self, beta: f64, p: f64) -> f64 {
        let g = 1.0 + beta * p * p;
        match self {
            ClosureWeight::Identity => g,
            ClosureWeight::Printed => g * g,
        }
    }
}

/// Uniform ξ grid `min, min+step, …, max` used for trapezoidal ξ-integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiGrid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl XiGrid {
    fn nodes(&self) -> Result<Vec<f64>> {
        if !(self.step.is_finite() && self.step > 0.0 && self.min.is_finite() && self.max > self.min) {
            return Err(Error::invalid("xi_grid", format!("bad grid {self:?}")));
        }
        let count = ((self.max - self.min) / self.step).round() as usize;
        Ok((0..=count).map(|k| self.min + self.step * k as f64).collect())
    }

    fn halved(&self) -> Self {
        Self {
            step: self.step / 2.0,
            ..*self
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessProbe {
    /// Reconstructed values at the sample momenta.
    pub reconstructed: Vec<Complex64>,
    /// `max |reconstructed − f|` on the given grid.
    pub max_deviation: f64,
    /// Same with the ξ step halved.
    pub halved_step_deviation: f64,
    /// `max |reconstructed(h) − reconstructed(h/2)|`.
    pub refinement_change: f64,
}

fn reconstruct<F>(
    f: &F,
    params: &ModelParams,
    nodes: &[f64],
    samples: &[f64],
    weight: ClosureWeight,
    spec: &QuadratureSpec,
) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> f64 + Sync,
{
    let step = nodes[1] - nodes[0];
    let last = nodes.len() - 1;
    let mut acc = vec![Complex64::new(0.0, 0.0); samples.len()];
    for (k, &xi) in nodes.iter().enumerate() {
        let state = MlState::new(xi, *params)?;
        let proj: Quadrature<Complex64> = integrate_deformed(
            |p| state.value(p).conj() * f(p),
            Weight::Inv1pBp2,
            params,
            &whole_line(spec),
        )?;
        let w = if k == 0 || k == last { 0.5 * step } else { step };
        for (a, &p) in acc.iter_mut().zip(samples) {
            *a += state.value(p) * proj.value * w;
        }
    }
    Ok(acc
        .into_iter()
        .zip(samples)
        .map(|(a, &p)| a * weight.eval(params.beta(), p))
        .collect())
}

/// Discretized resolution of the identity `∫dξ W(p) ψ_ξ(p) ⟨ψ_ξ|f⟩` at the
/// sample momenta, compared with `f`. The ξ step is halved once; if that
/// moves the result by more than the reported deviation the grid is flagged
/// as unresolved.
pub fn completeness_probe<F>(
    f: F,
    params: &ModelParams,
    xi_grid: XiGrid,
    samples: &[f64],
    weight: ClosureWeight,
    spec: &QuadratureSpec,
) -> Result<CompletenessProbe>
where
    F: Fn(f64) -> f64 + Sync,
{
    require_deformed(params)?;
    if samples.is_empty() {
        return Err(Error::invalid("samples", "need at least one sample momentum"));
    }
    let coarse = reconstruct(&f, params, &xi_grid.nodes()?, samples, weight, spec)?;
    let fine = reconstruct(&f, params, &xi_grid.halved().nodes()?, samples, weight, spec)?;
    let deviation = |r: &[Complex64]| {
        r.iter()
            .zip(samples)
            .map(|(v, &p)| (v - f(p)).norm())
            .fold(0.0, f64::max)
    };
    let max_deviation = deviation(&coarse);
    let halved_step_deviation = deviation(&fine);
    let refinement_change = coarse.iter().zip(&fine).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    // Round-off floor below which step changes are not meaningful.
    let floor = 1e-12 * samples.iter().map(|&p| f(p).abs()).fold(1.0, f64::max);
    if refinement_change > max_deviation.max(floor) {
        return Err(Error::GridResolution(format!(
            "halving the xi step moved the result by {refinement_change:e}, more than the deviation {max_deviation:e}"
        )));
    }
    Ok(CompletenessProbe {
        reconstructed: coarse,
        max_deviation,
        halved_step_deviation,
        refinement_change,
    })
}
