//! Problem parameters, derived length scales and the exact bound-state spectrum.
//!
//! Two quantum-number conventions coexist: the 0-based `n` labels the
//! Pöschl-Teller level and appears in the exact spectrum, while the 1-based
//! `ñ = n + 1` labels the Coulomb level in the small-β expansion. Every
//! function below says which one it takes.

use crate::error::{Error, Result};

/// δ above which the first-order expansion is flagged as unreliable.
pub const EXPANSION_WARN_DELTA: f64 = 1e-2;

/// Physical constants and deformation of one problem instance.
///
/// Dimensions: `hbar` action, `mass` mass, `alpha` energy·length,
/// `beta` inverse momentum squared. No unit system is imposed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    hbar: f64,
    mass: f64,
    alpha: f64,
    beta: f64,
}

impl ModelParams {
    pub fn new(hbar: f64, mass: f64, alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", mass), ("alpha", alpha)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, format!("must be finite and positive, got {v}")));
            }
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::invalid("beta", format!("must be finite and nonnegative, got {beta}")));
        }
        Ok(Self {
            hbar,
            mass,
            alpha,
            beta,
        })
    }

    /// ħ = m = α = 1 with the given deformation.
    pub fn natural(beta: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, beta)
    }

    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Self::new(self.hbar, self.mass, self.alpha, beta)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `m²α²/ħ²`, the factor converting β into the dimensionless δ.
    fn coupling_sq(&self) -> f64 {
        let r = self.mass * self.alpha / self.hbar;
        r * r
    }

    pub fn scales(&self) -> DerivedScales {
        DerivedScales::new(self)
    }
}

/// Length scales and the Pöschl-Teller index derived from [`ModelParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedScales {
    /// ħ√β.
    pub min_length: f64,
    /// ħ²/(mα).
    pub bohr_radius: f64,
    /// (min_length / bohr_radius)² = βm²α²/ħ².
    pub delta_dimensionless: f64,
    pub lambda_param: f64,
}

impl DerivedScales {
    pub fn new(params: &ModelParams) -> Self {
        Self {
            min_length: params.hbar * params.beta.sqrt(),
            bohr_radius: params.hbar * params.hbar / (params.mass * params.alpha),
            delta_dimensionless: params.beta * params.coupling_sq(),
            lambda_param: lambda_param(params),
        }
    }

    pub fn expansion_is_reliable(&self) -> bool {
        self.delta_dimensionless <= EXPANSION_WARN_DELTA
    }
}

/// `½(1 + √(1 + 32βm²α²/ħ²))`; equals 1 exactly when β = 0.
pub fn lambda_param(params: &ModelParams) -> f64 {
    lambda_from_delta(params.beta * params.coupling_sq())
}

fn lambda_from_delta(delta: f64) -> f64 {
    0.5 * (1.0 + (1.0 + 32.0 * delta).sqrt())
}

/// The Pöschl-Teller bracket `n² + (2n+1)λ` (0-based `n`).
pub fn pt_bracket(n: u32, lambda: f64) -> f64 {
    let n = f64::from(n);
    n * n + (2.0 * n + 1.0) * lambda
}

/// Exact spectrum evaluated for any δ where the radicand stays positive.
/// Used directly by the β-derivative so the stencil may straddle β = 0.
fn energy_formula(hbar: f64, mass: f64, alpha: f64, delta: f64, n: u32) -> f64 {
    let n = f64::from(n);
    let denom = n * n + (n + 0.5) * (1.0 + (1.0 + 32.0 * delta).sqrt());
    -mass * alpha * alpha / (2.0 * hbar * hbar * denom)
}

/// Exact bound-state energy for the 0-based level `n`.
pub fn energy_exact(params: &ModelParams, n: u32) -> f64 {
    energy_formula(
        params.hbar,
        params.mass,
        params.alpha,
        params.beta * params.coupling_sq(),
        n,
    )
}

/// Momentum scale `p_E = √(−2mE_n)` of the 0-based level `n`.
pub fn p_e_of_state(params: &ModelParams, n: u32) -> f64 {
    (-2.0 * params.mass * energy_exact(params, n)).sqrt()
}

/// `ħ²p_E⁴/(2m²)·[n² + (2n+1)λ] − α²p_E²/2` with `p_E² = −2mE`.
///
/// Zero exactly at `E = energy_exact(n)`. Rejects `E ≥ 0`.
pub fn spectral_residual(params: &ModelParams, n: u32, energy: f64) -> Result<f64> {
    Ok(spectral_residual_terms(params, n, energy)?.0)
}

/// The residual together with its kinetic and potential terms, for relative checks.
pub fn spectral_residual_terms(params: &ModelParams, n: u32, energy: f64) -> Result<(f64, f64, f64)> {
    if !(energy.is_finite() && energy < 0.0) {
        return Err(Error::invalid("energy", format!("bound states need E < 0, got {energy}")));
    }
    let pe2 = -2.0 * params.mass * energy;
    let m = params.mass;
    let kinetic = params.hbar * params.hbar * pe2 * pe2 / (2.0 * m * m) * pt_bracket(n, lambda_param(params));
    let potential = params.alpha * params.alpha * pe2 / 2.0;
    Ok((kinetic - potential, kinetic, potential))
}

/// The printed first-order expansion `−(mα²/2ħ²ñ²)[1 − 8δ(ñ + 3/2)/ñ²]` (1-based `ñ`).
///
/// Reproduced verbatim; its coefficient does not follow from [`energy_exact`],
/// see [`energy_slope_numeric`]. Logs a warning when δ exceeds
/// [`EXPANSION_WARN_DELTA`].
pub fn energy_expanded_paper(params: &ModelParams, n_tilde: u32) -> Result<f64> {
    if n_tilde == 0 {
        return Err(Error::invalid("n_tilde", "the Coulomb label starts at 1"));
    }
    let scales = params.scales();
    if !scales.expansion_is_reliable() {
        log::warn!(
            "delta = {:.3e} exceeds {EXPANSION_WARN_DELTA:e}; the small-beta expansion is unreliable",
            scales.delta_dimensionless
        );
    }
    let nt = f64::from(n_tilde);
    let leading = -params.mass * params.alpha * params.alpha / (2.0 * params.hbar * params.hbar * nt * nt);
    Ok(leading * (1.0 - 8.0 * scales.delta_dimensionless * (nt + 1.5) / (nt * nt)))
}

/// The coefficient the printed expansion puts in front of δ: `8(ñ + 3/2)/ñ²`.
pub fn paper_expansion_coefficient(n_tilde: u32) -> f64 {
    let nt = f64::from(n_tilde);
    8.0 * (nt + 1.5) / (nt * nt)
}

/// Numerical first-order behaviour of [`energy_exact`] at β = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySlope {
    /// dE/dβ at β = 0.
    pub slope_beta: f64,
    /// c(ñ) in `E ≈ −(mα²/2ħ²ñ²)[1 − c(ñ)·δ]`.
    pub coefficient: f64,
    /// Step in δ of the accepted difference pair.
    pub delta_step: f64,
    /// Relative disagreement of the two Richardson levels that were accepted.
    pub richardson_rel_diff: f64,
}

const RICHARDSON_ACCEPT: f64 = 1e-4;

/// Central-difference estimate of the β-slope of the exact spectrum at β = 0.
///
/// The stencil runs in δ over steps 1e-5 … 1e-9. For each step `h` the
/// Richardson combination of `D(h)` and `D(h/2)` is compared with the next
/// finer level; the most self-consistent pair is kept. The β of `params` is
/// ignored.
pub fn energy_slope_numeric(params: &ModelParams, n_tilde: u32) -> Result<EnergySlope> {
    if n_tilde == 0 {
        return Err(Error::invalid("n_tilde", "the Coulomb label starts at 1"));
    }
    let n = n_tilde - 1;
    let (hbar, m, alpha) = (params.hbar, params.mass, params.alpha);
    let e = |delta: f64| energy_formula(hbar, m, alpha, delta, n);
    let central = |h: f64| (e(h) - e(-h)) / (2.0 * h);
    let richardson = |h: f64| (4.0 * central(h / 2.0) - central(h)) / 3.0;

    let steps = [1e-5, 1e-6, 1e-7, 1e-8, 1e-9];
    let levels: Vec<f64> = steps.iter().map(|&h| richardson(h)).collect();
    let (best, rel_diff) = levels
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i, ((w[0] - w[1]) / w[1]).abs()))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    if !(rel_diff <= RICHARDSON_ACCEPT) {
        return Err(Error::UnstableDerivative { rel_diff });
    }
    let slope_delta = levels[best];
    let nt = f64::from(n_tilde);
    let leading = -m * alpha * alpha / (2.0 * hbar * hbar * nt * nt);
    Ok(EnergySlope {
        slope_beta: slope_delta * params.coupling_sq(),
        coefficient: -slope_delta / leading,
        delta_step: steps[best],
        richardson_rel_diff: rel_diff,
    })
}

/// A bound level with both labels, its energy and momentum scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub params: ModelParams,
    /// 0-based Pöschl-Teller label.
    pub n: u32,
    /// 1-based Coulomb label, `n + 1`.
    pub n_tilde: u32,
    pub energy: f64,
    pub p_e: f64,
    pub lambda: f64,
}

impl BoundState {
    /// Level from its 0-based label `n`.
    pub fn new(params: ModelParams, n: u32) -> Self {
        let energy = energy_exact(&params, n);
        Self {
            params,
            n,
            n_tilde: n + 1,
            energy,
            p_e: (-2.0 * params.mass * energy).sqrt(),
            lambda: lambda_param(&params),
        }
    }

    /// Level from its 1-based label `ñ`.
    pub fn from_n_tilde(params: ModelParams, n_tilde: u32) -> Result<Self> {
        match n_tilde {
            0 => Err(Error::invalid("n_tilde", "the Coulomb label starts at 1")),
            nt => Ok(Self::new(params, nt - 1)),
        }
    }
}
