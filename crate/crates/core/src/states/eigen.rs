//! Pöschl-Teller eigenfunctions and the momentum-space Coulomb eigenfunctions
//! built from them.
//!
//! With `θ = arctan(p/p_E)` and `q = √(1+p²/p_E²)`,
//! `Ψ_n(p) = i·√(A_n/2p_E)·sin^λθ·C_n^λ(cos θ) / ((1+βp²)·q)`.
//! At β = 0 (λ = 1) this reduces to [`psi_beta_zero`] exactly.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::BoundState;
use crate::numerics::quadrature::{integrate_interval, QuadratureSpec};
use crate::report::{Provenance, VerificationReport};
use crate::specfun::{gegenbauer_unchecked, norm_const_a};

/// `u_n(s) = √A_n·sin^λ(s)·C_n^λ(cos s)` on `s ∈ (0, π)`, orthonormal under `ds`.
pub fn pt_eigenfunction(n: u32, lam: f64, s: f64) -> Result<f64> {
    if !(s > 0.0 && s < PI) {
        return Err(Error::invalid("s", format!("must lie in (0, π), got {s}")));
    }
    let a = norm_const_a(n, lam)?;
    Ok(a.sqrt() * s.sin().powf(lam) * gegenbauer_unchecked(n, lam, s.cos()))
}

/// How `sin^λθ` is continued to `p < 0`, where `sin θ < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchConvention {
    /// `sign(sin θ)·|sin θ|^λ`: real, odd in p, and equal to `sin θ` at λ = 1.
    #[default]
    OddExtension,
    /// `|sin θ|^λ·e^{iπλ}`, the principal power of a negative real.
    PrincipalBranch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumEigenfunction {
    pub state: BoundState,
    pub lam: f64,
    pub branch_convention: BranchConvention,
    amplitude: f64,
}

impl MomentumEigenfunction {
    pub fn new(state: BoundState) -> Result<Self> {
        Self::with_branch(state, BranchConvention::default())
    }

    pub fn with_branch(state: BoundState, branch_convention: BranchConvention) -> Result<Self> {
        let a = norm_const_a(state.n, state.lambda)?;
        Ok(Self {
            state,
            lam: state.lambda,
            branch_convention,
            amplitude: (a / (2.0 * state.p_e)).sqrt(),
        })
    }

    pub fn value(&self, p: f64) -> Complex64 {
        let x = p / self.state.p_e;
        let q = (1.0 + x * x).sqrt();
        let (sin_t, cos_t) = (x / q, 1.0 / q);
        let radial = self.amplitude * gegenbauer_unchecked(self.state.n, self.lam, cos_t)
            / ((1.0 + self.state.params.beta() * p * p) * q);
        let power = sin_t.abs().powf(self.lam);
        let angular = if sin_t >= 0.0 {
            Complex64::new(power, 0.0)
        } else {
            match self.branch_convention {
                BranchConvention::OddExtension => Complex64::new(-power, 0.0),
                BranchConvention::PrincipalBranch => Complex64::from_polar(power, PI * self.lam),
            }
        };
        Complex64::i() * angular * radial
    }
}

pub fn eigenfunction_momentum(state: &BoundState, p: f64) -> Result<Complex64> {
    Ok(MomentumEigenfunction::new(*state)?.value(p))
}

/// `√(1/4πp_E)·(1+p²/p_E²)^{-1/2}·[e^{iñθ} − e^{−iñθ}]` with `θ = arctan(p/p_E)`.
pub fn psi_beta_zero(n_tilde: u32, p_e: f64, p: f64) -> Result<Complex64> {
    if n_tilde == 0 {
        return Err(Error::invalid("n_tilde", "the Coulomb label starts at 1"));
    }
    if !(p_e.is_finite() && p_e > 0.0) {
        return Err(Error::invalid("p_e", format!("must be positive, got {p_e}")));
    }
    let x = p / p_e;
    let theta = x.atan();
    let pref = (1.0 / (4.0 * PI * p_e)).sqrt() / (1.0 + x * x).sqrt();
    Ok(Complex64::new(0.0, 2.0 * pref * (f64::from(n_tilde) * theta).sin()))
}

/// `∫₀^∞ |ψ^{β=0}|² dp`, equal to 1/4 for every ñ and p_E.
pub const BETA_ZERO_HALF_LINE_NORM: f64 = 0.25;

/// Candidate measures for the eigenfunction normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMeasure {
    /// `dp`
    Flat,
    /// `dp/(1+βp²)`
    Deformed,
    /// `dp·(1+βp²)`
    Inverse,
}

impl NormMeasure {
    pub const ALL: [NormMeasure; 3] = [NormMeasure::Flat, NormMeasure::Deformed, NormMeasure::Inverse];

    pub fn label(self) -> &'static str {
        match self {
            NormMeasure::Flat => "dp",
            NormMeasure::Deformed => "dp/(1+bp^2)",
            NormMeasure::Inverse => "dp(1+bp^2)",
        }
    }

    fn factor(self, beta: f64, p: f64) -> f64 {
        let g = 1.0 + beta * p * p;
        match self {
            NormMeasure::Flat => 1.0,
            NormMeasure::Deformed => 1.0 / g,
            NormMeasure::Inverse => g,
        }
    }
}

/// `∫|Ψ_n|² dμ` over the half line (`full_line = false`) or the whole line.
///
/// The integrand changes scale at `p ~ p_E` and again at `p ~ 1/√β`, so the
/// half line is split there: `[0, p_E]` and the tail beyond `1/√β` are
/// compactified with `tan`, the stretch in between is integrated in `ln p`.
pub fn eigenfunction_norm(state: &BoundState, measure: NormMeasure, full_line: bool, spec: &QuadratureSpec) -> Result<f64> {
    let psi = MomentumEigenfunction::new(*state)?;
    let beta = state.params.beta();
    let density = |p: f64| {
        let mut d = psi.value(p).norm_sqr() * measure.factor(beta, p);
        if full_line {
            d += psi.value(-p).norm_sqr() * measure.factor(beta, p);
        }
        d
    };
    let through_tan = |scale: f64| {
        move |phi: f64| {
            let c = phi.cos();
            density(scale * phi.tan()) * scale / (c * c)
        }
    };
    let p_e = state.p_e;
    let head = integrate_interval(through_tan(p_e), 0.0, FRAC_PI_4, spec)?.value;
    if beta == 0.0 {
        return Ok(head + integrate_interval(through_tan(p_e), FRAC_PI_4, FRAC_PI_2, spec)?.value);
    }
    let knee = 1.0 / beta.sqrt();
    let middle = if knee > p_e {
        integrate_interval(
            |t: f64| {
                let p = t.exp();
                density(p) * p
            },
            p_e.ln(),
            knee.ln(),
            spec,
        )?
        .value
    } else {
        0.0
    };
    let tail_start = (knee.max(p_e) / knee).atan();
    let tail = integrate_interval(through_tan(knee), tail_start, FRAC_PI_2, spec)?.value;
    Ok(head + middle + tail)
}

/// Norms under the three candidate measures on both domains, compared with 1.
pub fn normalization_report(state: &BoundState, spec: &QuadratureSpec) -> Vec<VerificationReport> {
    let mut out = Vec::with_capacity(6);
    for measure in NormMeasure::ALL {
        for full_line in [false, true] {
            let name = format!(
                "norm n={} beta={} measure={} domain={}",
                state.n,
                state.params.beta(),
                measure.label(),
                if full_line { "full" } else { "half" }
            );
            let computed = eigenfunction_norm(state, measure, full_line, spec).unwrap_or(f64::NAN);
            out.push(VerificationReport::informational(name, computed, 1.0, Provenance::Paper));
        }
    }
    out
}
