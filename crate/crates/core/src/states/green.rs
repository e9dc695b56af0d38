//! Fixed-energy Green function as a truncated sum over bound states,
//! `G(p_b, p_a; E) = Σ_{n=0}^{n_max} iħ·Ψ_n(p_b)Ψ_n(p_a) / (E − E_n + iη)`.

use num_complex::Complex64;

use super::eigen::MomentumEigenfunction;
use crate::error::{Error, Result};
use crate::model::{energy_exact, BoundState, ModelParams};

pub const DEFAULT_N_MAX: u32 = 64;
/// Default regulator relative to `|E_0|`.
pub const DEFAULT_ETA_FACTOR: f64 = 1e-8;
/// Offsets `E − E_n` used for residue extrapolation.
pub const RESIDUE_OFFSETS: [f64; 3] = [1e-3, 1e-4, 1e-5];
pub const RESIDUE_ETA: f64 = 1e-8;

pub fn default_eta(params: &ModelParams) -> f64 {
    DEFAULT_ETA_FACTOR * energy_exact(params, 0).abs()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreenSumResult {
    pub value: Complex64,
    pub n_max: u32,
    pub eta: f64,
    /// `|term_n|` for n = 0..=n_max.
    pub term_magnitudes: Vec<f64>,
    /// Magnitude of the last retained term.
    pub truncation_estimate: f64,
}

/// Residue numerator `iħΨ_n(p_b)Ψ_n(p_a)` of the pole at `E_n`.
pub fn green_residue_exact(params: &ModelParams, n: u32, p_b: f64, p_a: f64) -> Result<Complex64> {
    let psi = MomentumEigenfunction::new(BoundState::new(*params, n))?;
    Ok(Complex64::new(0.0, params.hbar()) * psi.value(p_b) * psi.value(p_a))
}

pub fn green_function(params: &ModelParams, p_b: f64, p_a: f64, energy: f64, n_max: u32, eta: f64) -> Result<GreenSumResult> {
    if n_max < 1 {
        return Err(Error::invalid("n_max", "need at least one level beyond the ground state"));
    }
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::invalid("eta", format!("must be positive, got {eta}")));
    }
    if !(energy.is_finite() && p_a.is_finite() && p_b.is_finite()) {
        return Err(Error::invalid("energy", "energy and momenta must be finite"));
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut term_magnitudes = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let state = BoundState::new(*params, n);
        let psi = MomentumEigenfunction::new(state)?;
        // Multiply in a fixed order so swapping p_a and p_b is bit-identical.
        let (lo, hi) = if p_a <= p_b { (p_a, p_b) } else { (p_b, p_a) };
        let numerator = Complex64::new(0.0, params.hbar()) * (psi.value(lo) * psi.value(hi));
        let term = numerator / Complex64::new(energy - state.energy, eta);
        term_magnitudes.push(term.norm());
        value += term;
    }
    Ok(GreenSumResult {
        value,
        n_max,
        eta,
        truncation_estimate: *term_magnitudes.last().unwrap_or(&0.0),
        term_magnitudes,
    })
}

/// Residue of the pole at `E_n`: `(E − E_n + iη)·G(E)` at `E = E_n + d` for each
/// `d` in [`RESIDUE_OFFSETS`], extrapolated to `d → 0` by a quadratic through
/// the three points.
pub fn green_residue_extrapolated(params: &ModelParams, n: u32, p_b: f64, p_a: f64, n_max: u32) -> Result<Complex64> {
    let e_n = energy_exact(params, n);
    let samples: Vec<(f64, Complex64)> = RESIDUE_OFFSETS
        .iter()
        .map(|&d| {
            let g = green_function(params, p_b, p_a, e_n + d, n_max.max(n + 1), RESIDUE_ETA)?;
            Ok((d, g.value * Complex64::new(d, RESIDUE_ETA)))
        })
        .collect::<Result<_>>()?;
    Ok(neville_at_zero(&samples))
}

/// Value at 0 of the interpolating polynomial through `(x_i, y_i)`.
fn neville_at_zero(samples: &[(f64, Complex64)]) -> Complex64 {
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let mut table: Vec<Complex64> = samples.iter().map(|s| s.1).collect();
    for level in 1..xs.len() {
        for i in 0..xs.len() - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            table[i] = (table[i + 1] * xi - table[i] * xj) / (xi - xj);
        }
    }
    table[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ModelParams {
        ModelParams::natural(3.0 / 32.0).unwrap()
    }

    #[test]
    fn symmetric_in_momenta() {
        let p = params();
        for (pb, pa) in [(0.3, 1.2), (-0.5, 2.0), (0.7, 0.7)] {
            let a = green_function(&p, pb, pa, -0.05, 32, 1e-6).unwrap();
            let b = green_function(&p, pa, pb, -0.05, 32, 1e-6).unwrap();
            assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn pole_residue() {
        let p = params();
        for (pb, pa) in [(0.5, 1.0), (0.2, 0.3)] {
            let exact = green_residue_exact(&p, 0, pb, pa).unwrap();
            let extrapolated = green_residue_extrapolated(&p, 0, pb, pa, DEFAULT_N_MAX).unwrap();
            assert!((extrapolated - exact).norm() <= 1e-3 * exact.norm());
            assert!((extrapolated - exact).norm() <= 1e-5 * exact.norm());
        }
    }

    #[test]
    fn regulator_controls_real_part() {
        // Each term is iħ·(i a)(i b)/(D + iη): the real part is −ħabη/(D²+η²).
        let p = params();
        let g1 = green_function(&p, 0.4, 0.9, -0.05, 32, 1e-4).unwrap();
        let g2 = green_function(&p, 0.4, 0.9, -0.05, 32, 1e-6).unwrap();
        assert!(g2.value.re.abs() < g1.value.re.abs() / 50.0);
        assert!(g2.value.re.abs() <= 1e-3 * g2.value.im.abs());
    }

    #[test]
    fn tail_behaviour_far_from_spectrum() {
        let p = params();
        let sums: Vec<GreenSumResult> = [20, 40, 80, 160]
            .iter()
            .map(|&n| green_function(&p, 0.5, 1.0, 1.0, n, default_eta(&p)).unwrap())
            .collect();
        // terms fall off like 1/n, so each doubling adds a roughly constant increment
        let last = &sums[3].term_magnitudes;
        let ratio = last[80] / last[160];
        assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio}");
        let d1 = (sums[1].value - sums[0].value).norm();
        let d2 = (sums[2].value - sums[1].value).norm();
        let d3 = (sums[3].value - sums[2].value).norm();
        assert!((d2 / d1 - 1.0).abs() < 0.2 && (d3 / d2 - 1.0).abs() < 0.2, "{d1} {d2} {d3}");
        assert_eq!(sums[0].truncation_estimate, sums[0].term_magnitudes[20]);
    }

    #[test]
    fn rejects_bad_arguments() {
        let p = params();
        assert!(green_function(&p, 0.1, 0.2, -0.1, 0, 1e-8).is_err());
        assert!(green_function(&p, 0.1, 0.2, -0.1, 4, 0.0).is_err());
    }

    #[test]
    fn neville_recovers_quadratic() {
        let f = |x: f64| Complex64::new(2.0 - 3.0 * x + 5.0 * x * x, 1.0 + x);
        let s: Vec<_> = [0.3, 0.1, 0.05].iter().map(|&x| (x, f(x))).collect();
        assert!((neville_at_zero(&s) - f(0.0)).norm() < 1e-13);
    }
}
