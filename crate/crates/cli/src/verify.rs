//! The verification suite behind `gupc verify`.
//!
//! Checks are grouped; each check name starts with its group, e.g.
//! `gup/delta-x hbar=1 beta=0.1`. Hard checks carry a tolerance and pass or
//! fail; the `discrepancy` group holds the three informational comparisons
//! with printed constants.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI};

use gup_coulomb::model::{
    energy_exact, energy_slope_numeric, lambda_param, paper_expansion_coefficient, pt_bracket,
    spectral_residual_terms,
};
use gup_coulomb::numerics::operator_grid::convergence_slope;
use gup_coulomb::numerics::pt_oracle::{ORACLE_FINEST_POINTS, ORACLE_TOLERANCE};
use gup_coulomb::numerics::{
    commutator_residual, integrate_deformed, integrate_interval, pt_fd_eigenvalues_extrapolated,
    verify_spectrum_against_oracle, OperatorGrid, PtOracleSpec, Quadrature, QuadratureSpec, SymTridiagonal, Weight,
};
use gup_coulomb::report::Tolerance;
use gup_coulomb::specfun::{gegenbauer, norm_const_a};
use gup_coulomb::states::{
    eigenfunction_momentum, green_function, green_residue_exact, green_residue_extrapolated, ml_kinetic_analytic,
    ml_kinetic_expectation, ml_kinetic_paper, ml_norm_sq, ml_overlap_closed, ml_overlap_paper, ml_overlap_quadrature,
    ml_position_moments, psi_beta_zero, pt_eigenfunction, DEFAULT_N_MAX,
};
use gup_coulomb::{BoundState, ModelParams, Provenance, Result, VerificationReport};

pub const GROUPS: [&str; 7] = ["model", "specfun", "gup", "states", "numerics", "oracle", "discrepancy"];

/// Step sizes of the commutator convergence fit; the last is the bound's `h`.
pub const COMMUTATOR_STEPS: [f64; 3] = [4e-3, 2e-3, 1e-3];
pub const COMMUTATOR_HALF_WIDTH: f64 = 5.0;
pub const COMMUTATOR_BOUND: f64 = 1e-6;
/// β values of the continuity check and the per-decade error ratio expected.
pub const CONTINUITY_BETAS: [f64; 3] = [1e-3, 1e-4, 1e-5];
pub const CONTINUITY_MOMENTA: [f64; 3] = [0.5, 1.0, 2.0];
pub const GUP_HBARS: [f64; 2] = [1.0, 2.0];
pub const GUP_BETAS: [f64; 3] = [0.1, 1.0, 10.0];

fn check(name: String, computed: f64, reference: f64, prov: Provenance, tol: Tolerance) -> VerificationReport {
    VerificationReport::check(name, computed, reference, prov, tol)
}

/// Model-level checks at the given parameters.
pub fn model_checks(params: &ModelParams) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let beta = params.beta();
    let (hbar, m, alpha) = (params.hbar(), params.mass(), params.alpha());
    if beta == 0.0 {
        for nt in 1..=10u32 {
            let bohr = -m * alpha * alpha / (2.0 * hbar * hbar * f64::from(nt * nt));
            out.push(check(
                format!("model/beta-zero-levels n_tilde={nt}"),
                energy_exact(params, nt - 1),
                bohr,
                Provenance::Paper,
                Tolerance::Relative(1e-13),
            ));
        }
    }
    for n in 0..5u32 {
        let (residual, kinetic, _) = spectral_residual_terms(params, n, energy_exact(params, n))?;
        out.push(check(
            format!("model/spectral-condition beta={beta} n={n}"),
            residual / kinetic,
            0.0,
            Provenance::DerivedAnalytic,
            Tolerance::Absolute(1e-13),
        ));
    }
    for nt in 1..=3u32 {
        let slope = energy_slope_numeric(params, nt)?;
        let c = 8.0 * (2.0 * f64::from(nt) - 1.0) / f64::from(nt * nt);
        out.push(check(
            format!("model/expansion-coefficient beta={beta} n_tilde={nt}"),
            slope.coefficient,
            c,
            Provenance::DerivedAnalytic,
            Tolerance::Relative(1e-6),
        ));
    }
    Ok(out)
}

/// Gegenbauer identities and the θ-space orthonormality of u_n.
pub fn specfun_checks(spec: &QuadratureSpec) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let theta = 0.05 + 3.0 * f64::from(k) / 20.0;
        for n in 0..=8u32 {
            let lhs = gegenbauer(n, 1.0, theta.cos())? * theta.sin();
            worst = worst.max((lhs - (f64::from(n + 1) * theta).sin()).abs());
        }
    }
    out.push(check(
        "specfun/chebyshev-identity 20 angles".into(),
        worst,
        0.0,
        Provenance::DerivedAnalytic,
        Tolerance::Absolute(1e-12),
    ));
    for n in 0..=5u32 {
        out.push(check(
            format!("specfun/norm-constant lambda=1 n={n}"),
            norm_const_a(n, 1.0)?,
            2.0 / PI,
            Provenance::DerivedAnalytic,
            Tolerance::Relative(1e-14),
        ));
    }
    out.push(check(
        "specfun/norm-constant lambda=1.5 n=0".into(),
        norm_const_a(0, 1.5)?,
        0.75,
        Provenance::DerivedAnalytic,
        Tolerance::Relative(1e-14),
    ));
    for lam in [1.0, 1.5, lambda_param(&ModelParams::natural(3.0 / 32.0)?), 3.372_281_3] {
        out.push(check(
            format!("specfun/orthonormality lambda={lam}"),
            orthonormality_defect(lam, 8, spec)?,
            0.0,
            Provenance::DerivedAnalytic,
            Tolerance::Absolute(1e-10),
        ));
    }
    Ok(out)
}

/// `max_{n,m ≤ n_max} |⟨u_n, u_m⟩ − δ_nm|` over `(0, π)`.
pub fn orthonormality_defect(lam: f64, n_max: u32, spec: &QuadratureSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in 0..=n_max {
        for m in n..=n_max {
            let q: Quadrature<f64> = integrate_interval(
                |s| match (pt_eigenfunction(n, lam, s), pt_eigenfunction(m, lam, s)) {
                    (Ok(a), Ok(b)) => a * b,
                    _ => 0.0,
                },
                0.0,
                PI,
                spec,
            )?;
            let expected = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((q.value - expected).abs());
        }
    }
    Ok(worst)
}

/// Maximally localized states: GUP saturation, norms, overlaps, kinetic term.
pub fn gup_checks(spec: &QuadratureSpec) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for hbar in GUP_HBARS {
        for beta in GUP_BETAS {
            let p = ModelParams::new(hbar, 1.0, 1.0, beta)?;
            let tag = format!("hbar={hbar} beta={beta}");
            for xi in [0.0, 1.5, -3.0] {
                let mo = ml_position_moments(xi, &p, spec)?;
                out.push(check(
                    format!("gup/mean-x {tag} xi={xi}"),
                    mo.mean,
                    xi,
                    Provenance::Paper,
                    Tolerance::Absolute(1e-10),
                ));
                if xi == 0.0 {
                    out.push(check(
                        format!("gup/delta-x {tag}"),
                        mo.delta_x(),
                        hbar * beta.sqrt(),
                        Provenance::Paper,
                        Tolerance::Relative(1e-9),
                    ));
                    out.push(check(
                        format!("gup/saturation {tag}"),
                        mo.delta_x() * mo.delta_p(),
                        0.5 * hbar * (1.0 + beta * mo.p_variance),
                        Provenance::DerivedAnalytic,
                        Tolerance::Relative(1e-9),
                    ));
                }
            }
            out.push(check(
                format!("gup/norm {tag}"),
                ml_norm_sq(&p, spec)?.value,
                1.0 / (4.0 * hbar * beta.sqrt()),
                Provenance::DerivedAnalytic,
                Tolerance::Relative(1e-10),
            ));
            out.push(check(
                format!("gup/kinetic {tag}"),
                ml_kinetic_expectation(&p, spec)?.value,
                ml_kinetic_analytic(&p),
                Provenance::DerivedAnalytic,
                Tolerance::Relative(1e-10),
            ));
        }
    }
    let p = ModelParams::natural(1.0)?;
    out.push(check(
        "gup/overlap-closed-vs-quadrature a in [-10,10]".into(),
        overlap_defect(&p, spec)?,
        0.0,
        Provenance::Oracle,
        Tolerance::Absolute(1e-10),
    ));
    for a in [-8.0, -6.0, -4.0, 4.0, 6.0, 8.0] {
        out.push(check(
            format!("gup/overlap-zero a={a}"),
            ml_overlap_quadrature(a, 0.0, &p, spec)?.value.norm(),
            0.0,
            Provenance::DerivedAnalytic,
            Tolerance::Absolute(1e-10),
        ));
    }
    out.push(check(
        "gup/self-overlap".into(),
        ml_overlap_quadrature(0.7, 0.7, &p, spec)?.value.re,
        0.25,
        Provenance::DerivedAnalytic,
        Tolerance::Absolute(1e-10),
    ));
    Ok(out)
}

/// `max |closed − quadrature|` over `a = −10, −9.95, …, 10` (ħ√β units).
pub fn overlap_defect(params: &ModelParams, spec: &QuadratureSpec) -> Result<f64> {
    let scale = params.hbar() * params.beta().sqrt();
    let mut worst: f64 = 0.0;
    for k in -200..=200 {
        let a = f64::from(k) * 0.05;
        let q = ml_overlap_quadrature(a * scale, 0.0, params, spec)?.value;
        let c = ml_overlap_closed(a * scale, 0.0, params)?;
        worst = worst.max((q.re - c).abs()).max(q.im.abs());
    }
    Ok(worst)
}

/// Worst `|Ψ_n(p;β)·phase − ψ^{β=0}(p)|` over [`CONTINUITY_MOMENTA`], with the
/// global phase fixed at p = 1.
pub fn continuity_error(base: &ModelParams, n: u32, beta: f64) -> Result<f64> {
    let state = BoundState::new(base.with_beta(beta)?, n);
    let p_e0 = BoundState::new(base.with_beta(0.0)?, n).p_e;
    let reference = |p: f64| psi_beta_zero(n + 1, p_e0, p);
    let phase = reference(1.0)? / eigenfunction_momentum(&state, 1.0)?;
    let phase = phase / phase.norm();
    let mut worst: f64 = 0.0;
    for p in CONTINUITY_MOMENTA {
        worst = worst.max((eigenfunction_momentum(&state, p)? * phase - reference(p)?).norm());
    }
    Ok(worst)
}

/// Eigenfunction continuity and Green-function checks.
pub fn states_checks(base: &ModelParams, betas: &[f64]) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for n in 0..=2u32 {
        let errs: Vec<f64> = CONTINUITY_BETAS
            .iter()
            .map(|&b| continuity_error(base, n, b))
            .collect::<Result<_>>()?;
        for (b, e) in CONTINUITY_BETAS.iter().zip(&errs) {
            out.push(check(
                format!("states/continuity n={n} beta={b}"),
                *e,
                0.0,
                Provenance::DerivedAnalytic,
                Tolerance::Absolute(*b),
            ));
        }
        for w in 0..errs.len() - 1 {
            out.push(check(
                format!(
                    "states/continuity-ratio n={n} beta={}/{}",
                    CONTINUITY_BETAS[w],
                    CONTINUITY_BETAS[w + 1]
                ),
                errs[w] / errs[w + 1],
                10.0,
                Provenance::DerivedAnalytic,
                Tolerance::Relative(0.1),
            ));
        }
    }
    for &beta in betas {
        let p = base.with_beta(beta)?;
        for n in 0..=1u32 {
            let exact = green_residue_exact(&p, n, 0.5, 1.0)?;
            let extrapolated = green_residue_extrapolated(&p, n, 0.5, 1.0, DEFAULT_N_MAX)?;
            out.push(check(
                format!("states/green-residue beta={beta} n={n}"),
                (extrapolated - exact).norm() / exact.norm(),
                0.0,
                Provenance::DerivedAnalytic,
                Tolerance::Absolute(1e-3),
            ));
        }
        let e = 0.5 * (energy_exact(&p, 0) + energy_exact(&p, 1));
        let ab = green_function(&p, 0.3, 1.7, e, 32, 1e-6)?.value;
        let ba = green_function(&p, 1.7, 0.3, e, 32, 1e-6)?.value;
        out.push(check(
            format!("states/green-symmetry beta={beta}"),
            (ab - ba).norm(),
            0.0,
            Provenance::DerivedAnalytic,
            Tolerance::Absolute(0.0),
        ));
    }
    Ok(out)
}

/// Fitted slope and finest-grid residual of the commutator check.
pub fn commutator_study(beta: f64) -> Result<(f64, f64)> {
    let params = ModelParams::natural(beta)?;
    let samples: Vec<(f64, f64)> = COMMUTATOR_STEPS
        .iter()
        .map(|&h| {
            let grid = OperatorGrid::with_step(&params, COMMUTATOR_HALF_WIDTH, h)?;
            Ok((grid.step(), commutator_residual(&params, &grid)))
        })
        .collect::<Result<_>>()?;
    Ok((convergence_slope(&samples), samples[samples.len() - 1].1))
}

/// Quadrature examples, the eigensolver residual and the commutator grid.
pub fn numerics_checks(spec: &QuadratureSpec) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let unit = ModelParams::natural(1.0)?;
    let q1: Quadrature<f64> = integrate_deformed(|_| 1.0, Weight::InvSq, &unit, spec)?;
    out.push(check("numerics/quadrature inv-sq".into(), q1.value, FRAC_PI_2, Provenance::DerivedAnalytic, Tolerance::Relative(1e-13)));
    let q2: Quadrature<f64> = integrate_deformed(|p| p * p, Weight::InvCube, &unit, spec)?;
    out.push(check("numerics/quadrature inv-cube".into(), q2.value, FRAC_PI_8, Provenance::DerivedAnalytic, Tolerance::Relative(1e-13)));
    let q3: Quadrature<f64> = integrate_interval(|_| 1.0, -1.0, 1.0, spec)?;
    out.push(check("numerics/quadrature finite".into(), q3.value, 2.0, Provenance::DerivedAnalytic, Tolerance::Relative(1e-14)));

    let n = 200;
    let diag: Vec<f64> = (0..n).map(|i| 2.0 + (i as f64).sin()).collect();
    let t = SymTridiagonal::new(diag, vec![-1.0; n - 1])?;
    let mut worst: f64 = 0.0;
    for e in t.lowest_eigenvalues(10)? {
        worst = worst.max(t.residual(e, &t.eigenvector(e)?));
    }
    out.push(check("numerics/eigensolver-residual".into(), worst, 0.0, Provenance::DerivedAnalytic, Tolerance::Absolute(1e-10)));

    for beta in [0.0, 1.0] {
        let (slope, finest) = commutator_study(beta)?;
        out.push(check(format!("numerics/commutator-order beta={beta}"), slope, 2.0, Provenance::DerivedAnalytic, Tolerance::Absolute(0.2)));
        out.push(check(
            format!("numerics/commutator-residual beta={beta} h=1e-3"),
            finest,
            0.0,
            Provenance::DerivedAnalytic,
            Tolerance::Absolute(COMMUTATOR_BOUND),
        ));
    }
    Ok(out)
}

/// Finite-difference Pöschl-Teller oracle against the bracket and the spectrum.
pub fn oracle_checks(base: &ModelParams, betas: &[f64]) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for &beta in betas {
        let p = base.with_beta(beta)?;
        let lam = lambda_param(&p);
        let levels = pt_fd_eigenvalues_extrapolated(lam, ORACLE_FINEST_POINTS, PtOracleSpec::default().wall_offset, 5)?;
        for (n, eps) in levels.iter().enumerate() {
            out.push(check(
                format!("oracle/bracket beta={beta} n={n}"),
                pt_bracket(n as u32, lam),
                *eps,
                Provenance::Oracle,
                Tolerance::Relative(ORACLE_TOLERANCE),
            ));
        }
        out.extend(verify_spectrum_against_oracle(&p, 5)?);
    }
    Ok(out)
}

/// The three comparisons with printed constants. Informational only.
pub fn discrepancy_checks(base: &ModelParams, spec: &QuadratureSpec) -> Result<Vec<VerificationReport>> {
    let slope = energy_slope_numeric(base, 1)?;
    let ml = base.with_beta(1.0)?;
    let kinetic = ml_kinetic_expectation(&ml, spec)?.value;
    let (xi1, xi2) = (ml.hbar() * ml.beta().sqrt(), 0.0);
    let overlap = ml_overlap_quadrature(xi1, xi2, &ml, spec)?.value.re;
    Ok(vec![
        VerificationReport::informational(
            "discrepancy/expansion-coefficient n_tilde=1",
            slope.coefficient,
            paper_expansion_coefficient(1),
            Provenance::Paper,
        ),
        VerificationReport::informational(
            "discrepancy/kinetic-constant beta=1",
            kinetic,
            ml_kinetic_paper(&ml),
            Provenance::Paper,
        ),
        VerificationReport::informational(
            "discrepancy/overlap-printed-form a=1",
            overlap,
            ml_overlap_paper(xi1, xi2, &ml)?,
            Provenance::Paper,
        ),
    ])
}

fn run_group(group: &str, base: &ModelParams, betas: &[f64], spec: &QuadratureSpec) -> Result<Vec<VerificationReport>> {
    match group {
        "model" => {
            let mut out = Vec::new();
            for &b in betas {
                out.extend(model_checks(&base.with_beta(b)?)?);
            }
            Ok(out)
        }
        "specfun" => specfun_checks(spec),
        "gup" => gup_checks(spec),
        "states" => states_checks(base, betas),
        "numerics" => numerics_checks(spec),
        "oracle" => oracle_checks(base, betas),
        "discrepancy" => discrepancy_checks(base, spec),
        _ => Ok(Vec::new()),
    }
}

/// Run the suite. A filter naming a group runs that group only; any other
/// filter keeps the checks whose name contains it.
pub fn run_suite(base: &ModelParams, betas: &[f64], spec: &QuadratureSpec, filter: Option<&str>) -> Result<Vec<VerificationReport>> {
    let selected: Vec<&str> = match filter {
        Some(f) if GROUPS.iter().any(|g| g.contains(f)) => GROUPS.iter().copied().filter(|g| g.contains(f)).collect(),
        _ => GROUPS.to_vec(),
    };
    let mut out = Vec::new();
    for g in selected {
        log::info!("verify: running group {g}");
        out.extend(run_group(g, base, betas, spec)?);
    }
    if let Some(f) = filter {
        out.retain(|r| r.check_name.contains(f));
    }
    Ok(out)
}
