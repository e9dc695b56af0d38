//! Composite Gauss-Legendre quadrature over the (compactified) momentum line.
//!
//! The infinite line is mapped by `p = tan(φ)/s` with `s = √β` (or `s = 1`
//! at β = 0), the same substitution that turns the deformed measure into
//! `dφ/s`. Panels are uniform in φ; a result is accepted once doubling the
//! panel count changes it by less than `max(abs_tol, rel_tol·|value|)`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Values a quadrature can accumulate.
pub trait Integrand: Copy + Send + Sync + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mapping {
    /// Whole line, `p = tan(φ)/s`, φ ∈ (−π/2, π/2).
    CompactifyArctan,
    /// Half line p > 0, `p = tan(φ)/s`, φ ∈ (0, π/2).
    CompactifyArctanPositive,
    FiniteInterval { lower: f64, upper: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub mapping: Mapping,
    pub panels: usize,
    /// Gauss-Legendre order per panel.
    pub points_per_panel: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Panel doublings allowed before giving up.
    pub max_refinements: u32,
    /// Evaluate panels on the rayon pool. Results are bit-identical either way.
    pub parallel: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            mapping: Mapping::CompactifyArctan,
            panels: 16,
            points_per_panel: 20,
            abs_tol: 1e-14,
            rel_tol: 1e-13,
            max_refinements: 8,
            parallel: false,
        }
    }
}

impl QuadratureSpec {
    pub fn finite(lower: f64, upper: f64) -> Self {
        Self {
            mapping: Mapping::FiniteInterval { lower, upper },
            ..Self::default()
        }
    }

    pub fn with_mapping(self, mapping: Mapping) -> Self {
        Self { mapping, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.panels == 0 {
            return Err(Error::invalid("panels", "need at least one panel"));
        }
        if !(1..=128).contains(&self.points_per_panel) {
            return Err(Error::invalid("points_per_panel", "Gauss-Legendre order must be in 1..=128"));
        }
        for (name, t) in [("abs_tol", self.abs_tol), ("rel_tol", self.rel_tol)] {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::invalid(name, format!("tolerance must be positive, got {t}")));
            }
        }
        if let Mapping::FiniteInterval { lower, upper } = self.mapping {
            if !(lower.is_finite() && upper.is_finite() && lower < upper) {
                return Err(Error::invalid("mapping", format!("bad interval [{lower}, {upper}]")));
            }
        }
        Ok(())
    }
}

/// Weight functions of the deformed-measure integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Flat,
    /// `1/(1+βp²)`, the deformed measure `Dp`.
    Inv1pBp2,
    /// `(1+βp²)^{-2}`.
    InvSq,
    /// `(1+βp²)^{-3}`.
    InvCube,
    /// `(1+βp²)²`, the closure weight.
    Sq1pBp2,
}

impl Weight {
    pub fn eval(self, beta: f64, p: f64) -> f64 {
        let g = 1.0 + beta * p * p;
        match self {
            Weight::Flat => 1.0,
            Weight::Inv1pBp2 => 1.0 / g,
            Weight::InvSq => 1.0 / (g * g),
            Weight::InvCube => 1.0 / (g * g * g),
            Weight::Sq1pBp2 => g * g,
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on P_n from the Chebyshev-like initial guesses.
    pub fn new(order: usize) -> Self {
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Summation round-off folded into every error estimate, in units of
/// `ε·√(nodes)·∫|f|`.
pub const ROUNDOFF_FACTOR: f64 = 4.0;

/// Accepted integral and the refinement difference used as its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    pub err_estimate: f64,
    /// Panel count of the accepted (finer) level.
    pub panels: usize,
}

/// Composite rule value and the same rule applied to `|g|`.
fn composite<T, G>(g: &G, a: f64, b: f64, panels: usize, rule: &GaussLegendre, parallel: bool) -> (T, f64)
where
    T: Integrand,
    G: Fn(f64) -> T + Sync,
{
    let width = (b - a) / panels as f64;
    let panel_sum = |k: usize| {
        let lo = a + width * k as f64;
        let mid = lo + 0.5 * width;
        let half = 0.5 * width;
        let mut acc = T::zero();
        let mut abs = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let v = g(mid + half * x);
            abs += v.magnitude() * (w * half).abs();
            acc = acc + v * (w * half);
        }
        (acc, abs)
    };
    let sums: Vec<(T, f64)> = if parallel {
        (0..panels).into_par_iter().map(panel_sum).collect()
    } else {
        (0..panels).map(panel_sum).collect()
    };
    // Fixed left-to-right reduction keeps results independent of the pool size.
    sums.into_iter()
        .fold((T::zero(), 0.0), |(acc, abs), (s, a)| (acc + s, abs + a))
}

/// Integrate `g` over the variable of `spec.mapping` directly (no weight, no Jacobian
/// for finite intervals; for compactified mappings `g` receives φ).
fn adaptive<T, G>(g: G, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature<T>>
where
    T: Integrand,
    G: Fn(f64) -> T + Sync,
{
    spec.validate()?;
    let rule = GaussLegendre::new(spec.points_per_panel);
    let mut panels = spec.panels;
    let (mut coarse, _): (T, f64) = composite(&g, a, b, panels, &rule, spec.parallel);
    for _ in 0..=spec.max_refinements {
        let (fine, abs): (T, f64) = composite(&g, a, b, 2 * panels, &rule, spec.parallel);
        let nodes = (2 * panels * rule.nodes.len()) as f64;
        let roundoff = ROUNDOFF_FACTOR * f64::EPSILON * nodes.sqrt() * abs;
        let diff = (fine + coarse * -1.0).magnitude();
        let tol = spec.abs_tol.max(spec.rel_tol * fine.magnitude());
        if diff <= tol.max(roundoff) {
            return Ok(Quadrature {
                value: fine,
                err_estimate: diff.max(roundoff),
                panels: 2 * panels,
            });
        }
        if !diff.is_finite() {
            break;
        }
        coarse = fine;
        panels *= 2;
    }
    let (fine, _): (T, f64) = composite(&g, a, b, 2 * panels, &rule, spec.parallel);
    Err(Error::QuadratureNotConverged {
        coarse: coarse.magnitude(),
        fine: fine.magnitude(),
        panels: 2 * panels,
    })
}

/// ∫ f(p)·w(p) dp over the domain of `spec.mapping`.
pub fn integrate_deformed<T, F>(f: F, weight: Weight, params: &ModelParams, spec: &QuadratureSpec) -> Result<Quadrature<T>>
where
    T: Integrand,
    F: Fn(f64) -> T + Sync,
{
    integrate_with_scale(f, weight, params.beta(), spec)
}

pub(crate) fn integrate_with_scale<T, F>(f: F, weight: Weight, beta: f64, spec: &QuadratureSpec) -> Result<Quadrature<T>>
where
    T: Integrand,
    F: Fn(f64) -> T + Sync,
{
    let scale = if beta > 0.0 { beta.sqrt() } else { 1.0 };
    let through_tan = |phi: f64| {
        let p = phi.tan() / scale;
        let c = phi.cos();
        f(p) * (weight.eval(beta, p) / (c * c * scale))
    };
    match spec.mapping {
        Mapping::CompactifyArctan => adaptive(through_tan, -FRAC_PI_2, FRAC_PI_2, spec),
        Mapping::CompactifyArctanPositive => adaptive(through_tan, 0.0, FRAC_PI_2, spec),
        Mapping::FiniteInterval { lower, upper } => {
            adaptive(|p: f64| f(p) * weight.eval(beta, p), lower, upper, spec)
        }
    }
}

/// ∫ f(x) dx over `[lower, upper]`.
pub fn integrate_interval<T, F>(f: F, lower: f64, upper: f64, spec: &QuadratureSpec) -> Result<Quadrature<T>>
where
    T: Integrand,
    F: Fn(f64) -> T + Sync,
{
    let spec = spec.with_mapping(Mapping::FiniteInterval { lower, upper });
    integrate_with_scale(f, Weight::Flat, 0.0, &spec)
}
