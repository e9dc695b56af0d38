//! Gegenbauer polynomials, log-gamma and the Pöschl-Teller normalization constants.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

/// Arguments this far outside [-1, 1] are clamped instead of rejected.
pub const DOMAIN_SLACK: f64 = 1e-12;

/// `C_n^λ(x)` by the three-term recurrence
/// `k·C_k = 2x(k+λ−1)C_{k−1} − (k+2λ−2)C_{k−2}`, `C_0 = 1`, `C_1 = 2λx`.
///
/// Forward recurrence is stable here for λ up to ~10 and degree up to ~50
/// (see the `recurrence_stability` test).
pub fn gegenbauer(n: u32, lam: f64, x: f64) -> Result<f64> {
    if !(lam.is_finite() && lam > 0.0) {
        return Err(Error::invalid("lam", format!("Gegenbauer index must be positive, got {lam}")));
    }
    if !(x.abs() <= 1.0 + DOMAIN_SLACK) {
        return Err(Error::invalid("x", format!("must lie in [-1, 1], got {x}")));
    }
    Ok(gegenbauer_unchecked(n, lam, x.clamp(-1.0, 1.0)))
}

pub(crate) fn gegenbauer_unchecked(n: u32, lam: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * lam * x;
    for k in 2..=n {
        let k = f64::from(k);
        let next = (2.0 * x * (k + lam - 1.0) * cur - (k + 2.0 * lam - 2.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    cur
}

/// `C_n^λ(1) = Γ(n+2λ) / (n! Γ(2λ))`, the maximum of |C_n^λ| on [-1, 1].
pub fn gegenbauer_at_one(n: u32, lam: f64) -> Result<f64> {
    let n = f64::from(n);
    Ok((log_gamma(n + 2.0 * lam)? - log_gamma(n + 1.0)? - log_gamma(2.0 * lam)?).exp())
}

/// ln Γ(x) for x > 0.
///
/// Backed by `statrs` (Lanczos approximation, about 1e-15 relative away
/// from the zeros at 1 and 2).
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::invalid("x", format!("log-gamma needs x > 0, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// `A_n = Γ(λ)²·2^{2λ−1}·n!(n+λ) / (π Γ(n+2λ))`, evaluated in log space.
pub fn norm_const_a(n: u32, lam: f64) -> Result<f64> {
    if !(lam.is_finite() && lam > 0.0) {
        return Err(Error::invalid("lam", format!("must be positive, got {lam}")));
    }
    let nf = f64::from(n);
    let ln_a = 2.0 * log_gamma(lam)? + (2.0 * lam - 1.0) * LN_2 + log_gamma(nf + 1.0)? + (nf + lam).ln()
        - PI.ln()
        - log_gamma(nf + 2.0 * lam)?;
    Ok(ln_a.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Explicit polynomial coefficients of C_n^λ:
    /// Σ_k (−1)^k Γ(n−k+λ)/(Γ(λ) k! (n−2k)!) (2x)^{n−2k}.
    fn gegenbauer_explicit(n: u32, lam: f64, x: f64) -> f64 {
        let mut sum = 0.0;
        for k in 0..=n / 2 {
            // (λ)_{n−k} / (k!(n−2k)!)
            let rising: f64 = (0..n - k).map(|j| lam + f64::from(j)).product();
            let fact = |m: u32| (1..=m).map(f64::from).product::<f64>();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * rising / (fact(k) * fact(n - 2 * k)) * (2.0 * x).powi((n - 2 * k) as i32);
        }
        sum
    }

    #[test]
    fn recurrence_bases() {
        for lam in [0.3, 1.0, 2.7] {
            assert_eq!(gegenbauer(0, lam, 0.4).unwrap(), 1.0);
        }
        assert_relative_eq!(gegenbauer(1, 1.5, 0.2).unwrap(), 0.6, max_relative = 1e-15);
        assert!(gegenbauer(2, 1.0, 0.5).unwrap().abs() < 1e-15);
    }

    #[test]
    fn chebyshev_second_kind_identity() {
        for theta in [0.3_f64, 1.0, 2.5] {
            let v = gegenbauer(3, 1.0, theta.cos()).unwrap();
            assert_relative_eq!(v * theta.sin(), (4.0 * theta).sin(), epsilon = 1e-12);
        }
    }

    #[test]
    fn domain_checks() {
        assert!(gegenbauer(2, 0.0, 0.1).is_err());
        assert!(gegenbauer(2, -1.0, 0.1).is_err());
        assert!(gegenbauer(2, 1.0, 1.0 + 1e-9).is_err());
        assert_eq!(
            gegenbauer(2, 1.0, 1.0 + 1e-13).unwrap(),
            gegenbauer(2, 1.0, 1.0).unwrap()
        );
    }

    #[test]
    fn recurrence_matches_explicit_polynomials() {
        for lam in [0.5, 1.0, 1.5, 3.372_281_323_269_014_5] {
            for n in 0..=5 {
                for i in 0..20 {
                    let x = -1.0 + 2.0 * (f64::from(i) + 0.5) / 20.0;
                    let a = gegenbauer(n, lam, x).unwrap();
                    let b = gegenbauer_explicit(n, lam, x);
                    assert!(
                        (a - b).abs() <= 1e-12 * b.abs().max(1.0),
                        "n={n} lam={lam} x={x}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn recurrence_stability() {
        // Forward recurrence against the explicit sum at moderate degree and large index,
        // and the value at x = 1 against the Gamma-function closed form.
        for lam in [1.0, 4.0, 10.0] {
            for n in [10, 25, 50] {
                let top = gegenbauer(n, lam, 1.0).unwrap();
                assert_relative_eq!(top, gegenbauer_at_one(n, lam).unwrap(), max_relative = 1e-11);
            }
            for x in [-0.9, -0.3, 0.2, 0.77] {
                let a = gegenbauer(12, lam, x).unwrap();
                let b = gegenbauer_explicit(12, lam, x);
                assert!((a - b).abs() <= 1e-10 * gegenbauer_at_one(12, lam).unwrap());
            }
        }
    }

    #[test]
    fn log_gamma_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert_relative_eq!(log_gamma(0.5).unwrap(), PI.sqrt().ln(), max_relative = 1e-13);
        assert_relative_eq!(log_gamma(0.5).unwrap(), 0.572_364_942_9, epsilon = 1e-10);
        assert_relative_eq!(log_gamma(6.0).unwrap(), 120f64.ln(), max_relative = 1e-13);
        assert_relative_eq!(log_gamma(6.0).unwrap(), 4.787_491_742_8, epsilon = 1e-10);
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-2.5).is_err());
    }

    #[test]
    fn norm_const_examples() {
        for n in 0..10 {
            assert_relative_eq!(norm_const_a(n, 1.0).unwrap(), 2.0 / PI, max_relative = 1e-13);
        }
        assert_relative_eq!(norm_const_a(0, 1.5).unwrap(), 0.75, max_relative = 1e-13);
        // No overflow at large degree.
        assert!(norm_const_a(400, 9.5).unwrap().is_finite());
    }

    proptest! {
        #[test]
        fn parity(n in 0u32..30, lam in 0.05f64..10.0, x in -1.0f64..1.0) {
            let a = gegenbauer(n, lam, -x).unwrap();
            let b = gegenbauer(n, lam, x).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert_eq!(a, sign * b);
        }

        #[test]
        fn bounded_by_value_at_one(n in 0u32..30, lam in 0.05f64..8.0, x in -1.0f64..1.0) {
            let bound = gegenbauer_at_one(n, lam).unwrap();
            prop_assert!(gegenbauer(n, lam, x).unwrap().abs() <= bound * (1.0 + 1e-10));
        }
    }
}
