//! Symmetric tridiagonal eigensolver: Sturm-sequence bisection for eigenvalues,
//! inverse iteration for eigenvectors.
//!
//! Bisection is slower than implicit-shift QL but gives each requested
//! eigenvalue to full working precision independently, in O(n) per step, and
//! never needs the whole spectrum.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::invalid("diag", "empty matrix"));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::invalid(
                "off",
                format!("expected {} off-diagonal entries, got {}", diag.len() - 1, off.len()),
            ));
        }
        if diag.iter().chain(&off).any(|v| !v.is_finite()) {
            return Err(Error::invalid("diag", "non-finite matrix entry"));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            if q == 0.0 {
                q = tiny;
            }
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k` smallest eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        if k > self.dim() {
            return Err(Error::invalid("k", format!("matrix has only {} eigenvalues", self.dim())));
        }
        let (lo, hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        (0..k)
            .map(|i| {
                let (mut a, mut b) = (lo - scale * 1e-12, hi + scale * 1e-12);
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if mid <= a || mid >= b {
                        break;
                    }
                    if self.count_below(mid) > i {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                let v = 0.5 * (a + b);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Eigensolver(format!("bisection diverged for eigenvalue {i}")))
                }
            })
            .collect()
    }

    /// Unit eigenvector for an (accurate) eigenvalue by inverse iteration.
    pub fn eigenvector(&self, eigenvalue: f64) -> Result<Vec<f64>> {
        let n = self.dim();
        let (lo, hi) = self.gershgorin();
        let norm = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        let pivot_floor = f64::EPSILON * norm;
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64).collect();
        for _ in 0..4 {
            v = self.shifted_solve(eigenvalue, &v, pivot_floor);
            let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(len.is_finite() && len > 0.0) {
                return Err(Error::Eigensolver("inverse iteration produced a degenerate vector".into()));
            }
            v.iter_mut().for_each(|x| *x /= len);
        }
        Ok(v)
    }

    /// Solve `(T − σI)x = b` by Gaussian elimination with partial pivoting
    /// (the banded LU keeps a second superdiagonal).
    fn shifted_solve(&self, sigma: f64, b: &[f64], pivot_floor: f64) -> Vec<f64> {
        let n = self.dim();
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - sigma).collect();
        let mut u1: Vec<f64> = self.off.clone();
        u1.push(0.0);
        let mut u2 = vec![0.0; n];
        let mut l = self.off.clone();
        let mut rhs = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if l[i].abs() > d[i].abs() {
                // swap rows i and i+1
                std::mem::swap(&mut d[i], &mut l[i]);
                let (a, c) = (u1[i], d[i + 1]);
                u1[i] = c;
                d[i + 1] = a;
                u2[i] = u1[i + 1];
                u1[i + 1] = 0.0;
                rhs.swap(i, i + 1);
                let (r0, r1) = (d[i], l[i]);
                // after swap: row i = (r0, u1[i], u2[i]), row i+1 = (r1, d[i+1], u1[i+1])
                let m = r1 / r0;
                d[i + 1] -= m * u1[i];
                u1[i + 1] -= m * u2[i];
                rhs[i + 1] -= m * rhs[i];
            } else {
                if d[i].abs() < pivot_floor {
                    d[i] = pivot_floor.copysign(d[i]);
                }
                let m = l[i] / d[i];
                d[i + 1] -= m * u1[i];
                rhs[i + 1] -= m * rhs[i];
            }
        }
        if d[n - 1].abs() < pivot_floor {
            d[n - 1] = if d[n - 1] == 0.0 { pivot_floor } else { pivot_floor.copysign(d[n - 1]) };
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = rhs[i];
            if i + 1 < n {
                s -= u1[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= u2[i] * x[i + 2];
            }
            x[i] = s / d[i];
        }
        x
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// `‖Tv − εv‖ / ‖v‖`.
    pub fn residual(&self, eigenvalue: f64, v: &[f64]) -> f64 {
        let tv = self.apply(v);
        let r: f64 = tv.iter().zip(v).map(|(a, b)| (a - eigenvalue * b).powi(2)).sum();
        let len: f64 = v.iter().map(|x| x * x).sum();
        (r / len).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn discrete_laplacian_spectrum() {
        // tridiag(-1, 2, -1) of size n has eigenvalues 2 − 2cos(kπ/(n+1)).
        let n = 50;
        let t = SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        let ev = t.lowest_eigenvalues(n).unwrap();
        for (k, e) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
            assert_relative_eq!(*e, exact, epsilon = 1e-14);
        }
    }

    #[test]
    fn one_by_one() {
        let t = SymTridiagonal::new(vec![3.5], vec![]).unwrap();
        assert_eq!(t.lowest_eigenvalues(1).unwrap(), vec![3.5]);
        let v = t.eigenvector(3.5).unwrap();
        assert_relative_eq!(v[0].abs(), 1.0);
    }

    #[test]
    fn shape_errors() {
        assert!(SymTridiagonal::new(vec![], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        let t = SymTridiagonal::new(vec![1.0, 2.0], vec![0.5]).unwrap();
        assert!(t.lowest_eigenvalues(3).is_err());
    }

    proptest! {
        #[test]
        fn eigenpairs_have_small_residual(
            diag in prop::collection::vec(-5.0f64..5.0, 2..40),
            seed in prop::collection::vec(-2.0f64..2.0, 40),
        ) {
            let n = diag.len();
            // Keep couplings away from zero so the spectrum is simple.
            let off: Vec<f64> = seed[..n - 1].iter().map(|x| if x.abs() < 0.05 { 0.05 } else { *x }).collect();
            let t = SymTridiagonal::new(diag.clone(), off).unwrap();
            let ev = t.lowest_eigenvalues(n).unwrap();
            let trace: f64 = diag.iter().sum();
            prop_assert!((ev.iter().sum::<f64>() - trace).abs() < 1e-10 * (1.0 + trace.abs()) * n as f64);
            for w in ev.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
            for &e in ev.iter().take(5) {
                let v = t.eigenvector(e).unwrap();
                prop_assert!(t.residual(e, &v) <= 1e-10);
            }
        }
    }
}
