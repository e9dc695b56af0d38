//! One-dimensional Coulomb problem in quantum mechanics with a minimal length.
//!
//! The deformed algebra `[X, P] = iħ(1 + βP²)` is realized in momentum space
//! with `X = iħ(1 + βp²) d/dp` and the measure `dp / (1 + βp²)`. Under it the
//! attractive potential `-α/x` maps onto a symmetric Pöschl-Teller problem with
//! strength index `λ = ½(1 + √(1 + 32βm²α²/ħ²))`, which yields the closed-form
//! spectrum in [`model`] and the Gegenbauer eigenfunctions in [`states`].
//!
//! Every closed form is paired with an independent numerical route in
//! [`numerics`]: Gauss-Legendre quadrature over the compactified momentum
//! line, a finite-difference Pöschl-Teller diagonalization, and a grid
//! realization of the deformed position operator.

pub mod error;
pub mod model;
pub mod numerics;
pub mod report;
pub mod specfun;
pub mod states;

pub use error::{Error, Result};
pub use model::{BoundState, DerivedScales, ModelParams};
pub use num_complex::Complex64;
pub use report::{Provenance, Status, VerificationReport};
