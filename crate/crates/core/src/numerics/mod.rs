//! Shared numerical engines: quadrature over the deformed measures, the
//! symmetric-tridiagonal eigensolver behind the Pöschl-Teller oracle, and the
//! grid realization of the deformed position operator.

pub mod operator_grid;
pub mod pt_oracle;
pub mod quadrature;
pub mod tridiag;

pub use operator_grid::{commutator_residual, OperatorGrid};
pub use pt_oracle::{pt_fd_eigenvalues, pt_fd_eigenvalues_extrapolated, verify_spectrum_against_oracle, PtOracleSpec};
pub use quadrature::{integrate_deformed, integrate_interval, Mapping, Quadrature, QuadratureSpec, Weight};
pub use tridiag::SymTridiagonal;
