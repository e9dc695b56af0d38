//! Wavefunction-level objects: maximally localized states, the Pöschl-Teller
//! and momentum-space eigenfunctions, and the Green-function sum.

pub mod eigen;
pub mod green;
pub mod ml;

pub use eigen::{
    eigenfunction_momentum, eigenfunction_norm, normalization_report, psi_beta_zero, pt_eigenfunction,
    BranchConvention, MomentumEigenfunction, NormMeasure, BETA_ZERO_HALF_LINE_NORM,
};
pub use green::{
    default_eta, green_function, green_residue_exact, green_residue_extrapolated, GreenSumResult, DEFAULT_N_MAX,
};
pub use ml::{
    completeness_probe, ml_kinetic_analytic, ml_kinetic_expectation, ml_kinetic_paper, ml_norm_sq, ml_norm_sq_analytic,
    ml_norm_sq_at, ml_overlap_closed, ml_overlap_paper, ml_overlap_quadrature, ml_position_moments, ml_value,
    ClosureWeight, CompletenessProbe, MlState, PositionMoments, XiGrid,
};
