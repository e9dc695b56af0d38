//! Verification records shared by the oracles and the command-line suite.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Value printed in the source derivation.
    Paper,
    /// Closed form derived independently of the implementation path.
    DerivedAnalytic,
    /// Independent numerical route (quadrature, diagonalization, differencing).
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded finding that never fails a run.
    Informational,
}

/// One named check: a computed value against a reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub computed: f64,
    pub reference: f64,
    pub reference_provenance: Provenance,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: Option<f64>,
    pub status: Status,
}

/// How `tolerance` is compared against the errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Absolute(f64),
    Relative(f64),
}

impl VerificationReport {
    fn errors(computed: f64, reference: f64) -> (f64, f64) {
        let abs_err = (computed - reference).abs();
        let rel_err = if reference != 0.0 {
            abs_err / reference.abs()
        } else {
            abs_err
        };
        (abs_err, rel_err)
    }

    pub fn check(
        check_name: impl Into<String>,
        computed: f64,
        reference: f64,
        reference_provenance: Provenance,
        tolerance: Tolerance,
    ) -> Self {
        let (abs_err, rel_err) = Self::errors(computed, reference);
        let (tol, err) = match tolerance {
            Tolerance::Absolute(t) => (t, abs_err),
            Tolerance::Relative(t) => (t, rel_err),
        };
        // NaN compares false, so a NaN computed value fails.
        let status = if err <= tol { Status::Pass } else { Status::Fail };
        Self {
            check_name: check_name.into(),
            computed,
            reference,
            reference_provenance,
            abs_err,
            rel_err,
            tolerance: Some(tol),
            status,
        }
    }

    pub fn informational(
        check_name: impl Into<String>,
        computed: f64,
        reference: f64,
        reference_provenance: Provenance,
    ) -> Self {
        let (abs_err, rel_err) = Self::errors(computed, reference);
        Self {
            check_name: check_name.into(),
            computed,
            reference,
            reference_provenance,
            abs_err,
            rel_err,
            tolerance: None,
            status: Status::Informational,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_fails() {
        let r = VerificationReport::check("x", f64::NAN, 1.0, Provenance::Oracle, Tolerance::Absolute(1.0));
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn json_field_names() {
        let r = VerificationReport::check("a", 1.0, 1.0, Provenance::DerivedAnalytic, Tolerance::Relative(1e-9));
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in [
            "check_name",
            "computed",
            "reference",
            "reference_provenance",
            "abs_err",
            "rel_err",
            "tolerance",
            "status",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["reference_provenance"], "derived-analytic");
        assert_eq!(v["status"], "pass");
    }
}
