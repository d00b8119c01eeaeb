use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerances shared by every numerical comparison in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceContext {
    /// Entrywise / norm comparison of matrices and vectors.
    pub eq_tol: f64,
    /// Eigenvalue comparison.
    pub spec_tol: f64,
    /// Relative singular-value cutoff for rank and null-space decisions.
    pub rank_tol: f64,
}

impl Default for ToleranceContext {
    fn default() -> Self {
        Self {
            eq_tol: 1e-10,
            spec_tol: 1e-8,
            rank_tol: 1e-9,
        }
    }
}

impl ToleranceContext {
    pub fn new(eq_tol: f64, spec_tol: f64, rank_tol: f64) -> Result<Self> {
        for (name, v) in [("eq_tol", eq_tol), ("spec_tol", spec_tol), ("rank_tol", rank_tol)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Precondition(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(Self {
            eq_tol,
            spec_tol,
            rank_tol,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive() {
        assert!(ToleranceContext::new(0.0, 1e-8, 1e-9).is_err());
        assert!(ToleranceContext::new(1e-10, f64::NAN, 1e-9).is_err());
        assert!(ToleranceContext::new(1e-10, 1e-8, -1.0).is_err());
        assert!(ToleranceContext::new(1e-10, 1e-8, 1e-9).is_ok());
    }

    #[test]
    fn default_is_tight() {
        let t = ToleranceContext::default();
        assert!(t.eq_tol <= 1e-6);
    }
}
