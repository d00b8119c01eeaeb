use serde::Serialize;

use super::{op_norm, AlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{self, C64};
use crate::tolerance::ToleranceContext;

/// Eigenvalues with multiplicity and the largest modulus among them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<C64>,
    pub radius: f64,
}

impl SpectrumResult {
    fn from_values(eigenvalues: Vec<C64>) -> Self {
        let radius = eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Self { eigenvalues, radius }
    }

    /// Distance from `z` to the nearest eigenvalue.
    pub fn distance_to(&self, z: C64) -> f64 {
        self.eigenvalues
            .iter()
            .map(|l| (l - z).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_imaginary(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// All eigenvalues of `a`, with multiplicity.
pub fn spectrum(a: &AlgebraElement, _ctx: &ToleranceContext) -> Result<SpectrumResult> {
    let values = linalg::eigenvalues(a.matrix()).ok_or_else(|| {
        let s = linalg::singular_values(a.matrix());
        let smin = s.last().copied().unwrap_or(0.0);
        Error::EigenNotConverged {
            condition_estimate: if smin > 0.0 { s[0] / smin } else { f64::INFINITY },
        }
    })?;
    let result = SpectrumResult::from_values(values);
    debug_assert!(result.radius <= op_norm(a) * (1.0 + 1e-8) + 1e-12);
    Ok(result)
}

/// Greedy minimal-distance matching of two multisets; returns the largest matched
/// distance, or infinity when the sizes differ.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst = 0.0f64;
    let mut matched = 0;
    for (d, i, j) in pairs {
        if used_a[i] || used_b[j] {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        worst = worst.max(d);
        matched += 1;
        if matched == a.len() {
            break;
        }
    }
    worst
}

pub fn spectra_match(a: &[C64], b: &[C64], tol: f64) -> bool {
    multiset_distance(a, b) <= tol
}
