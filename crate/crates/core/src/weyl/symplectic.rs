use std::ops::{Add, Neg};

use serde::Serialize;

use crate::error::{Error, Result};

/// Continuum phase-space label `v = (alpha, beta)` in `R^{2d}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhasePoint {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl PhasePoint {
    pub fn new(alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::DimensionMismatch {
                left: alpha.len(),
                right: beta.len(),
            });
        }
        if alpha.iter().chain(&beta).any(|x| !x.is_finite()) {
            return Err(Error::Precondition("phase point has a non-finite component".into()));
        }
        Ok(Self { alpha, beta })
    }

    /// One degree of freedom.
    pub fn planar(alpha: f64, beta: f64) -> Self {
        Self {
            alpha: vec![alpha],
            beta: vec![beta],
        }
    }

    pub fn dof(&self) -> usize {
        self.alpha.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.alpha.iter().chain(&self.beta).map(|x| x * x).sum()
    }
}

/// `sigma(v, w) = alpha . delta - gamma . beta` for `v = (alpha, beta)`, `w = (gamma, delta)`.
pub fn symplectic_form(v: &PhasePoint, w: &PhasePoint) -> Result<f64> {
    if v.dof() != w.dof() {
        return Err(Error::DimensionMismatch {
            left: v.dof(),
            right: w.dof(),
        });
    }
    Ok((0..v.dof())
        .map(|i| v.alpha[i] * w.beta[i] - w.alpha[i] * v.beta[i])
        .sum())
}

/// Label `(a, b)` in `Z_n^2`, kept in the canonical residues `(-n/2, n/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DiscreteLabel {
    pub a: i64,
    pub b: i64,
    pub modulus: usize,
}

fn canonical(x: i64, n: usize) -> i64 {
    let n = n as i64;
    let r = x.rem_euclid(n);
    if 2 * r > n {
        r - n
    } else {
        r
    }
}

impl DiscreteLabel {
    pub fn new(a: i64, b: i64, modulus: usize) -> Self {
        Self {
            a: canonical(a, modulus),
            b: canonical(b, modulus),
            modulus,
        }
    }

    /// All `n^2` labels.
    pub fn all(modulus: usize) -> Vec<Self> {
        let n = modulus as i64;
        (0..n)
            .flat_map(|a| (0..n).map(move |b| Self::new(a, b, modulus)))
            .collect()
    }

    /// `a b' - a' b`, as an integer (not reduced).
    pub fn sigma(self, other: Self) -> i64 {
        self.a * other.b - other.a * self.b
    }
}

impl Add for DiscreteLabel {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        Self::new(self.a + other.a, self.b + other.b, self.modulus)
    }
}

impl Neg for DiscreteLabel {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, self.modulus)
    }
}
