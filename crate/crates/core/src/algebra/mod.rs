//! Matrix *-algebra arithmetic: the finite-dimensional model of a C*-algebra.
//!
//! [`AlgebraElement`] wraps a dense square complex matrix. Norms, spectra,
//! inverses and the spectral-radius limit live here; generated subalgebras and
//! commutants live in [`subalgebra`].

mod spectrum;
pub mod subalgebra;

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64, ZERO};
use crate::tolerance::ToleranceContext;

pub use spectrum::{multiset_distance, spectra_match, spectrum, SpectrumResult};
pub use subalgebra::{commutant, commutant_of, contains, generated_subalgebra, SubalgebraBasis};

/// A square complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::MatrixFile", into = "crate::io::MatrixFile")]
pub struct AlgebraElement {
    m: CMatrix,
}

impl AlgebraElement {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NonSquare {
                rows: m.nrows(),
                row: 0,
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::Empty("matrix of dimension 0"));
        }
        for c in 0..m.ncols() {
            for r in 0..m.nrows() {
                let z = m[(r, c)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row: r, col: c });
                }
            }
        }
        Ok(Self { m })
    }

    /// Wraps a matrix the caller knows to be square and finite.
    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        Self { m }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquare {
                    rows: n,
                    row: i,
                    cols: row.len(),
                });
            }
        }
        Self::new(CMatrix::from_fn(n, n, |r, c| rows[r][c]))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn unit(n: usize) -> Self {
        Self::from_matrix_unchecked(CMatrix::identity(n, n))
    }

    pub fn zero(n: usize) -> Self {
        Self::from_matrix_unchecked(CMatrix::zeros(n, n))
    }

    pub fn diag(values: &[C64]) -> Self {
        let n = values.len();
        Self::from_matrix_unchecked(CMatrix::from_fn(n, n, |r, c| if r == c { values[r] } else { ZERO }))
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let v: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diag(&v)
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_matrix_unchecked(&self.m + &other.m))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_matrix_unchecked(&self.m - &other.m))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_matrix_unchecked(&self.m * &other.m))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_matrix_unchecked(self.m.map(|z| z * s))
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::from_matrix_unchecked(self.m.scale(s))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_matrix_unchecked(self.m.adjoint())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::unit(self.dim());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_matrix_unchecked(&self.m * &other.m - &other.m * &self.m))
    }

    pub fn trace(&self) -> C64 {
        linalg::trace(&self.m)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.norm()
    }

    /// `||A - A*||`.
    pub fn self_adjoint_defect(&self) -> f64 {
        op_norm_matrix(&(&self.m - self.m.adjoint()))
    }

    /// `||AA* - A*A||`.
    pub fn normality_defect(&self) -> f64 {
        let a_star = self.m.adjoint();
        op_norm_matrix(&(&self.m * &a_star - &a_star * &self.m))
    }

    pub fn is_self_adjoint(&self, ctx: &ToleranceContext) -> bool {
        self.self_adjoint_defect() <= ctx.eq_tol * op_norm(self).max(1.0)
    }

    pub fn is_normal(&self, ctx: &ToleranceContext) -> bool {
        let n = op_norm(self);
        self.normality_defect() <= ctx.eq_tol * (n * n).max(1.0)
    }

    pub fn is_unitary(&self, ctx: &ToleranceContext) -> bool {
        let id = CMatrix::identity(self.dim(), self.dim());
        linalg::max_abs_diff(&(self.m.adjoint() * &self.m), &id) <= ctx.eq_tol
            && linalg::max_abs_diff(&(&self.m * self.m.adjoint()), &id) <= ctx.eq_tol
    }

    /// Max entrywise distance to `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        linalg::max_abs_diff(&self.m, &other.m)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            /// Panics on dimension mismatch; use the `try_` methods for a `Result`.
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
                AlgebraElement::from_matrix_unchecked(&self.m $op &rhs.m)
            }
        }
        impl $tr<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale_real(-1.0)
    }
}

pub(crate) fn op_norm_matrix(m: &CMatrix) -> f64 {
    linalg::spectral_norm(m)
}

/// Operator norm: the largest singular value.
pub fn op_norm(a: &AlgebraElement) -> f64 {
    op_norm_matrix(&a.m)
}

/// Two-sided inverse via LU, refused when `sigma_min <= rank_tol * sigma_max`.
pub fn inverse(a: &AlgebraElement, ctx: &ToleranceContext) -> Result<AlgebraElement> {
    let s = linalg::singular_values(&a.m);
    let smax = s[0];
    let smin = *s.last().unwrap();
    if smin <= ctx.rank_tol * smax || smax == 0.0 {
        return Err(Error::NotInvertible {
            smallest_singular: smin,
            largest_singular: smax,
        });
    }
    let inv = a.m.clone().lu().try_inverse().ok_or(Error::NotInvertible {
        smallest_singular: smin,
        largest_singular: smax,
    })?;
    AlgebraElement::new(inv)
}

/// Inverse of `I - A` by the geometric series `sum A^k`, for `||A|| < 1`.
///
/// Stops when the increment norm drops to `eq_tol` or when the series terminates
/// exactly (nilpotent `A`).
pub fn neumann_inverse(a: &AlgebraElement, max_terms: usize, ctx: &ToleranceContext) -> Result<AlgebraElement> {
    let norm = op_norm(a);
    if norm >= 1.0 {
        return Err(Error::Precondition(format!(
            "Neumann series needs ||A|| < 1, got {norm}"
        )));
    }
    let n = a.dim();
    let mut sum = CMatrix::identity(n, n);
    let mut term = CMatrix::identity(n, n);
    let mut last = 1.0;
    for _ in 0..max_terms {
        term = &term * &a.m;
        let inc = op_norm_matrix(&term);
        sum += &term;
        last = inc;
        if inc <= ctx.eq_tol {
            return Ok(AlgebraElement::from_matrix_unchecked(sum));
        }
    }
    let id_minus = CMatrix::identity(n, n) - &a.m;
    let residual = op_norm_matrix(&(&sum * &id_minus - CMatrix::identity(n, n)));
    Err(Error::NotConverged {
        what: "Neumann series",
        iterations: max_terms,
        residual: residual.max(last),
    })
}

/// The successive values `||A^(2^k)||^(1/2^k)` for `k = 0..=squarings`.
///
/// Each squaring renormalizes the running power and accumulates the log of the
/// scale, so the values stay finite for any spectral radius.
pub fn spectral_radius_sequence(a: &AlgebraElement, squarings: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(squarings as usize + 1);
    let norm0 = op_norm(a);
    out.push(norm0);
    if norm0 == 0.0 {
        out.extend(std::iter::repeat_n(0.0, squarings as usize));
        return out;
    }
    let mut log_scale = norm0.ln();
    let mut b = a.m.scale(1.0 / norm0);
    let mut exponent = 1.0f64;
    for _ in 0..squarings {
        b = &b * &b;
        exponent *= 2.0;
        let s = op_norm_matrix(&b);
        if s == 0.0 {
            let remaining = squarings as usize + 1 - out.len();
            out.extend(std::iter::repeat_n(0.0, remaining));
            return out;
        }
        b.scale_mut(1.0 / s);
        log_scale = 2.0 * log_scale + s.ln();
        out.push((log_scale / exponent).exp());
    }
    out
}

/// `||A^(2^k)||^(1/2^k)` at `k = squarings`; converges monotonically down to the
/// spectral radius.
pub fn spectral_radius_limit(a: &AlgebraElement, squarings: u32) -> f64 {
    *spectral_radius_sequence(a, squarings).last().unwrap()
}

/// Real identity matrix with the given scalar, handy for `A - lambda I`.
pub fn scalar(n: usize, s: C64) -> AlgebraElement {
    AlgebraElement::from_matrix_unchecked(DMatrix::from_diagonal_element(n, n, s))
}

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    #[test]
    fn unit_is_neutral() {
        let a = AlgebraElement::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert_eq!(&AlgebraElement::unit(2) * &a, a);
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        let rows = vec![vec![ONE, ONE], vec![ONE]];
        assert!(matches!(AlgebraElement::from_rows(&rows), Err(Error::NonSquare { .. })));
        let m = CMatrix::from_element(2, 2, C64::new(f64::NAN, 0.0));
        assert!(matches!(AlgebraElement::new(m), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = AlgebraElement::unit(2);
        let b = AlgebraElement::unit(3);
        assert_eq!(a.try_mul(&b), Err(Error::DimensionMismatch { left: 2, right: 3 }));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn norms_of_diagonals() {
        assert!((op_norm(&AlgebraElement::unit(5)) - 1.0).abs() < 1e-15);
        let d = AlgebraElement::diag(&[c(3.0, 0.0), c(0.0, -4.0)]);
        assert!((op_norm(&d) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn inverse_of_diagonal() {
        let d = AlgebraElement::diag_real(&[2.0, 4.0]);
        let inv = inverse(&d, &ctx()).unwrap();
        assert!(inv.approx_eq(&AlgebraElement::diag_real(&[0.5, 0.25]), 1e-15));
        assert!(inverse(&AlgebraElement::unit(3), &ctx())
            .unwrap()
            .approx_eq(&AlgebraElement::unit(3), 0.0));
    }

    #[test]
    fn singular_is_rejected() {
        let s = AlgebraElement::diag_real(&[1.0, 0.0]);
        assert!(matches!(inverse(&s, &ctx()), Err(Error::NotInvertible { .. })));
        // relative threshold: tiny but well-conditioned is still invertible
        let tiny = AlgebraElement::diag_real(&[1e-12, 2e-12]);
        assert!(inverse(&tiny, &ctx()).is_ok());
    }

    #[test]
    fn neumann_at_zero_and_nilpotent() {
        let z = AlgebraElement::zero(3);
        assert_eq!(neumann_inverse(&z, 10, &ctx()).unwrap(), AlgebraElement::unit(3));

        let n = AlgebraElement::from_real_rows(&[&[0.0, 0.3, 0.2], &[0.0, 0.0, 0.4], &[0.0, 0.0, 0.0]]).unwrap();
        let got = neumann_inverse(&n, 10, &ctx()).unwrap();
        let want = &(&AlgebraElement::unit(3) + &n) + &(&n * &n);
        assert_eq!(got, want);
    }

    #[test]
    fn neumann_errors() {
        let big = AlgebraElement::diag_real(&[1.0, 0.5]);
        assert!(matches!(neumann_inverse(&big, 10, &ctx()), Err(Error::Precondition(_))));
        let slow = AlgebraElement::diag_real(&[0.99, 0.5]);
        match neumann_inverse(&slow, 5, &ctx()) {
            Err(Error::NotConverged { residual, .. }) => assert!(residual > 0.1),
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn radius_of_normal_is_exact() {
        let d = AlgebraElement::diag_real(&[2.0, 1.0]);
        assert!((spectral_radius_limit(&d, 10) - 2.0).abs() < 1e-9);
        let big = AlgebraElement::diag_real(&[1e3, -5.0]);
        let seq = spectral_radius_sequence(&big, 40);
        assert!(seq.iter().all(|x| x.is_finite()));
        assert!((seq[40] - 1e3).abs() < 1e-9 * 1e3);
    }

    #[test]
    fn radius_of_jordan_block() {
        let j = AlgebraElement::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let seq = spectral_radius_sequence(&j, 20);
        assert_eq!(seq[0], 1.0);
        for w in seq.windows(2) {
            assert!(w[1] <= w[0]);
        }
        assert!(seq[20] <= 1e-5);
    }
}
