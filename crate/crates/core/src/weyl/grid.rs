//! Schrodinger representation on a periodic grid `x_j = -L + j dx`, `j < N`.
//!
//! Translations act in Fourier space, so `V(beta)` is exact on band-limited
//! periodic vectors; test states are kept away from the boundary.

use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use super::symplectic::PhasePoint;
use crate::error::{Error, Result};
use crate::io::GridConfig;
use crate::linalg::{CMatrix, CVector, C64};
use crate::tolerance::ToleranceContext;

#[derive(Clone)]
pub struct GridRep {
    n: usize,
    l: f64,
    dx: f64,
    x: Vec<f64>,
    k: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for GridRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridRep")
            .field("n", &self.n)
            .field("l", &self.l)
            .finish()
    }
}

impl GridRep {
    pub fn new(n: usize, l: f64) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::Precondition(format!(
                "grid size must be a power of two >= 2, got {n}"
            )));
        }
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::Precondition(format!(
                "grid half-width must be positive, got {l}"
            )));
        }
        let dx = 2.0 * l / n as f64;
        let x = (0..n).map(|j| -l + j as f64 * dx).collect();
        // fftfreq ordering: 0, 1, ..., N/2 - 1, -N/2, ..., -1
        let k = (0..n)
            .map(|j| {
                let m = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
                2.0 * std::f64::consts::PI * m / (n as f64 * dx)
            })
            .collect();
        let mut planner = FftPlanner::new();
        Ok(Self {
            n,
            l,
            dx,
            x,
            k,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    pub fn from_config(c: &GridConfig) -> Result<Self> {
        Self::new(c.n, c.l)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn half_width(&self) -> f64 {
        self.l
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn k(&self) -> &[f64] {
        &self.k
    }

    /// Largest representable frequency `pi / dx`.
    pub fn k_max(&self) -> f64 {
        std::f64::consts::PI / self.dx
    }

    /// `psi -> F^-1 diag(m(k)) F psi`.
    fn fourier_multiply(&self, psi: &CVector, m: impl Fn(f64) -> C64) -> CVector {
        let mut buf: Vec<C64> = psi.iter().copied().collect();
        self.forward.process(&mut buf);
        for (b, &k) in buf.iter_mut().zip(&self.k) {
            *b *= m(k);
        }
        self.inverse.process(&mut buf);
        let s = 1.0 / self.n as f64;
        CVector::from_iterator(self.n, buf.into_iter().map(|z| z * s))
    }

    /// First column of the circulant matrix of a Fourier multiplier.
    fn circulant(&self, m: impl Fn(f64) -> C64) -> CMatrix {
        let mut e0 = CVector::zeros(self.n);
        e0[0] = C64::new(1.0, 0.0);
        let c = self.fourier_multiply(&e0, m);
        let n = self.n;
        CMatrix::from_fn(n, n, |j, m| c[(j + n - m) % n])
    }

    /// `(U(alpha) psi)(x) = e^{i alpha x} psi(x)`.
    pub fn apply_u(&self, alpha: f64, psi: &CVector) -> CVector {
        CVector::from_iterator(
            self.n,
            psi.iter()
                .zip(&self.x)
                .map(|(p, &x)| p * C64::from_polar(1.0, alpha * x)),
        )
    }

    /// `(V(beta) psi)(x) = psi(x + beta)`.
    pub fn apply_v(&self, beta: f64, psi: &CVector) -> CVector {
        self.fourier_multiply(psi, |k| C64::from_polar(1.0, beta * k))
    }

    /// `W(v) = e^{i alpha beta / 2} U(alpha) V(beta)`.
    pub fn apply_w(&self, alpha: f64, beta: f64, psi: &CVector) -> CVector {
        self.apply_u(alpha, &self.apply_v(beta, psi)) * C64::from_polar(1.0, alpha * beta / 2.0)
    }

    pub fn apply_q(&self, psi: &CVector) -> CVector {
        CVector::from_iterator(self.n, psi.iter().zip(&self.x).map(|(p, &x)| p * x))
    }

    /// `p = -i d/dx`, diagonal in Fourier space.
    pub fn apply_p(&self, psi: &CVector) -> CVector {
        self.fourier_multiply(psi, |k| C64::new(k, 0.0))
    }

    pub fn u_matrix(&self, alpha: f64) -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_iterator(
            self.n,
            self.x.iter().map(|&x| C64::from_polar(1.0, alpha * x)),
        ))
    }

    pub fn v_matrix(&self, beta: f64) -> CMatrix {
        self.circulant(|k| C64::from_polar(1.0, beta * k))
    }

    pub fn w_matrix(&self, alpha: f64, beta: f64) -> CMatrix {
        let v = self.v_matrix(beta);
        let phase = C64::from_polar(1.0, alpha * beta / 2.0);
        CMatrix::from_fn(self.n, self.n, |r, c| {
            C64::from_polar(1.0, alpha * self.x[r]) * v[(r, c)] * phase
        })
    }

    pub fn q_matrix(&self) -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_iterator(
            self.n,
            self.x.iter().map(|&x| C64::new(x, 0.0)),
        ))
    }

    pub fn p_matrix(&self) -> CMatrix {
        self.circulant(|k| C64::new(k, 0.0))
    }

    /// Samples `f` on the grid and normalizes in `l^2`; the weights `|psi_j|^2`
    /// then approximate `|f(x_j)|^2 dx / ||f||^2`.
    pub fn sample(&self, f: impl Fn(f64) -> C64) -> CVector {
        let v = CVector::from_iterator(self.n, self.x.iter().map(|&x| f(x)));
        let norm = v.norm();
        v / C64::new(norm, 0.0)
    }

    /// Ground state `e^{-x^2/2}`.
    pub fn ground_state(&self) -> CVector {
        self.sample(|x| C64::new((-x * x / 2.0).exp(), 0.0))
    }

    /// Hermite functions `h_0 .. h_{count-1}`, from the stable three-term recurrence.
    pub fn hermite_functions(&self, count: usize) -> Vec<CVector> {
        let mut out: Vec<Vec<f64>> = Vec::with_capacity(count);
        let pi_quarter = std::f64::consts::PI.powf(-0.25);
        for m in 0..count {
            let col: Vec<f64> = self
                .x
                .iter()
                .enumerate()
                .map(|(j, &x)| match m {
                    0 => pi_quarter * (-x * x / 2.0).exp(),
                    1 => std::f64::consts::SQRT_2 * x * out[0][j],
                    _ => {
                        let mf = m as f64;
                        (2.0 / mf).sqrt() * x * out[m - 1][j] - ((mf - 1.0) / mf).sqrt() * out[m - 2][j]
                    }
                })
                .collect();
            out.push(col);
        }
        let s = self.dx.sqrt();
        out.into_iter()
            .map(|col| CVector::from_iterator(self.n, col.into_iter().map(|v| C64::new(v * s, 0.0))))
            .collect()
    }

    pub fn hermite(&self, m: usize) -> CVector {
        self.hermite_functions(m + 1).pop().expect("at least one function")
    }

    /// Mass of `psi` on `|x| >= 0.9 L`.
    pub fn boundary_mass(&self, psi: &CVector) -> f64 {
        psi.iter()
            .zip(&self.x)
            .filter(|(_, &x)| x.abs() >= 0.9 * self.l)
            .map(|(p, _)| p.norm_sqr())
            .sum()
    }
}

/// `U(alpha)` and `V(beta)` as dense matrices.
pub fn schrodinger_ops(grid: &GridRep, alpha: f64, beta: f64) -> (CMatrix, CMatrix) {
    (grid.u_matrix(alpha), grid.v_matrix(beta))
}

/// Position and momentum as dense matrices.
pub fn position_momentum(grid: &GridRep) -> (CMatrix, CMatrix) {
    (grid.q_matrix(), grid.p_matrix())
}

const NORM_TOL: f64 = 1e-8;

fn require_unit(psi: &CVector, grid: &GridRep) -> Result<()> {
    if psi.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            left: grid.len(),
            right: psi.len(),
        });
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Precondition(format!("state has norm {norm}")));
    }
    Ok(())
}

/// `||(qp - pq) psi - i psi||`.
pub fn ccr_defect(grid: &GridRep, psi: &CVector) -> Result<f64> {
    require_unit(psi, grid)?;
    let qp = grid.apply_q(&grid.apply_p(psi));
    let pq = grid.apply_p(&grid.apply_q(psi));
    Ok((qp - pq - psi * C64::new(0.0, 1.0)).norm())
}

/// `<Omega, W(v) Omega>` for the grid ground state.
pub fn fock_expectation(grid: &GridRep, v: &PhasePoint) -> Result<C64> {
    if v.dof() != 1 {
        return Err(Error::DimensionMismatch {
            left: 1,
            right: v.dof(),
        });
    }
    let omega = grid.ground_state();
    Ok(omega.dotc(&grid.apply_w(v.alpha[0], v.beta[0], &omega)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Uncertainty {
    pub dq: f64,
    pub dp: f64,
}

impl Uncertainty {
    pub fn product(&self) -> f64 {
        self.dq * self.dp
    }
}

/// Position and momentum spreads of a well-localized unit vector.
pub fn uncertainty_check(grid: &GridRep, psi: &CVector, ctx: &ToleranceContext) -> Result<Uncertainty> {
    require_unit(psi, grid)?;
    let mass = grid.boundary_mass(psi);
    if mass > ctx.eq_tol {
        return Err(Error::Precondition(format!("state carries boundary mass {mass:.3e}")));
    }
    let q = grid.apply_q(psi);
    let p = grid.apply_p(psi);
    let mean_q = psi.dotc(&q).re;
    let mean_p = psi.dotc(&p).re;
    let var_q = q.norm_squared() - mean_q * mean_q;
    let var_p = p.norm_squared() - mean_p * mean_p;
    Ok(Uncertainty {
        dq: var_q.max(0.0).sqrt(),
        dp: var_p.max(0.0).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BornReport {
    /// `<psi, diag(F) psi>`.
    pub expectation: f64,
    /// `sum_j w_j F(x_j)` with `w_j = |psi_j|^2`.
    pub weighted_sum: f64,
    pub total_weight: f64,
    pub min_weight: f64,
}

impl BornReport {
    pub fn is_probability(&self, ctx: &ToleranceContext) -> bool {
        (self.total_weight - 1.0).abs() <= ctx.eq_tol && self.min_weight >= 0.0
    }
}

pub fn born_rule_check(grid: &GridRep, psi: &CVector, f: &[f64]) -> Result<BornReport> {
    require_unit(psi, grid)?;
    if f.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            left: grid.len(),
            right: f.len(),
        });
    }
    let fpsi = CVector::from_iterator(grid.len(), psi.iter().zip(f).map(|(p, &v)| p * v));
    let weights: Vec<f64> = psi.iter().map(|p| p.norm_sqr()).collect();
    Ok(BornReport {
        expectation: psi.dotc(&fpsi).re,
        weighted_sum: weights.iter().zip(f).map(|(w, v)| w * v).sum(),
        total_weight: weights.iter().sum(),
        min_weight: weights.iter().copied().fold(f64::INFINITY, f64::min),
    })
}
