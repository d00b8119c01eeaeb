//! Midpoint Riemann sums of `integral f(v) W(v) dv` over a square `[-R, R]^2`,
//! and the Fock projection built from them.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::grid::GridRep;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::tolerance::ToleranceContext;

pub type Kernel = Arc<dyn Fn(f64, f64) -> C64 + Send + Sync>;

/// Boundary-to-peak ratio above which the kernel is not treated as integrable
/// over the plane at this cutoff.
pub const TAIL_RATIO_MAX: f64 = 1e-6;

/// Side of the initial square cells; the default base partition is
/// `ceil(2R / 8)` cells per axis.
pub const BASE_CELL_SIDE: f64 = 8.0;

#[derive(Clone)]
pub struct RiemannIntegralSpec {
    pub cutoff: f64,
    pub kernel: Kernel,
    /// Cells per axis `(alpha, beta)` at depth zero.
    pub base_cells: (usize, usize),
    pub depth: u32,
}

impl fmt::Debug for RiemannIntegralSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RiemannIntegralSpec")
            .field("cutoff", &self.cutoff)
            .field("base_cells", &self.base_cells)
            .field("depth", &self.depth)
            .finish()
    }
}

/// `e^{-|v|^2/4} / (2 pi)`.
pub fn fock_kernel() -> Kernel {
    Arc::new(|a: f64, b: f64| C64::new((-(a * a + b * b) / 4.0).exp() / (2.0 * PI), 0.0))
}

impl RiemannIntegralSpec {
    pub fn new(cutoff: f64, kernel: Kernel, depth: u32) -> Self {
        let base = (2.0 * cutoff / BASE_CELL_SIDE).ceil().max(1.0) as usize;
        Self {
            cutoff,
            kernel,
            base_cells: (base, base),
            depth,
        }
    }

    pub fn with_base_cells(mut self, alpha: usize, beta: usize) -> Self {
        self.base_cells = (alpha.max(1), beta.max(1));
        self
    }

    pub fn at_depth(&self, depth: u32) -> Self {
        Self { depth, ..self.clone() }
    }

    pub fn cells(&self) -> (usize, usize) {
        let f = 1usize << self.depth;
        (self.base_cells.0 * f, self.base_cells.1 * f)
    }

    /// Cell sides `(h_alpha, h_beta)`.
    pub fn cell_sides(&self) -> (f64, f64) {
        let (na, nb) = self.cells();
        (2.0 * self.cutoff / na as f64, 2.0 * self.cutoff / nb as f64)
    }

    fn centers(count: usize, cutoff: f64) -> Vec<f64> {
        let h = 2.0 * cutoff / count as f64;
        (0..count).map(|i| -cutoff + h * (i as f64 + 0.5)).collect()
    }

    /// Largest kernel modulus on the boundary of the box divided by the largest
    /// over cell centers.
    pub fn tail_ratio(&self) -> f64 {
        let (na, nb) = self.cells();
        let ca = Self::centers(na, self.cutoff);
        let cb = Self::centers(nb, self.cutoff);
        let r = self.cutoff;
        let f = &self.kernel;
        let mut peak: f64 = 0.0;
        for &a in &ca {
            for &b in &cb {
                let v = f(a, b).norm();
                if !v.is_finite() {
                    return f64::INFINITY;
                }
                peak = peak.max(v);
            }
        }
        let mut edge: f64 = 0.0;
        for &a in &ca {
            edge = edge.max(f(a, -r).norm()).max(f(a, r).norm());
        }
        for &b in &cb {
            edge = edge.max(f(-r, b).norm()).max(f(r, b).norm());
        }
        if !edge.is_finite() {
            return f64::INFINITY;
        }
        if peak == 0.0 {
            0.0
        } else {
            edge / peak
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.cutoff.is_finite() && self.cutoff > 0.0) {
            return Err(Error::Precondition(format!(
                "cutoff must be positive, got {}",
                self.cutoff
            )));
        }
        let tail_ratio = self.tail_ratio();
        if tail_ratio > TAIL_RATIO_MAX {
            return Err(Error::NonIntegrableKernel { tail_ratio });
        }
        Ok(())
    }

    /// For each beta center, the diagonal `D_beta(x) = sum_alpha f e^{i alpha beta/2} e^{i alpha x} h_a h_b`.
    /// The Riemann sum is then `sum_beta diag(D_beta) V(beta)`.
    fn beta_slices(&self, grid: &GridRep) -> Vec<(f64, CVector)> {
        let (na, nb) = self.cells();
        let ca = Self::centers(na, self.cutoff);
        let cb = Self::centers(nb, self.cutoff);
        let (ha, hb) = self.cell_sides();
        let n = grid.len();
        let e = CMatrix::from_fn(n, na, |j, i| C64::from_polar(1.0, ca[i] * grid.x()[j]));
        cb.iter()
            .map(|&b| {
                let coeffs = CVector::from_iterator(
                    na,
                    ca.iter()
                        .map(|&a| (self.kernel)(a, b) * C64::from_polar(ha * hb, a * b / 2.0)),
                );
                (b, &e * coeffs)
            })
            .collect()
    }
}

/// Dense midpoint-rule operator.
pub fn riemann_operator_integral(grid: &GridRep, spec: &RiemannIntegralSpec) -> Result<CMatrix> {
    spec.validate()?;
    let n = grid.len();
    let mut out = CMatrix::zeros(n, n);
    // fixed summation order over beta keeps the result bit-stable
    for (b, d) in spec.beta_slices(grid) {
        let v = grid.v_matrix(b);
        for c in 0..n {
            for r in 0..n {
                out[(r, c)] += d[r] * v[(r, c)];
            }
        }
    }
    Ok(out)
}

/// The same sum applied to one vector, without forming the operator.
pub fn riemann_apply(grid: &GridRep, spec: &RiemannIntegralSpec, psi: &CVector) -> Result<CVector> {
    spec.validate()?;
    let mut out = CVector::zeros(grid.len());
    for (b, d) in spec.beta_slices(grid) {
        out += d.component_mul(&grid.apply_v(b, psi));
    }
    Ok(out)
}

/// `||A_{d+1} psi - A_d psi||` for successive depths.
#[derive(Debug, Clone, Serialize)]
pub struct RefinementTable {
    pub depths: Vec<u32>,
    /// `increments[i]` compares `depths[i]` with `depths[i] + 1`.
    pub increments: Vec<f64>,
}

impl RefinementTable {
    /// Increments from `from` onward never grow, except when both sit below
    /// `floor` (rounding noise once the sum has converged).
    pub fn is_monotone_from(&self, from: u32, floor: f64) -> bool {
        let tail: Vec<f64> = self
            .depths
            .iter()
            .zip(&self.increments)
            .filter(|(d, _)| **d >= from)
            .map(|(_, &x)| x)
            .collect();
        tail.windows(2).all(|w| w[1] <= w[0] || w[1] <= floor)
    }
}

pub fn refinement_table(
    grid: &GridRep,
    spec: &RiemannIntegralSpec,
    psi: &CVector,
    depths: std::ops::RangeInclusive<u32>,
) -> Result<RefinementTable> {
    let (lo, hi) = (*depths.start(), *depths.end());
    let mut prev = riemann_apply(grid, &spec.at_depth(lo), psi)?;
    let mut out = RefinementTable {
        depths: Vec::new(),
        increments: Vec::new(),
    };
    for d in lo..hi {
        let next = riemann_apply(grid, &spec.at_depth(d + 1), psi)?;
        out.depths.push(d);
        out.increments.push((&next - &prev).norm());
        prev = next;
    }
    Ok(out)
}

/// The averaged operator and the normalized image of a generic vector.
#[derive(Debug, Clone)]
pub struct FockProjection {
    pub p: CMatrix,
    pub omega: CVector,
    pub cell_side: f64,
}

/// Gaussian decay margin, in units of the Gaussian width, required between the
/// grid bandwidth and the first alias of the cell lattice.
const ALIAS_MARGIN: f64 = 3.5;

/// `P = (1/2 pi) integral e^{-|v|^2/4} W(v) dv` on `[-cutoff, cutoff]^2`.
///
/// The alpha and beta sums are periodic in `x` and `k` with period `2 pi / h`;
/// the partition must be fine enough that no alias reaches the grid's position
/// or frequency range, or `P` fails to be a projection on high-frequency vectors.
pub fn fock_projection(grid: &GridRep, cutoff: f64, depth: u32, ctx: &ToleranceContext) -> Result<FockProjection> {
    if cutoff < 8.0 {
        return Err(Error::Precondition(format!("cutoff must be >= 8, got {cutoff}")));
    }
    if grid.half_width() < 8.0 || grid.len() < 256 {
        return Err(Error::Precondition(format!(
            "grid must have L >= 8 and N >= 256, got L = {}, N = {}",
            grid.half_width(),
            grid.len()
        )));
    }
    let spec = RiemannIntegralSpec::new(cutoff, fock_kernel(), depth);
    let (h, _) = spec.cell_sides();
    let period = 2.0 * PI / h;
    let reach = grid.k_max().max(grid.half_width()) + cutoff / 2.0;
    if period - reach < ALIAS_MARGIN {
        return Err(Error::Precondition(format!(
            "partition too coarse: cell side {h} aliases at {period:.2}, grid reaches {reach:.2}"
        )));
    }
    let p = riemann_operator_integral(grid, &spec)?;
    let norm = linalg::spectral_norm(&p);
    if norm <= ctx.rank_tol {
        return Err(Error::ZeroOperator { norm });
    }
    // deterministic generic vector: the constant function overlaps the Gaussian
    let x = CVector::from_element(grid.len(), C64::new(1.0, 0.0));
    let px = &p * x;
    let mut omega = &px / C64::new(px.norm(), 0.0);
    let (peak, _) = omega
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, z)| (i, *z))
        .unwrap_or((0, C64::new(1.0, 0.0)));
    let z = omega[peak];
    omega *= z.conj() / C64::new(z.norm(), 0.0);
    Ok(FockProjection { p, omega, cell_side: h })
}

/// Operator-level checks on a Fock projection.
#[derive(Debug, Clone, Serialize)]
pub struct FockReport {
    pub idempotency: f64,
    pub hermiticity: f64,
    pub top_eigenvalue: f64,
    pub second_eigenvalue: f64,
    pub trace_re: f64,
    pub trace_im: f64,
    /// `||P Omega - Omega||` for the analytic ground state.
    pub fixes_ground_state: f64,
    /// `||omega - Omega||` after phase alignment.
    pub range_is_ground_state: f64,
    /// `max_z ||P W(z) P - e^{-|z|^2/4} P||` over the sampled labels.
    pub sandwich: f64,
}

impl FockProjection {
    pub fn sandwich_defect(&self, grid: &GridRep, alpha: f64, beta: f64) -> f64 {
        let w = grid.w_matrix(alpha, beta);
        let lhs = &self.p * w * &self.p;
        let rhs = &self.p * C64::new((-(alpha * alpha + beta * beta) / 4.0).exp(), 0.0);
        linalg::spectral_norm(&(lhs - rhs))
    }

    pub fn report(&self, grid: &GridRep, labels: &[(f64, f64)]) -> FockReport {
        let p = &self.p;
        let n = p.nrows();
        let (values, _) = linalg::hermitian_eigen(p);
        let tr = linalg::trace(p);
        let omega = grid.ground_state();
        FockReport {
            idempotency: linalg::spectral_norm(&(p * p - p)),
            hermiticity: linalg::spectral_norm(&(p - p.adjoint())),
            top_eigenvalue: values[n - 1],
            second_eigenvalue: values[n - 2],
            trace_re: tr.re,
            trace_im: tr.im,
            fixes_ground_state: (p * &omega - &omega).norm(),
            range_is_ground_state: {
                let ip = omega.dotc(&self.omega);
                let phase = if ip.norm() > 0.0 {
                    ip / C64::new(ip.norm(), 0.0)
                } else {
                    C64::new(1.0, 0.0)
                };
                (&self.omega - omega * phase).norm()
            },
            sandwich: labels
                .iter()
                .map(|&(a, b)| self.sandwich_defect(grid, a, b))
                .fold(0.0, f64::max),
        }
    }
}
