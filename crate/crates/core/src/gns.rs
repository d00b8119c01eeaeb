//! The GNS construction for a state on a unital *-subalgebra of `M_n`.
//!
//! The quotient by the left kernel is orthonormalized by whitening the Gram
//! matrix `G_ij = rho(B_i* B_j)`; the representation is then read off from
//! `rep(A)_kl = rho(Q_k* A Q_l)` for the whitened representatives `Q_k`.

use serde::Serialize;

use crate::algebra::{commutant_of, contains, op_norm, AlgebraElement, SubalgebraBasis};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::states::DensityFunctional;
use crate::tolerance::ToleranceContext;

/// A representation of a subalgebra, given by the images of its basis, with a
/// distinguished vector.
#[derive(Debug, Clone)]
pub struct CyclicRepresentation {
    /// `rep(B_i)` for the algebra basis `B_i`, in basis order.
    pub rep_basis: Vec<CMatrix>,
    pub cyclic_vector: CVector,
}

impl CyclicRepresentation {
    /// The defining representation on `C^n` with the given vector.
    pub fn defining(algebra: &SubalgebraBasis, vector: CVector) -> Self {
        Self {
            rep_basis: algebra.basis().iter().map(|b| b.matrix().clone()).collect(),
            cyclic_vector: vector,
        }
    }

    pub fn space_dim(&self) -> usize {
        self.cyclic_vector.len()
    }

    /// `rep(A)` through the basis expansion of `A`.
    pub fn apply(&self, algebra: &SubalgebraBasis, a: &AlgebraElement) -> CMatrix {
        let h = self.space_dim();
        let mut out = CMatrix::zeros(h, h);
        for (r, c) in self.rep_basis.iter().zip(algebra.coordinates(a)) {
            out += r * c;
        }
        out
    }

    /// `W rep(.) W*` with cyclic vector `W x`.
    pub fn conjugated(&self, w: &CMatrix) -> Self {
        Self {
            rep_basis: self.rep_basis.iter().map(|r| w * r * w.adjoint()).collect(),
            cyclic_vector: w * &self.cyclic_vector,
        }
    }

    /// `<x, rep(B_i) x>` for each basis element.
    pub fn expectations(&self) -> Vec<C64> {
        let x = &self.cyclic_vector;
        self.rep_basis.iter().map(|r| x.dotc(&(r * x))).collect()
    }
}

#[derive(Debug, Clone)]
pub struct GnsResult {
    pub hilbert_dim: usize,
    pub kernel_dim: usize,
    /// Representatives whose cosets are orthonormal for `<A, B> = rho(A* B)`.
    pub quotient_basis: Vec<AlgebraElement>,
    /// Basis of the left kernel `{A : rho(A* A) = 0}`.
    pub kernel: Vec<AlgebraElement>,
    pub representation: CyclicRepresentation,
    density: CMatrix,
}

impl GnsResult {
    pub fn cyclic_vector(&self) -> &CVector {
        &self.representation.cyclic_vector
    }

    pub fn rep(&self, algebra: &SubalgebraBasis, a: &AlgebraElement) -> CMatrix {
        self.representation.apply(algebra, a)
    }

    /// `rho(R_k* A R_l)` for arbitrary coset representatives `R_k`; for
    /// representatives of the same cosets this reproduces `rep(A)`.
    pub fn matrix_elements_with(&self, a: &AlgebraElement, representatives: &[AlgebraElement]) -> CMatrix {
        let h = representatives.len();
        CMatrix::from_fn(h, h, |k, l| {
            (&self.density * representatives[k].matrix().adjoint() * a.matrix() * representatives[l].matrix()).trace()
        })
    }
}

fn require_state(rho: &DensityFunctional, ctx: &ToleranceContext) -> Result<()> {
    if rho.is_state(ctx) {
        Ok(())
    } else {
        Err(Error::NotAState(format!(
            "trace {:.6e}, smallest eigenvalue {:.3e}",
            linalg::trace(rho.density()).re,
            rho.min_eigenvalue()
        )))
    }
}

fn gram(algebra: &SubalgebraBasis, rho: &DensityFunctional) -> CMatrix {
    let b = algebra.basis();
    let m = b.len();
    let mut g = CMatrix::zeros(m, m);
    for i in 0..m {
        let left = rho.density() * b[i].matrix().adjoint();
        for j in i..m {
            let v = (&left * b[j].matrix()).trace();
            g[(i, j)] = v;
            g[(j, i)] = v.conj();
        }
    }
    g
}

struct GramSplit {
    values: Vec<f64>,
    vectors: CMatrix,
    cutoff: f64,
}

fn split_gram(algebra: &SubalgebraBasis, rho: &DensityFunctional, ctx: &ToleranceContext) -> Result<GramSplit> {
    let (values, vectors) = linalg::hermitian_eigen(&gram(algebra, rho));
    let lowest = values.first().copied().unwrap_or(0.0);
    if lowest < -ctx.spec_tol {
        return Err(Error::FunctionalNotPositive { eigenvalue: lowest });
    }
    let top = values.last().copied().unwrap_or(0.0);
    Ok(GramSplit {
        values,
        vectors,
        cutoff: ctx.rank_tol * top.max(1.0),
    })
}

fn combination(algebra: &SubalgebraBasis, coeffs: impl Iterator<Item = C64>) -> AlgebraElement {
    let c: Vec<C64> = coeffs.collect();
    algebra.combine(&c)
}

/// Basis of `{A in algebra : rho(A* A) = 0}`, the null space of the Gram matrix.
pub fn left_kernel(
    algebra: &SubalgebraBasis,
    rho: &DensityFunctional,
    ctx: &ToleranceContext,
) -> Result<Vec<AlgebraElement>> {
    require_state(rho, ctx)?;
    let g = split_gram(algebra, rho, ctx)?;
    Ok((0..g.values.len())
        .filter(|&k| g.values[k] <= g.cutoff)
        .map(|k| combination(algebra, g.vectors.column(k).iter().copied()))
        .collect())
}

pub fn gns_construct(algebra: &SubalgebraBasis, rho: &DensityFunctional, ctx: &ToleranceContext) -> Result<GnsResult> {
    require_state(rho, ctx)?;
    if rho.dim() != algebra.ambient_dim() {
        return Err(Error::DimensionMismatch {
            left: algebra.ambient_dim(),
            right: rho.dim(),
        });
    }
    let n = algebra.ambient_dim();
    if !contains(algebra, &AlgebraElement::unit(n), ctx) {
        return Err(Error::Precondition("identity is not in the algebra".into()));
    }
    let g = split_gram(algebra, rho, ctx)?;
    let mut quotient_basis = Vec::new();
    let mut kernel = Vec::new();
    for k in 0..g.values.len() {
        let col = g.vectors.column(k);
        if g.values[k] <= g.cutoff {
            kernel.push(combination(algebra, col.iter().copied()));
        } else {
            let s = C64::new(g.values[k].sqrt().recip(), 0.0);
            quotient_basis.push(combination(algebra, col.iter().map(|&z| z * s)));
        }
    }
    let h = quotient_basis.len();
    let d = rho.density();
    // rho(Q_k* .) as a matrix, reused for every basis element
    let left: Vec<CMatrix> = quotient_basis.iter().map(|q| d * q.matrix().adjoint()).collect();
    let rep_basis = algebra
        .basis()
        .iter()
        .map(|b| {
            let bq: Vec<CMatrix> = quotient_basis.iter().map(|q| b.matrix() * q.matrix()).collect();
            CMatrix::from_fn(h, h, |k, l| (&left[k] * &bq[l]).trace())
        })
        .collect();
    let cyclic_vector = CVector::from_iterator(h, left.iter().map(linalg::trace));
    Ok(GnsResult {
        hilbert_dim: h,
        kernel_dim: kernel.len(),
        quotient_basis,
        kernel,
        representation: CyclicRepresentation {
            rep_basis,
            cyclic_vector,
        },
        density: d.clone(),
    })
}

/// Defects measured by [`verify_gns`].
#[derive(Debug, Clone, Serialize)]
pub struct GnsVerification {
    pub hilbert_dim: usize,
    pub kernel_dim: usize,
    pub algebra_dim: usize,
    pub state_recovery: f64,
    pub unital: f64,
    pub cyclic_norm: f64,
    pub multiplicativity: f64,
    pub star: f64,
    pub cyclic_rank: usize,
    /// `max(||rep(B)|| - ||B||)`, positive only if contractivity fails.
    pub contractivity_excess: f64,
    /// `max | ||rep(B)|| - ||B|| |`, checked only for faithful states.
    pub isometry: Option<f64>,
}

impl GnsVerification {
    /// Names of the checks that exceed their tolerance.
    pub fn failures(&self, ctx: &ToleranceContext) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut check = |ok: bool, name| {
            if !ok {
                out.push(name)
            }
        };
        check(self.state_recovery <= ctx.eq_tol, "state recovery");
        check(self.unital <= ctx.eq_tol, "unital");
        check(self.cyclic_norm <= ctx.eq_tol, "cyclic vector norm");
        check(self.multiplicativity <= ctx.eq_tol, "multiplicativity");
        check(self.star <= ctx.eq_tol, "star preservation");
        check(self.cyclic_rank == self.hilbert_dim, "cyclicity");
        check(self.contractivity_excess <= ctx.eq_tol, "contractivity");
        check(self.hilbert_dim + self.kernel_dim == self.algebra_dim, "dimension law");
        if let Some(iso) = self.isometry {
            check(iso <= ctx.rank_tol, "faithful isometry");
        }
        out
    }

    pub fn passed(&self, ctx: &ToleranceContext) -> bool {
        self.failures(ctx).is_empty()
    }
}

/// Checks a GNS triple against its state using only the stored basis images,
/// so a corrupted representation is caught.
pub fn verify_gns(
    result: &GnsResult,
    algebra: &SubalgebraBasis,
    rho: &DensityFunctional,
    ctx: &ToleranceContext,
) -> GnsVerification {
    let rep = &result.representation;
    let basis = algebra.basis();
    let x = &rep.cyclic_vector;
    let h = result.hilbert_dim;
    let n = algebra.ambient_dim();

    let mut state_recovery: f64 = 0.0;
    let mut multiplicativity: f64 = 0.0;
    let mut star: f64 = 0.0;
    let mut contractivity_excess = f64::NEG_INFINITY;
    let mut isometry: f64 = 0.0;
    let mut cyclic = CMatrix::zeros(h, basis.len());
    for (i, (b, rb)) in basis.iter().zip(&rep.rep_basis).enumerate() {
        let rx = rb * x;
        state_recovery = state_recovery.max((x.dotc(&rx) - rho.eval(b)).norm());
        cyclic.set_column(i, &rx);
        star = star.max(linalg::max_abs_diff(&rep.apply(algebra, &b.adjoint()), &rb.adjoint()));
        for (b2, rb2) in basis.iter().zip(&rep.rep_basis) {
            let lhs = rep.apply(algebra, &(b * b2));
            multiplicativity = multiplicativity.max(linalg::max_abs_diff(&lhs, &(rb * rb2)));
        }
        let (rn, bn) = (linalg::spectral_norm(rb), op_norm(b));
        contractivity_excess = contractivity_excess.max(rn - bn);
        isometry = isometry.max((rn - bn).abs());
    }
    let unital = linalg::max_abs_diff(&rep.apply(algebra, &AlgebraElement::unit(n)), &CMatrix::identity(h, h));
    GnsVerification {
        hilbert_dim: h,
        kernel_dim: result.kernel_dim,
        algebra_dim: basis.len(),
        state_recovery,
        unital,
        cyclic_norm: (x.norm() - 1.0).abs(),
        multiplicativity,
        star,
        cyclic_rank: if h == 0 { 0 } else { linalg::rank(&cyclic, ctx.rank_tol) },
        contractivity_excess,
        isometry: (result.kernel_dim == 0).then_some(isometry),
    }
}

/// A unitary `U` with `U rep1(A) U* = rep2(A)` and `U x1 = x2`.
#[derive(Debug, Clone)]
pub struct Intertwiner {
    pub matrix: CMatrix,
    /// `max_i ||U rep1(B_i) - rep2(B_i) U||`.
    pub defect: f64,
    pub unitarity_defect: f64,
    pub cyclic_defect: f64,
}

/// Builds the intertwiner on the dense sets `rep(B_i) x` and repairs it to a unitary.
pub fn equivalence_intertwiner(
    rep1: &CyclicRepresentation,
    rep2: &CyclicRepresentation,
    ctx: &ToleranceContext,
) -> Result<Intertwiner> {
    if rep1.rep_basis.len() != rep2.rep_basis.len() {
        return Err(Error::DimensionMismatch {
            left: rep1.rep_basis.len(),
            right: rep2.rep_basis.len(),
        });
    }
    for (index, (e1, e2)) in rep1.expectations().into_iter().zip(rep2.expectations()).enumerate() {
        let mismatch = (e1 - e2).norm();
        if mismatch > ctx.eq_tol {
            return Err(Error::StatesDiffer { index, mismatch });
        }
    }
    if rep1.space_dim() != rep2.space_dim() {
        return Err(Error::DimensionMismatch {
            left: rep1.space_dim(),
            right: rep2.space_dim(),
        });
    }
    let h = rep1.space_dim();
    let m = rep1.rep_basis.len();
    let mut x1 = CMatrix::zeros(h, m);
    let mut x2 = CMatrix::zeros(h, m);
    for i in 0..m {
        x1.set_column(i, &(&rep1.rep_basis[i] * &rep1.cyclic_vector));
        x2.set_column(i, &(&rep2.rep_basis[i] * &rep2.cyclic_vector));
    }
    // U = X2 X1^+ solves U X1 = X2 in the least-squares sense
    let pinv = linalg::pseudo_inverse(&x1, ctx.rank_tol * linalg::spectral_norm(&x1).max(1.0));
    let mut u = linalg::polar_unitary(&(&x2 * pinv));
    // fix the global phase so that <x2, U x1> is real and positive
    let overlap = rep2.cyclic_vector.dotc(&(&u * &rep1.cyclic_vector));
    if overlap.norm() > 0.0 {
        u *= overlap.conj() / C64::new(overlap.norm(), 0.0);
    }
    let defect = rep1
        .rep_basis
        .iter()
        .zip(&rep2.rep_basis)
        .map(|(r1, r2)| linalg::spectral_norm(&(&u * r1 - r2 * &u)))
        .fold(0.0, f64::max);
    let unitarity_defect = linalg::spectral_norm(&(u.adjoint() * &u - CMatrix::identity(h, h)));
    let cyclic_defect = (&u * &rep1.cyclic_vector - &rep2.cyclic_vector).norm();
    Ok(Intertwiner {
        matrix: u,
        defect,
        unitarity_defect,
        cyclic_defect,
    })
}

/// Dimension of the commutant of the represented algebra.
pub fn commutant_dim(rep: &CyclicRepresentation, ctx: &ToleranceContext) -> usize {
    commutant_of(&rep.rep_basis, ctx).len()
}

/// Irreducible iff only scalars commute with every `rep(B_i)`.
pub fn is_irreducible(rep: &CyclicRepresentation, ctx: &ToleranceContext) -> bool {
    commutant_dim(rep, ctx) == 1
}

/// The functional `A -> <y, rep(A) y>` as a density in the algebra.
pub fn vector_state(
    result: &GnsResult,
    y: &CVector,
    algebra: &SubalgebraBasis,
    ctx: &ToleranceContext,
) -> Result<DensityFunctional> {
    if (y.norm() - 1.0).abs() > ctx.eq_tol {
        return Err(Error::Precondition(format!("vector has norm {}", y.norm())));
    }
    if y.len() != result.hilbert_dim {
        return Err(Error::DimensionMismatch {
            left: result.hilbert_dim,
            right: y.len(),
        });
    }
    // with an orthonormal basis, D = sum_i omega(B_i) B_i* has trace(D B_j) = omega(B_j)
    let n = algebra.ambient_dim();
    let mut d = CMatrix::zeros(n, n);
    for (b, r) in algebra.basis().iter().zip(&result.representation.rep_basis) {
        let w = y.dotc(&(r * y));
        d += b.matrix().adjoint() * w;
    }
    let rho = DensityFunctional::new(d, ctx)?;
    require_state(&rho, ctx)?;
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;
    use crate::random::{random_density, random_unitary, rng};

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    fn e(n: usize, i: usize) -> CVector {
        let mut v = CVector::zeros(n);
        v[i] = c(1.0, 0.0);
        v
    }

    #[test]
    fn faithful_state_has_trivial_kernel() {
        let alg = SubalgebraBasis::full(3);
        let rho = DensityFunctional::new(random_density(3, 3, &mut rng(1)).into_matrix(), &ctx()).unwrap();
        let g = gns_construct(&alg, &rho, &ctx()).unwrap();
        assert_eq!((g.hilbert_dim, g.kernel_dim), (9, 0));
        let v = verify_gns(&g, &alg, &rho, &ctx());
        assert!(v.passed(&ctx()), "{v:?}");
        assert!(v.isometry.unwrap() < 1e-9);
    }

    #[test]
    fn pure_state_kernel_and_irreducibility() {
        let alg = SubalgebraBasis::full(2);
        let rho = DensityFunctional::vector_state(&e(2, 0));
        let k = left_kernel(&alg, &rho, &ctx()).unwrap();
        assert_eq!(k.len(), 2);
        for a in &k {
            assert!((a.matrix() * e(2, 0)).norm() < 1e-12);
        }
        let g = gns_construct(&alg, &rho, &ctx()).unwrap();
        assert_eq!(g.hilbert_dim, 2);
        assert!(verify_gns(&g, &alg, &rho, &ctx()).passed(&ctx()));
        assert!(is_irreducible(&g.representation, &ctx()));
        let def = CyclicRepresentation::defining(&alg, e(2, 0));
        let u = equivalence_intertwiner(&g.representation, &def, &ctx()).unwrap();
        assert!(u.defect < 1e-10 && u.cyclic_defect < 1e-10);
    }

    #[test]
    fn tracial_state_is_reducible() {
        let alg = SubalgebraBasis::full(2);
        let g = gns_construct(&alg, &DensityFunctional::maximally_mixed(2), &ctx()).unwrap();
        assert_eq!(g.hilbert_dim, 4);
        assert!(!is_irreducible(&g.representation, &ctx()));
        assert_eq!(commutant_dim(&g.representation, &ctx()), 4);
    }

    #[test]
    fn point_evaluation_on_diagonal_algebra() {
        let alg = SubalgebraBasis::diagonal(3);
        let rho = DensityFunctional::vector_state(&e(3, 1));
        let g = gns_construct(&alg, &rho, &ctx()).unwrap();
        assert_eq!((g.hilbert_dim, g.kernel_dim), (1, 2));
        let a = AlgebraElement::diag_real(&[4.0, 5.0, 6.0]);
        assert!((g.rep(&alg, &a)[(0, 0)] - c(5.0, 0.0)).norm() < 1e-12);
        assert!(is_irreducible(&g.representation, &ctx()));
    }

    #[test]
    fn corrupted_rep_fails_multiplicativity() {
        let alg = SubalgebraBasis::full(2);
        let rho = DensityFunctional::maximally_mixed(2);
        let mut g = gns_construct(&alg, &rho, &ctx()).unwrap();
        g.representation.rep_basis[1][(0, 0)] += c(1e-3, 0.0);
        let v = verify_gns(&g, &alg, &rho, &ctx());
        assert!(v.failures(&ctx()).contains(&"multiplicativity"), "{v:?}");
    }

    #[test]
    fn planted_unitary_is_recovered() {
        let alg = SubalgebraBasis::full(2);
        let g = gns_construct(&alg, &DensityFunctional::maximally_mixed(2), &ctx()).unwrap();
        let v = random_unitary(4, &mut rng(9)).into_matrix();
        let other = g.representation.conjugated(&v);
        let u = equivalence_intertwiner(&g.representation, &other, &ctx()).unwrap();
        assert!(u.defect < 1e-10);
        // equal up to a global phase
        let phase = linalg::frobenius_inner(&v, &u.matrix) / c(4.0, 0.0);
        assert!((phase.norm() - 1.0).abs() < 1e-10);
        assert!(linalg::max_abs_diff(&(v * phase), &u.matrix) < 1e-10);
    }

    #[test]
    fn different_states_are_rejected() {
        let alg = SubalgebraBasis::full(2);
        let g1 = gns_construct(&alg, &DensityFunctional::vector_state(&e(2, 0)), &ctx()).unwrap();
        let g2 = gns_construct(&alg, &DensityFunctional::vector_state(&e(2, 1)), &ctx()).unwrap();
        assert!(matches!(
            equivalence_intertwiner(&g1.representation, &g2.representation, &ctx()),
            Err(Error::StatesDiffer { .. })
        ));
    }

    #[test]
    fn vector_state_of_cyclic_vector_recovers_rho() {
        let alg = SubalgebraBasis::full(3);
        let rho = DensityFunctional::new(random_density(3, 2, &mut rng(4)).into_matrix(), &ctx()).unwrap();
        let g = gns_construct(&alg, &rho, &ctx()).unwrap();
        let back = vector_state(&g, g.cyclic_vector(), &alg, &ctx()).unwrap();
        assert!(linalg::max_abs_diff(back.density(), rho.density()) < 1e-10);
    }
}
