//! Unital *-subalgebras of `M_n` spanned by Frobenius-orthonormal bases, and commutants.

use super::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::tolerance::ToleranceContext;

/// Orthonormal (under `trace(A* B)`) basis of a unital, star- and product-closed
/// subspace of `M_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubalgebraBasis {
    dim: usize,
    basis: Vec<AlgebraElement>,
}

impl SubalgebraBasis {
    /// Ambient matrix size `n`.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Number of basis elements (the dimension of the subalgebra as a vector space).
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    /// The full matrix algebra `M_n` with its matrix-unit basis.
    pub fn full(n: usize) -> Self {
        let mut basis = Vec::with_capacity(n * n);
        for c in 0..n {
            for r in 0..n {
                let mut m = CMatrix::zeros(n, n);
                m[(r, c)] = C64::new(1.0, 0.0);
                basis.push(AlgebraElement::from_matrix_unchecked(m));
            }
        }
        Self { dim: n, basis }
    }

    /// Diagonal matrices in `M_n`.
    pub fn diagonal(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| {
                let mut m = CMatrix::zeros(n, n);
                m[(i, i)] = C64::new(1.0, 0.0);
                AlgebraElement::from_matrix_unchecked(m)
            })
            .collect();
        Self { dim: n, basis }
    }

    /// Frobenius coordinates of `m` in this basis.
    pub fn coordinates(&self, m: &AlgebraElement) -> Vec<C64> {
        self.basis
            .iter()
            .map(|b| linalg::frobenius_inner(b.matrix(), m.matrix()))
            .collect()
    }

    /// Element with the given coordinates.
    pub fn combine(&self, coords: &[C64]) -> AlgebraElement {
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        for (b, &c) in self.basis.iter().zip(coords) {
            acc += b.matrix() * c;
        }
        AlgebraElement::from_matrix_unchecked(acc)
    }

    /// `||M - proj(M)||_F / ||M||_F` (zero for `M = 0`).
    pub fn relative_residual(&self, m: &AlgebraElement) -> f64 {
        let norm = m.frobenius_norm();
        if norm == 0.0 {
            return 0.0;
        }
        let proj = self.combine(&self.coordinates(m));
        (m.matrix() - proj.matrix()).norm() / norm
    }

    /// Largest closure residual over adjoints and pairwise products of basis elements.
    pub fn closure_defect(&self) -> f64 {
        let mut worst = self.relative_residual(&AlgebraElement::unit(self.dim));
        for a in &self.basis {
            worst = worst.max(self.relative_residual(&a.adjoint()));
            for b in &self.basis {
                worst = worst.max(self.relative_residual(&(a * b)));
            }
        }
        worst
    }

    /// Largest `||AB - BA||` over basis pairs, with the offending indices.
    pub fn commutativity_defect(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate().skip(i + 1) {
                let d = (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }
}

/// Incrementally built orthonormal family under the Frobenius pairing
/// (modified Gram-Schmidt with one re-orthogonalization pass).
struct FrobeniusFamily {
    n: usize,
    tol: f64,
    elems: Vec<CMatrix>,
}

impl FrobeniusFamily {
    fn new(n: usize, tol: f64) -> Self {
        Self {
            n,
            tol,
            elems: Vec::new(),
        }
    }

    fn is_full(&self) -> bool {
        self.elems.len() == self.n * self.n
    }

    fn push(&mut self, cand: &CMatrix) -> bool {
        if self.is_full() {
            return false;
        }
        let norm0 = cand.norm();
        if norm0 == 0.0 {
            return false;
        }
        let mut r = cand.clone();
        for _ in 0..2 {
            for e in &self.elems {
                let coef = linalg::frobenius_inner(e, &r);
                r -= e * coef;
            }
        }
        let rn = r.norm();
        if rn <= self.tol * norm0 {
            return false;
        }
        self.elems.push(r / C64::new(rn, 0.0));
        true
    }
}

/// Smallest unital *-subalgebra containing `generators`.
///
/// Alternates adjoints and pairwise products with Gram-Schmidt until a full pass
/// adds nothing; the dimension is bounded by `n^2`, so this always terminates.
pub fn generated_subalgebra(generators: &[AlgebraElement], ctx: &ToleranceContext) -> Result<SubalgebraBasis> {
    let first = generators.first().ok_or(Error::Empty("generator list"))?;
    let n = first.dim();
    for g in generators {
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: g.dim(),
            });
        }
    }
    let mut fam = FrobeniusFamily::new(n, ctx.rank_tol);
    fam.push(&CMatrix::identity(n, n));
    for g in generators {
        fam.push(g.matrix());
    }
    // products already tried, so later passes only visit new pairs
    let mut done = 0usize;
    loop {
        let before = fam.elems.len();
        for i in 0..before {
            let adj = fam.elems[i].adjoint();
            fam.push(&adj);
        }
        let len = fam.elems.len();
        'outer: for i in 0..len {
            for j in 0..len {
                if i < done && j < done {
                    continue;
                }
                if fam.is_full() {
                    break 'outer;
                }
                let p = &fam.elems[i] * &fam.elems[j];
                fam.push(&p);
            }
        }
        done = len;
        if fam.elems.len() == before || fam.is_full() {
            break;
        }
    }
    let basis = fam
        .elems
        .into_iter()
        .map(AlgebraElement::from_matrix_unchecked)
        .collect();
    Ok(SubalgebraBasis { dim: n, basis })
}

/// Membership: the Frobenius projection leaves residual at most `rank_tol * ||M||_F`.
pub fn contains(s: &SubalgebraBasis, m: &AlgebraElement, ctx: &ToleranceContext) -> bool {
    if m.dim() != s.dim {
        return false;
    }
    s.relative_residual(m) <= ctx.rank_tol
}

/// Orthonormal basis of `{X : XB = BX for all B in mats}`.
///
/// The constraint maps `X -> XB - BX` are applied one at a time, each step
/// restricting the running null space.
pub fn commutant_of(mats: &[CMatrix], ctx: &ToleranceContext) -> Vec<CMatrix> {
    let Some(first) = mats.first() else {
        return Vec::new();
    };
    let n = first.nrows();
    let nn = n * n;
    let mut null = CMatrix::identity(nn, nn);
    for b in mats {
        if null.ncols() == 0 {
            break;
        }
        // column-major vec: X_{i,j} sits at j*n + i
        let mut k = CMatrix::zeros(nn, nn);
        for c in 0..n {
            for r in 0..n {
                let row = c * n + r;
                for j in 0..n {
                    // [i == r] B_{j,c}
                    k[(row, j * n + r)] += b[(j, c)];
                }
                for i in 0..n {
                    // - [j == c] B_{r,i}
                    k[(row, c * n + i)] -= b[(r, i)];
                }
            }
        }
        let restricted = &k * &null;
        let ns = linalg::null_space(&restricted, ctx.rank_tol);
        null = &null * ns;
    }
    // re-orthonormalize the accumulated product
    let q = if null.ncols() > 0 { null.clone().qr().q() } else { null };
    (0..q.ncols())
        .map(|col| CMatrix::from_fn(n, n, |r, c| q[(c * n + r, col)]))
        .collect()
}

/// Commutant of a subalgebra, returned as a subalgebra basis.
pub fn commutant(s: &SubalgebraBasis, ctx: &ToleranceContext) -> SubalgebraBasis {
    let mats: Vec<CMatrix> = s.basis.iter().map(|b| b.matrix().clone()).collect();
    let basis = commutant_of(&mats, ctx)
        .into_iter()
        .map(AlgebraElement::from_matrix_unchecked)
        .collect();
    SubalgebraBasis { dim: s.dim, basis }
}
