//! Dense complex helpers shared across modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
#[cfg(test)]
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

// nalgebra's complex SVD loses accuracy on wide inputs and repeated singular
// values, so every SVD here goes through faer.
fn to_faer(m: &CMatrix) -> faer::Mat<faer::c64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |r, c| {
        let z = m[(r, c)];
        faer::c64::new(z.re, z.im)
    })
}

fn from_faer(m: faer::MatRef<'_, faer::c64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| {
        let z = m[(r, c)];
        C64::new(z.re, z.im)
    })
}

/// Full SVD `m = U diag(s) V*` with `s` descending; `U` is `r x r`, `V` is `c x c`.
pub fn svd(m: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let f = to_faer(m).svd().expect("SVD converges");
    let s = f.S().column_vector();
    let values = (0..s.nrows()).map(|i| s[i].re).collect();
    (from_faer(f.U()), values, from_faer(f.V()))
}

/// Singular values sorted in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = to_faer(m)
        .singular_values()
        .expect("SVD converges")
        .into_iter()
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Largest singular value (operator 2-norm).
pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// `trace(A* B)`.
pub fn frobenius_inner(a: &CMatrix, b: &CMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// Max entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Orthonormal basis (as columns) of the null space of `m`.
///
/// A direction is null when its singular value is at most `rel_tol * max(1, sigma_max)`.
pub fn null_space(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let cols = m.ncols();
    if cols == 0 {
        return CMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return CMatrix::identity(cols, cols);
    }
    let (_, sigma, v) = svd(m);
    let smax = sigma.first().copied().unwrap_or(0.0);
    let cutoff = rel_tol * smax.max(1.0);
    // columns of V past the last singular value are null outright
    let keep: Vec<usize> = (0..cols)
        .filter(|&i| sigma.get(i).is_none_or(|&s| s <= cutoff))
        .collect();
    CMatrix::from_fn(cols, keep.len(), |r, c| v[(r, keep[c])])
}

/// `m^+` with singular values at most `cutoff` treated as zero.
pub fn pseudo_inverse(m: &CMatrix, cutoff: f64) -> CMatrix {
    let (u, sigma, v) = svd(m);
    let mut out = CMatrix::zeros(m.ncols(), m.nrows());
    for (i, &s) in sigma.iter().enumerate() {
        if s > cutoff {
            out += v.column(i) * u.column(i).adjoint() / C64::new(s, 0.0);
        }
    }
    out
}

/// Eigenvalues of a general square matrix, `None` if the QR iteration stalls.
pub fn eigenvalues(m: &CMatrix) -> Option<Vec<C64>> {
    if m.nrows() == 0 {
        return Some(Vec::new());
    }
    let values = to_faer(m).eigenvalues().ok()?;
    Some(values.into_iter().map(|z| C64::new(z.re, z.im)).collect())
}

/// Closest unitary to square `m` in any unitarily invariant norm (`U V*` from `m = U S V*`).
pub fn polar_unitary(m: &CMatrix) -> CMatrix {
    let (u, _, v) = svd(m);
    u * v.adjoint()
}

/// Eigen-decomposition of the Hermitian part of `m`, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let h = (m + m.adjoint()).scale(0.5);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Numerical rank with a relative singular-value cutoff.
pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    let s = singular_values(m);
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * smax).count()
}
