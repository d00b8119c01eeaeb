//! Seeded random matrices and vectors. Every randomized check threads one of
//! these generators explicitly.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::AlgebraElement;
use crate::linalg::{CMatrix, CVector, C64};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Complex Ginibre matrix (i.i.d. standard complex Gaussian entries).
pub fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| gaussian_c64(rng))
}

pub fn random_element<R: Rng + ?Sized>(n: usize, rng: &mut R) -> AlgebraElement {
    AlgebraElement::from_matrix_unchecked(ginibre(n, rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> AlgebraElement {
    let g = ginibre(n, rng);
    AlgebraElement::from_matrix_unchecked((&g + g.adjoint()).scale(0.5))
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the phase of `R` removed).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> AlgebraElement {
    let qr = ginibre(n, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    AlgebraElement::from_matrix_unchecked(q)
}

/// `G G*` for a Ginibre `G`: positive semidefinite, almost surely definite.
pub fn random_psd<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> AlgebraElement {
    let g = CMatrix::from_fn(n, rank, |_, _| gaussian_c64(rng));
    AlgebraElement::from_matrix_unchecked(&g * g.adjoint())
}

/// Random density matrix of the given rank (trace one).
pub fn random_density<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> AlgebraElement {
    let p = random_psd(n, rank, rng);
    let t = p.trace().re;
    p.scale_real(1.0 / t)
}

pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CVector {
    let v = DVector::from_fn(n, |_, _| gaussian_c64(rng));
    let norm = v.norm();
    v / C64::new(norm, 0.0)
}

/// Normal matrix `U diag(lambda) U*` with Gaussian complex eigenvalues.
pub fn random_normal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> AlgebraElement {
    let u = random_unitary(n, rng);
    let d: Vec<C64> = (0..n).map(|_| gaussian_c64(rng)).collect();
    let m = u.matrix() * AlgebraElement::diag(&d).matrix() * u.matrix().adjoint();
    AlgebraElement::from_matrix_unchecked(m)
}

/// Diagonalizable matrix `S diag(lambda) S^-1` with a well-conditioned random `S`.
pub fn random_diagonalizable<R: Rng + ?Sized>(n: usize, rng: &mut R) -> AlgebraElement {
    loop {
        let s = ginibre(n, rng) + CMatrix::identity(n, n).scale(2.0);
        let Some(s_inv) = s.clone().try_inverse() else {
            continue;
        };
        let d: Vec<C64> = (0..n).map(|_| gaussian_c64(rng)).collect();
        let m = &s * AlgebraElement::diag(&d).matrix() * s_inv;
        return AlgebraElement::from_matrix_unchecked(m);
    }
}
