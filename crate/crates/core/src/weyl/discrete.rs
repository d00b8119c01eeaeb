//! Clock-and-shift Weyl systems on `C^n` for odd `n`.

use serde::Serialize;

use super::symplectic::DiscreteLabel;
use crate::algebra::{commutant_of, multiset_distance, spectrum, AlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64, ZERO};
use crate::random::{ginibre, random_unitary, rng};
use crate::tolerance::ToleranceContext;

/// `omega^k` for `omega = e^{2 pi i / n}`, computed from `k mod n` so equal
/// exponents give bit-identical phases.
pub fn root_of_unity(n: usize, k: i64) -> C64 {
    let r = k.rem_euclid(n as i64) as f64;
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * r / n as f64)
}

#[derive(Debug, Clone)]
pub struct DiscreteWeylSystem {
    modulus: usize,
    /// `W(a, b) -> C W(a, b) C*` when present.
    conjugator: Option<CMatrix>,
    /// Generators are swapped to `(V^-1, U)`.
    fourier_dual: bool,
}

impl DiscreteWeylSystem {
    pub fn standard(n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::UnsupportedModulus(n));
        }
        Ok(Self {
            modulus: n,
            conjugator: None,
            fourier_dual: false,
        })
    }

    /// The standard system conjugated by a unitary.
    pub fn conjugated(n: usize, conjugator: CMatrix, ctx: &ToleranceContext) -> Result<Self> {
        let mut s = Self::standard(n)?;
        if conjugator.nrows() != n || conjugator.ncols() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: conjugator.nrows(),
            });
        }
        let defect = linalg::spectral_norm(&(conjugator.adjoint() * &conjugator - CMatrix::identity(n, n)));
        if defect > ctx.eq_tol {
            return Err(Error::Precondition(format!(
                "conjugator is not unitary (defect {defect:.3e})"
            )));
        }
        s.conjugator = Some(conjugator);
        Ok(s)
    }

    pub fn with_random_conjugator(n: usize, seed: u64, ctx: &ToleranceContext) -> Result<Self> {
        let u = random_unitary(n, &mut rng(seed)).into_matrix();
        Self::conjugated(n, u, ctx)
    }

    /// Clock `V^-1` and shift `U`; satisfies the same commutation relation.
    pub fn fourier_dual(n: usize) -> Result<Self> {
        let mut s = Self::standard(n)?;
        s.fourier_dual = true;
        Ok(s)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn conjugator(&self) -> Option<&CMatrix> {
        self.conjugator.as_ref()
    }

    /// `omega = e^{2 pi i / n}`.
    pub fn omega(&self) -> C64 {
        root_of_unity(self.modulus, 1)
    }

    /// `tau = omega^{(n+1)/2}`, the square root of `omega` that is itself an `n`-th root of unity.
    pub fn tau(&self) -> C64 {
        root_of_unity(self.modulus, self.tau_exponent())
    }

    fn tau_exponent(&self) -> i64 {
        (self.modulus as i64 + 1) / 2
    }

    /// `tau^{ab} V^b U^a` in the standard basis, built entry by entry with exact
    /// phase exponents.
    fn standard_weyl(&self, a: i64, b: i64) -> CMatrix {
        let n = self.modulus;
        let t = self.tau_exponent();
        let mut m = CMatrix::zeros(n, n);
        for j in 0..n {
            // U^a e_j = omega^{aj} e_j, then V^b moves it to e_{j+b}
            let row = (j as i64 + b).rem_euclid(n as i64) as usize;
            m[(row, j)] = root_of_unity(n, t * a * b + a * j as i64);
        }
        m
    }

    pub fn weyl_matrix(&self, a: i64, b: i64) -> CMatrix {
        let w = if self.fourier_dual {
            // tau^{ab} U^b V^{-a} = W_std(b, -a) since tau^2 = omega
            self.standard_weyl(b, -a)
        } else {
            self.standard_weyl(a, b)
        };
        match &self.conjugator {
            Some(c) => c * w * c.adjoint(),
            None => w,
        }
    }

    pub fn weyl(&self, label: DiscreteLabel) -> AlgebraElement {
        AlgebraElement::from_matrix_unchecked(self.weyl_matrix(label.a, label.b))
    }

    /// `W(1, 0)`.
    pub fn clock(&self) -> CMatrix {
        self.weyl_matrix(1, 0)
    }

    /// `W(0, 1)`.
    pub fn shift(&self) -> CMatrix {
        self.weyl_matrix(0, 1)
    }

    pub fn labels(&self) -> Vec<DiscreteLabel> {
        DiscreteLabel::all(self.modulus)
    }
}

/// Worst deviations found by [`check_weyl_relations`].
#[derive(Debug, Clone, Serialize)]
pub struct WeylRelationReport {
    pub modulus: usize,
    pub pairs_checked: usize,
    /// `max |W(v)W(w) - tau^{sigma(v,w)} W(v+w)|`.
    pub product: f64,
    /// `max |W(v)* - W(-v)|`.
    pub adjoint: f64,
    pub unitarity: f64,
    pub identity: f64,
    /// `max |UV - omega VU|` for the clock and shift.
    pub commutation: f64,
    /// Distance of the spectrum of `W(1,0)` from the `n`-th roots of unity.
    pub clock_spectrum: f64,
    pub commutant_dim: usize,
}

impl WeylRelationReport {
    pub fn max_deviation(&self) -> f64 {
        [
            self.product,
            self.adjoint,
            self.unitarity,
            self.identity,
            self.commutation,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Exhaustive check over all label pairs.
pub fn check_weyl_relations(sys: &DiscreteWeylSystem, ctx: &ToleranceContext) -> Result<WeylRelationReport> {
    let n = sys.modulus();
    let labels = sys.labels();
    let mats: Vec<CMatrix> = labels.iter().map(|l| sys.weyl_matrix(l.a, l.b)).collect();
    let index = |l: DiscreteLabel| labels.iter().position(|m| *m == l).expect("label in range");
    let eye = CMatrix::identity(n, n);
    let mut product: f64 = 0.0;
    let mut adjoint: f64 = 0.0;
    let mut unitarity: f64 = 0.0;
    let t = sys.tau_exponent();
    for (i, v) in labels.iter().enumerate() {
        adjoint = adjoint.max(linalg::max_abs_diff(&mats[i].adjoint(), &mats[index(-*v)]));
        unitarity = unitarity.max(linalg::max_abs_diff(&(mats[i].adjoint() * &mats[i]), &eye));
        for (j, w) in labels.iter().enumerate() {
            let lhs = &mats[i] * &mats[j];
            let rhs = &mats[index(*v + *w)] * root_of_unity(n, t * v.sigma(*w));
            product = product.max(linalg::max_abs_diff(&lhs, &rhs));
        }
    }
    let identity = linalg::max_abs_diff(&sys.weyl_matrix(0, 0), &eye);
    let (u, v) = (sys.clock(), sys.shift());
    let commutation = linalg::max_abs_diff(&(&u * &v), &(&v * &u * sys.omega()));
    let roots: Vec<C64> = (0..n as i64).map(|k| root_of_unity(n, k)).collect();
    let spec = spectrum(&AlgebraElement::from_matrix_unchecked(u), ctx)?;
    Ok(WeylRelationReport {
        modulus: n,
        pairs_checked: labels.len() * labels.len(),
        product,
        adjoint,
        unitarity,
        identity,
        commutation,
        clock_spectrum: multiset_distance(&spec.eigenvalues, &roots),
        commutant_dim: commutant_of(&mats, ctx).len(),
    })
}

#[derive(Debug, Clone)]
pub struct WeylIntertwiner {
    pub matrix: CMatrix,
    /// `max_v ||U W1(v) - W2(v) U||` over all labels.
    pub defect: f64,
    pub seed_used: u64,
    pub attempts: usize,
}

const SVN_ATTEMPTS: usize = 5;

/// Group average `T = n^-2 sum_v W2(v) X W1(v)*` for a seeded random `X`,
/// made unitary by its polar factor.
pub fn svn_intertwiner_discrete(
    sys1: &DiscreteWeylSystem,
    sys2: &DiscreteWeylSystem,
    seed: u64,
    ctx: &ToleranceContext,
) -> Result<WeylIntertwiner> {
    let n = sys1.modulus();
    if sys2.modulus() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: sys2.modulus(),
        });
    }
    let labels = sys1.labels();
    let w1: Vec<CMatrix> = labels.iter().map(|l| sys1.weyl_matrix(l.a, l.b)).collect();
    let w2: Vec<CMatrix> = labels.iter().map(|l| sys2.weyl_matrix(l.a, l.b)).collect();
    let mut last_norm = 0.0;
    for attempt in 0..SVN_ATTEMPTS {
        let s = seed.wrapping_add(attempt as u64);
        let x = ginibre(n, &mut rng(s));
        let mut t = CMatrix::from_element(n, n, ZERO);
        for (a, b) in w1.iter().zip(&w2) {
            t += b * &x * a.adjoint();
        }
        t /= C64::new((n * n) as f64, 0.0);
        last_norm = linalg::spectral_norm(&t);
        if last_norm <= ctx.rank_tol {
            continue;
        }
        let u = linalg::polar_unitary(&t);
        let defect = w1
            .iter()
            .zip(&w2)
            .map(|(a, b)| linalg::spectral_norm(&(&u * a - b * &u)))
            .fold(0.0, f64::max);
        return Ok(WeylIntertwiner {
            matrix: u,
            defect,
            seed_used: s,
            attempts: attempt + 1,
        });
    }
    Err(Error::DegenerateAverage {
        attempts: SVN_ATTEMPTS,
        norm: last_norm,
    })
}

/// `F_{jk} = omega^{jk} / sqrt(n)`.
pub fn fourier_matrix(n: usize) -> CMatrix {
    let s = (n as f64).sqrt().recip();
    CMatrix::from_fn(n, n, |j, k| root_of_unity(n, (j * k) as i64) * s)
}

/// `|<A, B>_F| / (||A||_F ||B||_F)`: one exactly when `A` and `B` agree up to phase.
pub fn phase_alignment(a: &CMatrix, b: &CMatrix) -> f64 {
    linalg::frobenius_inner(a, b).norm() / (a.norm() * b.norm())
}

/// `min_phase ||A e^{i phi} - B||_max`.
pub fn distance_up_to_phase(a: &CMatrix, b: &CMatrix) -> f64 {
    let ip = linalg::frobenius_inner(a, b);
    let phase = if ip.norm() > 0.0 {
        ip / C64::new(ip.norm(), 0.0)
    } else {
        C64::new(1.0, 0.0)
    };
    linalg::max_abs_diff(&(a * phase), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    #[test]
    fn small_cases() {
        let s = DiscreteWeylSystem::standard(3).unwrap();
        assert_eq!(s.weyl_matrix(0, 0), CMatrix::identity(3, 3));
        let w = s.weyl_matrix(1, 0);
        let w_om = s.omega();
        assert!(
            linalg::max_abs_diff(
                &w,
                &AlgebraElement::diag(&[c(1.0, 0.0), w_om, w_om * w_om]).into_matrix()
            ) < 1e-15
        );
        assert!(matches!(
            DiscreteWeylSystem::standard(4),
            Err(Error::UnsupportedModulus(4))
        ));
        assert!((s.tau() * s.tau() - s.omega()).norm() < 1e-15);
    }

    #[test]
    fn product_phase_is_tau_to_sigma() {
        // sigma((1,1),(1,-1)) = -2, so the phase is tau^-2 = omega^-1 = omega^2 at n = 3
        let s = DiscreteWeylSystem::standard(3).unwrap();
        let lhs = s.weyl_matrix(1, 1) * s.weyl_matrix(1, -1);
        let rhs = s.weyl_matrix(2, 0) * s.omega().powi(2);
        assert!(linalg::max_abs_diff(&lhs, &rhs) < 1e-15);
    }

    #[test]
    fn relations_hold_for_all_variants() {
        for sys in [
            DiscreteWeylSystem::standard(5).unwrap(),
            DiscreteWeylSystem::fourier_dual(5).unwrap(),
            DiscreteWeylSystem::with_random_conjugator(5, 1, &ctx()).unwrap(),
        ] {
            let r = check_weyl_relations(&sys, &ctx()).unwrap();
            assert!(r.max_deviation() < 1e-13, "{r:?}");
            assert_eq!(r.commutant_dim, 1);
            assert!(r.clock_spectrum < 1e-12);
        }
    }

    #[test]
    fn fourier_dual_intertwined_by_dft() {
        let s1 = DiscreteWeylSystem::standard(3).unwrap();
        let s2 = DiscreteWeylSystem::fourier_dual(3).unwrap();
        let u = svn_intertwiner_discrete(&s1, &s2, 0, &ctx()).unwrap();
        assert!(u.defect < 1e-12);
        assert!(distance_up_to_phase(&u.matrix, &fourier_matrix(3)) < 1e-12);
    }

    #[test]
    fn identity_for_equal_systems() {
        let s = DiscreteWeylSystem::standard(7).unwrap();
        let u = svn_intertwiner_discrete(&s, &s, 11, &ctx()).unwrap();
        assert!(distance_up_to_phase(&u.matrix, &CMatrix::identity(7, 7)) < 1e-12);
    }
}
