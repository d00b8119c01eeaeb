//! Positive cone, states as density functionals, dispersion, the Jordan
//! product and the finite Gelfand picture.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{op_norm, AlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::random::random_unit_vector;
use crate::tolerance::ToleranceContext;

mod gelfand;

pub use gelfand::{
    character_report, characters_of_commutative, finite_gelfand, riesz_markov_weights, Character, CharacterReport,
    FiniteFunctionAlgebra, FunctionElement, GelfandReport, PointEvaluation,
};

fn self_adjoint_within(a: &AlgebraElement, ctx: &ToleranceContext) -> bool {
    a.self_adjoint_defect() <= ctx.eq_tol * op_norm(a).max(1.0)
}

/// Outcome of both positivity tests on one element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityPaths {
    /// Self-adjoint with smallest eigenvalue `>= -spec_tol`.
    pub by_spectrum: bool,
    /// Self-adjoint with `||A - aI|| <= a + spec_tol` for `a = ||A||`.
    pub by_norm: bool,
    pub min_eigenvalue: f64,
}

impl PositivityPaths {
    pub fn agree(&self) -> bool {
        self.by_spectrum == self.by_norm
    }
}

pub fn positivity_paths(a: &AlgebraElement, ctx: &ToleranceContext) -> PositivityPaths {
    if !self_adjoint_within(a, ctx) {
        return PositivityPaths {
            by_spectrum: false,
            by_norm: false,
            min_eigenvalue: f64::NAN,
        };
    }
    let (values, _) = linalg::hermitian_eigen(a.matrix());
    let min_eigenvalue = values.first().copied().unwrap_or(0.0);
    let norm = op_norm(a);
    let shifted = a.matrix() - CMatrix::identity(a.dim(), a.dim()).scale(norm);
    let by_norm = linalg::spectral_norm(&shifted) <= norm + ctx.spec_tol;
    PositivityPaths {
        by_spectrum: min_eigenvalue >= -ctx.spec_tol,
        by_norm,
        min_eigenvalue,
    }
}

/// Self-adjoint with spectrum in `[-spec_tol, inf)`.
pub fn is_positive_element(a: &AlgebraElement, ctx: &ToleranceContext) -> bool {
    positivity_paths(a, ctx).by_spectrum
}

/// Whether a positive product could be expected for a pair of positive elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProductOutcome {
    Positive,
    NotPositive,
    /// `AB != BA`, so the cone says nothing about `AB`.
    HypothesisUnmet,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeReport {
    pub scaling_ok: bool,
    pub sum_ok: bool,
    pub commutator_norm: f64,
    pub product: ProductOutcome,
    /// Vacuously true unless `-A` is also positive.
    pub antisymmetry_ok: bool,
}

impl ConeReport {
    /// A `NotPositive` product of commuting positives would break the cone.
    pub fn holds(&self) -> bool {
        self.scaling_ok && self.sum_ok && self.antisymmetry_ok && self.product != ProductOutcome::NotPositive
    }
}

/// Checks the algebraic cone properties on a pair of positive elements.
pub fn cone_checks(a: &AlgebraElement, b: &AlgebraElement, ctx: &ToleranceContext) -> Result<ConeReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    for (name, x) in [("A", a), ("B", b)] {
        if !is_positive_element(x, ctx) {
            return Err(Error::Precondition(format!("{name} is not positive")));
        }
    }
    let scaling_ok = [0.0, 0.5, 1.0, 3.0, 1e3]
        .iter()
        .all(|&s| is_positive_element(&a.scale_real(s), ctx));
    let sum_ok = is_positive_element(&(a + b), ctx);
    let commutator_norm = op_norm(&a.commutator(b)?);
    let scale = (op_norm(a) * op_norm(b)).max(1.0);
    let product = if commutator_norm > ctx.eq_tol * scale {
        ProductOutcome::HypothesisUnmet
    } else if is_positive_element(&(a * b), ctx) {
        ProductOutcome::Positive
    } else {
        ProductOutcome::NotPositive
    };
    let antisymmetry_ok = !is_positive_element(&-a, ctx) || op_norm(a) <= ctx.spec_tol;
    Ok(ConeReport {
        scaling_ok,
        sum_ok,
        commutator_norm,
        product,
        antisymmetry_ok,
    })
}

/// `A -> trace(D A)` for a Hermitian density `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityFunctional {
    density: CMatrix,
}

/// The two state criteria evaluated side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateCriteria {
    /// `D >= 0` and `trace D = 1`.
    pub positive_and_unital: bool,
    /// `||rho|| = rho(I) = 1`.
    pub norm_criterion: bool,
    pub functional_norm: f64,
    pub value_at_unit: f64,
}

impl DensityFunctional {
    /// Rejects a non-Hermitian density.
    pub fn new(density: CMatrix, ctx: &ToleranceContext) -> Result<Self> {
        let a = AlgebraElement::new(density.clone())?;
        let defect = a.self_adjoint_defect();
        if defect > ctx.eq_tol * op_norm(&a).max(1.0) {
            return Err(Error::NotSelfAdjoint { defect });
        }
        Ok(Self {
            density: (&density + density.adjoint()).scale(0.5),
        })
    }

    /// The vector state `A -> <psi, A psi>` of a unit vector.
    pub fn vector_state(psi: &CVector) -> Self {
        let psi = psi / C64::new(psi.norm(), 0.0);
        Self {
            density: &psi * psi.adjoint(),
        }
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            density: CMatrix::identity(n, n).scale(1.0 / n as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.density.nrows()
    }

    pub fn density(&self) -> &CMatrix {
        &self.density
    }

    pub fn eval(&self, a: &AlgebraElement) -> C64 {
        (&self.density * a.matrix()).trace()
    }

    /// Trace norm of `D`, the dual of the operator norm.
    pub fn functional_norm(&self) -> f64 {
        linalg::hermitian_eigen(&self.density).0.iter().map(|x| x.abs()).sum()
    }

    /// The unital element at which `functional_norm` is attained: `V sign(L) V*`.
    pub fn norming_element(&self) -> AlgebraElement {
        let (values, v) = linalg::hermitian_eigen(&self.density);
        let signs: Vec<f64> = values.iter().map(|&x| if x < 0.0 { -1.0 } else { 1.0 }).collect();
        let d = AlgebraElement::diag_real(&signs);
        AlgebraElement::from_matrix_unchecked(&v * d.matrix() * v.adjoint())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::hermitian_eigen(&self.density).0.first().copied().unwrap_or(0.0)
    }

    pub fn criteria(&self, ctx: &ToleranceContext) -> StateCriteria {
        let n = self.dim() as f64;
        let trace = linalg::trace(&self.density).re;
        let norm = self.functional_norm();
        let unital = (trace - 1.0).abs() <= ctx.eq_tol;
        // eigenvalues in [-spec_tol, 0) count as zero, so the norm gap they
        // leave is at most 2 n spec_tol
        StateCriteria {
            positive_and_unital: unital && self.min_eigenvalue() >= -ctx.spec_tol,
            norm_criterion: unital && norm - trace <= 2.0 * n * ctx.spec_tol,
            functional_norm: norm,
            value_at_unit: trace,
        }
    }

    pub fn is_state(&self, ctx: &ToleranceContext) -> bool {
        self.criteria(ctx).positive_and_unital
    }

    /// `rank(D) = 1` and `rho(A^2) - rho(A)^2`.
    pub fn purity_and_variance(&self, a: &AlgebraElement, ctx: &ToleranceContext) -> Result<(bool, f64)> {
        if !self.is_state(ctx) {
            return Err(Error::NotAState(format!(
                "trace {:.3e}, smallest eigenvalue {:.3e}",
                linalg::trace(&self.density).re,
                self.min_eigenvalue()
            )));
        }
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: a.dim(),
            });
        }
        if !self_adjoint_within(a, ctx) {
            return Err(Error::NotSelfAdjoint {
                defect: a.self_adjoint_defect(),
            });
        }
        let pure = linalg::rank(&self.density, ctx.rank_tol) == 1;
        let mean = self.eval(a).re;
        let variance = self.eval(&(a * a)).re - mean * mean;
        Ok((pure, variance))
    }

    /// Convex combination `t self + (1 - t) other`.
    pub fn mix(&self, other: &Self, t: f64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(Self {
            density: self.density.scale(t) + other.density.scale(1.0 - t),
        })
    }
}

/// `(1/2)((A + B)^2 - A^2 - B^2)`.
pub fn jordan_product(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    let s = a.try_add(b)?;
    let out = (s.matrix() * s.matrix() - a.matrix() * a.matrix() - b.matrix() * b.matrix()).scale(0.5);
    Ok(AlgebraElement::from_matrix_unchecked(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupNormEstimate {
    /// `sup |rho(A)|` over states, attained at an eigenprojector state.
    pub exact: f64,
    /// Best value seen over randomly drawn pure states.
    pub sampled: f64,
}

/// The norm of a self-adjoint element as a supremum over states.
pub fn state_sup_norm<R: Rng + ?Sized>(
    a: &AlgebraElement,
    samples: usize,
    rng: &mut R,
    ctx: &ToleranceContext,
) -> Result<SupNormEstimate> {
    if !self_adjoint_within(a, ctx) {
        return Err(Error::NotSelfAdjoint {
            defect: a.self_adjoint_defect(),
        });
    }
    let (values, vectors) = linalg::hermitian_eigen(a.matrix());
    let exact = values.iter().map(|x| x.abs()).fold(0.0, f64::max);
    // the eigenprojector state must attain it
    let k = values
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let attained = DensityFunctional::vector_state(&vectors.column(k).into_owned())
        .eval(a)
        .norm();
    let mut sampled: f64 = 0.0;
    for _ in 0..samples {
        let psi = random_unit_vector(a.dim(), rng);
        sampled = sampled.max(DensityFunctional::vector_state(&psi).eval(a).norm());
    }
    debug_assert!((attained - exact).abs() <= ctx.spec_tol * exact.max(1.0));
    Ok(SupNormEstimate { exact, sampled })
}

/// Largest variance of `A` over its own eigenvector states; zero up to rounding
/// means each observable has dispersion-free states.
pub fn eigenstate_dispersion(a: &AlgebraElement, ctx: &ToleranceContext) -> Result<f64> {
    if !self_adjoint_within(a, ctx) {
        return Err(Error::NotSelfAdjoint {
            defect: a.self_adjoint_defect(),
        });
    }
    let (_, v) = linalg::hermitian_eigen(a.matrix());
    let mut worst: f64 = 0.0;
    for k in 0..a.dim() {
        let rho = DensityFunctional::vector_state(&v.column(k).into_owned());
        let (_, var) = rho.purity_and_variance(a, ctx)?;
        worst = worst.max(var.abs());
    }
    Ok(worst)
}
