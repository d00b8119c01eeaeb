use serde::Serialize;

use crate::algebra::{multiset_distance, op_norm, spectrum, AlgebraElement, SubalgebraBasis};
use crate::calculus::eig_normal;
use crate::error::{Error, Result};
use crate::io::FunctionFile;
use crate::linalg::{self, CMatrix, C64, ZERO};
use crate::random::{gaussian_c64, rng};
use crate::tolerance::ToleranceContext;

/// `C(X)` for a finite ordered set `X` of labelled points.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFunctionAlgebra {
    points: Vec<String>,
}

/// A function on the points, stored as its value list.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionElement {
    pub values: Vec<C64>,
}

impl FunctionElement {
    fn zip(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch {
                left: self.values.len(),
                right: other.values.len(),
            });
        }
        Ok(Self {
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Multiplication operator on `l^2(X)`.
    pub fn as_diagonal(&self) -> AlgebraElement {
        AlgebraElement::diag(&self.values)
    }
}

impl FiniteFunctionAlgebra {
    pub fn new(points: Vec<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("point set"));
        }
        Ok(Self { points })
    }

    /// Points labelled `x0, x1, ...`.
    pub fn with_size(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("x{i}")).collect())
    }

    pub fn from_file(file: &FunctionFile) -> Result<(Self, FunctionElement)> {
        let alg = Self::new(file.points.clone())?;
        let f = alg.element(file.values.iter().map(|v| C64::new(v[0], v[1])).collect())?;
        Ok((alg, f))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn element(&self, values: Vec<C64>) -> Result<FunctionElement> {
        if values.len() != self.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: values.len(),
            });
        }
        Ok(FunctionElement { values })
    }

    pub fn unit(&self) -> FunctionElement {
        FunctionElement {
            values: vec![C64::new(1.0, 0.0); self.len()],
        }
    }

    pub fn indicator(&self, i: usize) -> FunctionElement {
        let mut values = vec![ZERO; self.len()];
        values[i] = C64::new(1.0, 0.0);
        FunctionElement { values }
    }

    pub fn point_evaluations(&self) -> Vec<PointEvaluation> {
        self.points
            .iter()
            .enumerate()
            .map(|(index, label)| PointEvaluation {
                index,
                label: label.clone(),
            })
            .collect()
    }
}

/// `f -> f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointEvaluation {
    pub index: usize,
    pub label: String,
}

impl PointEvaluation {
    pub fn eval(&self, f: &FunctionElement) -> C64 {
        f.values[self.index]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GelfandReport {
    pub points: usize,
    /// Largest `| ||f* f|| - ||f||^2 |`, relative to `max(1, ||f||^2)`.
    pub c_star_defect: f64,
    pub commutativity_defect: f64,
    /// Largest multiset distance between `spectrum(f)` and the image of `f`.
    pub spectrum_defect: f64,
    /// `None` above six points, where the lattice enumeration is skipped.
    pub pure_states_are_points: Option<bool>,
    pub lattice_states_checked: usize,
    /// Largest `|chi(f) - f(x)|` with the characters found by joint diagonalization.
    pub gelfand_transform_defect: f64,
}

impl GelfandReport {
    pub fn holds(&self, ctx: &ToleranceContext) -> bool {
        self.c_star_defect <= ctx.eq_tol
            && self.commutativity_defect == 0.0
            && self.spectrum_defect <= ctx.spec_tol
            && self.pure_states_are_points != Some(false)
            && self.gelfand_transform_defect <= ctx.spec_tol
    }
}

/// Weak compositions of `total` into `parts` nonnegative parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Over probability vectors with denominator 4: extreme point of the simplex
/// (active constraints of full rank) iff Dirac iff the functional is multiplicative.
fn enumerate_pure_states(n: usize) -> (bool, usize) {
    const DENOM: usize = 4;
    let mut all_agree = true;
    let combos = compositions(DENOM, n);
    for c in &combos {
        let p: Vec<f64> = c.iter().map(|&k| k as f64 / DENOM as f64).collect();
        let zeros: Vec<usize> = (0..n).filter(|&i| c[i] == 0).collect();
        let mut active = CMatrix::zeros(zeros.len() + 1, n);
        for j in 0..n {
            active[(0, j)] = C64::new(1.0, 0.0);
        }
        for (r, &i) in zeros.iter().enumerate() {
            active[(r + 1, i)] = C64::new(1.0, 0.0);
        }
        let extreme = linalg::rank(&active, 1e-12) == n;
        let dirac = c.iter().filter(|&&k| k != 0).count() == 1;
        let multiplicative = (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = if i == j { p[i] } else { 0.0 };
                (lhs - p[i] * p[j]).abs() < 1e-15
            })
        });
        all_agree &= extreme == dirac && dirac == multiplicative;
    }
    (all_agree, combos.len())
}

/// Checks the C*-structure of `C(X)` on the given elements, spectra as images,
/// pure states as point evaluations, and the Gelfand transform as the identity.
pub fn finite_gelfand(
    alg: &FiniteFunctionAlgebra,
    elements: &[FunctionElement],
    ctx: &ToleranceContext,
) -> Result<GelfandReport> {
    let n = alg.len();
    let mut c_star_defect: f64 = 0.0;
    let mut commutativity_defect: f64 = 0.0;
    let mut spectrum_defect: f64 = 0.0;
    for f in elements {
        let f = alg.element(f.values.clone())?;
        let norm = f.sup_norm();
        let ff = f.adjoint().mul(&f)?.sup_norm();
        c_star_defect = c_star_defect.max((ff - norm * norm).abs() / (norm * norm).max(1.0));
        let spec = spectrum(&f.as_diagonal(), ctx)?;
        spectrum_defect = spectrum_defect.max(multiset_distance(&spec.eigenvalues, &f.values));
        for g in elements {
            let d = f.mul(g)?.zip(&g.mul(&f)?, |a, b| a - b)?.sup_norm();
            commutativity_defect = commutativity_defect.max(d);
        }
    }

    let (pure_states_are_points, lattice_states_checked) = if n <= 6 {
        let (ok, count) = enumerate_pure_states(n);
        (Some(ok), count)
    } else {
        (None, 0)
    };

    let chars = characters_of_commutative(&SubalgebraBasis::diagonal(n), ctx)?;
    let mut gelfand_transform_defect: f64 = if chars.len() == n { 0.0 } else { f64::INFINITY };
    for ch in &chars {
        let x = (0..n)
            .max_by(|&i, &j| ch.projector[(i, i)].re.total_cmp(&ch.projector[(j, j)].re))
            .unwrap_or(0);
        for f in elements {
            let d = (ch.eval(&f.as_diagonal()) - f.values[x]).norm();
            gelfand_transform_defect = gelfand_transform_defect.max(d);
        }
    }

    Ok(GelfandReport {
        points: n,
        c_star_defect,
        commutativity_defect,
        spectrum_defect,
        pure_states_are_points,
        lattice_states_checked,
        gelfand_transform_defect,
    })
}

/// A character of a commutative matrix algebra, `A -> trace(P A) / rank(P)` for
/// a joint eigenprojector `P`.
#[derive(Debug, Clone)]
pub struct Character {
    pub projector: CMatrix,
    pub rank: usize,
}

impl Character {
    pub fn eval(&self, a: &AlgebraElement) -> C64 {
        (&self.projector * a.matrix()).trace() / C64::new(self.rank as f64, 0.0)
    }
}

/// Characters of a commutative, star-closed subalgebra, found by diagonalizing
/// a generic element and splitting along its eigenspaces.
pub fn characters_of_commutative(s: &SubalgebraBasis, ctx: &ToleranceContext) -> Result<Vec<Character>> {
    let (defect, first, second) = s.commutativity_defect();
    if defect > ctx.eq_tol {
        return Err(Error::NonCommutative { first, second, defect });
    }
    let closure = s.closure_defect();
    if closure > ctx.spec_tol {
        return Err(Error::Precondition(format!(
            "subalgebra is not closed under products and adjoints (residual {closure:.3e})"
        )));
    }
    // fixed seed: the generic element only has to separate the characters
    let mut g = rng(0x5eed_c4a5);
    let coeffs: Vec<C64> = (0..s.len()).map(|_| gaussian_c64(&mut g)).collect();
    let generic = s.combine(&coeffs);
    let dec = eig_normal(&generic, ctx)?;
    let tol = ctx.spec_tol * op_norm(&generic).max(1.0);
    Ok(dec
        .spectral_projectors(tol)
        .into_iter()
        .map(|(_, p)| {
            let rank = linalg::trace(&p).re.round() as usize;
            Character { projector: p, rank }
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterReport {
    pub characters: usize,
    pub algebra_dim: usize,
    /// `max |chi(AB) - chi(A) chi(B)|` over basis pairs.
    pub multiplicativity_defect: f64,
    /// `max |chi(A*) - conj(chi(A))|`.
    pub star_defect: f64,
    /// `max | ||A|| - max_chi |chi(A)| |` over basis elements.
    pub isometry_defect: f64,
    /// Rank of the evaluation map `A -> (chi_1(A), ...)` on the algebra.
    pub evaluation_rank: usize,
}

impl CharacterReport {
    pub fn is_isomorphism(&self, tol: f64) -> bool {
        self.characters == self.algebra_dim
            && self.evaluation_rank == self.algebra_dim
            && self.multiplicativity_defect <= tol
            && self.star_defect <= tol
            && self.isometry_defect <= tol
    }
}

pub fn character_report(s: &SubalgebraBasis, chars: &[Character], ctx: &ToleranceContext) -> CharacterReport {
    let basis = s.basis();
    let mut multiplicativity_defect: f64 = 0.0;
    let mut star_defect: f64 = 0.0;
    let mut isometry_defect: f64 = 0.0;
    let mut eval = CMatrix::zeros(chars.len(), basis.len());
    for (j, a) in basis.iter().enumerate() {
        let mut sup: f64 = 0.0;
        for (i, ch) in chars.iter().enumerate() {
            let v = ch.eval(a);
            eval[(i, j)] = v;
            sup = sup.max(v.norm());
            star_defect = star_defect.max((ch.eval(&a.adjoint()) - v.conj()).norm());
            for b in basis {
                multiplicativity_defect = multiplicativity_defect.max((ch.eval(&(a * b)) - v * ch.eval(b)).norm());
            }
        }
        isometry_defect = isometry_defect.max((op_norm(a) - sup).abs());
    }
    CharacterReport {
        characters: chars.len(),
        algebra_dim: basis.len(),
        multiplicativity_defect,
        star_defect,
        isometry_defect,
        evaluation_rank: linalg::rank(&eval, ctx.rank_tol),
    }
}

/// Weights `w_x = rho(1_x)` of a state on `C(X)`.
pub fn riesz_markov_weights(
    alg: &FiniteFunctionAlgebra,
    rho: impl Fn(&FunctionElement) -> C64,
    ctx: &ToleranceContext,
) -> Result<Vec<f64>> {
    let raw: Vec<C64> = (0..alg.len()).map(|i| rho(&alg.indicator(i))).collect();
    let mut weights = Vec::with_capacity(raw.len());
    for w in raw {
        if w.im.abs() > ctx.eq_tol || w.re < -ctx.eq_tol {
            return Err(Error::FunctionalNotPositive { eigenvalue: w.re });
        }
        weights.push(w.re);
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > ctx.eq_tol {
        return Err(Error::NotAState(format!("rho(1) = {total}")));
    }
    Ok(weights)
}
