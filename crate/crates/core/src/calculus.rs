//! Continuous functional calculus `f -> f(A)` for normal matrices.
//!
//! The production path diagonalizes `A` and applies `f` to grouped spectral
//! projectors. [`chebyshev_calculus`] is the polynomial route: it interpolates
//! `f` on `[-||A||, ||A||]` and evaluates the interpolant with
//! [`apply_polynomial`], which gives an independent cross-check.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{op_norm, AlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64, ZERO};
use crate::tolerance::ToleranceContext;

/// Eigenvalues and a unitary matrix whose columns are matching eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<C64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    /// `V diag(lambda) V*`.
    pub fn reconstruct(&self) -> AlgebraElement {
        let v = &self.eigenvectors;
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.eigenvalues.clone()));
        AlgebraElement::from_matrix_unchecked(v * d * v.adjoint())
    }

    /// Eigenvalues clustered within `tol`, each with the orthogonal projector onto
    /// its eigenspace. Rotating eigenvectors inside an eigenspace leaves these unchanged.
    pub fn spectral_projectors(&self, tol: f64) -> Vec<(C64, CMatrix)> {
        let mut groups: Vec<(Vec<usize>, C64)> = Vec::new();
        for (i, &l) in self.eigenvalues.iter().enumerate() {
            match groups.iter_mut().find(|(_, rep)| (*rep - l).norm() <= tol) {
                Some(g) => g.0.push(i),
                None => groups.push((vec![i], l)),
            }
        }
        let n = self.eigenvectors.nrows();
        groups
            .into_iter()
            .map(|(idx, _)| {
                let mean = idx.iter().map(|&i| self.eigenvalues[i]).sum::<C64>() / C64::new(idx.len() as f64, 0.0);
                let mut p = CMatrix::zeros(n, n);
                for &i in &idx {
                    let col = self.eigenvectors.column(i);
                    p += col * col.adjoint();
                }
                (mean, p)
            })
            .collect()
    }
}

/// Eigen-decomposition of a self-adjoint element, eigenvalues ascending and real.
pub fn eig_self_adjoint(a: &AlgebraElement, ctx: &ToleranceContext) -> Result<SpectralDecomposition> {
    let defect = a.self_adjoint_defect();
    if defect > ctx.eq_tol * op_norm(a).max(1.0) {
        return Err(Error::NotSelfAdjoint { defect });
    }
    let (values, vectors) = linalg::hermitian_eigen(a.matrix());
    Ok(SpectralDecomposition {
        eigenvalues: values.into_iter().map(|x| C64::new(x, 0.0)).collect(),
        eigenvectors: vectors,
    })
}

/// Unitary diagonalization of a normal element.
///
/// `A = H + iK` with commuting self-adjoint `H`, `K`, so the self-adjoint
/// `H + cK` shares their eigenvectors unless two eigenvalues of `A` line up
/// along the slope `c`; a few unrelated slopes are tried in turn.
pub fn eig_normal(a: &AlgebraElement, ctx: &ToleranceContext) -> Result<SpectralDecomposition> {
    let norm = op_norm(a);
    let defect = a.normality_defect();
    if defect > ctx.eq_tol * (norm * norm).max(1.0) {
        return Err(Error::NotNormal { defect });
    }
    if a.is_self_adjoint(ctx) {
        return eig_self_adjoint(a, ctx);
    }
    let n = a.dim();
    let m = a.matrix();
    let h = (m + m.adjoint()).scale(0.5);
    let k = (m - m.adjoint()) * C64::new(0.0, -0.5);
    let mut worst = f64::INFINITY;
    for slope in [0.618_033_988_749_894_8, 1.324_717_957_244_746, 0.226_724_920_529_277_4] {
        let (_, v) = linalg::hermitian_eigen(&(&h + k.scale(slope)));
        let t = v.adjoint() * m * &v;
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| t[(i, j)].norm())
            .fold(0.0, f64::max);
        if off <= ctx.spec_tol * norm.max(1.0) {
            return Ok(SpectralDecomposition {
                eigenvalues: (0..n).map(|i| t[(i, i)]).collect(),
                eigenvectors: v,
            });
        }
        worst = worst.min(off);
    }
    Err(Error::EigenNotConverged {
        condition_estimate: worst / norm.max(f64::MIN_POSITIVE),
    })
}

/// A scalar function applied through the calculus.
#[derive(Clone)]
pub struct ScalarFunction {
    name: String,
    evaluator: Arc<dyn Fn(C64) -> C64 + Send + Sync>,
    pub domain_hint: Option<(f64, f64)>,
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("name", &self.name)
            .field("domain_hint", &self.domain_hint)
            .finish()
    }
}

impl ScalarFunction {
    pub fn new(name: impl Into<String>, f: impl Fn(C64) -> C64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            evaluator: Arc::new(f),
            domain_hint: None,
        }
    }

    /// A real function extended to complex arguments through their real part.
    pub fn real(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(name, move |z: C64| C64::new(f(z.re), 0.0))
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain_hint = Some((lo, hi));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, z: C64) -> C64 {
        (self.evaluator)(z)
    }

    pub fn identity() -> Self {
        Self::new("id", |z| z)
    }

    /// `conj(f(z))`.
    pub fn conjugate(&self) -> Self {
        let f = self.evaluator.clone();
        Self::new(format!("conj({})", self.name), move |z| f(z).conj())
    }

    /// Pointwise product.
    pub fn product(&self, other: &Self) -> Self {
        let (f, g) = (self.evaluator.clone(), other.evaluator.clone());
        Self::new(format!("{}*{}", self.name, other.name), move |z| f(z) * g(z))
    }

    /// Named catalog: `sqrt`, `exp`, `log`, `inv`, `abs`, `id`.
    pub fn catalog(name: &str) -> Result<Self> {
        Ok(match name {
            "sqrt" => Self::new("sqrt", |z: C64| z.sqrt()).with_domain(0.0, f64::INFINITY),
            "exp" => Self::new("exp", |z: C64| z.exp()),
            "log" => Self::new("log", |z: C64| {
                if z == ZERO {
                    C64::new(f64::NEG_INFINITY, 0.0)
                } else {
                    z.ln()
                }
            })
            .with_domain(0.0, f64::INFINITY),
            "inv" => Self::new("inv", |z: C64| {
                if z == ZERO {
                    C64::new(f64::INFINITY, 0.0)
                } else {
                    z.inv()
                }
            }),
            "abs" => Self::new("abs", |z: C64| C64::new(z.norm(), 0.0)),
            "id" => Self::identity(),
            other => return Err(Error::UnknownFunction(other.to_string())),
        })
    }
}

/// How the CLI evaluates a catalog entry: directly or through a Chebyshev interpolant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CalculusMethod {
    Spectral(String),
    Chebyshev { degree: usize, name: String },
}

impl CalculusMethod {
    /// Parses `name` or `chebyshev:<degree>:<name>`.
    pub fn parse(spec: &str) -> Result<Self> {
        if let Some(rest) = spec.strip_prefix("chebyshev:") {
            let (deg, name) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected chebyshev:<degree>:<name>, got {spec:?}")))?;
            let degree: i64 = deg
                .parse()
                .map_err(|_| Error::Parse(format!("bad Chebyshev degree {deg:?}")))?;
            if degree < 0 {
                return Err(Error::Precondition(format!(
                    "Chebyshev degree must be >= 0, got {degree}"
                )));
            }
            ScalarFunction::catalog(name)?;
            Ok(Self::Chebyshev {
                degree: degree as usize,
                name: name.to_string(),
            })
        } else {
            ScalarFunction::catalog(spec)?;
            Ok(Self::Spectral(spec.to_string()))
        }
    }

    pub fn apply(&self, a: &AlgebraElement, ctx: &ToleranceContext) -> Result<AlgebraElement> {
        match self {
            Self::Spectral(name) => apply_function(a, &ScalarFunction::catalog(name)?, ctx),
            Self::Chebyshev { degree, name } => chebyshev_calculus(a, &ScalarFunction::catalog(name)?, *degree, ctx),
        }
    }
}

/// `f(A) = sum_j f(lambda_j) P_j` over grouped spectral projectors of a normal `A`.
pub fn apply_function(a: &AlgebraElement, f: &ScalarFunction, ctx: &ToleranceContext) -> Result<AlgebraElement> {
    let dec = eig_normal(a, ctx)?;
    let n = a.dim();
    let mut out = CMatrix::zeros(n, n);
    for (lambda, p) in dec.spectral_projectors(ctx.spec_tol) {
        let v = f.eval(lambda);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFiniteFunction {
                re: lambda.re,
                im: lambda.im,
            });
        }
        out += p * v;
    }
    Ok(AlgebraElement::from_matrix_unchecked(out))
}

/// Polynomial coefficients in ascending degree, with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialCoeffs(Vec<C64>);

impl PolynomialCoeffs {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.0.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self(Vec::new());
        }
        let mut out = vec![ZERO; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

/// Horner evaluation of `p(A)`.
pub fn apply_polynomial(a: &AlgebraElement, p: &PolynomialCoeffs) -> AlgebraElement {
    let n = a.dim();
    let mut acc = CMatrix::zeros(n, n);
    for &c in p.coeffs().iter().rev() {
        acc = &acc * a.matrix();
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    AlgebraElement::from_matrix_unchecked(acc)
}

/// Chebyshev interpolant of a function on `[-radius, radius]`, stored in the
/// scaled variable `s = t / radius`.
#[derive(Debug, Clone)]
pub struct ChebyshevInterpolant {
    pub radius: f64,
    /// Coefficients of `T_k(s)`.
    pub chebyshev_coeffs: Vec<C64>,
}

impl ChebyshevInterpolant {
    /// Interpolates at the `degree + 1` Chebyshev points of the first kind.
    pub fn new(f: &ScalarFunction, degree: usize, radius: f64) -> Self {
        let m = degree + 1;
        let nodes: Vec<f64> = (0..m).map(|j| (PI * (j as f64 + 0.5) / m as f64).cos()).collect();
        let values: Vec<C64> = nodes.iter().map(|&s| f.eval(C64::new(radius * s, 0.0))).collect();
        let coeffs = (0..m)
            .map(|k| {
                let sum: C64 = nodes
                    .iter()
                    .zip(&values)
                    .map(|(&s, &v)| v * (k as f64 * s.acos()).cos())
                    .sum();
                let w = if k == 0 { 1.0 } else { 2.0 } / m as f64;
                sum * w
            })
            .collect();
        Self {
            radius,
            chebyshev_coeffs: coeffs,
        }
    }

    /// Clenshaw evaluation at `t`.
    pub fn eval(&self, t: C64) -> C64 {
        let s = t / self.radius;
        let (mut b1, mut b2) = (ZERO, ZERO);
        for &c in self.chebyshev_coeffs.iter().skip(1).rev() {
            let b0 = c + s * b1 * 2.0 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.chebyshev_coeffs[0] + s * b1 - b2
    }

    /// Monomial coefficients in the scaled variable `s`.
    pub fn monomial_coeffs_scaled(&self) -> PolynomialCoeffs {
        let m = self.chebyshev_coeffs.len();
        let mut out = vec![ZERO; m];
        // T_0 = 1, T_1 = s, T_{k+1} = 2 s T_k - T_{k-1}
        let mut t_prev = vec![0.0; m];
        let mut t_cur = vec![0.0; m];
        t_prev[0] = 1.0;
        if m > 1 {
            t_cur[1] = 1.0;
        }
        for (k, &c) in self.chebyshev_coeffs.iter().enumerate() {
            let tk = match k {
                0 => &t_prev,
                _ => &t_cur,
            };
            for (o, &t) in out.iter_mut().zip(tk.iter()) {
                *o += c * t;
            }
            if k >= 1 && k + 1 < m {
                let mut next = vec![0.0; m];
                for i in 0..m - 1 {
                    next[i + 1] += 2.0 * t_cur[i];
                }
                for i in 0..m {
                    next[i] -= t_prev[i];
                }
                t_prev = std::mem::replace(&mut t_cur, next);
            }
        }
        PolynomialCoeffs::new(out)
    }

    /// Largest `|f - p|` over the given points.
    pub fn max_error_on(&self, f: &ScalarFunction, points: &[C64]) -> f64 {
        points
            .iter()
            .map(|&z| (f.eval(z) - self.eval(z)).norm())
            .fold(0.0, f64::max)
    }
}

/// Polynomial route to `f(A)` for self-adjoint `A`: Chebyshev interpolation of
/// `f` on `[-||A||, ||A||]`, evaluated with [`apply_polynomial`].
pub fn chebyshev_calculus(
    a: &AlgebraElement,
    f: &ScalarFunction,
    degree: usize,
    ctx: &ToleranceContext,
) -> Result<AlgebraElement> {
    let defect = a.self_adjoint_defect();
    let norm = op_norm(a);
    if defect > ctx.eq_tol * norm.max(1.0) {
        return Err(Error::NotSelfAdjoint { defect });
    }
    let radius = if norm > 0.0 { norm } else { 1.0 };
    let interp = ChebyshevInterpolant::new(f, degree, radius);
    let p = interp.monomial_coeffs_scaled();
    Ok(apply_polynomial(&a.scale_real(1.0 / radius), &p))
}

/// The unique positive square root of a positive element.
pub fn sqrt_psd(a: &AlgebraElement, ctx: &ToleranceContext) -> Result<AlgebraElement> {
    let dec = eig_self_adjoint(a, ctx)?;
    let lowest = dec.eigenvalues.first().map(|z| z.re).unwrap_or(0.0);
    if lowest < -ctx.spec_tol {
        return Err(Error::NotPositive { eigenvalue: lowest });
    }
    let v = &dec.eigenvectors;
    let roots: Vec<C64> = dec
        .eigenvalues
        .iter()
        .map(|z| C64::new(z.re.max(0.0).sqrt(), 0.0))
        .collect();
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(roots));
    Ok(AlgebraElement::from_matrix_unchecked(v * d * v.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    #[test]
    fn eig_of_diagonal_and_pauli() {
        let d = eig_self_adjoint(&AlgebraElement::diag_real(&[1.0, -2.0]), &ctx()).unwrap();
        assert_eq!(d.eigenvalues, vec![c(-2.0, 0.0), c(1.0, 0.0)]);
        for i in 0..2 {
            for j in 0..2 {
                let want = if i + j == 1 { 1.0 } else { 0.0 };
                assert!((d.eigenvectors[(i, j)].norm() - want).abs() < 1e-14);
            }
        }
        let sx = AlgebraElement::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let d = eig_self_adjoint(&sx, &ctx()).unwrap();
        assert!((d.eigenvalues[0].re + 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // eigenvector for -1 is (1,-1)/sqrt2 up to phase
        let v = d.eigenvectors.column(0);
        assert!((v[0].norm() - s).abs() < 1e-14 && (v[0] + v[1]).norm() < 1e-14);
    }

    #[test]
    fn not_self_adjoint_reports_defect() {
        let j = AlgebraElement::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        match eig_self_adjoint(&j, &ctx()) {
            Err(Error::NotSelfAdjoint { defect }) => assert!((defect - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            apply_function(&j, &ScalarFunction::identity(), &ctx()),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn sqrt_of_diagonal() {
        let f = ScalarFunction::catalog("sqrt").unwrap();
        let r = apply_function(&AlgebraElement::diag_real(&[1.0, 4.0, 9.0]), &f, &ctx()).unwrap();
        assert!(r.approx_eq(&AlgebraElement::diag_real(&[1.0, 2.0, 3.0]), 1e-14));
        assert!(sqrt_psd(&AlgebraElement::diag_real(&[4.0, 9.0]), &ctx())
            .unwrap()
            .approx_eq(&AlgebraElement::diag_real(&[2.0, 3.0]), 1e-14));
        assert!(sqrt_psd(&AlgebraElement::unit(4), &ctx())
            .unwrap()
            .approx_eq(&AlgebraElement::unit(4), 1e-14));
    }

    #[test]
    fn sqrt_rejects_negative() {
        match sqrt_psd(&AlgebraElement::diag_real(&[1.0, -0.5]), &ctx()) {
            Err(Error::NotPositive { eigenvalue }) => assert_eq!(eigenvalue, -0.5),
            other => panic!("{other:?}"),
        }
        // noise below spec_tol is clamped
        assert!(sqrt_psd(&AlgebraElement::diag_real(&[1.0, -1e-12]), &ctx()).is_ok());
    }

    #[test]
    fn inv_at_zero_names_the_eigenvalue() {
        let f = ScalarFunction::catalog("inv").unwrap();
        match apply_function(&AlgebraElement::diag_real(&[0.0, 2.0]), &f, &ctx()) {
            Err(Error::NonFiniteFunction { re, im }) => assert_eq!((re, im), (0.0, 0.0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn polynomial_basics() {
        let a = AlgebraElement::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert_eq!(apply_polynomial(&a, &PolynomialCoeffs::real(&[0.0, 1.0])), a);
        let j = AlgebraElement::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert_eq!(
            apply_polynomial(&j, &PolynomialCoeffs::real(&[0.0, 0.0, 1.0])),
            AlgebraElement::zero(2)
        );
        assert_eq!(PolynomialCoeffs::real(&[1.0, 0.0, 0.0]).degree(), Some(0));
        assert!(PolynomialCoeffs::real(&[0.0]).is_zero());
    }

    #[test]
    fn chebyshev_reproduces_quadratics() {
        let a = AlgebraElement::from_real_rows(&[&[0.3, 0.2], &[0.2, -0.7]]).unwrap();
        let sq = ScalarFunction::new("sq", |z| z * z);
        let p = chebyshev_calculus(&a, &sq, 2, &ctx()).unwrap();
        let e = apply_function(&a, &sq, &ctx()).unwrap();
        assert!(p.approx_eq(&e, 1e-12));
    }

    #[test]
    fn chebyshev_abs_degree_one() {
        let a = AlgebraElement::diag_real(&[-1.0, 1.0]);
        let f = ScalarFunction::catalog("abs").unwrap();
        let p = chebyshev_calculus(&a, &f, 1, &ctx()).unwrap();
        let e = apply_function(&a, &f, &ctx()).unwrap();
        // nodes +-cos(pi/4): the interpolant is the constant 1/sqrt(2)
        let interp = ChebyshevInterpolant::new(&f, 1, 1.0);
        let scalar = interp.max_error_on(&f, &[c(-1.0, 0.0), c(1.0, 0.0)]);
        assert!((scalar - (1.0 - std::f64::consts::FRAC_1_SQRT_2)).abs() < 1e-15);
        assert!((op_norm(&(&p - &e)) - scalar).abs() < 1e-14);
    }

    #[test]
    fn method_parsing() {
        assert_eq!(
            CalculusMethod::parse("chebyshev:16:exp").unwrap(),
            CalculusMethod::Chebyshev {
                degree: 16,
                name: "exp".into()
            }
        );
        assert!(matches!(
            CalculusMethod::parse("chebyshev:-1:exp"),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(CalculusMethod::parse("cosh"), Err(Error::UnknownFunction(_))));
        assert!(CalculusMethod::parse("chebyshev:3").is_err());
    }
}
