//! Position and momentum on polynomials of bounded degree, with exact
//! Gaussian-rational coefficients.

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Exact = Complex<Rational64>;

fn q(n: i64) -> Exact {
    Complex::new(Rational64::from_integer(n), Rational64::zero())
}

fn i_unit() -> Exact {
    Complex::new(Rational64::zero(), Rational64::one())
}

/// `X` multiplies by `t`, `P = -i d/dt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyAtom {
    X,
    P,
}

/// A composition of atoms, applied right to left, on polynomials of degree `<= max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialOperator {
    pub max_degree: usize,
    /// `atoms[0]` is applied last.
    pub atoms: Vec<PolyAtom>,
}

impl PolynomialOperator {
    pub fn new(max_degree: usize, atoms: Vec<PolyAtom>) -> Self {
        Self { max_degree, atoms }
    }

    pub fn x_power(max_degree: usize, n: usize) -> Self {
        Self::new(max_degree, vec![PolyAtom::X; n])
    }

    /// `self` after `other`.
    pub fn then_after(&self, other: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        Self::new(self.max_degree, atoms)
    }

    /// Coefficients in ascending degree; errors if an intermediate leaves the space.
    pub fn apply(&self, coeffs: &[Exact]) -> Result<Vec<Exact>> {
        let mut v = coeffs.to_vec();
        for atom in self.atoms.iter().rev() {
            v = match atom {
                PolyAtom::X => {
                    if v.last().is_some_and(|c| !c.is_zero()) && v.len() > self.max_degree {
                        return Err(Error::Precondition(format!(
                            "X leaves polynomials of degree <= {}",
                            self.max_degree
                        )));
                    }
                    let mut out = vec![Exact::zero(); v.len() + 1];
                    out[1..].clone_from_slice(&v);
                    out
                }
                PolyAtom::P => v
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(d, c)| c * q(d as i64) * (-i_unit()))
                    .collect(),
            };
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
        }
        Ok(v)
    }
}

fn monomial(m: usize) -> Vec<Exact> {
    let mut v = vec![Exact::zero(); m + 1];
    v[m] = Exact::one();
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyCommutatorReport {
    pub n_max: usize,
    pub max_degree: usize,
    pub identities_checked: usize,
    /// Number of `(n, m)` cases with any nonzero residual coefficient.
    pub failures: usize,
    pub first_failure: Option<(usize, usize)>,
}

impl PolyCommutatorReport {
    pub fn exact(&self) -> bool {
        self.failures == 0
    }
}

/// `X^n P - P X^n = i n X^{n-1}` on each monomial `t^m`, `m <= D - n`, for `1 <= n <= n_max`.
pub fn poly_commutator_check(n_max: usize, max_degree: usize) -> Result<PolyCommutatorReport> {
    if max_degree < n_max {
        return Err(Error::Precondition(format!(
            "degree bound {max_degree} is below n_max {n_max}"
        )));
    }
    let p = PolynomialOperator::new(max_degree, vec![PolyAtom::P]);
    let mut report = PolyCommutatorReport {
        n_max,
        max_degree,
        identities_checked: 0,
        failures: 0,
        first_failure: None,
    };
    for n in 1..=n_max {
        let xn = PolynomialOperator::x_power(max_degree, n);
        let xn1 = PolynomialOperator::x_power(max_degree, n - 1);
        for m in 0..=max_degree - n {
            let t = monomial(m);
            let a = xn.then_after(&p).apply(&t)?;
            let b = p.then_after(&xn).apply(&t)?;
            let rhs: Vec<Exact> = xn1.apply(&t)?.into_iter().map(|c| c * i_unit() * q(n as i64)).collect();
            let len = a.len().max(b.len()).max(rhs.len());
            let at = |v: &Vec<Exact>, k: usize| v.get(k).copied().unwrap_or_else(Exact::zero);
            let ok = (0..len).all(|k| at(&a, k) - at(&b, k) == at(&rhs, k));
            report.identities_checked += 1;
            if !ok {
                report.failures += 1;
                report.first_failure.get_or_insert((n, m));
            }
        }
    }
    Ok(report)
}
