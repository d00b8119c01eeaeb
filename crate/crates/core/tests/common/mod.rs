//! Reference computations for the integration tests. Nothing here calls into
//! the eigen or SVD routines the library itself relies on.
#![allow(dead_code)]

use opalg::{CMatrix, CVector, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest singular value by power iteration on `A* A`.
pub fn power_norm(a: &CMatrix) -> f64 {
    let n = a.ncols();
    let ata = a.adjoint() * a;
    let mut v = CVector::from_fn(n, |i, _| c(1.0 + 0.1 * i as f64, 0.3 - 0.05 * i as f64));
    v /= c(v.norm(), 0.0);
    let mut lambda = 0.0;
    for _ in 0..5000 {
        let w = &ata * &v;
        let next = w.norm();
        if next == 0.0 {
            return 0.0;
        }
        v = w / c(next, 0.0);
        if (next - lambda).abs() <= 1e-15 * next {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda.sqrt()
}

/// Gauss-Jordan inverse with partial pivoting.
pub fn gauss_inverse(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let mut m = a.clone();
    let mut inv = CMatrix::identity(n, n);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[(i, col)].norm().total_cmp(&m[(j, col)].norm()))
            .unwrap();
        m.swap_rows(col, piv);
        inv.swap_rows(col, piv);
        let p = m[(col, col)];
        assert!(p.norm() > 1e-300, "singular");
        for j in 0..n {
            m[(col, j)] /= p;
            inv[(col, j)] /= p;
        }
        for i in 0..n {
            if i != col {
                let f = m[(i, col)];
                for j in 0..n {
                    let (mc, ic) = (m[(col, j)], inv[(col, j)]);
                    m[(i, j)] -= f * mc;
                    inv[(i, j)] -= f * ic;
                }
            }
        }
    }
    inv
}

/// Monic characteristic polynomial coefficients `c_0..c_n` (c_n = 1) by
/// Faddeev-LeVerrier.
pub fn char_poly(a: &CMatrix) -> Vec<C64> {
    let n = a.nrows();
    let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
    coeffs[n] = c(1.0, 0.0);
    let id = CMatrix::identity(n, n);
    let mut m = CMatrix::zeros(n, n);
    for k in 1..=n {
        m = a * &m + &id * coeffs[n - k + 1];
        let am = a * &m;
        coeffs[n - k] = -am.trace() / c(k as f64, 0.0);
    }
    coeffs
}

/// Roots of a monic polynomial by Durand-Kerner.
pub fn durand_kerner(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let eval = |z: C64| coeffs.iter().rev().fold(c(0.0, 0.0), |acc, &k| acc * z + k);
    let bound = 1.0 + coeffs[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let seed = c(0.4, 0.9);
    let mut roots: Vec<C64> = (0..n).map(|k| seed.powu(k as u32) * bound).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut denom = c(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    // polish with Newton on the polynomial itself
    let deriv: Vec<C64> = (1..=n).map(|k| coeffs[k] * k as f64).collect();
    let deval = |z: C64| deriv.iter().rev().fold(c(0.0, 0.0), |acc, &k| acc * z + k);
    for r in &mut roots {
        for _ in 0..3 {
            let d = deval(*r);
            if d.norm() > 0.0 {
                *r -= eval(*r) / d;
            }
        }
    }
    roots
}

/// Max over `a` of the distance to its greedily matched partner in `b`.
pub fn greedy_match(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Entries `omega^{jk} / sqrt(n)` with `omega = e^{2 pi i / n}`, built from
/// explicit angles.
pub fn dft(n: usize) -> CMatrix {
    let s = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |j, k| {
        C64::from_polar(s, 2.0 * std::f64::consts::PI * ((j * k) % n) as f64 / n as f64)
    })
}

/// Lagrange basis polynomial for node `i` evaluated at matrix `a`.
pub fn lagrange_at(a: &CMatrix, nodes: &[C64], i: usize) -> CMatrix {
    let n = a.nrows();
    let mut out = CMatrix::identity(n, n);
    for (j, &x) in nodes.iter().enumerate() {
        if j != i {
            out = out * (a - CMatrix::identity(n, n) * x) / (nodes[i] - x);
        }
    }
    out
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Frobenius-Gram rank of a family of matrices by Gram-Schmidt.
pub fn span_rank(mats: &[CMatrix], tol: f64) -> usize {
    let mut basis: Vec<CMatrix> = Vec::new();
    for m in mats {
        let mut r = m.clone();
        for _ in 0..2 {
            for b in &basis {
                let coef: C64 = b.iter().zip(r.iter()).map(|(x, y)| x.conj() * y).sum();
                r -= b * coef;
            }
        }
        let nr = r.norm();
        if nr > tol * m.norm().max(1e-300) {
            basis.push(r / c(nr, 0.0));
        }
    }
    basis.len()
}
