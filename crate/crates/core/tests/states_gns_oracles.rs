mod common;

use common::*;
use opalg::algebra::{generated_subalgebra, op_norm, AlgebraElement, SubalgebraBasis};
use opalg::gns::{
    commutant_dim, equivalence_intertwiner, gns_construct, is_irreducible, left_kernel, vector_state, verify_gns,
    CyclicRepresentation,
};
use opalg::random::{gaussian_c64, random_density, random_element, random_hermitian, random_psd, random_unitary, rng};
use opalg::states::{
    characters_of_commutative, cone_checks, jordan_product, positivity_paths, riesz_markov_weights, state_sup_norm,
    DensityFunctional, FiniteFunctionAlgebra, ProductOutcome,
};
use opalg::{CMatrix, CVector, ToleranceContext, C64};
use rand::Rng;

fn ctx() -> ToleranceContext {
    ToleranceContext::default()
}

fn e(n: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[i] = c(1.0, 0.0);
    v
}

fn pauli() -> [AlgebraElement; 3] {
    [
        AlgebraElement::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap(),
        AlgebraElement::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
        ))
        .unwrap(),
        AlgebraElement::diag_real(&[1.0, -1.0]),
    ]
}

#[test]
fn positivity_paths_agree_on_500_hermitian() {
    let mut r = rng(200);
    for i in 0..500 {
        let h = random_hermitian(1 + i % 6, &mut r);
        // shift half of them towards the positive cone so both outcomes occur
        let shift = if i % 2 == 0 {
            2.0 * op_norm(&h) * r.random::<f64>()
        } else {
            0.0
        };
        let h = &h + &AlgebraElement::unit(h.dim()).scale_real(shift);
        let p = positivity_paths(&h, &ctx());
        assert!(p.agree(), "{p:?}");
        let min = durand_kerner(&char_poly(h.matrix()))
            .iter()
            .map(|z| z.re)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(p.by_spectrum, min >= -ctx().spec_tol);
    }
}

#[test]
fn product_of_positive_pair_has_real_spectrum() {
    // PQ is similar to sqrt(P) Q sqrt(P), so no PSD pair gives non-real spectrum;
    // a random search for such a witness must come up empty
    let mut r = rng(201);
    let mut noncommuting = 0;
    for _ in 0..10_000 {
        let p = random_psd(2, 2, &mut r);
        let q = random_psd(2, 2, &mut r);
        let pq = &p * &q;
        let roots = durand_kerner(&char_poly(pq.matrix()));
        let scale = op_norm(&pq).max(1.0);
        assert!(roots
            .iter()
            .all(|z| z.im.abs() <= 1e-8 * scale && z.re >= -1e-8 * scale));
        let report = cone_checks(&p, &q, &ctx()).unwrap();
        assert!(report.holds());
        if report.product == ProductOutcome::HypothesisUnmet {
            noncommuting += 1;
        }
    }
    assert!(noncommuting > 9_000);
    let p = AlgebraElement::diag_real(&[1.0, 0.0]);
    let q = AlgebraElement::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
    assert_eq!(
        cone_checks(&p, &q, &ctx()).unwrap().product,
        ProductOutcome::HypothesisUnmet
    );
    let d = AlgebraElement::diag_real(&[2.0, 3.0]);
    assert_eq!(cone_checks(&p, &d, &ctx()).unwrap().product, ProductOutcome::Positive);
}

#[test]
fn functional_norm_sampling_and_maximizer() {
    let mut r = rng(202);
    let d = random_hermitian(4, &mut r);
    let rho = DensityFunctional::new(d.matrix().clone(), &ctx()).unwrap();
    let norm = rho.functional_norm();
    let trace_abs: f64 = durand_kerner(&char_poly(d.matrix())).iter().map(|z| z.re.abs()).sum();
    assert!((norm - trace_abs).abs() <= 1e-10 * trace_abs);
    for _ in 0..10_000 {
        let a = random_element(4, &mut r);
        let a = a.scale_real(1.0 / op_norm(&a));
        assert!(rho.eval(&a).norm() <= norm + 1e-12);
    }
    let m = rho.norming_element();
    assert!((op_norm(&m) - 1.0).abs() <= 1e-12);
    assert!((rho.eval(&m).norm() - norm).abs() <= 1e-12 * norm.max(1.0));
}

#[test]
fn state_is_hermitian_functional() {
    let mut r = rng(203);
    let rho = DensityFunctional::new(random_density(4, 3, &mut r).into_matrix(), &ctx()).unwrap();
    for _ in 0..50 {
        let a = random_element(4, &mut r);
        let direct = (rho.density() * a.matrix().adjoint()).trace();
        assert!((rho.eval(&a.adjoint()) - direct).norm() <= 1e-12);
        assert!((direct - rho.eval(&a).conj()).norm() <= 1e-12);
    }
}

#[test]
fn maximally_mixed_variance_of_sigma_z() {
    let rho = DensityFunctional::maximally_mixed(2);
    let (pure, var) = rho.purity_and_variance(&pauli()[2], &ctx()).unwrap();
    assert!(!pure);
    // tr(I/2 sz^2) - tr(I/2 sz)^2 = 1 - 0
    assert!((var - 1.0).abs() <= 1e-15);
}

#[test]
fn jordan_products() {
    let [sx, sy, _] = pauli();
    assert!(op_norm(&jordan_product(&sx, &sy).unwrap()) <= 1e-15);
    let mut r = rng(204);
    let a = random_hermitian(4, &mut r);
    assert!(jordan_product(&a, &a).unwrap().distance(&(&a * &a)) <= 1e-12 * op_norm(&a).powi(2));
    for n in 1..=5u32 {
        for m in 1..=(6 - n) {
            let lhs = jordan_product(&a.pow(n), &a.pow(m)).unwrap();
            let rhs = a.pow(n + m);
            assert!(lhs.distance(&rhs) <= 1e-11 * op_norm(&rhs).max(1.0));
        }
    }
}

#[test]
fn sup_norm_of_square() {
    let mut r = rng(205);
    for _ in 0..20 {
        let a = random_hermitian(5, &mut r);
        let radius = durand_kerner(&char_poly(a.matrix()))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let s1 = state_sup_norm(&a, 200, &mut r, &ctx()).unwrap();
        let s2 = state_sup_norm(&(&a * &a), 0, &mut r, &ctx()).unwrap();
        assert!((s1.exact - radius).abs() <= 1e-9 * radius);
        assert!(s1.sampled <= s1.exact + 1e-12);
        assert!((s2.exact - s1.exact * s1.exact).abs() <= 1e-12 * s2.exact);
    }
}

#[test]
fn diagonal_characters_are_coordinates() {
    let d = SubalgebraBasis::diagonal(3);
    let chars = characters_of_commutative(&d, &ctx()).unwrap();
    assert_eq!(chars.len(), 3);
    let probe = AlgebraElement::diag_real(&[5.0, -1.0, 2.5]);
    let mut values: Vec<f64> = chars.iter().map(|ch| ch.eval(&probe).re).collect();
    values.sort_by(f64::total_cmp);
    assert_eq!(values, vec![-1.0, 2.5, 5.0]);
}

#[test]
fn circulant_characters_are_fourier_modes() {
    let mut shift = CMatrix::zeros(4, 4);
    for k in 0..4 {
        shift[((k + 1) % 4, k)] = c(1.0, 0.0);
    }
    let s = AlgebraElement::new(shift.clone()).unwrap();
    let alg = generated_subalgebra(std::slice::from_ref(&s), &ctx()).unwrap();
    let chars = characters_of_commutative(&alg, &ctx()).unwrap();
    assert_eq!(chars.len(), 4);
    let f = dft(4);
    for ch in &chars {
        // rank-one projector onto one DFT column, with chi(S) its eigenvalue
        let col = (0..4)
            .map(|k| f.column(k).into_owned())
            .find(|v| (&ch.projector * v - v).norm() <= 1e-10)
            .expect("projector onto a Fourier mode");
        let lambda = col.dotc(&(&shift * &col));
        assert!((ch.eval(&s) - lambda).norm() <= 1e-10);
        for b in alg.basis() {
            for b2 in alg.basis() {
                let lhs = ch.eval(&(b * b2));
                assert!((lhs - ch.eval(b) * ch.eval(b2)).norm() <= 1e-10);
            }
        }
    }
}

#[test]
fn riesz_markov_round_trip() {
    let mut r = rng(206);
    let alg = FiniteFunctionAlgebra::with_size(6).unwrap();
    let w: Vec<f64> = (0..6).map(|_| r.random::<f64>()).collect();
    let t: f64 = w.iter().sum();
    let w: Vec<f64> = w.iter().map(|x| x / t).collect();
    let back = riesz_markov_weights(&alg, |f| f.values.iter().zip(&w).map(|(v, x)| v * x).sum(), &ctx()).unwrap();
    for _ in 0..10 {
        let f = alg.element((0..6).map(|_| gaussian_c64(&mut r)).collect()).unwrap();
        let direct: C64 = f.values.iter().zip(&w).map(|(v, x)| v * x).sum();
        let via: C64 = f.values.iter().zip(&back).map(|(v, x)| v * x).sum();
        assert!((direct - via).norm() <= 1e-12);
    }
}

#[test]
fn faithful_state_has_trivial_kernel_and_isometric_rep() {
    let mut r = rng(207);
    let alg = SubalgebraBasis::full(3);
    let rho = DensityFunctional::new(random_density(3, 3, &mut r).into_matrix(), &ctx()).unwrap();
    assert!(left_kernel(&alg, &rho, &ctx()).unwrap().is_empty());
    let g = gns_construct(&alg, &rho, &ctx()).unwrap();
    for _ in 0..10 {
        let a = random_element(3, &mut r);
        let rep = g.rep(&alg, &a);
        assert!((power_norm(&rep) - power_norm(a.matrix())).abs() <= 1e-9 * op_norm(&a));
    }
    assert!(verify_gns(&g, &alg, &rho, &ctx()).isometry.unwrap() <= 1e-9);
}

#[test]
fn pure_state_kernel_annihilates_e1() {
    let alg = SubalgebraBasis::full(2);
    let rho = DensityFunctional::vector_state(&e(2, 0));
    let kernel = left_kernel(&alg, &rho, &ctx()).unwrap();
    assert_eq!(kernel.len(), 2);
    for k in &kernel {
        assert!((k.matrix() * e(2, 0)).norm() <= 1e-12);
    }
    // and {A : A e1 = 0} = span{E12, E22} is exactly 2-dimensional
    let mats: Vec<CMatrix> = kernel.iter().map(|k| k.matrix().clone()).collect();
    let mut all = mats.clone();
    all.push(CMatrix::from_row_slice(
        2,
        2,
        &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
    ));
    all.push(CMatrix::from_row_slice(
        2,
        2,
        &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
    ));
    assert_eq!(span_rank(&all, 1e-10), 2);
}

#[test]
fn tracial_gns_is_left_multiplication_on_frobenius_space() {
    let alg = SubalgebraBasis::full(2);
    let g = gns_construct(&alg, &DensityFunctional::maximally_mixed(2), &ctx()).unwrap();
    assert_eq!(g.hilbert_dim, 4);
    // <A, B> = tr(A* B)/2 makes sqrt2 E_ij orthonormal; L_A acts by A (x) I
    let units: Vec<CMatrix> = (0..4)
        .map(|k| {
            let mut m = CMatrix::zeros(2, 2);
            m[(k % 2, k / 2)] = c(2f64.sqrt(), 0.0);
            m
        })
        .collect();
    let coords = |m: &CMatrix| CVector::from_fn(4, |k, _| (units[k].adjoint() * m).trace() / 2.0);
    let rep_basis = alg
        .basis()
        .iter()
        .map(|b| {
            let mut l = CMatrix::zeros(4, 4);
            for (k, u) in units.iter().enumerate() {
                l.set_column(k, &coords(&(b.matrix() * u)));
            }
            l
        })
        .collect();
    let explicit = CyclicRepresentation {
        rep_basis,
        cyclic_vector: coords(&CMatrix::identity(2, 2)),
    };
    assert!((explicit.cyclic_vector.norm() - 1.0).abs() <= 1e-15);
    let u = equivalence_intertwiner(&g.representation, &explicit, &ctx()).unwrap();
    assert!(u.defect <= 1e-10);
    assert!(!is_irreducible(&g.representation, &ctx()));
    assert_eq!(commutant_dim(&g.representation, &ctx()), 4);
}

#[test]
fn pure_gns_equals_defining_representation() {
    for n in 2..=6 {
        let alg = SubalgebraBasis::full(n);
        let g = gns_construct(&alg, &DensityFunctional::vector_state(&e(n, 0)), &ctx()).unwrap();
        assert_eq!(g.hilbert_dim, n);
        assert!(is_irreducible(&g.representation, &ctx()));
        let u = equivalence_intertwiner(
            &g.representation,
            &CyclicRepresentation::defining(&alg, e(n, 0)),
            &ctx(),
        )
        .unwrap();
        assert!(u.defect <= 1e-10);
        assert!(verify_gns(&g, &alg, &DensityFunctional::vector_state(&e(n, 0)), &ctx()).passed(&ctx()));
    }
}

#[test]
fn planted_unitary_recovered_up_to_phase() {
    let mut r = rng(208);
    let alg = SubalgebraBasis::full(3);
    let rho = DensityFunctional::new(random_density(3, 2, &mut r).into_matrix(), &ctx()).unwrap();
    let g = gns_construct(&alg, &rho, &ctx()).unwrap();
    for _ in 0..5 {
        let v = random_unitary(g.hilbert_dim, &mut r).into_matrix();
        let u = equivalence_intertwiner(&g.representation, &g.representation.conjugated(&v), &ctx()).unwrap();
        assert!(
            u.defect <= 1e-10,
            "{:e} {:e} {:e}",
            u.defect,
            u.unitarity_defect,
            u.cyclic_defect
        );
        // the phase is fixed by the cyclic vectors, so U equals V outright
        assert!(max_abs(&(&u.matrix - &v)) <= 1e-9);
    }
}

#[test]
fn vector_states_of_pure_gns_are_equivalent() {
    let mut r = rng(209);
    let alg = SubalgebraBasis::full(3);
    let rho = DensityFunctional::vector_state(&e(3, 0));
    let g = gns_construct(&alg, &rho, &ctx()).unwrap();
    let y = g.cyclic_vector().clone();
    let same = vector_state(&g, &y, &alg, &ctx()).unwrap();
    assert!(max_abs(&(same.density() - rho.density())) <= 1e-12);
    for _ in 0..5 {
        let y = opalg::random::random_unit_vector(3, &mut r);
        let omega = vector_state(&g, &y, &alg, &ctx()).unwrap();
        let gy = gns_construct(&alg, &omega, &ctx()).unwrap();
        let u = equivalence_intertwiner(
            &gy.representation,
            &CyclicRepresentation {
                rep_basis: g.representation.rep_basis.clone(),
                cyclic_vector: y,
            },
            &ctx(),
        )
        .unwrap();
        assert!(u.defect <= 1e-9);
    }
}
