use opalg::algebra::{multiset_distance, op_norm, spectrum};
use opalg::calculus::{apply_function, eig_normal, ScalarFunction};
use opalg::random::{random_density, random_element, random_hermitian, random_normal, random_unitary, rng};
use opalg::states::{positivity_paths, DensityFunctional};
use opalg::suite::{run, Command, RunConfig};
use opalg::weyl::{check_weyl_relations, symplectic_form, uncertainty_check, DiscreteWeylSystem, GridRep, PhasePoint};
use opalg::{AlgebraElement, ToleranceContext, C64};
use proptest::prelude::*;

fn ctx() -> ToleranceContext {
    ToleranceContext::default()
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(48)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn cstar_identity(seed in any::<u64>(), n in 1usize..7) {
        let a = random_element(n, &mut rng(seed));
        let norm = op_norm(&a);
        let lhs = op_norm(&(&a.adjoint() * &a));
        prop_assert!((lhs - norm * norm).abs() <= 1e-12 * (norm * norm).max(1.0));
    }

    #[test]
    fn radius_below_norm_and_adjoint_spectrum(seed in any::<u64>(), n in 1usize..7) {
        let a = random_element(n, &mut rng(seed));
        let s = spectrum(&a, &ctx()).unwrap();
        prop_assert_eq!(s.eigenvalues.len(), n);
        prop_assert!(s.radius <= op_norm(&a) * (1.0 + 1e-12));
        let adj = spectrum(&a.adjoint(), &ctx()).unwrap();
        let conj: Vec<C64> = s.eigenvalues.iter().map(|z| z.conj()).collect();
        prop_assert!(multiset_distance(&adj.eigenvalues, &conj) <= 1e-8 * op_norm(&a).max(1.0));
    }

    #[test]
    fn calculus_is_a_star_homomorphism(seed in any::<u64>(), n in 1usize..6) {
        let a = random_normal(n, &mut rng(seed));
        let f = ScalarFunction::new("f", |z: C64| (z * 0.5).exp());
        let g = ScalarFunction::new("g", |z: C64| z * z - z * C64::new(0.0, 2.0) + 1.0);
        let fa = apply_function(&a, &f, &ctx()).unwrap();
        let ga = apply_function(&a, &g, &ctx()).unwrap();
        let fga = apply_function(&a, &f.product(&g), &ctx()).unwrap();
        let scale = op_norm(&fa).max(1.0) * op_norm(&ga).max(1.0);
        prop_assert!(fga.distance(&(&fa * &ga)) <= 1e-8 * scale);
        let fbar = apply_function(&a, &f.conjugate(), &ctx()).unwrap();
        prop_assert!(fbar.distance(&fa.adjoint()) <= 1e-8 * op_norm(&fa).max(1.0));
        let id = apply_function(&a, &ScalarFunction::identity(), &ctx()).unwrap();
        prop_assert!(id.distance(&a) <= 1e-8 * op_norm(&a).max(1.0));
    }

    // Repeated eigenvalues used to stall the Schur route.
    #[test]
    fn normal_with_repeated_eigenvalues(seed in any::<u64>(), n in 2usize..7, distinct in 1usize..3) {
        let mut r = rng(seed);
        let u = random_unitary(n, &mut r);
        let pool = [C64::new(1.0, 2.0), C64::new(-0.5, 0.25), C64::new(0.0, -1.0)];
        let d: Vec<C64> = (0..n).map(|i| pool[i % distinct]).collect();
        let a = AlgebraElement::new(u.matrix() * AlgebraElement::diag(&d).matrix() * u.matrix().adjoint()).unwrap();
        let dec = eig_normal(&a, &ctx()).unwrap();
        prop_assert!(dec.reconstruct().distance(&a) <= 1e-9);
        prop_assert!(multiset_distance(&dec.eigenvalues, &d) <= 1e-9);
    }

    #[test]
    fn positivity_paths_agree(seed in any::<u64>(), n in 1usize..6, shift in -3.0f64..3.0) {
        let h = random_hermitian(n, &mut rng(seed));
        let a = &h + &AlgebraElement::unit(n).scale_real(shift);
        let p = positivity_paths(&a, &ctx());
        // skip elements sitting on the boundary of the cone
        prop_assume!(p.min_eigenvalue.abs() > 1e-6);
        prop_assert!(p.agree());
        prop_assert_eq!(p.by_spectrum, p.min_eigenvalue >= 0.0);
    }

    #[test]
    fn states_are_convex(seed in any::<u64>(), n in 1usize..6, t in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let rho = DensityFunctional::new(random_density(n, n, &mut r).into_matrix(), &ctx()).unwrap();
        let sigma = DensityFunctional::new(random_density(n, 1, &mut r).into_matrix(), &ctx()).unwrap();
        let mix = rho.mix(&sigma, t).unwrap();
        prop_assert!(mix.is_state(&ctx()));
        let a = random_element(n, &mut r);
        let want = rho.eval(&a) * t + sigma.eval(&a) * (1.0 - t);
        prop_assert!((mix.eval(&a) - want).norm() <= 1e-12 * op_norm(&a).max(1.0));
    }

    #[test]
    fn weyl_relations_for_odd_moduli(k in 1usize..6) {
        let n = 2 * k + 1;
        let rep = check_weyl_relations(&DiscreteWeylSystem::standard(n).unwrap(), &ctx()).unwrap();
        prop_assert_eq!(rep.pairs_checked, n.pow(4));
        prop_assert!(rep.max_deviation() <= 1e-12);
    }

    #[test]
    fn symplectic_form_is_antisymmetric(v in prop::collection::vec(-5.0f64..5.0, 4), w in prop::collection::vec(-5.0f64..5.0, 4)) {
        let p = PhasePoint::new(v[..2].to_vec(), v[2..].to_vec()).unwrap();
        let q = PhasePoint::new(w[..2].to_vec(), w[2..].to_vec()).unwrap();
        prop_assert_eq!(symplectic_form(&p, &p).unwrap(), 0.0);
        prop_assert_eq!(symplectic_form(&p, &q).unwrap(), -symplectic_form(&q, &p).unwrap());
    }

    #[test]
    fn uncertainty_at_least_half(x0 in -2.0f64..2.0, k0 in -3.0f64..3.0, s in 0.4f64..2.0, chirp in -0.5f64..0.5) {
        // half-width 16 keeps every generated packet clear of the boundary
        let grid = GridRep::new(512, 16.0).unwrap();
        let raw = grid.sample(|x| {
            let d = x - x0;
            C64::from_polar((-d * d / (2.0 * s * s)).exp(), k0 * x + chirp * d * d)
        });
        let psi = &raw / C64::new(raw.norm(), 0.0);
        let u = uncertainty_check(&grid, &psi, &ctx()).unwrap();
        prop_assert!(u.product() >= 0.5 - 1e-9);
    }
}

#[test]
fn verify_all_is_the_union_of_suites() {
    let seed = 11;
    let all = run(&RunConfig::new(Command::VerifyAll, seed)).unwrap();
    let mut parts = Vec::new();
    for c in [
        Command::Spectra,
        Command::Calculus,
        Command::Gns,
        Command::Weyl,
        Command::Svn,
        Command::Schrodinger,
    ] {
        parts.extend(run(&RunConfig::new(c, seed)).unwrap().checks);
    }
    parts.sort_by(|a, b| a.name.cmp(&b.name));
    assert_eq!(all.checks.len(), parts.len());
    for (a, b) in all.checks.iter().zip(&parts) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.pass, b.pass);
        assert!(
            a.measured == b.measured || (a.measured.is_nan() && b.measured.is_nan()),
            "{}",
            a.name
        );
    }
}
