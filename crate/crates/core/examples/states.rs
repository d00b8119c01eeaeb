//! States on M_n and on a finite function algebra: the two positivity tests,
//! the norm criterion for states, and pure states as point evaluations.
//!
//!     cargo run --example states

use opalg::algebra::AlgebraElement;
use opalg::linalg::C64;
use opalg::random::{random_density, random_hermitian, rng};
use opalg::states::{finite_gelfand, positivity_paths, riesz_markov_weights, DensityFunctional, FiniteFunctionAlgebra};
use opalg::ToleranceContext;

fn main() -> opalg::Result<()> {
    let ctx = ToleranceContext::default();
    let mut r = rng(5);

    println!("positivity of random self-adjoint 3x3 shifted by t I:");
    let h = random_hermitian(3, &mut r);
    for t in [0.0, 1.0, 2.0, 4.0] {
        let shifted = &h + &AlgebraElement::unit(3).scale_real(t);
        let p = positivity_paths(&shifted, &ctx);
        println!(
            "  t = {t}: min eigenvalue {:+.4}  spectrum test {}  norm test {}",
            p.min_eigenvalue, p.by_spectrum, p.by_norm
        );
    }

    let rho = DensityFunctional::new(random_density(3, 2, &mut r).into_matrix(), &ctx)?;
    let c = rho.criteria(&ctx);
    println!(
        "\nrank-2 density: ||rho|| = {:.6}, rho(I) = {:.6}",
        c.functional_norm, c.value_at_unit
    );
    let signed = DensityFunctional::new(AlgebraElement::diag_real(&[1.5, -0.5, 0.0]).into_matrix(), &ctx)?;
    let c = signed.criteria(&ctx);
    println!(
        "diag(1.5, -0.5, 0): ||rho|| = {:.6}, rho(I) = {:.6}",
        c.functional_norm, c.value_at_unit
    );

    let alg = FiniteFunctionAlgebra::with_size(3)?;
    let f = alg.element(vec![C64::new(1.0, 0.0), C64::new(-2.0, 1.0), C64::new(0.5, 0.0)])?;
    let g = finite_gelfand(&alg, &[f], &ctx)?;
    println!(
        "\nC(X), |X| = 3: pure states are point evaluations: {:?}",
        g.pure_states_are_points
    );
    let w = riesz_markov_weights(&alg, |f| 0.2 * f.values[0] + 0.8 * f.values[2], &ctx)?;
    println!("measure behind 0.2 delta_0 + 0.8 delta_2: {w:?}");
    Ok(())
}
