//! Functional calculus on a self-adjoint matrix: spectral route against the
//! Chebyshev polynomial route, for a few catalog functions and degrees.
//!
//!     cargo run --example calculus

use opalg::algebra::op_norm;
use opalg::calculus::{apply_function, chebyshev_calculus, eig_self_adjoint, sqrt_psd, ScalarFunction};
use opalg::random::{random_hermitian, random_psd, rng};
use opalg::ToleranceContext;

fn main() -> opalg::Result<()> {
    let ctx = ToleranceContext::default();
    let mut r = rng(11);
    let a = random_hermitian(6, &mut r);
    let a = a.scale_real(1.0 / op_norm(&a));

    let eig = eig_self_adjoint(&a, &ctx)?;
    let values: Vec<String> = eig.eigenvalues.iter().map(|z| format!("{:+.3}", z.re)).collect();
    println!("spectrum of A/||A||: {}", values.join(" "));

    for name in ["exp", "abs"] {
        let f = ScalarFunction::catalog(name)?;
        let exact = apply_function(&a, &f, &ctx)?;
        println!("\n{name}: degree  ||p(A) - f(A)||");
        for degree in [2, 4, 8, 16, 32] {
            let p = chebyshev_calculus(&a, &f, degree, &ctx)?;
            println!("  {degree:>6}  {:.3e}", op_norm(&(&p - &exact)));
        }
    }

    let b = random_psd(6, 6, &mut r);
    let root = sqrt_psd(&b, &ctx)?;
    println!("\n||sqrt(B)^2 - B|| = {:.3e}", op_norm(&(&(&root * &root) - &b)));
    Ok(())
}
