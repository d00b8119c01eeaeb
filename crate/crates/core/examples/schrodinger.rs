//! Schrodinger representation on a periodic grid: Weyl relation, canonical
//! commutator, Fock state and the uncertainty product on Hermite functions.
//!
//!     cargo run --release --example schrodinger -- [N] [L]

use opalg::linalg::C64;
use opalg::weyl::{ccr_defect, fock_expectation, uncertainty_check, GridRep, PhasePoint};
use opalg::ToleranceContext;

fn main() -> opalg::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(512);
    let l: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(10.0);
    let ctx = ToleranceContext::default();
    let grid = GridRep::new(n, l)?;
    let omega = grid.ground_state();
    println!("N = {n}, L = {l}, dx = {:.4}, k_max = {:.3}", grid.dx(), grid.k_max());

    let (alpha, beta) = (std::f64::consts::PI / l, 3.0 * grid.dx());
    let lhs = grid.apply_u(alpha, &grid.apply_v(beta, &omega));
    let rhs = grid.apply_v(beta, &grid.apply_u(alpha, &omega)) * C64::from_polar(1.0, -alpha * beta);
    println!("||U V Omega - e^(-i a b) V U Omega|| = {:.2e}", (lhs - rhs).norm());

    println!("\n  m  [q,p] defect  dq dp   (exact m + 1/2)");
    for (m, h) in grid.hermite_functions(6).iter().enumerate() {
        let u = uncertainty_check(&grid, h, &ctx)?;
        println!("{m:>3}  {:.2e}     {:.6}", ccr_defect(&grid, h)?, u.product());
    }

    println!("\n  |v|  <Omega, W(v) Omega>  e^(-|v|^2/4)");
    for s in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let v = PhasePoint::planar(s / 2f64.sqrt(), s / 2f64.sqrt());
        let z = fock_expectation(&grid, &v)?;
        println!("  {s:.1}  {:.12}      {:.12}", z.re, (-s * s / 4.0).exp());
    }
    Ok(())
}
