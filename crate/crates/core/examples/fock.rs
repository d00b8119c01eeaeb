//! Fock projection as an operator-valued Gaussian average of Weyl operators,
//! with a refinement table for the underlying Riemann sums.
//!
//!     cargo run --release --example fock -- [depth]

use std::time::Instant;

use opalg::weyl::{fock_kernel, fock_projection, refinement_table, GridRep, RiemannIntegralSpec};
use opalg::ToleranceContext;

fn main() -> opalg::Result<()> {
    let depth: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let ctx = ToleranceContext::default();
    let grid = GridRep::new(256, 10.0)?;

    let spec = RiemannIntegralSpec::new(12.0, fock_kernel(), 0);
    let table = refinement_table(&grid, &spec, &grid.ground_state(), 0..=7)?;
    println!("depth  ||A(d+1) Omega - A(d) Omega||");
    for (d, inc) in table.depths.iter().zip(&table.increments) {
        println!("{d:>5}  {inc:.3e}");
    }

    let start = Instant::now();
    let fock = fock_projection(&grid, 12.0, depth, &ctx)?;
    let labels: Vec<(f64, f64)> = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.5), (1.2, -1.2), (-2.0, 0.0)].to_vec();
    let report = fock.report(&grid, &labels);
    println!("\ncell side {} ({:.2?})", fock.cell_side, start.elapsed());
    println!("||P^2 - P||          {:.3e}", report.idempotency);
    println!("||P - P*||           {:.3e}", report.hermiticity);
    println!(
        "top eigenvalues      {:.6} {:.3e}",
        report.top_eigenvalue, report.second_eigenvalue
    );
    println!("trace                {:.6} {:+.1e}i", report.trace_re, report.trace_im);
    println!("||P Omega - Omega||  {:.3e}", report.fixes_ground_state);
    println!("||omega - Omega||    {:.3e}", report.range_is_ground_state);
    println!("sandwich defect      {:.3e}", report.sandwich);
    Ok(())
}
