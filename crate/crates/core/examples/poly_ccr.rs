//! Exact canonical commutator on polynomials: [X^n, P] = i n X^(n-1) with
//! rational arithmetic, where P = -i d/dx and X is multiplication by x.
//!
//!     cargo run --example poly_ccr -- [n_max]

use opalg::weyl::poly_commutator_check;

fn main() -> opalg::Result<()> {
    let n_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(32);
    let report = poly_commutator_check(n_max, n_max + 8)?;
    println!(
        "n <= {}, degree bound {}: {} identities checked, {} failures",
        report.n_max, report.max_degree, report.identities_checked, report.failures
    );
    if let Some(f) = &report.first_failure {
        println!("first failure at (n, k) = {f:?}");
    }
    Ok(())
}
