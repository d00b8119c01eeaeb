//! Clock and shift Weyl system on C^n and the uniqueness intertwiner between
//! two representations of it.
//!
//!     cargo run --example weyl_discrete -- [n]

use opalg::weyl::{check_weyl_relations, distance_up_to_phase, svn_intertwiner_discrete, DiscreteWeylSystem};
use opalg::ToleranceContext;

fn main() -> opalg::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let ctx = ToleranceContext::default();
    let std = DiscreteWeylSystem::standard(n)?;
    println!("n = {n}, omega = {:.4}, tau = {:.4}", std.omega(), std.tau());

    let rep = check_weyl_relations(&std, &ctx)?;
    println!(
        "pairs checked {}, product {:.1e}, adjoint {:.1e}, commutant dim {}",
        rep.pairs_checked, rep.product, rep.adjoint, rep.commutant_dim
    );

    for seed in 0..3 {
        let other = DiscreteWeylSystem::with_random_conjugator(n, seed, &ctx)?;
        let u = svn_intertwiner_discrete(&std, &other, seed, &ctx)?;
        let planted = other.conjugator().expect("conjugated system");
        println!(
            "seed {seed}: defect {:.2e}, attempts {}, distance to planted unitary (mod phase) {:.2e}",
            u.defect,
            u.attempts,
            distance_up_to_phase(&u.matrix, planted)
        );
    }
    Ok(())
}
