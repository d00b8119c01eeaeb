//! GNS construction for a mixed and a pure state on M_3, with the uniqueness
//! intertwiner against the defining representation.
//!
//!     cargo run --example gns

use opalg::algebra::SubalgebraBasis;
use opalg::gns::{commutant_dim, equivalence_intertwiner, gns_construct, verify_gns, CyclicRepresentation};
use opalg::linalg::{CVector, C64};
use opalg::random::{random_density, rng};
use opalg::states::DensityFunctional;
use opalg::ToleranceContext;

fn main() -> opalg::Result<()> {
    let ctx = ToleranceContext::default();
    let algebra = SubalgebraBasis::full(3);
    let mut r = rng(2);

    for rank in 1..=3 {
        let rho = DensityFunctional::new(random_density(3, rank, &mut r).into_matrix(), &ctx)?;
        let g = gns_construct(&algebra, &rho, &ctx)?;
        let v = verify_gns(&g, &algebra, &rho, &ctx);
        println!(
            "rank {rank}: dim H = {}, dim N = {}, commutant {}, state recovery {:.1e}, failures {:?}",
            g.hilbert_dim,
            g.kernel_dim,
            commutant_dim(&g.representation, &ctx),
            v.state_recovery,
            v.failures(&ctx),
        );
    }

    let mut e0 = CVector::zeros(3);
    e0[0] = C64::new(1.0, 0.0);
    let g = gns_construct(&algebra, &DensityFunctional::vector_state(&e0), &ctx)?;
    let u = equivalence_intertwiner(&g.representation, &CyclicRepresentation::defining(&algebra, e0), &ctx)?;
    println!(
        "\npure state vs defining representation: defect {:.2e}, unitarity {:.2e}",
        u.defect, u.unitarity_defect
    );
    println!("U =\n{:.4}", u.matrix);
    Ok(())
}
