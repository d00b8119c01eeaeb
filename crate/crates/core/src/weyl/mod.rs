//! Weyl relations: finite clock-and-shift systems, the grid Schrodinger
//! representation, operator-valued Riemann integrals and exact polynomial CCR.

mod discrete;
mod grid;
mod integral;
mod poly;
mod symplectic;

pub use discrete::{
    check_weyl_relations, distance_up_to_phase, fourier_matrix, phase_alignment, root_of_unity,
    svn_intertwiner_discrete, DiscreteWeylSystem, WeylIntertwiner, WeylRelationReport,
};
pub use grid::{
    born_rule_check, ccr_defect, fock_expectation, position_momentum, schrodinger_ops, uncertainty_check, BornReport,
    GridRep, Uncertainty,
};
pub use integral::{
    fock_kernel, fock_projection, refinement_table, riemann_apply, riemann_operator_integral, FockProjection,
    FockReport, Kernel, RefinementTable, RiemannIntegralSpec, BASE_CELL_SIDE, TAIL_RATIO_MAX,
};
pub use poly::{poly_commutator_check, Exact, PolyAtom, PolyCommutatorReport, PolynomialOperator};
pub use symplectic::{symplectic_form, DiscreteLabel, PhasePoint};
