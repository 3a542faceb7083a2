//! Exact combinatorial toolkit for stacky fans: validation and completeness,
//! cragged-fan decision procedures with re-checkable witnesses, conical
//! Lagrangian fibers, and hom dimensions between theta generators.
//!
//! All arithmetic is arbitrary-precision integer/rational; there is no
//! floating point in this crate.

pub mod craggedness;
pub mod homtheta;
pub mod lattice;
pub mod polyhedra;
pub mod stackyfan;

pub use homtheta::{
    containment_count_in_box, containment_predicate, hom_dimension, hom_matrix,
    restrict_character, shifted_dual_cone, Character, HomDimension, HomError,
    HIGHER_EXT_DIMENSION,
};

pub use craggedness::{
    check_exhaustiveness, check_unimodularity, cones_integral_on, enumerate_integrality_patterns,
    fiber_is_convex, is_cragged, lambda_fiber, CraggednessError, CraggednessReport, CrossCheck,
    IntegralityPattern, LagrangianFiber, UnimodularityWitness,
};

pub use lattice::{
    gale_dual, hermite_normal_form, smith_normal_form, span_basis, sublattice_index,
    CokernelPresentation, IntMatrix, IntVec, LatticeError, RatVec, SublatticeIndex,
};
pub use polyhedra::{Cone, Polyhedron, PolyhedraError, VRep};
pub use stackyfan::{
    catalog, catalog_info, catalog_names, make_fwps, quotient_by_subgroup,
    reflexive_surface_names, FanAxiomFailure, FanError, FanJson, StackyFan, ValidationReport,
};
