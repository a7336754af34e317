//! Exponential sums over cones: group-ring arithmetic, rational generating
//! functions and polynomials in the variables `S_w = e^w − 1`.

mod group_ring;
mod rational;
mod spoly;
pub(crate) mod sums;

pub use group_ring::GroupRingElement;
pub use rational::{genfun_equal, RationalGenFun};
pub use spoly::SPolynomial;
pub use sums::{
    closed_sum, closed_sum_via_faces, closed_sum_with, decompose_in_generators, euler_multiplicity,
    euler_multiplicity_of_cell, geometric_sum_simplicial, geometric_sum_simplicial_with,
    grading_functional, interior_sum, interior_sum_with, substitute_certificate, CertifiedConeSum,
    Decomposer, SumKind,
};
