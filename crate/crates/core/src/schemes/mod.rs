//! Permutation actions, their association schemes, crested products and
//! exponentiation actions.

pub mod action;
pub mod crested;
pub mod expo;

pub use action::{
    approx_classes, block_indicator_is_central, ideal_check, sim_classes, suborbits, FiniteAction, IdealWitness,
    InvariantPartition, Side, SuborbitDecomposition,
};
pub use crested::{crested_orbits, CrestedDecomposition, CrestedSpec, RepRow};
pub use expo::{expo_c2, expo_general, expo_multiplicity_free, exponentiation_action, regular_representation_check};
