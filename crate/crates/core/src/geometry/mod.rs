//! Lattice and volume machinery behind the closed-form limit: the
//! triangular lattice basis, the partition ↔ lattice-point correspondence,
//! the V-form volume calculus and integer-point counts of dilates.

mod ehrhart;
mod lattice;
mod vform;

pub use ehrhart::{ehrhart_estimate, EhrhartEstimate, DEFAULT_EHRHART_NODES};
pub use lattice::{bezout_vector, lattice_basis, partition_to_k, LatticeBasis, LatticeEmbedding};
pub use vform::{
    bias_volume, bias_volume_closed_form, bias_volume_parts, complement_identity_check,
    simplex_volume, vform_closed_form, vform_volume, BiasVolumeParts, ComplementCheck, VForm,
};
