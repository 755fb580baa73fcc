//! Group objects, G-atlases, G-bundles and principal bundles.

mod action;
mod cocycle;
mod equivalence;
pub mod fixtures;
mod group;
mod morphism;
mod slice;
mod torsor;

pub use action::{free_and_transitive, local_action, right_action};
pub use cocycle::{
    associated_bundle, bundle_atlas_of, check_cocycle, check_gbundle, cocycle_of,
    orientation_crosscheck, principal_from_cocycle, transition, FinGAtlas, FinGBundle, GAtlas,
    GBundle, Orientation,
};
pub use equivalence::{build, canonical_iso, equivalence_roundtrip, principal_part};
pub use group::{
    check_action, check_group, check_group_table, const_unit, cyclic, heisenberg, FinGroup,
    GroupObject, GroupTable,
};
pub use morphism::{
    check_t_conditions, compose_t_families, equivariance, lifted_edges, literal_t_conditions,
    pbun_morphism, search_t_families, t_atlas_morphism, trivialization_search, TFamily, TSearch,
};
pub use slice::{slice_group, ParMapEq, Slice, SliceMor, SliceObj};
pub use torsor::{missing_pairs, torsor_witness, Torsor};
