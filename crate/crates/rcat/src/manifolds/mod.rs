//! Atlases, gluings and fibre bundles. The atlas and bundle checks work in any
//! join restriction model; gluing is constructed in finite sets.

mod atlas;
mod bundle;
mod glue;
mod json;

pub use atlas::{
    check_atlas, check_atlas_morphism, compose_morphisms, identity_morphism, trivial_atlas,
    validate_atlas, Atlas, AtlasMorphism,
};
pub use bundle::{
    atlas_to_bundle, bundle_to_atlas, check_bundle, check_bundle_atlas, check_bundle_morphism,
    check_totally_fibred_square, classify_roundtrip, induced_bundle_map, is_totally_fibred,
    overlap_identity, BundleAtlas, Classification, FibreBundle, FinBundle, FinBundleAtlas,
};
pub use glue::{
    atlas_of, check_gluing, check_universal_property, comparison, glue, induced_map,
    standard_probes, FinAtlas, Gluing, Probe,
};
pub use json::{atlas_from_json, atlas_to_json, bundle_from_json, bundle_to_json};
