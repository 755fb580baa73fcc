//! Piecewise polynomial partial maps over 𝔽_p with tangent functor given by
//! formal differentiation.

mod domain;
mod json;
pub mod linalg;
mod map;
mod ring;
pub mod sample;
mod tangent;

pub use domain::{decode, encode, Domain, ENUMERATION_LIMIT};
pub use json::{map_from_json, map_to_json, poly_from_json, poly_to_json};
pub use map::{bodies_jet_agree, jet_equal, jets_vanish, vanishes_on, PolyCat, PolyMap};
pub use ring::{inv_mod, is_prime, mul_mod, neg_mod, pow_mod, Poly, PolyMor};
pub use tangent::{
    certify_pullback, check_join_tangent_compat, check_tangent_axioms, in_lift_equalizer,
    universal_lift_map,
};

/// Default jet depth: the axioms involve at most `T³`.
pub const DEFAULT_DEPTH: usize = 3;
