//! Group objects in the polynomial tangent model: the tangent space at the
//! unit, trivializations of `T(G)`, the adjoint actions, left-invariant
//! vector fields and their bracket, and the vertical bundle of a principal
//! bundle.

mod brace;
mod check;
mod group;
mod lie;
mod trivialize;
mod unit;
mod vertical;

pub use brace::{brace, check_brace};
pub use check::{law, mutually_inverse, PointPlan};
pub use group::{add_vec, all_points, neg_vec, sample_points, PolyGroup, TangentGroup};
pub use lie::{
    bracket_morphism, bracket_pointwise, element_of, field_of, is_left_invariant, is_section,
    left_invariant_roundtrip, lie_algebra_check, lie_bracket, search_invariant_sections,
    LeftInvariantField, SectionSearch,
};
pub use trivialize::{
    adjoints, check_adjoint_oracle, coordinate_table_check, corrected_flip, eckmann_hilton,
    heisenberg_conjugation, negation, second_order, trivialize, Adjoints, Trivialization,
};
pub use unit::{induce, TangentSpaceAtUnit};
pub use vertical::{
    trivial_principal, two_chart_principal, vertical_bundle, vertical_bundle_identity_tangent,
    PolyGBundle, VerticalBundle,
};
