//! Executable checks for restriction categories, tangent structure, bundles
//! and group objects over finite concrete models.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod category;
pub mod error;
pub mod finset;
pub mod gbundles;
pub mod laws;
pub mod liegroups;
pub mod manifolds;
pub mod poly;
pub mod report;

pub use category::{
    CartesianRestrictionCategory, FibreProduct, JoinRestrictionCategory, Model, RestrictionCategory,
};
pub use error::{Error, Result};
pub use laws::LawConfig;
pub use report::{all_passed, Counterexample, LawReport, Regime};
