//! Exact combinatorics of extended affine Weyl groups.
//!
//! Root systems of types A–G and their products, the group
//! `P(R^vee) ⋊ Aut(R)` acting on alcoves, lengths and Bruhat orders,
//! admissible sets, Newton points and Kottwitz classes, and the
//! good-position construction for alcoves around a facet.

pub mod affine_weyl;
pub mod coords;
pub mod error;
pub mod good_position;
pub mod kottwitz;
pub mod root_system;
pub mod sweep;

pub use affine_weyl::{Alcove, Element};
pub use coords::{Point, Q};
pub use error::{Error, Result};
pub use root_system::{CartanType, Coweight, Facet, PositiveSubsystem, RootAutomorphism, RootSystem, Subsystem};
