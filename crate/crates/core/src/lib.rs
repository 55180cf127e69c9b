//! Exact computations in Iwahori-Weyl groups of reductive groups over
//! discretely valued fields.
//!
//! The crate models the combinatorial side only: affine root systems and
//! alcoves ([`root_data`]), the affine Weyl group with inversion sets,
//! length and Bruhat order ([`affine_weyl`]), the extension by the
//! alcove stabilizer and the Kottwitz quotient ([`extended_weyl`]),
//! unramified Galois descent with the two length functions ([`descent`]),
//! and parabolic double cosets with Bruhat cell counts ([`cells`]).

pub mod affine_weyl;
pub mod cells;
pub mod checks;
pub mod cli;
pub mod descent;
pub mod error;
pub mod extended_weyl;
pub mod group;
pub mod linalg;
pub mod root_data;
pub mod snf;

pub use error::{Error, Result};
