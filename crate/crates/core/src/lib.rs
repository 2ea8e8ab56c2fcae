pub mod budget;
pub mod catalog;
pub mod congruence;
pub mod error;
pub mod group;
pub mod io;
pub mod polyadic;
pub mod profinite;
pub mod structure;
pub mod suite;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod fixtures;
