//! Finite-scale machinery for double embedding problems over pairs of groups.

pub mod cli;
pub mod cohomology;
pub mod constructions;
pub mod dep;
pub mod error;
pub mod group;
pub mod io;
pub mod sampler;

pub use error::{Error, Result};
