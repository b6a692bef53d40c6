//! Finite p-group cohomology, group-algebra modules and class field tower
//! bookkeeping.

pub mod cli;
pub mod cohomology;
pub mod error;
pub mod fpg_module;
pub mod linalg;
pub mod pgroup;
pub mod planner;
pub mod quadratic;
pub mod verify;

pub use error::{Error, Result};
pub use pgroup::{GroupElement, PcGroup};
