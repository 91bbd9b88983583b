//! Exact topological recursion and x-y duality on genus-zero spectral
//! curves.

pub mod algebra;
pub mod appendix;
pub mod catalog;
pub mod curve;
pub mod duality;
pub mod error;
pub mod tr;

pub use error::{Error, Result};
