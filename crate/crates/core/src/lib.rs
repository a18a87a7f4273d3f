//! Polynomial models of the string Lie 2-algebra and numerical
//! certification of their coherence laws.

pub mod algebra;
pub mod error;
pub mod graded;
pub mod group;
pub mod kacmoody;
pub mod linfty;
pub mod models;
pub mod path;
pub mod report;
pub mod space;

pub use error::{Error, Result};
