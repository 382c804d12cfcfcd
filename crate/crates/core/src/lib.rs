pub mod axioms;
pub mod complex_core;
pub mod error;
pub mod exec;
pub mod format;
pub mod frobenius;
pub mod homotopy;
pub mod qw;
pub mod suite;
pub mod zlinalg;

pub use error::{Error, Result};
