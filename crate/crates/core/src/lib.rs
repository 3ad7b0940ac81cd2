pub mod cli;
pub mod error;
pub mod families;
pub mod format;
pub mod geometry;
pub mod knorm;
pub mod linalg;
pub mod repro;
pub mod tol;

pub use error::{Error, Result};
