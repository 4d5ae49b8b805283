pub mod bounds;
pub mod cli;
pub mod clustering;
pub mod csvio;
pub mod deflation;
pub mod diagnostics;
pub mod error;
pub mod linalg;
pub mod power_iter;

pub use error::{Error, Result};
