pub mod cli;
pub mod curvature;
pub mod error;
pub mod gff;
pub mod pipeline;
pub mod scalar;
pub mod spec_io;
pub mod tensor;

pub use error::{Error, Result};
