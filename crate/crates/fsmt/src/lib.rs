//! File formats, rendering, benchmarking and the command-line front end for
//! [`fsmt_core`].

pub mod bench;
pub mod cli;
pub mod dot;
mod error;
pub mod model_file;
pub mod suite_format;

pub use error::FormatError;
