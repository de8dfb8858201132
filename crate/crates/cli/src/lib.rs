//! Library surface of the `synthbench` CLI: report document schemas, the
//! run manifest, and the exit-code-carrying error type. The binary in
//! `main.rs` is a thin argument-parsing layer over these plus the core
//! crate.

pub mod documents;
pub mod error;
pub mod manifest;

pub use error::{Failure, EXIT_DEGENERATE, EXIT_USAGE};
