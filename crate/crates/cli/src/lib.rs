//! Command line and HTTP session service over the `semitotal` engine.

pub mod cli;
pub mod error;
pub mod ops;
pub mod server;
pub mod session;

pub use error::{AppError, AppResult};
