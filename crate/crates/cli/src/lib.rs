//! Command-line tool and HTTP JSON service over `curvecraft-core`.

pub mod cli;
pub mod compute;
pub mod service;
pub mod shorthand;

pub use cli::{run, CommandResult};
