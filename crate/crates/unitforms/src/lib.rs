//! File formats and command-line front end for `unitforms-core`.
//!
//! Documents use 1-based vertex and arrow numbers; the core is 0-based.

pub mod cli;
pub mod formats;
pub mod pretty;
pub mod sweep;
