pub mod appendix;
pub mod arith;
pub mod certificate;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod field;
pub mod global;
pub mod json;
pub mod local;
pub mod poly;

pub use error::{Error, Result};
