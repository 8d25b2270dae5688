//! Exact algebra for p-socles, p-Frattini subgroups and Kummer /
//! Artin–Schreier independence certificates.

pub mod arith;
pub mod cli;
pub mod error;
pub mod extensions;
pub mod fields;
pub mod funcfield;
pub mod groups;
pub mod kummer;
pub mod parse;
pub mod report;
pub mod scenarios;

pub use error::{Error, Result};
