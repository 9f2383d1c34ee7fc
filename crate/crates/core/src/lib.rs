//! Canonical forms of simple vector bundles on the plane degenerations of
//! an elliptic curve.

#![allow(clippy::needless_range_loop)]

pub mod automaton;
pub mod curve;
pub mod builder;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod picard;
pub mod render;
pub mod scalar;
pub mod tables;
pub mod triple;

pub use error::{Error, Result};
