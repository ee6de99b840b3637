//! Elzaki-transform solutions of the N-dimensional radial Schrödinger
//! equation, with an independent finite-difference eigensolver for checking
//! them.

pub mod elzaki;
pub mod error;
pub mod mde;
pub mod oracle;
pub mod potentials;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
