//! Schwarz functions of real algebraic curves, rational maps between
//! curves, and quotients of finite Blaschke products.

pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod curve;
pub mod puiseux;
pub mod ratmap;
pub mod blaschke;
pub mod verify;
pub mod cli;
pub mod suite;
