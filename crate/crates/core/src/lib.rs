//! Exact rational workbench for Koszul brackets, psi-class correlators and the
//! Givental action on topological field theories.

pub mod algebra;
pub mod campaign;
pub mod catalog;
pub mod combinat;
pub mod correlators;
pub mod error;
pub mod family;
pub mod format;
pub mod givental;
pub mod hodge;
pub mod koszul;
pub mod rational;
pub mod search;

pub use error::{ConstraintKind, Error, ParseRationalError, Result};
pub use rational::{binomial, factorial, Rational};
