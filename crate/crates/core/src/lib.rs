//! Decision procedures for adjointness, relative adjointness (admissibility),
//! cocontinuity and cocompleteness of functors between finite categories and
//! finite posets, plus a harness that checks the adjoint functor theorems
//! relating them on concrete instances.

pub mod adjunction;
pub mod cli;
pub mod daft;
pub mod error;
pub mod fincat;
pub mod format;
pub mod posetlab;
pub mod presheaf;
pub mod weights;

pub use error::{Error, LawViolation, Result};
