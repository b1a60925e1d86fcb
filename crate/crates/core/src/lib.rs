//! Semidirect product decompositions `W = W~ x| W_I` of Coxeter groups,
//! computed and verified with exact cyclotomic arithmetic.

#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

pub mod bond;
pub mod catalog;
pub mod coxeter;
pub mod decomp;
pub mod descent;
pub mod error;
pub mod external;
pub mod linalg;
pub mod par;
pub mod rootsys;
pub mod scalar;
pub mod suite;

pub use bond::Bond;
pub use error::{Error, Result};
pub use par::Execution;
pub use scalar::{CycField, CycReal, Q};
