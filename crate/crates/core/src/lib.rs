//! Exact graded-algebra computations deciding when symplectic quotients of
//! unitary representations can be modelled by linear symplectic orbifolds.
//!
//! The crate covers three input families: diagonal circle actions given by a
//! weight vector, SU(2)-modules given as sums of binary-form modules `R_d`,
//! and finite unitary matrix groups. Every numerical statement is checked by
//! exact arithmetic over the rationals or a cyclotomic field.

pub mod algebra;
pub mod circle;
pub mod classifier;
mod error;
pub mod finite;
pub mod su2;

pub use error::{Error, Result};
