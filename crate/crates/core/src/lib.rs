//! Exact computational workbench for finite-dimensional Hopf algebras and
//! braided Hopf algebras in Yetter-Drinfeld categories over finite abelian groups.

pub mod constructions;
pub mod error;
pub mod factorization;
pub mod hopf;
pub mod invariants;
pub mod linalg;
pub mod scalars;
pub mod yd;

pub use error::{Error, Result};
pub use hopf::{Hopf, HopfData};
pub use scalars::{parse_field, Field, Scalar};
