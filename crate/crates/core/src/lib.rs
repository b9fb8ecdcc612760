//! Chromatic nonassociative relation algebras and their representations as
//! edge colourings of complete graphs.
//!
//! The algebra `E_{n+1}^S` has atoms `1'` and `c_1..c_n`; a proper triple is
//! consistent exactly when the number of distinct colours in it lies in `S`.
//! Representations are colourings of `K_m` that avoid the forbidden triangle
//! types (feeble), additionally realize every allowed type (qualitative), and
//! additionally witness every consistent triple on every edge (strong).

pub mod algebra;
pub mod colouring;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod quasigroup;
pub mod report;
pub mod search;

pub use algebra::{AtomSet, AtomStructure, Signature};
pub use colouring::{are_isomorphic, EdgeColouring, Equivalence, Level, VerificationReport};
pub use error::{Error, Result};
pub use quasigroup::Quasigroup;
