//! Inverse semigroups with zero, their distributive completions, and the
//! duality between Boolean inverse ∧-semigroups and their groupoids of
//! ultrafilters, together with the combinatorial families that motivate it:
//! polycyclic monoids, graph inverse semigroups, Cuntz monoids and the
//! Thompson-Higman groups.

pub mod duality;
pub mod error;
pub mod filtercomp;
pub mod finitesgp;
pub mod graphisg;
pub mod polycyclic;
pub mod thompson;
pub mod words;

pub use error::{Error, Result};
