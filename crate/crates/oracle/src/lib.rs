//! Reference oracles for `stonedual`: slow, direct computations that share
//! no decision logic with the library, plus random instance generators.

pub mod action;
pub mod arrow;
pub mod random;
pub mod tables;
