//! Homological invariants of finitely presented groups.
//!
//! Groups are given by finite presentations. From a presentation the crate
//! builds the Fox Jacobian and the Alexander matrix, evaluates it at torsion
//! characters over exact finite or cyclotomic fields, and turns the resulting
//! ranks into counts: normal subgroups with a prescribed quotient, Betti
//! numbers of finite abelian covers, and low-index subgroup numbers.
//! Brute-force enumerators in [`oracle`] cross-check the closed formulas.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod braids;
pub mod census;
pub mod error;
pub mod charvar;
pub mod fields;
pub mod foxcalc;
pub mod hall;
pub mod linalg;
pub mod oracle;
pub mod presentations;
pub mod tables;

pub use error::{Error, ParseError, Result};
