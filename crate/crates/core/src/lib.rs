//! Strong Gram classification of non-negative unit forms of Dynkin type A.
//!
//! Unit forms are handled through quivers whose incidence forms realize them.
//! Admissible FS-transformations reduce trees to maximal stars and 1-trees to
//! maximal 1-stars, which yields explicit certificates `B` with
//! `Ǧ' = BᵀǦB` and `det B = ±1`. Inverse quivers give the Coxeter matrix
//! combinatorially.
//!
//! All positions are 0-based in this crate.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classify;
pub mod coxeter;
pub mod enumerate;
pub mod error;
pub mod form;
pub mod matrix;
pub mod poly;
pub mod quiver;
pub mod realize;
pub mod star;
pub mod transform;

pub use classify::{classify, ClassificationVerdict, Verdict};
pub use coxeter::{CoxeterData, CoxeterNumber};
pub use error::{Error, Result};
pub use form::{verify_congruence, Bigraph, CongruenceCertificate, CongruenceKind, UnitForm};
pub use matrix::Matrix;
pub use poly::Poly;
pub use quiver::{Quiver, Walk};
pub use realize::{realize_as_quiver, Realization};
pub use star::OneStarShape;
pub use transform::{IteratedTransform, Trail, Transform};
