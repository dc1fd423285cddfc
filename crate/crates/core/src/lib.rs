//! Symbolic engine for motivic zeta functions of curves carrying a finite
//! abelian group action.
//!
//! The coefficient ring is a free commutative polynomial ring over the
//! integers on a small alphabet of generator classes: twisted affine lines
//! `A(chi)` (with `L` the untwisted Lefschetz class), opaque symmetric-power
//! classes `SymC(n)` of a fixed curve, and twisted Picard-bundle classes
//! `E0(i,j)`. Zeta functions are produced as exact rational witnesses
//! (numerator/denominator pairs) with truncated expansions, and every
//! identity can be cross-checked against independent fixed-point-counting
//! oracles over prime fields.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here can be freely shared across threads.

pub mod error;
pub mod groups;
pub mod realize;
pub mod ring;
pub mod series;
pub mod suites;
pub mod zeta;

pub use error::{Error, Result};
