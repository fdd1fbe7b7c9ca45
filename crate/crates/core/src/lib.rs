//! Ray class invariants of imaginary quadratic fields.
//!
//! The crate builds the Galois action of ray class fields `K_(N)` over an
//! imaginary quadratic field `K` from matrices mod `N` and reduced binary
//! quadratic forms, evaluates Siegel functions to arbitrary precision, and
//! recovers exact integer minimal polynomials of invariants from their
//! conjugates. It also decides representability `p = x^2 + n y^2` with
//! congruence conditions on `x` and `y`.
//!
//! Everything here is `no_std` with `alloc`; parallel evaluation, file
//! formats and the command line live in the `cmforge` crate.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod diophantine;
pub mod error;
pub mod field;
pub mod forms;
pub mod invariants;
pub mod matrix;
pub mod minpoly;
pub mod mp;
pub mod phase;
pub mod poly;
pub mod reciprocity;
pub mod siegel;

pub use error::{Error, Result};
pub use field::{AlgebraicIntegerZTheta, ImagQuadField, RayModulus, Splitting};
pub use forms::{FormClassGroup, QuadForm};
pub use matrix::MatModN;
pub use mp::{Complex, Float, PrecisionContext};
pub use poly::PolyZ;
pub use siegel::{IndexVector, InvariantSpec};
