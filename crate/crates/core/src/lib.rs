//! Numerical construction kernel for minimal surfaces in R³ built from
//! Weierstrass data on planar domains.
//!
//! The crate provides, bottom up:
//!
//! * finitely represented holomorphic/meromorphic functions (Laurent
//!   polynomials with declared poles) and 1-forms, with exact arithmetic,
//!   differentiation and Gauss-Legendre contour integration ([`holo`],
//!   [`domain`], [`quad`]);
//! * divisor-preserving uniform approximation by global functions
//!   ([`runge`]);
//! * the Weierstrass dictionary: null triples, immersions, Gauss map,
//!   metric and flux ([`weierstrass`]);
//! * wedge regions and their distance predicates ([`wedge`]);
//! * the two deformation engines: wedge rotations and the shooting
//!   Gauss-map deformation that trades an x1-shift for a parameter t
//!   ([`deform`]);
//! * flux prescription on annuli as a finite-dimensional Newton solve
//!   ([`periods`]);
//! * the stage pipeline that assembles all of the above into immersions of
//!   the rectangle whose (x1,x3)-projection escapes every wedge,
//!   with per-stage numeric certificates ([`builder`]).
//!
//! The crate is `no_std` (alloc required); all IO, file formats and the
//! command line front end live in the companion `weierforge` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod builder;
pub mod checks;
pub mod config;
pub mod deform;
pub mod domain;
pub mod error;
pub mod fit;
pub mod holo;
pub mod periods;
pub mod quad;
pub mod roots;
pub mod runge;
pub mod wedge;
pub mod weierstrass;

pub use config::Config;
pub use error::Error;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Point of R³.
pub type Point3 = nalgebra::Vector3<f64>;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
