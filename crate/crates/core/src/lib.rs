//! Spontaneous-heating functionals for the GPSL hybrid quantum-classical
//! gravity model.
//!
//! The crate evaluates the collapse (PSL) and gravitational-feedback heating
//! functionals for arbitrary radial smearing profiles, builds the
//! variationally optimal profiles, checks the multi-particle inequalities and
//! counter-examples, and turns neutron-star observations into bounds on the
//! collapse rate.
//!
//! Everything here is pure computation over `f64`; file formats, the
//! command-line front end and parallel sweeps live in the `gpsl` crate.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod astro_bounds;
mod error;
pub mod functionals;
pub mod numerics;
pub mod optimal_profiles;
pub mod regimes;
pub mod smearing;

pub use error::{Error, Result};
pub use functionals::{FunctionalResult, Method};
pub use smearing::{ProfileDerived, ProfileKind, RadialProfile};
