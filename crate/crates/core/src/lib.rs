//! Minimal-energy point configurations on unit spheres.
//!
//! The crate covers the whole workflow for studying energy minima on `S^{n-1}`:
//! evaluating energies and their derivatives ([`energy`]), finding critical points
//! ([`optimize`]), building explicit configurations ([`constructions`]), extracting
//! their structure ([`analysis`]), running random-restart searches ([`search`]) and
//! reading or writing the text formats used by the command-line tool ([`io`]).

pub mod analysis;
pub mod config;
pub mod constructions;
pub mod energy;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod optimize;
pub mod potential;
pub mod rng;
pub mod search;

pub use config::{PointConfig, TangentVector};
pub use energy::{energy, riemannian_gradient, riemannian_hessian_spectrum, HessianSpectrum};
pub use error::{Error, Result};
pub use potential::PotentialSpec;
