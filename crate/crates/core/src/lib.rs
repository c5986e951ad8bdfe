//! Statevector simulation of the Fourier-transform family of quantum
//! algorithms over finite Abelian groups.
//!
//! Groups are products of cyclic groups ([`group::GroupSpec`]), with
//! characters, subgroups and an exact Fourier transform ([`fourier`]). The
//! [`simulator`] holds registers of arbitrary dimension. On top of these sit
//! the Deutsch problems, Simon's algorithm, order finding and factoring
//! ([`algorithms`]), and eigenvalue measurement by phase estimation
//! ([`kitaev`]).
//!
//! ```
//! use qfourier::algorithms::shor_order;
//! use qfourier::rng::seeded_rng;
//!
//! let mut rng = seeded_rng(1);
//! let run = shor_order(7, 15, &mut rng, 64).unwrap();
//! assert_eq!(run.recovered_r, Some(4));
//! ```

pub mod algorithms;
pub mod cli;
pub mod error;
pub mod fourier;
pub mod group;
pub mod kitaev;
pub mod numtheory;
pub mod record;
pub mod rng;
pub mod simulator;
pub mod truth_table;

pub use error::{Error, Result};
