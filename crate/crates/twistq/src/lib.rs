//! Exact twist deformation of `U(g)`-module algebras, bimodules, linear
//! maps and connections, with machine-checked identities at a fixed
//! truncation order in the deformation parameter `h`.
//!
//! The coefficient ring is `Q[h]/h^{N+1}` ([`series`]). Everything above
//! it works with exact rationals; [`series::Series`] itself is generic over
//! any `num-traits` field so it can be exercised with other scalars.

pub mod bimod;
pub mod connection;
pub mod error;
pub mod fixtures;
pub mod funcalg;
pub mod hopf;
pub mod morphism;
pub mod outcome;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use outcome::Outcome;
pub use series::{Ctx, DeformationSeries, Scalar, Series};
