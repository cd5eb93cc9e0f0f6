//! Coverage analysis for hybrid GEO-LEO satellite downlinks.
//!
//! GEO satellites form a Poisson point process on the geostationary orbit
//! and LEO satellites a Poisson point process on a spherical shell. The
//! [`analytic`] module evaluates visibility, nearest-distance, association,
//! interference and coverage probabilities in closed form or by quadrature;
//! the [`montecarlo`] module simulates the same network snapshot by snapshot
//! and serves as an independent check on every analytic result.

pub mod analytic;
pub mod channel;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod par;
pub mod quadrature;
pub mod scenario;

pub use error::{Error, Result};
pub use par::Execution;
pub use scenario::{Constellation, CoverageModel, SatKind, ScenarioConfig};
