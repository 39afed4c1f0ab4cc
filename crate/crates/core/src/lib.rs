//! Pseudospectral simulation of the periodic 1D Zakharov system with
//! Bourgain-style high/low frequency continuation and numerical probes of
//! the underlying space-time estimates.

pub mod bourgain;
pub mod conservation;
pub mod continuation;
pub mod data;
pub mod error;
pub mod evolution;
pub mod quad;
pub mod rng;
pub mod snapshot;
pub mod spectral;
pub mod split;
pub mod state;

pub use error::{Result, ZakharovError};
pub use spectral::{Grid, Multiplier, SpectralField};
pub use state::{FirstOrderState, SecondOrderData};
