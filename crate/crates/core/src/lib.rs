//! Entanglement negativity of thermal chains, and PPT certificates for the
//! window where bound entanglement survives.

pub mod chain;
pub mod error;
pub mod gaussian;
pub mod linalg;
pub mod macrobound;
pub mod spin;
pub mod numerics;

pub use error::{Error, Result};
