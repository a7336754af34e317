//! Exact lattice-point generating functions of rational polyhedral cones,
//! nonnegative certificate polynomials in `S_w = e^w − 1`, and local
//! Hirzebruch classes of toric varieties.

pub mod cli;
pub mod cone;
pub mod error;
pub mod format;
pub mod genfun;
pub mod hirzebruch;
pub mod lattice;
pub mod oracle;

pub use error::{Error, Result};
