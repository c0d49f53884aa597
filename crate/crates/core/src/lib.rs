//! Exact computations in the positive half of a quantum loop algebra.

pub mod barcomp;
pub mod cli;
pub mod crystal;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod loopalg;
pub mod pairing;
pub mod parse;
pub mod scalars;
pub mod space;
pub mod symfunc;
pub mod verify;

pub use error::{Error, Result};
pub use loopalg::{CartanData, Element, Letter, TensorElement, Weight, Window, Word};
pub use pairing::{PairingContext, ZeroVerdict};
pub use scalars::{qbinom, qfact, qint, Laurent, Scalar};
