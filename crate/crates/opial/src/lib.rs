//! Numerical toolkit for finite truncations of sequences in Hilbert space:
//! monotonicity classification (Fejér and its relaxations, Opial), convex
//! projections, cluster extraction, asymptotic centers, and a verification
//! harness exercising the structural results that connect them.

pub mod accenter;
pub mod cluster;
pub mod error;
pub mod generators;
pub mod hilbert;
pub mod io;
pub mod monotonicity;
pub mod sets;
pub mod verify;

pub use error::{Error, Result};
pub use hilbert::{SequencePrefix, Tolerance, Vector};
pub use sets::ConvexSet;
