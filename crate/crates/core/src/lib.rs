//! Exact computations around conic bundles over projective space.
//!
//! - [`exactfield`]: prime-field scalars, sparse polynomials, elimination.
//! - [`picard`]: intersection theory on blown-up Hirzebruch surfaces.
//! - [`toric`]: Cox grading, cones and section counts of split `P^2`-bundles.
//! - [`conic`]: conic bundle specs, discriminants, restrictions, witnesses.
//! - [`linsys`]: fat-point interpolation matrices and emptiness certificates.
//! - [`ledger`]: JSONL persistence for certificates.

pub mod conic;
pub mod error;
pub mod exactfield;
pub mod ledger;
pub mod linsys;
pub mod picard;
pub mod seeds;
pub mod toric;

pub use error::{Error, Result};
