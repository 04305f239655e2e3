//! Numerical toolkit for abelian vortex equations on the flat torus.
//!
//! The crate covers lattice line bundles ([`torus`]), the quaternionic
//! moment map ([`quaternion`]), Dolbeault cohomology counts
//! ([`dolbeault`]), the Kazdan–Warner equation ([`kazdan_warner`]), the
//! complex-to-unitary gauge passage for holomorphic triples ([`vortex`]),
//! moduli space bookkeeping ([`census`]) and the small-t limit
//! ([`limiting`]).

pub mod census;
pub mod dolbeault;
pub mod elliptic;
pub mod error;
pub mod kazdan_warner;
pub mod limiting;
pub mod quaternion;
pub mod torus;
pub mod vortex;

pub use error::{Error, Result};
