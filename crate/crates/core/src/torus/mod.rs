//! Lattice model of the flat square torus and its line bundles.

mod blob;
mod connection;
mod field;
mod grid;
mod ops;
mod theta;

pub use blob::{from_blob, to_blob, FieldEnvelope};
pub use connection::{base_connection, flux, wrap_angle, LatticeConnection, FLUX_TOLERANCE};
pub use field::TwistedField;
pub use grid::{make_grid, TorusGrid};
pub use ops::{dbar, laplacian, plaquettes_to_sites, site_curvature, sites_to_plaquettes};
pub use theta::{jacobi_theta, theta_section, ThetaSpec, DEFAULT_TRUNCATION};
