use num_complex::Complex64;

use super::connection::LatticeConnection;
use super::field::TwistedField;
use super::grid::TorusGrid;
use crate::error::{Error, Result};

/// Covariant ∂̄ = ½(∇ₓ + i∇ᵧ) with centred link differences.
///
/// Gauge covariant and second-order accurate. The output is a section of
/// the same bundle (the trivial K̄ factor of the flat torus is dropped).
pub fn dbar(grid: &TorusGrid, conn: &LatticeConnection, field: &TwistedField) -> Result<TwistedField> {
    conn.check_grid(grid)?;
    field.check(grid)?;
    if conn.degree() != field.degree {
        return Err(Error::DegreeMismatch {
            expected: conn.degree(),
            found: field.degree,
        });
    }
    let n = grid.n();
    let inv2h = 0.5 / grid.spacing();
    let s = &field.values;
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    let i_unit = Complex64::new(0.0, 1.0);
    for j in 0..n {
        let jp = (j + 1) % n;
        let jm = (j + n - 1) % n;
        for i in 0..n {
            let ip = (i + 1) % n;
            let im = (i + n - 1) % n;
            let k = grid.idx(i, j);
            let dx = (conn.link_x(k) * s[grid.idx(ip, j)]
                - conn.link_x(grid.idx(im, j)).conj() * s[grid.idx(im, j)])
                * inv2h;
            let dy = (conn.link_y(k) * s[grid.idx(i, jp)]
                - conn.link_y(grid.idx(i, jm)).conj() * s[grid.idx(i, jm)])
                * inv2h;
            out[k] = 0.5 * (dx + i_unit * dy);
        }
    }
    TwistedField::new(grid, field.degree, out)
}

/// Positive spectral Laplacian on a degree-0 field.
pub fn laplacian(grid: &TorusGrid, field: &TwistedField) -> Result<TwistedField> {
    field.check(grid)?;
    if field.degree != 0 {
        return Err(Error::DegreeMismatch {
            expected: 0,
            found: field.degree,
        });
    }
    let v = grid.apply_symbol(&field.values, grid.laplacian_symbol());
    TwistedField::new(grid, 0, v)
}

/// Average of the four sites around each plaquette, stored at its
/// lower-left corner.
pub fn sites_to_plaquettes(grid: &TorusGrid, f: &[f64]) -> Vec<f64> {
    let n = grid.n();
    let mut out = vec![0.0; n * n];
    for j in 0..n {
        let jp = (j + 1) % n;
        for i in 0..n {
            let ip = (i + 1) % n;
            out[grid.idx(i, j)] = 0.25
                * (f[grid.idx(i, j)] + f[grid.idx(ip, j)] + f[grid.idx(i, jp)] + f[grid.idx(ip, jp)]);
        }
    }
    out
}

/// Average of the four plaquettes touching each site.
pub fn plaquettes_to_sites(grid: &TorusGrid, g: &[f64]) -> Vec<f64> {
    let n = grid.n();
    let mut out = vec![0.0; n * n];
    for j in 0..n {
        let jm = (j + n - 1) % n;
        for i in 0..n {
            let im = (i + n - 1) % n;
            out[grid.idx(i, j)] = 0.25
                * (g[grid.idx(i, j)] + g[grid.idx(im, j)] + g[grid.idx(i, jm)] + g[grid.idx(im, jm)]);
        }
    }
    out
}

/// Site-centred curvature i∗F, the plaquette density averaged onto sites.
pub fn site_curvature(grid: &TorusGrid, conn: &LatticeConnection) -> Vec<f64> {
    plaquettes_to_sites(grid, &conn.curvature_density())
}
