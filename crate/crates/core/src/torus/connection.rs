use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::TorusGrid;
use crate::error::{Error, Result};

/// Tolerance on |flux − round(flux)| before a connection is rejected.
pub const FLUX_TOLERANCE: f64 = 1e-8;

/// U(1) lattice connection stored as link angles.
///
/// `theta_x[idx(i,j)]` is the angle of the link (i,j) → (i+1,j) and
/// `theta_y[idx(i,j)]` the angle of (i,j) → (i,j+1). Parallel transport of a
/// section value from the far end back to (i,j) is multiplication by
/// `exp(i θ)`. The quasi-periodicity of a degree-d bundle,
/// s(x, y+1) = e^{−2πi d x} s(x, y), is folded into the links of the
/// top row, so fields are stored as plain periodic arrays.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeConnection {
    n: usize,
    degree: i64,
    theta_x: Vec<f64>,
    theta_y: Vec<f64>,
}

/// Map an angle to (−π, π].
pub fn wrap_angle(a: f64) -> f64 {
    let r = a - 2.0 * PI * (a / (2.0 * PI)).round();
    if r <= -PI {
        r + 2.0 * PI
    } else {
        r
    }
}

/// Constant-curvature connection of degree `d` with trivial flat part.
pub fn base_connection(grid: &TorusGrid, d: i64) -> LatticeConnection {
    LatticeConnection::constant_curvature(grid, d, [0.0, 0.0])
}

/// Integer flux of a connection, or an error if it is not quantized.
pub fn flux(conn: &LatticeConnection) -> Result<i64> {
    let v = conn.flux_value();
    let r = v.round();
    let dev = (v - r).abs();
    // On a closed lattice the wrapped plaquette angles always sum to an
    // integer multiple of 2π, so this only trips on corrupted links.
    if !(dev <= FLUX_TOLERANCE) {
        return Err(Error::NonQuantizedFlux {
            value: v,
            deviation: dev,
        });
    }
    Ok(r as i64)
}

impl LatticeConnection {
    /// Assemble from raw link angles. The flux must be the stated degree.
    pub fn from_angles(
        grid: &TorusGrid,
        degree: i64,
        theta_x: Vec<f64>,
        theta_y: Vec<f64>,
    ) -> Result<Self> {
        if theta_x.len() != grid.sites() || theta_y.len() != grid.sites() {
            return Err(Error::Precondition(format!(
                "link arrays must have {} entries",
                grid.sites()
            )));
        }
        let c = LatticeConnection {
            n: grid.n(),
            degree,
            theta_x,
            theta_y,
        };
        let f = flux(&c)?;
        if f != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: f,
            });
        }
        Ok(c)
    }

    /// A = 2πi d y dx + 2πi (c₀ dx + c₁ dy): constant curvature −2πi d,
    /// flat part given by the Jacobian coordinates `class` (mod 1).
    pub fn constant_curvature(grid: &TorusGrid, d: i64, class: [f64; 2]) -> Self {
        let n = grid.n();
        let h = grid.spacing();
        let df = d as f64;
        let mut theta_x = vec![0.0; n * n];
        let mut theta_y = vec![0.0; n * n];
        for j in 0..n {
            let y = j as f64 * h;
            for i in 0..n {
                let x = i as f64 * h;
                let k = grid.idx(i, j);
                theta_x[k] = (2.0 * PI * df * y + 2.0 * PI * class[0]) * h;
                theta_y[k] = 2.0 * PI * class[1] * h;
                if j == n - 1 {
                    theta_y[k] -= 2.0 * PI * df * x;
                }
            }
        }
        LatticeConnection {
            n,
            degree: d,
            theta_x,
            theta_y,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn theta_x(&self) -> &[f64] {
        &self.theta_x
    }

    pub fn theta_y(&self) -> &[f64] {
        &self.theta_y
    }

    pub fn link_x(&self, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.theta_x[k])
    }

    pub fn link_y(&self, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.theta_y[k])
    }

    pub(crate) fn check_grid(&self, grid: &TorusGrid) -> Result<()> {
        if self.n != grid.n() {
            return Err(Error::GridMismatch {
                expected: grid.n(),
                found: self.n,
            });
        }
        let n2 = grid.sites();
        if self.theta_x.len() != n2 || self.theta_y.len() != n2 {
            return Err(Error::Precondition(format!("connection needs {n2} link angles per direction")));
        }
        let f = flux(self)?;
        if f != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: f,
            });
        }
        Ok(())
    }

    /// Plaquette holonomy angles in (−π, π], stored at the lower-left corner.
    pub fn plaquette_angles(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for j in 0..n {
            let jp = (j + 1) % n;
            for i in 0..n {
                let ip = (i + 1) % n;
                let raw = self.theta_x[j * n + i] + self.theta_y[j * n + ip]
                    - self.theta_x[jp * n + i]
                    - self.theta_y[j * n + i];
                out[j * n + i] = wrap_angle(raw);
            }
        }
        out
    }

    /// i∗F on each plaquette, so that Σ (i∗F) h² = 2π · degree.
    pub fn curvature_density(&self) -> Vec<f64> {
        let h2 = 1.0 / (self.n * self.n) as f64;
        self.plaquette_angles().into_iter().map(|a| -a / h2).collect()
    }

    /// Unrounded flux (1/2π)∫ i F.
    pub fn flux_value(&self) -> f64 {
        -self.plaquette_angles().iter().sum::<f64>() / (2.0 * PI)
    }

    pub fn flux_deviation(&self) -> f64 {
        let v = self.flux_value();
        (v - v.round()).abs()
    }

    /// Link-wise combination `a·self + b·other`, the connection on
    /// `self^a ⊗ other^b`.
    pub fn combine(&self, a: i64, other: &LatticeConnection, b: i64) -> LatticeConnection {
        assert_eq!(self.n, other.n, "combine needs equal grids");
        let (af, bf) = (a as f64, b as f64);
        LatticeConnection {
            n: self.n,
            degree: a * self.degree + b * other.degree,
            theta_x: self
                .theta_x
                .iter()
                .zip(&other.theta_x)
                .map(|(p, q)| af * p + bf * q)
                .collect(),
            theta_y: self
                .theta_y
                .iter()
                .zip(&other.theta_y)
                .map(|(p, q)| af * p + bf * q)
                .collect(),
        }
    }

    pub fn dual(&self) -> LatticeConnection {
        LatticeConnection {
            n: self.n,
            degree: -self.degree,
            theta_x: self.theta_x.iter().map(|t| -t).collect(),
            theta_y: self.theta_y.iter().map(|t| -t).collect(),
        }
    }

    /// Effect of the unitary gauge transformation s ↦ e^{i·charge·φ} s on
    /// the links of a bundle carrying that charge.
    pub fn unitary_gauge(&self, grid: &TorusGrid, phi: &[f64], charge: f64) -> LatticeConnection {
        let n = self.n;
        let mut out = self.clone();
        for j in 0..n {
            for i in 0..n {
                let k = grid.idx(i, j);
                out.theta_x[k] += charge * (phi[k] - phi[grid.idx((i + 1) % n, j)]);
                out.theta_y[k] += charge * (phi[k] - phi[grid.idx(i, (j + 1) % n)]);
            }
        }
        out
    }

    /// Add exact link increments (used by complex gauge transformations).
    pub(crate) fn add_links(&mut self, dx: &[f64], dy: &[f64]) {
        for (t, d) in self.theta_x.iter_mut().zip(dx) {
            *t += d;
        }
        for (t, d) in self.theta_y.iter_mut().zip(dy) {
            *t += d;
        }
    }

    /// Restrict to the sublattice of even sites; coarse links are the
    /// products of the two fine links they cover.
    pub fn restrict(&self, fine: &TorusGrid, coarse: &TorusGrid) -> Result<LatticeConnection> {
        self.check_grid(fine)?;
        if coarse.n() * 2 != fine.n() {
            return Err(Error::Precondition(
                "coarse grid must have half the resolution".into(),
            ));
        }
        let nc = coarse.n();
        let mut tx = vec![0.0; nc * nc];
        let mut ty = vec![0.0; nc * nc];
        for jc in 0..nc {
            for ic in 0..nc {
                let (i, j) = (2 * ic, 2 * jc);
                tx[coarse.idx(ic, jc)] =
                    self.theta_x[fine.idx(i, j)] + self.theta_x[fine.idx(i + 1, j)];
                ty[coarse.idx(ic, jc)] =
                    self.theta_y[fine.idx(i, j)] + self.theta_y[fine.idx(i, j + 1)];
            }
        }
        Ok(LatticeConnection {
            n: nc,
            degree: self.degree,
            theta_x: tx,
            theta_y: ty,
        })
    }

    /// If this is a constant-curvature connection, its Jacobian coordinates.
    pub fn flat_class(&self, grid: &TorusGrid) -> Option<[f64; 2]> {
        if self.check_grid(grid).is_err() {
            return None;
        }
        let h = grid.spacing();
        let class = [
            self.theta_x[0] / (2.0 * PI * h),
            self.theta_y[0] / (2.0 * PI * h),
        ];
        let model = LatticeConnection::constant_curvature(grid, self.degree, class);
        let close = |a: &[f64], b: &[f64]| {
            a.iter()
                .zip(b)
                .all(|(p, q)| wrap_angle(p - q).abs() < 1e-10)
        };
        if close(&self.theta_x, &model.theta_x) && close(&self.theta_y, &model.theta_y) {
            Some(class)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::make_grid;

    #[test]
    fn base_connection_degrees() {
        let g = make_grid(16).unwrap();
        for d in [-3, 0, 2] {
            assert_eq!(flux(&base_connection(&g, d)).unwrap(), d);
        }
    }

    #[test]
    fn base_curvature_is_constant() {
        let g = make_grid(16).unwrap();
        let c = base_connection(&g, 1);
        for v in c.curvature_density() {
            assert!((v - 2.0 * PI).abs() < 1e-9);
        }
    }

    #[test]
    fn corrupted_links_are_rejected() {
        let g = make_grid(64).unwrap();
        let c = base_connection(&g, 1);
        let mut tx = c.theta_x().to_vec();
        tx[0] = f64::NAN;
        assert!(matches!(
            LatticeConnection::from_angles(&g, 1, tx, c.theta_y().to_vec()),
            Err(Error::NonQuantizedFlux { .. })
        ));
    }

    #[test]
    fn flat_class_roundtrip() {
        let g = make_grid(16).unwrap();
        let c = LatticeConnection::constant_curvature(&g, 2, [0.3, -0.1]);
        let k = c.flat_class(&g).unwrap();
        assert!((k[0] - 0.3).abs() < 1e-12 && (k[1] + 0.1).abs() < 1e-12);
    }
}
