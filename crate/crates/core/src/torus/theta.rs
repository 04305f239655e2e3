use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::connection::LatticeConnection;
use super::field::TwistedField;
use super::grid::TorusGrid;
use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION: usize = 8;
const MIN_TRUNCATION: usize = 6;

/// Zeros of a theta section of degree `zero_points.len()`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaSpec {
    pub zero_points: Vec<[f64; 2]>,
    pub truncation: usize,
}

impl ThetaSpec {
    pub fn new(zero_points: Vec<[f64; 2]>) -> Self {
        ThetaSpec {
            zero_points,
            truncation: DEFAULT_TRUNCATION,
        }
    }

    pub fn degree(&self) -> i64 {
        self.zero_points.len() as i64
    }

    /// Σ p_k − m(1+i)/2, the point of the Jacobian the zeros determine.
    pub fn abel_sum(&self) -> Complex64 {
        let m = self.zero_points.len() as f64;
        let s: Complex64 = self
            .zero_points
            .iter()
            .map(|p| Complex64::new(p[0], p[1]))
            .sum();
        s - Complex64::new(0.5 * m, 0.5 * m)
    }

    /// Jacobian coordinates of the bundle carrying this section.
    pub fn class(&self) -> [f64; 2] {
        let s = self.abel_sum();
        [-s.im, s.re]
    }
}

/// θ(z) = Σ_{|k| ≤ T} exp(−πk² + 2πikz), with zero at (1+i)/2.
pub fn jacobi_theta(z: Complex64, truncation: usize) -> Complex64 {
    let t = truncation as i64;
    (-t..=t)
        .map(|k| {
            let kf = k as f64;
            (Complex64::new(-PI * kf * kf, 0.0) + Complex64::new(0.0, 2.0 * PI * kf) * z).exp()
        })
        .sum()
}

/// Holomorphic section of a degree-m bundle vanishing exactly at the given
/// points, together with the constant-curvature connection it is
/// holomorphic for.
pub fn theta_section(grid: &TorusGrid, spec: &ThetaSpec) -> Result<(TwistedField, LatticeConnection)> {
    if spec.truncation < MIN_TRUNCATION {
        return Err(Error::Precondition(format!(
            "theta truncation must be at least {MIN_TRUNCATION}"
        )));
    }
    let m = spec.zero_points.len();
    if m == 0 {
        return Err(Error::Precondition("need at least one zero".into()));
    }
    let h = grid.spacing();
    for (a, p) in spec.zero_points.iter().enumerate() {
        for q in &spec.zero_points[a + 1..] {
            if TorusGrid::torus_distance(*p, *q) < h {
                return Err(Error::ZerosTooClose(format!(
                    "theta zeros {p:?} and {q:?} are closer than one grid spacing"
                )));
            }
        }
    }
    let shift = Complex64::new(0.5, 0.5);
    let s = spec.abel_sum();
    let mf = m as f64;
    let field = TwistedField::from_fn(grid, m as i64, |x, y| {
        let z = Complex64::new(x, y);
        let g: Complex64 = spec
            .zero_points
            .iter()
            .map(|p| jacobi_theta(z - Complex64::new(p[0], p[1]) + shift, spec.truncation))
            .product();
        let pre = (Complex64::new(-PI * mf * y * y, 0.0) - Complex64::new(0.0, 2.0 * PI * y) * s).exp();
        pre * g
    });
    let conn = LatticeConnection::constant_curvature(grid, m as i64, spec.class());
    Ok((field, conn))
}
