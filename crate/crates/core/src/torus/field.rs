use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::TorusGrid;
use crate::error::{Error, Result};

/// Sampled section of a degree-d line bundle on the torus.
///
/// Values are stored on the fundamental domain; translates obey
/// s(x, y + 1) = e^{−2πi d x} s(x, y) and s(x + 1, y) = s(x, y).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistedField {
    pub n: usize,
    pub degree: i64,
    pub values: Vec<Complex64>,
}

impl TwistedField {
    pub fn new(grid: &TorusGrid, degree: i64, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.sites() {
            return Err(Error::Precondition(format!(
                "field needs {} values, got {}",
                grid.sites(),
                values.len()
            )));
        }
        Ok(TwistedField {
            n: grid.n(),
            degree,
            values,
        })
    }

    pub fn zeros(grid: &TorusGrid, degree: i64) -> Self {
        TwistedField {
            n: grid.n(),
            degree,
            values: vec![Complex64::new(0.0, 0.0); grid.sites()],
        }
    }

    pub fn from_fn(grid: &TorusGrid, degree: i64, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let values = (0..grid.sites())
            .map(|k| {
                let (x, y) = grid.coords(k);
                f(x, y)
            })
            .collect();
        TwistedField {
            n: grid.n(),
            degree,
            values,
        }
    }

    pub fn from_real(grid: &TorusGrid, f: &[f64]) -> Result<Self> {
        Self::new(
            grid,
            0,
            f.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub(crate) fn check(&self, grid: &TorusGrid) -> Result<()> {
        if self.n != grid.n() {
            return Err(Error::GridMismatch {
                expected: grid.n(),
                found: self.n,
            });
        }
        if self.values.len() != grid.sites() {
            return Err(Error::Precondition(format!("field needs {} values", grid.sites())));
        }
        Ok(())
    }

    /// Value at an arbitrary integer site, applying the quasi-periodicity.
    pub fn at(&self, i: i64, j: i64) -> Complex64 {
        let n = self.n as i64;
        let ir = i.rem_euclid(n);
        let (b, jr) = (j.div_euclid(n), j.rem_euclid(n));
        let v = self.values[(jr * n + ir) as usize];
        if b == 0 || self.degree == 0 {
            return v;
        }
        let x = ir as f64 / n as f64;
        v * Complex64::from_polar(1.0, -2.0 * PI * (self.degree * b) as f64 * x)
    }

    pub fn modulus(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm()).collect()
    }

    pub fn modulus_sq(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn l2_norm(&self, grid: &TorusGrid) -> f64 {
        (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.area_element()).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    pub fn normalized(&self, grid: &TorusGrid) -> Result<Self> {
        let nrm = self.l2_norm(grid);
        if nrm == 0.0 {
            return Err(Error::Precondition("cannot normalise the zero section".into()));
        }
        Ok(self.scaled(1.0 / nrm))
    }

    pub fn scaled(&self, s: f64) -> Self {
        TwistedField {
            n: self.n,
            degree: self.degree,
            values: self.values.iter().map(|z| z * s).collect(),
        }
    }

    /// Pointwise product with a real weight.
    pub fn weighted(&self, w: &[f64]) -> Self {
        TwistedField {
            n: self.n,
            degree: self.degree,
            values: self.values.iter().zip(w).map(|(z, s)| z * s).collect(),
        }
    }

    /// Pointwise multiplication by e^{i·φ}.
    pub fn rotated(&self, phi: &[f64]) -> Self {
        TwistedField {
            n: self.n,
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(phi)
                .map(|(z, p)| z * Complex64::from_polar(1.0, *p))
                .collect(),
        }
    }

    /// Subsample the even sites.
    pub fn restrict(&self, fine: &TorusGrid, coarse: &TorusGrid) -> Result<Self> {
        self.check(fine)?;
        let nc = coarse.n();
        let mut values = Vec::with_capacity(nc * nc);
        for jc in 0..nc {
            for ic in 0..nc {
                values.push(self.values[fine.idx(2 * ic, 2 * jc)]);
            }
        }
        Self::new(coarse, self.degree, values)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }
}
