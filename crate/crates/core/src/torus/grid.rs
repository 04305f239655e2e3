use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Uniform n×n lattice on the unit square torus C/(Z + iZ).
///
/// Site (i, j) sits at (x, y) = (i/n, j/n) and is stored at index `j*n + i`,
/// so a row of the buffer is a line of constant y.
#[derive(Clone)]
pub struct TorusGrid {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    wavenumber: Vec<i64>,
    spectral_laplacian: Vec<f64>,
    compatible_laplacian: Vec<f64>,
}

impl fmt::Debug for TorusGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusGrid").field("n", &self.n).finish()
    }
}

impl PartialEq for TorusGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

/// Build the grid. `n` must be even and at least 8.
pub fn make_grid(n: usize) -> Result<TorusGrid> {
    TorusGrid::new(n)
}

impl TorusGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || n % 2 != 0 {
            return Err(Error::GridSize(n));
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let wavenumber: Vec<i64> = (0..n as i64)
            .map(|k| if k < n as i64 / 2 { k } else { k - n as i64 })
            .collect();
        let h = 1.0 / n as f64;
        let mut spectral_laplacian = vec![0.0; n * n];
        let mut compatible_laplacian = vec![0.0; n * n];
        for l in 0..n {
            for k in 0..n {
                let (kk, ll) = (wavenumber[k] as f64, wavenumber[l] as f64);
                spectral_laplacian[l * n + k] = 4.0 * PI * PI * (kk * kk + ll * ll);
                let a = PI * kk * h;
                let b = PI * ll * h;
                let (sa, ca) = a.sin_cos();
                let (sb, cb) = b.sin_cos();
                compatible_laplacian[l * n + k] =
                    4.0 / (h * h) * (sa * sa + sb * sb) * ca * ca * cb * cb;
            }
        }
        Ok(TorusGrid {
            n,
            fwd,
            inv,
            wavenumber,
            spectral_laplacian,
            compatible_laplacian,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.n * self.n
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn area_element(&self) -> f64 {
        let h = self.spacing();
        h * h
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }

    /// Index of site (i, j) after periodic reduction.
    #[inline]
    pub fn wrap_idx(&self, i: i64, j: i64) -> usize {
        let n = self.n as i64;
        self.idx(i.rem_euclid(n) as usize, j.rem_euclid(n) as usize)
    }

    #[inline]
    pub fn coords(&self, idx: usize) -> (f64, f64) {
        let h = self.spacing();
        ((idx % self.n) as f64 * h, (idx / self.n) as f64 * h)
    }

    /// Signed wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> &[i64] {
        &self.wavenumber
    }

    /// Fourier symbol of the positive spectral Laplacian, 4π²(k² + l²).
    pub fn laplacian_symbol(&self) -> &[f64] {
        &self.spectral_laplacian
    }

    /// Symbol of S∘Δ₅∘Sᵀ, where Sᵀ averages sites onto plaquettes, Δ₅ is
    /// the 5-point Laplacian on plaquettes and S averages back. This is the
    /// operator a complex gauge transformation induces on site curvature.
    pub fn compatible_laplacian_symbol(&self) -> &[f64] {
        &self.compatible_laplacian
    }

    pub fn integrate(&self, f: &[f64]) -> f64 {
        f.iter().sum::<f64>() * self.area_element()
    }

    pub fn mean(&self, f: &[f64]) -> f64 {
        f.iter().sum::<f64>() / f.len() as f64
    }

    /// Unnormalised forward 2D transform in place.
    pub fn fft2(&self, data: &mut [Complex64]) {
        self.transform(data, &self.fwd);
    }

    /// Inverse 2D transform in place, normalised so that `ifft2(fft2(x)) = x`.
    pub fn ifft2(&self, data: &mut [Complex64]) {
        self.transform(data, &self.inv);
        let s = 1.0 / self.sites() as f64;
        for v in data.iter_mut() {
            *v *= s;
        }
    }

    fn transform(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        let n = self.n;
        assert_eq!(data.len(), n * n);
        plan.process(data);
        let mut t = vec![Complex64::new(0.0, 0.0); n * n];
        transpose(data, &mut t, n);
        plan.process(&mut t);
        transpose(&t, data, n);
    }

    /// Multiply by a Fourier symbol.
    pub fn apply_symbol(&self, f: &[Complex64], symbol: &[f64]) -> Vec<Complex64> {
        let mut buf = f.to_vec();
        self.fft2(&mut buf);
        for (v, s) in buf.iter_mut().zip(symbol) {
            *v *= *s;
        }
        self.ifft2(&mut buf);
        buf
    }

    /// Real version of [`apply_symbol`](Self::apply_symbol); the symbol must be even.
    pub fn apply_symbol_real(&self, f: &[f64], symbol: &[f64]) -> Vec<f64> {
        let c: Vec<Complex64> = f.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.apply_symbol(&c, symbol).into_iter().map(|z| z.re).collect()
    }

    /// Pseudo-inverse of a nonnegative symbol: modes where it vanishes are dropped.
    pub fn solve_symbol_real(&self, rhs: &[f64], symbol: &[f64]) -> Vec<f64> {
        let inv: Vec<f64> = symbol
            .iter()
            .map(|&s| if s.abs() > 1e-12 { 1.0 / s } else { 0.0 })
            .collect();
        self.apply_symbol_real(rhs, &inv)
    }

    /// Torus distance between two points of the unit square.
    pub fn torus_distance(a: [f64; 2], b: [f64; 2]) -> f64 {
        let dx = (a[0] - b[0]).rem_euclid(1.0);
        let dy = (a[1] - b[1]).rem_euclid(1.0);
        let dx = dx.min(1.0 - dx);
        let dy = dy.min(1.0 - dy);
        (dx * dx + dy * dy).sqrt()
    }
}

fn transpose(src: &[Complex64], dst: &mut [Complex64], n: usize) {
    for j in 0..n {
        for i in 0..n {
            dst[i * n + j] = src[j * n + i];
        }
    }
}
