//! Limiting configurations: the simple gauge |α′| = |β′|, vanishing
//! exponents at the zeros, and the t → 0 concentration sweep.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kazdan_warner::KwSolution;
use crate::torus::{TorusGrid, TwistedField};
use crate::vortex::{complex_gauge_apply, solve_gauge, HolomorphicTriple};

pub const DEFAULT_MASK_SPACINGS: f64 = 3.0;
pub const DEFAULT_BALL_RADIUS: f64 = 0.1;
/// |α′| and |β′| must agree this well off the masks.
pub const BALANCE_TOLERANCE: f64 = 1e-8;
const EXPONENT_SAMPLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroPoint {
    pub position: [f64; 2],
    pub alpha_order: i64,
    pub beta_order: i64,
    /// ord α − ord β.
    pub weight: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LimitingState {
    /// √(|β|/|α|) off the masks, 1 on masked sites.
    pub h: Vec<f64>,
    pub masked: Vec<bool>,
    pub alpha_prime: [TwistedField; 2],
    pub beta_prime: [TwistedField; 2],
    pub zero_points: Vec<ZeroPoint>,
    pub mask_radius: f64,
}

impl LimitingState {
    pub fn weight_sum(&self) -> i64 {
        self.zero_points.iter().map(|z| z.weight).sum()
    }

    /// max ||α′| − |β′|| over unmasked sites.
    pub fn balance_defect(&self) -> f64 {
        let a = norms(&self.alpha_prime);
        let b = norms(&self.beta_prime);
        (0..a.len())
            .filter(|&k| !self.masked[k])
            .map(|k| (a[k] - b[k]).abs())
            .fold(0.0, f64::max)
    }

    /// |Ψ′| = √(|α||β|), defined through the zeros as well.
    pub fn modulus(&self) -> Vec<f64> {
        let a = norms(&self.alpha_prime);
        let b = norms(&self.beta_prime);
        a.iter().zip(&b).map(|(x, y)| (x * y).sqrt()).collect()
    }
}

fn norms(f: &[TwistedField; 2]) -> Vec<f64> {
    f[0].values
        .iter()
        .zip(&f[1].values)
        .map(|(a, b)| (a.norm_sqr() + b.norm_sqr()).sqrt())
        .collect()
}

fn arg_step(a: Complex64, b: Complex64) -> f64 {
    (b * a.conj()).arg()
}

/// Winding of a field around the square loop of half-width `r` sites
/// centred on site (i, j). `None` if the field nearly vanishes on the loop.
fn square_winding(f: &TwistedField, i: i64, j: i64, r: i64, floor: f64) -> Option<i64> {
    let mut pts = Vec::with_capacity(8 * r as usize);
    for t in -r..r {
        pts.push((i + t, j - r));
    }
    for t in -r..r {
        pts.push((i + r, j + t));
    }
    for t in -r..r {
        pts.push((i - t, j + r));
    }
    for t in -r..r {
        pts.push((i - r, j - t));
    }
    let mut total = 0.0;
    for k in 0..pts.len() {
        let a = f.at(pts[k].0, pts[k].1);
        let b = f.at(pts[(k + 1) % pts.len()].0, pts[(k + 1) % pts.len()].1);
        if a.norm() <= floor || b.norm() <= floor {
            return None;
        }
        total += arg_step(a, b);
    }
    Some((total / (2.0 * PI)).round() as i64)
}

/// Plaquettes with nonzero winding, with the zero refined by a local
/// linear fit s ≈ c₀ + c₁ z through the four corners.
fn candidate_zeros(grid: &TorusGrid, f: &TwistedField) -> Vec<[f64; 2]> {
    let n = grid.n() as i64;
    let h = grid.spacing();
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let c = [f.at(i, j), f.at(i + 1, j), f.at(i + 1, j + 1), f.at(i, j + 1)];
            let w: f64 = (0..4).map(|k| arg_step(c[k], c[(k + 1) % 4])).sum();
            if (w / (2.0 * PI)).round() == 0.0 {
                continue;
            }
            // Corners at local (0,0), (1,0), (1,1), (0,1) in units of h.
            let c1x = 0.5 * ((c[1] - c[0]) + (c[2] - c[3]));
            let c1y = 0.5 * ((c[3] - c[0]) + (c[2] - c[1]));
            let c1 = 0.5 * (c1x - Complex64::new(0.0, 1.0) * c1y);
            let centre = 0.25 * (c[0] + c[1] + c[2] + c[3]);
            let mut off = if c1.norm() > 0.0 { -centre / c1 } else { Complex64::new(0.0, 0.0) };
            if off.norm() > 1.0 {
                off = Complex64::new(0.0, 0.0);
            }
            let x = (i as f64 + 0.5 + off.re) * h;
            let y = (j as f64 + 0.5 + off.im) * h;
            out.push([x.rem_euclid(1.0), y.rem_euclid(1.0)]);
        }
    }
    out
}

fn nearest_site(grid: &TorusGrid, p: [f64; 2]) -> (i64, i64) {
    let n = grid.n() as f64;
    ((p[0] * n).round() as i64, (p[1] * n).round() as i64)
}

fn order_at(grid: &TorusGrid, fields: &[TwistedField; 2], p: [f64; 2], r: i64) -> Result<i64> {
    let (i, j) = nearest_site(grid, p);
    let mut ord: Option<i64> = None;
    for f in fields.iter().filter(|f| !f.is_zero()) {
        let floor = 1e-8 * f.sup_norm();
        let w = square_winding(f, i, j, r, floor).ok_or_else(|| {
            Error::ZeroOnMaskBoundary(format!("field vanishes on the loop around {p:?}"))
        })?;
        ord = Some(ord.map_or(w, |o: i64| o.min(w)));
    }
    Ok(ord.unwrap_or(0))
}

/// Gauge by h = √(|β|/|α|) away from the zeros, locating the zeros of α and
/// β with their weights ord α − ord β.
pub fn simple_gauge(grid: &TorusGrid, triple: &HolomorphicTriple, mask_radius: f64) -> Result<LimitingState> {
    if triple.alpha_is_zero() || triple.beta_is_zero() {
        return Err(Error::Precondition("α and β must both be nonzero".into()));
    }
    let h = grid.spacing();
    if !(mask_radius >= h) {
        return Err(Error::Precondition("mask radius must be at least one spacing".into()));
    }
    let mut cands: Vec<[f64; 2]> = Vec::new();
    for f in triple.alpha.iter().chain(&triple.beta).filter(|f| !f.is_zero()) {
        cands.extend(candidate_zeros(grid, f));
    }
    // Merge candidates that sit in neighbouring plaquettes.
    let mut merged: Vec<[f64; 2]> = Vec::new();
    for c in cands {
        if !merged.iter().any(|m| TorusGrid::torus_distance(*m, c) < 1.5 * h) {
            merged.push(c);
        }
    }
    for (k, z) in merged.iter().enumerate() {
        for w in &merged[k + 1..] {
            let dist = TorusGrid::torus_distance(*z, *w);
            if dist <= 3.0 * mask_radius {
                return Err(Error::ZerosTooClose(format!(
                    "{z:?} and {w:?} are {dist:.4} apart, need > {:.4}",
                    3.0 * mask_radius
                )));
            }
        }
    }
    let r = (mask_radius / h).round().max(2.0) as i64;
    let mut zeros = Vec::new();
    for p in merged {
        let a = order_at(grid, &triple.alpha, p, r)?;
        let b = order_at(grid, &triple.beta, p, r)?;
        if a == 0 && b == 0 {
            continue;
        }
        if a > 0 && b > 0 {
            return Err(Error::Precondition(format!("α and β vanish together at {p:?}")));
        }
        zeros.push(ZeroPoint {
            position: p,
            alpha_order: a,
            beta_order: b,
            weight: a - b,
        });
    }
    let masked: Vec<bool> = (0..grid.sites())
        .map(|k| {
            let (x, y) = grid.coords(k);
            zeros
                .iter()
                .any(|z| TorusGrid::torus_distance([x, y], z.position) <= mask_radius)
        })
        .collect();
    let na = norms(&triple.alpha);
    let nb = norms(&triple.beta);
    let mut gauge = vec![1.0; grid.sites()];
    for k in 0..grid.sites() {
        if masked[k] {
            continue;
        }
        if na[k] == 0.0 || nb[k] == 0.0 {
            return Err(Error::ZeroOnMaskBoundary(
                "α or β vanishes outside every mask".into(),
            ));
        }
        gauge[k] = (nb[k] / na[k]).sqrt();
    }
    let inv: Vec<f64> = gauge.iter().map(|g| 1.0 / g).collect();
    Ok(LimitingState {
        alpha_prime: [triple.alpha[0].weighted(&gauge), triple.alpha[1].weighted(&gauge)],
        beta_prime: [triple.beta[0].weighted(&inv), triple.beta[1].weighted(&inv)],
        h: gauge,
        masked,
        zero_points: zeros,
        mask_radius,
    })
}

/// Bilinear interpolation of a periodic site function.
fn sample(grid: &TorusGrid, f: &[f64], x: f64, y: f64) -> f64 {
    let n = grid.n() as f64;
    let (u, v) = (x * n, y * n);
    let (i0, j0) = (u.floor(), v.floor());
    let (s, t) = (u - i0, v - j0);
    let (i0, j0) = (i0 as i64, j0 as i64);
    let g = |i: i64, j: i64| f[grid.wrap_idx(i, j)];
    (1.0 - s) * (1.0 - t) * g(i0, j0)
        + s * (1.0 - t) * g(i0 + 1, j0)
        + (1.0 - s) * t * g(i0, j0 + 1)
        + s * t * g(i0 + 1, j0 + 1)
}

/// Least-squares slope of the circle mean of log|Ψ| against log r.
pub fn vanishing_exponent(grid: &TorusGrid, modulus: &[f64], zero_point: [f64; 2], radii: &[f64]) -> Result<f64> {
    let h = grid.spacing();
    if radii.len() < 4 {
        return Err(Error::InsufficientResolution("need at least 4 radii".into()));
    }
    if radii.iter().any(|&r| !(r > 2.0 * h) || r >= 0.25) {
        return Err(Error::InsufficientResolution(
            "radii must exceed two spacings and stay below 1/4".into(),
        ));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &r in radii {
        let mut acc = 0.0;
        for k in 0..EXPONENT_SAMPLES {
            let a = 2.0 * PI * k as f64 / EXPONENT_SAMPLES as f64;
            let v = sample(grid, modulus, zero_point[0] + r * a.cos(), zero_point[1] + r * a.sin());
            if !(v > 0.0) {
                return Err(Error::InsufficientResolution(format!(
                    "modulus vanishes on the circle of radius {r}"
                )));
            }
            acc += v.ln();
        }
        xs.push(r.ln());
        ys.push(acc / EXPONENT_SAMPLES as f64);
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// Radii 1.5, 2, …, 3.5 mask radii: outside the mask, inside the fit annulus.
pub fn default_radii(mask_radius: f64) -> Vec<f64> {
    [1.5, 2.0, 2.5, 3.0, 3.5].iter().map(|s| s * mask_radius).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroFlux {
    pub zero_id: usize,
    pub position: [f64; 2],
    pub weight: i64,
    /// ∫ i∗F′ over the ball around the zero.
    pub flux: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRecord {
    pub t: f64,
    /// `None` when Newton stalled at this t.
    pub f_t: Option<KwSolution>,
    pub stalled: bool,
    pub zeros: Vec<ZeroFlux>,
    /// ‖ |α′| − |β′| ‖_{L²}.
    pub global_l2_alpha_minus_beta: f64,
}

fn ball_fluxes(grid: &TorusGrid, triple: &HolomorphicTriple, zeros: &[ZeroPoint], ball_radius: f64) -> Vec<ZeroFlux> {
    let dens = triple.conn.curvature_density();
    let h = grid.spacing();
    let area = grid.area_element();
    zeros
        .iter()
        .enumerate()
        .map(|(id, z)| {
            let flux = (0..grid.sites())
                .filter(|&k| {
                    let (x, y) = grid.coords(k);
                    TorusGrid::torus_distance([x + 0.5 * h, y + 0.5 * h], z.position) <= ball_radius
                })
                .map(|k| dens[k] * area)
                .sum();
            ZeroFlux {
                zero_id: id,
                position: z.position,
                weight: z.weight,
                flux,
            }
        })
        .collect()
}

/// Solve the rescaled equations t²·i∗F + |α|² − |β|² = t²·2πτ, i.e. the
/// Kazdan–Warner problem with P = |α|²/t², Q = |β|²/t², for each t, and
/// record the curvature captured in a ball around each zero.
pub fn t_sweep(
    grid: &TorusGrid,
    triple: &HolomorphicTriple,
    t_list: &[f64],
    tau: f64,
    ball_radius: f64,
    tol: f64,
) -> Result<(LimitingState, Vec<SweepRecord>)> {
    if t_list.is_empty() || t_list.iter().any(|t| !(*t > 0.0)) {
        return Err(Error::Precondition("t values must be positive".into()));
    }
    if t_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Precondition("t values must be strictly descending".into()));
    }
    if !(ball_radius > 0.0 && ball_radius < 0.5) {
        return Err(Error::Precondition("ball radius must lie in (0, 1/2)".into()));
    }
    let state = simple_gauge(grid, triple, DEFAULT_MASK_SPACINGS * grid.spacing())?;
    let records: Vec<Result<SweepRecord>> = t_list
        .par_iter()
        .map(|&t| {
            match solve_gauge(grid, triple, tau, 1.0 / (t * t), tol) {
                Ok((f, sol)) => {
                    let g = complex_gauge_apply(grid, &f, triple)?;
                    let a = g.alpha_sq();
                    let b = g.beta_sq();
                    let l2 = (grid.integrate(
                        &a.iter().zip(&b).map(|(x, y)| (x.sqrt() - y.sqrt()).powi(2)).collect::<Vec<_>>(),
                    ))
                    .sqrt();
                    Ok(SweepRecord {
                        t,
                        f_t: Some(sol),
                        stalled: false,
                        zeros: ball_fluxes(grid, &g, &state.zero_points, ball_radius),
                        global_l2_alpha_minus_beta: l2,
                    })
                }
                Err(Error::Stalled { .. }) => Ok(SweepRecord {
                    t,
                    f_t: None,
                    stalled: true,
                    zeros: Vec::new(),
                    global_l2_alpha_minus_beta: f64::NAN,
                }),
                Err(e) => Err(e),
            }
        })
        .collect();
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;
    Ok((state, records))
}

/// Soft check: is ‖|α′| − |β′|‖ nonincreasing as t decreases?
pub fn sweep_is_monotone(records: &[SweepRecord]) -> bool {
    records
        .windows(2)
        .all(|w| w[1].stalled || w[0].stalled || w[1].global_l2_alpha_minus_beta <= w[0].global_l2_alpha_minus_beta + 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::make_grid;

    #[test]
    fn constant_triple_has_no_zeros() {
        let g = make_grid(16).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let t = HolomorphicTriple::constant(&g, [one, z], [z, one]).unwrap();
        let s = simple_gauge(&g, &t, 3.0 * g.spacing()).unwrap();
        assert!(s.zero_points.is_empty());
        assert!(s.h.iter().all(|v| (v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn radii_checks() {
        let g = make_grid(64).unwrap();
        let m = vec![1.0; g.sites()];
        assert!(matches!(
            vanishing_exponent(&g, &m, [0.5, 0.5], &[0.1, 0.12, 0.14]),
            Err(Error::InsufficientResolution(_))
        ));
        assert!(matches!(
            vanishing_exponent(&g, &m, [0.5, 0.5], &[0.01, 0.1, 0.12, 0.14]),
            Err(Error::InsufficientResolution(_))
        ));
        let e = vanishing_exponent(&g, &m, [0.5, 0.5], &[0.05, 0.07, 0.09, 0.11]).unwrap();
        assert!(e.abs() < 1e-12);
    }
}
