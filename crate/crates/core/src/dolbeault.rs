//! Numerical h⁰ and h¹ of twisted ∂̄ operators on the torus.
//!
//! Centred lattice differences have doubler modes that spoil the index, so
//! here ∂̄ is discretised spectrally: x-derivatives by FFT along rows, and
//! y-derivatives by FFT of the periodic representative e^{2πi d x y} s.
//! Rows that penalise the top quarter of the frequency band are stacked
//! under the operator; genuine holomorphic sections of moderate degree have
//! negligible energy there, while the aliased pseudo-kernel does not.

use std::f64::consts::PI;

use faer::complex_native::c64;
use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::elliptic::{LineBundle, TWO_TORSION_POINTS};
use crate::error::{Error, Result};
use crate::torus::{LatticeConnection, TorusGrid};

pub const DEFAULT_RANK_TOL: f64 = 1e-6;
pub const MIN_GAP_RATIO: f64 = 1e3;
/// Frequencies with |k| ≥ this fraction of n/2 are penalised.
const PENALTY_BAND: f64 = 0.75;

#[derive(Clone, Debug)]
pub struct DolbeaultProblem {
    grid: TorusGrid,
    components: Vec<LatticeConnection>,
    classes: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub h0: u64,
    pub h1: u64,
    /// Singular values of the ∂̄ block, descending, all components merged.
    pub singular_values: Vec<f64>,
    /// Worst of the ∂̄ and adjoint-block gap ratios.
    pub gap_ratio: f64,
    pub degrees: Vec<i64>,
}

impl DolbeaultProblem {
    /// Components must be constant-curvature connections.
    pub fn new(grid: &TorusGrid, components: Vec<LatticeConnection>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Precondition("need at least one component".into()));
        }
        if grid.n() < 16 {
            return Err(Error::InsufficientResolution(format!(
                "Dolbeault counts need n ≥ 16 (got {})",
                grid.n()
            )));
        }
        let mut classes = Vec::new();
        for c in &components {
            c.check_grid(grid)?;
            if c.degree().unsigned_abs() as usize > grid.n() / 8 {
                return Err(Error::InsufficientResolution(format!(
                    "|degree| = {} exceeds n/8",
                    c.degree().abs()
                )));
            }
            classes.push(c.flat_class(grid).ok_or_else(|| {
                Error::Precondition("component is not a constant-curvature connection".into())
            })?);
        }
        Ok(DolbeaultProblem {
            grid: grid.clone(),
            components,
            classes,
        })
    }

    pub fn single(grid: &TorusGrid, degree: i64, class: [f64; 2]) -> Result<Self> {
        Self::new(grid, vec![LatticeConnection::constant_curvature(grid, degree, class)])
    }

    /// E ⊗ L with E = M ⊕ M⁻¹: components M⊗L and M⁻¹⊗L.
    pub fn split(grid: &TorusGrid, m: LineBundle, l: LineBundle) -> Result<Self> {
        let a = m.tensor(&l);
        let b = m.dual().tensor(&l);
        Self::new(
            grid,
            vec![
                LatticeConnection::constant_curvature(grid, a.degree, a.class),
                LatticeConnection::constant_curvature(grid, b.degree, b.class),
            ],
        )
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.degree()).collect()
    }
}

/// Dense 1D spectral derivative matrix with the Nyquist mode removed.
fn derivative_matrix(n: usize) -> Vec<f64> {
    let mut d = vec![0.0; n * n];
    for r in 0..n {
        for c in 0..n {
            let mut acc = 0.0;
            for k in 1..(n / 2) {
                // Σ over ±k of 2πik e^{2πik(r−c)/n} = −4πk sin(2πk(r−c)/n)
                let ph = 2.0 * PI * k as f64 * (r as f64 - c as f64) / n as f64;
                acc -= 4.0 * PI * k as f64 * ph.sin();
            }
            d[r * n + c] = acc / n as f64;
        }
    }
    d
}

fn high_frequencies(n: usize) -> Vec<i64> {
    let cut = (PENALTY_BAND * n as f64 / 2.0).ceil() as i64;
    (0..n as i64)
        .map(|k| if k < n as i64 / 2 { k } else { k - n as i64 })
        .filter(|k| k.abs() >= cut)
        .collect()
}

/// Matrix of ½(∇ₓ + iσ∇ᵧ) (σ = ±1) on one component, with penalty rows.
fn assemble(grid: &TorusGrid, degree: i64, class: [f64; 2], sigma: f64, dn: &[f64]) -> Mat<c64> {
    let n = grid.n();
    let n2 = n * n;
    let h = grid.spacing();
    let df = degree as f64;
    let (ax, ay) = (2.0 * PI * class[0], 2.0 * PI * class[1]);
    let hi = high_frequencies(n);
    let lambda = PI * n as f64;
    let rows = n2 + 2 * n * hi.len();
    let mut a = vec![Complex64::new(0.0, 0.0); rows * n2];
    let iu = Complex64::new(0.0, 1.0);
    let half = 0.5;

    for j in 0..n {
        let y = j as f64 * h;
        for i in 0..n {
            let x = i as f64 * h;
            let r = grid.idx(i, j);
            for ip in 0..n {
                a[r * n2 + grid.idx(ip, j)] += half * dn[i * n + ip];
            }
            a[r * n2 + r] += half * iu * (2.0 * PI * df * y + ax);
            for jp in 0..n {
                let yp = jp as f64 * h;
                let ph = Complex64::from_polar(1.0, 2.0 * PI * df * x * (yp - y));
                a[r * n2 + grid.idx(i, jp)] += half * sigma * iu * ph * dn[j * n + jp];
            }
            a[r * n2 + r] += half * sigma * iu * iu * (ay - 2.0 * PI * df * x);
        }
    }
    let norm = lambda / (n as f64).sqrt();
    let mut r = n2;
    for j in 0..n {
        for &k in &hi {
            for i in 0..n {
                let ph = Complex64::from_polar(norm, -2.0 * PI * (k * i as i64) as f64 / n as f64);
                a[r * n2 + grid.idx(i, j)] = ph;
            }
            r += 1;
        }
    }
    for i in 0..n {
        let x = i as f64 * h;
        for &l in &hi {
            for j in 0..n {
                let y = j as f64 * h;
                let ph = Complex64::from_polar(
                    norm,
                    -2.0 * PI * (l * j as i64) as f64 / n as f64 + 2.0 * PI * df * x * y,
                );
                a[r * n2 + grid.idx(i, j)] = ph;
            }
            r += 1;
        }
    }
    Mat::<c64>::from_fn(rows, n2, |r, c| {
        let z = a[r * n2 + c];
        c64::new(z.re, z.im)
    })
}

struct Count {
    kernel: u64,
    gap: f64,
    values: Vec<f64>,
}

fn count_kernel(m: &Mat<c64>, rank_tol: f64) -> Count {
    let mut s: Vec<f64> = m.singular_values();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let thr = rank_tol * s[0];
    let kept_min = s.iter().copied().filter(|&v| v >= thr).fold(f64::INFINITY, f64::min);
    let dropped_max = s.iter().copied().filter(|&v| v < thr).fold(0.0, f64::max);
    let kernel = s.iter().filter(|&&v| v < thr).count() as u64;
    let gap = if kernel == 0 {
        kept_min / thr
    } else if dropped_max == 0.0 {
        f64::INFINITY
    } else {
        kept_min / dropped_max
    };
    Count {
        kernel,
        gap,
        values: s,
    }
}

/// h⁰ and h¹ by counting near-zero singular values of ∂̄ and of the
/// adjoint block.
pub fn h0(problem: &DolbeaultProblem, rank_tol: f64) -> Result<CohomologyReport> {
    if !(rank_tol > 0.0 && rank_tol < 1.0) {
        return Err(Error::Precondition("rank_tol must lie in (0, 1)".into()));
    }
    let n = problem.grid.n();
    let dn = derivative_matrix(n);
    let mut report = CohomologyReport {
        h0: 0,
        h1: 0,
        singular_values: Vec::new(),
        gap_ratio: f64::INFINITY,
        degrees: problem.degrees(),
    };
    for (conn, class) in problem.components.iter().zip(&problem.classes) {
        let d = conn.degree();
        let dbar = count_kernel(&assemble(&problem.grid, d, *class, 1.0, &dn), rank_tol);
        let adj = count_kernel(&assemble(&problem.grid, d, *class, -1.0, &dn), rank_tol);
        report.h0 += dbar.kernel;
        report.h1 += adj.kernel;
        report.gap_ratio = report.gap_ratio.min(dbar.gap).min(adj.gap);
        report.singular_values.extend(dbar.values);
    }
    report
        .singular_values
        .sort_by(|a, b| b.partial_cmp(a).unwrap());
    if report.gap_ratio < MIN_GAP_RATIO {
        return Err(Error::UnreliableRank {
            gap_ratio: report.gap_ratio,
        });
    }
    Ok(report)
}

/// Which Euler characteristic [`riemann_roch_expected`] evaluates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RrComplex {
    /// Expected complex dimension of the moduli space at degree d.
    Moduli { d: i64 },
    /// Fueter complex O → F → T² with deg T = k.
    Fueter { k: i64 },
    /// Real index of the transversality complex at degree d.
    Transversality { d: i64 },
    /// Σ χ over line bundles of the given degrees.
    LineBundles { degrees: Vec<i64> },
}

fn chi(rank: i64, degree: i64, genus: i64) -> i64 {
    degree + rank * (1 - genus)
}

pub fn riemann_roch_expected(genus: u32, complex: &RrComplex) -> Result<i64> {
    if genus > 2 {
        return Err(Error::UnsupportedGenus(genus));
    }
    let g = genus as i64;
    // deg K^{1/2}
    let half_k = g - 1;
    Ok(match complex {
        RrComplex::Moduli { d } => {
            // χ(E⊗L⊗K^{1/2}) − χ(O), E of rank 2 and degree 0.
            chi(2, 2 * d + 2 * half_k, g) - chi(1, 0, g)
        }
        RrComplex::Fueter { k } => {
            // F = E*⊗K^{1/2}⊗T⁻¹.
            let deg_f = 2 * half_k - 2 * k;
            chi(1, 0, g) - chi(2, deg_f, g) - chi(1, 2 * k, g)
        }
        RrComplex::Transversality { d } => {
            // 2g + 2·ind_C(∂̄ on L*⊗E) − 1
            2 * g + 2 * chi(2, -2 * d, g) - 1
        }
        RrComplex::LineBundles { degrees } => degrees.iter().map(|&e| chi(1, e, g)).sum(),
    })
}

/// Outcome of the search for Fueter data on a split genus-1 bundle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FueterSearch {
    pub exists: bool,
    /// A line bundle N meeting both conditions, if any.
    pub witness: Option<LineBundle>,
    /// Largest deg N searched: h⁰(E⊗K^{1/2}) + 2g − 2.
    pub degree_cap: i64,
}

/// Is there N with deg N ≥ 0, h⁰(N²) > 0 and h⁰(E⊗K^{1/2}⊗N⁻¹) > 0, for
/// E = M ⊕ M⁻¹ on the elliptic curve with deg M = m and M's class given?
///
/// h⁰ only jumps where N², M N⁻¹ or M⁻¹N⁻¹ becomes trivial, so scanning
/// the four two-torsion points, ±class(M) and one generic class at each
/// degree is exhaustive.
pub fn fueter_obstruction_exists(m: i64, jacobian_class: [f64; 2]) -> Result<FueterSearch> {
    if m < 0 {
        return Err(Error::Precondition("deg M must be nonnegative".into()));
    }
    let mb = LineBundle::new(m, jacobian_class);
    let cap = (mb.h0() + mb.dual().h0()) as i64;
    let mut candidates: Vec<[f64; 2]> = TWO_TORSION_POINTS.to_vec();
    candidates.push(jacobian_class);
    candidates.push([-jacobian_class[0], -jacobian_class[1]]);
    candidates.push(crate::elliptic::GENERIC_CLASS);
    for k in 0..=cap {
        for c in &candidates {
            let nb = LineBundle::new(k, *c);
            let sq = nb.pow(2).h0();
            let rest = mb.tensor(&nb.dual()).h0() + mb.dual().tensor(&nb.dual()).h0();
            if sq > 0 && rest > 0 {
                return Ok(FueterSearch {
                    exists: true,
                    witness: Some(nb),
                    degree_cap: cap,
                });
            }
        }
    }
    Ok(FueterSearch {
        exists: false,
        witness: None,
        degree_cap: cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{GENERIC_CLASS, TWO_TORSION_CLASS};
    use crate::torus::make_grid;

    #[test]
    fn guard_rejects_coarse_grids() {
        let g = make_grid(16).unwrap();
        assert!(matches!(
            DolbeaultProblem::single(&g, 3, GENERIC_CLASS),
            Err(Error::InsufficientResolution(_))
        ));
    }

    #[test]
    fn degree_two_generic() {
        let g = make_grid(16).unwrap();
        let r = h0(&DolbeaultProblem::single(&g, 2, GENERIC_CLASS).unwrap(), DEFAULT_RANK_TOL).unwrap();
        assert_eq!((r.h0, r.h1), (2, 0));
    }

    #[test]
    fn degree_zero_split() {
        let g = make_grid(16).unwrap();
        let t = h0(&DolbeaultProblem::single(&g, 0, [0.0, 0.0]).unwrap(), DEFAULT_RANK_TOL).unwrap();
        let n = h0(&DolbeaultProblem::single(&g, 0, TWO_TORSION_CLASS).unwrap(), DEFAULT_RANK_TOL).unwrap();
        assert_eq!((t.h0, t.h1), (1, 1));
        assert_eq!((n.h0, n.h1), (0, 0));
    }

    #[test]
    fn rr_examples() {
        assert_eq!(riemann_roch_expected(1, &RrComplex::Moduli { d: 0 }).unwrap(), 0);
        assert_eq!(riemann_roch_expected(2, &RrComplex::Moduli { d: 0 }).unwrap(), 1);
        assert_eq!(riemann_roch_expected(0, &RrComplex::Moduli { d: 1 }).unwrap(), 1);
        for g in 0..=2 {
            for d in -3..=3 {
                assert_eq!(
                    riemann_roch_expected(g, &RrComplex::Transversality { d }).unwrap(),
                    2 * (-2 * d + 2 - g as i64) - 1
                );
            }
        }
        assert!(matches!(
            riemann_roch_expected(3, &RrComplex::Fueter { k: 0 }),
            Err(Error::UnsupportedGenus(3))
        ));
    }

    #[test]
    fn fueter_examples() {
        let s = fueter_obstruction_exists(1, GENERIC_CLASS).unwrap();
        assert!(s.exists);
        assert!(!fueter_obstruction_exists(0, GENERIC_CLASS).unwrap().exists);
        assert!(fueter_obstruction_exists(0, [0.0, 0.0]).unwrap().exists);
        assert!(fueter_obstruction_exists(0, TWO_TORSION_CLASS).unwrap().exists);
    }
}
