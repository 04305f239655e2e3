//! Damped Newton solver for Δf + P e^{2f} − Q e^{−2f} = w on the torus.
//!
//! Δ is the positive Laplacian given by a Fourier symbol: the spectral one
//! by default, or the plaquette-compatible one used by the vortex module so
//! that the solved gauge reproduces lattice curvature exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::TorusGrid;

/// Integral tolerance used to classify the case.
pub const CASE_TOLERANCE: f64 = 1e-10;
pub const MAX_NEWTON: usize = 60;
pub const MAX_HALVINGS: usize = 30;
pub const CG_RELATIVE: f64 = 1e-2;
pub const MAX_CG: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    /// ∫(P − Q) > 0 and ∫w > 0.
    Lemma,
    /// ∫w = 0 with P and Q both not identically zero.
    Remark,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KwOperator {
    #[default]
    Spectral,
    GaugeCompatible,
}

#[derive(Clone, Debug)]
pub struct KwProblem {
    grid: TorusGrid,
    p: Vec<f64>,
    q: Vec<f64>,
    w: Vec<f64>,
    case: CaseTag,
    operator: KwOperator,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KwSolution {
    pub f: Vec<f64>,
    pub residual_linf: f64,
    /// Newton passes, counting the final converged residual evaluation.
    pub newton_iters: usize,
    pub damping_events: usize,
    /// Constant removed before iterating (nonzero only in the remark case).
    pub shift: f64,
}

/// Bracket v₁ + v₂ ± M from the sub/supersolution construction.
#[derive(Clone, Debug)]
pub struct Bracket {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl KwProblem {
    pub fn new(grid: &TorusGrid, p: Vec<f64>, q: Vec<f64>, w: Vec<f64>, case: CaseTag) -> Result<Self> {
        let n2 = grid.sites();
        if p.len() != n2 || q.len() != n2 || w.len() != n2 {
            return Err(Error::Precondition(format!("fields must have {n2} entries")));
        }
        if p.iter().chain(&q).chain(&w).any(|v| !v.is_finite()) {
            return Err(Error::Precondition("fields must be finite".into()));
        }
        if p.iter().chain(&q).any(|&v| v < 0.0) {
            return Err(Error::Precondition("P and Q must be nonnegative".into()));
        }
        let ip = grid.integrate(&p);
        let iq = grid.integrate(&q);
        let iw = grid.integrate(&w);
        let mut w = w;
        match case {
            CaseTag::Lemma => {
                if !(ip - iq > CASE_TOLERANCE && iw > CASE_TOLERANCE) {
                    return Err(Error::HypothesesViolated(format!(
                        "lemma case needs ∫(P−Q) > 0 and ∫w > 0 (got {:e}, {:e})",
                        ip - iq,
                        iw
                    )));
                }
            }
            CaseTag::Remark => {
                if iw.abs() > CASE_TOLERANCE {
                    return Err(Error::MeanDiscrepancy(iw));
                }
                if !(ip > 0.0 && iq > 0.0) {
                    return Err(Error::HypothesesViolated(
                        "remark case needs P and Q not identically zero".into(),
                    ));
                }
                let m = grid.mean(&w);
                for v in w.iter_mut() {
                    *v -= m;
                }
            }
        }
        Ok(KwProblem {
            grid: grid.clone(),
            p,
            q,
            w,
            case,
            operator: KwOperator::Spectral,
        })
    }

    /// Pick the case from ∫w.
    pub fn auto(grid: &TorusGrid, p: Vec<f64>, q: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        let case = if grid.integrate(&w).abs() <= CASE_TOLERANCE {
            CaseTag::Remark
        } else {
            CaseTag::Lemma
        };
        Self::new(grid, p, q, w, case)
    }

    pub fn with_operator(mut self, op: KwOperator) -> Self {
        self.operator = op;
        self
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }
    pub fn p(&self) -> &[f64] {
        &self.p
    }
    pub fn q(&self) -> &[f64] {
        &self.q
    }
    pub fn w(&self) -> &[f64] {
        &self.w
    }
    pub fn case(&self) -> CaseTag {
        self.case
    }
    pub fn operator(&self) -> KwOperator {
        self.operator
    }

    pub fn symbol(&self) -> &[f64] {
        match self.operator {
            KwOperator::Spectral => self.grid.laplacian_symbol(),
            KwOperator::GaugeCompatible => self.grid.compatible_laplacian_symbol(),
        }
    }

    /// The constant c with ∫e^{2c}P = ∫e^{−2c}Q in the remark case.
    pub fn remark_shift(&self) -> f64 {
        match self.case {
            CaseTag::Lemma => 0.0,
            CaseTag::Remark => 0.25 * (self.grid.integrate(&self.q) / self.grid.integrate(&self.p)).ln(),
        }
    }

    fn residual(&self, p: &[f64], q: &[f64], f: &[f64]) -> Vec<f64> {
        let lf = self.grid.apply_symbol_real(f, self.symbol());
        (0..f.len())
            .map(|k| lf[k] + p[k] * (2.0 * f[k]).exp() - q[k] * (-2.0 * f[k]).exp() - self.w[k])
            .collect()
    }
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// ‖Δf + Pe^{2f} − Qe^{−2f} − w‖∞.
pub fn kw_verify(problem: &KwProblem, f: &[f64]) -> Result<f64> {
    if f.len() != problem.grid.sites() {
        return Err(Error::Precondition("f has the wrong length".into()));
    }
    Ok(sup(&problem.residual(&problem.p, &problem.q, f)))
}

pub fn solve_kw(problem: &KwProblem, tol: f64) -> Result<KwSolution> {
    solve_kw_from(problem, tol, None)
}

/// [`solve_kw`] with an explicit starting point.
pub fn solve_kw_from(problem: &KwProblem, tol: f64, initial: Option<&[f64]>) -> Result<KwSolution> {
    if !(tol >= 1e-12) {
        return Err(Error::Precondition("tol must be at least 1e-12".into()));
    }
    let grid = &problem.grid;
    let c = problem.remark_shift();
    let (e2, em2) = ((2.0 * c).exp(), (-2.0 * c).exp());
    let p: Vec<f64> = problem.p.iter().map(|v| v * e2).collect();
    let q: Vec<f64> = problem.q.iter().map(|v| v * em2).collect();
    let sym = problem.symbol();

    let mut g: Vec<f64> = match initial {
        Some(f0) => {
            if f0.len() != grid.sites() {
                return Err(Error::Precondition("initial guess has the wrong length".into()));
            }
            f0.iter().map(|v| v - c).collect()
        }
        None => {
            let m = grid.mean(&problem.w);
            let rhs: Vec<f64> = problem.w.iter().map(|v| v - m).collect();
            grid.solve_symbol_real(&rhs, sym)
        }
    };

    let mut damping = 0;
    let mut r = problem.residual(&p, &q, &g);
    let mut rs = sup(&r);
    for iter in 1..=MAX_NEWTON {
        if rs <= tol {
            return Ok(KwSolution {
                f: g.iter().map(|v| v + c).collect(),
                residual_linf: rs,
                newton_iters: iter,
                damping_events: damping,
                shift: c,
            });
        }
        let pot: Vec<f64> = (0..g.len())
            .map(|k| 2.0 * p[k] * (2.0 * g[k]).exp() + 2.0 * q[k] * (-2.0 * g[k]).exp())
            .collect();
        let neg_r: Vec<f64> = r.iter().map(|v| -v).collect();
        let delta = pcg(grid, sym, &pot, &neg_r);

        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<f64> = g.iter().zip(&delta).map(|(a, b)| a + step * b).collect();
            let rt = problem.residual(&p, &q, &trial);
            let rts = sup(&rt);
            if rts < rs {
                g = trial;
                r = rt;
                rs = rts;
                accepted = true;
                break;
            }
            step *= 0.5;
            damping += 1;
        }
        if !accepted {
            return Err(Error::Stalled {
                iterations: iter,
                best_residual: rs,
            });
        }
    }
    if rs <= tol {
        return Ok(KwSolution {
            f: g.iter().map(|v| v + c).collect(),
            residual_linf: rs,
            newton_iters: MAX_NEWTON + 1,
            damping_events: damping,
            shift: c,
        });
    }
    Err(Error::Stalled {
        iterations: MAX_NEWTON,
        best_residual: rs,
    })
}

/// Preconditioned CG for (Δ + V) x = b, preconditioner (Δ + mean V)⁻¹.
fn pcg(grid: &TorusGrid, sym: &[f64], pot: &[f64], b: &[f64]) -> Vec<f64> {
    let vbar = grid.mean(pot).max(1e-300);
    let pre: Vec<f64> = sym.iter().map(|s| 1.0 / (s + vbar)).collect();
    let apply = |x: &[f64]| -> Vec<f64> {
        let lx = grid.apply_symbol_real(x, sym);
        lx.iter().zip(pot).zip(x).map(|((l, v), xi)| l + v * xi).collect()
    };
    let target = CG_RELATIVE * l2(b);
    let mut x = vec![0.0; b.len()];
    let mut r = b.to_vec();
    let mut z = grid.apply_symbol_real(&r, &pre);
    let mut d = z.clone();
    let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
    for _ in 0..MAX_CG {
        if l2(&r) <= target {
            break;
        }
        let ad = apply(&d);
        let dad: f64 = d.iter().zip(&ad).map(|(a, b)| a * b).sum();
        if dad <= 0.0 {
            break;
        }
        let alpha = rz / dad;
        for k in 0..x.len() {
            x[k] += alpha * d[k];
            r[k] -= alpha * ad[k];
        }
        z = grid.apply_symbol_real(&r, &pre);
        let rz_new: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let beta = rz_new / rz;
        rz = rz_new;
        for k in 0..d.len() {
            d[k] = z[k] + beta * d[k];
        }
    }
    x
}

/// v₁ + v₂ ± M with Δv₁ = w, Δv₂ = Q′ − P′, M = sup|v₁ + v₂|, for the
/// normalised remark problem; the solution minus the shift lies inside.
pub fn bracket(problem: &KwProblem) -> Result<Bracket> {
    if problem.case != CaseTag::Remark {
        return Err(Error::Precondition("the bracket is built for the remark case".into()));
    }
    let grid = &problem.grid;
    let c = problem.remark_shift();
    let sym = problem.symbol();
    let v1 = grid.solve_symbol_real(&problem.w, sym);
    let mut rhs: Vec<f64> = (0..grid.sites())
        .map(|k| problem.q[k] * (-2.0 * c).exp() - problem.p[k] * (2.0 * c).exp())
        .collect();
    let m = grid.mean(&rhs);
    for v in rhs.iter_mut() {
        *v -= m;
    }
    let v2 = grid.solve_symbol_real(&rhs, sym);
    let center: Vec<f64> = v1.iter().zip(&v2).map(|(a, b)| a + b).collect();
    let radius = sup(&center);
    Ok(Bracket { center, radius })
}
