//! Holomorphic triples, complex gauge transformations and the
//! Hitchin–Kobayashi passage to vortex solutions.
//!
//! The background bundle is split, E = M ⊕ M⁻¹ with deg M = m, and carries
//! a fixed constant-curvature connection. With L of degree d the four
//! components live in
//!
//! | field | bundle      | degree  |
//! |-------|-------------|---------|
//! | α₁    | M ⊗ L       | d + m   |
//! | α₂    | M⁻¹ ⊗ L     | d − m   |
//! | β₁    | M⁻¹ ⊗ L⁻¹   | −d − m  |
//! | β₂    | M ⊗ L⁻¹     | m − d   |

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kazdan_warner::{solve_kw, CaseTag, KwOperator, KwProblem, KwSolution};
use crate::torus::{
    dbar, site_curvature, sites_to_plaquettes, theta_section, LatticeConnection,
    ThetaSpec, TorusGrid, TwistedField,
};

/// Relative bound on the pairing α₁β₁ + α₂β₂.
pub const PAIRING_TOLERANCE: f64 = 1e-10;
/// The solver is never run looser than this.
pub const MAX_KW_TOLERANCE: f64 = 1e-9;
pub const DEGREE_IDENTITY_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Alpha(usize),
    Beta(usize),
}

impl Slot {
    /// Powers of (L, M) in the bundle of this slot.
    pub fn charges(self) -> (i64, i64) {
        match self {
            Slot::Alpha(0) => (1, 1),
            Slot::Alpha(_) => (1, -1),
            Slot::Beta(0) => (-1, -1),
            Slot::Beta(_) => (-1, 1),
        }
    }
}

const SLOTS: [Slot; 4] = [Slot::Alpha(0), Slot::Alpha(1), Slot::Beta(0), Slot::Beta(1)];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolomorphicTriple {
    pub d: i64,
    pub m: i64,
    /// Connection on L.
    pub conn: LatticeConnection,
    /// Fixed connection on M.
    pub background: LatticeConnection,
    pub alpha: [TwistedField; 2],
    pub beta: [TwistedField; 2],
    /// n² · max ‖∂̄ component‖∞ at construction.
    pub holo_constant: f64,
}

impl HolomorphicTriple {
    pub fn new(
        grid: &TorusGrid,
        conn: LatticeConnection,
        background: LatticeConnection,
        alpha: [TwistedField; 2],
        beta: [TwistedField; 2],
    ) -> Result<Self> {
        conn.check_grid(grid)?;
        background.check_grid(grid)?;
        let mut t = HolomorphicTriple {
            d: conn.degree(),
            m: background.degree(),
            conn,
            background,
            alpha,
            beta,
            holo_constant: 0.0,
        };
        for s in SLOTS {
            let f = t.field(s);
            f.check(grid)?;
            let want = t.component_connection(s).degree();
            if f.degree != want {
                return Err(Error::DegreeMismatch {
                    expected: want,
                    found: f.degree,
                });
            }
        }
        let pr = t.pairing_residual();
        let scale = t.alpha_sup() * t.beta_sup();
        if pr > PAIRING_TOLERANCE * scale {
            return Err(Error::Precondition(format!(
                "pairing α₁β₁ + α₂β₂ is {pr:e}, not zero"
            )));
        }
        let n2 = (grid.n() * grid.n()) as f64;
        t.holo_constant = n2 * t.holomorphicity(grid)?.iter().fold(0.0f64, |a, b| a.max(*b));
        Ok(t)
    }

    /// Constant sections on trivial bundles (m = d = 0).
    pub fn constant(grid: &TorusGrid, alpha: [Complex64; 2], beta: [Complex64; 2]) -> Result<Self> {
        let flat = LatticeConnection::constant_curvature(grid, 0, [0.0, 0.0]);
        let c = |z: Complex64| TwistedField::from_fn(grid, 0, move |_, _| z);
        Self::new(
            grid,
            flat.clone(),
            flat,
            [c(alpha[0]), c(alpha[1])],
            [c(beta[0]), c(beta[1])],
        )
    }

    /// α = (θ_p, 0), β = (0, θ_q) with θ_p ∈ H⁰(M⊗L) vanishing at
    /// `alpha_zeros` and θ_q ∈ H⁰(M⊗L⁻¹) vanishing at `beta_zeros`, each of
    /// unit L² norm. Degrees are m + d and m − d; the classes of M and L
    /// are fixed by the zeros.
    pub fn theta(grid: &TorusGrid, alpha_zeros: Vec<[f64; 2]>, beta_zeros: Vec<[f64; 2]>) -> Result<Self> {
        let (a, b) = (alpha_zeros.len() as i64, beta_zeros.len() as i64);
        if (a + b) % 2 != 0 || a == 0 || b == 0 {
            return Err(Error::Precondition(
                "need nonempty zero sets of equal parity".into(),
            ));
        }
        let (m, d) = ((a + b) / 2, (a - b) / 2);
        let sp = ThetaSpec::new(alpha_zeros);
        let sq = ThetaSpec::new(beta_zeros);
        let (fp, _) = theta_section(grid, &sp)?;
        let (fq, _) = theta_section(grid, &sq)?;
        let (cp, cq) = (sp.class(), sq.class());
        let cm = [(cp[0] + cq[0]) / 2.0, (cp[1] + cq[1]) / 2.0];
        let cl = [(cp[0] - cq[0]) / 2.0, (cp[1] - cq[1]) / 2.0];
        let conn = LatticeConnection::constant_curvature(grid, d, cl);
        let background = LatticeConnection::constant_curvature(grid, m, cm);
        Self::new(
            grid,
            conn,
            background,
            [fp.normalized(grid)?, TwistedField::zeros(grid, d - m)],
            [TwistedField::zeros(grid, -d - m), fq.normalized(grid)?],
        )
    }

    /// Framed data (m = 0, β = 0): α₁ a theta section of L of degree
    /// `zeros.len()`.
    pub fn framed(grid: &TorusGrid, zeros: Vec<[f64; 2]>) -> Result<Self> {
        let spec = ThetaSpec::new(zeros);
        let d = spec.degree();
        let (f, conn) = theta_section(grid, &spec)?;
        let background = LatticeConnection::constant_curvature(grid, 0, [0.0, 0.0]);
        Self::new(
            grid,
            conn,
            background,
            [f.normalized(grid)?, TwistedField::zeros(grid, d)],
            [TwistedField::zeros(grid, -d), TwistedField::zeros(grid, -d)],
        )
    }

    pub fn field(&self, s: Slot) -> &TwistedField {
        match s {
            Slot::Alpha(k) => &self.alpha[k],
            Slot::Beta(k) => &self.beta[k],
        }
    }

    pub fn component_connection(&self, s: Slot) -> LatticeConnection {
        let (l, m) = s.charges();
        self.conn.combine(l, &self.background, m)
    }

    pub fn alpha_sq(&self) -> Vec<f64> {
        let (a, b) = (self.alpha[0].modulus_sq(), self.alpha[1].modulus_sq());
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    }

    pub fn beta_sq(&self) -> Vec<f64> {
        let (a, b) = (self.beta[0].modulus_sq(), self.beta[1].modulus_sq());
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    }

    fn alpha_sup(&self) -> f64 {
        self.alpha_sq().iter().fold(0.0f64, |a, b| a.max(*b)).sqrt()
    }

    fn beta_sup(&self) -> f64 {
        self.beta_sq().iter().fold(0.0f64, |a, b| a.max(*b)).sqrt()
    }

    pub fn alpha_is_zero(&self) -> bool {
        self.alpha.iter().all(|f| f.is_zero())
    }

    pub fn beta_is_zero(&self) -> bool {
        self.beta.iter().all(|f| f.is_zero())
    }

    pub fn pairing_residual(&self) -> f64 {
        (0..self.alpha[0].values.len())
            .map(|k| {
                (self.alpha[0].values[k] * self.beta[0].values[k]
                    + self.alpha[1].values[k] * self.beta[1].values[k])
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    /// Sup-norms of ∂̄ on each of α₁, α₂, β₁, β₂.
    pub fn holomorphicity(&self, grid: &TorusGrid) -> Result<[f64; 4]> {
        let mut out = [0.0; 4];
        for (k, s) in SLOTS.iter().enumerate() {
            out[k] = dbar(grid, &self.component_connection(*s), self.field(*s))?.sup_norm();
        }
        Ok(out)
    }

    /// Same data on the even sublattice.
    pub fn restrict(&self, fine: &TorusGrid, coarse: &TorusGrid) -> Result<Self> {
        let r = |f: &TwistedField| f.restrict(fine, coarse);
        Self::new(
            coarse,
            self.conn.restrict(fine, coarse)?,
            self.background.restrict(fine, coarse)?,
            [r(&self.alpha[0])?, r(&self.alpha[1])?],
            [r(&self.beta[0])?, r(&self.beta[1])?],
        )
    }

    /// Unit gauge s ↦ e^{iφ} s on L (α has charge +1, β charge −1).
    pub fn unitary_gauge(&self, grid: &TorusGrid, phi: &[f64]) -> Self {
        let neg: Vec<f64> = phi.iter().map(|p| -p).collect();
        HolomorphicTriple {
            conn: self.conn.unitary_gauge(grid, phi, 1.0),
            alpha: [self.alpha[0].rotated(phi), self.alpha[1].rotated(phi)],
            beta: [self.beta[0].rotated(&neg), self.beta[1].rotated(&neg)],
            ..self.clone()
        }
    }
}

/// Solved configuration together with its diagnostics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VortexState {
    pub triple: HolomorphicTriple,
    pub tau: f64,
    /// Holomorphicity of α, of β, pairing, curvature equation.
    pub residuals: [f64; 4],
    /// Same residuals measured at n/2, halved. Zero when no probe ran.
    pub floor: [f64; 4],
    pub tolerance: f64,
    /// |2π(d − τ) + ‖α′‖² − ‖β′‖²|.
    pub degree_defect: f64,
    /// The real gauge that was applied.
    pub gauge: Vec<f64>,
    pub kw_iters: usize,
    pub kw_residual: f64,
}

impl VortexState {
    /// Every residual within max(tol, floor).
    pub fn within_contract(&self) -> bool {
        self.residuals
            .iter()
            .zip(&self.floor)
            .all(|(r, f)| *r <= self.tolerance.max(*f))
    }
}

/// Sup-norms of the four discrete equations: ∂̄α = 0, ∂̄β = 0, α·β = 0 and
/// i∗F + |α|² − |β|² = 2πτ (sites, with plaquette curvature averaged).
pub fn vortex_residual(grid: &TorusGrid, triple: &HolomorphicTriple, tau: f64) -> Result<[f64; 4]> {
    let h = triple.holomorphicity(grid)?;
    let curv = site_curvature(grid, &triple.conn);
    let (a, b) = (triple.alpha_sq(), triple.beta_sq());
    let eq = (0..grid.sites())
        .map(|k| (curv[k] + a[k] - b[k] - 2.0 * PI * tau).abs())
        .fold(0.0, f64::max);
    Ok([h[0].max(h[1]), h[2].max(h[3]), triple.pairing_residual(), eq])
}

/// (A, α, β) ↦ (A − ∂̄f + ∂f, e^f α, e^{−f} β) on the lattice.
///
/// The gauge potential is averaged onto plaquettes, f̃ = Sᵀf, and each link
/// gains the dual difference of f̃ across it. Plaquette curvature then
/// shifts by exactly Δ₅f̃, flux is unchanged, and the induced change of site
/// curvature S Δ₅ Sᵀ f is the gauge-compatible Laplacian.
pub fn complex_gauge_apply(grid: &TorusGrid, f: &[f64], triple: &HolomorphicTriple) -> Result<HolomorphicTriple> {
    if f.len() != grid.sites() {
        return Err(Error::Precondition("gauge field has the wrong length".into()));
    }
    if f.iter().any(|v| !v.is_finite()) {
        return Err(Error::Precondition("gauge field must be finite".into()));
    }
    let n = grid.n();
    let ft = sites_to_plaquettes(grid, f);
    let mut dx = vec![0.0; n * n];
    let mut dy = vec![0.0; n * n];
    for j in 0..n {
        let jm = (j + n - 1) % n;
        for i in 0..n {
            let im = (i + n - 1) % n;
            let k = grid.idx(i, j);
            dx[k] = -(ft[k] - ft[grid.idx(i, jm)]);
            dy[k] = ft[k] - ft[grid.idx(im, j)];
        }
    }
    // The plaquette angles move by the 5-point Laplacian of f. If any could
    // leave (−π, π] the wrapped flux changes, so such gauges are refused.
    let mut lap: f64 = 0.0;
    for j in 0..n {
        for i in 0..n {
            let at = |a: i64, b: i64| ft[grid.wrap_idx(i as i64 + a, j as i64 + b)];
            lap = lap.max((at(1, 0) + at(-1, 0) + at(0, 1) + at(0, -1) - 4.0 * at(0, 0)).abs());
        }
    }
    let curv = triple.conn.plaquette_angles().iter().fold(0.0f64, |a, b| a.max(b.abs()));
    if curv + lap >= PI {
        return Err(Error::InsufficientResolution(format!(
            "gauge too rough for the lattice: plaquette angles could reach {:.3}",
            curv + lap
        )));
    }
    let mut conn = triple.conn.clone();
    conn.add_links(&dx, &dy);
    let up: Vec<f64> = f.iter().map(|v| v.exp()).collect();
    let down: Vec<f64> = f.iter().map(|v| (-v).exp()).collect();
    let mut out = HolomorphicTriple {
        conn,
        alpha: [triple.alpha[0].weighted(&up), triple.alpha[1].weighted(&up)],
        beta: [triple.beta[0].weighted(&down), triple.beta[1].weighted(&down)],
        ..triple.clone()
    };
    let n2 = (n * n) as f64;
    out.holo_constant = n2 * out.holomorphicity(grid)?.iter().fold(0.0f64, |a, b| a.max(*b));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Balance {
    Negative,
    Zero,
    Positive,
}

fn balance(d: i64, tau: f64) -> Balance {
    let s = d as f64 - tau;
    if s.abs() <= 1e-12 {
        Balance::Zero
    } else if s < 0.0 {
        Balance::Negative
    } else {
        Balance::Positive
    }
}

fn check_case(triple: &HolomorphicTriple, tau: f64) -> Result<Balance> {
    let b = balance(triple.d, tau);
    let (az, bz) = (triple.alpha_is_zero(), triple.beta_is_zero());
    let ok = match b {
        Balance::Negative => !az,
        Balance::Positive => !bz,
        Balance::Zero => !az && !bz,
    };
    if !ok {
        return Err(Error::CaseMismatch(format!(
            "d − τ = {} needs {}",
            triple.d as f64 - tau,
            match b {
                Balance::Negative => "α ≠ 0",
                Balance::Positive => "β ≠ 0",
                Balance::Zero => "α ≠ 0 and β ≠ 0",
            }
        )));
    }
    Ok(b)
}

/// Real gauge f with Δf + weight·(|α|²e^{2f} − |β|²e^{−2f}) = 2πτ − S(i∗F),
/// reduced to the appropriate Kazdan–Warner case.
pub fn solve_gauge(
    grid: &TorusGrid,
    triple: &HolomorphicTriple,
    tau: f64,
    weight: f64,
    tol: f64,
) -> Result<(Vec<f64>, KwSolution)> {
    let b = check_case(triple, tau)?;
    let p: Vec<f64> = triple.alpha_sq().iter().map(|v| v * weight).collect();
    let q: Vec<f64> = triple.beta_sq().iter().map(|v| v * weight).collect();
    let curv = site_curvature(grid, &triple.conn);
    let w: Vec<f64> = curv.iter().map(|c| 2.0 * PI * tau - c).collect();
    let tol = tol.min(MAX_KW_TOLERANCE);
    // Lemma case after e^{2c}P, e^{−2c}Q with ∫(e^{2c}P − e^{−2c}Q) > 0.
    let lemma = |p: Vec<f64>, q: Vec<f64>, w: Vec<f64>| -> Result<(Vec<f64>, KwSolution)> {
        let (ip, iq) = (grid.integrate(&p), grid.integrate(&q));
        let c = if iq > 0.0 { (0.25 * (2.0 * iq / ip).ln()).max(0.0) } else { 0.0 };
        let pc: Vec<f64> = p.iter().map(|v| v * (2.0 * c).exp()).collect();
        let qc: Vec<f64> = q.iter().map(|v| v * (-2.0 * c).exp()).collect();
        let pr = KwProblem::new(grid, pc, qc, w, CaseTag::Lemma)?.with_operator(KwOperator::GaugeCompatible);
        let s = solve_kw(&pr, tol)?;
        Ok((s.f.iter().map(|g| g + c).collect(), s))
    };
    match b {
        Balance::Negative => lemma(p, q, w),
        Balance::Positive => {
            let (g, s) = lemma(q, p, w.iter().map(|v| -v).collect())?;
            Ok((g.iter().map(|v| -v).collect(), s))
        }
        Balance::Zero => {
            let pr = KwProblem::new(grid, p, q, w, CaseTag::Remark)?.with_operator(KwOperator::GaugeCompatible);
            let s = solve_kw(&pr, tol)?;
            Ok((s.f.clone(), s))
        }
    }
}

fn degree_defect(grid: &TorusGrid, t: &HolomorphicTriple, tau: f64) -> f64 {
    let a = grid.integrate(&t.alpha_sq());
    let b = grid.integrate(&t.beta_sq());
    (2.0 * PI * (t.d as f64 - tau) + a - b).abs()
}

fn solve_once(grid: &TorusGrid, triple: &HolomorphicTriple, tau: f64, tol: f64) -> Result<(HolomorphicTriple, Vec<f64>, KwSolution)> {
    let (f, s) = solve_gauge(grid, triple, tau, 1.0, tol)?;
    let t = complex_gauge_apply(grid, &f, triple)?;
    Ok((t, f, s))
}

/// Complex gauge the triple to a solution of the vortex equations.
///
/// The floor is measured by repeating the solve on the even sublattice and
/// halving its residuals (a second-order scheme loses a factor of four per
/// halving, so this is a conservative estimate of the fine-grid floor).
pub fn hk_solve(grid: &TorusGrid, triple: &HolomorphicTriple, tau: f64, tol: f64) -> Result<VortexState> {
    let (solved, f, s) = solve_once(grid, triple, tau, tol)?;
    let residuals = vortex_residual(grid, &solved, tau)?;
    let defect = degree_defect(grid, &solved, tau);
    if defect > DEGREE_IDENTITY_TOLERANCE {
        return Err(Error::Precondition(format!(
            "degree identity violated by {defect:e}"
        )));
    }
    let floor = if grid.n() >= 16 {
        let coarse = TorusGrid::new(grid.n() / 2)?;
        let ct = triple.restrict(grid, &coarse)?;
        let (cs, _, _) = solve_once(&coarse, &ct, tau, tol)?;
        let r = vortex_residual(&coarse, &cs, tau)?;
        [r[0] / 2.0, r[1] / 2.0, r[2] / 2.0, r[3] / 2.0]
    } else {
        [0.0; 4]
    };
    Ok(VortexState {
        triple: solved,
        tau,
        residuals,
        floor,
        tolerance: tol,
        degree_defect: defect,
        gauge: f,
        kw_iters: s.newton_iters,
        kw_residual: s.residual_linf,
    })
}
