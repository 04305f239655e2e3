//! Reproduction runs, one per acceptance criterion. Each returns a verdict
//! and a one-line detail string.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use vortexlab::census::{self, Status, Sw};
use vortexlab::dolbeault::{h0, riemann_roch_expected, DolbeaultProblem, RrComplex, DEFAULT_RANK_TOL};
use vortexlab::elliptic::GENERIC_CLASS;
use vortexlab::kazdan_warner::{solve_kw_from, CaseTag, KwProblem};
use vortexlab::limiting::{default_radii, t_sweep, vanishing_exponent, DEFAULT_BALL_RADIUS, DEFAULT_MASK_SPACINGS};
use vortexlab::quaternion::{find_positive_pairing, moment, moment_identity_check, moment_polarized, SpinorPair};
use vortexlab::torus::{make_grid, theta_section, LatticeConnection, ThetaSpec};
use vortexlab::vortex::{complex_gauge_apply, hk_solve, HolomorphicTriple};

pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub seconds: f64,
    pub budget_s: f64,
    pub detail: String,
}

type Check = fn(u64) -> Result<Outcome, String>;

/// (id, name, budget in seconds, check).
pub const CHECKS: [(u8, &str, u64, Check); 9] = [
    (1, "census-table", 1, census_fidelity),
    (2, "census-laws", 1, sign_and_involution),
    (3, "kw-manufactured", 10, kw_manufactured),
    (4, "flux", 120, flux_quantization),
    (5, "riemann-roch", 60, riemann_roch_table),
    (6, "hitchin-kobayashi", 120, hitchin_kobayashi),
    (7, "limit", 600, limiting_sweep),
    (8, "moments", 10, moment_identities),
    (9, "fueter", 1, fueter_index),
];

pub fn run(id: u8, seed: u64) -> CheckRecord {
    let (id, name, budget, f) = CHECKS[(id - 1) as usize];
    let budget = Duration::from_secs(budget);
    let start = Instant::now();
    let out = f(seed);
    let took = start.elapsed();
    let (pass, mut detail) = match out {
        Ok(o) => (o.pass && took <= budget, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if took > budget {
        detail = format!("over budget; {detail}");
    }
    CheckRecord {
        id,
        name,
        pass,
        seconds: took.as_secs_f64(),
        budget_s: budget.as_secs_f64(),
        detail,
    }
}

fn census_fidelity(_seed: u64) -> Result<Outcome, String> {
    let rows = census::theorem_table().map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    let mut items = [false; 6];
    for r in &rows {
        let (g, d) = (r.spec.genus, r.spec.d);
        let desc = &r.description;
        items[r.item as usize] = true;
        let ok = match r.item {
            1 => desc.status == Status::Empty && desc.sw == Sw::Value(0) && 2 * d < 1 - g as i64,
            3 => {
                matches!(desc.status, Status::ProjectiveBundle { base_genus, base_degree, fiber_dim_c }
                    if base_genus == g && base_degree == d && fiber_dim_c == 2 * d - 1)
                    && desc.sw == Sw::Value(0)
                    && d >= g as i64 - 1
            }
            4 => desc.status == (Status::Points { count: 2 }) && desc.sw == Sw::Value(2) && (g, d) == (1, 0),
            5 => desc.status == (Status::Curve { genus: 5 }) && desc.sw == Sw::Value(8) && (g, d) == (2, 0),
            _ => false,
        };
        // d ≥ 0 rows map to J^d with projective-space fibres; at d = 0 the
        // image is a divisor (finitely many points when g = 1).
        let map_ok = d < 0
            || matches!(desc.status, Status::ProjectiveBundle { .. } | Status::Points { .. } | Status::Curve { .. });
        if !(ok && map_ok && desc.compact) {
            bad.push(format!("g={g} d={d}"));
        }
    }
    items[2] = rows.iter().filter(|r| r.spec.d >= 0).count() == 10;
    let all_items = items[1..].iter().all(|b| *b);
    Ok(Outcome {
        pass: bad.is_empty() && all_items && rows.len() == 18,
        detail: format!("{} rows, items 1-5 covered: {all_items}, mismatches: {bad:?}", rows.len()),
    })
}

fn sign_and_involution(_seed: u64) -> Result<Outcome, String> {
    let mut count = 0;
    let mut bad = Vec::new();
    for g in [1u32, 2] {
        for d in -4..=4i64 {
            for sign in [-1i8, 1] {
                let spec = census::generic_spec(g, d, sign);
                let desc = census::classify(&spec).map_err(|e| e.to_string())?;
                let want = if g % 2 == 1 { desc.euler } else { -desc.euler };
                let sw_ok = desc.sw == Sw::Value(want);
                let inv = census::involution_check(&spec).map_err(|e| e.to_string())?;
                if !(sw_ok && inv) {
                    bad.push(format!("g={g} d={d} sign={sign}"));
                }
                count += 1;
            }
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("{count} cases, failures: {bad:?}"),
    })
}

fn kw_manufactured(_seed: u64) -> Result<Outcome, String> {
    let grid = make_grid(64).map_err(|e| e.to_string())?;
    let n2 = grid.sites();
    let mut fstar = vec![0.0; n2];
    let mut p = vec![0.0; n2];
    let q = vec![0.5; n2];
    let mut w = vec![0.0; n2];
    for k in 0..n2 {
        let (x, y) = grid.coords(k);
        fstar[k] = 0.3 * (2.0 * PI * x).cos() * (2.0 * PI * y).cos();
        p[k] = 1.0 + 0.5 * (2.0 * PI * x).sin();
        // The positive Laplacian has eigenvalue 8π² on cos(2πx)cos(2πy).
        w[k] = 8.0 * PI * PI * fstar[k] + p[k] * (2.0 * fstar[k]).exp() - q[k] * (-2.0 * fstar[k]).exp();
    }
    let pr = KwProblem::new(&grid, p, q, w, CaseTag::Lemma).map_err(|e| e.to_string())?;
    let a = solve_kw_from(&pr, 1e-11, None).map_err(|e| e.to_string())?;
    let shifted: Vec<f64> = fstar.iter().map(|v| v + 1.0).collect();
    let b = solve_kw_from(&pr, 1e-11, Some(&shifted)).map_err(|e| e.to_string())?;
    let err = a.f.iter().zip(&fstar).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let agree = a.f.iter().zip(&b.f).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok(Outcome {
        pass: err <= 1e-9 && agree <= 1e-9 && a.newton_iters <= 15,
        detail: format!(
            "|f-f*| = {err:.2e}, two-start gap = {agree:.2e}, newton = {} / {}",
            a.newton_iters, b.newton_iters
        ),
    })
}

fn flux_quantization(seed: u64) -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut mismatched = 0;
    let mut note = |c: &LatticeConnection| {
        worst = worst.max(c.flux_deviation());
        if c.flux_value().round() as i64 != c.degree() {
            mismatched += 1;
        }
        count += 1;
    };
    for n in [16usize, 32, 64] {
        let grid = make_grid(n).map_err(|e| e.to_string())?;
        for d in -5..=5 {
            let class = [rng.gen::<f64>(), rng.gen::<f64>()];
            let c = LatticeConnection::constant_curvature(&grid, d, class);
            note(&c);
            let phi: Vec<f64> = (0..grid.sites()).map(|_| rng.gen_range(-PI..PI)).collect();
            note(&c.unitary_gauge(&grid, &phi, 1.0));
            note(&c.dual());
            note(&c.combine(2, &LatticeConnection::constant_curvature(&grid, 1, class), -1));
        }
        let zeros: Vec<[f64; 2]> = (0..3).map(|_| [rng.gen(), rng.gen()]).collect();
        let (_, conn) = theta_section(&grid, &ThetaSpec::new(zeros)).map_err(|e| e.to_string())?;
        note(&conn);
        let t = HolomorphicTriple::theta(&grid, vec![[0.21, 0.33]], vec![[0.68, 0.74]]).map_err(|e| e.to_string())?;
        for _ in 0..4 {
            // Random combination of the lowest Fourier modes; white noise is
            // not a gauge the lattice can carry.
            let c: Vec<f64> = (0..8).map(|_| rng.gen_range(-0.3..0.3)).collect();
            let f: Vec<f64> = (0..grid.sites())
                .map(|k| {
                    let (x, y) = grid.coords(k);
                    let (u, v) = (2.0 * PI * x, 2.0 * PI * y);
                    c[0] * u.cos() + c[1] * u.sin() + c[2] * v.cos() + c[3] * v.sin()
                        + c[4] * (u + v).cos() + c[5] * (u + v).sin() + c[6] * (u - v).cos() + c[7] * (u - v).sin()
                })
                .collect();
            let g = complex_gauge_apply(&grid, &f, &t).map_err(|e| e.to_string())?;
            note(&g.conn);
        }
        let s = hk_solve(&grid, &t, 0.0, 1e-10).map_err(|e| e.to_string())?;
        note(&s.triple.conn);
    }
    Ok(Outcome {
        pass: worst < 1e-10 && mismatched == 0,
        detail: format!("{count} connections, worst deviation {worst:.2e}, flux != degree in {mismatched}"),
    })
}

fn riemann_roch_table(_seed: u64) -> Result<Outcome, String> {
    let grid = make_grid(32).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut pass = true;
    let mut cases: Vec<(i64, [f64; 2], u64)> = (-2..=3).map(|d| (d, GENERIC_CLASS, d.max(0) as u64)).collect();
    cases.push((0, [0.0, 0.0], 1));
    for (d, class, want) in cases {
        let pr = DolbeaultProblem::single(&grid, d, class).map_err(|e| e.to_string())?;
        let r = h0(&pr, DEFAULT_RANK_TOL).map_err(|e| e.to_string())?;
        let ok = r.h0 == want && r.h0 as i64 - r.h1 as i64 == d;
        pass &= ok;
        rows.push(format!("d={d}:{}/{}", r.h0, r.h1));
    }
    Ok(Outcome {
        pass,
        detail: format!("h0/h1 {}", rows.join(" ")),
    })
}

fn hitchin_kobayashi(_seed: u64) -> Result<Outcome, String> {
    let grid = make_grid(128).map_err(|e| e.to_string())?;
    let t = HolomorphicTriple::theta(&grid, vec![[0.3, 0.4]], vec![[0.7, 0.8]]).map_err(|e| e.to_string())?;
    if (t.m, t.d) != (1, 0) {
        return Err(format!("built m={}, d={}", t.m, t.d));
    }
    let s = hk_solve(&grid, &t, 0.0, 1e-10).map_err(|e| e.to_string())?;
    let ok = s.residuals.iter().zip(&s.floor).all(|(r, f)| *r <= 1e-6 + f);
    Ok(Outcome {
        pass: ok && s.degree_defect <= 1e-8,
        detail: format!(
            "residuals {:.2e} {:.2e} {:.2e} {:.2e}, floor {:.2e} {:.2e} {:.2e} {:.2e}, degree defect {:.2e}",
            s.residuals[0], s.residuals[1], s.residuals[2], s.residuals[3], s.floor[0], s.floor[1], s.floor[2], s.floor[3], s.degree_defect
        ),
    })
}

fn limiting_sweep(_seed: u64) -> Result<Outcome, String> {
    let grid = make_grid(128).map_err(|e| e.to_string())?;
    let t = HolomorphicTriple::theta(&grid, vec![[0.3, 0.4]], vec![[0.7, 0.8]]).map_err(|e| e.to_string())?;
    let ts = [1.0, 0.5, 0.25, 0.125, 0.0625];
    let (state, recs) = t_sweep(&grid, &t, &ts, 0.0, DEFAULT_BALL_RADIUS, 1e-9).map_err(|e| e.to_string())?;
    let sum_q = state.weight_sum();
    let last = recs.last().ok_or("empty sweep")?;
    if last.stalled {
        return Ok(Outcome {
            pass: false,
            detail: "Newton stalled at the smallest t".into(),
        });
    }
    let mut flux_ok = !last.zeros.is_empty();
    let mut parts = Vec::new();
    for z in &last.zeros {
        let target = PI * z.weight as f64;
        let rel = (z.flux - target).abs() / target.abs();
        flux_ok &= rel <= 0.1;
        parts.push(format!("q={} flux/pi={:.3}", z.weight, z.flux / PI));
    }
    let modulus = state.modulus();
    let radii = default_radii(DEFAULT_MASK_SPACINGS * grid.spacing());
    let mut exp_ok = true;
    for z in state.zero_points.iter().filter(|z| z.alpha_order + z.beta_order == 1) {
        let e = vanishing_exponent(&grid, &modulus, z.position, &radii).map_err(|e| e.to_string())?;
        exp_ok &= (e - 0.5).abs() <= 0.05;
        parts.push(format!("exponent={e:.3}"));
    }
    Ok(Outcome {
        pass: flux_ok && exp_ok && sum_q == 2 * t.d,
        detail: format!("sum q = {sum_q}, {}", parts.join(", ")),
    })
}

fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> SpinorPair {
    let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let x: Vec<Complex64> = (0..n).map(|_| c()).collect();
    let y: Vec<Complex64> = (0..n).map(|_| c()).collect();
    SpinorPair::new(x, y).expect("equal lengths")
}

fn moment_identities(seed: u64) -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 100_000;
    let (mut id_worst, mut pol_worst): (f64, f64) = (0.0, 0.0);
    let mut found = 0;
    for k in 0..trials {
        let n = 2 + k % 2;
        let p = random_pair(&mut rng, n).normalize().map_err(|e| e.to_string())?;
        let q = random_pair(&mut rng, n).normalize().map_err(|e| e.to_string())?;
        id_worst = id_worst.max(moment_identity_check(&p));
        let pq = moment_polarized(&p, &q).map_err(|e| e.to_string())?;
        let (plus, minus) = (moment(&p.add(&q)), moment(&p.sub(&q)));
        let r = 0.25 * (plus.mu_r - minus.mu_r);
        let c = 0.25 * (plus.mu_c - minus.mu_c);
        pol_worst = pol_worst.max((pq.mu_r - r).abs()).max((pq.mu_c - c).norm());
        let v: Vec<Complex64> = p.x.iter().chain(&p.y).copied().collect();
        let w: Vec<Complex64> = q.x.iter().chain(&q.y).copied().collect();
        if find_positive_pairing(&v, &w).map(|b| b.pairing > 0.0).unwrap_or(false) {
            found += 1;
        }
    }
    Ok(Outcome {
        pass: id_worst <= 1e-12 && pol_worst <= 1e-12 && found == trials,
        detail: format!(
            "identity {id_worst:.2e}, polarization {pol_worst:.2e}, pairing found {found}/{trials}"
        ),
    })
}

fn fueter_index(_seed: u64) -> Result<Outcome, String> {
    let mut vals = Vec::new();
    for k in 0..=10 {
        vals.push(riemann_roch_expected(1, &RrComplex::Fueter { k }).map_err(|e| e.to_string())?);
    }
    Ok(Outcome {
        pass: vals.iter().all(|v| *v == 0),
        detail: format!("indices {vals:?}"),
    })
}
