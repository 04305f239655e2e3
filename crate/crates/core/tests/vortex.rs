use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use vortexlab::torus::{base_connection, flux, make_grid, TorusGrid, TwistedField};
use vortexlab::vortex::{complex_gauge_apply, hk_solve, vortex_residual, HolomorphicTriple};
use vortexlab::Error;

fn theta_triple(g: &TorusGrid) -> HolomorphicTriple {
    HolomorphicTriple::theta(g, vec![[0.3, 0.4]], vec![[0.7, 0.8]]).unwrap()
}

fn smooth(g: &TorusGrid, a: f64, b: f64) -> Vec<f64> {
    (0..g.sites())
        .map(|k| {
            let (x, y) = g.coords(k);
            a * (2.0 * PI * x).sin() * (2.0 * PI * y).cos() + b * (2.0 * PI * (x + 2.0 * y)).cos()
        })
        .collect()
}

fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn constant_triple() {
    let g = make_grid(16).unwrap();
    let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let t = HolomorphicTriple::constant(&g, [one, zero], [zero, one]).unwrap();
    let s = hk_solve(&g, &t, 0.0, 1e-10).unwrap();
    assert!(s.gauge.iter().all(|v| v.abs() < 1e-12));
    assert!(s.residuals.iter().all(|r| *r < 1e-10));
    assert!(s.within_contract());
}

#[test]
fn reducible_balance() {
    let g = make_grid(16).unwrap();
    let t = HolomorphicTriple::new(
        &g,
        base_connection(&g, 2),
        base_connection(&g, 0),
        [TwistedField::zeros(&g, 2), TwistedField::zeros(&g, 2)],
        [TwistedField::zeros(&g, -2), TwistedField::zeros(&g, -2)],
    )
    .unwrap();
    assert!(vortex_residual(&g, &t, 2.0).unwrap()[3] < 1e-10);
}

#[test]
fn noise_breaks_holomorphicity() {
    let g = make_grid(32).unwrap();
    let mut t = theta_triple(&g);
    let base = vortex_residual(&g, &t, 0.0).unwrap();
    for (k, v) in t.alpha[0].values.iter_mut().enumerate() {
        *v += Complex64::new(1e-3 * ((k * 7919) as f64).sin(), 1e-3 * ((k * 104_729) as f64).cos());
    }
    let r = vortex_residual(&g, &t, 0.0).unwrap();
    assert!(r[0] >= 1e-4 && r[0] > base[0]);
}

#[test]
fn pairing_and_degrees_enforced() {
    let g = make_grid(16).unwrap();
    let t = theta_triple(&g);
    let bad = HolomorphicTriple::new(
        &g,
        t.conn.clone(),
        t.background.clone(),
        t.alpha.clone(),
        [TwistedField::zeros(&g, 1), t.beta[1].clone()],
    );
    assert!(matches!(bad, Err(Error::DegreeMismatch { .. })));
    // α₁β₁ ≠ 0 once both are nonzero constants on trivial bundles.
    let one = Complex64::new(1.0, 0.0);
    assert!(HolomorphicTriple::constant(&g, [one, one], [one, one]).is_err());
}

#[test]
fn gauge_apply_basics() {
    let g = make_grid(16).unwrap();
    let t = theta_triple(&g);
    let id = complex_gauge_apply(&g, &vec![0.0; g.sites()], &t).unwrap();
    assert_eq!(id.alpha, t.alpha);
    assert_eq!(id.conn.theta_x(), t.conn.theta_x());
    let f = smooth(&g, 0.8, -0.3);
    let u = complex_gauge_apply(&g, &f, &t).unwrap();
    assert_eq!(flux(&u.conn).unwrap(), flux(&t.conn).unwrap());
    assert!(u.conn.flux_deviation() < 1e-10);
    assert!(complex_gauge_apply(&g, &vec![f64::NAN; g.sites()], &t).is_err());
    // Period-4 stripes of height 2 move plaquette angles by 4 and would wrap.
    let rough: Vec<f64> = (0..g.sites()).map(|k| if k % 4 < 2 { 2.0 } else { -2.0 }).collect();
    assert!(matches!(complex_gauge_apply(&g, &rough, &t), Err(Error::InsufficientResolution(_))));
}

#[test]
fn theta_triple_balances() {
    let g = make_grid(64).unwrap();
    let t = theta_triple(&g);
    assert_eq!((t.m, t.d), (1, 0));
    let s = hk_solve(&g, &t, 0.0, 1e-10).unwrap();
    let a = g.integrate(&s.triple.alpha_sq());
    let b = g.integrate(&s.triple.beta_sq());
    assert!((a - b).abs() <= 1e-8);
    assert!(s.degree_defect <= 1e-8);
    assert!(s.within_contract());
    assert!(s.residuals[3] <= 1e-9);
}

#[test]
fn framed_vortex() {
    let g = make_grid(32).unwrap();
    let t = HolomorphicTriple::framed(&g, vec![[0.4, 0.6]]).unwrap();
    assert!(t.beta_is_zero());
    let s = hk_solve(&g, &t, 2.0, 1e-10).unwrap();
    assert!(s.residuals[1] == 0.0 && s.residuals[2] == 0.0);
    assert!(s.residuals[3] <= 1e-9);
    // 2π(1 − 2) + ‖α′‖² = 0
    assert!((g.integrate(&s.triple.alpha_sq()) - 2.0 * PI).abs() <= 1e-8);
    assert!(matches!(hk_solve(&g, &t, 0.0, 1e-10), Err(Error::CaseMismatch(_))));
}

#[test]
fn solved_state_is_fixed() {
    let g = make_grid(32).unwrap();
    let tol = 1e-10;
    let s = hk_solve(&g, &theta_triple(&g), 0.0, tol).unwrap();
    let again = hk_solve(&g, &s.triple, 0.0, tol).unwrap();
    assert!(again.gauge.iter().all(|v| v.abs() <= 10.0 * tol));
}

#[test]
fn complex_orbit_gives_same_solution() {
    let g = make_grid(32).unwrap();
    let t = theta_triple(&g);
    let moved = complex_gauge_apply(&g, &smooth(&g, 0.5, 0.2), &t).unwrap();
    let a = hk_solve(&g, &t, 0.0, 1e-11).unwrap().triple;
    let b = hk_solve(&g, &moved, 0.0, 1e-11).unwrap().triple;
    assert!(sup_diff(&a.alpha_sq(), &b.alpha_sq()) < 1e-8);
    assert!(sup_diff(&a.beta_sq(), &b.beta_sq()) < 1e-8);
    assert!(sup_diff(&a.conn.plaquette_angles(), &b.conn.plaquette_angles()) < 1e-8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn residual_is_unitary_invariant(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let g = make_grid(16).unwrap();
        let t = theta_triple(&g);
        let phi = smooth(&g, a, b);
        let r0 = vortex_residual(&g, &t, 0.0).unwrap();
        let r1 = vortex_residual(&g, &t.unitary_gauge(&g, &phi), 0.0).unwrap();
        for k in 0..4 {
            prop_assert!((r0[k] - r1[k]).abs() <= 1e-12 * (1.0 + r0[k]));
        }
    }

    #[test]
    fn gauge_keeps_flux(a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let g = make_grid(16).unwrap();
        let t = HolomorphicTriple::framed(&g, vec![[0.2, 0.3], [0.6, 0.7]]).unwrap();
        let u = complex_gauge_apply(&g, &smooth(&g, a, b), &t).unwrap();
        prop_assert_eq!(flux(&u.conn).unwrap(), 2);
        prop_assert!(u.conn.flux_deviation() < 1e-10);
    }
}
