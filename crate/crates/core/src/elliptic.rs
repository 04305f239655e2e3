//! Exact divisor-class arithmetic on the square elliptic curve.
//!
//! A line bundle is a degree together with a point of J⁰ = R²/Z², written
//! in the same coordinates as [`LatticeConnection::constant_curvature`]
//! (crate::torus::LatticeConnection). The spin structure K^{1/2} is taken
//! to be trivial.

use serde::{Deserialize, Serialize};

/// Two classes closer than this (mod 1) are treated as equal.
const CLASS_EPS: f64 = 1e-9;

/// A class avoiding every torsion point of small order.
pub const GENERIC_CLASS: [f64; 2] = [0.236_067_977_499_789_7, 0.414_213_562_373_095_1];
/// A nontrivial point of order two.
pub const TWO_TORSION_CLASS: [f64; 2] = [0.5, 0.0];

/// The four points of order dividing two.
pub const TWO_TORSION_POINTS: [[f64; 2]; 4] = [[0.0, 0.0], [0.5, 0.0], [0.0, 0.5], [0.5, 0.5]];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineBundle {
    pub degree: i64,
    pub class: [f64; 2],
}

pub fn class_eq(a: [f64; 2], b: [f64; 2]) -> bool {
    (0..2).all(|k| {
        let d = (a[k] - b[k]).rem_euclid(1.0);
        d < CLASS_EPS || d > 1.0 - CLASS_EPS
    })
}

impl LineBundle {
    pub fn new(degree: i64, class: [f64; 2]) -> Self {
        LineBundle { degree, class }
    }

    pub fn trivial() -> Self {
        LineBundle::new(0, [0.0, 0.0])
    }

    pub fn tensor(&self, other: &LineBundle) -> LineBundle {
        LineBundle::new(
            self.degree + other.degree,
            [self.class[0] + other.class[0], self.class[1] + other.class[1]],
        )
    }

    pub fn dual(&self) -> LineBundle {
        LineBundle::new(-self.degree, [-self.class[0], -self.class[1]])
    }

    pub fn pow(&self, k: i64) -> LineBundle {
        let kf = k as f64;
        LineBundle::new(k * self.degree, [kf * self.class[0], kf * self.class[1]])
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 0 && class_eq(self.class, [0.0, 0.0])
    }

    /// h⁰ on a genus-1 curve: deg if positive, 0 if negative, and for
    /// degree 0 one exactly on the trivial bundle.
    pub fn h0(&self) -> u64 {
        match self.degree {
            d if d > 0 => d as u64,
            d if d < 0 => 0,
            _ => u64::from(self.is_trivial()),
        }
    }

    /// h¹ = h⁰ of the dual (Serre duality with K trivial).
    pub fn h1(&self) -> u64 {
        self.dual().h0()
    }
}
