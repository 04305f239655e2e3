//! The representation M = H ⊗ Cⁿ ≅ Cⁿ ⊕ C̄ⁿ and its hyperkähler moment map.
//!
//! A point is stored as (x, y) ∈ Cⁿ × Cⁿ where y holds the underlying
//! complex coordinates of the C̄ⁿ factor. The quaternion in slot a is
//! q_a = x_a + ȳ_a j (with j z = z̄ j), so in quaternion components
//! (a, b) = (x, ȳ):
//!
//! * left i: (a, b) ↦ (ia, ib)
//! * left j: (a, b) ↦ (−b̄, ā)
//! * U(1) generator (right i): (a, b) ↦ (ia, −ib)
//!
//! On stored coordinates left j reads (x, y) ↦ (−y, x), and the circle
//! acts by (x, y) ↦ (ux, uy), which is u on Cⁿ and ū under the conjugate
//! complex structure of C̄ⁿ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinorPair {
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
}

/// μ_R = i·`mu_r` (stored as its imaginary coefficient) and μ_C.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentValue {
    pub mu_r: f64,
    pub mu_c: Complex64,
}

impl MomentValue {
    pub fn distance(&self, other: &MomentValue) -> f64 {
        (self.mu_r - other.mu_r).abs().max((self.mu_c - other.mu_c).norm())
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    // ⟨a, b⟩ = b* a
    a.iter().zip(b).map(|(p, q)| p * q.conj()).sum()
}

fn real_inner(p: &[(Complex64, Complex64)], q: &[(Complex64, Complex64)]) -> f64 {
    p.iter()
        .zip(q)
        .map(|((a1, b1), (a2, b2))| (a1 * a2.conj() + b1 * b2.conj()).re)
        .sum()
}

impl SpinorPair {
    pub fn new(x: Vec<Complex64>, y: Vec<Complex64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Precondition("x and y must have equal length".into()));
        }
        Ok(SpinorPair { x, y })
    }

    pub fn zeros(n: usize) -> Self {
        SpinorPair {
            x: vec![Complex64::new(0.0, 0.0); n],
            y: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.x.iter().chain(&self.y).map(|z| z.norm_sqr()).sum()
    }

    pub fn normalize(&self) -> Result<Self> {
        let s = self.norm_sq().sqrt();
        if s == 0.0 {
            return Err(Error::Precondition("cannot normalise zero spinor".into()));
        }
        Ok(self.scale(Complex64::new(1.0 / s, 0.0)))
    }

    fn scale(&self, c: Complex64) -> Self {
        SpinorPair {
            x: self.x.iter().map(|z| z * c).collect(),
            y: self.y.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &SpinorPair) -> Self {
        SpinorPair {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &SpinorPair) -> Self {
        SpinorPair {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a - b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a - b).collect(),
        }
    }

    /// Circle action by a unit complex number (see module docs).
    pub fn circle_act(&self, u: Complex64) -> Self {
        self.scale(u)
    }

    /// Quaternion components (a, b) = (x, ȳ).
    pub fn quaternion_components(&self) -> Vec<(Complex64, Complex64)> {
        self.x.iter().zip(&self.y).map(|(x, y)| (*x, y.conj())).collect()
    }

    pub fn from_quaternion_components(q: &[(Complex64, Complex64)]) -> Self {
        SpinorPair {
            x: q.iter().map(|(a, _)| *a).collect(),
            y: q.iter().map(|(_, b)| b.conj()).collect(),
        }
    }
}

/// Left multiplication by j.
pub fn j_action(p: &SpinorPair) -> SpinorPair {
    let q: Vec<_> = p
        .quaternion_components()
        .into_iter()
        .map(|(a, b)| (-b.conj(), a.conj()))
        .collect();
    SpinorPair::from_quaternion_components(&q)
}

/// Infinitesimal circle action (right multiplication by i).
pub fn circle_generator(p: &SpinorPair) -> SpinorPair {
    let q: Vec<_> = p
        .quaternion_components()
        .into_iter()
        .map(|(a, b)| (I * a, -I * b))
        .collect();
    SpinorPair::from_quaternion_components(&q)
}

pub fn moment(p: &SpinorPair) -> MomentValue {
    MomentValue {
        mu_r: p.x.iter().map(|z| z.norm_sqr()).sum::<f64>() - p.y.iter().map(|z| z.norm_sqr()).sum::<f64>(),
        mu_c: dot(&p.x, &p.y),
    }
}

/// Real-bilinear symmetric form whose diagonal is [`moment`].
pub fn moment_polarized(p: &SpinorPair, q: &SpinorPair) -> Result<MomentValue> {
    if p.dim() != q.dim() || p.x.len() != p.y.len() || q.x.len() != q.y.len() {
        return Err(Error::Precondition("spinor dimensions differ".into()));
    }
    Ok(MomentValue {
        mu_r: (dot(&p.x, &q.x) - dot(&p.y, &q.y)).re,
        mu_c: 0.5 * (dot(&p.x, &q.y) + dot(&q.x, &p.y)),
    })
}

/// |⟨μ_C · j · ξp, p⟩ − |μ_C|²|, where μ_C acts as the imaginary
/// quaternion −i·μ_C·j paired with the circle generator ξ and the real
/// inner product carries the factor −½ from the moment map normalisation.
pub fn moment_identity_check(p: &SpinorPair) -> f64 {
    let mu = moment(p).mu_c;
    let c = -I * mu;
    let jx: Vec<_> = j_action(&circle_generator(p))
        .quaternion_components()
        .into_iter()
        .map(|(a, b)| (c * a, c * b))
        .collect();
    let lhs = -0.5 * real_inner(&jx, &p.quaternion_components());
    (lhs - mu.norm_sqr()).abs()
}

/// Basis element iσ_k ⊗ T_l with a sign, returned by [`find_positive_pairing`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingElement {
    pub n: usize,
    /// Pauli index 0, 1, 2 for iσ₁, iσ₂, iσ₃.
    pub su2_index: usize,
    /// Index into the su(n) basis of [`sun_basis`].
    pub sun_index: usize,
    pub sign: f64,
    /// Re⟨bv, w⟩ for the returned signed element.
    pub pairing: f64,
}

impl PairingElement {
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let t = &sun_basis(self.n)[self.sun_index];
        apply_tensor(&pauli_i(self.su2_index), t, self.n, v)
            .into_iter()
            .map(|z| z * self.sign)
            .collect()
    }
}

fn pauli_i(k: usize) -> [[Complex64; 2]; 2] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let s = match k {
        0 => [[z, one], [one, z]],
        1 => [[z, -I], [I, z]],
        _ => [[one, z], [z, -one]],
    };
    let mut out = [[z; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = I * s[r][c];
        }
    }
    out
}

/// Anti-Hermitian traceless n×n basis: i(E_jj − E_{j+1,j+1}), E_jk − E_kj
/// and i(E_jk + E_kj) for j < k. Row-major dense matrices.
pub fn sun_basis(n: usize) -> Vec<Vec<Complex64>> {
    let z = Complex64::new(0.0, 0.0);
    let mut out = Vec::with_capacity(n * n - 1);
    for j in 0..n - 1 {
        let mut m = vec![z; n * n];
        m[j * n + j] = I;
        m[(j + 1) * n + j + 1] = -I;
        out.push(m);
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut m = vec![z; n * n];
            m[j * n + k] = Complex64::new(1.0, 0.0);
            m[k * n + j] = Complex64::new(-1.0, 0.0);
            out.push(m);
            let mut m = vec![z; n * n];
            m[j * n + k] = I;
            m[k * n + j] = I;
            out.push(m);
        }
    }
    out
}

/// (A ⊗ B) v with v laid out as v[s·n + a], s ∈ {0,1}.
fn apply_tensor(a: &[[Complex64; 2]; 2], b: &[Complex64], n: usize, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for s in 0..2 {
        for t in 0..2 {
            if a[s][t] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for r in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..n {
                    acc += b[r * n + c] * v[t * n + c];
                }
                out[s * n + r] += a[s][t] * acc;
            }
        }
    }
    out
}

/// Scan the 3(n²−1) basis elements of su(2) ⊗ su(n) for one with
/// Re⟨bv, w⟩ > 0, flipping its sign if needed.
pub fn find_positive_pairing(v: &[Complex64], w: &[Complex64]) -> Result<PairingElement> {
    if v.len() != w.len() || v.len() % 2 != 0 || v.len() < 4 {
        return Err(Error::Precondition("v and w must be equal-length 2n-vectors, n ≥ 2".into()));
    }
    let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nw = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if nv == 0.0 || nw == 0.0 {
        return Err(Error::Precondition("v and w must be nonzero".into()));
    }
    let n = v.len() / 2;
    let basis = sun_basis(n);
    let mut best: Option<PairingElement> = None;
    for k in 0..3 {
        let pk = pauli_i(k);
        for (l, t) in basis.iter().enumerate() {
            let bv = apply_tensor(&pk, t, n, v);
            let val = dot(&bv, w).re;
            if best.as_ref().map_or(true, |b| val.abs() > b.pairing) {
                best = Some(PairingElement {
                    n,
                    su2_index: k,
                    sun_index: l,
                    sign: if val < 0.0 { -1.0 } else { 1.0 },
                    pairing: val.abs(),
                });
            }
        }
    }
    let threshold = 1e-14 * nv * nw;
    match best {
        Some(b) if b.pairing > threshold => Ok(b),
        _ => Err(Error::PairingDegenerate { threshold }),
    }
}
