//! Binary layout: u32 LE `n`, i32 LE `degree`, then n² pairs of f64 LE
//! (re, im) in row-major site order. The JSON envelope wraps the same bytes
//! in base64.

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::TwistedField;
use crate::error::{Error, Result};

const HEADER: usize = 8;

pub fn to_blob(field: &TwistedField) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER + 16 * field.values.len());
    out.extend_from_slice(&(field.n as u32).to_le_bytes());
    out.extend_from_slice(&(field.degree as i32).to_le_bytes());
    for z in &field.values {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn from_blob(bytes: &[u8]) -> Result<TwistedField> {
    if bytes.len() < HEADER {
        return Err(Error::Blob("truncated header".into()));
    }
    let n = u32::from_le_bytes(bytes[0..4].try_into().unwrap()) as usize;
    let degree = i32::from_le_bytes(bytes[4..8].try_into().unwrap()) as i64;
    let want = HEADER + 16 * n * n;
    if bytes.len() != want {
        return Err(Error::Blob(format!(
            "expected {want} bytes for n = {n}, got {}",
            bytes.len()
        )));
    }
    let values = bytes[HEADER..]
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[0..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..16].try_into().unwrap()),
            )
        })
        .collect();
    Ok(TwistedField { n, degree, values })
}

/// Self-describing JSON form of a field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldEnvelope {
    pub n: usize,
    pub degree: i64,
    /// Euclidean norm of the stored values, a cheap integrity check.
    pub norm: f64,
    pub provenance: String,
    pub data: String,
}

impl FieldEnvelope {
    pub fn wrap(field: &TwistedField, provenance: &str) -> Self {
        FieldEnvelope {
            n: field.n,
            degree: field.degree,
            norm: field.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
            provenance: provenance.to_string(),
            data: STANDARD.encode(to_blob(field)),
        }
    }

    pub fn unwrap_field(&self) -> Result<TwistedField> {
        let bytes = STANDARD
            .decode(&self.data)
            .map_err(|e| Error::Blob(format!("base64: {e}")))?;
        let f = from_blob(&bytes)?;
        if f.n != self.n || f.degree != self.degree {
            return Err(Error::Blob("envelope header disagrees with payload".into()));
        }
        let norm = f.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - self.norm).abs() > 1e-12 * norm.max(1.0) {
            return Err(Error::Blob("norm check failed".into()));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_payload() {
        let mut b = to_blob(&TwistedField {
            n: 8,
            degree: 1,
            values: vec![Complex64::new(1.0, 2.0); 64],
        });
        b.pop();
        assert!(matches!(from_blob(&b), Err(Error::Blob(_))));
    }
}
