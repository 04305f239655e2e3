//! On-disk JSON formats. Field-valued entries are read either as plain
//! arrays or as base64 blob envelopes; they are written as arrays unless
//! `--binary` is given.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use vortexlab::kazdan_warner::{CaseTag, KwOperator};
use vortexlab::torus::{FieldEnvelope, LatticeConnection, TorusGrid, TwistedField};
use vortexlab::vortex::HolomorphicTriple;

use crate::Failure;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RealField {
    Envelope(FieldEnvelope),
    Values(Vec<f64>),
}

impl RealField {
    pub fn encode(grid: &TorusGrid, v: &[f64], binary: bool) -> Self {
        if binary {
            let f = TwistedField::from_real(grid, v).expect("length matches grid");
            RealField::Envelope(FieldEnvelope::wrap(&f, "computed"))
        } else {
            RealField::Values(v.to_vec())
        }
    }

    pub fn decode(&self, grid: &TorusGrid, name: &str) -> Result<Vec<f64>, Failure> {
        let v = match self {
            RealField::Values(v) => v.clone(),
            RealField::Envelope(e) => {
                let f = e.unwrap_field()?;
                if f.degree != 0 || f.values.iter().any(|z| z.im != 0.0) {
                    return Err(Failure::Usage(format!("{name} must be a real degree-0 field")));
                }
                f.real_parts()
            }
        };
        if v.len() != grid.sites() {
            return Err(Failure::Usage(format!("{name} has {} values, grid needs {}", v.len(), grid.sites())));
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexField {
    Envelope(FieldEnvelope),
    Plain(TwistedField),
}

impl ComplexField {
    pub fn encode(f: &TwistedField, binary: bool) -> Self {
        if binary {
            ComplexField::Envelope(FieldEnvelope::wrap(f, "computed"))
        } else {
            ComplexField::Plain(f.clone())
        }
    }

    pub fn decode(&self) -> Result<TwistedField, Failure> {
        match self {
            ComplexField::Plain(f) => Ok(f.clone()),
            ComplexField::Envelope(e) => Ok(e.unwrap_field()?),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemFile {
    pub n: usize,
    /// Inferred from the data when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseTag>,
    #[serde(default)]
    pub operator: KwOperator,
    pub p: RealField,
    pub q: RealField,
    pub w: RealField,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleFile {
    pub n: usize,
    pub conn: LatticeConnection,
    pub background: LatticeConnection,
    pub alpha: [ComplexField; 2],
    pub beta: [ComplexField; 2],
}

impl TripleFile {
    pub fn encode(t: &HolomorphicTriple, binary: bool) -> Self {
        TripleFile {
            n: t.conn.n(),
            conn: t.conn.clone(),
            background: t.background.clone(),
            alpha: [ComplexField::encode(&t.alpha[0], binary), ComplexField::encode(&t.alpha[1], binary)],
            beta: [ComplexField::encode(&t.beta[0], binary), ComplexField::encode(&t.beta[1], binary)],
        }
    }

    /// Rebuilds through the validating constructor.
    pub fn decode(&self, grid: &TorusGrid) -> Result<HolomorphicTriple, Failure> {
        let a = [self.alpha[0].decode()?, self.alpha[1].decode()?];
        let b = [self.beta[0].decode()?, self.beta[1].decode()?];
        Ok(HolomorphicTriple::new(grid, self.conn.clone(), self.background.clone(), a, b)?)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn to_json_bytes<T: Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("record serializes");
    s.push('\n');
    s.into_bytes()
}
