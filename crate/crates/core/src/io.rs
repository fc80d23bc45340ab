//! JSON spec documents.
//!
//! ```json
//! {"field": {"kind": "GF", "p": 2}, "generators": ["x"],
//!  "sigma": {"x": [["0", "x"], ["x", "0"]]}, "delta": {"x": ["x^2", "x^2"]},
//!  "p12": "1", "p11": "0", "tau": ["x^2", "0", "0"]}
//! ```

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldError, FieldSpec};
use crate::maps::{Col2, Mat2, StructureMaps};
use crate::parse::{parse_poly, ParseError};
use crate::poly::{PolyRing, Polynomial};
use crate::spec::DoubleExtSpec;

/// Names the adjoined generators; base generators may not use them.
pub const RESERVED_NAMES: [&str; 2] = ["y1", "y2"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("missing key `{0}`")]
    MissingKey(String),
    #[error("`{what}` must have {expected} entries, found {found}")]
    Arity {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("`{what}` refers to undeclared generator `{name}`")]
    UnknownGenerator { what: String, name: String },
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator name `{0}` is reserved or not an identifier")]
    BadGeneratorName(String),
    #[error("`{0}` must be a scalar")]
    NotScalar(String),
    #[error("field: {0}")]
    Field(#[from] FieldError),
    #[error("in `{what}`: {source}")]
    Parse { what: String, source: ParseError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FieldDoc {
    Q,
    GF { p: u64 },
}

/// Scalars may be written as strings or bare integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDoc {
    Text(String),
    Int(i64),
}

impl ScalarDoc {
    fn text(&self) -> String {
        match self {
            ScalarDoc::Text(s) => s.clone(),
            ScalarDoc::Int(n) => n.to_string(),
        }
    }
}

/// The on-disk shape, before any polynomial is parsed. Arities are checked
/// during conversion so that errors can name the offending entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDocument {
    pub field: FieldDoc,
    pub generators: Vec<String>,
    pub sigma: BTreeMap<String, Vec<Vec<String>>>,
    pub delta: BTreeMap<String, Vec<String>>,
    pub p12: ScalarDoc,
    pub p11: ScalarDoc,
    pub tau: Vec<String>,
}

const KEYS: [&str; 7] = ["field", "generators", "sigma", "delta", "p12", "p11", "tau"];

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn arity(what: &str, expected: usize, found: usize) -> Result<(), SpecError> {
    if expected != found {
        return Err(SpecError::Arity {
            what: what.to_string(),
            expected,
            found,
        });
    }
    Ok(())
}

fn poly(what: String, text: &str, ring: &std::sync::Arc<PolyRing>) -> Result<Polynomial, SpecError> {
    parse_poly(text, ring).map_err(|source| SpecError::Parse { what, source })
}

impl SpecDocument {
    pub fn to_spec(&self) -> Result<DoubleExtSpec, SpecError> {
        let field = match self.field {
            FieldDoc::Q => FieldSpec::Rationals,
            FieldDoc::GF { p } => FieldSpec::prime(p)?,
        };
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !is_identifier(g) || RESERVED_NAMES.contains(&g.as_str()) {
                return Err(SpecError::BadGeneratorName(g.clone()));
            }
            if !seen.insert(g) {
                return Err(SpecError::DuplicateGenerator(g.clone()));
            }
        }
        for (what, keys) in [
            ("sigma", self.sigma.keys().collect::<Vec<_>>()),
            ("delta", self.delta.keys().collect()),
        ] {
            if let Some(k) = keys.into_iter().find(|k| !seen.contains(k)) {
                return Err(SpecError::UnknownGenerator {
                    what: what.into(),
                    name: k.clone(),
                });
            }
        }
        let ring = PolyRing::new(field, self.generators.clone());
        let mut sigma: Vec<Mat2> = Vec::new();
        let mut delta: Vec<Col2> = Vec::new();
        for g in &self.generators {
            let m = self
                .sigma
                .get(g)
                .ok_or_else(|| SpecError::MissingKey(format!("sigma.{g}")))?;
            arity(&format!("sigma.{g}"), 2, m.len())?;
            let mut rows = Vec::new();
            for (i, row) in m.iter().enumerate() {
                arity(&format!("sigma.{g}[{i}]"), 2, row.len())?;
                let mut entries = Vec::new();
                for (j, t) in row.iter().enumerate() {
                    entries.push(poly(format!("sigma.{g}[{i}][{j}]"), t, &ring)?);
                }
                rows.push([entries[0].clone(), entries[1].clone()]);
            }
            sigma.push([rows[0].clone(), rows[1].clone()]);
            let d = self
                .delta
                .get(g)
                .ok_or_else(|| SpecError::MissingKey(format!("delta.{g}")))?;
            arity(&format!("delta.{g}"), 2, d.len())?;
            delta.push([
                poly(format!("delta.{g}[0]"), &d[0], &ring)?,
                poly(format!("delta.{g}[1]"), &d[1], &ring)?,
            ]);
        }
        let scalar = |what: &str, s: &ScalarDoc| {
            poly(what.to_string(), &s.text(), &ring)?
                .as_constant()
                .ok_or_else(|| SpecError::NotScalar(what.to_string()))
        };
        let p12 = scalar("p12", &self.p12)?;
        let p11 = scalar("p11", &self.p11)?;
        arity("tau", 3, self.tau.len())?;
        let tau = [
            poly("tau[0]".into(), &self.tau[0], &ring)?,
            poly("tau[1]".into(), &self.tau[1], &ring)?,
            poly("tau[2]".into(), &self.tau[2], &ring)?,
        ];
        let maps = StructureMaps::new(&ring, sigma, delta).expect("entries parsed in ring");
        Ok(DoubleExtSpec::new(maps, p12, p11, tau).expect("entries parsed in ring"))
    }

    pub fn from_spec(spec: &DoubleExtSpec) -> Self {
        let ring = spec.ring();
        let field = match spec.field() {
            FieldSpec::Rationals => FieldDoc::Q,
            FieldSpec::PrimeField(p) => FieldDoc::GF { p },
        };
        let maps = spec.maps();
        let mut sigma = BTreeMap::new();
        let mut delta = BTreeMap::new();
        for (i, g) in ring.vars().iter().enumerate() {
            let m = maps.sigma_image(i);
            sigma.insert(
                g.clone(),
                m.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect(),
            );
            delta.insert(g.clone(), maps.delta_image(i).iter().map(|p| p.to_string()).collect());
        }
        SpecDocument {
            field,
            generators: ring.vars().to_vec(),
            sigma,
            delta,
            p12: ScalarDoc::Text(spec.p12().to_string()),
            p11: ScalarDoc::Text(spec.p11().to_string()),
            tau: spec.tau().iter().map(|p| p.to_string()).collect(),
        }
    }
}

pub fn parse_document(text: &str) -> Result<SpecDocument, SpecError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| SpecError::Json(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| SpecError::Json("top level must be an object".into()))?;
    if let Some(k) = KEYS.iter().find(|k| !obj.contains_key(**k)) {
        return Err(SpecError::MissingKey(k.to_string()));
    }
    serde_json::from_value(value).map_err(|e| SpecError::Json(e.to_string()))
}

/// Parses a spec document; no semantic validation beyond well-formedness.
pub fn parse_spec(text: &str) -> Result<DoubleExtSpec, SpecError> {
    parse_document(text)?.to_spec()
}

/// Pretty-printed document with a trailing newline.
pub fn emit_spec(spec: &DoubleExtSpec) -> String {
    let mut s = serde_json::to_string_pretty(&SpecDocument::from_spec(spec)).expect("serializes");
    s.push('\n');
    s
}
