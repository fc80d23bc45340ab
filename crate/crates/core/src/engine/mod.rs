//! Existence decision and normal-form arithmetic for right double
//! extensions.

mod element;
mod normal_form;
mod relations;
#[cfg(test)]
mod tests;

use std::sync::Arc;

use thiserror::Error;

pub use element::ExtElement;
pub use normal_form::NormalFormEngine;
pub use relations::{
    relation_residual_at, relation_residuals, resolve_overlap, validate_relations, validate_spec,
    RelationId, RelationResidual,
};

use crate::field::FieldSpec;
use crate::parse::{parse_expr, ExprAlgebra, ParseError};
use crate::poly::{PolyRing, Polynomial};
use crate::report::ValidationReport;
use crate::spec::DoubleExtSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("spec failed validation ({} failing checks)", .0.failures.len())]
    UnvalidatedSpec(ValidationReport),
}

/// A spec that passed [`validate_spec`]; only these support arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleExtension {
    spec: DoubleExtSpec,
}

impl DoubleExtension {
    pub fn new(spec: DoubleExtSpec) -> Result<Self, EngineError> {
        let report = validate_spec(&spec);
        if !report.is_valid() {
            return Err(EngineError::UnvalidatedSpec(report));
        }
        Ok(DoubleExtension { spec })
    }

    pub fn spec(&self) -> &DoubleExtSpec {
        &self.spec
    }

    pub fn into_spec(self) -> DoubleExtSpec {
        self.spec
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.spec.ring()
    }

    /// A rewriting engine; reuse one for many products to share caches.
    pub fn engine(&self) -> NormalFormEngine<'_> {
        NormalFormEngine::new(&self.spec)
    }

    pub fn mul(&self, u: &ExtElement, v: &ExtElement) -> ExtElement {
        self.engine().mul(u, v)
    }

    /// Normal form of a word in the base generators and `y1`, `y2`.
    /// Juxtaposition means multiplication.
    pub fn reduce_word(&self, word: &str) -> Result<ExtElement, ParseError> {
        let alg = WordAlgebra {
            ext: self,
            engine: std::cell::RefCell::new(self.engine()),
        };
        parse_expr(&alg, word, true)
    }
}

/// Convenience for one-off products.
pub fn nf_mul(ext: &DoubleExtension, u: &ExtElement, v: &ExtElement) -> ExtElement {
    ext.mul(u, v)
}

struct WordAlgebra<'a> {
    ext: &'a DoubleExtension,
    engine: std::cell::RefCell<NormalFormEngine<'a>>,
}

impl ExprAlgebra for WordAlgebra<'_> {
    type Value = ExtElement;

    fn field(&self) -> FieldSpec {
        self.ext.spec.field()
    }

    fn constant(&self, c: crate::field::FieldElement) -> ExtElement {
        ExtElement::from_base(Polynomial::constant(self.ext.ring(), c))
    }

    fn name(&self, name: &str, pos: usize) -> Result<ExtElement, ParseError> {
        let ring = self.ext.ring();
        match name {
            "y1" => Ok(ExtElement::y1(ring)),
            "y2" => Ok(ExtElement::y2(ring)),
            _ => match ring.var_index(name) {
                Some(i) => Ok(ExtElement::from_base(Polynomial::var(ring, i))),
                None => Err(ParseError::UnknownGenerator {
                    name: name.to_string(),
                    pos,
                }),
            },
        }
    }

    fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        a.add(b)
    }

    fn neg(&self, a: &ExtElement) -> ExtElement {
        a.neg()
    }

    fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        self.engine.borrow_mut().mul(a, b)
    }
}
