//! The data of a right double extension A_P[y₁,y₂; σ, δ, τ].

use std::sync::Arc;

use crate::field::{FieldElement, FieldSpec};
use crate::maps::StructureMaps;
use crate::poly::{PolyError, PolyRing, Polynomial};

/// Base algebra, structure maps, parameter P = {p₁₂, p₁₁} and tail
/// τ = (τ₀, τ₁, τ₂), so that
///
/// ```text
/// y₂y₁ = p₁₂ y₁y₂ + p₁₁ y₁² + τ₁ y₁ + τ₂ y₂ + τ₀
/// ```
///
/// Nothing here is checked beyond context agreement; see
/// [`crate::engine::DoubleExtension`] for the validated form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleExtSpec {
    maps: StructureMaps,
    p12: FieldElement,
    p11: FieldElement,
    tau: [Polynomial; 3],
}

impl DoubleExtSpec {
    pub fn new(
        maps: StructureMaps,
        p12: FieldElement,
        p11: FieldElement,
        tau: [Polynomial; 3],
    ) -> Result<Self, PolyError> {
        let ring = maps.ring();
        for s in [&p12, &p11] {
            if s.field() != ring.field() {
                return Err(PolyError::ContextMismatch(
                    ring.to_string(),
                    s.field().to_string(),
                ));
            }
        }
        let probe = Polynomial::zero(ring);
        for t in &tau {
            probe.check_ring(t)?;
        }
        Ok(DoubleExtSpec { maps, p12, p11, tau })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.maps.ring()
    }

    pub fn field(&self) -> FieldSpec {
        self.ring().field()
    }

    pub fn maps(&self) -> &StructureMaps {
        &self.maps
    }

    pub fn p12(&self) -> &FieldElement {
        &self.p12
    }

    pub fn p11(&self) -> &FieldElement {
        &self.p11
    }

    /// τ₀, τ₁, τ₂ in that order.
    pub fn tau(&self) -> &[Polynomial; 3] {
        &self.tau
    }
}
