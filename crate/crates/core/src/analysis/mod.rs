//! Transforms, normalizing directions and iterated Ore presentations.

mod basis;
mod directions;
mod presentation;
mod transforms;

use std::sync::Arc;

use thiserror::Error;

pub use basis::{change_basis, identity_basis, render_basis, search_presentations, BasisChange, FoundPresentation};
pub use directions::{diag_directions, Directions, ProjectiveDirection};
pub use presentation::{
    classify_double, detect_y1_first, detect_y2_first, scalar_base_extension, Classification,
    IteratedOrePresentation, NotPresentable, Order, ScalarBaseExtension, Verdict,
};
pub use transforms::{
    associated_graded, canonicalize_parameter, swap_generators, transform_newp_a, transform_newp_b,
};

use crate::engine::{DoubleExtension, EngineError};
use crate::field::FieldElement;
use crate::maps::{Col2, Mat2, StructureMaps};
use crate::poly::{PolyRing, Polynomial};
use crate::report::ValidationReport;
use crate::spec::DoubleExtSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("basis change matrix is singular")]
    SingularBasis,
    #[error("{}", match z2_squared {
        Some(c) => format!("relation needs a z2^2 term with coefficient {c}"),
        None => "quadratic relation cannot be solved in the new basis".to_string(),
    })]
    ShapeError { z2_squared: Option<FieldElement> },
    #[error("result failed validation ({} failing checks)", .0.failures.len())]
    Invalid(ValidationReport),
}

pub(crate) fn rebuild(
    ring: &Arc<PolyRing>,
    sigma: Vec<Mat2>,
    delta: Vec<Col2>,
    p12: FieldElement,
    p11: FieldElement,
    tau: [Polynomial; 3],
) -> DoubleExtSpec {
    let maps = StructureMaps::new(ring, sigma, delta).expect("entries from the same ring");
    DoubleExtSpec::new(maps, p12, p11, tau).expect("entries from the same ring")
}

pub(crate) fn finish(spec: DoubleExtSpec) -> Result<DoubleExtension, TransformError> {
    DoubleExtension::new(spec).map_err(|EngineError::UnvalidatedSpec(r)| TransformError::Invalid(r))
}
