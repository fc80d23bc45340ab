//! Exact construction, validation and analysis of right double extensions
//! A_P[y₁,y₂; σ, δ, τ] over polynomial base algebras.

pub mod analysis;
pub mod engine;
pub mod examples;
pub mod field;
pub mod io;
pub mod linalg;
pub mod maps;
pub mod parse;
pub mod poly;
pub mod report;
pub mod spec;

pub use engine::{nf_mul, DoubleExtension, EngineError, ExtElement};
pub use field::{FieldElement, FieldError, FieldSpec};
pub use maps::{Automorphy, EndoDescription, StructureMaps};
pub use parse::{parse_poly, parse_scalar, ParseError};
pub use poly::{Monomial, PolyError, PolyRing, Polynomial};
pub use report::{emit_report, CheckEntry, Status, ValidationReport};
pub use spec::DoubleExtSpec;
pub use io::{emit_spec, parse_spec, SpecError};
