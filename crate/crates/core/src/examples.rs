//! Ready-made specs: the B²(a,b,c) family and extensions of a scalar base.

use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};
use crate::maps::{Col2, Mat2, StructureMaps};
use crate::poly::{PolyRing, Polynomial};
use crate::spec::DoubleExtSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error("b must be nonzero")]
    ZeroB,
    #[error("scalar from {0} does not belong to the target field")]
    WrongField(FieldSpec),
}

fn check_field(field: FieldSpec, xs: &[&FieldElement]) -> Result<(), ExampleError> {
    for x in xs {
        if x.field() != field {
            return Err(ExampleError::WrongField(x.field()));
        }
    }
    Ok(())
}

/// B²(a,b,c) over K[x]:
///
/// ```text
/// σ(x) = [[0, b⁻¹x], [bx, 0]]   δ(x) = [cx², −bcx²]
/// y₂y₁ = −y₁y₂ + ax²
/// ```
pub fn example_b2(
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    field: FieldSpec,
) -> Result<DoubleExtSpec, ExampleError> {
    check_field(field, &[a, b, c])?;
    let binv = b.inv().map_err(|_| ExampleError::ZeroB)?;
    let ring = PolyRing::new(field, vec!["x".into()]);
    let x = Polynomial::var(&ring, 0);
    let x2 = x.mul(&x);
    let zero = Polynomial::zero(&ring);
    let sigma: Mat2 = [[zero.clone(), x.scale(&binv)], [x.scale(b), zero.clone()]];
    let delta: Col2 = [x2.scale(c), x2.scale(&-&(b * c))];
    let maps = StructureMaps::new(&ring, vec![sigma], vec![delta]).expect("same ring");
    let spec = DoubleExtSpec::new(
        maps,
        -field.one(),
        field.zero(),
        [x2.scale(a), zero.clone(), zero],
    )
    .expect("same ring");
    Ok(spec)
}

/// Extension of `ring` with σ = diag(id, id), δ = 0 and scalar data; over a
/// ring with no generators this is K[x₁][x₂; σ₂, d₂].
pub fn scalar_base_over(
    ring: &Arc<PolyRing>,
    p12: &FieldElement,
    p11: &FieldElement,
    tau: &[FieldElement; 3],
) -> Result<DoubleExtSpec, ExampleError> {
    let field = ring.field();
    check_field(field, &[p12, p11, &tau[0], &tau[1], &tau[2]])?;
    let maps = StructureMaps::identity(ring);
    let tau = tau
        .clone()
        .map(|t| Polynomial::constant(ring, t));
    Ok(DoubleExtSpec::new(maps, p12.clone(), p11.clone(), tau).expect("same ring"))
}

/// Scalar base K, no generators.
pub fn scalar_base(
    field: FieldSpec,
    p12: &FieldElement,
    p11: &FieldElement,
    tau: &[FieldElement; 3],
) -> Result<DoubleExtSpec, ExampleError> {
    scalar_base_over(&PolyRing::new(field, vec![]), p12, p11, tau)
}

fn zero_tail(field: FieldSpec) -> [FieldElement; 3] {
    [field.zero(), field.zero(), field.zero()]
}

/// y₂y₁ = q y₁y₂ over K[x], with x central.
pub fn qplane_over_kx(q: &FieldElement) -> DoubleExtSpec {
    let field = q.field();
    let ring = PolyRing::new(field, vec!["x".into()]);
    scalar_base_over(&ring, q, &field.zero(), &zero_tail(field)).expect("field checked")
}

/// y₂y₁ = y₁y₂ + y₁² over K.
pub fn jordan(field: FieldSpec) -> DoubleExtSpec {
    scalar_base(field, &field.one(), &field.one(), &zero_tail(field)).expect("field checked")
}
