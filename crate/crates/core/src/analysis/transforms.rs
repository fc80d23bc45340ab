//! Parameter normalization, generator swap and the associated graded.

use crate::analysis::{finish, rebuild, TransformError};
use crate::engine::DoubleExtension;
use crate::field::FieldElement;
use crate::maps::mat_conjugate;
use crate::poly::Polynomial;
use crate::spec::DoubleExtSpec;

fn scal(m: [[i64; 2]; 2], f: crate::field::FieldSpec) -> [[FieldElement; 2]; 2] {
    m.map(|r| r.map(|v| f.from_i64(v)))
}

/// Rescales σ, δ by the scalar basis change S (σ ↦ SσS⁻¹, δ ↦ Sδ) and
/// installs the given parameter and tail.
fn conjugated(
    spec: &DoubleExtSpec,
    s: &[[FieldElement; 2]; 2],
    s_inv: &[[FieldElement; 2]; 2],
    p12: FieldElement,
    p11: FieldElement,
    tau: [Polynomial; 3],
) -> DoubleExtSpec {
    let maps = spec.maps();
    let sigma = maps
        .sigma_images()
        .iter()
        .map(|m| mat_conjugate(s, m, s_inv))
        .collect();
    let delta = maps
        .delta_images()
        .iter()
        .map(|d| {
            [0, 1].map(|i| d[0].scale(&s[i][0]).add(&d[1].scale(&s[i][1])))
        })
        .collect();
    rebuild(spec.ring(), sigma, delta, p12, p11, tau)
}

/// ȳ₁ = p₁₁y₁, ȳ₂ = y₂; requires p₁₂ = 1 and p₁₁ ≠ 0, produces P = {1, 1}.
pub fn transform_newp_a(ext: &DoubleExtension) -> Result<DoubleExtension, TransformError> {
    let spec = ext.spec();
    let (p12, p11) = (spec.p12(), spec.p11());
    if !p12.is_one() || p11.is_zero() {
        return Err(TransformError::PreconditionFailed(format!(
            "newp-a needs p12 = 1 and p11 != 0, found p12 = {p12}, p11 = {p11}"
        )));
    }
    let f = spec.field();
    let inv = p11.inv().expect("nonzero");
    let s = [[p11.clone(), f.zero()], [f.zero(), f.one()]];
    let s_inv = [[inv, f.zero()], [f.zero(), f.one()]];
    let [t0, t1, t2] = spec.tau();
    let tau = [t0.scale(p11), t1.clone(), t2.scale(p11)];
    finish(conjugated(spec, &s, &s_inv, f.one(), f.one(), tau))
}

/// ȳ₂ = y₂ + qy₁ with q = p₁₁/(p₁₂ − 1); requires p₁₂ ≠ 1, produces
/// P = {p₁₂, 0}. Returns q alongside.
pub fn transform_newp_b(ext: &DoubleExtension) -> Result<(DoubleExtension, FieldElement), TransformError> {
    let (spec, q) = newp_b_data(ext.spec())?;
    Ok((finish(spec)?, q))
}

fn newp_b_data(spec: &DoubleExtSpec) -> Result<(DoubleExtSpec, FieldElement), TransformError> {
    let (p12, p11) = (spec.p12(), spec.p11());
    if p12.is_one() {
        return Err(TransformError::PreconditionFailed(format!(
            "newp-b needs p12 != 1, found p12 = {p12}"
        )));
    }
    let f = spec.field();
    let q = p11 * &(p12 - &f.one()).inv().expect("p12 != 1");
    let s = [[f.one(), f.zero()], [q.clone(), f.one()]];
    let s_inv = [[f.one(), f.zero()], [-&q, f.one()]];
    let [t0, t1, t2] = spec.tau();
    let tau = [t0.clone(), t1.sub(&t2.scale(&q)), t2.clone()];
    Ok((conjugated(spec, &s, &s_inv, p12.clone(), f.zero(), tau), q))
}

/// Brings P to {1, 1} or {p₁₂, 0}.
pub fn canonicalize_parameter(ext: &DoubleExtension) -> Result<DoubleExtension, TransformError> {
    let spec = ext.spec();
    if spec.p12().is_one() {
        if spec.p11().is_zero() {
            Ok(ext.clone())
        } else {
            transform_newp_a(ext)
        }
    } else {
        Ok(transform_newp_b(ext)?.0)
    }
}

/// The data with y₁ and y₂ interchanged, before validation. Reading
/// y₁y₂ off the quadratic relation gives
/// y₁y₂ = p₁₂⁻¹y₂y₁ − p₁₂⁻¹τ₂y₂ − p₁₂⁻¹τ₁y₁ − p₁₂⁻¹τ₀.
pub(crate) fn swap_data(spec: &DoubleExtSpec) -> Result<DoubleExtSpec, TransformError> {
    let (p12, p11) = (spec.p12(), spec.p11());
    if !p11.is_zero() || p12.is_zero() {
        return Err(TransformError::PreconditionFailed(format!(
            "swap needs p11 = 0 and p12 != 0, found p12 = {p12}, p11 = {p11}"
        )));
    }
    let f = spec.field();
    let perm = scal([[0, 1], [1, 0]], f);
    let m = -p12.inv().expect("nonzero");
    let [t0, t1, t2] = spec.tau();
    let tau = [t0.scale(&m), t2.scale(&m), t1.scale(&m)];
    let inv = p12.inv().expect("nonzero");
    Ok(conjugated(spec, &perm, &perm, inv, f.zero(), tau))
}

/// Interchanges the roles of y₁ and y₂; requires p₁₁ = 0 and p₁₂ ≠ 0.
pub fn swap_generators(ext: &DoubleExtension) -> Result<DoubleExtension, TransformError> {
    finish(swap_data(ext.spec())?)
}

/// newp-b followed by dropping δ and τ; requires p₁₂ ≠ 1.
pub fn associated_graded(ext: &DoubleExtension) -> Result<DoubleExtension, TransformError> {
    let (spec, _) = newp_b_data(ext.spec())?;
    let ring = spec.ring();
    let zero = Polynomial::zero(ring);
    let n = ring.nvars();
    let graded = rebuild(
        ring,
        spec.maps().sigma_images().to_vec(),
        vec![[zero.clone(), zero.clone()]; n],
        spec.p12().clone(),
        spec.field().zero(),
        [zero.clone(), zero.clone(), zero],
    );
    finish(graded)
}
