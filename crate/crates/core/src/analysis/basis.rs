//! Linear changes of the generators y₁, y₂ and the search for iterated Ore
//! presentations among them.

use serde_json::{json, Value};

use crate::analysis::directions::{diag_directions, shape_roots, Directions, ProjectiveDirection};
use crate::analysis::presentation::{detect_y1_first, detect_y2_first, IteratedOrePresentation, Order};
use crate::analysis::{finish, rebuild, TransformError};
use crate::engine::{DoubleExtension, ExtElement};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{inverse2, solve_unique};
use crate::maps::mat_conjugate;

/// (z₁, z₂)ᵀ = M (y₁, y₂)ᵀ.
pub type BasisChange = [[FieldElement; 2]; 2];

pub fn identity_basis(field: FieldSpec) -> BasisChange {
    [[field.one(), field.zero()], [field.zero(), field.one()]]
}

pub fn render_basis(m: &BasisChange) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

/// Re-presents the extension in the generators z = My. Fails with
/// `ShapeError` when z₂z₁ needs a z₂² term, carrying that coefficient.
pub fn change_basis(ext: &DoubleExtension, m: &BasisChange) -> Result<DoubleExtension, TransformError> {
    let spec = ext.spec();
    let ring = spec.ring();
    let m_inv = inverse2(m).ok_or(TransformError::SingularBasis)?;
    let maps = spec.maps();
    let sigma = maps
        .sigma_images()
        .iter()
        .map(|s| mat_conjugate(m, s, &m_inv))
        .collect();
    let delta = maps
        .delta_images()
        .iter()
        .map(|d| [0, 1].map(|i| d[0].scale(&m[i][0]).add(&d[1].scale(&m[i][1]))))
        .collect();

    let z1 = ExtElement::linear(ring, &m[0][0], &m[0][1]);
    let z2 = ExtElement::linear(ring, &m[1][0], &m[1][1]);
    let mut eng = ext.engine();
    let z2z1 = eng.mul(&z2, &z1);
    let z1z2 = eng.mul(&z1, &z2);
    let z1z1 = eng.mul(&z1, &z1);
    let z2z2 = eng.mul(&z2, &z2);

    // degree-2 coefficients are scalars: solve z₂z₁ = β z₁z₂ + α z₁² + γ z₂²
    let words = [(2, 0), (1, 1), (0, 2)];
    let top = |e: &ExtElement, w: (u32, u32)| {
        e.coefficient(w.0, w.1)
            .as_constant()
            .expect("quadratic part has scalar coefficients")
    };
    let a: Vec<Vec<FieldElement>> = words
        .iter()
        .map(|&w| vec![top(&z1z2, w), top(&z1z1, w), top(&z2z2, w)])
        .collect();
    let b: Vec<FieldElement> = words.iter().map(|&w| top(&z2z1, w)).collect();
    let sol = solve_unique(&a, &b).ok_or(TransformError::ShapeError { z2_squared: None })?;
    let (beta, alpha, gamma) = (sol[0].clone(), sol[1].clone(), sol[2].clone());
    if !gamma.is_zero() {
        return Err(TransformError::ShapeError {
            z2_squared: Some(gamma),
        });
    }
    let rest = z2z1.sub(&z1z2.scale(&beta)).sub(&z1z1.scale(&alpha));
    debug_assert!(rest.degree().is_none_or(|d| d <= 1));
    let (r1, r2, r0) = (rest.coefficient(1, 0), rest.coefficient(0, 1), rest.coefficient(0, 0));
    // r₁y₁ + r₂y₂ = [r₁, r₂] M⁻¹ z
    let lin = |j: usize| r1.scale(&m_inv[0][j]).add(&r2.scale(&m_inv[1][j]));
    let tau = [r0, lin(0), lin(1)];
    finish(rebuild(ring, sigma, delta, beta, alpha, tau))
}

/// A successful re-presentation found by [`search_presentations`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundPresentation {
    pub basis: BasisChange,
    pub extension: DoubleExtension,
    pub presentation: IteratedOrePresentation,
}

impl FoundPresentation {
    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "presentation": self.presentation.to_json(),
        })
    }
}

/// Largest prime for which every pair of points of P¹ is tried.
const EXHAUSTIVE_PRIME_LIMIT: u64 = 7;

/// Candidate directions for z₁ and z₂: the normalizing directions, the
/// roots of the shape form and the coordinate axes; over small prime
/// fields, all of P¹. When both the normalizing condition and the shape
/// form are vacuous only these representatives are tried.
fn candidates(ext: &DoubleExtension) -> Vec<ProjectiveDirection> {
    let field = ext.spec().field();
    if let FieldSpec::PrimeField(p) = field {
        if p <= EXHAUSTIVE_PRIME_LIMIT {
            return ProjectiveDirection::all(field).expect("finite field");
        }
    }
    let mut out = vec![
        ProjectiveDirection::infinity(field),
        ProjectiveDirection::affine(field.zero()),
    ];
    let dirs = diag_directions(ext);
    let shape = shape_roots(ext);
    if let Directions::Finite(d) = &dirs {
        out.extend(d.iter().cloned());
    }
    if let Some(s) = &shape {
        out.extend(s.iter().cloned());
    }
    if dirs == Directions::All && shape.is_none() {
        out.push(ProjectiveDirection::affine(field.one()));
    }
    out.sort();
    out.dedup();
    out
}

/// Every linear basis change z = My, with z₁, z₂ drawn from the candidate
/// directions, under which the extension becomes an iterated Ore extension
/// in either order. Sorted by basis, then order.
pub fn search_presentations(ext: &DoubleExtension) -> Vec<FoundPresentation> {
    let field = ext.spec().field();
    let cands = candidates(ext);
    let id = identity_basis(field);
    let mut found: Vec<(BasisChange, Order, FoundPresentation)> = Vec::new();
    for d1 in &cands {
        for d2 in &cands {
            if d1 == d2 {
                continue;
            }
            let m = [[d1.k().clone(), d1.l().clone()], [d2.k().clone(), d2.l().clone()]];
            let Ok(new) = change_basis(ext, &m) else {
                continue;
            };
            let names = if m == id { ["y1", "y2"] } else { ["z1", "z2"] };
            for p in [detect_y1_first(&new), detect_y2_first(&new)].into_iter().flatten() {
                let presentation = p.with_variables(names[0], names[1]);
                found.push((
                    m.clone(),
                    presentation.order,
                    FoundPresentation {
                        basis: m.clone(),
                        extension: new.clone(),
                        presentation,
                    },
                ));
            }
        }
    }
    found.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    found.dedup_by(|a, b| a.2 == b.2);
    found.into_iter().map(|(_, _, f)| f).collect()
}
