//! Normalizing directions z = ky₁ + ly₂ with zA ⊆ Az + A.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::engine::DoubleExtension;
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::UniPoly;
use crate::poly::Monomial;

/// A point (k : l) of the projective line, normalized to l = 1 or (1 : 0).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectiveDirection {
    // (1:0) sorts after every (k:1)
    at_infinity: bool,
    k: FieldElement,
    l: FieldElement,
}

impl ProjectiveDirection {
    /// `None` when both coordinates vanish.
    pub fn new(k: FieldElement, l: FieldElement) -> Option<Self> {
        let f = k.field();
        if l.is_zero() {
            if k.is_zero() {
                return None;
            }
            return Some(ProjectiveDirection {
                at_infinity: true,
                k: f.one(),
                l: f.zero(),
            });
        }
        let inv = l.inv().expect("nonzero");
        Some(ProjectiveDirection {
            at_infinity: false,
            k: &k * &inv,
            l: f.one(),
        })
    }

    pub fn affine(t: FieldElement) -> Self {
        let one = t.field().one();
        Self::new(t, one).expect("l = 1")
    }

    pub fn infinity(field: FieldSpec) -> Self {
        Self::new(field.one(), field.zero()).expect("k = 1")
    }

    pub fn k(&self) -> &FieldElement {
        &self.k
    }

    pub fn l(&self) -> &FieldElement {
        &self.l
    }

    /// Every point of P¹ over a finite field.
    pub fn all(field: FieldSpec) -> Option<Vec<Self>> {
        let mut v: Vec<Self> = field.elements()?.into_iter().map(Self::affine).collect();
        v.push(Self::infinity(field));
        Some(v)
    }
}

impl fmt::Display for ProjectiveDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.k, self.l)
    }
}

impl Serialize for ProjectiveDirection {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Directions {
    All,
    Finite(Vec<ProjectiveDirection>),
}

impl Serialize for Directions {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Directions::All => s.serialize_str("all"),
            Directions::Finite(v) => v.serialize(s),
        }
    }
}

/// Coefficient triples (α, β, γ) of αk² + βkl + γl² = 0, one per generator
/// and monomial, from kl·σ₁₁ + l²·σ₂₁ − kl·σ₂₂ − k²·σ₁₂ = 0. Zero triples
/// are dropped.
fn triples(ext: &DoubleExtension) -> Vec<[FieldElement; 3]> {
    let maps = ext.spec().maps();
    let mut out = Vec::new();
    for s in maps.sigma_images() {
        let monos: BTreeSet<&Monomial> = s.iter().flatten().flat_map(|p| p.terms().map(|(m, _)| m)).collect();
        for m in monos {
            let c = |i: usize, j: usize| s[i][j].coefficient(m);
            let t = [-&c(0, 1), &c(0, 0) - &c(1, 1), c(1, 0)];
            if t.iter().any(|v| !v.is_zero()) {
                out.push(t);
            }
        }
    }
    out
}

/// All (k : l) making z = ky₁ + ly₂ normalizing over A.
pub fn diag_directions(ext: &DoubleExtension) -> Directions {
    let field = ext.spec().field();
    let ts = triples(ext);
    if ts.is_empty() {
        return Directions::All;
    }
    let mut out = Vec::new();
    let mut g: Option<UniPoly> = None;
    for [a, b, c] in &ts {
        let p = UniPoly::new(field, vec![c.clone(), b.clone(), a.clone()]);
        g = Some(match g {
            None => p,
            Some(acc) => acc.gcd(&p),
        });
    }
    let g = g.expect("nonempty");
    if !g.is_zero() {
        out.extend(g.roots().into_iter().map(ProjectiveDirection::affine));
    }
    if ts.iter().all(|t| t[0].is_zero()) {
        out.push(ProjectiveDirection::infinity(field));
    }
    out.sort();
    out.dedup();
    Directions::Finite(out)
}

/// Roots of the shape form s(k, l) = l·(p₁₁l + (1 − p₁₂)k), which vanishes
/// exactly when z₁ = ky₁ + ly₂ admits a complement with no z₂² term in the
/// quadratic relation. `None` when s is identically zero.
pub(crate) fn shape_roots(ext: &DoubleExtension) -> Option<Vec<ProjectiveDirection>> {
    let spec = ext.spec();
    let f = spec.field();
    let a = &f.one() - spec.p12();
    let b = spec.p11().clone();
    if a.is_zero() && b.is_zero() {
        return None;
    }
    // l = 0, and p₁₁l + (1 − p₁₂)k = 0
    let mut out = vec![ProjectiveDirection::infinity(f)];
    out.extend(ProjectiveDirection::new(-&b, a));
    out.sort();
    out.dedup();
    Some(out)
}
