use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::field::FieldElement;
use crate::poly::{format_signed_sum, PolyRing, Polynomial};

/// Σ a_ij y₁^i y₂^j in the left A-basis, finitely supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    ring: Arc<PolyRing>,
    terms: BTreeMap<(u32, u32), Polynomial>,
}

impl ExtElement {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        ExtElement {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::from_base(Polynomial::one(ring))
    }

    pub fn from_base(a: Polynomial) -> Self {
        Self::basis(0, 0, a)
    }

    /// `coef · y₁^i y₂^j`.
    pub fn basis(i: u32, j: u32, coef: Polynomial) -> Self {
        let mut e = ExtElement::zero(coef.ring());
        e.add_term(i, j, &coef);
        e
    }

    pub fn y1(ring: &Arc<PolyRing>) -> Self {
        Self::basis(1, 0, Polynomial::one(ring))
    }

    pub fn y2(ring: &Arc<PolyRing>) -> Self {
        Self::basis(0, 1, Polynomial::one(ring))
    }

    /// `a·y₁ + b·y₂` for scalars a, b.
    pub fn linear(ring: &Arc<PolyRing>, a: &FieldElement, b: &FieldElement) -> Self {
        let mut e = ExtElement::zero(ring);
        e.add_term(1, 0, &Polynomial::constant(ring, a.clone()));
        e.add_term(0, 1, &Polynomial::constant(ring, b.clone()));
        e
    }

    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = ((u32, u32), Polynomial)>,
    ) -> Self {
        let mut e = ExtElement::zero(ring);
        for ((i, j), c) in terms {
            e.add_term(i, j, &c);
        }
        e
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Ascending (i, j).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Polynomial {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    pub(crate) fn add_term(&mut self, i: u32, j: u32, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry((i, j))
            .or_insert_with(|| Polynomial::zero(&self.ring));
        *slot = slot.add(c);
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &ExtElement) -> ExtElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExtElement {
        ExtElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    /// Left multiplication by a base element.
    pub fn left_mul(&self, a: &Polynomial) -> ExtElement {
        let mut out = ExtElement::zero(&self.ring);
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, &a.mul(c));
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> ExtElement {
        let mut out = ExtElement::zero(&self.ring);
        for (&(i, j), p) in &self.terms {
            out.add_term(i, j, &p.scale(c));
        }
        out
    }

    /// Right multiplication by y₂^l, which never leaves normal form.
    pub fn shift_y2(&self, l: u32) -> ExtElement {
        ExtElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(&(i, j), c)| ((i, j + l), c.clone())).collect(),
        }
    }

    /// Largest i + j in the support; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// The part with i + j = d.
    pub fn homogeneous_part(&self, d: u32) -> ExtElement {
        ExtElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Renders with custom names for the two adjoined generators, leading
    /// (i, j) first.
    pub fn render_with(&self, names: [&str; 2]) -> String {
        let mut parts: Vec<(FieldElement, String)> = Vec::new();
        for (&(i, j), c) in self.terms.iter().rev() {
            let y = y_text(names, i, j);
            if y.is_empty() {
                parts.extend(c.display_terms());
                continue;
            }
            if c.num_terms() == 1 {
                let (coef, mono) = c.display_terms().remove(0);
                let text = if mono.is_empty() { y } else { format!("{mono}*{y}") };
                parts.push((coef, text));
            } else {
                parts.push((c.field().one(), format!("({c})*{y}")));
            }
        }
        format_signed_sum(&parts)
    }
}

fn y_text(names: [&str; 2], i: u32, j: u32) -> String {
    let mut v = Vec::new();
    for (name, e) in [(names[0], i), (names[1], j)] {
        match e {
            0 => {}
            1 => v.push(name.to_string()),
            _ => v.push(format!("{name}^{e}")),
        }
    }
    v.join("*")
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(["y1", "y2"]))
    }
}
