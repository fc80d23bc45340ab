//! Sparse multivariate polynomials over an exact field.
//!
//! A [`Polynomial`] lives in a [`PolyRing`], which fixes the coefficient field
//! and the ordered generator names. Terms are kept in a `BTreeMap` keyed by
//! [`Monomial`] under the degree-lexicographic order, so equality is plain
//! structural equality and printing is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings: {0} vs {1}")]
    ContextMismatch(String, String),
}

/// Coefficient field plus ordered generator names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: FieldSpec,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(field: FieldSpec, vars: Vec<String>) -> Arc<Self> {
        Arc::new(PolyRing { field, vars })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector over the ring's generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Splits off one generator: `(index, self / x_index)`, or `None` for 1.
    pub fn split_first_var(&self) -> Option<(usize, Monomial)> {
        let i = self.0.iter().position(|&e| e > 0)?;
        let mut rest = self.0.clone();
        rest[i] -= 1;
        Some((i, Monomial(rest)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree-lexicographic: total degree first, then exponent vectors
/// lexicographically (earlier generators weigh more).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElement) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index), ring.field().one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial from an arbitrary term list: like terms
    /// merged, zero coefficients dropped.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Self {
        let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.exponents().len(), ring.nvars(), "monomial arity");
            match acc.get_mut(&m) {
                Some(existing) => *existing = &*existing + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: acc,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Ascending degree-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    /// The scalar value of a degree-0 polynomial.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(self.field().zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c);
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_term(&mut terms, ma.mul(mb), &(ca * cb));
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.try_add(other).expect("polynomial ring mismatch")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.try_sub(other).expect("polynomial ring mismatch")
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("polynomial ring mismatch")
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitutes `images[i]` for the i-th generator. The images may live in
    /// any ring sharing this ring's field.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                if e > 0 {
                    t = t.mul(&img.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, FieldElement>, m: Monomial, c: &FieldElement) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(existing) => {
            let sum = &*existing + c;
            if sum.is_zero() {
                terms.remove(&m);
            } else {
                *existing = sum;
            }
        }
        None => {
            terms.insert(m, c.clone());
        }
    }
}

pub(crate) fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, &e) in vars.iter().zip(m.exponents()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// Writes `terms` (coefficient, basis-monomial text) as a signed sum, leading
/// term first. An empty basis text stands for 1.
pub(crate) fn format_signed_sum(terms: &[(FieldElement, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, basis)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        if basis.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(basis);
        } else {
            out.push_str(&format!("{mag}*{basis}"));
        }
    }
    out
}

impl Polynomial {
    /// Terms as (coefficient, monomial text), leading term first.
    pub(crate) fn display_terms(&self) -> Vec<(FieldElement, String)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| (c.clone(), format_monomial(self.ring.vars(), m)))
            .collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_signed_sum(&self.display_terms()))
    }
}
