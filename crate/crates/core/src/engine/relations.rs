//! The six consistency relations and the overlap y₂y₁a.

use std::fmt;

use serde::Serialize;

use crate::engine::element::ExtElement;
use crate::engine::normal_form::NormalFormEngine;
use crate::maps::{validate_structure_maps, Component, MapEvaluator};
use crate::poly::Polynomial;
use crate::report::{CheckEntry, ValidationReport};
use crate::spec::DoubleExtSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RelationId {
    #[serde(rename = "R3.1")]
    R1,
    #[serde(rename = "R3.2")]
    R2,
    #[serde(rename = "R3.3")]
    R3,
    #[serde(rename = "R3.4")]
    R4,
    #[serde(rename = "R3.5")]
    R5,
    #[serde(rename = "R3.6")]
    R6,
}

impl RelationId {
    pub const ALL: [RelationId; 6] = [
        RelationId::R1,
        RelationId::R2,
        RelationId::R3,
        RelationId::R4,
        RelationId::R5,
        RelationId::R6,
    ];

    /// The basis word y₁ⁱy₂ʲ whose coefficient in the overlap this
    /// relation controls.
    pub fn basis_word(self) -> (u32, u32) {
        match self {
            RelationId::R1 => (2, 0),
            RelationId::R2 => (1, 1),
            RelationId::R3 => (0, 2),
            RelationId::R4 => (1, 0),
            RelationId::R5 => (0, 1),
            RelationId::R6 => (0, 0),
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = *self as usize + 1;
        write!(f, "R3.{n}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationResidual {
    pub relation: RelationId,
    pub generator: String,
    pub residual: Polynomial,
}

#[derive(Clone, Copy)]
enum Coef {
    One,
    P11,
    P12,
    P11Sq,
    P11P12,
    P12Sq,
}

/// coef · τ_left · (maps applied right to left)(a) · τ_right
struct Term {
    coef: Coef,
    left_tau: Option<usize>,
    right_tau: Option<usize>,
    maps: &'static [Component],
}

const fn t(coef: Coef, maps: &'static [Component]) -> Term {
    Term {
        coef,
        left_tau: None,
        right_tau: None,
        maps,
    }
}

const fn tl(coef: Coef, tau: usize, maps: &'static [Component]) -> Term {
    Term {
        coef,
        left_tau: Some(tau),
        right_tau: None,
        maps,
    }
}

const fn rho(tau: usize, maps: &'static [Component]) -> Term {
    Term {
        coef: Coef::One,
        left_tau: None,
        right_tau: Some(tau),
        maps,
    }
}

use Coef::*;
use Component::{D1 as S10, D2 as S20, S11, S12, S21, S22};

const R1_LHS: &[Term] = &[t(One, &[S21, S11]), t(P11, &[S22, S11])];
const R1_RHS: &[Term] = &[
    t(P11, &[S11, S11]),
    t(P11Sq, &[S12, S11]),
    t(P12, &[S11, S21]),
    t(P11P12, &[S12, S21]),
];
const R2_LHS: &[Term] = &[t(One, &[S21, S12]), t(P12, &[S22, S11])];
const R2_RHS: &[Term] = &[
    t(P11, &[S11, S12]),
    t(P11P12, &[S12, S11]),
    t(P12, &[S11, S22]),
    t(P12Sq, &[S12, S21]),
];
const R3_LHS: &[Term] = &[t(One, &[S22, S12])];
const R3_RHS: &[Term] = &[t(P11, &[S12, S12]), t(P12, &[S12, S22])];
const R4_LHS: &[Term] = &[t(One, &[S20, S11]), t(One, &[S21, S10]), rho(1, &[S22, S11])];
const R4_RHS: &[Term] = &[
    t(P11, &[S10, S11]),
    t(P11, &[S11, S10]),
    tl(P11, 1, &[S12, S11]),
    t(P12, &[S10, S21]),
    t(P12, &[S11, S20]),
    tl(P12, 1, &[S12, S21]),
    tl(One, 1, &[S11]),
    tl(One, 2, &[S21]),
];
const R5_LHS: &[Term] = &[t(One, &[S20, S12]), t(One, &[S22, S10]), rho(2, &[S22, S11])];
const R5_RHS: &[Term] = &[
    t(P11, &[S10, S12]),
    t(P11, &[S12, S10]),
    tl(P11, 2, &[S12, S11]),
    t(P12, &[S10, S22]),
    t(P12, &[S12, S20]),
    tl(P12, 2, &[S12, S21]),
    tl(One, 1, &[S12]),
    tl(One, 2, &[S22]),
];
const R6_LHS: &[Term] = &[t(One, &[S20, S10]), rho(0, &[S22, S11])];
const R6_RHS: &[Term] = &[
    t(P11, &[S10, S10]),
    tl(P11, 0, &[S12, S11]),
    t(P12, &[S10, S20]),
    tl(P12, 0, &[S12, S21]),
    tl(One, 1, &[S10]),
    tl(One, 2, &[S20]),
    tl(One, 0, &[]),
];

fn tables(r: RelationId) -> (&'static [Term], &'static [Term]) {
    match r {
        RelationId::R1 => (R1_LHS, R1_RHS),
        RelationId::R2 => (R2_LHS, R2_RHS),
        RelationId::R3 => (R3_LHS, R3_RHS),
        RelationId::R4 => (R4_LHS, R4_RHS),
        RelationId::R5 => (R5_LHS, R5_RHS),
        RelationId::R6 => (R6_LHS, R6_RHS),
    }
}

fn eval_terms(spec: &DoubleExtSpec, ev: &mut MapEvaluator<'_>, terms: &[Term], a: &Polynomial) -> Polynomial {
    let (p11, p12) = (spec.p11(), spec.p12());
    let mut acc = Polynomial::zero(spec.ring());
    for term in terms {
        let scalar = match term.coef {
            One => spec.field().one(),
            P11 => p11.clone(),
            P12 => p12.clone(),
            P11Sq => p11 * p11,
            P11P12 => p11 * p12,
            P12Sq => p12 * p12,
        };
        if scalar.is_zero() {
            continue;
        }
        let mut v = ev.compose(term.maps, a);
        if let Some(k) = term.left_tau {
            v = spec.tau()[k].mul(&v);
        }
        if let Some(k) = term.right_tau {
            v = v.mul(&spec.tau()[k]);
        }
        acc = acc.add(&v.scale(&scalar));
    }
    acc
}

/// LHS − RHS of `r` evaluated at `a`.
pub fn relation_residual_at(spec: &DoubleExtSpec, r: RelationId, a: &Polynomial) -> Polynomial {
    let mut ev = MapEvaluator::new(spec.maps());
    let (lhs, rhs) = tables(r);
    eval_terms(spec, &mut ev, lhs, a).sub(&eval_terms(spec, &mut ev, rhs, a))
}

/// All six residuals at every generator, zero ones included, ordered by
/// generator then relation.
pub fn relation_residuals(spec: &DoubleExtSpec) -> Vec<RelationResidual> {
    let ring = spec.ring();
    let mut ev = MapEvaluator::new(spec.maps());
    let mut out = Vec::new();
    for (m, name) in ring.vars().iter().enumerate() {
        let x = Polynomial::var(ring, m);
        for r in RelationId::ALL {
            let (lhs, rhs) = tables(r);
            let residual = eval_terms(spec, &mut ev, lhs, &x).sub(&eval_terms(spec, &mut ev, rhs, &x));
            out.push(RelationResidual {
                relation: r,
                generator: name.clone(),
                residual,
            });
        }
    }
    out
}

pub fn validate_relations(spec: &DoubleExtSpec) -> ValidationReport {
    let all = relation_residuals(spec);
    let checks = all.len();
    let failures = all
        .into_iter()
        .filter(|r| !r.residual.is_zero())
        .map(|r| CheckEntry {
            check: r.relation.to_string(),
            generator: r.generator,
            residual: r.residual.to_string(),
        })
        .collect();
    ValidationReport::from_checks(checks, failures)
}

/// NF((y₂y₁)a) − NF(y₂(y₁a)): the first reduction applies the quadratic
/// relation first, the second the mixing rows first. Computed without
/// assuming consistency.
pub fn resolve_overlap(spec: &DoubleExtSpec, a: &Polynomial) -> ExtElement {
    let ring = spec.ring();
    let mut eng = NormalFormEngine::new(spec);
    let [t0, t1, t2] = spec.tau();
    let quad = ExtElement::from_terms(
        ring,
        [
            ((1, 1), Polynomial::constant(ring, spec.p12().clone())),
            ((2, 0), Polynomial::constant(ring, spec.p11().clone())),
            ((1, 0), t1.clone()),
            ((0, 1), t2.clone()),
            ((0, 0), t0.clone()),
        ],
    );
    let g = ExtElement::from_base(a.clone());
    let first = eng.mul(&quad, &g);
    let y1g = eng.left_y1(&g);
    let second = eng.left_y2(&y1g);
    first.sub(&second)
}

fn overlap_report(spec: &DoubleExtSpec) -> ValidationReport {
    let ring = spec.ring();
    let mut failures = Vec::new();
    for (m, name) in ring.vars().iter().enumerate() {
        let o = resolve_overlap(spec, &Polynomial::var(ring, m));
        if !o.is_zero() {
            failures.push(CheckEntry {
                check: "overlap".into(),
                generator: name.clone(),
                residual: o.to_string(),
            });
        }
    }
    ValidationReport::from_checks(ring.nvars(), failures)
}

/// Full existence decision: structure maps, then the six relations and the
/// overlap at every generator. Relations are skipped when the maps are not
/// well defined, since their values would then depend on evaluation order.
pub fn validate_spec(spec: &DoubleExtSpec) -> ValidationReport {
    let structure = validate_structure_maps(spec.maps());
    if !structure.is_valid() {
        return structure;
    }
    structure
        .merge(validate_relations(spec))
        .merge(overlap_report(spec))
}
