//! Iterated Ore presentations A[u; σ₁, d₁][v; σ₂, d₂] and the data-level
//! tests deciding when a double extension is one.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::analysis::transforms::swap_data;
use crate::analysis::{rebuild, TransformError};
use crate::engine::{DoubleExtension, ExtElement};
use crate::examples::scalar_base_over;
use crate::field::{FieldElement, FieldSpec};
use crate::maps::{is_automorphism, Automorphy, EndoDescription};
use crate::poly::{PolyRing, Polynomial};
use crate::spec::DoubleExtSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Order {
    #[serde(rename = "y1-first")]
    Y1First,
    #[serde(rename = "y2-first")]
    Y2First,
}

/// A[u; σ₁, d₁][v; σ₂, d₂] where u is adjoined first. For `Y1First` u is
/// the first generator, for `Y2First` the second.
///
/// σ₂(u) = p·u + t, d₂(a) = c_a·u + e_a on base generators, and
/// d₂(u) = c·u² + t₁·u + t₀.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedOrePresentation {
    pub order: Order,
    /// Names of (u, v).
    pub variables: [String; 2],
    pub sigma1: EndoDescription,
    pub d1: Vec<Polynomial>,
    pub sigma2_on_a: EndoDescription,
    pub sigma2_on_inner: (FieldElement, Polynomial),
    pub d2_on_a: Vec<(Polynomial, Polynomial)>,
    pub d2_on_inner: (FieldElement, Polynomial, Polynomial),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotPresentable {
    pub order: Order,
    pub reasons: Vec<String>,
}

impl IteratedOrePresentation {
    pub fn ring(&self) -> &Arc<PolyRing> {
        self.sigma1.ring()
    }

    pub fn with_variables(mut self, first: &str, second: &str) -> Self {
        self.variables = match self.order {
            Order::Y1First => [first.into(), second.into()],
            Order::Y2First => [second.into(), first.into()],
        };
        self
    }

    /// The spec in the generator order u, v.
    fn inner_spec(&self) -> DoubleExtSpec {
        let ring = self.ring();
        let zero = Polynomial::zero(ring);
        let n = ring.nvars();
        let sigma = (0..n)
            .map(|m| {
                [
                    [self.sigma1.images()[m].clone(), zero.clone()],
                    [self.d2_on_a[m].0.clone(), self.sigma2_on_a.images()[m].clone()],
                ]
            })
            .collect();
        let delta = (0..n).map(|m| [self.d1[m].clone(), self.d2_on_a[m].1.clone()]).collect();
        let (p, t) = &self.sigma2_on_inner;
        let (c, t1, t0) = &self.d2_on_inner;
        rebuild(ring, sigma, delta, p.clone(), c.clone(), [t0.clone(), t1.clone(), t.clone()])
    }

    /// The double extension data these maps describe, in the original
    /// generator order.
    pub fn to_spec(&self) -> DoubleExtSpec {
        let inner = self.inner_spec();
        match self.order {
            Order::Y1First => inner,
            Order::Y2First => swap_data(&inner).expect("y2-first data has p11 = 0 and p12 != 0"),
        }
    }

    pub fn to_json(&self) -> Value {
        let ring = self.ring();
        let [u, v] = [self.variables[0].as_str(), self.variables[1].as_str()];
        let poly_map = |f: &dyn Fn(usize) -> String| {
            let mut m = Map::new();
            for (i, g) in ring.vars().iter().enumerate() {
                m.insert(g.clone(), Value::String(f(i)));
            }
            m
        };
        let lin = |c: &Polynomial, e: &Polynomial| {
            ExtElement::from_terms(ring, [((1, 0), c.clone()), ((0, 0), e.clone())]).render_with([u, "_"])
        };
        let mut sigma2 = poly_map(&|i| self.sigma2_on_a.images()[i].to_string());
        let (p, t) = &self.sigma2_on_inner;
        sigma2.insert(u.into(), Value::String(lin(&Polynomial::constant(ring, p.clone()), t)));
        let mut d2 = poly_map(&|i| lin(&self.d2_on_a[i].0, &self.d2_on_a[i].1));
        let (c, t1, t0) = &self.d2_on_inner;
        let inner = ExtElement::from_terms(
            ring,
            [
                ((2, 0), Polynomial::constant(ring, c.clone())),
                ((1, 0), t1.clone()),
                ((0, 0), t0.clone()),
            ],
        );
        d2.insert(u.into(), Value::String(inner.render_with([u, "_"])));
        json!({
            "order": self.order,
            "tower": format!("A[{u}; sigma1, d1][{v}; sigma2, d2]"),
            "sigma1": poly_map(&|i| self.sigma1.images()[i].to_string()),
            "d1": poly_map(&|i| self.d1[i].to_string()),
            "sigma2": sigma2,
            "d2": d2,
        })
    }
}

fn nonzero_entries(spec: &DoubleExtSpec, row: usize, col: usize, label: &str) -> Vec<String> {
    let ring = spec.ring();
    spec.maps()
        .sigma_images()
        .iter()
        .enumerate()
        .filter(|(_, s)| !s[row][col].is_zero())
        .map(|(m, s)| format!("{label}({}) = {} is nonzero", ring.vars()[m], s[row][col]))
        .collect()
}

fn y1_first_data(spec: &DoubleExtSpec) -> Result<IteratedOrePresentation, NotPresentable> {
    let reasons = nonzero_entries(spec, 0, 1, "sigma12");
    if !reasons.is_empty() {
        return Err(NotPresentable {
            order: Order::Y1First,
            reasons,
        });
    }
    let ring = spec.ring();
    let maps = spec.maps();
    let endo = |row: usize, col: usize| {
        EndoDescription::new(ring, maps.sigma_images().iter().map(|s| s[row][col].clone()).collect())
            .expect("same ring")
    };
    let [t0, t1, t2] = spec.tau().clone();
    Ok(IteratedOrePresentation {
        order: Order::Y1First,
        variables: ["y1".into(), "y2".into()],
        sigma1: endo(0, 0),
        d1: maps.delta_images().iter().map(|d| d[0].clone()).collect(),
        sigma2_on_a: endo(1, 1),
        sigma2_on_inner: (spec.p12().clone(), t2),
        d2_on_a: maps
            .sigma_images()
            .iter()
            .zip(maps.delta_images())
            .map(|(s, d)| (s[1][0].clone(), d[1].clone()))
            .collect(),
        d2_on_inner: (spec.p11().clone(), t1, t0),
    })
}

/// A[y₁; σ₁₁, δ₁][y₂; σ₂, d₂], available exactly when σ₁₂ vanishes.
pub fn detect_y1_first(ext: &DoubleExtension) -> Result<IteratedOrePresentation, NotPresentable> {
    y1_first_data(ext.spec())
}

/// A[y₂; σ₂₂, δ₂][y₁; σ₁', d₁'], available exactly when σ₂₁ = 0, p₁₂ ≠ 0
/// and p₁₁ = 0.
pub fn detect_y2_first(ext: &DoubleExtension) -> Result<IteratedOrePresentation, NotPresentable> {
    let spec = ext.spec();
    let mut reasons = nonzero_entries(spec, 1, 0, "sigma21");
    if spec.p12().is_zero() {
        reasons.push("p12 = 0".into());
    }
    if !spec.p11().is_zero() {
        reasons.push(format!("p11 = {} is nonzero", spec.p11()));
    }
    if !reasons.is_empty() {
        return Err(NotPresentable {
            order: Order::Y2First,
            reasons,
        });
    }
    let swapped = swap_data(spec).expect("conditions checked");
    let mut p = y1_first_data(&swapped).expect("sigma21 = 0 becomes sigma12 = 0");
    p.order = Order::Y2First;
    p.variables = ["y2".into(), "y1".into()];
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    DoubleExtension,
    RightOnly,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

/// Decides whether a right double extension is a double extension, in the
/// triangular cases where the diagonal endomorphisms settle it.
pub fn classify_double(ext: &DoubleExtension) -> Classification {
    let spec = ext.spec();
    let done = |verdict, reasons: Vec<String>| Classification { verdict, reasons };
    if spec.p12().is_zero() {
        return done(Verdict::RightOnly, vec!["p12 = 0".into()]);
    }
    let ring = spec.ring();
    let entry = |r: usize, c: usize| spec.maps().sigma_images().iter().map(|s| s[r][c].clone()).collect::<Vec<_>>();
    let upper = entry(0, 1).iter().all(Polynomial::is_zero);
    let lower = entry(1, 0).iter().all(Polynomial::is_zero) && spec.p11().is_zero();
    if !upper && !lower {
        return done(
            Verdict::Unknown,
            vec!["sigma is not triangular; right freeness is not decided".into()],
        );
    }
    let mut reasons = Vec::new();
    let mut any_no = false;
    let mut all_yes = true;
    for (label, r) in [("sigma11", 0), ("sigma22", 1)] {
        let e = EndoDescription::new(ring, entry(r, r)).expect("same ring");
        let a = is_automorphism(&e);
        match a {
            Automorphy::Yes => reasons.push(format!("{label} is an automorphism")),
            Automorphy::No => reasons.push(format!("{label} is not an automorphism")),
            Automorphy::Unknown => reasons.push(format!("automorphy of {label} is undecided")),
        }
        any_no |= a == Automorphy::No;
        all_yes &= a == Automorphy::Yes;
    }
    let verdict = if all_yes {
        Verdict::DoubleExtension
    } else if any_no {
        Verdict::RightOnly
    } else {
        Verdict::Unknown
    };
    done(verdict, reasons)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarBaseExtension {
    pub extension: DoubleExtension,
    pub presentation: IteratedOrePresentation,
    pub is_double: bool,
}

/// B = K[x₁][x₂; σ₂, d₂] with σ₂(x₁) = p₁₂x₁ + τ₂ and
/// d₂(x₁) = p₁₁x₁² + τ₁x₁ + τ₀, or its tensor with a given base where σ
/// acts diagonally by the identity and δ = 0. It is a double extension
/// exactly when p₁₂ ≠ 0.
pub fn scalar_base_extension(
    p12: &FieldElement,
    p11: &FieldElement,
    tau: &[FieldElement; 3],
    base: Option<&Arc<PolyRing>>,
) -> Result<ScalarBaseExtension, TransformError> {
    let field: FieldSpec = p12.field();
    let ring = base.cloned().unwrap_or_else(|| PolyRing::new(field, vec![]));
    let spec = scalar_base_over(&ring, p12, p11, tau).map_err(|e| TransformError::PreconditionFailed(e.to_string()))?;
    let extension = crate::analysis::finish(spec)?;
    let presentation = detect_y1_first(&extension)
        .expect("identity sigma is triangular")
        .with_variables("x1", "x2");
    Ok(ScalarBaseExtension {
        extension,
        presentation,
        is_double: !p12.is_zero(),
    })
}
