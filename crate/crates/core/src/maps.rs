//! The structure maps σ: A → M₂ₓ₂(A) and δ: A → M₂ₓ₁(A).
//!
//! Both maps are stored only through their values on the base generators.
//! Values on arbitrary polynomials come from the algebra homomorphism
//!
//! ```text
//!        ┌ σ(a)  δ(a) ┐
//! a  ↦   └  0     a   ┘   ∈ M₃ₓ₃(A)
//! ```
//!
//! which is multiplicative exactly when σ is a homomorphism and δ a
//! σ-derivation. A [`Block`] is one such triangular matrix.

use std::collections::HashMap;
use std::sync::Arc;

use crate::field::FieldElement;
use crate::poly::{same_ring, Monomial, PolyError, PolyRing, Polynomial};
use crate::report::{CheckEntry, ValidationReport};
use crate::spec::DoubleExtSpec;

pub type Mat2 = [[Polynomial; 2]; 2];
pub type Col2 = [Polynomial; 2];

pub fn mat_zero(ring: &Arc<PolyRing>) -> Mat2 {
    let z = Polynomial::zero(ring);
    [[z.clone(), z.clone()], [z.clone(), z]]
}

pub fn mat_identity(ring: &Arc<PolyRing>) -> Mat2 {
    let (z, o) = (Polynomial::zero(ring), Polynomial::one(ring));
    [[o.clone(), z.clone()], [z, o]]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| a[i][j].sub(&b[i][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat_col(a: &Mat2, v: &Col2) -> Col2 {
    let e = |i: usize| a[i][0].mul(&v[0]).add(&a[i][1].mul(&v[1]));
    [e(0), e(1)]
}

/// `s · a · t` for scalar matrices `s`, `t`: conjugation of the generator
/// images under a change of the y-basis.
pub fn mat_conjugate(s: &[[FieldElement; 2]; 2], a: &Mat2, t: &[[FieldElement; 2]; 2]) -> Mat2 {
    let ring = a[0][0].ring().clone();
    let mut out = mat_zero(&ring);
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            for k in 0..2 {
                for l in 0..2 {
                    let c = &(&s[i][k] * &t[l][j]);
                    *slot = slot.add(&a[k][l].scale(c));
                }
            }
        }
    }
    out
}

pub(crate) fn render_mat(m: &Mat2) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

pub(crate) fn render_col(c: &Col2) -> String {
    format!("[{}, {}]", c[0], c[1])
}

/// The values σ(a), δ(a) and `a` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub sigma: Mat2,
    pub delta: Col2,
    pub base: Polynomial,
}

impl Block {
    fn identity(ring: &Arc<PolyRing>) -> Self {
        let z = Polynomial::zero(ring);
        Block {
            sigma: mat_identity(ring),
            delta: [z.clone(), z],
            base: Polynomial::one(ring),
        }
    }

    fn zero(ring: &Arc<PolyRing>) -> Self {
        let z = Polynomial::zero(ring);
        Block {
            sigma: mat_zero(ring),
            delta: [z.clone(), z.clone()],
            base: z,
        }
    }

    fn mul(&self, rhs: &Block) -> Block {
        let sd = mat_col(&self.sigma, &rhs.delta);
        Block {
            sigma: mat_mul(&self.sigma, &rhs.sigma),
            delta: [
                sd[0].add(&self.delta[0].mul(&rhs.base)),
                sd[1].add(&self.delta[1].mul(&rhs.base)),
            ],
            base: self.base.mul(&rhs.base),
        }
    }

    fn add_scaled(&mut self, rhs: &Block, c: &FieldElement) {
        for i in 0..2 {
            for j in 0..2 {
                self.sigma[i][j] = self.sigma[i][j].add(&rhs.sigma[i][j].scale(c));
            }
            self.delta[i] = self.delta[i].add(&rhs.delta[i].scale(c));
        }
        self.base = self.base.add(&rhs.base.scale(c));
    }

    pub fn component(&self, c: Component) -> &Polynomial {
        match c {
            Component::S11 => &self.sigma[0][0],
            Component::S12 => &self.sigma[0][1],
            Component::S21 => &self.sigma[1][0],
            Component::S22 => &self.sigma[1][1],
            Component::D1 => &self.delta[0],
            Component::D2 => &self.delta[1],
        }
    }
}

/// One of the six K-linear maps σ₁₁, σ₁₂, σ₂₁, σ₂₂, σ₁₀ = δ₁, σ₂₀ = δ₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    S11,
    S12,
    S21,
    S22,
    D1,
    D2,
}

impl Component {
    /// The map σ_{row,col}, with column 0 meaning δ.
    pub fn at(row: usize, col: usize) -> Component {
        match (row, col) {
            (1, 1) => Component::S11,
            (1, 2) => Component::S12,
            (2, 1) => Component::S21,
            (2, 2) => Component::S22,
            (1, 0) => Component::D1,
            (2, 0) => Component::D2,
            _ => panic!("no structure map sigma_{row}{col}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMaps {
    ring: Arc<PolyRing>,
    sigma: Vec<Mat2>,
    delta: Vec<Col2>,
}

impl StructureMaps {
    pub fn new(ring: &Arc<PolyRing>, sigma: Vec<Mat2>, delta: Vec<Col2>) -> Result<Self, PolyError> {
        assert_eq!(sigma.len(), ring.nvars(), "one sigma matrix per generator");
        assert_eq!(delta.len(), ring.nvars(), "one delta column per generator");
        let probe = Polynomial::zero(ring);
        for p in sigma.iter().flatten().flatten().chain(delta.iter().flatten()) {
            probe.check_ring(p)?;
        }
        Ok(StructureMaps {
            ring: ring.clone(),
            sigma,
            delta,
        })
    }

    /// σ = id·I, δ = 0.
    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        let n = ring.nvars();
        let mut sigma = Vec::with_capacity(n);
        for i in 0..n {
            let x = Polynomial::var(ring, i);
            let z = Polynomial::zero(ring);
            sigma.push([[x.clone(), z.clone()], [z, x]]);
        }
        let z = Polynomial::zero(ring);
        StructureMaps {
            ring: ring.clone(),
            sigma,
            delta: vec![[z.clone(), z]; n],
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn sigma_images(&self) -> &[Mat2] {
        &self.sigma
    }

    pub fn delta_images(&self) -> &[Col2] {
        &self.delta
    }

    pub fn sigma_image(&self, gen: usize) -> &Mat2 {
        &self.sigma[gen]
    }

    pub fn delta_image(&self, gen: usize) -> &Col2 {
        &self.delta[gen]
    }

    pub fn generator_block(&self, gen: usize) -> Block {
        Block {
            sigma: self.sigma[gen].clone(),
            delta: self.delta[gen].clone(),
            base: Polynomial::var(&self.ring, gen),
        }
    }

    /// Component `c` evaluated on every generator.
    pub fn component_images(&self, c: Component) -> Vec<Polynomial> {
        (0..self.ring.nvars())
            .map(|g| self.generator_block(g).component(c).clone())
            .collect()
    }
}

/// Evaluates σ and δ on polynomials, memoizing monomial values.
#[derive(Debug, Clone)]
pub struct MapEvaluator<'a> {
    maps: &'a StructureMaps,
    cache: HashMap<Monomial, Block>,
}

impl<'a> MapEvaluator<'a> {
    pub fn new(maps: &'a StructureMaps) -> Self {
        MapEvaluator {
            maps,
            cache: HashMap::new(),
        }
    }

    pub fn maps(&self) -> &'a StructureMaps {
        self.maps
    }

    fn monomial(&mut self, m: &Monomial) -> Block {
        if let Some(b) = self.cache.get(m) {
            return b.clone();
        }
        // x_i · rest, with generators peeled off in index order
        let b = match m.split_first_var() {
            None => Block::identity(&self.maps.ring),
            Some((i, rest)) => {
                let tail = self.monomial(&rest);
                self.maps.generator_block(i).mul(&tail)
            }
        };
        self.cache.insert(m.clone(), b.clone());
        b
    }

    pub fn apply(&mut self, f: &Polynomial) -> Result<Block, PolyError> {
        Polynomial::zero(&self.maps.ring).check_ring(f)?;
        let mut acc = Block::zero(&self.maps.ring);
        for (m, c) in f.terms() {
            let b = self.monomial(m);
            acc.add_scaled(&b, c);
        }
        Ok(acc)
    }

    pub fn component(&mut self, c: Component, f: &Polynomial) -> Polynomial {
        self.apply(f)
            .expect("polynomial from the base ring")
            .component(c)
            .clone()
    }

    /// Applies `maps` right to left: `compose(&[a, b], f) = a(b(f))`.
    pub fn compose(&mut self, maps: &[Component], f: &Polynomial) -> Polynomial {
        maps.iter()
            .rev()
            .fold(f.clone(), |acc, &c| self.component(c, &acc))
    }
}

pub fn sigma_apply(maps: &StructureMaps, f: &Polynomial) -> Result<Mat2, PolyError> {
    Ok(MapEvaluator::new(maps).apply(f)?.sigma)
}

pub fn delta_apply(maps: &StructureMaps, f: &Polynomial) -> Result<Col2, PolyError> {
    Ok(MapEvaluator::new(maps).apply(f)?.delta)
}

/// Checks that the generator images define a homomorphism and a
/// σ-derivation on the commutative base: for each generator pair, σ(xᵢ)
/// and σ(xⱼ) commute, and δ(xᵢxⱼ) computed in either order agrees.
pub fn validate_structure_maps(maps: &StructureMaps) -> ValidationReport {
    let ring = maps.ring();
    let n = ring.nvars();
    let mut failures = Vec::new();
    let mut checks = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (bi, bj) = (maps.generator_block(i), maps.generator_block(j));
            let (ij, ji) = (bi.mul(&bj), bj.mul(&bi));
            let pair = format!("{},{}", ring.vars()[i], ring.vars()[j]);
            checks += 2;
            let hom = mat_sub(&ij.sigma, &ji.sigma);
            if hom.iter().flatten().any(|p| !p.is_zero()) {
                failures.push(CheckEntry {
                    check: "hom".into(),
                    generator: pair.clone(),
                    residual: render_mat(&hom),
                });
            }
            let der = [ij.delta[0].sub(&ji.delta[0]), ij.delta[1].sub(&ji.delta[1])];
            if der.iter().any(|p| !p.is_zero()) {
                failures.push(CheckEntry {
                    check: "derivation".into(),
                    generator: pair,
                    residual: render_col(&der),
                });
            }
        }
    }
    ValidationReport::from_checks(checks, failures)
}

/// det(σ) = −p₁₁σ₁₂σ₁₁ + σ₂₂σ₁₁ − p₁₂σ₁₂σ₂₁, compositions applied right to left.
pub fn det_sigma_apply(spec: &DoubleExtSpec, f: &Polynomial) -> Result<Polynomial, PolyError> {
    use Component::*;
    let mut ev = MapEvaluator::new(spec.maps());
    ev.apply(f)?;
    let a = ev.compose(&[S12, S11], f).scale(&-spec.p11());
    let b = ev.compose(&[S22, S11], f);
    let c = ev.compose(&[S12, S21], f).scale(&-spec.p12());
    Ok(a.add(&b).add(&c))
}

/// An algebra endomorphism of the base, given by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoDescription {
    ring: Arc<PolyRing>,
    images: Vec<Polynomial>,
}

impl EndoDescription {
    pub fn new(ring: &Arc<PolyRing>, images: Vec<Polynomial>) -> Result<Self, PolyError> {
        assert_eq!(images.len(), ring.nvars(), "one image per generator");
        let probe = Polynomial::zero(ring);
        for p in &images {
            probe.check_ring(p)?;
        }
        Ok(EndoDescription {
            ring: ring.clone(),
            images,
        })
    }

    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        EndoDescription {
            ring: ring.clone(),
            images: (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, f.ring()), "endomorphism applied across rings");
        f.substitute(&self.images, &self.ring)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &EndoDescription) -> EndoDescription {
        EndoDescription {
            ring: self.ring.clone(),
            images: other.images.iter().map(|p| self.apply(p)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Automorphy {
    Yes,
    No,
    Unknown,
}

/// Decides automorphy where it is decidable by inspection: one variable
/// (degree-1 images only) and affine maps. Everything else is `Unknown`.
pub fn is_automorphism(e: &EndoDescription) -> Automorphy {
    let ring = e.ring();
    let n = ring.nvars();
    if n == 0 {
        return Automorphy::Yes;
    }
    if n == 1 {
        return if e.images[0].degree() == Some(1) {
            Automorphy::Yes
        } else {
            Automorphy::No
        };
    }
    if e.images.iter().any(|p| p.degree().is_none_or(|d| d == 0)) {
        return Automorphy::No;
    }
    if e.images.iter().any(|p| p.degree() != Some(1)) {
        return Automorphy::Unknown;
    }
    let linear: Vec<Vec<FieldElement>> = e
        .images
        .iter()
        .map(|p| {
            (0..n)
                .map(|i| p.coefficient(&Monomial::var(n, i)))
                .collect()
        })
        .collect();
    if crate::linalg::rank(linear) == n {
        Automorphy::Yes
    } else {
        Automorphy::No
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_poly;
    use crate::poly::tests::{arb_poly, ring};
    use proptest::prelude::*;

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        parse_poly(s, r).unwrap()
    }

    fn maps_from(r: &Arc<PolyRing>, sigma: &[[[&str; 2]; 2]], delta: &[[&str; 2]]) -> StructureMaps {
        StructureMaps::new(
            r,
            sigma
                .iter()
                .map(|m| {
                    [
                        [p(r, m[0][0]), p(r, m[0][1])],
                        [p(r, m[1][0]), p(r, m[1][1])],
                    ]
                })
                .collect(),
            delta.iter().map(|d| [p(r, d[0]), p(r, d[1])]).collect(),
        )
        .unwrap()
    }

    /// B²(a,b,c) with b=2, c=3.
    fn b2_maps() -> (Arc<PolyRing>, StructureMaps) {
        let r = ring(FieldSpec::Rationals, &["x"]);
        let m = maps_from(&r, &[[["0", "1/2*x"], ["2*x", "0"]]], &[["3*x^2", "-6*x^2"]]);
        (r, m)
    }

    /// Independent route: δ(fg) = σ(f)δ(g) + δ(f)g expanded recursively on
    /// a monomial written as a word, σ via repeated 2x2 products.
    fn delta_by_recursion(maps: &StructureMaps, word: &[usize]) -> (Mat2, Col2) {
        let ring = maps.ring();
        match word.split_first() {
            None => {
                let z = Polynomial::zero(ring);
                (mat_identity(ring), [z.clone(), z])
            }
            Some((&first, rest)) => {
                let (s_rest, d_rest) = delta_by_recursion(maps, rest);
                let s_first = maps.sigma_image(first);
                let d_first = maps.delta_image(first);
                let rest_poly = rest
                    .iter()
                    .fold(Polynomial::one(ring), |acc, &g| acc.mul(&Polynomial::var(ring, g)));
                let sd = mat_col(s_first, &d_rest);
                (
                    mat_mul(s_first, &s_rest),
                    [
                        sd[0].add(&d_first[0].mul(&rest_poly)),
                        sd[1].add(&d_first[1].mul(&rest_poly)),
                    ],
                )
            }
        }
    }

    #[test]
    fn b2_sigma_and_delta() {
        let (r, m) = b2_maps();
        let x = Polynomial::var(&r, 0);
        let sx = sigma_apply(&m, &x).unwrap();
        assert_eq!(render_mat(&sx), "[[0, 1/2*x], [2*x, 0]]");
        let sx2 = sigma_apply(&m, &x.pow(2)).unwrap();
        assert_eq!(sx2, mat_mul(&sx, &sx));
        assert_eq!(render_mat(&sx2), "[[x^2, 0], [0, x^2]]");
        assert_eq!(sigma_apply(&m, &Polynomial::one(&r)).unwrap(), mat_identity(&r));

        assert_eq!(render_col(&delta_apply(&m, &x).unwrap()), "[3*x^2, -6*x^2]");
        let dx2 = delta_apply(&m, &x.pow(2)).unwrap();
        assert!(dx2.iter().all(Polynomial::is_zero));
        assert_eq!(delta_by_recursion(&m, &[0, 0]).1, dx2);
        assert!(delta_apply(&m, &Polynomial::one(&r)).unwrap().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn apply_rejects_foreign_polynomials() {
        let (_, m) = b2_maps();
        let other = ring(FieldSpec::Rationals, &["z"]);
        assert!(sigma_apply(&m, &Polynomial::var(&other, 0)).is_err());
    }

    #[test]
    fn structure_validation_examples() {
        let (_, m) = b2_maps();
        assert!(validate_structure_maps(&m).is_valid());

        let r = ring(FieldSpec::Rationals, &["x", "z"]);
        let diag = maps_from(&r, &[[["z", "0"], ["0", "z"]], [["x", "0"], ["0", "x"]]], &[["0", "0"], ["0", "0"]]);
        assert!(validate_structure_maps(&diag).is_valid());

        let bad = maps_from(
            &r,
            &[[["0", "x"], ["x", "0"]], [["z", "0"], ["0", "-z"]]],
            &[["0", "0"], ["0", "0"]],
        );
        let report = validate_structure_maps(&bad);
        assert!(!report.is_valid());
        // [[0,x],[x,0]]·diag(z,-z) - diag(z,-z)·[[0,x],[x,0]] = [[0,-2xz],[2xz,0]]
        assert_eq!(report.failures[0].check, "hom");
        assert_eq!(report.failures[0].generator, "x,z");
        assert_eq!(report.failures[0].residual, "[[0, -2*x*z], [2*x*z, 0]]");
    }

    #[test]
    fn derivation_pair_check() {
        let r = ring(FieldSpec::Rationals, &["x", "z"]);
        // σ = id, δ₁(x) = 1, δ₁(z) = 0 is an ordinary derivation (d/dx)
        let ok = maps_from(&r, &[[["x", "0"], ["0", "x"]], [["z", "0"], ["0", "z"]]], &[["1", "0"], ["0", "0"]]);
        assert!(validate_structure_maps(&ok).is_valid());
        // σ(x) = diag(2x, x) with δ₁(z) = 1: δ₁(xz) gives 2x vs x
        let bad = maps_from(&r, &[[["2*x", "0"], ["0", "x"]], [["z", "0"], ["0", "z"]]], &[["0", "0"], ["1", "0"]]);
        let report = validate_structure_maps(&bad);
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].check, "derivation");
        assert_eq!(report.failures[0].residual, "[x, 0]");
    }

    #[test]
    fn automorphy_examples() {
        let r = ring(FieldSpec::Rationals, &["x"]);
        let e = |s: &str| EndoDescription::new(&r, vec![p(&r, s)]).unwrap();
        assert_eq!(is_automorphism(&e("2*x + 1")), Automorphy::Yes);
        assert_eq!(is_automorphism(&e("x^2")), Automorphy::No);
        assert_eq!(is_automorphism(&e("3")), Automorphy::No);

        let r2 = ring(FieldSpec::Rationals, &["x", "z"]);
        let e2 = |a: &str, b: &str| EndoDescription::new(&r2, vec![p(&r2, a), p(&r2, b)]).unwrap();
        assert_eq!(is_automorphism(&e2("x + z^2", "z")), Automorphy::Unknown);
        assert_eq!(is_automorphism(&e2("x + z", "x - z + 1")), Automorphy::Yes);
        assert_eq!(is_automorphism(&e2("x + z", "2*x + 2*z")), Automorphy::No);
        assert_eq!(is_automorphism(&e2("x", "1")), Automorphy::No);
    }

    #[test]
    fn endomorphism_composition() {
        let r = ring(FieldSpec::Rationals, &["x"]);
        let a = EndoDescription::new(&r, vec![p(&r, "2*x + 1")]).unwrap();
        let b = EndoDescription::new(&r, vec![p(&r, "x^2")]).unwrap();
        assert_eq!(a.compose(&b).images()[0].to_string(), "4*x^2 + 4*x + 1");
        assert_eq!(b.compose(&a).images()[0].to_string(), "2*x^2 + 1");
    }

    fn arb_pair() -> impl Strategy<Value = (Polynomial, Polynomial)> {
        let r = b2_maps().0;
        (arb_poly(r.clone()), arb_poly(r))
    }

    fn two_var_maps() -> StructureMaps {
        // diagonal commuting σ with a compatible σ-derivation:
        // σ(x) = diag(x, 2x), σ(z) = diag(z, z), δ(x) = [0, x], δ(z) = [0, 0]
        let r = ring(FieldSpec::Rationals, &["x", "z"]);
        maps_from(&r, &[[["x", "0"], ["0", "2*x"]], [["z", "0"], ["0", "z"]]], &[["0", "x"], ["0", "0"]])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn sigma_and_delta_product_laws((f, g) in arb_pair()) {
            let (_, m) = b2_maps();
            let (sf, sg, sfg) = (sigma_apply(&m, &f).unwrap(), sigma_apply(&m, &g).unwrap(), sigma_apply(&m, &f.mul(&g)).unwrap());
            prop_assert_eq!(&sfg, &mat_mul(&sf, &sg));
            let (df, dg, dfg) = (delta_apply(&m, &f).unwrap(), delta_apply(&m, &g).unwrap(), delta_apply(&m, &f.mul(&g)).unwrap());
            let sdg = mat_col(&sf, &dg);
            prop_assert_eq!(dfg, [sdg[0].add(&df[0].mul(&g)), sdg[1].add(&df[1].mul(&g))]);
        }

        #[test]
        fn linearity((f, g) in arb_pair(), c in -4i64..5) {
            let (r, m) = b2_maps();
            let c = r.field().from_i64(c);
            let lhs = MapEvaluator::new(&m).apply(&f.scale(&c).add(&g)).unwrap();
            let (bf, bg) = (MapEvaluator::new(&m).apply(&f).unwrap(), MapEvaluator::new(&m).apply(&g).unwrap());
            let mut rhs = bg.clone();
            rhs.add_scaled(&bf, &c);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn multivariate_agrees_with_recursion(ex in 0usize..4, ez in 0usize..4) {
            let m = two_var_maps();
            prop_assert!(validate_structure_maps(&m).is_valid());
            let r = m.ring().clone();
            let word: Vec<usize> = std::iter::repeat_n(1, ez).chain(std::iter::repeat_n(0, ex)).collect();
            let f = Polynomial::var(&r, 0).pow(ex as u32).mul(&Polynomial::var(&r, 1).pow(ez as u32));
            let (s, d) = delta_by_recursion(&m, &word);
            let b = MapEvaluator::new(&m).apply(&f).unwrap();
            prop_assert_eq!(b.sigma, s);
            prop_assert_eq!(b.delta, d);
        }

        #[test]
        fn lower_triangular_stays_lower_triangular(f in arb_poly(ring(FieldSpec::Rationals, &["x"]))) {
            let r = f.ring().clone();
            let m = maps_from(&r, &[[["2*x + 1", "0"], ["x^2", "x"]]], &[["x", "1"]]);
            let s = sigma_apply(&m, &f).unwrap();
            prop_assert!(s[0][1].is_zero());
        }
    }
}
