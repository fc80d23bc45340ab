use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::examples::{example_b2, jordan, qplane_over_kx, scalar_base};
use crate::field::FieldElement;
use crate::maps::StructureMaps;
use crate::parse::parse_poly;
use crate::poly::tests::arb_poly;
use crate::poly::Monomial;

// Independent oracle: plain word rewriting using only the generator images.
// Words are letter strings; the leftmost reducible pair is rewritten until
// every word reads x…x y₁…y₁ y₂…y₂.

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum L {
    X(usize),
    Y1,
    Y2,
}

type Words = BTreeMap<Vec<L>, FieldElement>;

fn poly_words(p: &Polynomial) -> Vec<(Vec<L>, FieldElement)> {
    p.terms()
        .map(|(m, c)| {
            let mut w = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                w.extend(std::iter::repeat_n(L::X(i), e as usize));
            }
            (w, c.clone())
        })
        .collect()
}

fn push(ws: &mut Words, w: Vec<L>, c: FieldElement) {
    if c.is_zero() {
        return;
    }
    let e = ws.entry(w.clone()).or_insert_with(|| c.field().zero());
    *e = &*e + &c;
    if e.is_zero() {
        ws.remove(&w);
    }
}

fn oracle_reduce(spec: &DoubleExtSpec, start: Words) -> ExtElement {
    let ring = spec.ring().clone();
    let maps = spec.maps();
    let mut todo: Vec<(Vec<L>, FieldElement)> = start.into_iter().collect();
    let mut done = Words::new();
    let mut steps = 0usize;
    while let Some((w, c)) = todo.pop() {
        steps += 1;
        assert!(steps < 2_000_000, "oracle step bound");
        let pos = w.windows(2).position(|p| {
            matches!((p[0], p[1]), (L::Y1 | L::Y2, L::X(_)) | (L::Y2, L::Y1))
        });
        let Some(k) = pos else {
            push(&mut done, w, c);
            continue;
        };
        let (pre, post) = (&w[..k], &w[k + 2..]);
        let mut emit = |mid: Vec<L>, p: &Polynomial| {
            for (pw, pc) in poly_words(p) {
                let mut nw = pre.to_vec();
                nw.extend(pw);
                nw.extend(mid.iter().copied());
                nw.extend_from_slice(post);
                todo.push((nw, &c * &pc));
            }
        };
        match (w[k], w[k + 1]) {
            (y, L::X(m)) => {
                let row = if y == L::Y1 { 0 } else { 1 };
                let s = maps.sigma_image(m);
                let d = maps.delta_image(m);
                emit(vec![L::Y1], &s[row][0]);
                emit(vec![L::Y2], &s[row][1]);
                emit(vec![], &d[row]);
            }
            _ => {
                let [t0, t1, t2] = spec.tau();
                let k = |c: &FieldElement| Polynomial::constant(&ring, c.clone());
                emit(vec![L::Y1, L::Y2], &k(spec.p12()));
                emit(vec![L::Y1, L::Y1], &k(spec.p11()));
                emit(vec![L::Y1], t1);
                emit(vec![L::Y2], t2);
                emit(vec![], t0);
            }
        }
    }
    let mut out = ExtElement::zero(&ring);
    for (w, c) in done {
        let mut exps = vec![0u32; ring.nvars()];
        let (mut i, mut j) = (0, 0);
        for l in w {
            match l {
                L::X(m) => exps[m] += 1,
                L::Y1 => i += 1,
                L::Y2 => j += 1,
            }
        }
        let coef = Polynomial::monomial(&ring, Monomial::from_exponents(exps), c);
        out.add_term(i, j, &coef);
    }
    out
}

fn element_words(e: &ExtElement) -> Vec<(Vec<L>, FieldElement)> {
    let mut out = Vec::new();
    for (&(i, j), c) in e.terms() {
        for (mut w, pc) in poly_words(c) {
            w.extend(std::iter::repeat_n(L::Y1, i as usize));
            w.extend(std::iter::repeat_n(L::Y2, j as usize));
            out.push((w, pc));
        }
    }
    out
}

fn oracle_mul(spec: &DoubleExtSpec, u: &ExtElement, v: &ExtElement) -> ExtElement {
    let mut ws = Words::new();
    for (a, ca) in element_words(u) {
        for (b, cb) in element_words(v) {
            let mut w = a.clone();
            w.extend(b);
            push(&mut ws, w, &ca * &cb);
        }
    }
    oracle_reduce(spec, ws)
}

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn gf2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

fn b2(a: i64, b: i64, c: i64, f: FieldSpec) -> DoubleExtSpec {
    example_b2(&f.from_i64(a), &f.from_i64(b), &f.from_i64(c), f).unwrap()
}

fn with_delta2(spec: &DoubleExtSpec, d2: &str) -> DoubleExtSpec {
    let ring = spec.ring();
    let mut delta = spec.maps().delta_images().to_vec();
    delta[0][1] = parse_poly(d2, ring).unwrap();
    let maps = StructureMaps::new(ring, spec.maps().sigma_images().to_vec(), delta).unwrap();
    DoubleExtSpec::new(maps, spec.p12().clone(), spec.p11().clone(), spec.tau().clone()).unwrap()
}

fn el(ext: &DoubleExtension, word: &str) -> ExtElement {
    ext.reduce_word(word).unwrap()
}

#[test]
fn b2_relations_reproduced() {
    let ext = DoubleExtension::new(b2(1, 2, 3, q())).unwrap();
    assert_eq!(el(&ext, "y1 x").to_string(), "1/2*x*y2 + 3*x^2");
    assert_eq!(el(&ext, "y2 x").to_string(), "2*x*y1 - 6*x^2");
    assert_eq!(el(&ext, "y2 y1").to_string(), "-y1*y2 + x^2");
    assert_eq!(el(&ext, "y1*x^2").to_string(), "x^2*y1");
    assert_eq!(el(&ext, "y2*x^2").to_string(), "x^2*y2");
}

#[test]
fn scalar_base_products() {
    let qv = q().from_i64(3);
    let qp = DoubleExtension::new(scalar_base(q(), &qv, &q().zero(), &[q().zero(), q().zero(), q().zero()]).unwrap()).unwrap();
    assert_eq!(el(&qp, "y2^2*y1").to_string(), "9*y1*y2^2");
    assert_eq!(el(&qp, "y2 y1").to_string(), "3*y1*y2");
    let j = DoubleExtension::new(jordan(q())).unwrap();
    assert_eq!(el(&j, "y2*y1^2").to_string(), "2*y1^3 + y1^2*y2");
}

#[test]
fn literal_words_are_normal() {
    let ext = DoubleExtension::new(b2(1, 2, 3, q())).unwrap();
    let e = el(&ext, "x y1 y2");
    assert_eq!(e, ExtElement::basis(1, 1, Polynomial::var(ext.ring(), 0)));
    for (k, i, j) in [(0, 0, 0), (2, 1, 0), (1, 2, 3), (3, 0, 2)] {
        let e = el(&ext, &format!("x^{k} y1^{i} y2^{j}"));
        let expect = ExtElement::basis(i, j, Polynomial::var(ext.ring(), 0).pow(k));
        assert_eq!(e, expect);
    }
}

#[test]
fn word_association_irrelevant() {
    let ext = DoubleExtension::new(b2(1, 2, 3, q())).unwrap();
    assert_eq!(el(&ext, "(y2 y1) x"), el(&ext, "y2 (y1 x)"));
}

#[test]
fn word_errors() {
    let ext = DoubleExtension::new(b2(1, 2, 3, q())).unwrap();
    assert!(matches!(ext.reduce_word("y3"), Err(ParseError::UnknownGenerator { .. })));
    assert!(matches!(ext.reduce_word("y1 +"), Err(ParseError::Syntax { .. })));
}

#[test]
fn b2_validates() {
    for s in [b2(1, 2, 3, q()), b2(1, 1, 1, gf2()), b2(-5, 7, 2, q())] {
        let r = validate_spec(&s);
        assert!(r.is_valid(), "{r:?}");
        assert!(relation_residuals(&s).iter().all(|r| r.residual.is_zero()));
        assert!(resolve_overlap(&s, &Polynomial::var(s.ring(), 0)).is_zero());
    }
    let qp = qplane_over_kx(&q().from_i64(5));
    assert!(validate_spec(&qp).is_valid());
    assert!(resolve_overlap(&qp, &Polynomial::var(qp.ring(), 0)).is_zero());
}

#[test]
fn perturbed_b2_fails_late_relations() {
    let s = with_delta2(&b2(1, 2, 3, q()), "-6*x^2 + x");
    let r = validate_relations(&s);
    assert!(!r.is_valid());
    assert!(r
        .failures
        .iter()
        .any(|f| ["R3.4", "R3.5", "R3.6"].contains(&f.check.as_str())));
    assert!(matches!(DoubleExtension::new(s.clone()), Err(EngineError::UnvalidatedSpec(_))));
    assert!(!resolve_overlap(&s, &Polynomial::var(s.ring(), 0)).is_zero());
}

/// The overlap at a equals −Σ residual_R(a) · (basis word of R).
fn overlap_from_residuals(spec: &DoubleExtSpec, a: &Polynomial) -> ExtElement {
    let mut out = ExtElement::zero(spec.ring());
    for r in RelationId::ALL {
        let (i, j) = r.basis_word();
        out.add_term(i, j, &relation_residual_at(spec, r, a).neg());
    }
    out
}

#[test]
fn overlap_matches_residual_combination() {
    let s = with_delta2(&b2(1, 2, 3, q()), "-6*x^2 + x");
    let x = Polynomial::var(s.ring(), 0);
    assert_eq!(resolve_overlap(&s, &x), overlap_from_residuals(&s, &x));
}

#[test]
fn empty_base_is_vacuous() {
    let f = q();
    let s = scalar_base(f, &f.zero(), &f.zero(), &[f.one(), f.from_i64(2), f.one()]).unwrap();
    assert!(validate_spec(&s).is_valid());
}

#[test]
fn multivariate_structure_failure_short_circuits() {
    let ring = PolyRing::new(q(), vec!["x".into(), "z".into()]);
    let p = |s: &str| parse_poly(s, &ring).unwrap();
    let maps = StructureMaps::new(
        &ring,
        vec![[[p("0"), p("x")], [p("x"), p("0")]], [[p("z"), p("0")], [p("0"), p("-z")]]],
        vec![[p("0"), p("0")], [p("0"), p("0")]],
    )
    .unwrap();
    let s = DoubleExtSpec::new(maps, q().one(), q().zero(), [p("0"), p("0"), p("0")]).unwrap();
    let r = validate_spec(&s);
    assert!(!r.is_valid());
    assert!(r.failures.iter().all(|f| f.check == "hom" || f.check == "derivation"));
}

// Random elements: coefficients of degree ≤ 2, y-exponents ≤ `max`.
fn arb_element(ring: Arc<PolyRing>, max: u32) -> impl Strategy<Value = ExtElement> {
    let r2 = ring.clone();
    prop::collection::vec(((0..=max, 0..=max), arb_poly(ring)), 0..3)
        .prop_map(move |ts| ExtElement::from_terms(&r2, ts))
}

fn corpus() -> Vec<DoubleExtSpec> {
    let f7 = FieldSpec::prime(7).unwrap();
    vec![
        b2(1, 2, 3, q()),
        b2(1, 1, 1, gf2()),
        b2(2, 3, -1, q()),
        qplane_over_kx(&q().from_i64(-2)),
        jordan(q()),
        jordan(f7),
        scalar_base(q(), &q().from_i64(2), &q().one(), &[q().one(), q().from_i64(-1), q().from_i64(3)]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engine_agrees_with_word_oracle(
        (idx, u, v) in (0usize..7).prop_flat_map(|i| {
            let r = corpus()[i].ring().clone();
            (Just(i), arb_element(r.clone(), 2), arb_element(r, 2))
        })
    ) {
        let spec = corpus()[idx].clone();
        let ext = DoubleExtension::new(spec.clone()).unwrap();
        prop_assert_eq!(ext.mul(&u, &v), oracle_mul(&spec, &u, &v));
    }

    #[test]
    fn associativity_in_b2(
        (u, v, w) in {
            let r = b2(1, 2, 3, q()).ring().clone();
            (arb_element(r.clone(), 2), arb_element(r.clone(), 2), arb_element(r, 2))
        }
    ) {
        let ext = DoubleExtension::new(b2(1, 2, 3, q())).unwrap();
        let mut e = ext.engine();
        let uv = e.mul(&u, &v);
        let vw = e.mul(&v, &w);
        prop_assert_eq!(e.mul(&uv, &w), e.mul(&u, &vw));
    }

    #[test]
    fn unit_and_bilinearity(
        (u, v, w) in {
            let r = b2(1, 1, 1, gf2()).ring().clone();
            (arb_element(r.clone(), 2), arb_element(r.clone(), 2), arb_element(r, 2))
        }
    ) {
        let ext = DoubleExtension::new(b2(1, 1, 1, gf2())).unwrap();
        let one = ExtElement::one(ext.ring());
        prop_assert_eq!(ext.mul(&one, &u), u.clone());
        prop_assert_eq!(ext.mul(&u, &one), u.clone());
        prop_assert_eq!(ext.mul(&u, &v.add(&w)), ext.mul(&u, &v).add(&ext.mul(&u, &w)));
        prop_assert_eq!(ext.mul(&u.add(&v), &w), ext.mul(&u, &w).add(&ext.mul(&v, &w)));
    }

    #[test]
    fn filtration_degree_bound(
        (u, v) in {
            let r = b2(1, 2, 3, q()).ring().clone();
            (arb_element(r.clone(), 3), arb_element(r, 3))
        }
    ) {
        let ext = DoubleExtension::new(b2(1, 2, 3, q())).unwrap();
        let p = ext.mul(&u, &v);
        if let (Some(du), Some(dv)) = (u.degree(), v.degree()) {
            prop_assert!(p.degree().is_none_or(|d| d <= du + dv));
        }
    }

    #[test]
    fn x_squared_is_central(
        (a, b, c) in (-9i64..9, (1i64..9).prop_flat_map(|b| prop_oneof![Just(b), Just(-b)]), -9i64..9),
        seed in 0u64..1000,
    ) {
        let spec = b2(a, b, c, q());
        let ext = DoubleExtension::new(spec.clone()).unwrap();
        let x2 = ExtElement::from_base(Polynomial::var(spec.ring(), 0).pow(2));
        let ring = spec.ring();
        let s = |k: u64| q().from_i64((seed.wrapping_mul(k) % 7) as i64 - 3);
        let u = ExtElement::from_terms(ring, [
            ((1, 0), Polynomial::constant(ring, s(3))),
            ((0, 2), Polynomial::var(ring, 0).scale(&s(5))),
            ((2, 1), Polynomial::one(ring)),
        ]);
        prop_assert_eq!(ext.mul(&x2, &u), ext.mul(&u, &x2));
    }

    #[test]
    fn overlap_cross_oracle_on_perturbations(
        idx in 0usize..3,
        d in -3i64..4,
        t in -3i64..4,
    ) {
        let base = [b2(1, 2, 3, q()), b2(2, -1, 1, q()), qplane_over_kx(&q().from_i64(2))][idx].clone();
        let ring = base.ring().clone();
        let x = Polynomial::var(&ring, 0);
        let mut delta = base.maps().delta_images().to_vec();
        delta[0][0] = delta[0][0].add(&x.scale(&q().from_i64(d)));
        let maps = StructureMaps::new(&ring, base.maps().sigma_images().to_vec(), delta).unwrap();
        let mut tau = base.tau().clone();
        tau[1] = tau[1].add(&x.pow(2).scale(&q().from_i64(t)));
        let s = DoubleExtSpec::new(maps, base.p12().clone(), base.p11().clone(), tau).unwrap();
        let overlap = resolve_overlap(&s, &x);
        prop_assert_eq!(validate_relations(&s).is_valid(), overlap.is_zero());
        prop_assert_eq!(overlap, overlap_from_residuals(&s, &x));
    }
}
