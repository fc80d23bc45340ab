//! Word-rewriting oracle for normal forms. It knows nothing about the
//! engine: letters are rewritten one adjacent pair at a time, leftmost
//! first, until every word reads x…x y₁…y₁ y₂…y₂.

use std::collections::BTreeMap;

use dore::{DoubleExtSpec, ExtElement, FieldElement, Monomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum L {
    X(usize),
    Y1,
    Y2,
}

type Words = BTreeMap<Vec<L>, FieldElement>;

const STEP_BOUND: usize = 5_000_000;

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
    match ws.get_mut(&w) {
        Some(e) => {
            *e = &*e + &c;
            if e.is_zero() {
                ws.remove(&w);
            }
        }
        None => {
            ws.insert(w, c);
        }
    }
}

fn reduce(spec: &DoubleExtSpec, start: Words) -> ExtElement {
    let ring = spec.ring().clone();
    let maps = spec.maps();
    let mut todo: Vec<(Vec<L>, FieldElement)> = start.into_iter().collect();
    let mut done = Words::new();
    let mut steps = 0usize;
    while let Some((w, c)) = todo.pop() {
        steps += 1;
        assert!(steps < STEP_BOUND, "oracle step bound exceeded");
        let pos = w
            .windows(2)
            .position(|p| matches!((p[0], p[1]), (L::Y1 | L::Y2, L::X(_)) | (L::Y2, L::Y1)));
        let Some(k) = pos else {
            push(&mut done, w, c);
            continue;
        };
        let (pre, post) = (&w[..k], &w[k + 2..]);
        let mut emit = |mid: &[L], p: &Polynomial| {
            for (pw, pc) in poly_words(p) {
                let mut nw = pre.to_vec();
                nw.extend(pw);
                nw.extend_from_slice(mid);
                nw.extend_from_slice(post);
                todo.push((nw, &c * &pc));
            }
        };
        match (w[k], w[k + 1]) {
            (y, L::X(m)) => {
                let row = usize::from(y == L::Y2);
                let s = maps.sigma_image(m);
                let d = maps.delta_image(m);
                emit(&[L::Y1], &s[row][0]);
                emit(&[L::Y2], &s[row][1]);
                emit(&[], &d[row]);
            }
            _ => {
                let [t0, t1, t2] = spec.tau();
                let k = |c: &FieldElement| Polynomial::constant(&ring, c.clone());
                emit(&[L::Y1, L::Y2], &k(spec.p12()));
                emit(&[L::Y1, L::Y1], &k(spec.p11()));
                emit(&[L::Y1], t1);
                emit(&[L::Y2], t2);
                emit(&[], t0);
            }
        }
    }
    let terms = done.into_iter().map(|(w, c)| {
        let mut exps = vec![0u32; ring.nvars()];
        let (mut i, mut j) = (0, 0);
        for l in w {
            match l {
                L::X(m) => exps[m] += 1,
                L::Y1 => i += 1,
                L::Y2 => j += 1,
            }
        }
        ((i, j), Polynomial::monomial(&ring, Monomial::from_exponents(exps), c))
    });
    ExtElement::from_terms(&ring, terms)
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

/// The normal form of u·v by rewriting the concatenated words.
pub fn oracle_mul(spec: &DoubleExtSpec, u: &ExtElement, v: &ExtElement) -> ExtElement {
    let mut ws = Words::new();
    for (a, ca) in element_words(u) {
        for (b, cb) in element_words(v) {
            let mut w = a.clone();
            w.extend(b);
            push(&mut ws, w, &ca * &cb);
        }
    }
    reduce(spec, ws)
}
