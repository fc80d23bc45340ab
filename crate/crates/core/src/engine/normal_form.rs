//! Left normal form arithmetic by rewriting.
//!
//! A product is reduced by moving base letters left of y's with the mixing
//! rows and resolving y₂y₁ with the quadratic relation. Every step lowers
//! (base/y inversions, y₂y₁ inversions, length) lexicographically, so it
//! terminates; the cached words W(a) = NF(y₂y₁ᵃ) carry the second measure.

use crate::engine::element::ExtElement;
use crate::maps::MapEvaluator;
use crate::poly::Polynomial;
use crate::spec::DoubleExtSpec;

/// Rewriting engine over arbitrary data. Normal forms depend on reduction
/// order unless the data satisfy the six relations, which is why only
/// [`crate::engine::DoubleExtension`] exposes it publicly.
pub struct NormalFormEngine<'a> {
    spec: &'a DoubleExtSpec,
    eval: MapEvaluator<'a>,
    w: Vec<ExtElement>,
    building: bool,
}

impl<'a> NormalFormEngine<'a> {
    pub(crate) fn new(spec: &'a DoubleExtSpec) -> Self {
        NormalFormEngine {
            spec,
            eval: MapEvaluator::new(spec.maps()),
            w: vec![ExtElement::y2(spec.ring())],
            building: false,
        }
    }

    pub fn spec(&self) -> &'a DoubleExtSpec {
        self.spec
    }

    /// NF(y₂ y₁ᵃ).
    fn w(&mut self, a: usize) -> ExtElement {
        if self.w.len() <= a {
            assert!(!self.building, "W({a}) requested while extending the cache");
            self.building = true;
            while self.w.len() <= a {
                let n = self.w.len() - 1;
                let next = self.next_w(n);
                self.w.push(next);
            }
            self.building = false;
        }
        self.w[a].clone()
    }

    // W(n+1) = W(n)·y₁ = p₁₂ y₁W(n) + p₁₁ y₁^{n+2} + τ₁ y₁^{n+1} + τ₂ W(n) + τ₀ y₁ⁿ
    // since W(n) = y₂y₁ⁿ and y₂y₁ⁿ⁺¹ = (y₂y₁)y₁ⁿ.
    fn next_w(&mut self, n: usize) -> ExtElement {
        let ring = self.spec.ring().clone();
        let [t0, t1, t2] = self.spec.tau().clone();
        let wn = self.w[n].clone();
        let n = n as u32;
        let head = self.left_y1(&wn).scale(self.spec.p12());
        let p11 = Polynomial::constant(&ring, self.spec.p11().clone());
        let mut out = head.add(&wn.left_mul(&t2));
        out.add_term(n + 2, 0, &p11);
        out.add_term(n + 1, 0, &t1);
        out.add_term(n, 0, &t0);
        out
    }

    fn left_y(&mut self, row: usize, e: &ExtElement) -> ExtElement {
        let ring = e.ring().clone();
        let mut out = ExtElement::zero(&ring);
        for (&(i, j), c) in e.terms() {
            let b = self.eval.apply(c).expect("coefficient from the base ring");
            out.add_term(i + 1, j, &b.sigma[row][0]);
            out.add_term(i, j, &b.delta[row]);
            let s = &b.sigma[row][1];
            if !s.is_zero() {
                let w = self.w(i as usize);
                out = out.add(&w.shift_y2(j).left_mul(s));
            }
        }
        out
    }

    /// y₁ · e.
    pub fn left_y1(&mut self, e: &ExtElement) -> ExtElement {
        self.left_y(0, e)
    }

    /// y₂ · e.
    pub fn left_y2(&mut self, e: &ExtElement) -> ExtElement {
        self.left_y(1, e)
    }

    /// u · v with u = Σ a_ij y₁ⁱy₂ʲ expanded as Σ a_ij · y₁ⁱ(y₂ʲ v).
    pub fn mul(&mut self, u: &ExtElement, v: &ExtElement) -> ExtElement {
        let ring = v.ring().clone();
        let mut out = ExtElement::zero(&ring);
        let max_j = u.terms().map(|((_, j), _)| *j).max();
        let Some(max_j) = max_j else {
            return out;
        };
        let mut y2_pows = vec![v.clone()];
        for _ in 0..max_j {
            let next = self.left_y2(y2_pows.last().unwrap());
            y2_pows.push(next);
        }
        for (j, base) in y2_pows.iter().enumerate() {
            let mut cur = base.clone();
            let mut at = 0;
            let row: Vec<(u32, Polynomial)> = u
                .terms()
                .filter(|((_, jj), _)| *jj as usize == j)
                .map(|((i, _), c)| (*i, c.clone()))
                .collect();
            for (i, c) in row {
                while at < i {
                    cur = self.left_y1(&cur);
                    at += 1;
                }
                out = out.add(&cur.left_mul(&c));
            }
        }
        out
    }
}
