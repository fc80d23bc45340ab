//! Fixtures shared by the criterion benches.

use dore::examples::{example_b2, qplane_over_kx};
use dore::{DoubleExtension, ExtElement, FieldSpec, Monomial, Polynomial};

pub fn b2(a: i64, b: i64, c: i64, field: FieldSpec) -> DoubleExtension {
    let spec = example_b2(&field.from_i64(a), &field.from_i64(b), &field.from_i64(c), field)
        .expect("b is nonzero");
    DoubleExtension::new(spec).expect("B2 validates")
}

pub fn qplane(q: i64) -> DoubleExtension {
    DoubleExtension::new(qplane_over_kx(&FieldSpec::Rationals.from_i64(q))).expect("valid")
}

/// Σ x^k y₁^i y₂^j over i + j ≤ `deg`, k ≤ 2, with small distinct coefficients.
pub fn dense_element(ext: &DoubleExtension, deg: u32) -> ExtElement {
    let ring = ext.ring();
    let f = ring.field();
    let mut terms = Vec::new();
    let mut c = 1;
    for i in 0..=deg {
        for j in 0..=deg - i {
            let coef = (0..=2)
                .map(|k| {
                    c += 1;
                    Polynomial::monomial(ring, Monomial::from_exponents(vec![k]), f.from_i64(c))
                })
                .fold(Polynomial::zero(ring), |acc, p| acc.add(&p));
            terms.push(((i, j), coef));
        }
    }
    ExtElement::from_terms(ring, terms)
}
