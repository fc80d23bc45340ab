//! Small exact linear algebra and univariate root finding over a field.

use crate::field::{FieldElement, FieldSpec};

/// Row-reduces `rows` in place; returns pivot columns.
fn row_reduce(rows: &mut [Vec<FieldElement>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot = rows[r].clone();
                for (v, p) in rows[i].iter_mut().zip(&pivot) {
                    *v = &*v - &(p * &f);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(mut rows: Vec<Vec<FieldElement>>) -> usize {
    row_reduce(&mut rows).len()
}

/// Solves `a · x = b` for square nonsingular `a`; `None` when singular.
pub fn solve_unique(a: &[Vec<FieldElement>], b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let n = a.len();
    let mut rows: Vec<Vec<FieldElement>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n].clone()).collect())
}

pub fn det2(m: &[[FieldElement; 2]; 2]) -> FieldElement {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

pub fn inverse2(m: &[[FieldElement; 2]; 2]) -> Option<[[FieldElement; 2]; 2]> {
    let d = det2(m).inv().ok()?;
    Some([
        [&m[1][1] * &d, -&(&m[0][1] * &d)],
        [-&(&m[1][0] * &d), &m[0][0] * &d],
    ])
}

/// Dense univariate polynomial, coefficients in ascending degree, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &FieldElement {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, t: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * t) + c)
    }

    fn rem(&self, d: &UniPoly) -> UniPoly {
        let mut r = self.coeffs.clone();
        let dl = d.lead().inv().expect("nonzero divisor");
        let dd = d.coeffs.len();
        while r.len() >= dd {
            let f = &r[r.len() - 1] * &dl;
            let shift = r.len() - dd;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&f * c);
            }
            r.pop();
            while r.last().is_some_and(FieldElement::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(self.field, r)
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead().inv().unwrap();
        UniPoly::new(self.field, a.coeffs.iter().map(|c| c * &l).collect())
    }

    /// Distinct roots of a polynomial of degree at most 2, sorted. The zero
    /// polynomial is rejected by the caller.
    pub fn roots(&self) -> Vec<FieldElement> {
        let mut out = match self.degree() {
            None => panic!("roots of the zero polynomial"),
            Some(0) => vec![],
            Some(1) => vec![-&(&self.coeffs[0] * &self.coeffs[1].inv().unwrap())],
            Some(2) => self.quadratic_roots(),
            Some(_) => match self.field.elements() {
                Some(all) => all.into_iter().filter(|t| self.eval(t).is_zero()).collect(),
                None => panic!("root finding over Q limited to degree 2"),
            },
        };
        out.sort();
        out.dedup();
        out
    }

    fn quadratic_roots(&self) -> Vec<FieldElement> {
        let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        match self.field {
            FieldSpec::PrimeField(_) => self
                .field
                .elements()
                .unwrap()
                .into_iter()
                .filter(|t| self.eval(t).is_zero())
                .collect(),
            FieldSpec::Rationals => {
                let four = self.field.from_i64(4);
                let disc = &(b * b) - &(&four * &(a * c));
                let Some(s) = disc.sqrt() else {
                    return vec![];
                };
                let inv2a = (&self.field.from_i64(2) * a).inv().unwrap();
                let nb = -b;
                vec![&(&nb + &s) * &inv2a, &(&nb - &s) * &inv2a]
            }
        }
    }
}
