//! Exact scalar fields: the rationals and prime fields GF(p).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("denominator {0} is not invertible in {1}")]
    DivisorNotInvertible(BigInt, FieldSpec),
}

/// The coefficient field of the base algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => FieldElement::Modular {
                value: reduce(n, *p),
                modulus: *p,
            },
        }
    }

    /// `num / den`, failing when `den` vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement, FieldError> {
        match self {
            FieldSpec::Rationals => {
                if den.is_zero() {
                    return Err(FieldError::DivisorNotInvertible(den.clone(), *self));
                }
                Ok(FieldElement::Rational(BigRational::new(num.clone(), den.clone())))
            }
            FieldSpec::PrimeField(_) => {
                let d = self.from_bigint(den);
                let inv = d
                    .inv()
                    .map_err(|_| FieldError::DivisorNotInvertible(den.clone(), *self))?;
                Ok(&self.from_bigint(num) * &inv)
            }
        }
    }

    /// Every element of the field, in residue order. `None` for the rationals.
    pub fn elements(&self) -> Option<Vec<FieldElement>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(
                (0..*p)
                    .map(|value| FieldElement::Modular { value, modulus: *p })
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn reduce(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar. Rationals are always reduced with positive denominator;
/// residues always lie in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Modular { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Modular { value, .. } => *value == 1,
        }
    }

    /// True for rationals below zero. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Modular { .. } => false,
        }
    }

    pub fn abs(&self) -> FieldElement {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.abs()),
            m => m.clone(),
        }
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Modular { value, modulus } => FieldElement::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// An exact square root in the field, when one exists.
    pub fn sqrt(&self) -> Option<FieldElement> {
        match self {
            FieldElement::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = exact_isqrt(r.numer())?;
                let d = exact_isqrt(r.denom())?;
                Some(FieldElement::Rational(BigRational::new(n, d)))
            }
            FieldElement::Modular { value, modulus } => (0..*modulus)
                .find(|t| mul_mod(*t, *t, *modulus) == *value)
                .map(|t| FieldElement::Modular {
                    value: t,
                    modulus: *modulus,
                }),
        }
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    let r = num_integer::Roots::sqrt(n);
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Modular { value: a, modulus }, FieldElement::Modular { value: b, .. }) => {
                FieldElement::Modular {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Modular { value: a, modulus }, FieldElement::Modular { value: b, .. }) => {
                FieldElement::Modular {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Modular { value, modulus } => FieldElement::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rationals by value, residues by representative.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a.cmp(b),
            (
                FieldElement::Modular { value: a, modulus: p },
                FieldElement::Modular { value: b, modulus: q },
            ) => (p, a).cmp(&(q, b)),
            (FieldElement::Rational(_), FieldElement::Modular { .. }) => Ordering::Less,
            (FieldElement::Modular { .. }, FieldElement::Rational(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}
