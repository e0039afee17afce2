//! Coefficient fields: the rationals, prime fields, and simple algebraic
//! extensions of the rationals.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::uni::{is_rational_square, UniPoly};

/// How irreducibility of a minimal polynomial was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// Degree 1, or degree 2 with a non-square discriminant.
    Verified,
    /// Degree at least 3 without rational roots; accepted on trust.
    Assumed,
}

/// Q[α]/(m(α)) for a monic minimal polynomial m.
#[derive(Debug, PartialEq, Eq)]
pub struct SimpleExtension {
    name: String,
    minpoly: UniPoly,
    irreducibility: Irreducibility,
}

impl SimpleExtension {
    pub fn new(name: impl Into<String>, minpoly: UniPoly) -> Result<Self> {
        let deg = minpoly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| AlgebraError::InvalidField("minimal polynomial must be nonconstant".into()))?;
        if !minpoly.leading().is_one() {
            return Err(AlgebraError::InvalidField("minimal polynomial must be monic".into()));
        }
        let irreducibility = match deg {
            1 => Irreducibility::Verified,
            2 => {
                let disc = minpoly.quadratic_discriminant().unwrap();
                if is_rational_square(&disc) {
                    return Err(AlgebraError::InvalidField(format!(
                        "quadratic with square discriminant {disc} is reducible"
                    )));
                }
                Irreducibility::Verified
            }
            _ => {
                if !crate::factor::rational_roots(&minpoly).is_empty() {
                    return Err(AlgebraError::InvalidField("minimal polynomial has a rational root".into()));
                }
                Irreducibility::Assumed
            }
        };
        Ok(SimpleExtension { name: name.into(), minpoly, irreducibility })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    fn reduce(&self, p: &UniPoly) -> UniPoly {
        p.div_rem(&self.minpoly).1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientField {
    Rationals,
    PrimeField(u64),
    Extension(Arc<SimpleExtension>),
}

impl CoefficientField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(AlgebraError::InvalidField(format!("{p} is not prime")));
        }
        Ok(CoefficientField::PrimeField(p))
    }

    pub fn extension(name: impl Into<String>, minpoly: UniPoly) -> Result<Self> {
        Ok(CoefficientField::Extension(Arc::new(SimpleExtension::new(name, minpoly)?)))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        self.from_rational(&BigRational::from_integer(v.into())).expect("integers embed in every field")
    }

    /// Image of a rational; fails in characteristic p when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        match self {
            CoefficientField::Rationals => Ok(FieldElement::Rational(q.clone())),
            CoefficientField::PrimeField(p) => FieldElement::rational_mod(q, *p),
            CoefficientField::Extension(ext) => Ok(FieldElement::Algebraic {
                coeffs: UniPoly::constant(q.clone()),
                ext: ext.clone(),
            }),
        }
    }

    /// The adjoined root α of an extension.
    pub fn generator(&self) -> Option<FieldElement> {
        match self {
            CoefficientField::Extension(ext) => Some(FieldElement::Algebraic {
                coeffs: ext.reduce(&UniPoly::x()),
                ext: ext.clone(),
            }),
            _ => None,
        }
    }

    pub fn contains(&self, e: &FieldElement) -> bool {
        match (self, e) {
            (_, FieldElement::Rational(_)) => !matches!(self, CoefficientField::PrimeField(_)),
            (CoefficientField::PrimeField(p), FieldElement::Modular { modulus, .. }) => p == modulus,
            (CoefficientField::Extension(a), FieldElement::Algebraic { ext, .. }) => a == ext,
            _ => false,
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "QQ"),
            CoefficientField::PrimeField(p) => write!(f, "GF({p})"),
            CoefficientField::Extension(ext) => write!(f, "QQ[{}]/({})", ext.name, uni_to_string(&ext.minpoly, &ext.name)),
        }
    }
}

/// A field element that carries enough context to do arithmetic alone.
///
/// Rationals coerce into either other kind; mixing two different prime
/// fields or two different extensions panics.
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
    /// Coefficients of a polynomial in α of degree below the extension degree.
    Algebraic { coeffs: UniPoly, ext: Arc<SimpleExtension> },
}

impl FieldElement {
    pub fn rational(n: i64, d: i64) -> Self {
        FieldElement::Rational(BigRational::new(n.into(), d.into()))
    }

    fn rational_mod(q: &BigRational, p: u64) -> Result<Self> {
        let pb = BigInt::from(p);
        let num = mod_big(q.numer(), &pb);
        let den = mod_big(q.denom(), &pb);
        if den == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(FieldElement::Modular { value: mul_mod(num, inv_mod(den, p), p), modulus: p })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
            FieldElement::Algebraic { coeffs, .. } => coeffs.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Modular { value, .. } => *value == 1,
            FieldElement::Algebraic { coeffs, .. } => coeffs.degree() == Some(0) && coeffs.leading().is_one(),
        }
    }

    pub fn zero_like(&self) -> Self {
        match self {
            FieldElement::Rational(_) => FieldElement::Rational(BigRational::zero()),
            FieldElement::Modular { modulus, .. } => FieldElement::Modular { value: 0, modulus: *modulus },
            FieldElement::Algebraic { ext, .. } => FieldElement::Algebraic { coeffs: UniPoly::zero(), ext: ext.clone() },
        }
    }

    pub fn one_like(&self) -> Self {
        match self {
            FieldElement::Rational(_) => FieldElement::Rational(BigRational::one()),
            FieldElement::Modular { modulus, .. } => FieldElement::Modular { value: 1 % modulus, modulus: *modulus },
            FieldElement::Algebraic { ext, .. } => FieldElement::Algebraic {
                coeffs: UniPoly::constant(BigRational::one()),
                ext: ext.clone(),
            },
        }
    }

    /// The rational value, when the element is (or reduces to) a rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q.clone()),
            FieldElement::Algebraic { coeffs, .. } if coeffs.degree().unwrap_or(0) == 0 => Some(coeffs.coeff(0)),
            _ => None,
        }
    }

    /// Brings two operands into a common field.
    fn unify(&self, other: &Self) -> (Self, Self) {
        use FieldElement::*;
        match (self, other) {
            (Rational(a), Modular { modulus, .. }) => {
                (Self::rational_mod(a, *modulus).expect("denominator divisible by modulus"), other.clone())
            }
            (Modular { modulus, .. }, Rational(b)) => {
                (self.clone(), Self::rational_mod(b, *modulus).expect("denominator divisible by modulus"))
            }
            (Rational(a), Algebraic { ext, .. }) => {
                (Algebraic { coeffs: UniPoly::constant(a.clone()), ext: ext.clone() }, other.clone())
            }
            (Algebraic { ext, .. }, Rational(b)) => {
                (self.clone(), Algebraic { coeffs: UniPoly::constant(b.clone()), ext: ext.clone() })
            }
            (Modular { modulus: p, .. }, Modular { modulus: q, .. }) => {
                assert_eq!(p, q, "mixed prime fields");
                (self.clone(), other.clone())
            }
            (Algebraic { ext: a, .. }, Algebraic { ext: b, .. }) => {
                assert!(Arc::ptr_eq(a, b) || a == b, "mixed extension fields");
                (self.clone(), other.clone())
            }
            (Rational(_), Rational(_)) => (self.clone(), other.clone()),
            _ => panic!("incompatible coefficient fields"),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        use FieldElement::*;
        match self.unify(other) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (Modular { value: a, modulus }, Modular { value: b, .. }) => {
                Modular { value: ((a as u128 + b as u128) % modulus as u128) as u64, modulus }
            }
            (Algebraic { coeffs: a, ext }, Algebraic { coeffs: b, .. }) => Algebraic { coeffs: a.add(&b), ext },
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Self {
        use FieldElement::*;
        match self {
            Rational(a) => Rational(-a),
            Modular { value, modulus } => Modular { value: (modulus - value) % modulus, modulus: *modulus },
            Algebraic { coeffs, ext } => Algebraic { coeffs: coeffs.neg(), ext: ext.clone() },
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        use FieldElement::*;
        match self.unify(other) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Modular { value: a, modulus }, Modular { value: b, .. }) => Modular { value: mul_mod(a, b, modulus), modulus },
            (Algebraic { coeffs: a, ext }, Algebraic { coeffs: b, .. }) => {
                let coeffs = ext.reduce(&a.mul(&b));
                Algebraic { coeffs, ext }
            }
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        use FieldElement::*;
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Rational(a) => Rational(BigRational::one() / a),
            Modular { value, modulus } => Modular { value: inv_mod(*value, *modulus), modulus: *modulus },
            Algebraic { coeffs, ext } => {
                let (g, s, _) = coeffs.ext_gcd(&ext.minpoly);
                debug_assert!(g.degree() == Some(0));
                Algebraic { coeffs: ext.reduce(&s), ext: ext.clone() }
            }
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Modular { value, .. } => write!(f, "{value}"),
            FieldElement::Algebraic { coeffs, ext } => write!(f, "{}", uni_to_string(coeffs, &ext.name)),
        }
    }
}

fn uni_to_string(p: &UniPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &BigRational::zero();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mon = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mon.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mon);
        } else {
            out.push_str(&format!("{mag}*{mon}"));
        }
    }
    out
}

fn mod_big(a: &BigInt, p: &BigInt) -> u64 {
    let r = ((a % p) + p) % p;
    r.to_u64().unwrap()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}
