//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::field::FieldElement;
use crate::ring::PolyRing;

pub type Exponents = Vec<u32>;

/// Terms are sorted strictly decreasing in the ring order and carry
/// nonzero coefficients, so equal polynomials have equal term lists.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Exponents, BigRational)>,
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: BigRational) -> Self {
        Self::monomial(ring, vec![0; ring.nvars()], c)
    }

    pub fn from_int(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::constant(ring, BigRational::from_integer(c.into()))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Self::monomial(ring, e, BigRational::one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, exps: Exponents, c: BigRational) -> Self {
        assert_eq!(exps.len(), ring.nvars(), "exponent length must match the ring");
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(exps, c)] }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Exponents, BigRational)>) -> Self {
        let mut acc: HashMap<Exponents, BigRational> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), ring.nvars(), "exponent length must match the ring");
            *acc.entry(e).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Trusts that `terms` is already canonical for `ring`.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Exponents, BigRational)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Exponents, BigRational)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_monomial(&self) -> Option<&Exponents> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.terms.iter().any(|(e, _)| e[i] > 0)).collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[var] > 0)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match order.cmp(ea, eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(e, c)| (e.clone(), if negate { -c } else { c.clone() })));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Exponents, BigRational> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplication by c·x^e preserves the term order.
    pub fn mul_term(&self, exps: &[u32], c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), a * c))
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), -a)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.ring.nvars(), "variable index out of range");
        Self::from_terms(
            &self.ring,
            self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] -= 1;
                (e2, c * BigRational::from_integer(BigInt::from(e[var])))
            }),
        )
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluation at a point with coordinates in any field.
    pub fn evaluate_in(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.ring.nvars());
        let proto = point.first().map(|p| p.zero_like()).unwrap_or(FieldElement::Rational(BigRational::zero()));
        let mut acc = proto.clone();
        for (e, c) in &self.terms {
            let mut t = FieldElement::Rational(c.clone());
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Coefficients of `self` as a univariate polynomial in `var`; entry k
    /// multiplies var^k and does not involve `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Exponents, BigRational)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            buckets[k].push((e2, c.clone()));
        }
        if self.is_zero() {
            return vec![Self::zero(&self.ring)];
        }
        // Removing one variable's exponent can reorder terms under grevlex.
        buckets.into_iter().map(|b| Self::from_terms(&self.ring, b)).collect()
    }

    pub fn from_coefficients_in(ring: &Arc<PolyRing>, var: usize, coeffs: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                terms.push((e2, a.clone()));
            }
        }
        Self::from_terms(ring, terms)
    }

    /// Replaces variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Result<Self> {
        self.check_ring(value)?;
        let coeffs = self.coefficients_in(var);
        let mut acc = Self::zero(&self.ring);
        for c in coeffs.iter().rev() {
            acc = acc.mul_unchecked(value).merge(c, false);
        }
        Ok(acc)
    }

    /// Σ_k c_k · num^k · den^(D−k) where self = Σ_k c_k var^k and D = deg_var(self):
    /// the numerator of self after var := num/den.
    pub fn substitute_fraction(&self, var: usize, num: &Polynomial, den: &Polynomial) -> Result<Self> {
        self.check_ring(num)?;
        self.check_ring(den)?;
        let coeffs = self.coefficients_in(var);
        let d = coeffs.len() - 1;
        let mut num_pows = vec![Self::one(&self.ring)];
        let mut den_pows = vec![Self::one(&self.ring)];
        for k in 1..=d {
            num_pows.push(num_pows[k - 1].mul_unchecked(num));
            den_pows.push(den_pows[k - 1].mul_unchecked(den));
        }
        let mut acc = Self::zero(&self.ring);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.merge(&c.mul_unchecked(&num_pows[k]).mul_unchecked(&den_pows[d - k]), false);
        }
        Ok(acc)
    }

    /// Gcd of the numerators over lcm of the denominators, positive.
    pub fn rational_content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(num, den)
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rational_content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        self.scale(&(BigRational::one() / c))
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&(BigRational::one() / lc)),
        }
    }

    /// Re-expresses the polynomial in `target`, sending variable i to
    /// `map[i]`; fails if a variable that occurs has no image.
    pub fn map_vars(&self, target: &Arc<PolyRing>, map: &[Option<usize>]) -> Result<Self> {
        assert_eq!(map.len(), self.ring.nvars());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.nvars()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e2[j] += k,
                    None => {
                        return Err(AlgebraError::Precondition(format!(
                            "variable {} has no image in {}",
                            self.ring.vars()[i],
                            target
                        )))
                    }
                }
            }
            terms.push((e2, c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Moves the polynomial to a ring that shares variable names.
    pub fn to_ring(&self, target: &Arc<PolyRing>) -> Result<Self> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.ring.vars().iter().map(|v| target.var_index(v)).collect();
        self.map_vars(target, &map)
    }

    /// Exact quotient when `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Self> {
        assert!(same_ring(&self.ring, &divisor.ring), "ring mismatch");
        if divisor.is_zero() {
            return None;
        }
        let (lm, lc) = (&divisor.terms[0].0, &divisor.terms[0].1);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((e, c)) = rem.terms.first() {
            if !divides(lm, e) {
                return None;
            }
            let qe: Exponents = e.iter().zip(lm).map(|(a, b)| a - b).collect();
            let qc = c / lc;
            rem = rem.merge(&divisor.mul_term(&qe, &qc), true);
            quot.push((qe, qc));
        }
        Some(Self::from_sorted(&self.ring, quot))
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl<'a> std::ops::Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics on a ring mismatch; use `checked_add` to get an error instead.
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a> std::ops::Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> std::ops::Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mon: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let v = &self.ring.vars()[i];
                    if p == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{p}")
                    }
                })
                .collect();
            if mon.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mon.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mon.join("*"))?;
            }
        }
        Ok(())
    }
}
