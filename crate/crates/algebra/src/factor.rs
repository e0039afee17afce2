//! Univariate factorization over the rationals: square-free decomposition,
//! rational roots, and discriminant classification of quadratics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::gcd::{gcd, gcd_free_basis, split_content};
use crate::poly::Polynomial;
use crate::uni::{is_rational_square, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Linear,
    /// Degree two without rational roots.
    IrreducibleQuadratic { discriminant: BigRational },
    /// Square-free, degree at least three, no rational roots; may still split over Q.
    Unsplit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateFactor {
    pub factor: Polynomial,
    pub multiplicity: u32,
    pub kind: FactorKind,
}

/// input = leading_constant · Π factor^multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateFactorization {
    pub leading_constant: BigRational,
    pub factors: Vec<UnivariateFactor>,
    /// Set when some factor is `Unsplit`.
    pub has_unsplit: bool,
}

impl UnivariateFactorization {
    pub fn expand(&self, ring: &std::sync::Arc<crate::ring::PolyRing>) -> Polynomial {
        let mut acc = Polynomial::constant(ring, self.leading_constant.clone());
        for f in &self.factors {
            acc = &acc * &f.factor.pow(f.multiplicity);
        }
        acc
    }

    /// Number of distinct complex roots.
    pub fn distinct_root_count(&self) -> usize {
        self.factors.iter().map(|f| f.factor.total_degree().unwrap_or(0) as usize).sum()
    }
}

/// Yun's square-free decomposition: returns (a_i, i) with p = c · Π a_i^i.
pub fn square_free(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let v = n.to_u64().filter(|&v| v <= DIVISOR_SEARCH_LIMIT)?;
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= v {
        if v % k == 0 {
            out.push(BigInt::from(k));
            if k * k != v {
                out.push(BigInt::from(v / k));
            }
        }
        k += 1;
    }
    Some(out)
}

/// Distinct rational roots, found by the rational root theorem; empty when
/// the coefficients are too large to search.
pub fn rational_roots(p: &UniPoly) -> Vec<BigRational> {
    let mut roots = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let mut coeffs = p.primitive_integer();
    if coeffs[0].is_zero() {
        roots.push(BigRational::zero());
        while coeffs[0].is_zero() {
            coeffs.remove(0);
        }
    }
    if coeffs.len() < 2 {
        return roots;
    }
    let (Some(num), Some(den)) = (divisors(&coeffs[0]), divisors(coeffs.last().unwrap())) else {
        return roots;
    };
    let q = UniPoly::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    let mut cands: Vec<BigRational> = Vec::new();
    for a in &num {
        for b in &den {
            if a.gcd(b).is_one() {
                for s in [BigRational::new(a.clone(), b.clone()), BigRational::new(-a.clone(), b.clone())] {
                    if !cands.contains(&s) {
                        cands.push(s);
                    }
                }
            }
        }
    }
    for r in cands {
        if q.eval(&r).is_zero() {
            roots.push(r);
        }
    }
    roots.sort();
    roots
}

fn to_uni(p: &Polynomial, var: usize) -> UniPoly {
    let deg = p.degree_in(var) as usize;
    let mut c = vec![BigRational::zero(); deg + 1];
    for (e, a) in p.terms() {
        c[e[var] as usize] = a.clone();
    }
    UniPoly::new(c)
}

fn from_uni(u: &UniPoly, ring: &std::sync::Arc<crate::ring::PolyRing>, var: usize) -> Polynomial {
    Polynomial::from_terms(
        ring,
        u.coeffs().iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; ring.nvars()];
            e[var] = k as u32;
            (e, c.clone())
        }),
    )
}

/// Factors a polynomial in at most one variable over the rationals.
pub fn univariate_rational_factors(p: &Polynomial) -> Result<UnivariateFactorization> {
    if p.is_zero() {
        return Err(AlgebraError::Precondition("cannot factor the zero polynomial".into()));
    }
    let support = p.support();
    if support.len() > 1 {
        return Err(AlgebraError::Precondition(format!("{p} is not univariate")));
    }
    let ring = p.ring().clone();
    let Some(&var) = support.first() else {
        return Ok(UnivariateFactorization {
            leading_constant: p.constant_value().unwrap(),
            factors: Vec::new(),
            has_unsplit: false,
        });
    };
    let u = to_uni(p, var);
    let mut factors = Vec::new();
    for (part, mult) in square_free(&u) {
        let mut rest = part.monic();
        for r in rational_roots(&rest) {
            let lin = UniPoly::new(vec![-r.clone(), BigRational::one()]);
            rest = rest.div_rem(&lin).0;
            factors.push(UnivariateFactor {
                factor: from_uni(&lin, &ring, var).normalized(),
                multiplicity: mult,
                kind: FactorKind::Linear,
            });
        }
        match rest.degree().unwrap_or(0) {
            0 => {}
            1 => factors.push(UnivariateFactor {
                factor: from_uni(&rest, &ring, var).normalized(),
                multiplicity: mult,
                kind: FactorKind::Linear,
            }),
            2 => {
                let f = from_uni(&rest, &ring, var).normalized();
                let disc = to_uni(&f, var).quadratic_discriminant().unwrap();
                debug_assert!(!is_rational_square(&disc));
                factors.push(UnivariateFactor {
                    factor: f,
                    multiplicity: mult,
                    kind: FactorKind::IrreducibleQuadratic { discriminant: disc },
                });
            }
            _ => factors.push(UnivariateFactor {
                factor: from_uni(&rest, &ring, var).normalized(),
                multiplicity: mult,
                kind: FactorKind::Unsplit,
            }),
        }
    }
    factors.sort_by(|a, b| {
        (a.factor.total_degree(), a.factor.to_string()).cmp(&(b.factor.total_degree(), b.factor.to_string()))
    });
    let mut prod = Polynomial::one(&ring);
    for f in &factors {
        prod = &prod * &f.factor.pow(f.multiplicity);
    }
    let leading_constant = p.leading_coeff().unwrap() / prod.leading_coeff().unwrap();
    let has_unsplit = factors.iter().any(|f| f.kind == FactorKind::Unsplit);
    Ok(UnivariateFactorization { leading_constant, factors, has_unsplit })
}

/// Distinct normalized nonconstant factors found by content splitting in
/// each variable, square-free splitting, and univariate factorization.
/// Factors are not claimed irreducible; their product has the same zero
/// set as `p`. Sorted by (degree, display string).
pub fn coarse_factors(p: &Polynomial) -> Vec<Polynomial> {
    let mut current = split_pieces(p);
    loop {
        let items: Vec<(Polynomial, u32)> = current.iter().map(|f| (f.clone(), 1)).collect();
        let mut next: Vec<Polynomial> = Vec::new();
        for (f, _) in gcd_free_basis(&items) {
            for g in split_pieces(&f) {
                push_unique(&mut next, g);
            }
        }
        sort_factors(&mut next);
        if next == current {
            return current;
        }
        current = next;
    }
}

fn sort_factors(v: &mut [Polynomial]) {
    v.sort_by_cached_key(|a| (a.total_degree(), a.to_string()));
}

fn split_pieces(p: &Polynomial) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    let mut stack = vec![p.normalized()];
    while let Some(f) = stack.pop() {
        if f.is_zero() || f.is_constant() {
            continue;
        }
        let support = f.support();
        if support.len() == 1 {
            for u in univariate_rational_factors(&f).map(|u| u.factors).unwrap_or_default() {
                push_unique(&mut out, u.factor);
            }
            continue;
        }
        let split = support.iter().find_map(|&v| {
            let (c, prim) = split_content(&f, v);
            (!c.is_constant()).then_some((c, prim))
        });
        if let Some((c, prim)) = split {
            stack.push(c);
            stack.push(prim.normalized());
            continue;
        }
        let v = support[0];
        let g = gcd(&f, &f.partial_derivative(v));
        if !g.is_constant() {
            let rest = f.div_exact(&g).expect("gcd divides");
            stack.push(g);
            stack.push(rest.normalized());
            continue;
        }
        push_unique(&mut out, f);
    }
    sort_factors(&mut out);
    out
}

fn push_unique(out: &mut Vec<Polynomial>, f: Polynomial) {
    let f = f.normalized();
    if !out.contains(&f) {
        out.push(f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    #[test]
    fn yun() {
        // (x - 1)^2 (x + 2)^3 x
        let p = UniPoly::from_ints(&[1, -1]).mul(&UniPoly::from_ints(&[-1, 1])).mul(&UniPoly::from_ints(&[2, 1]).pow(3)).mul(&UniPoly::x());
        let parts = square_free(&p);
        let degs: Vec<(usize, u32)> = parts.iter().map(|(a, i)| (a.degree().unwrap(), *i)).collect();
        assert_eq!(degs, [(1, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn repeated_irreducible() {
        let r = PolyRing::grevlex(["t"]);
        let p = r.parse("3*(t^2 + 1)^2*(2*t - 1)").unwrap();
        let f = univariate_rational_factors(&p).unwrap();
        assert_eq!(f.expand(&r), p);
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.factors[1].multiplicity, 2);
        assert_eq!(f.distinct_root_count(), 3);
    }

    #[test]
    fn coarse_factor_splitting() {
        let r = PolyRing::grevlex(["x", "y"]);
        let p = r.parse("-2*x*(x*y + x - 2*y)*(y^2 - y + 1)^2*(x - 1)").unwrap();
        let shown: Vec<String> = coarse_factors(&p).iter().map(|f| f.to_string()).collect();
        assert_eq!(shown, ["x", "x - 1", "x*y + x - 2*y", "y^2 - y + 1"]);
        let sq = r.parse("(x + y)^2*(x - y)").unwrap();
        let shown: Vec<String> = coarse_factors(&sq).iter().map(|f| f.to_string()).collect();
        assert_eq!(shown, ["x + y", "x - y"]);
        assert!(coarse_factors(&r.parse("7").unwrap()).is_empty());
    }

    #[test]
    fn cubic_without_roots_is_flagged() {
        let r = PolyRing::grevlex(["x"]);
        let f = univariate_rational_factors(&r.parse("x^3 - 2").unwrap()).unwrap();
        assert!(f.has_unsplit);
    }
}
