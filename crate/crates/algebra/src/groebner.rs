//! Buchberger's algorithm with the Gebauer–Möller criteria and the normal
//! selection strategy.

use std::borrow::Borrow;
use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{AlgebraError, Result};
use crate::poly::{divides, Exponents, Polynomial};
use crate::ring::MonomialOrder;

/// Hard caps on a Gröbner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_basis: usize,
    pub max_degree: u32,
    pub max_reductions: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits { max_basis: 2000, max_degree: 64, max_reductions: 200_000 }
    }
}

fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Full reduction of `f` against `basis`; every term of the result is
/// irreducible by the leading monomials.
pub fn reduce<B: Borrow<Polynomial>>(f: &Polynomial, basis: &[B]) -> Polynomial {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem: Vec<(Exponents, BigRational)> = Vec::new();
    while let Some((e, c)) = p.terms().first().cloned() {
        match basis.iter().map(|g| g.borrow()).find(|g| divides(g.leading_monomial().unwrap(), &e)) {
            Some(g) => {
                let lm = g.leading_monomial().unwrap();
                let q: Exponents = e.iter().zip(lm).map(|(a, b)| a - b).collect();
                let coef = &c / g.leading_coeff().unwrap();
                p = &p - &g.mul_term(&q, &coef);
            }
            None => {
                rem.push((e, c));
                p = Polynomial::from_sorted(&ring, p.terms()[1..].to_vec());
            }
        }
    }
    Polynomial::from_sorted(&ring, rem)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lcm(lf, lg);
    let mf: Exponents = l.iter().zip(lf).map(|(a, b)| a - b).collect();
    let mg: Exponents = l.iter().zip(lg).map(|(a, b)| a - b).collect();
    let a = f.mul_term(&mf, &(BigRational::one() / f.leading_coeff().unwrap()));
    let b = g.mul_term(&mg, &(BigRational::one() / g.leading_coeff().unwrap()));
    &a - &b
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponents,
}

struct Builder {
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    live: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn lm(&self, i: usize) -> &Exponents {
        self.polys[i].leading_monomial().unwrap()
    }

    fn live_polys(&self) -> Vec<&Polynomial> {
        self.polys.iter().zip(&self.live).filter(|(_, &l)| l).map(|(p, _)| p).collect()
    }

    /// Gebauer–Möller update after appending polynomial `h`.
    fn update(&mut self, h: usize) {
        let lmh = self.lm(h).clone();
        let mut cands: Vec<(usize, Exponents)> = (0..h).filter(|&i| self.live[i]).map(|i| (i, lcm(self.lm(i), &lmh))).collect();
        let mut kept: Vec<(usize, Exponents)> = Vec::new();
        while let Some((i, l)) = cands.pop() {
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2)| divides(l2, &l));
            if coprime(self.lm(i), &lmh) || !dominated {
                kept.push((i, l));
            }
        }
        kept.retain(|(i, _)| !coprime(self.lm(*i), &lmh));
        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let lih = lcm(self.lm(p.i), &lmh);
            let ljh = lcm(self.lm(p.j), &lmh);
            if !divides(&lmh, &p.lcm) || lih == p.lcm || ljh == p.lcm {
                self.pairs.push(p);
            }
        }
        for (i, l) in kept {
            self.pairs.push(Pair { i, j: h, lcm: l });
        }
        for i in 0..h {
            if self.live[i] && divides(&lmh, self.lm(i)) {
                self.live[i] = false;
            }
        }
    }

    fn add(&mut self, p: Polynomial, limits: &GroebnerLimits) -> Result<bool> {
        if p.is_constant() {
            return Ok(true);
        }
        let deg = p.total_degree().unwrap();
        if deg > limits.max_degree {
            return Err(AlgebraError::ResourceLimit(format!("basis element of degree {deg} exceeds cap {}", limits.max_degree)));
        }
        self.polys.push(p.monic());
        self.live.push(true);
        let h = self.polys.len() - 1;
        self.update(h);
        let alive = self.live.iter().filter(|&&l| l).count();
        if alive > limits.max_basis {
            return Err(AlgebraError::ResourceLimit(format!("basis size exceeds cap {}", limits.max_basis)));
        }
        Ok(false)
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let c = order.cmp(&self.pairs[k].lcm, &self.pairs[best].lcm);
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis, monic and sorted by increasing leading monomial.
/// The unit ideal yields `[1]` and the zero ideal yields `[]`.
pub fn groebner_basis(gens: &[Polynomial], limits: &GroebnerLimits) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let ring = first.ring().clone();
    for g in gens {
        if !crate::poly::same_ring(g.ring(), &ring) {
            return Err(AlgebraError::RingMismatch);
        }
    }
    let order = ring.order();
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if input.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(&ring)]);
    }
    input.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut b = Builder { order, polys: Vec::new(), live: Vec::new(), pairs: Vec::new() };
    for g in input {
        let r = reduce(&g, &b.live_polys());
        if !r.is_zero() && b.add(r, limits)? {
            return Ok(vec![Polynomial::one(&ring)]);
        }
    }
    let mut reductions = 0usize;
    while let Some(pair) = b.select() {
        reductions += 1;
        if reductions > limits.max_reductions {
            return Err(AlgebraError::ResourceLimit(format!("more than {} pair reductions", limits.max_reductions)));
        }
        let s = s_polynomial(&b.polys[pair.i], &b.polys[pair.j]);
        let r = reduce(&s, &b.live_polys());
        if !r.is_zero() && b.add(r, limits)? {
            return Ok(vec![Polynomial::one(&ring)]);
        }
    }
    Ok(interreduce(b.live_polys().into_iter().cloned().collect()))
}

/// Makes a Gröbner basis reduced: minimal leading terms, reduced tails, monic.
pub fn interreduce(mut g: Vec<Polynomial>) -> Vec<Polynomial> {
    let Some(first) = g.first() else { return g };
    let order = first.ring().order();
    g.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| divides(q.leading_monomial().unwrap(), p.leading_monomial().unwrap())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Polynomial> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        let p = &minimal[k];
        let lead = Polynomial::from_sorted(p.ring(), p.terms()[..1].to_vec());
        let tail = Polynomial::from_sorted(p.ring(), p.terms()[1..].to_vec());
        out.push((&lead + &reduce(&tail, &others)).monic());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    #[test]
    fn cyclic3() {
        let r = PolyRing::grevlex(["a", "b", "c"]);
        let gens: Vec<_> = ["a+b+c", "a*b+b*c+c*a", "a*b*c-1"].iter().map(|s| r.parse(s).unwrap()).collect();
        let gb = groebner_basis(&gens, &GroebnerLimits::default()).unwrap();
        let shown: Vec<String> = gb.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["a + b + c", "b^2 + b*c + c^2", "c^3 - 1"]);
    }

    #[test]
    fn caps_are_reported() {
        let r = PolyRing::grevlex(["x", "y"]);
        let gens = vec![r.parse("x^3 - y").unwrap(), r.parse("x*y^2 - 1").unwrap()];
        let tight = GroebnerLimits { max_basis: 2000, max_degree: 2, max_reductions: 1000 };
        assert!(matches!(groebner_basis(&gens, &tight), Err(AlgebraError::ResourceLimit(_))));
    }
}
