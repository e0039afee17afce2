//! Ideals with cached reduced Gröbner bases: membership, saturation,
//! elimination, and zero-dimensional quotient analysis.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::groebner::{groebner_basis, reduce, GroebnerLimits};
use crate::poly::{divides, same_ring, Exponents, Polynomial};
use crate::ring::{MonomialOrder, PolyRing};

#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    basis: Option<Arc<Vec<Polynomial>>>,
}

impl PartialEq for Ideal {
    /// Equal cached bases; ideals without a cached basis compare unequal.
    fn eq(&self, other: &Self) -> bool {
        match (&self.basis, &other.basis) {
            (Some(a), Some(b)) => same_ring(&self.ring, &other.ring) && a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientDimension {
    Finite { dimension: usize, standard_monomials: Vec<Exponents> },
    /// Krull dimension of the quotient; `None` for the unit ideal is never produced here.
    Infinite { krull_dimension: usize },
}

const STAIRCASE_LIMIT: usize = 100_000;

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), generators, basis: None })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal { ring: ring.clone(), generators: Vec::new(), basis: Some(Arc::new(Vec::new())) }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        let one = Polynomial::one(ring);
        Ideal { ring: ring.clone(), generators: vec![one.clone()], basis: Some(Arc::new(vec![one])) }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn basis(&self) -> Option<&[Polynomial]> {
        self.basis.as_deref().map(|b| b.as_slice())
    }

    fn require_basis(&self) -> Result<&[Polynomial]> {
        self.basis().ok_or_else(|| AlgebraError::Precondition("ideal has no cached Groebner basis".into()))
    }

    /// The same ideal with its reduced Gröbner basis cached.
    pub fn with_basis(&self, limits: &GroebnerLimits) -> Result<Self> {
        if self.basis.is_some() {
            return Ok(self.clone());
        }
        let gb = groebner_basis(&self.generators, limits)?;
        Ok(Ideal { ring: self.ring.clone(), generators: self.generators.clone(), basis: Some(Arc::new(gb)) })
    }

    /// Ideal generated by a reduced basis already known.
    fn from_basis(ring: &Arc<PolyRing>, gb: Vec<Polynomial>) -> Self {
        Ideal { ring: ring.clone(), generators: gb.clone(), basis: Some(Arc::new(gb)) }
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(reduce(p, self.require_basis()?))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.require_basis()?.iter().any(|g| g.is_constant()))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.require_basis()?.is_empty())
    }

    /// Equality as ideals, comparing reduced bases.
    pub fn same_ideal(&self, other: &Ideal, limits: &GroebnerLimits) -> Result<bool> {
        let other = Ideal::new(&self.ring, other.generators.iter().map(|g| g.to_ring(&self.ring)).collect::<Result<_>>()?)?;
        Ok(self.with_basis(limits)?.basis == other.with_basis(limits)?.basis)
    }

    /// I : g^∞ via one auxiliary variable z and the relation g·z − 1.
    pub fn saturate(&self, g: &Polynomial, limits: &GroebnerLimits) -> Result<Self> {
        if g.is_zero() {
            return Err(AlgebraError::Precondition("cannot saturate by zero".into()));
        }
        if !same_ring(g.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if g.is_constant() {
            return self.with_basis(limits);
        }
        let n = self.ring.nvars();
        let z = self.ring.fresh_name("zsat");
        let mut names = vec![z];
        names.extend(self.ring.vars().iter().cloned());
        let big = PolyRing::new(names, MonomialOrder::Block { split: 1 })?;
        let lift: Vec<Option<usize>> = (0..n).map(|i| Some(i + 1)).collect();
        let mut gens: Vec<Polynomial> = self.gens_for_work().iter().map(|p| p.map_vars(&big, &lift)).collect::<Result<_>>()?;
        let gz = &g.map_vars(&big, &lift)? * &Polynomial::var(&big, 0);
        gens.push(&gz - &Polynomial::one(&big));
        let gb = groebner_basis(&gens, limits)?;
        self.restrict_from(&big, 1, &gb, limits)
    }

    /// Saturation by each generator in turn; equals saturation by the product.
    pub fn saturate_all(&self, gs: &[Polynomial], limits: &GroebnerLimits) -> Result<Self> {
        let mut cur = self.with_basis(limits)?;
        for g in gs {
            if cur.is_unit()? {
                break;
            }
            if g.is_constant() {
                continue;
            }
            cur = cur.saturate(g, limits)?;
        }
        Ok(cur)
    }

    /// I ∩ Q[remaining variables], expressed in the same ring.
    pub fn eliminate(&self, vars: &[usize], limits: &GroebnerLimits) -> Result<Self> {
        let n = self.ring.nvars();
        let elim: BTreeSet<usize> = vars.iter().copied().collect();
        if elim.iter().any(|&v| v >= n) {
            return Err(AlgebraError::Precondition("variable index out of range".into()));
        }
        let mut perm: Vec<usize> = elim.iter().copied().collect();
        perm.extend((0..n).filter(|i| !elim.contains(i)));
        let names: Vec<String> = perm.iter().map(|&i| self.ring.vars()[i].clone()).collect();
        let big = PolyRing::new(names, MonomialOrder::Block { split: elim.len() })?;
        let mut to_big = vec![None; n];
        for (new, &old) in perm.iter().enumerate() {
            to_big[old] = Some(new);
        }
        let gens: Vec<Polynomial> = self.gens_for_work().iter().map(|p| p.map_vars(&big, &to_big)).collect::<Result<_>>()?;
        let gb = groebner_basis(&gens, limits)?;
        self.restrict_from(&big, elim.len(), &gb, limits)
    }

    fn gens_for_work(&self) -> Vec<Polynomial> {
        match &self.basis {
            Some(b) => b.as_ref().clone(),
            None => self.generators.clone(),
        }
    }

    /// Keeps the elements of `gb` free of the first `k` variables of `big`
    /// and brings them back to this ring by name.
    fn restrict_from(&self, big: &Arc<PolyRing>, k: usize, gb: &[Polynomial], limits: &GroebnerLimits) -> Result<Self> {
        let back: Vec<Option<usize>> = big.vars().iter().map(|v| self.ring.var_index(v)).collect();
        let mut kept = Vec::new();
        for p in gb {
            if (0..k).any(|i| p.involves(i)) {
                continue;
            }
            kept.push(p.map_vars(&self.ring, &back)?);
        }
        let gb = groebner_basis(&kept, limits)?;
        Ok(Self::from_basis(&self.ring, gb))
    }

    /// Leading monomials of the cached basis.
    fn leading_monomials(&self) -> Result<Vec<Exponents>> {
        Ok(self.require_basis()?.iter().map(|g| g.leading_monomial().unwrap().clone()).collect())
    }

    /// Vector-space dimension of the quotient, with its standard monomials
    /// when finite, else the Krull dimension. The unit ideal has dimension 0.
    pub fn quotient_dimension(&self) -> Result<QuotientDimension> {
        let lms = self.leading_monomials()?;
        let n = self.ring.nvars();
        if lms.iter().any(|m| m.iter().all(|&e| e == 0)) {
            return Ok(QuotientDimension::Finite { dimension: 0, standard_monomials: Vec::new() });
        }
        let finite = (0..n).all(|i| lms.iter().any(|m| m[i] > 0 && m.iter().enumerate().all(|(j, &e)| j == i || e == 0)));
        if !finite {
            return Ok(QuotientDimension::Infinite { krull_dimension: self.krull_dimension()?.unwrap_or(0) });
        }
        let mut seen: BTreeSet<Exponents> = BTreeSet::new();
        let mut queue = VecDeque::from([vec![0u32; n]]);
        seen.insert(vec![0; n]);
        while let Some(m) = queue.pop_front() {
            for i in 0..n {
                let mut next = m.clone();
                next[i] += 1;
                if seen.contains(&next) || lms.iter().any(|l| divides(l, &next)) {
                    continue;
                }
                seen.insert(next.clone());
                if seen.len() > STAIRCASE_LIMIT {
                    return Err(AlgebraError::ResourceLimit("staircase too large".into()));
                }
                queue.push_back(next);
            }
        }
        let order = self.ring.order();
        let mut standard: Vec<Exponents> = seen.into_iter().collect();
        standard.sort_by(|a, b| order.cmp(a, b));
        Ok(QuotientDimension::Finite { dimension: standard.len(), standard_monomials: standard })
    }

    /// Size of a largest set of variables containing no leading monomial's
    /// support; `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Result<Option<usize>> {
        let lms = self.leading_monomials()?;
        if lms.iter().any(|m| m.iter().all(|&e| e == 0)) {
            return Ok(None);
        }
        let n = self.ring.nvars();
        let supports: Vec<Vec<usize>> = lms.iter().map(|m| (0..n).filter(|&i| m[i] > 0).collect()).collect();
        let mut best = 0;
        let mut chosen = vec![false; n];
        independent_search(0, n, &supports, &mut chosen, 0, &mut best);
        Ok(Some(best))
    }
}

fn independent_search(i: usize, n: usize, supports: &[Vec<usize>], chosen: &mut Vec<bool>, size: usize, best: &mut usize) {
    if size + (n - i) <= *best {
        return;
    }
    if i == n {
        *best = size;
        return;
    }
    chosen[i] = true;
    let ok = supports.iter().all(|s| !s.iter().all(|&v| chosen[v]));
    if ok {
        independent_search(i + 1, n, supports, chosen, size + 1, best);
    }
    chosen[i] = false;
    independent_search(i + 1, n, supports, chosen, size, best);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> GroebnerLimits {
        GroebnerLimits::default()
    }

    #[test]
    fn saturation_examples() {
        let r = PolyRing::grevlex(["x", "y"]);
        let i = Ideal::new(&r, vec![r.parse("x*y").unwrap()]).unwrap();
        let s = i.saturate(&r.parse("x").unwrap(), &lim()).unwrap();
        assert_eq!(s.basis().unwrap(), [r.parse("y").unwrap()]);
        let j = Ideal::new(&r, vec![r.parse("x").unwrap()]).unwrap();
        assert!(j.saturate(&r.parse("x").unwrap(), &lim()).unwrap().is_unit().unwrap());
    }

    #[test]
    fn krull_and_staircase() {
        let r = PolyRing::grevlex(["x", "y", "z"]);
        let i = Ideal::new(&r, vec![r.parse("x*y").unwrap(), r.parse("x*z").unwrap()]).unwrap().with_basis(&lim()).unwrap();
        assert_eq!(i.krull_dimension().unwrap(), Some(2));
        assert_eq!(i.quotient_dimension().unwrap(), QuotientDimension::Infinite { krull_dimension: 2 });
        let r1 = PolyRing::grevlex(["x"]);
        let k = Ideal::new(&r1, vec![r1.parse("x^2 + 1").unwrap()]).unwrap().with_basis(&lim()).unwrap();
        assert_eq!(k.quotient_dimension().unwrap(), QuotientDimension::Finite { dimension: 2, standard_monomials: vec![vec![0], vec![1]] });
    }
}
