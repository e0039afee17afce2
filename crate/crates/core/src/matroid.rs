//! Matroids of rank d on [n] given by their bases.
//!
//! Bases are stored twice: as a sorted mask list (colex order) for scans,
//! and as a bitset over colex ranks for O(d) membership.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use strata_algebra::{minor, CoefficientField, FieldElement, RingElement};

use crate::error::{CoreError, Result};
use crate::subset::{self, OrderTag, Subset, SubsetEnumeration};

/// Pairs of bases checked exhaustively up to this many d-subsets.
pub const EXHAUSTIVE_EXCHANGE_LIMIT: u64 = 1000;
const SAMPLED_EXCHANGE_PAIRS: usize = 20_000;

#[derive(Clone, Debug)]
pub struct Matroid {
    d: usize,
    n: usize,
    bases: Vec<Subset>,
    bitset: Vec<u64>,
    enumeration: SubsetEnumeration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    pub set: Subset,
    pub rank: usize,
}

impl Flat {
    pub fn size(&self) -> usize {
        subset::size(self.set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub loops: Vec<usize>,
    pub coloops: Vec<usize>,
    pub parallel_classes: Vec<Vec<usize>>,
    pub is_simple: bool,
    pub is_connected: bool,
    pub components: Vec<Vec<usize>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl Matroid {
    /// Validated constructor: nonempty, all d-subsets of [n], exchange axiom.
    pub fn from_bases(d: usize, n: usize, bases: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if n > subset::MAX_GROUND || d > n {
            return Err(CoreError::InvalidMatroid(format!("need d <= n <= 64, got d={d}, n={n}")));
        }
        let mut list: Vec<Subset> = bases.into_iter().collect();
        list.sort_unstable();
        list.dedup();
        if list.is_empty() {
            return Err(CoreError::InvalidMatroid("no bases".into()));
        }
        if let Some(b) = list.iter().find(|&&b| subset::size(b) != d || b & !subset::full(n) != 0) {
            return Err(CoreError::InvalidMatroid(format!("{} is not a {d}-subset of [{n}]", subset::label(*b))));
        }
        let m = Self::from_sorted(d, n, list);
        m.check_exchange()?;
        Ok(m)
    }

    pub fn from_nonbases(d: usize, n: usize, nonbases: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if n > subset::MAX_GROUND || d > n {
            return Err(CoreError::InvalidMatroid(format!("need d <= n <= 64, got d={d}, n={n}")));
        }
        let nb: HashSet<Subset> = nonbases.into_iter().collect();
        if let Some(b) = nb.iter().find(|&&b| subset::size(b) != d || b & !subset::full(n) != 0) {
            return Err(CoreError::InvalidMatroid(format!("{} is not a {d}-subset of [{n}]", subset::label(*b))));
        }
        Self::from_bases(d, n, subset::k_subsets(n, d).filter(|s| !nb.contains(s)))
    }

    /// Paving matroid whose nonbases are the d-subsets of the listed
    /// hyperplanes (each of size at least d).
    pub fn paving_from_hyperplanes(d: usize, n: usize, hyperplanes: &[Subset]) -> Result<Self> {
        Self::from_nonbases(
            d,
            n,
            subset::k_subsets(n, d).filter(|&s| hyperplanes.iter().any(|&h| s & !h == 0)),
        )
    }

    pub fn uniform(d: usize, n: usize) -> Self {
        assert!(d <= n && n <= subset::MAX_GROUND);
        Self::from_sorted(d, n, subset::k_subsets(n, d).collect())
    }

    /// Trusted constructor for outputs of operations that preserve the axioms.
    pub(crate) fn from_sorted(d: usize, n: usize, bases: Vec<Subset>) -> Self {
        let enumeration = SubsetEnumeration::new(n, d, OrderTag::Colex);
        let mut bitset = vec![0u64; enumeration.len().div_ceil(64)];
        for &b in &bases {
            let r = enumeration.rank(b);
            bitset[r / 64] |= 1 << (r % 64);
        }
        Matroid { d, n, bases, bitset, enumeration }
    }

    pub(crate) fn from_unsorted(d: usize, n: usize, mut bases: Vec<Subset>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        Self::from_sorted(d, n, bases)
    }

    pub fn rank_d(&self) -> usize {
        self.d
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        subset::full(self.n)
    }

    /// Bases in colex order.
    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn nonbases(&self) -> Vec<Subset> {
        subset::k_subsets(self.n, self.d).filter(|&s| !self.is_basis(s)).collect()
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        if subset::size(s) != self.d || s & !self.ground() != 0 {
            return false;
        }
        let r = self.enumeration.rank(s);
        self.bitset[r / 64] >> (r % 64) & 1 == 1
    }

    /// Exhaustive over basis pairs when C(n,d) is small, seeded sampling otherwise.
    pub fn check_exchange(&self) -> Result<()> {
        let check = |b1: Subset, b2: Subset| -> Result<()> {
            for x in subset::iter(b1 & !b2) {
                let without = b1 & !(1 << x);
                if !subset::iter(b2 & !b1).any(|y| self.is_basis(without | 1 << y)) {
                    return Err(CoreError::InvalidMatroid(format!(
                        "exchange fails for {} and {} at {}",
                        subset::label(b1),
                        subset::label(b2),
                        x + 1
                    )));
                }
            }
            Ok(())
        };
        if subset::binomial(self.n, self.d) <= EXHAUSTIVE_EXCHANGE_LIMIT {
            for &b1 in &self.bases {
                for &b2 in &self.bases {
                    check(b1, b2)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.bases.len() as u64);
            let m = self.bases.len();
            for _ in 0..SAMPLED_EXCHANGE_PAIRS.min(m * m) {
                check(self.bases[rng.gen_range(0..m)], self.bases[rng.gen_range(0..m)])?;
            }
        }
        Ok(())
    }

    /// ρ(S) = max |B ∩ S| over bases. For matroids a basis admits no
    /// improving single exchange only if it attains the maximum, so local
    /// search from any basis is exact.
    pub fn rank(&self, s: Subset) -> usize {
        let s = s & self.ground();
        let mut b = self.bases[0];
        'improve: loop {
            for x in subset::iter(s & !b) {
                for y in subset::iter(b & !s) {
                    let c = b & !(1 << y) | 1 << x;
                    if self.is_basis(c) {
                        b = c;
                        continue 'improve;
                    }
                }
            }
            return subset::size(b & s);
        }
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        s & !self.ground() == 0 && self.rank(s) == subset::size(s)
    }

    pub fn closure(&self, s: Subset) -> Flat {
        let r = self.rank(s);
        let mut set = s;
        for e in 0..self.n {
            if !subset::contains(s, e) && self.rank(s | 1 << e) == r {
                set |= 1 << e;
            }
        }
        Flat { set, rank: r }
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s).set == s
    }

    /// A flat is cyclic when its restriction has no coloops.
    pub fn is_cyclic(&self, f: &Flat) -> bool {
        subset::iter(f.set).all(|e| self.rank(f.set & !(1 << e)) == f.rank)
    }

    /// Rank d−1 flats, sorted by mask.
    pub fn hyperplanes(&self) -> Vec<Flat> {
        if self.d == 0 {
            return Vec::new();
        }
        let mut seen = BTreeSet::new();
        for s in subset::k_subsets(self.n, self.d - 1) {
            if !self.is_independent(s) {
                continue;
            }
            // s independent of size d−1: s+e has rank d iff it is a basis
            let h = (0..self.n).filter(|&e| !self.is_basis(s | 1 << e)).fold(0, |acc, e| acc | 1 << e) | s;
            seen.insert(h);
        }
        seen.into_iter().map(|set| Flat { set, rank: self.d - 1 }).collect()
    }

    /// The lattice of flats, sorted by (rank, mask).
    pub fn flats(&self) -> Vec<Flat> {
        let bottom = self.closure(0);
        let mut seen: HashSet<Subset> = HashSet::from([bottom.set]);
        let mut out = vec![bottom];
        let mut queue = VecDeque::from([bottom]);
        while let Some(f) = queue.pop_front() {
            for e in 0..self.n {
                if subset::contains(f.set, e) {
                    continue;
                }
                let g = self.closure(f.set | 1 << e);
                if seen.insert(g.set) {
                    out.push(g);
                    queue.push_back(g);
                }
            }
        }
        out.sort_by_key(|f| (f.rank, f.set));
        out
    }

    pub fn cyclic_flats(&self) -> Vec<Flat> {
        self.flats().into_iter().filter(|f| self.is_cyclic(f)).collect()
    }

    /// Z¹(Q): cyclic hyperplanes.
    pub fn cyclic_hyperplanes(&self) -> Vec<Flat> {
        self.hyperplanes().into_iter().filter(|f| self.is_cyclic(f)).collect()
    }

    /// Z¹(Q, a): hyperplanes through a in which a is not a coloop.
    pub fn z1_through(&self, a: usize) -> Vec<Flat> {
        self.hyperplanes()
            .into_iter()
            .filter(|h| subset::contains(h.set, a) && self.rank(h.set & !(1 << a)) == h.rank)
            .collect()
    }

    pub fn loops(&self) -> Subset {
        let union = self.bases.iter().fold(0, |acc, &b| acc | b);
        self.ground() & !union
    }

    pub fn coloops(&self) -> Subset {
        self.bases.iter().fold(self.ground(), |acc, &b| acc & b)
    }

    /// Circuit-size definition: every (d−1)-subset independent.
    pub fn is_paving_by_circuits(&self) -> bool {
        self.d == 0 || subset::k_subsets(self.n, self.d - 1).all(|s| self.is_independent(s))
    }

    /// Cyclic-flat criterion, valid for loopless matroids of rank at least 2;
    /// a loop is a circuit of size 1 and rules out paving there.
    pub fn is_paving_by_cyclic_flats(&self) -> bool {
        if self.d < 2 {
            return true;
        }
        if self.loops() != 0 {
            return false;
        }
        self.cyclic_flats().iter().all(|f| f.rank == 0 || f.rank + 1 >= self.d)
    }

    pub fn is_paving(&self) -> bool {
        let by_circuits = self.is_paving_by_circuits();
        debug_assert_eq!(by_circuits, self.is_paving_by_cyclic_flats());
        by_circuits
    }

    /// Hyperplanes with at least d elements: lines in rank 3, planes in rank 4.
    pub fn big_hyperplanes(&self) -> Vec<Flat> {
        self.hyperplanes().into_iter().filter(|h| h.size() >= self.d).collect()
    }

    pub fn lines(&self) -> Result<Vec<Flat>> {
        if self.d != 3 {
            return Err(CoreError::Precondition(format!("lines need rank 3, got {}", self.d)));
        }
        Ok(self.big_hyperplanes())
    }

    pub fn planes(&self) -> Result<Vec<Flat>> {
        if self.d != 4 {
            return Err(CoreError::Precondition(format!("planes need rank 4, got {}", self.d)));
        }
        Ok(self.big_hyperplanes())
    }

    pub fn parallel_classes(&self) -> Vec<Vec<usize>> {
        let loops = self.loops();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut assigned = loops;
        for a in 0..self.n {
            if subset::contains(assigned, a) {
                continue;
            }
            let class: Vec<usize> = (a..self.n)
                .filter(|&b| b == a || (!subset::contains(assigned, b) && self.rank(1 << a | 1 << b) == 1))
                .collect();
            for &b in &class {
                assigned |= 1 << b;
            }
            if class.len() > 1 {
                classes.push(class);
            }
        }
        classes
    }

    /// Connected components as masks, ordered by least element.
    ///
    /// Two elements lie in a common component iff they are linked by a chain
    /// of fundamental circuits with respect to any one basis.
    pub fn component_masks(&self) -> Vec<Subset> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let b = self.bases[0];
        for e in 0..self.n {
            if subset::contains(b, e) {
                continue;
            }
            for x in subset::iter(b) {
                if self.is_basis(b & !(1 << x) | 1 << e) {
                    let (ra, rb) = (find(&mut parent, e), find(&mut parent, x));
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut by_root: HashMap<usize, Subset> = HashMap::new();
        for e in 0..self.n {
            let r = find(&mut parent, e);
            *by_root.entry(r).or_default() |= 1 << e;
        }
        let mut comps: Vec<Subset> = by_root.into_values().collect();
        comps.sort_by_key(|c| c.trailing_zeros());
        debug_assert!(comps.iter().all(|&c| self.is_separator(c)));
        comps
    }

    /// r(S) + r(E∖S) = d.
    pub fn is_separator(&self, s: Subset) -> bool {
        self.rank(s) + self.rank(self.ground() & !s) == self.d
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_masks().len() == 1
    }

    pub fn is_simple(&self) -> bool {
        self.loops() == 0 && self.parallel_classes().is_empty()
    }

    pub fn structure_flags(&self) -> StructureFlags {
        let components: Vec<Vec<usize>> = self.component_masks().into_iter().map(subset::to_one_based).collect();
        let parallel_classes: Vec<Vec<usize>> =
            self.parallel_classes().into_iter().map(|c| c.into_iter().map(|e| e + 1).collect()).collect();
        let loops = subset::to_one_based(self.loops());
        StructureFlags {
            is_simple: loops.is_empty() && parallel_classes.is_empty(),
            is_connected: components.len() <= 1,
            loops,
            coloops: subset::to_one_based(self.coloops()),
            parallel_classes,
            components,
        }
    }

    pub fn dual(&self) -> Matroid {
        let g = self.ground();
        Matroid::from_unsorted(self.n - self.d, self.n, self.bases.iter().map(|&b| g & !b).collect())
    }

    /// Deletion of η, relabeled order-preservingly onto [n−|η|]. The second
    /// component maps new (0-based) elements to old ones. The rank drops
    /// when E∖η does not span.
    pub fn delete(&self, eta: Subset) -> Result<(Matroid, Vec<usize>)> {
        if eta & !self.ground() != 0 {
            return Err(CoreError::Precondition(format!("{} is not inside the ground set", subset::label(eta))));
        }
        let keep = self.ground() & !eta;
        let old_of_new = subset::elements(keep);
        let r = self.rank(keep);
        let mut new_of_old = vec![usize::MAX; self.n];
        for (i, &o) in old_of_new.iter().enumerate() {
            new_of_old[o] = i;
        }
        let bases: Vec<Subset> = self
            .bases
            .iter()
            .map(|&b| b & keep)
            .filter(|&b| subset::size(b) == r)
            .map(|b| subset::iter(b).fold(0, |acc, o| acc | 1 << new_of_old[o]))
            .collect();
        Ok((Matroid::from_unsorted(r, old_of_new.len(), bases), old_of_new))
    }

    pub fn restrict(&self, keep: Subset) -> Result<(Matroid, Vec<usize>)> {
        self.delete(self.ground() & !keep)
    }

    /// Q/η = (Q^∨∖η)^∨.
    pub fn contract(&self, eta: Subset) -> Result<(Matroid, Vec<usize>)> {
        let (m, map) = self.dual().delete(eta)?;
        Ok((m.dual(), map))
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        if self.n + other.n > subset::MAX_GROUND {
            return Err(CoreError::Precondition("direct sum exceeds 64 elements".into()));
        }
        let bases = self.bases.iter().flat_map(|&a| other.bases.iter().map(move |&b| a | b << self.n)).collect();
        Ok(Matroid::from_unsorted(self.d + other.d, self.n + other.n, bases))
    }

    /// Relabel by `perm`: old element i becomes perm[i].
    pub fn permute(&self, perm: &[usize]) -> Result<Matroid> {
        if perm.len() != self.n || perm.iter().collect::<HashSet<_>>().len() != self.n || perm.iter().any(|&p| p >= self.n) {
            return Err(CoreError::Precondition("not a permutation of the ground set".into()));
        }
        let bases = self.bases.iter().map(|&b| apply_perm(b, perm)).collect();
        Ok(Matroid::from_unsorted(self.d, self.n, bases))
    }

    /// Minimal dependent sets of size at most `max_size` (default d+1),
    /// ordered by size then colex.
    pub fn circuits(&self, max_size: Option<usize>) -> Vec<Subset> {
        let cap = max_size.unwrap_or(self.d + 1).min(self.d + 1).min(self.n);
        let mut out = Vec::new();
        for k in 1..=cap {
            for s in subset::k_subsets(self.n, k) {
                if self.rank(s) == k - 1 && subset::iter(s).all(|e| self.is_independent(s & !(1 << e))) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Principal extension Q +_η a: a new element n placed freely on the flat η.
    pub fn principal_extension(&self, eta: Subset) -> Result<Matroid> {
        if self.n + 1 > subset::MAX_GROUND || eta & !self.ground() != 0 {
            return Err(CoreError::Precondition("principal extension out of range".into()));
        }
        let a = 1u64 << self.n;
        let mut bases: Vec<Subset> = self.bases.clone();
        for &l in &self.bases {
            for b in subset::iter(l & eta) {
                bases.push(l & !(1 << b) | a);
            }
        }
        Ok(Matroid::from_unsorted(self.d, self.n + 1, bases))
    }

    /// Principal coextension: the dual of a principal extension of the dual.
    pub fn principal_coextension(&self, eta: Subset) -> Result<Matroid> {
        Ok(self.dual().principal_extension(eta)?.dual())
    }

    /// A ground-set permutation `p` with B(other) = p(B(self)), if one exists.
    pub fn is_isomorphic(&self, other: &Matroid) -> Option<Vec<usize>> {
        if self.d != other.d || self.n != other.n || self.bases.len() != other.bases.len() {
            return None;
        }
        let sig_a = self.element_signatures();
        let sig_b = other.element_signatures();
        let mut sorted_a = sig_a.clone();
        let mut sorted_b = sig_b.clone();
        sorted_a.sort();
        sorted_b.sort();
        if sorted_a != sorted_b {
            return None;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        if self.extend_isomorphism(other, &sig_a, &sig_b, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn element_signatures(&self) -> Vec<(usize, Vec<usize>)> {
        let hs = self.hyperplanes();
        (0..self.n)
            .map(|e| {
                let degree = self.bases.iter().filter(|&&b| subset::contains(b, e)).count();
                let mut sizes: Vec<usize> = hs.iter().filter(|h| subset::contains(h.set, e)).map(|h| h.size()).collect();
                sizes.sort_unstable();
                (degree, sizes)
            })
            .collect()
    }

    fn extend_isomorphism(
        &self,
        other: &Matroid,
        sig_a: &[(usize, Vec<usize>)],
        sig_b: &[(usize, Vec<usize>)],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == self.n {
            return true;
        }
        for t in 0..self.n {
            if used[t] || sig_a[k] != sig_b[t] {
                continue;
            }
            map[k] = t;
            // every d-subset of {0..k} containing k must agree
            let consistent = self.d == 0
                || subset::k_subsets(k, self.d - 1).all(|s| {
                    let src = s | 1 << k;
                    let dst = subset::iter(src).fold(0, |acc, e| acc | 1 << map[e]);
                    self.is_basis(src) == other.is_basis(dst)
                });
            if consistent {
                used[t] = true;
                if self.extend_isomorphism(other, sig_a, sig_b, k + 1, map, used) {
                    return true;
                }
                used[t] = false;
            }
        }
        map[k] = usize::MAX;
        false
    }
}

pub fn apply_perm(s: Subset, perm: &[usize]) -> Subset {
    subset::iter(s).fold(0, |acc, e| acc | 1 << perm[e])
}

/// The matroid of the columns of a d×n matrix; rows must be independent.
pub fn linear_matroid(rows: &[Vec<FieldElement>]) -> Result<Matroid> {
    let d = rows.len();
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.iter().any(|r| r.len() != n) {
        return Err(CoreError::Precondition("matrix rows have different lengths".into()));
    }
    if d > n || n > subset::MAX_GROUND {
        return Err(CoreError::RankDeficient);
    }
    if d == 0 {
        return Ok(Matroid::uniform(0, n));
    }
    let row_idx: Vec<usize> = (0..d).collect();
    let bases: Vec<Subset> = subset::k_subsets(n, d)
        .filter(|&s| !RingElement::is_zero(&minor(rows, &row_idx, &subset::elements(s))))
        .collect();
    if bases.is_empty() {
        return Err(CoreError::RankDeficient);
    }
    Ok(Matroid::from_sorted(d, n, bases))
}

/// Integer matrix over a field, for tests and fixtures.
pub fn int_matrix(field: &CoefficientField, rows: &[&[i64]]) -> Vec<Vec<FieldElement>> {
    rows.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect()
}

/// Matroid JSON: 1-indexed element lists; exactly one of `bases`,
/// `nonbases` or `hyperplanes` (paving shorthand) is given.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct MatroidJson {
    pub d: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonbases: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplanes: Option<Vec<Vec<usize>>>,
}

impl MatroidJson {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidJson {
            d: m.d,
            n: m.n,
            nonbases: Some(m.nonbases().into_iter().map(subset::to_one_based).collect()),
            ..Default::default()
        }
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        let conv = |lists: &[Vec<usize>]| -> Result<Vec<Subset>> {
            lists
                .iter()
                .map(|l| subset::from_one_based(l, self.n).ok_or_else(|| CoreError::Input(format!("element out of range in {l:?}"))))
                .collect()
        };
        match (&self.bases, &self.nonbases, &self.hyperplanes) {
            (Some(b), None, None) => Matroid::from_bases(self.d, self.n, conv(b)?),
            (None, Some(nb), None) => Matroid::from_nonbases(self.d, self.n, conv(nb)?),
            (None, None, Some(h)) => Matroid::paving_from_hyperplanes(self.d, self.n, &conv(h)?),
            _ => Err(CoreError::Input("give exactly one of bases, nonbases, hyperplanes".into())),
        }
    }
}

impl Matroid {
    pub fn to_json(&self) -> MatroidJson {
        MatroidJson::from_matroid(self)
    }

    /// Parses digit strings like "1268" (single-digit elements) or
    /// comma-separated lists like "1,9,12".
    pub fn parse_sets(items: &[&str], n: usize) -> Result<Vec<Subset>> {
        items
            .iter()
            .map(|s| {
                let elems: Vec<usize> = if s.contains(',') {
                    s.split(',').map(|t| t.trim().parse::<usize>()).collect::<std::result::Result<_, _>>().map_err(|e| CoreError::Input(e.to_string()))?
                } else {
                    s.chars().map(|c| c.to_digit(10).map(|v| v as usize).ok_or_else(|| CoreError::Input(format!("bad set {s}")))).collect::<Result<_>>()?
                };
                subset::from_one_based(&elems, n).ok_or_else(|| CoreError::Input(format!("element out of range in {s}")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_basics() {
        let u = Matroid::uniform(3, 9);
        assert_eq!(u.rank(0b1111), 3);
        assert_eq!(u.rank(0), 0);
        assert_eq!(u.closure(0b11).set, 0b11);
        assert!(u.is_paving());
        assert!(u.cyclic_hyperplanes().is_empty());
        assert!(u.lines().unwrap().is_empty());
        assert!(u.planes().is_err());
    }

    #[test]
    fn rank_matches_basis_scan() {
        let m = Matroid::from_nonbases(3, 7, Matroid::parse_sets(&["124", "235", "346", "457", "156", "267", "137"], 7).unwrap()).unwrap();
        for s in subset::subsets_of(m.ground()) {
            let scan = m.bases().iter().map(|&b| subset::size(b & s)).max().unwrap();
            assert_eq!(m.rank(s), scan, "{}", subset::label(s));
        }
    }

    #[test]
    fn exchange_rejects_non_matroid() {
        // {12, 34} fails exchange in rank 2
        assert!(Matroid::from_bases(2, 4, [0b0011, 0b1100]).is_err());
        assert!(Matroid::from_bases(2, 4, []).is_err());
        assert!(Matroid::from_bases(2, 4, [0b0111]).is_err());
    }

    #[test]
    fn minors_of_uniform() {
        let u24 = Matroid::uniform(2, 4);
        assert_eq!(u24.delete(0b1000).unwrap().0, Matroid::uniform(2, 3));
        assert_eq!(u24.contract(0b1000).unwrap().0, Matroid::uniform(1, 3));
        assert_eq!(Matroid::uniform(2, 3).dual(), Matroid::uniform(1, 3));
        let (m, map) = u24.delete(0b0101).unwrap();
        assert_eq!(map, [1, 3]);
        assert_eq!(m, Matroid::uniform(2, 2));
    }

    #[test]
    fn direct_sums() {
        let u11 = Matroid::uniform(1, 1);
        let s = u11.direct_sum(&u11).unwrap();
        assert_eq!(s, Matroid::uniform(2, 2));
        assert!(!s.is_connected());
        assert_eq!(s.structure_flags().components, [vec![1], vec![2]]);
        let u12 = Matroid::uniform(1, 2);
        let t = u12.direct_sum(&u12).unwrap();
        assert_eq!(t.bases().iter().map(|&b| subset::label(b)).collect::<BTreeSet<_>>(), BTreeSet::from(["13".into(), "14".into(), "23".into(), "24".into()]));
        let empty = Matroid::uniform(0, 0);
        assert_eq!(t.direct_sum(&empty).unwrap(), t);
    }

    #[test]
    fn parallel_and_loops() {
        let q = CoefficientField::Rationals;
        let m = linear_matroid(&int_matrix(&q, &[&[1, 0, 1, 1, 0], &[0, 1, 1, 1, 0]])).unwrap();
        let f = m.structure_flags();
        assert_eq!(f.loops, [5]);
        assert_eq!(f.parallel_classes, [vec![3, 4]]);
        assert!(!f.is_simple);
        assert!(linear_matroid(&int_matrix(&q, &[&[1, 2], &[2, 4]])).is_err());
        let aug = linear_matroid(&int_matrix(&q, &[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]])).unwrap();
        assert_eq!(aug, Matroid::uniform(3, 4));
    }

    #[test]
    fn circuits_of_u23() {
        assert_eq!(Matroid::uniform(2, 3).circuits(None), [0b111]);
    }

    #[test]
    fn isomorphism_search() {
        let u = Matroid::uniform(2, 4);
        assert_eq!(u.is_isomorphic(&u), Some(vec![0, 1, 2, 3]));
        let lines = Matroid::parse_sets(&["123", "345"], 6).unwrap();
        let m = Matroid::paving_from_hyperplanes(3, 6, &lines).unwrap();
        let perm = [5, 3, 1, 0, 2, 4];
        let p = m.permute(&perm).unwrap();
        let found = m.is_isomorphic(&p).unwrap();
        assert_eq!(m.permute(&found).unwrap(), p);
        assert!(m.is_isomorphic(&Matroid::uniform(3, 6)).is_none());
    }

    #[test]
    fn principal_extension_free() {
        let u = Matroid::uniform(3, 5);
        assert_eq!(u.principal_extension(u.ground()).unwrap(), Matroid::uniform(3, 6));
        // on a single element a: a becomes parallel to it
        let pe = u.principal_extension(0b1).unwrap();
        assert_eq!(pe.parallel_classes(), [vec![0, 5]]);
    }

    #[test]
    fn json_round_trip() {
        let lines = Matroid::parse_sets(&["1,2,6,8", "1,9,12"], 12).unwrap();
        let m = Matroid::paving_from_hyperplanes(3, 12, &lines).unwrap();
        let j = serde_json::to_string(&m.to_json()).unwrap();
        let back: MatroidJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_matroid().unwrap(), m);
        let bad = MatroidJson { d: 2, n: 3, ..Default::default() };
        assert!(bad.to_matroid().is_err());
    }
}
