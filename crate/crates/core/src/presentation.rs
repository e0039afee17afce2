//! Coordinate-ring presentations U⁻¹B/I of matroid strata and realization
//! spaces, built from matrices of variables.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use strata_algebra::{coarse_factors, gcd_free_basis, minor, FieldElement, GroebnerLimits, Ideal, MonomialOrder, PolyRing, Polynomial};

use crate::error::{CoreError, Result};
use crate::matroid::Matroid;
use crate::subset::{self, OrderTag, Subset, SubsetEnumeration};

/// A d×n matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicMatrix {
    ring: Arc<PolyRing>,
    rows: Vec<Vec<Polynomial>>,
}

impl SymbolicMatrix {
    pub fn new(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let width = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != width) {
            return Err(CoreError::Precondition("matrix must be rectangular".into()));
        }
        if rows.iter().flatten().any(|p| p.ring() != ring) {
            return Err(CoreError::Algebra(strata_algebra::AlgebraError::RingMismatch));
        }
        Ok(SymbolicMatrix { ring: ring.clone(), rows })
    }

    /// Parses entries in the given ring.
    pub fn parse<R: AsRef<[S]>, S: AsRef<str>>(ring: &Arc<PolyRing>, rows: &[R]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|s| ring.parse(s.as_ref()).map_err(CoreError::from)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, parsed)
    }

    /// Parses entries into the ring of all variables they mention, in order
    /// of first appearance.
    pub fn parse_auto<R: AsRef<[S]>, S: AsRef<str>>(rows: &[R]) -> Result<Self> {
        let all: Vec<&str> = rows.iter().flat_map(|r| r.as_ref().iter().map(|s| s.as_ref())).collect();
        let vars = strata_algebra::parse::collect_variables(all.iter().copied())?;
        let ring = PolyRing::new(vars, MonomialOrder::GrevLex)?;
        Self::parse(&ring, rows)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    /// Minor on the columns of `cols` taken in increasing order.
    pub fn minor(&self, cols: Subset) -> Polynomial {
        self.minor_seq(&subset::elements(cols))
    }

    /// Minor on columns in the given order; zero on repeats or wrong length.
    pub fn minor_seq(&self, cols: &[usize]) -> Polynomial {
        let d = self.nrows();
        let mut sorted = cols.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if cols.len() != d || sorted.len() != d {
            return Polynomial::zero(&self.ring);
        }
        let rows: Vec<usize> = (0..d).collect();
        minor(&self.rows, &rows, cols)
    }

    /// Entrywise evaluation at a point over some field.
    pub fn evaluate(&self, point: &[FieldElement]) -> Vec<Vec<FieldElement>> {
        self.rows.iter().map(|r| r.iter().map(|p| p.evaluate_in(point)).collect()).collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationKind {
    Stratum,
    Realization,
    /// Built directly from a given matrix.
    Matrix,
}

/// Where a presentation came from. Element lists are 1-based in the
/// original labels; `permutation[i]` is the new 0-based position of
/// original element i.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: PresentationKind,
    pub d: usize,
    pub n: usize,
    pub reference: Vec<usize>,
    /// Pivot row (1-based) pinned to 1 in each free column; realization only.
    pub pivots: Vec<usize>,
    pub permutation: Vec<usize>,
    /// Nonbasis (1-based, permuted labels) whose minor gave each ideal generator.
    pub ideal_sources: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub ring: Arc<PolyRing>,
    pub ideal: Vec<Polynomial>,
    pub semigroup: Vec<Polynomial>,
    pub matrix: SymbolicMatrix,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
    pub semigroup: Vec<String>,
    pub provenance: Provenance,
    pub matrix: Vec<Vec<String>>,
}

/// Normalizes and factors coarsely, then refines the whole set to pairwise
/// coprime factors; constants are dropped.
pub fn normalize_semigroup<'a>(gens: impl IntoIterator<Item = &'a Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for g in gens {
        push_factors(&mut out, g);
    }
    loop {
        let items: Vec<(Polynomial, u32)> = out.iter().map(|f| (f.clone(), 1)).collect();
        let mut next = Vec::new();
        for (f, _) in gcd_free_basis(&items) {
            push_factors(&mut next, &f);
        }
        sort_polys(&mut next);
        sort_polys(&mut out);
        if next == out {
            return out;
        }
        out = next;
    }
}

fn push_factors(out: &mut Vec<Polynomial>, g: &Polynomial) {
    for f in coarse_factors(g) {
        if !out.contains(&f) {
            out.push(f);
        }
    }
}

pub(crate) fn sort_polys(v: &mut [Polynomial]) {
    v.sort_by_cached_key(|a| (a.total_degree(), a.to_string()));
}

impl Presentation {
    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn ideal(&self) -> Result<Ideal> {
        Ok(Ideal::new(&self.ring, self.ideal.clone())?)
    }

    /// I : (ΠU)^∞, one semigroup generator at a time.
    pub fn saturated_ideal(&self, limits: &GroebnerLimits) -> Result<Ideal> {
        Ok(self.ideal()?.saturate_all(&self.semigroup, limits)?)
    }

    /// The matroid this presentation was built for, in its permuted labels.
    pub fn permuted_matroid(&self, q: &Matroid) -> Result<Matroid> {
        q.permute(&self.provenance.permutation)
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            vars: self.ring.vars().to_vec(),
            ideal: self.ideal.iter().map(|p| p.to_string()).collect(),
            semigroup: self.semigroup.iter().map(|p| p.to_string()).collect(),
            provenance: self.provenance.clone(),
            matrix: self.matrix.to_strings(),
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Self> {
        let ring = PolyRing::new(j.vars.clone(), MonomialOrder::GrevLex)?;
        let parse = |v: &[String]| v.iter().map(|s| ring.parse(s).map_err(CoreError::from)).collect::<Result<Vec<_>>>();
        Ok(Presentation {
            ideal: parse(&j.ideal)?,
            semigroup: parse(&j.semigroup)?,
            matrix: SymbolicMatrix::parse(&ring, &j.matrix)?,
            provenance: j.provenance.clone(),
            ring,
        })
    }

    /// A presentation given only by its algebra, with an empty matrix.
    pub fn bare(ring: &Arc<PolyRing>, ideal: Vec<Polynomial>, semigroup: &[Polynomial]) -> Result<Self> {
        Ok(Presentation {
            ring: ring.clone(),
            ideal,
            semigroup: normalize_semigroup(semigroup),
            matrix: SymbolicMatrix::new(ring, Vec::new())?,
            provenance: Provenance {
                kind: PresentationKind::Matrix,
                d: 0,
                n: 0,
                reference: Vec::new(),
                pivots: Vec::new(),
                permutation: Vec::new(),
                ideal_sources: Vec::new(),
            },
        })
    }

    /// Same presentation with variables renamed stem1, stem2, … in order.
    pub fn renamed_sequential(&self, stem: &str) -> Result<Presentation> {
        let names: Vec<String> = (1..=self.nvars()).map(|k| format!("{stem}{k}")).collect();
        let ring = PolyRing::new(names, self.ring.order())?;
        let ident: Vec<Option<usize>> = (0..self.nvars()).map(Some).collect();
        let mv = |p: &Polynomial| p.map_vars(&ring, &ident).map_err(CoreError::from);
        let rows = self.matrix.rows().iter().map(|r| r.iter().map(mv).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Ok(Presentation {
            ideal: self.ideal.iter().map(mv).collect::<Result<_>>()?,
            semigroup: self.semigroup.iter().map(mv).collect::<Result<_>>()?,
            matrix: SymbolicMatrix::new(&ring, rows)?,
            provenance: self.provenance.clone(),
            ring,
        })
    }
}

/// Ground-set permutation sending `front` (in increasing order) to the
/// first positions and the rest after it, both order-preserving.
fn front_permutation(n: usize, front: Subset) -> Vec<usize> {
    let mut perm = vec![0; n];
    let order: Vec<usize> = subset::iter(front).chain(subset::iter(subset::full(n) & !front)).collect();
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    perm
}

/// Lexicographically smallest (d+1)-circuit and the permutation moving it to the front.
pub fn find_reference_circuit(q: &Matroid) -> Result<(Vec<usize>, Subset)> {
    let (d, n) = (q.rank_d(), q.ground_size());
    if d + 1 > n {
        return Err(CoreError::NoReferenceCircuit);
    }
    let en = SubsetEnumeration::new(n, d + 1, OrderTag::Lex);
    let found = en.iter().find(|&c| subset::iter(c).all(|e| q.is_basis(c & !(1 << e))));
    found.map(|c| (front_permutation(n, c), c)).ok_or(CoreError::NoReferenceCircuit)
}

/// Every (d+1)-set whose d-subsets are all bases, in lex order, at most `cap`.
pub fn reference_circuits(q: &Matroid, cap: usize) -> Vec<Subset> {
    let (d, n) = (q.rank_d(), q.ground_size());
    if d + 1 > n {
        return Vec::new();
    }
    let en = SubsetEnumeration::new(n, d + 1, OrderTag::Lex);
    let found: Vec<Subset> = en.iter().filter(|&c| subset::iter(c).all(|e| q.is_basis(c & !(1 << e)))).take(cap).collect();
    found
}

/// Lexicographically smallest basis.
pub fn reference_basis(q: &Matroid) -> Subset {
    let en = SubsetEnumeration::new(q.ground_size(), q.rank_d(), OrderTag::Lex);
    let found = en.iter().find(|&s| q.is_basis(s));
    found.expect("matroids have a basis")
}

/// Ideal of nonbasis minors and normalized basis minors of `m` for the
/// permuted matroid `qp`. An identically zero basis minor makes the ideal
/// the unit ideal.
fn minors_to_presentation(qp: &Matroid, m: &SymbolicMatrix) -> (Vec<Polynomial>, Vec<Vec<usize>>, Vec<Polynomial>) {
    let ring = m.ring().clone();
    let mut ideal: Vec<Polynomial> = Vec::new();
    let mut sources = Vec::new();
    let mut basis_minors = Vec::new();
    let mut unit = false;
    for s in subset::k_subsets(qp.ground_size(), qp.rank_d()) {
        let a = m.minor(s);
        if qp.is_basis(s) {
            if a.is_zero() {
                unit = true;
            }
            basis_minors.push(a);
        } else if !a.is_zero() {
            let a = a.normalized();
            if !ideal.contains(&a) {
                ideal.push(a);
                sources.push(subset::to_one_based(s));
            }
        }
    }
    if unit {
        ideal = vec![Polynomial::one(&ring)];
        sources = vec![Vec::new()];
    }
    let semigroup = normalize_semigroup(basis_minors.iter().filter(|a| !a.is_zero()));
    (ideal, sources, semigroup)
}

fn var_name(i: usize, j: usize) -> String {
    format!("x{}_{}", i + 1, j + 1)
}

/// Presentation of the stratum Gr(Q) with reference basis `basis`
/// (default: lexicographically smallest).
pub fn stratum_presentation(q: &Matroid, basis: Option<Subset>) -> Result<Presentation> {
    let (d, n) = (q.rank_d(), q.ground_size());
    let basis = basis.unwrap_or_else(|| reference_basis(q));
    if !q.is_basis(basis) {
        return Err(CoreError::Precondition(format!("{} is not a basis", subset::label(basis))));
    }
    let perm = front_permutation(n, basis);
    let qp = q.permute(&perm)?;
    let lam0 = subset::full(d);
    let mut names = Vec::new();
    let mut slots = Vec::new();
    for j in 0..n - d {
        for i in 0..d {
            if qp.is_basis(lam0 & !(1 << i) | 1 << (d + j)) {
                names.push(var_name(i, j));
                slots.push((i, j));
            }
        }
    }
    let ring = PolyRing::new(names, MonomialOrder::GrevLex)?;
    let mut rows = vec![vec![Polynomial::zero(&ring); n]; d];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = Polynomial::one(&ring);
    }
    for (k, &(i, j)) in slots.iter().enumerate() {
        rows[i][d + j] = Polynomial::var(&ring, k);
    }
    let matrix = SymbolicMatrix::new(&ring, rows)?;
    let (ideal, ideal_sources, semigroup) = minors_to_presentation(&qp, &matrix);
    Ok(Presentation {
        ring,
        ideal,
        semigroup,
        matrix,
        provenance: Provenance {
            kind: PresentationKind::Stratum,
            d,
            n,
            reference: subset::to_one_based(basis),
            pivots: Vec::new(),
            permutation: perm,
            ideal_sources,
        },
    })
}

/// Presentation of the realization space R(Q) using the (d+1)-circuit
/// `circuit` (default: lexicographically smallest).
pub fn realization_presentation(q: &Matroid, circuit: Option<Subset>) -> Result<Presentation> {
    let (d, n) = (q.rank_d(), q.ground_size());
    if !q.is_connected() {
        return Err(CoreError::Precondition("realization presentations need a connected matroid".into()));
    }
    let (perm, circuit) = match circuit {
        Some(c) => {
            let ok = subset::size(c) == d + 1 && subset::iter(c).all(|e| q.is_basis(c & !(1 << e)));
            if !ok {
                return Err(CoreError::Precondition(format!("{} is not a circuit of size d+1", subset::label(c))));
            }
            (front_permutation(n, c), c)
        }
        None => find_reference_circuit(q)?,
    };
    let qp = q.permute(&perm)?;
    let lam0 = subset::full(d);
    let mut names = Vec::new();
    let mut slots = Vec::new();
    let mut pivots = Vec::new();
    for j in 0..n - d - 1 {
        let col = d + 1 + j;
        let allowed: Vec<usize> = (0..d).filter(|&i| qp.is_basis(lam0 & !(1 << i) | 1 << col)).collect();
        let Some(&mu) = allowed.last() else {
            return Err(CoreError::Precondition(format!("element {} is a loop", col + 1)));
        };
        pivots.push(mu + 1);
        for &i in &allowed {
            if i != mu {
                names.push(var_name(i, j));
                slots.push((i, col));
            }
        }
    }
    let ring = PolyRing::new(names, MonomialOrder::GrevLex)?;
    let mut rows = vec![vec![Polynomial::zero(&ring); n]; d];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = Polynomial::one(&ring);
        row[d] = Polynomial::one(&ring);
    }
    for (j, &mu) in pivots.iter().enumerate() {
        rows[mu - 1][d + 1 + j] = Polynomial::one(&ring);
    }
    for (k, &(i, col)) in slots.iter().enumerate() {
        rows[i][col] = Polynomial::var(&ring, k);
    }
    let matrix = SymbolicMatrix::new(&ring, rows)?;
    let (ideal, ideal_sources, semigroup) = minors_to_presentation(&qp, &matrix);
    Ok(Presentation {
        ring,
        ideal,
        semigroup,
        matrix,
        provenance: Provenance {
            kind: PresentationKind::Realization,
            d,
            n,
            reference: subset::to_one_based(circuit),
            pivots,
            permutation: perm,
            ideal_sources,
        },
    })
}

#[derive(Clone, Debug)]
pub struct MatrixCheck {
    /// Nonzero nonbasis minors, normalized.
    pub ideal: Vec<Polynomial>,
    /// Reduced basis of the ideal saturated by the semigroup.
    pub saturated: Ideal,
    pub semigroup: Vec<Polynomial>,
    /// Basis minors that vanish identically (1-based columns).
    pub vanishing_basis_minors: Vec<Vec<usize>>,
    /// No basis minor vanishes identically and the saturated ideal is proper.
    pub consistent: bool,
}

/// Checks a symbolic matrix against Q: its nonbasis minors cut out the
/// realizations, and its basis minors are the inverted elements.
pub fn verify_matrix_presentation(q: &Matroid, m: &SymbolicMatrix, limits: &GroebnerLimits) -> Result<MatrixCheck> {
    if m.nrows() != q.rank_d() || m.ncols() != q.ground_size() {
        return Err(CoreError::Precondition(format!(
            "matrix is {}×{}, matroid is ({}, {})",
            m.nrows(),
            m.ncols(),
            q.rank_d(),
            q.ground_size()
        )));
    }
    let mut ideal = Vec::new();
    let mut basis_minors = Vec::new();
    let mut vanishing = Vec::new();
    for s in subset::k_subsets(q.ground_size(), q.rank_d()) {
        let a = m.minor(s);
        if q.is_basis(s) {
            if a.is_zero() {
                vanishing.push(subset::to_one_based(s));
            } else {
                basis_minors.push(a);
            }
        } else if !a.is_zero() {
            let a = a.normalized();
            if !ideal.contains(&a) {
                ideal.push(a);
            }
        }
    }
    let semigroup = normalize_semigroup(&basis_minors);
    let saturated = Ideal::new(m.ring(), ideal.clone())?.saturate_all(&semigroup, limits)?;
    let consistent = vanishing.is_empty() && !saturated.is_unit()?;
    Ok(MatrixCheck { ideal, saturated, semigroup, vanishing_basis_minors: vanishing, consistent })
}

/// Ring of Plücker variables p_{i1_i2_…} for the d-subsets of [n] in lex order.
pub fn pluecker_ring(d: usize, n: usize) -> Result<Arc<PolyRing>> {
    let en = SubsetEnumeration::new(n, d, OrderTag::Lex);
    let names: Vec<String> = en
        .iter()
        .map(|s| format!("p_{}", subset::to_one_based(s).iter().map(|e| e.to_string()).collect::<Vec<_>>().join("_")))
        .collect();
    Ok(PolyRing::new(names, MonomialOrder::GrevLex)?)
}

/// Signed Plücker variable for a sequence of 1-based indices: zero on
/// repeats, otherwise the sign of the sorting permutation times p_sorted.
pub fn pluecker_variable(ring: &Arc<PolyRing>, d: usize, n: usize, seq: &[usize]) -> Result<Polynomial> {
    if seq.len() != d || seq.iter().any(|&e| e == 0 || e > n) {
        return Err(CoreError::Precondition(format!("bad index sequence {seq:?}")));
    }
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(Polynomial::zero(ring));
    }
    let inversions = (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).filter(|&(a, b)| seq[a] > seq[b]).count();
    let s = subset::from_one_based(&sorted, n).expect("checked range");
    let idx = SubsetEnumeration::new(n, d, OrderTag::Lex).rank(s);
    let v = Polynomial::var(ring, idx);
    Ok(if inversions % 2 == 0 { v } else { v.neg() })
}

/// Σ_b (−1)^(b−1) p_{λ,μ_b} p_{μ∖μ_b} for a (d−1)-sequence λ and a
/// (d+1)-sequence μ, 1-based.
pub fn pluecker_relation(d: usize, n: usize, lambda: &[usize], mu: &[usize]) -> Result<Polynomial> {
    if lambda.len() + 1 != d || mu.len() != d + 1 {
        return Err(CoreError::Precondition("need |λ| = d−1 and |μ| = d+1".into()));
    }
    let ring = pluecker_ring(d, n)?;
    let mut acc = Polynomial::zero(&ring);
    for b in 0..=d {
        let mut left = lambda.to_vec();
        left.push(mu[b]);
        let right: Vec<usize> = mu.iter().enumerate().filter(|&(k, _)| k != b).map(|(_, &e)| e).collect();
        let term = &pluecker_variable(&ring, d, n, &left)? * &pluecker_variable(&ring, d, n, &right)?;
        acc = if b % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}
