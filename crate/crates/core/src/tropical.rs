//! Corank vectors, cells of the regular subdivision they induce on the
//! hypersimplex, the star-shaped subdivision of a paving matroid, and the
//! t-adic witnesses for the singular (3,12) corank vector.

use serde::Serialize;
use strata_algebra::{t_valuation_of_minors, BigRational, CoefficientField, FieldElement, PolyRing, TPoly, TPolynomialMatrix, UniPoly};

use crate::error::{CoreError, Result};
use crate::fixtures;
use crate::matroid::{Matroid, MatroidJson};
use crate::presentation::SymbolicMatrix;
use crate::subset::{self, OrderTag, Subset, SubsetEnumeration};

/// A vector on d-subsets of [n], indexed in colex order, modulo the
/// all-ones vector; stored with minimum 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorankVector {
    pub d: usize,
    pub n: usize,
    pub values: Vec<i64>,
}

impl CorankVector {
    pub fn from_values(d: usize, n: usize, mut values: Vec<i64>) -> Result<Self> {
        if d > n || n > subset::MAX_GROUND || values.len() as u64 != subset::binomial(n, d) {
            return Err(CoreError::Input(format!("expected C({n},{d}) values, got {}", values.len())));
        }
        let min = values.iter().copied().min().unwrap_or(0);
        values.iter_mut().for_each(|v| *v -= min);
        Ok(CorankVector { d, n, values })
    }

    fn enumeration(&self) -> SubsetEnumeration {
        SubsetEnumeration::new(self.n, self.d, OrderTag::Colex)
    }

    pub fn get(&self, lambda: Subset) -> i64 {
        self.values[self.enumeration().rank(lambda)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, i64)> + '_ {
        subset::k_subsets(self.n, self.d).zip(self.values.iter().copied())
    }

    /// The same class after adding c to every coordinate.
    pub fn shifted(&self, c: i64) -> CorankVector {
        let values = self.values.iter().map(|v| v + c).collect();
        CorankVector::from_values(self.d, self.n, values).expect("length is unchanged")
    }
}

/// w(Q)_λ = d − ρ(λ).
pub fn corank_vector(q: &Matroid) -> CorankVector {
    let d = q.rank_d();
    let values: Vec<i64> = subset::k_subsets(q.ground_size(), d).map(|s| (d - q.rank(s)) as i64).collect();
    let w = CorankVector::from_values(d, q.ground_size(), values).expect("one value per d-subset");
    debug_assert!(!q.is_paving() || d < 2 || w.values.iter().all(|&v| v <= 1));
    w
}

/// The matroid of the cell where ⟨ε_λ, v⟩ + w_λ is minimal.
pub fn cell_matroid(w: &CorankVector, v: &[BigRational]) -> Result<Matroid> {
    if v.len() != w.n {
        return Err(CoreError::Input(format!("probe has length {}, expected {}", v.len(), w.n)));
    }
    let height = |lambda: Subset, wl: i64| subset::iter(lambda).fold(BigRational::from_integer(wl.into()), |acc, i| acc + &v[i]);
    let heights: Vec<(Subset, BigRational)> = w.iter().map(|(l, wl)| (l, height(l, wl))).collect();
    let min = heights.iter().map(|(_, h)| h).min().expect("at least one d-subset").clone();
    let bases: Vec<Subset> = heights.into_iter().filter(|(_, h)| *h == min).map(|(l, _)| l).collect();
    Matroid::from_bases(w.d, w.n, bases).map_err(|e| CoreError::NonMatroidalCell(e.to_string()))
}

/// −ε*_η as a probe vector.
pub fn negative_indicator(eta: Subset, n: usize) -> Vec<BigRational> {
    (0..n).map(|i| if subset::contains(eta, i) { rat(-1) } else { rat(0) }).collect()
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn check_eta(eta: Subset, d: usize, n: usize) -> Result<()> {
    if eta & !subset::full(n) != 0 || subset::size(eta) < d {
        return Err(CoreError::Precondition(format!("{} needs at least {d} elements of [{n}]", subset::label(eta))));
    }
    Ok(())
}

/// Λ_η: bases meet η in at least d−1 elements.
pub fn leaf_matroid(eta: Subset, d: usize, n: usize) -> Result<Matroid> {
    check_eta(eta, d, n)?;
    Matroid::from_bases(d, n, subset::k_subsets(n, d).filter(|&l| subset::size(l & eta) + 1 >= d).collect::<Vec<_>>())
}

/// Λ′_η: bases meet η in exactly d−1 elements. Needs η ≠ [n].
pub fn edge_matroid(eta: Subset, d: usize, n: usize) -> Result<Matroid> {
    check_eta(eta, d, n)?;
    Matroid::from_bases(d, n, subset::k_subsets(n, d).filter(|&l| subset::size(l & eta) + 1 == d).collect::<Vec<_>>())
}

#[derive(Clone, Debug, Serialize)]
pub struct Leaf {
    pub eta: Vec<usize>,
    pub leaf: MatroidJson,
    pub edge: MatroidJson,
    #[serde(skip)]
    pub leaf_matroid: Matroid,
    #[serde(skip)]
    pub edge_matroid: Matroid,
}

/// Σ_{i∈η} x_i ≤ rhs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub eta: Vec<usize>,
    pub rhs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubdivisionStar {
    pub d: usize,
    pub n: usize,
    pub center: MatroidJson,
    pub leaves: Vec<Leaf>,
    /// Facets of the center polytope interior to the hypersimplex.
    pub facets: Vec<Facet>,
    /// Every d-subset is a basis of the center or of some leaf.
    pub covered: bool,
    #[serde(skip)]
    pub center_matroid: Matroid,
}

/// The subdivision induced by the corank vector of a paving connected
/// matroid: the center Q and one leaf per cyclic hyperplane.
pub fn star_subdivision(q: &Matroid) -> Result<SubdivisionStar> {
    if !q.is_paving() {
        return Err(CoreError::NotPaving);
    }
    if !q.is_connected() {
        return Err(CoreError::Precondition("the subdivision star needs a connected matroid".into()));
    }
    let (d, n) = (q.rank_d(), q.ground_size());
    let mut leaves = Vec::new();
    for h in q.cyclic_hyperplanes() {
        let leaf = leaf_matroid(h.set, d, n)?;
        let edge = edge_matroid(h.set, d, n)?;
        leaves.push(Leaf { eta: subset::to_one_based(h.set), leaf: leaf.to_json(), edge: edge.to_json(), leaf_matroid: leaf, edge_matroid: edge });
    }
    let covered = subset::k_subsets(n, d).all(|l| q.is_basis(l) || leaves.iter().any(|lf| lf.leaf_matroid.is_basis(l)));
    let facets = leaves.iter().map(|l| Facet { eta: l.eta.clone(), rhs: d - 1 }).collect();
    Ok(SubdivisionStar { d, n, center: q.to_json(), leaves, facets, covered, center_matroid: q.clone() })
}

pub fn leaf_dimension(eta_size: usize, d: usize, n: usize) -> i64 {
    let (e, d, n) = (eta_size as i64, d as i64, n as i64);
    (d - 1) * e + n - d * d + d - 1
}

pub fn edge_dimension(eta_size: usize, d: usize, n: usize) -> i64 {
    let (e, d, n) = (eta_size as i64, d as i64, n as i64);
    (d - 2) * e + n - d * d + 2 * d - 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitDimension {
    pub center: i64,
    pub total: i64,
    pub leaf_dimensions: Vec<i64>,
    pub edge_dimensions: Vec<i64>,
}

/// dim Gr(w) = dim Gr(Q) + Σ_η (|η| − d + 1), with the leaf and edge
/// strata dimensions alongside. Each leaf adds its dimension minus that of
/// its edge, which is the same |η| − d + 1.
pub fn limit_dimension(star: &SubdivisionStar, center_stratum_dimension: i64) -> LimitDimension {
    let (d, n) = (star.d, star.n);
    let sizes: Vec<usize> = star.leaves.iter().map(|l| l.eta.len()).collect();
    let leaf_dimensions: Vec<i64> = sizes.iter().map(|&s| leaf_dimension(s, d, n)).collect();
    let edge_dimensions: Vec<i64> = sizes.iter().map(|&s| edge_dimension(s, d, n)).collect();
    let total = center_stratum_dimension + sizes.iter().map(|&s| s as i64 - d as i64 + 1).sum::<i64>();
    debug_assert_eq!(
        total,
        center_stratum_dimension + leaf_dimensions.iter().zip(&edge_dimensions).map(|(l, e)| l - e).sum::<i64>()
    );
    LimitDimension { center: center_stratum_dimension, total, leaf_dimensions, edge_dimensions }
}

/// The t-linear perturbation added to each evaluated singular matrix.
pub const WITNESS_PERTURBATION: [[i64; 12]; 3] = [
    [1, 0, 2, -1, 1, 0, -1, 1, 0, 1, 1, 1],
    [-1, 0, 1, 1, 1, 0, 3, 0, 1, 1, 1, -1],
    [0, 0, -1, 1, 0, 1, -1, -1, 1, 1, 1, 0],
];

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// The evaluation point (x, y) of the singular matrix.
    pub point: [String; 2],
    pub field: String,
    /// Valuations in colex order of d-subsets; none of the minors vanishes.
    pub valuations: Vec<i64>,
    pub matches_corank: bool,
    /// On bases of the center the leading coefficient is the minor at t = 0.
    pub leading_terms_consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub d: usize,
    pub n: usize,
    pub corank: Vec<i64>,
    pub witnesses: Vec<Witness>,
    pub all_match: bool,
}

fn witness(sym: &SymbolicMatrix, field: &CoefficientField, point: [FieldElement; 2], w: &CorankVector, q: &Matroid) -> Result<Witness> {
    let a = sym.evaluate(&point);
    let rows: Vec<Vec<TPoly>> = a
        .iter()
        .zip(WITNESS_PERTURBATION.iter())
        .map(|(ar, br)| ar.iter().zip(br).map(|(c, &b)| TPoly::linear(field, c.clone(), field.from_int(b))).collect())
        .collect();
    let m = TPolynomialMatrix::new(field.clone(), rows)?;
    let minors = t_valuation_of_minors(&m, 3, None)?;
    let enumeration = SubsetEnumeration::new(12, 3, OrderTag::Colex);
    let mut valuations = vec![-1i64; minors.len()];
    let mut leading_ok = true;
    for mv in &minors {
        let s = subset::from_elements(&mv.columns);
        let Some(v) = mv.valuation else {
            return Err(CoreError::Precondition(format!("minor {} vanishes identically", subset::label(s))));
        };
        valuations[enumeration.rank(s)] = v as i64;
        if q.is_basis(s) {
            let at_zero = strata_algebra::minor(&a, &[0, 1, 2], &mv.columns);
            leading_ok &= mv.leading.as_ref() == Some(&at_zero);
        }
    }
    let field_name = match field {
        CoefficientField::Rationals => "QQ".to_string(),
        other => other.to_string(),
    };
    Ok(Witness {
        point: [point[0].to_string(), point[1].to_string()],
        field: field_name,
        matches_corank: valuations == w.values,
        valuations,
        leading_terms_consistent: leading_ok,
    })
}

/// Plücker valuations of A_i + t·B at the three points (3, −3), (3, ω),
/// (3, 1 − ω) of the singular realization space, ω² − ω + 1 = 0, against
/// the corank vector of the singular matroid. Only (3,12) is supported.
pub fn witness_valuations(d: usize, n: usize) -> Result<WitnessReport> {
    if (d, n) != (3, 12) {
        return Err(CoreError::Precondition(format!("witnesses are available for (3,12) only, not ({d},{n})")));
    }
    let q = fixtures::q_sing();
    let w = corank_vector(&q);
    let ring = PolyRing::grevlex(["x", "y"]);
    let sym = SymbolicMatrix::parse(&ring, &fixtures::QSING_MATRIX)?;
    let rationals = CoefficientField::Rationals;
    let ext = CoefficientField::extension("w", UniPoly::from_ints(&[1, -1, 1]))?;
    let omega = ext.generator().expect("extension has a generator");
    let three = FieldElement::rational(3, 1);
    let mut witnesses = vec![witness(&sym, &rationals, [three.clone(), FieldElement::rational(-3, 1)], &w, &q)?];
    witnesses.push(witness(&sym, &ext, [three.clone(), omega.clone()], &w, &q)?);
    witnesses.push(witness(&sym, &ext, [three, ext.one().sub(&omega)], &w, &q)?);
    let all_match = witnesses.iter().all(|x| x.matches_corank);
    Ok(WitnessReport { d, n, corank: w.values.clone(), witnesses, all_match })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[usize], n: usize) -> Subset {
        subset::from_one_based(items, n).unwrap()
    }

    #[test]
    fn corank_of_qsing() {
        let w = corank_vector(&fixtures::q_sing());
        assert_eq!(w.get(set(&[1, 2, 3], 12)), 0);
        assert_eq!(w.get(set(&[1, 2, 6], 12)), 1);
        assert!(w.values.iter().all(|&v| v <= 1));
        assert!(corank_vector(&Matroid::uniform(3, 7)).values.iter().all(|&v| v == 0));
        assert_eq!(w.shifted(5), w);
    }

    #[test]
    fn cells_of_qsing() {
        let q = fixtures::q_sing();
        let w = corank_vector(&q);
        assert_eq!(cell_matroid(&w, &vec![rat(0); 12]).unwrap(), q);
        for h in q.cyclic_hyperplanes() {
            let cell = cell_matroid(&w, &negative_indicator(h.set, 12)).unwrap();
            assert_eq!(cell, leaf_matroid(h.set, 3, 12).unwrap());
        }
    }

    #[test]
    fn uniform_cells_are_faces() {
        let w = corank_vector(&Matroid::uniform(2, 4));
        let v: Vec<BigRational> = [1, 0, 0, 0].iter().map(|&x| rat(x)).collect();
        let cell = cell_matroid(&w, &v).unwrap();
        assert_eq!(cell.bases(), &[0b0110, 0b1010, 0b1100]);
    }

    #[test]
    fn non_matroidal_cell_reported() {
        // heights 0 only on 12 and 34
        let values = subset::k_subsets(4, 2).map(|s| if s == 0b0011 || s == 0b1100 { 0 } else { 1 }).collect();
        let w = CorankVector::from_values(2, 4, values).unwrap();
        let err = cell_matroid(&w, &vec![rat(0); 4]).unwrap_err();
        assert!(matches!(err, CoreError::NonMatroidalCell(_)));
    }

    #[test]
    fn leaves_and_edges() {
        let eta = set(&[1, 2, 6, 8], 12);
        let leaf = leaf_matroid(eta, 3, 12).unwrap();
        assert!(leaf.bases().iter().all(|&b| subset::size(b & eta) >= 2));
        assert!(leaf.is_connected());
        let edge = edge_matroid(eta, 3, 12).unwrap();
        let model = Matroid::uniform(2, 4).direct_sum(&Matroid::uniform(1, 8)).unwrap();
        assert!(edge.is_isomorphic(&model).is_some());
        assert_eq!(leaf_matroid(subset::full(12), 3, 12).unwrap(), Matroid::uniform(3, 12));
        assert!(leaf_matroid(0b11, 3, 12).is_err());
    }

    #[test]
    fn star_of_qsing() {
        let q = fixtures::q_sing();
        let star = star_subdivision(&q).unwrap();
        assert_eq!(star.leaves.len(), 12);
        assert!(star.covered);
        assert!(star.facets.iter().all(|f| f.rhs == 2));
        let dims = limit_dimension(&star, 12);
        assert_eq!(dims.total, 27);
        assert!(star.leaves.iter().zip(&dims.leaf_dimensions).all(|(l, &v)| v == leaf_dimension(l.eta.len(), 3, 12)));
        assert_eq!(leaf_dimension(4, 3, 12), 13);
        let u = star_subdivision(&Matroid::uniform(3, 6)).unwrap();
        assert!(u.leaves.is_empty() && u.covered);
        assert_eq!(limit_dimension(&u, 9).total, 9);
        assert!(matches!(star_subdivision(&Matroid::uniform(3, 5).principal_extension(1 << 3).unwrap()), Err(CoreError::NotPaving)));
    }

    #[test]
    fn witnesses_match() {
        let r = witness_valuations(3, 12).unwrap();
        assert_eq!(r.witnesses.len(), 3);
        let first = &r.witnesses[0];
        let enumeration = SubsetEnumeration::new(12, 3, OrderTag::Colex);
        assert_eq!(first.valuations[enumeration.rank(set(&[1, 2, 3], 12))], 0);
        assert_eq!(first.valuations[enumeration.rank(set(&[1, 2, 6], 12))], 1);
        for x in &r.witnesses {
            assert!(x.matches_corank, "{:?}", x.point);
            assert!(x.leading_terms_consistent);
        }
        assert!(r.all_match);
        assert!(witness_valuations(4, 13).is_err());
    }
}
