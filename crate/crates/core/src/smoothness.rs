//! Realizability, smoothness, component counts and node certificates for
//! reduced presentations, and the end-to-end classification of a matroid.
//!
//! Smoothness is decided only when the saturated ideal is zero or
//! principal. Component counts come from factorizations over Q: a
//! univariate factor contributes one component per distinct complex root,
//! a genuinely multivariate factor contributes one component under an
//! explicit absolute-irreducibility assumption.

use serde::{Deserialize, Serialize};
use strata_algebra::{coarse_factors, gcd, GroebnerLimits, Ideal, Polynomial, QuotientDimension};

use crate::config::Config;
use crate::error::{CoreError, Result};
use crate::matroid::Matroid;
use crate::presentation::{
    realization_presentation, reference_basis, reference_circuits, stratum_presentation, Presentation, PresentationJson,
    PresentationKind,
};
use crate::reduction::{invariants_of, is_unit, reduce, IdealKind, PresentationInvariants};
use crate::subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentFactor {
    pub factor: String,
    pub components: usize,
    pub univariate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentAnalysis {
    pub factors: Vec<ComponentFactor>,
    pub component_count: usize,
    /// Set when some multivariate factor was counted as one component
    /// without a proof of absolute irreducibility.
    pub absolute_irreducibility_assumed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeCertificate {
    pub branches: [String; 2],
    /// dim_Q Q[x,y]/⟨f₁,f₂⟩ when finite.
    pub intersection_dimension: Option<usize>,
    pub jacobian: String,
    pub transverse: bool,
    pub semigroup_units: bool,
    /// No third factor passes through the intersection points.
    pub other_branches_units: bool,
    pub certified: bool,
    pub nodes: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularLocus {
    pub empty: bool,
    /// Vector-space dimension of the saturated singular-locus ring, when finite.
    pub quotient_dimension: Option<usize>,
    pub basis: Vec<String>,
    pub nodes: Vec<NodeCertificate>,
    /// Every singular point is accounted for by a certified node.
    pub nodal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub d: usize,
    pub n: usize,
    pub presentation: Option<PresentationKind>,
    /// Reference circuit or basis, 1-based original labels.
    pub reference: Vec<usize>,
    pub variables_before: usize,
    pub variables_after: usize,
    pub reduction_steps: usize,
    pub realizable: Verdict,
    pub smooth: Verdict,
    /// Krull dimension of the realization space.
    pub dimension: Option<usize>,
    pub ideal_kind: Option<IdealKind>,
    pub principal_generator: Option<String>,
    pub component_count: Option<usize>,
    pub absolute_irreducibility_assumed: bool,
    pub factors: Vec<ComponentFactor>,
    pub singular_locus: Option<SingularLocus>,
    pub undecided_reason: Option<String>,
    /// Reports of the connected components when the matroid splits.
    pub parts: Vec<ClassificationReport>,
    pub reduced: Option<PresentationJson>,
}

impl ClassificationReport {
    fn empty(d: usize, n: usize) -> Self {
        ClassificationReport {
            d,
            n,
            presentation: None,
            reference: Vec::new(),
            variables_before: 0,
            variables_after: 0,
            reduction_steps: 0,
            realizable: Verdict::Undecided,
            smooth: Verdict::Undecided,
            dimension: None,
            ideal_kind: None,
            principal_generator: None,
            component_count: None,
            absolute_irreducibility_assumed: false,
            factors: Vec::new(),
            singular_locus: None,
            undecided_reason: None,
            parts: Vec::new(),
            reduced: None,
        }
    }

    /// A single point: realizable, smooth, irreducible of dimension 0.
    fn point(d: usize, n: usize) -> Self {
        ClassificationReport {
            realizable: Verdict::Yes,
            smooth: Verdict::Yes,
            dimension: Some(0),
            ideal_kind: Some(IdealKind::Zero),
            component_count: Some(1),
            ..Self::empty(d, n)
        }
    }

    pub fn nodes(&self) -> usize {
        self.singular_locus.as_ref().map_or(0, |s| s.nodes.iter().map(|c| c.nodes).sum())
    }

    pub fn is_decided(&self) -> bool {
        self.realizable != Verdict::Undecided && self.smooth != Verdict::Undecided
    }
}

fn undecided_reason(e: &CoreError) -> Option<String> {
    e.is_resource_limit().then(|| format!("resource: {e}"))
}

/// No iff the saturated ideal is the unit ideal.
pub fn is_realizable(p: &Presentation, limits: &GroebnerLimits) -> Result<Verdict> {
    match p.saturated_ideal(limits) {
        Ok(sat) => Ok(Verdict::from_bool(!sat.is_unit()?)),
        Err(e) if e.is_resource_limit() => Ok(Verdict::Undecided),
        Err(e) => Err(e),
    }
}

/// ⟨f, ∂f/∂x₁, …⟩ saturated by the semigroup product; the unit ideal for
/// the zero ideal. `f` is the principal generator of the saturated ideal.
pub fn singular_locus(p: &Presentation, f: Option<&Polynomial>, limits: &GroebnerLimits) -> Result<Ideal> {
    let Some(f) = f else {
        return Ok(Ideal::unit(&p.ring));
    };
    let mut gens = vec![f.clone()];
    gens.extend((0..p.nvars()).map(|v| f.partial_derivative(v)).filter(|g| !g.is_zero()));
    Ok(Ideal::new(&p.ring, gens)?.saturate_all(&p.semigroup, limits)?)
}

/// Square-free part of a polynomial in one variable.
fn square_free_degree(g: &Polynomial) -> usize {
    let v = g.support()[0];
    let h = gcd(g, &g.partial_derivative(v));
    let sf = g.div_exact(&h).expect("gcd divides");
    sf.degree_in(v) as usize
}

/// Q-factors of `f` that are not units, with their complex component counts.
pub fn component_analysis(f: &Polynomial, semigroup: &[Polynomial]) -> (ComponentAnalysis, Vec<Polynomial>) {
    let mut factors = Vec::new();
    let mut kept = Vec::new();
    let mut assumed = false;
    for g in coarse_factors(f) {
        if g.is_constant() || is_unit(&g, semigroup) {
            continue;
        }
        let univariate = g.support().len() == 1;
        let components = if univariate { square_free_degree(&g) } else { 1 };
        assumed |= !univariate;
        factors.push(ComponentFactor { factor: g.to_string(), components, univariate });
        kept.push(g);
    }
    let component_count = factors.iter().map(|c| c.components).sum();
    (ComponentAnalysis { factors, component_count, absolute_irreducibility_assumed: assumed }, kept)
}

fn unit_modulo(base: &[Polynomial], g: &Polynomial, limits: &GroebnerLimits) -> Result<bool> {
    let mut gens = base.to_vec();
    gens.push(g.clone());
    Ok(Ideal::new(g.ring(), gens)?.with_basis(limits)?.is_unit()?)
}

/// Pairwise intersections of the branches in a 2-variable presentation.
/// A pair is certified when it meets in finitely many points, transversely,
/// away from V(U) and from every other branch; each point is then a node.
pub fn certify_nodes(
    factors: &[Polynomial],
    semigroup: &[Polynomial],
    limits: &GroebnerLimits,
) -> Result<Vec<NodeCertificate>> {
    let Some(first) = factors.first() else {
        return Ok(Vec::new());
    };
    if first.ring().nvars() != 2 {
        return Err(CoreError::Precondition("node certification needs exactly two variables".into()));
    }
    let mut out = Vec::new();
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            let (f1, f2) = (&factors[i], &factors[j]);
            let pair = vec![f1.clone(), f2.clone()];
            let jac = &(&f1.partial_derivative(0) * &f2.partial_derivative(1))
                - &(&f1.partial_derivative(1) * &f2.partial_derivative(0));
            let j12 = Ideal::new(f1.ring(), pair.clone())?.with_basis(limits)?;
            let branches = [f1.to_string(), f2.to_string()];
            if j12.is_unit()? {
                out.push(NodeCertificate {
                    branches,
                    intersection_dimension: Some(0),
                    jacobian: jac.to_string(),
                    transverse: true,
                    semigroup_units: true,
                    other_branches_units: true,
                    certified: true,
                    nodes: 0,
                });
                continue;
            }
            let dim = match j12.quotient_dimension()? {
                QuotientDimension::Finite { dimension, .. } => Some(dimension),
                QuotientDimension::Infinite { .. } => None,
            };
            let transverse = dim.is_some() && unit_modulo(&pair, &jac, limits)?;
            let mut semigroup_units = true;
            for g in semigroup {
                if !unit_modulo(&pair, g, limits)? {
                    semigroup_units = false;
                    break;
                }
            }
            let mut others = true;
            for (k, g) in factors.iter().enumerate() {
                if k != i && k != j && !unit_modulo(&pair, g, limits)? {
                    others = false;
                    break;
                }
            }
            let certified = transverse && semigroup_units && others;
            out.push(NodeCertificate {
                branches,
                intersection_dimension: dim,
                jacobian: jac.to_string(),
                transverse,
                semigroup_units,
                other_branches_units: others,
                certified,
                nodes: if certified { dim.unwrap_or(0) } else { 0 },
            });
        }
    }
    Ok(out)
}

/// Fills the algebraic part of a report from a reduced presentation.
/// `torus` is subtracted from the dimension (n−1 for stratum presentations).
pub fn analyze(p: &Presentation, torus: usize, limits: &GroebnerLimits, report: &mut ClassificationReport) -> Result<()> {
    let inv: PresentationInvariants = match invariants_of(p, limits) {
        Ok(inv) => inv,
        Err(e) => {
            report.undecided_reason = Some(undecided_reason(&e).ok_or(e)?);
            return Ok(());
        }
    };
    report.ideal_kind = Some(inv.ideal_kind);
    report.principal_generator = inv.principal_generator.clone();
    let nv = p.nvars();
    match inv.ideal_kind {
        IdealKind::Unit => {
            // the empty space: vacuously smooth, no components
            report.realizable = Verdict::No;
            report.smooth = Verdict::Yes;
            report.component_count = Some(0);
        }
        IdealKind::Zero => {
            report.realizable = Verdict::Yes;
            report.smooth = Verdict::Yes;
            report.dimension = Some(nv.saturating_sub(torus));
            report.component_count = Some(1);
            report.singular_locus =
                Some(SingularLocus { empty: true, quotient_dimension: Some(0), basis: Vec::new(), nodes: Vec::new(), nodal: true });
        }
        IdealKind::Principal => {
            report.realizable = Verdict::Yes;
            report.dimension = Some((nv - 1).saturating_sub(torus));
            let f = p.ring.parse(inv.principal_generator.as_deref().unwrap_or("0"))?;
            let (ca, kept) = component_analysis(&f, &p.semigroup);
            report.component_count = Some(ca.component_count);
            report.absolute_irreducibility_assumed = ca.absolute_irreducibility_assumed;
            report.factors = ca.factors;
            let sl = match singular_locus(p, Some(&f), limits) {
                Ok(j) => j,
                Err(e) => {
                    report.undecided_reason = Some(undecided_reason(&e).ok_or(e)?);
                    return Ok(());
                }
            };
            let empty = sl.is_unit()?;
            report.smooth = Verdict::from_bool(empty);
            let quotient_dimension = match sl.quotient_dimension()? {
                QuotientDimension::Finite { dimension, .. } => Some(dimension),
                QuotientDimension::Infinite { .. } => None,
            };
            let nodes = if !empty && nv == 2 { certify_nodes(&kept, &p.semigroup, limits)? } else { Vec::new() };
            let total: usize = nodes.iter().map(|c| c.nodes).sum();
            report.singular_locus = Some(SingularLocus {
                empty,
                nodal: empty || quotient_dimension == Some(total),
                quotient_dimension,
                basis: sl.basis().unwrap_or(&[]).iter().map(|g| g.to_string()).collect(),
                nodes,
            });
        }
        IdealKind::Other => {
            report.realizable = Verdict::Yes;
            let sat = p.saturated_ideal(limits)?;
            report.dimension = sat.krull_dimension()?.map(|k| k.saturating_sub(torus));
            report.undecided_reason = Some("ideal_kind: other".into());
        }
    }
    Ok(())
}

fn classify_with(q: &Matroid, p: Presentation, torus: usize, cfg: &Config) -> Result<ClassificationReport> {
    let limits = cfg.limits();
    let mut report = ClassificationReport::empty(q.rank_d(), q.ground_size());
    report.presentation = Some(p.provenance.kind);
    report.reference = p.provenance.reference.iter().map(|&e| original_label(&p, e)).collect();
    report.variables_before = p.nvars();
    let trace = reduce(&p, cfg.budget, &limits)?;
    report.reduction_steps = trace.steps.len();
    report.variables_after = trace.output.nvars();
    analyze(&trace.output, torus, &limits, &mut report)?;
    report.reduced = Some(trace.output.to_json());
    Ok(report)
}

/// Reference labels are stored in permuted positions; map back.
fn original_label(p: &Presentation, e: usize) -> usize {
    let perm = &p.provenance.permutation;
    perm.iter().position(|&new| new + 1 == e).map_or(e, |old| old + 1)
}

fn combine(q: &Matroid, parts: Vec<ClassificationReport>) -> ClassificationReport {
    let mut r = ClassificationReport::empty(q.rank_d(), q.ground_size());
    let all = |f: &dyn Fn(&ClassificationReport) -> Verdict| {
        let vs: Vec<Verdict> = parts.iter().map(f).collect();
        if vs.contains(&Verdict::No) {
            Verdict::No
        } else if vs.contains(&Verdict::Undecided) {
            Verdict::Undecided
        } else {
            Verdict::Yes
        }
    };
    r.realizable = all(&|p| p.realizable);
    r.smooth = all(&|p| p.smooth);
    // R(Q₁ ⊕ Q₂) ≅ R(Q₁) × R(Q₂)
    r.dimension = parts.iter().map(|p| p.dimension).sum();
    r.component_count = parts.iter().map(|p| p.component_count).product();
    r.absolute_irreducibility_assumed = parts.iter().any(|p| p.absolute_irreducibility_assumed);
    r.undecided_reason = parts.iter().find_map(|p| p.undecided_reason.clone());
    r.parts = parts;
    r
}

/// End-to-end classification. Disconnected matroids are classified per
/// component. Up to `cfg.max_circuits` reference circuits are tried until
/// one gives a decided report; without any, the stratum presentation is
/// used and the torus dimension n−1 is subtracted.
pub fn classify(q: &Matroid, cfg: &Config) -> Result<ClassificationReport> {
    let (d, n) = (q.rank_d(), q.ground_size());
    if n <= 1 {
        return Ok(ClassificationReport::point(d, n));
    }
    let comps = q.component_masks();
    if comps.len() > 1 {
        let mut parts = Vec::with_capacity(comps.len());
        for c in comps {
            let (sub, _) = q.restrict(c)?;
            parts.push(classify(&sub, cfg)?);
        }
        return Ok(combine(q, parts));
    }
    let circuits = reference_circuits(q, cfg.max_circuits);
    if circuits.is_empty() {
        let p = stratum_presentation(q, Some(reference_basis(q)))?;
        return classify_with(q, p, n - 1, cfg);
    }
    let mut first: Option<ClassificationReport> = None;
    for c in circuits {
        let report = classify_with(q, realization_presentation(q, Some(c))?, 0, cfg)?;
        if report.is_decided() {
            return Ok(report);
        }
        first.get_or_insert(report);
    }
    Ok(first.expect("at least one circuit was tried"))
}

/// Label list for display, e.g. "1234".
pub fn reference_label(report: &ClassificationReport) -> String {
    let es: Vec<usize> = report.reference.iter().map(|e| e - 1).collect();
    subset::label(subset::from_elements(&es))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use strata_algebra::PolyRing;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn gaussian_nine_is_two_points() {
        let r = classify(&fixtures::gaussian_nine(), &cfg()).unwrap();
        assert_eq!((r.realizable, r.smooth), (Verdict::Yes, Verdict::Yes));
        assert_eq!(r.component_count, Some(2));
        assert_eq!(r.dimension, Some(0));
        assert_eq!(r.variables_after, 1);
    }

    #[test]
    fn qsing_has_two_nodes() {
        let r = classify(&fixtures::q_sing(), &cfg()).unwrap();
        assert_eq!((r.realizable, r.smooth), (Verdict::Yes, Verdict::No));
        assert_eq!(r.component_count, Some(3));
        assert!(r.absolute_irreducibility_assumed);
        let sl = r.singular_locus.as_ref().unwrap();
        assert_eq!(sl.quotient_dimension, Some(2));
        assert!(sl.nodal);
        assert_eq!(r.nodes(), 2);
        assert_eq!(reference_label(&r), "1234");
    }

    #[test]
    fn curve_ten_is_smooth() {
        let r = classify(&fixtures::curve_ten(), &cfg()).unwrap();
        assert_eq!(r.smooth, Verdict::Yes);
        assert_eq!(r.dimension, Some(1));
        assert!(r.singular_locus.unwrap().empty);
    }

    #[test]
    fn uniform_matroids_are_open_cells() {
        for d in 1..=3 {
            for n in d..=7 {
                let r = classify(&Matroid::uniform(d, n), &cfg()).unwrap();
                assert_eq!((r.realizable, r.smooth, r.component_count), (Verdict::Yes, Verdict::Yes, Some(1)), "U({d},{n})");
                let expected = if n == d { 0 } else { (d - 1) * (n - d - 1) };
                assert_eq!(r.dimension, Some(expected), "U({d},{n})");
            }
        }
    }

    #[test]
    fn node_certificate_edge_cases() {
        let ring = PolyRing::grevlex(["x", "y"]);
        let p = |s: &str| ring.parse(s).unwrap();
        let apart = certify_nodes(&[p("x"), p("x - 1")], &[], &GroebnerLimits::default()).unwrap();
        assert_eq!((apart[0].intersection_dimension, apart[0].nodes), (Some(0), 0));
        let tangent = certify_nodes(&[p("y"), p("y - x^2")], &[], &GroebnerLimits::default()).unwrap();
        assert!(!tangent[0].transverse && !tangent[0].certified);
        let doubled = certify_nodes(&[p("y"), p("y^2")], &[], &GroebnerLimits::default()).unwrap();
        assert!(!doubled[0].transverse);
        let cross = certify_nodes(&[p("y"), p("x")], &[], &GroebnerLimits::default()).unwrap();
        assert_eq!(cross[0].nodes, 1);
        // the crossing point is removed by inverting x
        let removed = certify_nodes(&[p("y"), p("x")], &[p("x")], &GroebnerLimits::default()).unwrap();
        assert!(!removed[0].semigroup_units);
    }

    #[test]
    fn components_of_square_free_parts() {
        let ring = PolyRing::grevlex(["x"]);
        let (ca, _) = component_analysis(&ring.parse("(x^2 + 1)*(x - 3)^2").unwrap(), &[]);
        assert_eq!(ca.component_count, 3);
        assert!(!ca.absolute_irreducibility_assumed);
    }
}
