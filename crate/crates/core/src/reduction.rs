//! Elimination of variables from a presentation through ideal generators
//! that are linear in some variable with an invertible coefficient.
//!
//! The ring stays fixed while reducing; eliminated variables simply stop
//! occurring, and the final presentation is moved to the ring of the
//! survivors. Matrix columns are rescaled by powers of the coefficient so
//! entries stay polynomial; the scalings are units of the localization, so
//! the matroid at every point of the space is unchanged.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use strata_algebra::{FieldElement, GroebnerLimits, Ideal, MonomialOrder, PolyRing, Polynomial};

use crate::error::{CoreError, Result};
use crate::presentation::{normalize_semigroup, sort_polys, Presentation, PresentationJson, SymbolicMatrix};

pub const DEFAULT_BUDGET: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub enum ReductionStep {
    /// `variable := numerator / denominator`, read off `generator`.
    Substitute { variable: usize, generator: Polynomial, numerator: Polynomial, denominator: Polynomial },
    /// Ideal replaced by its saturation by the semigroup product.
    Saturate { ideal: Vec<Polynomial> },
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub input: Presentation,
    pub steps: Vec<ReductionStep>,
    pub output: Presentation,
    /// Set when the step budget, not the absence of candidates, ended the run.
    pub budget_exhausted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealKind {
    Zero,
    Principal,
    Unit,
    Other,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationInvariants {
    pub num_vars: usize,
    pub ideal_kind: IdealKind,
    pub principal_generator: Option<String>,
    /// Reduced Gröbner basis of the saturated ideal.
    pub saturated_basis: Vec<String>,
}

/// Working state: everything lives in the input ring.
#[derive(Clone, Debug)]
struct State {
    ring: Arc<PolyRing>,
    ideal: Vec<Polynomial>,
    semigroup: Vec<Polynomial>,
    rows: Vec<Vec<Polynomial>>,
    unit: bool,
}

impl State {
    fn from_presentation(p: &Presentation) -> Self {
        let mut s = State {
            ring: p.ring.clone(),
            ideal: p.ideal.clone(),
            semigroup: p.semigroup.clone(),
            rows: p.matrix.rows().to_vec(),
            unit: false,
        };
        s.tidy_ideal();
        s
    }

    /// Divides semigroup factors out of every generator, normalizes,
    /// deduplicates and sorts; a nonzero constant marks the unit ideal.
    fn tidy_ideal(&mut self) {
        let mut out: Vec<Polynomial> = Vec::new();
        for g in &self.ideal {
            if g.is_zero() {
                continue;
            }
            let h = strip_units(g, &self.semigroup);
            if h.is_constant() {
                self.unit = true;
                break;
            }
            if !out.contains(&h) {
                out.push(h);
            }
        }
        if self.unit {
            out = vec![Polynomial::one(&self.ring)];
        }
        sort_polys(&mut out);
        self.ideal = out;
    }

    /// The first generator in scan order that is linear in a variable with
    /// a unit coefficient.
    fn candidate(&self) -> Option<(usize, Polynomial, Polynomial, Polynomial)> {
        if self.unit {
            return None;
        }
        for g in &self.ideal {
            for k in 0..self.ring.nvars() {
                if g.degree_in(k) != 1 {
                    continue;
                }
                let cs = g.coefficients_in(k);
                let (r, c) = (&cs[0], &cs[1]);
                if is_unit(c, &self.semigroup) {
                    return Some((k, g.clone(), r.neg(), c.clone()));
                }
            }
        }
        None
    }

    fn substitute(&mut self, k: usize, generator: &Polynomial, num: &Polynomial, den: &Polynomial) -> Result<()> {
        let sub = |p: &Polynomial| -> Result<Polynomial> {
            if !p.involves(k) {
                return Ok(p.clone());
            }
            Ok(p.substitute_fraction(k, num, den)?)
        };
        let mut ideal = Vec::with_capacity(self.ideal.len());
        for g in &self.ideal {
            if g == generator {
                continue;
            }
            ideal.push(sub(g)?);
        }
        let mut images = Vec::with_capacity(self.semigroup.len());
        for s in &self.semigroup {
            let t = sub(s)?;
            if t.is_zero() {
                // an inverted element became zero: the localization is trivial
                self.unit = true;
            }
            images.push(t);
        }
        let ncols = self.rows.first().map_or(0, |r| r.len());
        for col in 0..ncols {
            let e = self.rows.iter().map(|r| r[col].degree_in(k)).max().unwrap_or(0);
            if e == 0 {
                continue;
            }
            for row in self.rows.iter_mut() {
                let h = &row[col];
                let shift = e - h.degree_in(k);
                let mut v = sub(h)?;
                if shift > 0 {
                    v = &v * &den.pow(shift);
                }
                row[col] = v;
            }
        }
        self.ideal = ideal;
        self.semigroup = normalize_semigroup(images.iter().filter(|t| !t.is_zero()));
        if self.unit {
            self.ideal = vec![Polynomial::one(&self.ring)];
        } else {
            self.tidy_ideal();
        }
        Ok(())
    }

    fn saturated(&self, limits: &GroebnerLimits) -> Result<Vec<Polynomial>> {
        let sat = Ideal::new(&self.ring, self.ideal.clone())?.saturate_all(&self.semigroup, limits)?;
        let mut gens: Vec<Polynomial> = sat.basis().unwrap_or(&[]).iter().map(|g| g.normalized()).collect();
        sort_polys(&mut gens);
        Ok(gens)
    }

    fn apply(&mut self, step: &ReductionStep) -> Result<()> {
        match step {
            ReductionStep::Substitute { variable, generator, numerator, denominator } => {
                if !self.ideal.contains(generator) {
                    return Err(CoreError::Precondition(format!("replay: generator {generator} not present")));
                }
                self.substitute(*variable, generator, numerator, denominator)
            }
            ReductionStep::Saturate { ideal } => {
                self.ideal = ideal.clone();
                self.tidy_ideal();
                Ok(())
            }
        }
    }

    /// Moves the state to the ring of variables that still occur.
    fn finish(&self, input: &Presentation) -> Result<Presentation> {
        let n = self.ring.nvars();
        let mut used = vec![false; n];
        let all = self.ideal.iter().chain(&self.semigroup).chain(self.rows.iter().flatten());
        for p in all {
            for v in p.support() {
                used[v] = true;
            }
        }
        let kept: Vec<usize> = (0..n).filter(|&v| used[v]).collect();
        let names: Vec<String> = kept.iter().map(|&v| self.ring.vars()[v].clone()).collect();
        let ring = PolyRing::new(names, MonomialOrder::GrevLex)?;
        let mut map = vec![None; n];
        for (new, &old) in kept.iter().enumerate() {
            map[old] = Some(new);
        }
        let mv = |p: &Polynomial| p.map_vars(&ring, &map).map_err(CoreError::from);
        let mut ideal = self.ideal.iter().map(mv).collect::<Result<Vec<_>>>()?;
        let mut semigroup = self.semigroup.iter().map(mv).collect::<Result<Vec<_>>>()?;
        sort_polys(&mut ideal);
        sort_polys(&mut semigroup);
        let rows = self.rows.iter().map(|r| r.iter().map(mv).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let mut provenance = input.provenance.clone();
        provenance.ideal_sources.clear();
        Ok(Presentation { matrix: SymbolicMatrix::new(&ring, rows)?, ring, ideal, semigroup, provenance })
    }
}

/// `p` with every semigroup factor divided out, normalized.
fn strip_units(p: &Polynomial, semigroup: &[Polynomial]) -> Polynomial {
    let mut h = p.normalized();
    for s in semigroup {
        if s.is_constant() {
            continue;
        }
        while let Some(q) = h.div_exact(s) {
            h = q.normalized();
        }
    }
    h
}

/// Conservative: true only when `c` is a constant times a product of
/// semigroup generators.
pub fn is_unit(c: &Polynomial, semigroup: &[Polynomial]) -> bool {
    !c.is_zero() && strip_units(c, semigroup).is_constant()
}

/// Eliminates variables until no candidate remains or `budget` steps ran.
/// When substitutions stall, the ideal is replaced once by its saturation
/// (if that changes it) in case new linear generators appear.
pub fn reduce(p: &Presentation, budget: usize, limits: &GroebnerLimits) -> Result<ReductionTrace> {
    let mut state = State::from_presentation(p);
    let mut steps = Vec::new();
    let mut budget_exhausted = false;
    loop {
        if steps.len() >= budget {
            budget_exhausted = state.candidate().is_some();
            break;
        }
        if let Some((k, generator, numerator, denominator)) = state.candidate() {
            let step = ReductionStep::Substitute { variable: k, generator, numerator, denominator };
            state.apply(&step)?;
            steps.push(step);
            continue;
        }
        if state.unit || state.ideal.is_empty() {
            break;
        }
        // Saturation is best effort: hitting a cap just ends the reduction.
        let sat = match state.saturated(limits) {
            Ok(s) => s,
            Err(e) if e.is_resource_limit() => break,
            Err(e) => return Err(e),
        };
        let mut probe = state.clone();
        probe.ideal = sat.clone();
        probe.tidy_ideal();
        if probe.ideal == state.ideal || probe.candidate().is_none() && !probe.unit {
            break;
        }
        let step = ReductionStep::Saturate { ideal: sat };
        state.apply(&step)?;
        steps.push(step);
    }
    let output = state.finish(p)?;
    Ok(ReductionTrace { input: p.clone(), steps, output, budget_exhausted })
}

/// Re-runs `steps` on `p`; the result must match the recorded output.
pub fn replay(p: &Presentation, steps: &[ReductionStep]) -> Result<Presentation> {
    let mut state = State::from_presentation(p);
    for s in steps {
        state.apply(s)?;
    }
    state.finish(p)
}

impl ReductionTrace {
    /// Extends a point of the output space to one of the input space by
    /// evaluating the substitutions backward. `point` is indexed by the
    /// output ring's variables, the result by the input ring's. `None` when
    /// a denominator vanishes or a needed variable is unassigned.
    pub fn lift(&self, point: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let ring = &self.input.ring;
        let zero = point.first().map(|p| p.zero_like()).unwrap_or(FieldElement::rational(0, 1));
        let mut full: Vec<Option<FieldElement>> = vec![None; ring.nvars()];
        for (i, name) in self.output.ring.vars().iter().enumerate() {
            full[ring.var_index(name)?] = Some(point[i].clone());
        }
        let eval = |p: &Polynomial, full: &[Option<FieldElement>]| -> Option<FieldElement> {
            if p.support().iter().any(|&v| full[v].is_none()) {
                return None;
            }
            let pt: Vec<FieldElement> = full.iter().map(|x| x.clone().unwrap_or_else(|| zero.clone())).collect();
            Some(p.evaluate_in(&pt))
        };
        for step in self.steps.iter().rev() {
            if let ReductionStep::Substitute { variable, numerator, denominator, .. } = step {
                let num = eval(numerator, &full)?;
                let den = eval(denominator, &full)?;
                full[*variable] = Some(num.div(&den).ok()?);
            }
        }
        Some(full.into_iter().map(|x| x.unwrap_or_else(|| zero.clone())).collect())
    }

    pub fn to_json(&self) -> TraceJson {
        let names = self.input.ring.vars();
        TraceJson {
            input: self.input.to_json(),
            steps: self
                .steps
                .iter()
                .map(|s| match s {
                    ReductionStep::Substitute { variable, generator, numerator, denominator } => StepJson::Substitute {
                        variable: names[*variable].clone(),
                        generator: generator.to_string(),
                        numerator: numerator.to_string(),
                        denominator: denominator.to_string(),
                    },
                    ReductionStep::Saturate { ideal } => {
                        StepJson::Saturate { ideal: ideal.iter().map(|g| g.to_string()).collect() }
                    }
                })
                .collect(),
            output: self.output.to_json(),
            budget_exhausted: self.budget_exhausted,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepJson {
    Substitute { variable: String, generator: String, numerator: String, denominator: String },
    Saturate { ideal: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceJson {
    pub input: PresentationJson,
    pub steps: Vec<StepJson>,
    pub output: PresentationJson,
    pub budget_exhausted: bool,
}

/// Zero, principal or larger, read off the saturated ideal.
pub fn invariants_of(p: &Presentation, limits: &GroebnerLimits) -> Result<PresentationInvariants> {
    let sat = p.saturated_ideal(limits)?;
    let basis: Vec<Polynomial> = sat.basis().unwrap_or(&[]).iter().map(|g| g.normalized()).collect();
    let kind = if sat.is_unit()? {
        IdealKind::Unit
    } else {
        match basis.len() {
            0 => IdealKind::Zero,
            1 => IdealKind::Principal,
            _ => IdealKind::Other,
        }
    };
    Ok(PresentationInvariants {
        num_vars: p.nvars(),
        ideal_kind: kind,
        principal_generator: (kind == IdealKind::Principal).then(|| basis[0].to_string()),
        saturated_basis: basis.iter().map(|g| g.to_string()).collect(),
    })
}
