//! Structural reductions: principal extensions and coextensions, the
//! few-hyperplanes deletion criterion, the k-lines/k-planes filters,
//! direct sums, duality, and two constructions (the singular family and
//! complete flag extensions).

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::fixtures;
use crate::matroid::{Flat, Matroid, MatroidJson};
use crate::subset::{self, Subset};

/// Moves `a` to the last position, keeping the order of the other elements.
fn move_to_end(n: usize, a: usize) -> Vec<usize> {
    (0..n).map(|e| if e == a { n - 1 } else if e > a { e - 1 } else { e }).collect()
}

/// The flat η′ of Q∖a (in Q's labels, a excluded) with Q = (Q∖a) +_η′ a,
/// if there is one.
///
/// If Q is such an extension then the flats F ∋ a with a ∈ cl(F∖a) are
/// exactly those containing η′ ∪ a, so candidates are tried from low rank
/// up and each is verified by rebuilding the bases.
pub fn detect_principal_extension(q: &Matroid, a: usize) -> Option<Subset> {
    let n = q.ground_size();
    if a >= n {
        return None;
    }
    let (deleted, old_of_new) = q.delete(1 << a).ok()?;
    if deleted.rank_d() != q.rank_d() {
        return None;
    }
    let target = q.permute(&move_to_end(n, a)).ok()?;
    let mut new_of_old = vec![usize::MAX; n];
    for (i, &o) in old_of_new.iter().enumerate() {
        new_of_old[o] = i;
    }
    let relabel = |s: Subset| subset::iter(s).fold(0u64, |acc, o| acc | 1 << new_of_old[o]);
    q.flats()
        .into_iter()
        .filter(|f| subset::contains(f.set, a) && q.rank(f.set & !(1 << a)) == f.rank)
        .map(|f| f.set & !(1 << a))
        .find(|&eta| deleted.principal_extension(relabel(eta)).is_ok_and(|pe| pe == target))
}

/// The hypothesis on Z¹(Q, a) = {H₁, …, H_r} under which Q is the
/// principal extension of Q∖a on the intersection of the H_i with a removed:
/// ρ(∩H∖a) = ρ(∩H) = d − r.
pub fn principal_extension_condition(q: &Matroid, a: usize) -> bool {
    let hs = q.z1_through(a);
    let meet = hs.iter().fold(q.ground(), |acc, h| acc & h.set);
    let r = hs.len();
    r <= q.rank_d() && q.rank(meet & !(1 << a)) == q.rank_d() - r && q.rank(meet) == q.rank_d() - r
}

/// |Z¹(Q, a)| ≤ 2.
pub fn deletion_reducible(q: &Matroid, a: usize) -> bool {
    q.z1_through(a).len() <= 2
}

/// Every element lies on at least k lines (rank 3) or planes (rank 4).
pub fn k_flats_property(q: &Matroid, k: usize) -> Result<bool> {
    let big = match q.rank_d() {
        3 => q.lines()?,
        4 => q.planes()?,
        d => return Err(CoreError::Precondition(format!("k-lines/k-planes need rank 3 or 4, got {d}"))),
    };
    Ok((0..q.ground_size()).all(|e| big.iter().filter(|h| subset::contains(h.set, e)).count() >= k))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum Justification {
    /// The element is parallel to an earlier one.
    Parallel { partner: usize },
    PrincipalExtension { eta: Vec<usize> },
    Z1Size { hyperplanes: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PlanMove {
    Split { components: Vec<Vec<usize>> },
    Dualize,
    Delete { element: usize, justification: Justification },
    /// The element is a principal coextension on the flat η of the dual.
    CoextensionPeel { element: usize, eta: Vec<usize> },
}

/// A move together with the matroid it was applied to. Labels are the
/// 1-based elements of the input matroid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanStep {
    pub labels: Vec<usize>,
    pub dualized: bool,
    pub matroid: MatroidJson,
    #[serde(flatten)]
    pub action: PlanMove,
}

#[derive(Clone, Debug, Serialize)]
pub struct Terminal {
    pub labels: Vec<usize>,
    /// The terminal is the dual of the corresponding minor of the input.
    pub dualized: bool,
    pub matroid: MatroidJson,
    #[serde(skip)]
    pub value: Matroid,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionPlan {
    pub moves: Vec<PlanStep>,
    pub terminals: Vec<Terminal>,
}

struct Work {
    m: Matroid,
    labels: Vec<usize>,
    dualized: bool,
}

impl Work {
    fn one_based(&self, s: Subset) -> Vec<usize> {
        subset::iter(s).map(|e| self.labels[e] + 1).collect()
    }

    fn minus(&self, a: usize, m: Matroid) -> Work {
        let labels = self.labels.iter().enumerate().filter(|&(i, _)| i != a).map(|(_, &l)| l).collect();
        Work { m, labels, dualized: self.dualized }
    }
}

fn next_move(w: &Work) -> Option<(PlanMove, Vec<Work>)> {
    let (m, d, n) = (&w.m, w.m.rank_d(), w.m.ground_size());
    let comps = m.component_masks();
    if comps.len() > 1 {
        let parts = comps
            .iter()
            .map(|&c| {
                let (sub, map) = m.restrict(c).expect("component lies in the ground set");
                Work { m: sub, labels: map.iter().map(|&e| w.labels[e]).collect(), dualized: w.dualized }
            })
            .collect();
        return Some((PlanMove::Split { components: comps.iter().map(|&c| w.one_based(c)).collect() }, parts));
    }
    if n < 2 * d {
        let dual = Work { m: m.dual(), labels: w.labels.clone(), dualized: !w.dualized };
        return Some((PlanMove::Dualize, vec![dual]));
    }
    let delete = |a: usize, justification: Justification| {
        let (sub, _) = m.delete(1 << a).expect("element lies in the ground set");
        Some((PlanMove::Delete { element: w.labels[a] + 1, justification }, vec![w.minus(a, sub)]))
    };
    if let Some(class) = m.parallel_classes().first() {
        return delete(class[1], Justification::Parallel { partner: w.labels[class[0]] + 1 });
    }
    for a in 0..n {
        if let Some(eta) = detect_principal_extension(m, a) {
            return delete(a, Justification::PrincipalExtension { eta: w.one_based(eta) });
        }
    }
    if d >= 3 {
        for a in 0..n {
            let hs = m.z1_through(a);
            if hs.len() <= 2 {
                return delete(a, Justification::Z1Size { hyperplanes: hs.iter().map(|h| w.one_based(h.set)).collect() });
            }
        }
    }
    let dual = m.dual();
    for a in 0..n {
        if let Some(eta) = detect_principal_extension(&dual, a) {
            let (sub, _) = m.contract(1 << a).expect("element lies in the ground set");
            return Some((PlanMove::CoextensionPeel { element: w.labels[a] + 1, eta: w.one_based(eta) }, vec![w.minus(a, sub)]));
        }
    }
    None
}

/// Greedy reduction by the moves above, lowest index first. Every move
/// except dualization lowers n or splits, and dualization fires only when
/// it lowers the rank, so the plan terminates.
pub fn plan(q: &Matroid) -> ReductionPlan {
    let mut moves = Vec::new();
    let mut terminals = Vec::new();
    let mut stack = vec![Work { m: q.clone(), labels: (0..q.ground_size()).collect(), dualized: false }];
    while let Some(w) = stack.pop() {
        match next_move(&w) {
            Some((action, next)) => {
                moves.push(PlanStep {
                    labels: w.labels.iter().map(|l| l + 1).collect(),
                    dualized: w.dualized,
                    matroid: w.m.to_json(),
                    action,
                });
                stack.extend(next.into_iter().rev());
            }
            None => terminals.push(Terminal {
                labels: w.labels.iter().map(|l| l + 1).collect(),
                dualized: w.dualized,
                matroid: w.m.to_json(),
                value: w.m,
            }),
        }
    }
    ReductionPlan { moves, terminals }
}

/// The singular rank-d matroid on n elements: d−3 free coextensions of the
/// (3,12) singular matroid followed by n−d−9 free extensions, new elements
/// appended last.
pub fn build_q_dn_sing(d: usize, n: usize) -> Result<Matroid> {
    if d < 3 || n < d + 9 || 2 * d > n || n > subset::MAX_GROUND {
        return Err(CoreError::Precondition(format!("no singular construction for (d, n) = ({d}, {n})")));
    }
    let mut q = fixtures::q_sing();
    for _ in 3..d {
        q = q.principal_coextension(q.ground())?;
    }
    while q.ground_size() < n {
        q = q.principal_extension(q.ground())?;
    }
    Ok(q)
}

/// Constituents Q₁, …, Qₙ of the complete flag matroid of Q (Qᵢ of rank i
/// on [n]), after checking that every flat of Qᵢ is a flat of Qᵢ₊₁.
pub fn flag_extension(q: &Matroid) -> Result<Vec<Matroid>> {
    let (d, n) = (q.rank_d(), q.ground_size());
    let first = subset::full(d);
    if !q.is_basis(first) {
        return Err(CoreError::Precondition("the first d elements must form a basis".into()));
    }
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let block = subset::full(i.max(d)) & !subset::full(i.min(d));
        let m = if i < d {
            let (c, map) = q.contract(block)?;
            let bases = c.bases().iter().map(|&b| subset::iter(b).fold(0u64, |acc, e| acc | 1 << map[e]));
            Matroid::from_bases(i, n, bases.collect::<Vec<_>>())?
        } else if i == d {
            q.clone()
        } else {
            let bases: Vec<Subset> = q.bases().iter().filter(|&&b| b & block == 0).map(|&b| b | block).collect();
            Matroid::from_bases(i, n, bases)?
        };
        out.push(m);
    }
    for pair in out.windows(2) {
        if let Some(f) = pair[0].flats().into_iter().find(|f: &Flat| !pair[1].is_flat(f.set)) {
            return Err(CoreError::InvalidMatroid(format!(
                "flat {} of the rank {} constituent is not a flat of the next",
                subset::label(f.set),
                pair[0].rank_d()
            )));
        }
    }
    Ok(out)
}
