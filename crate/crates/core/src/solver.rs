//! Minimum covers of an element set by subgroups.
//!
//! Sets are bitsets over element ids. The exact solver is a sequential
//! branch-and-bound: branch on the uncovered element with the fewest live
//! candidates, and in the `j`-th branch forbid the candidates tried in branches
//! `0..j`, so each cover is explored under its least-indexed candidate for that
//! element.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::catalog::LoadedGroup;
use crate::error::{Error, Result};
use crate::group::{ElemId, GroupTable};
use crate::subgroup::SubgroupHandle;
use crate::wreath::{WreathElement, WreathFamily, WreathGroup};

/// Default order cap for [`sigma_exact`].
pub const DEFAULT_SOLVER_CAP: usize = 10_000;

#[derive(Clone, Debug)]
struct Candidate {
    label: String,
    set: FixedBitSet,
}

/// A universe and the candidate sets that may cover it. Candidates are
/// deduplicated by element set and kept in canonical order.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    universe: FixedBitSet,
    candidates: Vec<Candidate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    ExactOptimal,
    UpperBound,
    LowerBoundWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCertificate {
    pub kind: CertificateKind,
    pub value: usize,
    /// Labels of the chosen candidates, in canonical candidate order.
    pub chosen: Vec<String>,
    /// Proven lower bound; equals `value` for an exact certificate.
    pub lower_bound: usize,
    pub nodes: u64,
    pub transcript: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CoverOutcome {
    Covered(CoverCertificate),
    /// Some universe element lies in no candidate, e.g. a generator of a
    /// cyclic group: no cover by proper subgroups exists.
    Infeasible { uncovered: ElemId },
}

impl CoverOutcome {
    pub fn certificate(&self) -> Option<&CoverCertificate> {
        match self {
            CoverOutcome::Covered(c) => Some(c),
            CoverOutcome::Infeasible { .. } => None,
        }
    }
}

impl CoverInstance {
    pub fn new<'a>(universe: FixedBitSet, candidates: impl IntoIterator<Item = (String, &'a SubgroupHandle)>) -> Self {
        let mut by_key: BTreeMap<Vec<ElemId>, Candidate> = BTreeMap::new();
        for (label, h) in candidates {
            let mut set = h.set().clone();
            set.grow(universe.len());
            set.intersect_with(&universe);
            let key = h.members().to_vec();
            match by_key.get_mut(&key) {
                Some(c) if c.label <= label => {}
                Some(c) => c.label = label,
                None => {
                    by_key.insert(key, Candidate { label, set });
                }
            }
        }
        CoverInstance { universe, candidates: by_key.into_values().collect() }
    }

    /// All maximal subgroups of `g` against `target` (default: all of `g`),
    /// identity removed.
    pub fn for_group(g: &LoadedGroup, target: Option<&FixedBitSet>) -> Self {
        let mut universe = match target {
            Some(t) => t.clone(),
            None => {
                let mut u = FixedBitSet::with_capacity(g.table.order());
                u.insert_range(..);
                u
            }
        };
        universe.set(g.table.identity() as usize, false);
        let members = g.all_maximal_subgroups();
        CoverInstance::new(universe, members.iter().map(|x| (x.label(), x.subgroup)))
    }

    pub fn universe(&self) -> &FixedBitSet {
        &self.universe
    }

    pub fn candidate_labels(&self) -> Vec<&str> {
        self.candidates.iter().map(|c| c.label.as_str()).collect()
    }

    /// Least universe element in no candidate.
    pub fn infeasible_witness(&self) -> Option<ElemId> {
        let mut u = self.universe.clone();
        for c in &self.candidates {
            u.difference_with(&c.set);
        }
        u.ones().next().map(|x| x as ElemId)
    }

    fn labels(&self, chosen: &[usize]) -> Vec<String> {
        let mut idx = chosen.to_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| self.candidates[i].label.clone()).collect()
    }
}

fn greedy_indices(inst: &CoverInstance, uncovered: &FixedBitSet, allowed: &FixedBitSet) -> Option<Vec<usize>> {
    let mut u = uncovered.clone();
    let mut chosen = Vec::new();
    while !u.is_clear() {
        let (best, gain) = allowed
            .ones()
            .map(|i| (i, inst.candidates[i].set.intersection_count(&u)))
            .fold((usize::MAX, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if gain == 0 {
            return None;
        }
        u.difference_with(&inst.candidates[best].set);
        chosen.push(best);
    }
    Some(chosen)
}

/// Greedy maximum-coverage cover; ties go to the canonically first candidate.
pub fn sigma_greedy(inst: &CoverInstance) -> CoverOutcome {
    if let Some(x) = inst.infeasible_witness() {
        return CoverOutcome::Infeasible { uncovered: x };
    }
    let mut all = FixedBitSet::with_capacity(inst.candidates.len());
    all.insert_range(..);
    let chosen = greedy_indices(inst, &inst.universe, &all).expect("feasible instance");
    let lb = if chosen.is_empty() { 0 } else { 1 };
    CoverOutcome::Covered(CoverCertificate {
        kind: CertificateKind::UpperBound,
        value: chosen.len(),
        chosen: inst.labels(&chosen),
        lower_bound: lb,
        nodes: 0,
        transcript: vec![format!("greedy cover of size {}", chosen.len())],
    })
}

struct Search<'a> {
    inst: &'a CoverInstance,
    /// For each element id, the candidates containing it.
    containing: Vec<FixedBitSet>,
    best: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    /// `⌈|U| / max coverage⌉` and a packing bound: uncovered elements with
    /// pairwise disjoint candidate sets need distinct candidates.
    fn lower_bound(&self, u: &FixedBitSet, allowed: &FixedBitSet) -> usize {
        let n = u.count_ones(..);
        if n == 0 {
            return 0;
        }
        let maxcov = allowed.ones().map(|i| self.inst.candidates[i].set.intersection_count(u)).max().unwrap_or(0);
        if maxcov == 0 {
            return usize::MAX;
        }
        let ratio = n.div_ceil(maxcov);
        let mut elems: Vec<(usize, usize)> = u
            .ones()
            .map(|e| (self.containing[e].intersection_count(allowed), e))
            .collect();
        elems.sort_unstable();
        let mut used = FixedBitSet::with_capacity(self.inst.candidates.len());
        let mut packing = 0;
        for (_, e) in elems {
            let mut live = self.containing[e].clone();
            live.intersect_with(allowed);
            if live.is_disjoint(&used) {
                used.union_with(&live);
                packing += 1;
            }
        }
        ratio.max(packing)
    }

    fn run(&mut self, u: &FixedBitSet, allowed: &FixedBitSet, chosen: &mut Vec<usize>) {
        self.nodes += 1;
        if u.is_clear() {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        let lb = self.lower_bound(u, allowed);
        if lb == usize::MAX || chosen.len() + lb >= self.best.len() {
            return;
        }
        // branch element: fewest live candidates, least id on ties
        let (count, e) = u
            .ones()
            .map(|e| (self.containing[e].intersection_count(allowed), e))
            .min()
            .expect("nonempty");
        if count == 0 {
            return;
        }
        let mut options: Vec<usize> = self.containing[e].intersection(allowed).collect();
        // drop candidates whose remaining coverage is inside another option's
        let cover: Vec<FixedBitSet> = options
            .iter()
            .map(|&i| self.inst.candidates[i].set.intersection(u).collect())
            .collect();
        let keep: Vec<bool> = (0..options.len())
            .map(|a| {
                !(0..options.len()).any(|b| {
                    b != a && cover[a].is_subset(&cover[b]) && (cover[a] != cover[b] || b < a)
                })
            })
            .collect();
        let mut order: Vec<(usize, usize)> = options
            .iter()
            .zip(&cover)
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|((&i, c), _)| (usize::MAX - c.count_ones(..), i))
            .collect();
        order.sort_unstable();
        options = order.into_iter().map(|(_, i)| i).collect();

        let mut allowed = allowed.clone();
        for &c in &options {
            let mut next = u.clone();
            next.difference_with(&self.inst.candidates[c].set);
            chosen.push(c);
            self.run(&next, &allowed, chosen);
            chosen.pop();
            allowed.set(c, false);
        }
    }
}

/// Exact minimum cover of the instance universe.
pub fn solve_exact(inst: &CoverInstance) -> CoverOutcome {
    if let Some(x) = inst.infeasible_witness() {
        return CoverOutcome::Infeasible { uncovered: x };
    }
    let k = inst.candidates.len();
    let mut allowed = FixedBitSet::with_capacity(k);
    allowed.insert_range(..);
    let greedy = greedy_indices(inst, &inst.universe, &allowed).expect("feasible instance");
    let mut containing = vec![FixedBitSet::with_capacity(k); inst.universe.len()];
    for (i, c) in inst.candidates.iter().enumerate() {
        for e in c.set.ones() {
            containing[e].insert(i);
        }
    }
    let mut search = Search { inst, containing, best: greedy.clone(), nodes: 0 };
    let root_lb = search.lower_bound(&inst.universe, &allowed);
    // only strictly smaller covers replace the greedy one
    let mut chosen = Vec::new();
    search.run(&inst.universe, &allowed, &mut chosen);
    let best = search.best.clone();
    let value = best.len();
    CoverOutcome::Covered(CoverCertificate {
        kind: CertificateKind::ExactOptimal,
        value,
        chosen: inst.labels(&best),
        lower_bound: value,
        nodes: search.nodes,
        transcript: vec![
            format!("candidates: {k}, universe: {}", inst.universe.count_ones(..)),
            format!("greedy upper bound: {}", greedy.len()),
            format!("root lower bound: {root_lb}"),
            format!("branch-and-bound nodes: {}; no cover of size {} exists", search.nodes, value.saturating_sub(1)),
        ],
    })
}

/// `σ` of `g` (or of `target ⊆ g`) over all maximal subgroups of `g`.
pub fn sigma_exact(g: &LoadedGroup, target: Option<&FixedBitSet>, cap: usize) -> Result<CoverOutcome> {
    if g.table.order() > cap {
        return Err(Error::OrderCap { order: g.table.order(), cap });
    }
    Ok(solve_exact(&CoverInstance::for_group(g, target)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCheck<W> {
    pub covered: bool,
    pub first_uncovered: Option<W>,
}

/// Whether the union of `subgroups` contains `target`; the least uncovered
/// element id is the witness.
pub fn verify_group_cover<'a>(
    g: &GroupTable,
    subgroups: impl IntoIterator<Item = &'a SubgroupHandle>,
    target: &FixedBitSet,
) -> CoverCheck<ElemId> {
    let mut u = target.clone();
    for h in subgroups {
        u.difference_with(h.set());
    }
    u.set(g.identity() as usize, false);
    let first = u.ones().next().map(|x| x as ElemId);
    CoverCheck { covered: first.is_none(), first_uncovered: first }
}

/// Whether `family` covers all of `S ≀ C_m`, by exhaustive enumeration.
pub fn verify_wreath_cover(g: &WreathGroup<'_>, family: &WreathFamily, cap: u64) -> Result<CoverCheck<WreathElement>> {
    match g.order() {
        Some(o) if o <= cap => {
            let first = family.first_uncovered(g);
            Ok(CoverCheck { covered: first.is_none(), first_uncovered: first })
        }
        _ => Err(Error::CapExceeded(cap)),
    }
}
