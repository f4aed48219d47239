//! Definitely unbeatable families for `S ≀ C_m` built from a family `𝓜` of
//! maximal subgroups of `S` and a set `Σ ⊆ S`.
//!
//! `Π = Π₁ ∪ Π₂` and `𝓗 = 𝓗₁ ∪ 𝓗₂` where
//! * `Π₁` is the shift-1 elements whose product `x_0 ⋯ x_{m-1}` lies in `Σ`,
//! * `Π₂` is, for each prime `r | m`, the shift-`r` elements whose cumulative
//!   products from coordinates 0 and 1 lie in `Σ ∩ ⋃𝓜_{c1}` and
//!   `Σ ∩ ⋃𝓜_{c2}` for two different classes `c1 ≠ c2`,
//! * `𝓗₁` is every product-type subgroup over a member of `𝓜`,
//! * `𝓗₂` is the socle maximals `S^m ⋊ C_r`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::LoadedGroup;
use crate::error::{Error, Result};
use crate::group::{ElemId, GroupTable};
use crate::numtheory::{alpha, prime_divisors, smallest_prime_divisor};
use crate::serde_big;
use crate::solver::verify_group_cover;
use crate::subgroup::{SubgroupClass, SubgroupHandle};
use crate::wreath::{shifted, ProductTypeDescriptor, WreathElement, WreathGroup};

/// Explicit mode is used when `m·|S|^m` is at most this.
pub const EXPLICIT_LIMIT: u64 = 100_000_000;

/// Stated in every certificate: the maximal subgroups of `S ≀ C_m` are the
/// socle maximals, the product-type normalizers and the diagonal type.
pub const TRICHOTOMY: &str =
    "every maximal subgroup of S wr C_m contains the socle, is of product type, or is of diagonal type";

/// A subgroup of `S` in `𝓜`, tagged with its catalog class.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub class_label: String,
    /// Index of the class in `LoadedGroup::maximal`.
    pub class_index: usize,
    pub conjugator: ElemId,
    pub subgroup: Arc<SubgroupHandle>,
}

#[derive(Clone)]
pub struct IntroInstance<'a> {
    pub group: &'a LoadedGroup,
    pub sigma: FixedBitSet,
    pub family: Vec<FamilyMember>,
    pub m: usize,
}

impl<'a> IntroInstance<'a> {
    /// `𝓜` = every conjugate in the named catalog classes.
    pub fn from_labels(group: &'a LoadedGroup, sigma: FixedBitSet, labels: &[&str], m: usize) -> Result<Self> {
        let mut family = Vec::new();
        for &l in labels {
            let idx = group
                .maximal
                .iter()
                .position(|c| c.label == l)
                .ok_or_else(|| Error::UnknownGroup(format!("{}/{l}", group.name)))?;
            let c = &group.maximal[idx];
            for (h, &g) in c.class.conjugates.iter().zip(&c.class.conjugators) {
                family.push(FamilyMember {
                    class_label: c.label.clone(),
                    class_index: idx,
                    conjugator: g,
                    subgroup: Arc::new(h.clone()),
                });
            }
        }
        Self::new(group, sigma, family, m)
    }

    /// Any list of maximal subgroups; each must lie in a catalog class.
    pub fn from_subgroups(
        group: &'a LoadedGroup,
        sigma: FixedBitSet,
        subgroups: impl IntoIterator<Item = SubgroupHandle>,
        m: usize,
    ) -> Result<Self> {
        let mut family = Vec::new();
        for h in subgroups {
            let (idx, pos) = group
                .maximal
                .iter()
                .enumerate()
                .find_map(|(i, c)| c.class.position(&h).map(|p| (i, p)))
                .ok_or_else(|| Error::Hypothesis("family member is not a catalog maximal subgroup".into()))?;
            let c = &group.maximal[idx];
            family.push(FamilyMember {
                class_label: c.label.clone(),
                class_index: idx,
                conjugator: c.class.conjugators[pos],
                subgroup: Arc::new(h),
            });
        }
        Self::new(group, sigma, family, m)
    }

    fn new(group: &'a LoadedGroup, sigma: FixedBitSet, mut family: Vec<FamilyMember>, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Unsupported("wreath exponent m must be at least 1".into()));
        }
        if sigma.len() != group.table.order() {
            return Err(Error::Hypothesis("Σ must be a subset of S".into()));
        }
        family.sort_by(|a, b| (a.class_index, &a.subgroup).cmp(&(b.class_index, &b.subgroup)));
        family.dedup_by(|a, b| a.subgroup == b.subgroup);
        Ok(IntroInstance { group, sigma, family, m })
    }

    pub fn member_label(&self, i: usize) -> String {
        let f = &self.family[i];
        let c = &self.group.maximal[f.class_index].class;
        format!("{}#{}", f.class_label, c.position(&f.subgroup).unwrap_or(0))
    }

    fn contains_member(&self, h: &SubgroupHandle) -> bool {
        self.family.iter().any(|f| *f.subgroup == *h)
    }

    /// Class indices represented in `𝓜`, ascending.
    pub fn classes(&self) -> Vec<usize> {
        self.family.iter().map(|f| f.class_index).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// `Σ ∩ ⋃{M ∈ 𝓜 of class c}` for each class of [`IntroInstance::classes`].
    pub fn sigma_by_class(&self) -> Vec<(usize, FixedBitSet)> {
        self.classes()
            .into_iter()
            .map(|c| {
                let mut u = FixedBitSet::with_capacity(self.sigma.len());
                for f in self.family.iter().filter(|f| f.class_index == c) {
                    u.union_with(f.subgroup.set());
                }
                u.intersect_with(&self.sigma);
                (c, u)
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConditionResult {
    pub id: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ConditionResult {
    fn new(id: &str, pass: bool, detail: String, witness: Option<String>) -> Self {
        ConditionResult { id: id.into(), pass, detail, witness }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MemberCount {
    pub label: String,
    pub order: usize,
    pub sigma_in_member: usize,
}

/// Conditions (0)–(5) on `(S, 𝓜, Σ, m)` with the exact quantities of (5):
/// `A = (1+α(m))|S|^{m/ℓ}`, `B = max |Σ∩H||H|^{m−1}` over maximal `H ∉ 𝓜`,
/// `C = Σ |Σ∩M₁||Σ∩M₂||S|^{m−2}` over ordered non-conjugate pairs of `𝓜`,
/// `D = min |Σ∩M||M|^{m−1}` over `𝓜`.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub group: String,
    pub m: usize,
    pub alpha: usize,
    pub l: Option<u64>,
    pub conditions: Vec<ConditionResult>,
    #[serde(serialize_with = "serde_big::opt_big")]
    pub a: Option<BigUint>,
    #[serde(serialize_with = "serde_big::opt_big")]
    pub b: Option<BigUint>,
    #[serde(serialize_with = "serde_big::opt_big")]
    pub c: Option<BigUint>,
    #[serde(serialize_with = "serde_big::opt_big")]
    pub d: Option<BigUint>,
    /// `H` attaining `B`.
    pub b_witness: Option<String>,
    /// `B` with `Π₂ ∩ K` added: `|Σ∩H||H|^{m−1} + α(m)·P(H)·|H|^{m−2}`.
    #[serde(serialize_with = "serde_big::opt_big")]
    pub b_with_pi2: Option<BigUint>,
    /// `B` over every proper subgroup outside `𝓜`; informational.
    #[serde(serialize_with = "serde_big::opt_big")]
    pub b_all_subgroups: Option<BigUint>,
    pub b_all_witness_order: Option<usize>,
    pub members: Vec<MemberCount>,
    pub pass: bool,
}

impl ConditionReport {
    pub fn condition(&self, id: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// Conditions (0)–(4) only.
    pub fn structural_pass(&self) -> bool {
        self.conditions.iter().filter(|c| c.id != "5").all(|c| c.pass)
    }

    /// `max(A, B_{Π₂}) ≤ min(C, D)`.
    pub fn pi2_safe(&self) -> bool {
        match (&self.a, &self.b_with_pi2, &self.c, &self.d) {
            (Some(a), Some(b), Some(c), Some(d)) => a.max(b) <= c.min(d),
            _ => false,
        }
    }
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

/// Checks conditions (0)–(5). With `lattice` the informational `B` over all
/// subgroups is also computed.
pub fn check_intro_conditions(inst: &IntroInstance<'_>, lattice: Option<&[SubgroupClass]>) -> ConditionReport {
    let g = inst.group;
    let s = &g.table;
    let m = inst.m;
    let mut conditions = Vec::new();

    // (0)
    let keys: HashSet<&SubgroupHandle> = inst.family.iter().map(|f| &*f.subgroup).collect();
    let mut w0 = None;
    'outer: for (i, f) in inst.family.iter().enumerate() {
        for &x in s.generators() {
            let h = f.subgroup.conjugate(s, x);
            if !keys.contains(&h) {
                w0 = Some(format!("{} conjugated by {}", inst.member_label(i), s.perm(x)));
                break 'outer;
            }
        }
    }
    conditions.push(ConditionResult::new(
        "0",
        w0.is_none() && !inst.family.is_empty(),
        format!("family of {} subgroups closed under conjugation", inst.family.len()),
        w0.or_else(|| inst.family.is_empty().then(|| "empty family".into())),
    ));

    // (1)
    let counts: Vec<usize> = inst.family.iter().map(|f| f.subgroup.count_in(&inst.sigma)).collect();
    let w1 = counts.iter().position(|&c| c == 0).map(|i| inst.member_label(i));
    conditions.push(ConditionResult::new("1", w1.is_none(), "Σ meets every member".into(), w1));

    // (2), (3)
    let mut hits = vec![0u32; s.order()];
    for f in &inst.family {
        for &x in f.subgroup.members() {
            hits[x as usize] += 1;
        }
    }
    let w2 = inst.sigma.ones().find(|&x| hits[x] == 0).map(|x| s.perm(x as ElemId).to_string());
    conditions.push(ConditionResult::new("2", w2.is_none(), "Σ lies in the union of the family".into(), w2));
    let w3 = inst.sigma.ones().find(|&x| hits[x] > 1).map(|x| {
        let owners: Vec<String> = (0..inst.family.len())
            .filter(|&i| inst.family[i].subgroup.contains(x as ElemId))
            .take(2)
            .map(|i| inst.member_label(i))
            .collect();
        format!("{} in {}", s.perm(x as ElemId), owners.join(" and "))
    });
    conditions.push(ConditionResult::new("3", w3.is_none(), "each element of Σ in at most one member".into(), w3));

    // (4)
    let classes = inst.classes();
    conditions.push(ConditionResult::new(
        "4",
        classes.len() >= 2,
        format!("{} conjugacy classes in the family", classes.len()),
        (classes.len() < 2).then(|| classes.iter().map(|&c| g.maximal[c].label.clone()).collect::<Vec<_>>().join(",")),
    ));

    let members = inst
        .family
        .iter()
        .enumerate()
        .map(|(i, f)| MemberCount { label: inst.member_label(i), order: f.subgroup.order(), sigma_in_member: counts[i] })
        .collect();
    let mut report = ConditionReport {
        group: g.name.clone(),
        m,
        alpha: alpha(m as u64),
        l: smallest_prime_divisor(m as u64),
        conditions,
        a: None,
        b: None,
        c: None,
        d: None,
        b_witness: None,
        b_with_pi2: None,
        b_all_subgroups: None,
        b_all_witness_order: None,
        members,
        pass: false,
    };

    // (5)
    if m < 2 {
        report.conditions.push(ConditionResult::new("5", false, "requires m ≥ 2".into(), None));
        return report;
    }
    let so = s.order();
    let l = report.l.expect("m ≥ 2") as usize;
    let a = big(1 + report.alpha) * big(so).pow((m / l) as u32);
    let s_pow = big(so).pow((m - 2) as u32);
    let per_class: BTreeMap<usize, usize> = inst.family.iter().zip(&counts).fold(BTreeMap::new(), |mut acc, (f, &c)| {
        *acc.entry(f.class_index).or_default() += c;
        acc
    });
    let total: usize = counts.iter().sum();
    let same: BigUint = per_class.values().map(|&v| big(v) * big(v)).sum();
    let c = (big(total) * big(total) - same) * &s_pow;
    let d = inst
        .family
        .iter()
        .zip(&counts)
        .map(|(f, &n)| big(n) * big(f.subgroup.order()).pow((m - 1) as u32))
        .min()
        .unwrap_or_else(BigUint::zero);

    let sigma_classes = inst.sigma_by_class();
    let mut b = BigUint::zero();
    let mut b_pi2 = BigUint::zero();
    let mut b_witness = None;
    for mm in g.all_maximal_subgroups() {
        if inst.contains_member(mm.subgroup) {
            continue;
        }
        let n = mm.subgroup.count_in(&inst.sigma);
        let ord = big(mm.subgroup.order());
        let v = big(n) * ord.pow((m - 1) as u32);
        if b_witness.is_none() || v > b {
            b_witness = Some(mm.label());
            b = v.clone();
        }
        let pair = pi2_pair_bound(g, mm.subgroup, mm.class_label, &sigma_classes);
        let v2 = v + big(report.alpha) * big(pair) * ord.pow((m - 2) as u32);
        b_pi2 = b_pi2.max(v2);
    }
    if let Some(lat) = lattice {
        let mut best = BigUint::zero();
        let mut best_order = None;
        for class in lat {
            if class.subgroup_order() == so {
                continue;
            }
            for h in &class.conjugates {
                if inst.contains_member(h) {
                    continue;
                }
                let v = big(h.count_in(&inst.sigma)) * big(h.order()).pow((m - 1) as u32);
                if v > best {
                    best = v;
                    best_order = Some(h.order());
                }
            }
        }
        report.b_all_subgroups = Some(best);
        report.b_all_witness_order = best_order;
    }

    let pass5 = a.clone().max(b.clone()) <= c.clone().min(d.clone());
    report.conditions.push(ConditionResult::new(
        "5",
        pass5,
        format!("max(A, B) = {} ≤ min(C, D) = {}", a.clone().max(b.clone()), c.clone().min(d.clone())),
        None,
    ));
    report.a = Some(a);
    report.b = Some(b);
    report.c = Some(c);
    report.d = Some(d);
    report.b_witness = b_witness;
    report.b_with_pi2 = Some(b_pi2);
    report.pass = report.conditions.iter().all(|c| c.pass);
    report
}

/// `max_{B ~ H} Σ_{c1 ≠ c2} |Σ_{c1} ∩ H| · |Σ_{c2} ∩ B|`: bounds the pairs
/// `(y_1, y_2)` of cumulative products of `Π₂ ∩ K` for product-type `K` over `H`.
fn pi2_pair_bound(
    g: &LoadedGroup,
    h: &SubgroupHandle,
    class_label: &str,
    sigma_classes: &[(usize, FixedBitSet)],
) -> usize {
    let first: Vec<usize> = sigma_classes.iter().map(|(_, set)| h.count_in(set)).collect();
    if first.iter().all(|&x| x == 0) {
        return 0;
    }
    let class = &g.class(class_label).expect("catalog label").class;
    class
        .conjugates
        .iter()
        .map(|b| {
            let second: Vec<usize> = sigma_classes.iter().map(|(_, set)| b.count_in(set)).collect();
            let mut t = 0;
            for (i, x) in first.iter().enumerate() {
                for (j, y) in second.iter().enumerate() {
                    if i != j {
                        t += x * y;
                    }
                }
            }
            t
        })
        .max()
        .unwrap_or(0)
}

/// `Π` and `𝓗` for an instance; membership tests and the sizes.
pub struct PiH<'i, 'a> {
    pub inst: &'i IntroInstance<'a>,
    sigma_classes: Vec<(usize, FixedBitSet)>,
    primes: Vec<u64>,
}

impl<'i, 'a> PiH<'i, 'a> {
    pub fn new(inst: &'i IntroInstance<'a>) -> Self {
        PiH { inst, sigma_classes: inst.sigma_by_class(), primes: prime_divisors(inst.m as u64) }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `|𝓗| = α(m) + Σ_{M ∈ 𝓜} |S:M|^{m−1}`.
    pub fn family_size(&self) -> BigUint {
        let so = self.inst.group.table.order();
        let h1: BigUint =
            self.inst.family.iter().map(|f| big(so / f.subgroup.order()).pow(self.inst.m as u32 - 1)).sum();
        h1 + big(self.primes.len())
    }

    pub fn in_pi1(&self, s: &GroupTable, w: &WreathElement) -> bool {
        let m = self.inst.m;
        w.shift == 1 % m && self.inst.sigma.contains(s.product(&w.base) as usize)
    }

    fn cumulative(s: &GroupTable, w: &WreathElement, t: usize, len: usize) -> ElemId {
        let m = w.base.len();
        let mut p = s.identity();
        for j in 0..len {
            p = s.mul(p, w.base[shifted(t, (j * w.shift) as isize, m)]);
        }
        p
    }

    pub fn in_pi2(&self, s: &GroupTable, w: &WreathElement) -> bool {
        let m = self.inst.m;
        if m < 2 {
            return false;
        }
        let Some(&r) = self.primes.iter().find(|&&r| r as usize % m == w.shift) else {
            return false;
        };
        let len = m / r as usize;
        let y1 = Self::cumulative(s, w, 0, len) as usize;
        let y2 = Self::cumulative(s, w, 1, len) as usize;
        let c1: Vec<usize> = (0..self.sigma_classes.len()).filter(|&i| self.sigma_classes[i].1.contains(y1)).collect();
        let c2: Vec<usize> = (0..self.sigma_classes.len()).filter(|&i| self.sigma_classes[i].1.contains(y2)).collect();
        c1.iter().any(|a| c2.iter().any(|b| a != b))
    }

    pub fn in_pi(&self, s: &GroupTable, w: &WreathElement) -> bool {
        self.in_pi1(s, w) || self.in_pi2(s, w)
    }

    /// `|Π₁| + |Π₂|` assuming the `Σ_c` are disjoint (condition (3)).
    pub fn pi_size_formula(&self) -> BigUint {
        let so = big(self.inst.group.table.order());
        let m = self.inst.m as u32;
        let p1 = big(self.inst.sigma.count_ones(..)) * so.pow(m - 1);
        if m < 2 {
            return p1;
        }
        let sizes: Vec<usize> = self.sigma_classes.iter().map(|(_, x)| x.count_ones(..)).collect();
        let tot: usize = sizes.iter().sum();
        let same: usize = sizes.iter().map(|x| x * x).sum();
        p1 + big(self.primes.len()) * big(tot * tot - same) * so.pow(m - 2)
    }
}

/// Right-coset label of `M x` for every `x ∈ S`.
fn coset_label_table(s: &GroupTable, h: &SubgroupHandle) -> Vec<ElemId> {
    let mut lab = vec![0; s.order()];
    for l in h.right_coset_labels(s) {
        for &x in h.members() {
            lab[s.mul(x, l) as usize] = l;
        }
    }
    lab
}

/// All coset-label tuples `(Mg_0 = M, Mg_1, …)` whose product-type subgroup
/// contains `w`; orbit starts are forced for the orbit of 0 and free otherwise.
fn containing_tuples(s: &GroupTable, lab: &[ElemId], labels: &[ElemId], w: &WreathElement) -> Vec<Vec<ElemId>> {
    let m = w.base.len();
    let mut seen = vec![false; m];
    let mut out: Vec<Vec<ElemId>> = vec![vec![0; m]];
    for i0 in 0..m {
        if seen[i0] {
            continue;
        }
        let mut orbit = vec![i0];
        seen[i0] = true;
        let mut j = shifted(i0, w.shift as isize, m);
        while j != i0 {
            seen[j] = true;
            orbit.push(j);
            j = shifted(j, w.shift as isize, m);
        }
        let starts: Vec<ElemId> = if i0 == 0 { vec![lab[0]] } else { labels.to_vec() };
        let mut options = Vec::new();
        for st in starts {
            let mut assign = Vec::with_capacity(orbit.len());
            let mut c = st;
            for &i in &orbit {
                assign.push(c);
                c = lab[s.mul(c, w.base[i]) as usize];
            }
            if c == st {
                options.push(assign);
            }
        }
        if options.is_empty() {
            return Vec::new();
        }
        out = out
            .into_iter()
            .flat_map(|t| {
                let orbit = &orbit;
                options.iter().map(move |a| {
                    let mut t = t.clone();
                    for (&i, &c) in orbit.iter().zip(a) {
                        t[i] = c;
                    }
                    t
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Explicit,
    Symbolic,
}

/// Outcome of checking that `(Π, 𝓗)` is definitely unbeatable: `Π` meets
/// every member (1), is covered (2) with each element in one member only (3),
/// and every maximal `K ∉ 𝓗` meets `Π` no more than any member does (4).
#[derive(Clone, Debug, Serialize)]
pub struct DefiniteReport {
    pub group: String,
    pub m: usize,
    pub mode: CheckMode,
    #[serde(serialize_with = "serde_big::big")]
    pub family_size: BigUint,
    #[serde(serialize_with = "serde_big::big")]
    pub pi_size: BigUint,
    pub conditions: Vec<ConditionResult>,
    #[serde(serialize_with = "serde_big::opt_big")]
    pub min_family_hits: Option<BigUint>,
    #[serde(serialize_with = "serde_big::opt_big")]
    pub max_competitor_hits: Option<BigUint>,
    pub max_competitor: Option<String>,
    #[serde(serialize_with = "serde_big::opt_big")]
    pub diagonal_bound: Option<BigUint>,
    pub samples_checked: usize,
    pub assumptions: Vec<String>,
    pub pass: bool,
    /// `σ(S ≀ C_m) ≥ |𝓗|` when the check passes.
    #[serde(serialize_with = "serde_big::opt_big")]
    pub lower_bound: Option<BigUint>,
}

impl DefiniteReport {
    pub fn condition(&self, id: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.id == id)
    }

    fn finish(mut self) -> Self {
        self.pass = self.conditions.iter().all(|c| c.pass);
        self.lower_bound = self.pass.then(|| self.family_size.clone());
        self
    }
}

/// Key of a wreath subgroup in hit tallies: `[maximal index, labels…]` for
/// product type, `[SOCLE, r]` for socle maximals.
type Key = Vec<u32>;
const SOCLE: u32 = u32::MAX;

#[derive(Default)]
struct Chunk {
    family: HashMap<Key, u64>,
    competitor: HashMap<Key, u64>,
    uncovered: Option<usize>,
    doubled: Option<(usize, Key, Key)>,
    shifts: BTreeSet<usize>,
}

/// Checks whether `(Π, 𝓗)` is definitely unbeatable, explicitly when
/// `m·|S|^m ≤ EXPLICIT_LIMIT` and symbolically otherwise. `removed` lists
/// members of `𝓗` to leave out, as keys from [`product_key`] / [`socle_key`].
pub fn check_definitely_unbeatable(inst: &IntroInstance<'_>, removed: &HashSet<Key>) -> Result<DefiniteReport> {
    let so = inst.group.table.order() as u64;
    let size = (so as f64).powi(inst.m as i32) * inst.m as f64;
    if size <= EXPLICIT_LIMIT as f64 {
        check_explicit(inst, removed)
    } else if removed.is_empty() {
        Ok(check_symbolic(inst, 64, 0x5eed))
    } else {
        Err(Error::Unsupported("removing members needs explicit mode".into()))
    }
}

/// Key of the product-type subgroup over maximal subgroup number `idx` of
/// `LoadedGroup::all_maximal_subgroups` with the given coset labels.
pub fn product_key(idx: usize, labels: &[ElemId]) -> Key {
    std::iter::once(idx as u32).chain(labels.iter().copied()).collect()
}

pub fn socle_key(r: u64) -> Key {
    vec![SOCLE, r as u32]
}

fn key_line(g: &LoadedGroup, key: &Key) -> String {
    if key[0] == SOCLE {
        return format!("socle{{{}}}", key[1]);
    }
    let all = g.all_maximal_subgroups();
    let mm = all[key[0] as usize];
    ProductTypeDescriptor::new(&g.table, mm.class_label, mm.conjugator, Arc::new(mm.subgroup.clone()), &key[2..])
        .map(|d| d.to_line(&g.table, &g.name))
        .unwrap_or_default()
}

pub fn check_explicit(inst: &IntroInstance<'_>, removed: &HashSet<Key>) -> Result<DefiniteReport> {
    let g = inst.group;
    let s = &g.table;
    let m = inst.m;
    let wg = WreathGroup::new(s, m)?;
    let order = wg.order().ok_or_else(|| Error::Unsupported("wreath order exceeds u64".into()))?;
    let pih = PiH::new(inst);
    let pi: Vec<WreathElement> = (0..order)
        .into_par_iter()
        .filter_map(|i| {
            let w = wg.element_at(i);
            pih.in_pi(s, &w).then_some(w)
        })
        .collect();

    let all = g.all_maximal_subgroups();
    let in_family: Vec<bool> = all.iter().map(|mm| inst.contains_member(mm.subgroup)).collect();
    let labs: Vec<Vec<ElemId>> = all.iter().map(|mm| coset_label_table(s, mm.subgroup)).collect();
    let cosets: Vec<Vec<ElemId>> = all.iter().map(|mm| mm.subgroup.right_coset_labels(s)).collect();
    let primes = pih.primes().to_vec();
    let is_family = |k: &Key| -> bool {
        !removed.contains(k) && (k[0] == SOCLE || in_family[k[0] as usize])
    };

    let chunks: Vec<Chunk> = pi
        .par_chunks(2048)
        .enumerate()
        .map(|(ci, chunk)| {
            let mut out = Chunk::default();
            for (j, w) in chunk.iter().enumerate() {
                let idx = ci * 2048 + j;
                out.shifts.insert(w.shift);
                let mut fam_keys: Vec<Key> = Vec::new();
                for (mi, lab) in labs.iter().enumerate() {
                    for t in containing_tuples(s, lab, &cosets[mi], w) {
                        let k = product_key(mi, &t);
                        if is_family(&k) {
                            fam_keys.push(k);
                        } else {
                            *out.competitor.entry(k).or_default() += 1;
                        }
                    }
                }
                for &r in &primes {
                    if w.shift as u64 % r == 0 {
                        let k = socle_key(r);
                        if is_family(&k) {
                            fam_keys.push(k);
                        } else {
                            *out.competitor.entry(k).or_default() += 1;
                        }
                    }
                }
                if fam_keys.is_empty() && out.uncovered.is_none() {
                    out.uncovered = Some(idx);
                }
                if fam_keys.len() > 1 && out.doubled.is_none() {
                    out.doubled = Some((idx, fam_keys[0].clone(), fam_keys[1].clone()));
                }
                for k in fam_keys {
                    *out.family.entry(k).or_default() += 1;
                }
            }
            out
        })
        .collect();

    let mut family: HashMap<Key, u64> = HashMap::new();
    let mut competitor: HashMap<Key, u64> = HashMap::new();
    let mut uncovered = None;
    let mut doubled = None;
    let mut shifts = BTreeSet::new();
    for c in chunks {
        for (k, v) in c.family {
            *family.entry(k).or_default() += v;
        }
        for (k, v) in c.competitor {
            *competitor.entry(k).or_default() += v;
        }
        uncovered = uncovered.or(c.uncovered);
        doubled = doubled.or(c.doubled);
        shifts.extend(c.shifts);
    }

    let removed_valid = removed.iter().filter(|k| is_valid_key(k, &in_family, &cosets, &labs, &primes, m)).count();
    let family_size = PiH::new(inst).family_size() - big(removed_valid);
    let describe = |w: &WreathElement| {
        let base: Vec<String> = w.base.iter().map(|&x| s.perm(x).to_string()).collect();
        format!("[{}] shift {}", base.join(", "), w.shift)
    };

    // (1): a member of 𝓗 with no hit, searched in canonical order
    let mut conditions = Vec::new();
    let all_hit = big(family.len()) == family_size;
    let w1 = if all_hit {
        None
    } else {
        first_unhit(&family, &in_family, &cosets, &primes, m, removed).map(|k| key_line(g, &k))
    };
    conditions.push(ConditionResult::new("1", all_hit, format!("{} of {} members meet Π", family.len(), family_size), w1));
    conditions.push(ConditionResult::new(
        "2",
        uncovered.is_none(),
        format!("{} elements of Π checked", pi.len()),
        uncovered.map(|i| describe(&pi[i])),
    ));
    conditions.push(ConditionResult::new(
        "3",
        doubled.is_none(),
        "each element of Π in at most one member".into(),
        doubled.map(|(i, a, b)| format!("{} in {} and {}", describe(&pi[i]), key_line(g, &a), key_line(g, &b))),
    ));

    let min_family = if all_hit { family.values().copied().min().unwrap_or(0) } else { 0 };
    let (max_key, max_comp) = competitor
        .iter()
        .map(|(k, &v)| (k.clone(), v))
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .map(|(k, v)| (Some(k), v))
        .unwrap_or((None, 0));
    let diagonal_bound = (m >= 2).then(|| {
        let l = smallest_prime_divisor(m as u64).expect("m ≥ 2") as usize;
        big(shifts.len()) * big(s.order()).pow((m / l) as u32)
    });
    let bound = diagonal_bound.clone().unwrap_or_default().max(BigUint::from(max_comp));
    conditions.push(ConditionResult::new(
        "4",
        BigUint::from(min_family) >= bound,
        format!("min over 𝓗 = {min_family}, max over maximal K outside 𝓗 ≤ {bound}"),
        None,
    ));

    let report = DefiniteReport {
        group: g.name.clone(),
        m,
        mode: CheckMode::Explicit,
        family_size,
        pi_size: big(pi.len()),
        conditions,
        min_family_hits: Some(BigUint::from(min_family)),
        max_competitor_hits: Some(BigUint::from(max_comp)),
        max_competitor: max_key.map(|k| key_line(g, &k)),
        diagonal_bound,
        samples_checked: pi.len(),
        assumptions: assumptions(m),
        pass: false,
        lower_bound: None,
    };
    Ok(report.finish())
}

fn assumptions(m: usize) -> Vec<String> {
    let mut a = vec!["the catalog lists every maximal subgroup class of S".to_string()];
    if m >= 2 {
        a.push(TRICHOTOMY.into());
        a.push("a diagonal-type maximal subgroup has order at most |S|^{m/l}".into());
    }
    a
}

fn is_valid_key(
    k: &Key,
    in_family: &[bool],
    cosets: &[Vec<ElemId>],
    labs: &[Vec<ElemId>],
    primes: &[u64],
    m: usize,
) -> bool {
    if k[0] == SOCLE {
        return k.len() == 2 && primes.contains(&(k[1] as u64));
    }
    let i = k[0] as usize;
    i < in_family.len()
        && in_family[i]
        && k.len() == m + 1
        && k[1] == labs[i][0]
        && k[2..].iter().all(|c| cosets[i].binary_search(c).is_ok())
}

fn first_unhit(
    hits: &HashMap<Key, u64>,
    in_family: &[bool],
    cosets: &[Vec<ElemId>],
    primes: &[u64],
    m: usize,
    removed: &HashSet<Key>,
) -> Option<Key> {
    for &r in primes {
        let k = socle_key(r);
        if !removed.contains(&k) && !hits.contains_key(&k) {
            return Some(k);
        }
    }
    for (i, cs) in cosets.iter().enumerate() {
        if !in_family[i] {
            continue;
        }
        let total = cs.len().pow(m as u32 - 1);
        for n in 0..total {
            let mut labels = vec![0; m];
            let mut rest = n;
            for pos in (1..m).rev() {
                labels[pos] = cs[rest % cs.len()];
                rest /= cs.len();
            }
            let k = product_key(i, &labels);
            if !removed.contains(&k) && !hits.contains_key(&k) {
                return Some(k);
            }
        }
    }
    None
}

/// Symbolic check: conditions (0)–(4) exactly, condition 4 by
/// `max(A, B_{Π₂}) ≤ min(C, D)`, and the membership constructions executed
/// on `samples` members of `𝓗` and elements of `Π`.
pub fn check_symbolic(inst: &IntroInstance<'_>, samples: usize, seed: u64) -> DefiniteReport {
    let g = inst.group;
    let s = &g.table;
    let m = inst.m;
    let intro = check_intro_conditions(inst, None);
    let pih = PiH::new(inst);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let structural = intro.structural_pass();
    let mut conditions = Vec::new();
    let mut checked = 0;

    // (1) x_i = g_i⁻¹ g_{i+1}, x_{m-1} = g_{m-1}⁻¹ σ lies in Π₁ and in the member
    let mut w1 = None;
    if structural {
        for _ in 0..samples {
            let f = &inst.family[rng.gen_range(0..inst.family.len())];
            let cs = f.subgroup.right_coset_labels(s);
            let gs: Vec<ElemId> = (1..m).map(|_| cs[rng.gen_range(0..cs.len())]).collect();
            let d = ProductTypeDescriptor::new(s, &f.class_label, f.conjugator, f.subgroup.clone(), &gs)
                .expect("valid ids");
            let sig: Vec<ElemId> = f.subgroup.members().iter().copied().filter(|&x| inst.sigma.contains(x as usize)).collect();
            let sigma = sig[rng.gen_range(0..sig.len())];
            let base: Vec<ElemId> = (0..m)
                .map(|i| {
                    let next = if i + 1 < m { d.coset_rep(i + 1) } else { sigma };
                    s.mul(s.inv(d.coset_rep(i)), next)
                })
                .collect();
            let w = WreathElement { base, shift: 1 % m };
            checked += 1;
            if !(pih.in_pi1(s, &w) && d.contains(s, &w)) {
                w1 = Some(d.to_line(s, &g.name));
                break;
            }
        }
    }
    conditions.push(ConditionResult::new(
        "1",
        structural && w1.is_none(),
        "conditions (0)-(4) hold and sampled constructions land in Π ∩ H".into(),
        w1,
    ));

    // (2), (3) sampled elements of Π: exactly one member of 𝓗 contains each
    let all = g.all_maximal_subgroups();
    let fam_idx: Vec<usize> = (0..all.len()).filter(|&i| inst.contains_member(all[i].subgroup)).collect();
    let labs: Vec<Vec<ElemId>> = fam_idx.iter().map(|&i| coset_label_table(s, all[i].subgroup)).collect();
    let cosets: Vec<Vec<ElemId>> = fam_idx.iter().map(|&i| all[i].subgroup.right_coset_labels(s)).collect();
    let sigma_list: Vec<ElemId> = inst.sigma.ones().map(|x| x as ElemId).collect();
    let sc = inst.sigma_by_class();
    let mut w23 = None;
    if structural {
        for j in 0..samples {
            let mut base: Vec<ElemId> = (0..m).map(|_| rng.gen_range(0..s.order() as ElemId)).collect();
            let shift;
            if j % 2 == 0 || m < 2 || sc.len() < 2 {
                let last = s.product(&base[..m - 1]);
                base[m - 1] = s.mul(s.inv(last), sigma_list[rng.gen_range(0..sigma_list.len())]);
                shift = 1 % m;
            } else {
                let r = pih.primes()[rng.gen_range(0..pih.primes().len())] as usize;
                shift = r % m;
                let (a, b) = loop {
                    let a = rng.gen_range(0..sc.len());
                    let b = rng.gen_range(0..sc.len());
                    if a != b && sc[a].1.count_ones(..) > 0 && sc[b].1.count_ones(..) > 0 {
                        break (a, b);
                    }
                };
                for (t, c) in [(0usize, a), (1usize, b)] {
                    let list: Vec<usize> = sc[c].1.ones().collect();
                    let target = list[rng.gen_range(0..list.len())] as ElemId;
                    let len = m / r;
                    let mut p = s.identity();
                    for q in 0..len - 1 {
                        p = s.mul(p, base[shifted(t, (q * shift) as isize, m)]);
                    }
                    base[shifted(t, ((len - 1) * shift) as isize, m)] = s.mul(s.inv(p), target);
                }
            }
            let w = WreathElement { base, shift };
            checked += 1;
            let mut count = pih.primes().iter().filter(|&&r| shift as u64 % r == 0).count();
            for (li, lab) in labs.iter().enumerate() {
                count += containing_tuples(s, lab, &cosets[li], &w).len();
            }
            if !pih.in_pi(s, &w) || count != 1 {
                w23 = Some(format!("shift {} base {:?}: {} members", w.shift, w.base, count));
                break;
            }
        }
    }
    conditions.push(ConditionResult::new(
        "2",
        structural && w23.is_none(),
        "Σ covered by 𝓜 and sampled elements of Π lie in a member".into(),
        w23.clone(),
    ));
    conditions.push(ConditionResult::new(
        "3",
        structural && w23.is_none(),
        "Σ meets each member at most once and sampled elements of Π lie in exactly one member".into(),
        w23,
    ));
    let four = m >= 2 && intro.pi2_safe();
    conditions.push(ConditionResult::new(
        "4",
        four,
        format!(
            "max(A, B with Π₂) = {} ≤ min(C, D) = {}",
            intro.a.clone().unwrap_or_default().max(intro.b_with_pi2.clone().unwrap_or_default()),
            intro.c.clone().unwrap_or_default().min(intro.d.clone().unwrap_or_default())
        ),
        None,
    ));
    DefiniteReport {
        group: g.name.clone(),
        m,
        mode: CheckMode::Symbolic,
        family_size: pih.family_size(),
        pi_size: pih.pi_size_formula(),
        conditions,
        min_family_hits: intro.d.clone(),
        max_competitor_hits: intro.b_with_pi2.clone(),
        max_competitor: intro.b_witness.clone(),
        diagonal_bound: intro.a.clone(),
        samples_checked: checked,
        assumptions: assumptions(m),
        pass: false,
        lower_bound: None,
    }
    .finish()
}

/// Bounds on `σ(S ≀ C_m)` from `𝓜` (lower) and a cover `N` of `S` (upper).
#[derive(Clone, Debug, Serialize)]
pub struct MainBounds {
    #[serde(serialize_with = "serde_big::big")]
    pub lower: BigUint,
    #[serde(serialize_with = "serde_big::big")]
    pub upper: BigUint,
}

/// Lower bound `α(m) + Σ_{M ∈ 𝓜}|S:M|^{m−1}` and upper bound
/// `α(m) + Σ_{M ∈ N}|S:M|^{m−1}`. Requires conditions (0)–(5) and that `N`
/// covers `S`; at `m = 1` the bounds are `|𝓜|` and `|N|` and only (0)–(4)
/// are required.
pub fn theorem_main1_bounds(inst: &IntroInstance<'_>, cover: &[SubgroupHandle]) -> Result<MainBounds> {
    let report = check_intro_conditions(inst, None);
    let ok = if inst.m == 1 { report.structural_pass() } else { report.pass };
    if !ok {
        let failed: Vec<&str> = report.conditions.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect();
        return Err(Error::Hypothesis(format!("conditions {} fail", failed.join(","))));
    }
    let s = &inst.group.table;
    let mut all = FixedBitSet::with_capacity(s.order());
    all.insert_range(..);
    if !verify_group_cover(s, cover.iter(), &all).covered {
        return Err(Error::NotACover("N does not cover S".into()));
    }
    let so = s.order();
    let count = |orders: &mut dyn Iterator<Item = usize>| -> BigUint {
        let sum: BigUint = orders.map(|o| big(so / o).pow(inst.m as u32 - 1)).sum();
        sum + big(alpha(inst.m as u64))
    };
    Ok(MainBounds {
        lower: count(&mut inst.family.iter().map(|f| f.subgroup.order())),
        upper: count(&mut cover.iter().map(|h| h.order())),
    })
}

/// Elements of `S` whose order lies in `orders`.
pub fn sigma_by_orders(s: &GroupTable, orders: &[u32]) -> FixedBitSet {
    s.bitset(s.ids().filter(|&x| orders.contains(&s.element_order(x))))
}

/// For `S = PSL(2,p)` acting on the projective line: all elements of order
/// `p`, and the elements of order `(p+1)/2` with no fixed point.
pub fn psl2_sigma(s: &GroupTable, p: u32) -> FixedBitSet {
    let half = (p + 1) / 2;
    s.bitset(s.ids().filter(|&x| {
        let o = s.element_order(x);
        o == p || (o == half && s.images(x).iter().enumerate().all(|(i, &y)| i != y as usize))
    }))
}

impl MainBounds {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}
