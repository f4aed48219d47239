//! Subgroups as element-id sets, their conjugacy classes, and exhaustive
//! enumeration of all subgroup classes of a small group.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{ElemId, GroupTable};

/// Default order cap for [`all_subgroup_classes`].
pub const DEFAULT_LATTICE_CAP: usize = 10_000;

/// A subgroup, identified by its sorted member ids.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    members: Vec<ElemId>,
    set: FixedBitSet,
    generators: Vec<ElemId>,
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for SubgroupHandle {}

impl Hash for SubgroupHandle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for SubgroupHandle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubgroupHandle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

impl SubgroupHandle {
    pub fn trivial(g: &GroupTable) -> Self {
        let mut set = FixedBitSet::with_capacity(g.order());
        set.insert(0);
        SubgroupHandle { members: vec![0], set, generators: Vec::new() }
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(g: &GroupTable) -> Self {
        let mut set = FixedBitSet::with_capacity(g.order());
        set.insert_range(..);
        SubgroupHandle { members: g.ids().collect(), set, generators: g.generators().to_vec() }
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(g: &GroupTable, gens: &[ElemId]) -> Result<Self> {
        let mut h = SubgroupHandle::trivial(g);
        for &x in gens {
            g.check_id(x)?;
            h = h.extend(g, x);
        }
        Ok(h)
    }

    /// `⟨self, x⟩`, built as a union of right cosets of `self`.
    pub fn extend(&self, g: &GroupTable, x: ElemId) -> SubgroupHandle {
        if self.contains(x) {
            return self.clone();
        }
        let mut gens = self.generators.clone();
        gens.push(x);
        let mut set = self.set.clone();
        let mut members = self.members.clone();
        let mut reps = vec![g.identity()];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            i += 1;
            for &s in &gens {
                let y = g.mul(r, s);
                if !set.contains(y as usize) {
                    for &h in &self.members {
                        let z = g.mul(h, y);
                        set.insert(z as usize);
                        members.push(z);
                    }
                    reps.push(y);
                }
            }
        }
        members.sort_unstable();
        SubgroupHandle { members, set, generators: gens }
    }

    /// Builds a handle from an element set that is known to be a subgroup.
    /// Closure is re-checked against `generators`.
    pub fn from_members(g: &GroupTable, mut members: Vec<ElemId>, generators: Vec<ElemId>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let closure = SubgroupHandle::closure(g, &generators)?;
        if closure.members != members {
            return Err(Error::InvalidPermutation(
                "member set differs from the closure of its generators".into(),
            ));
        }
        Ok(closure)
    }

    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn set(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: ElemId) -> bool {
        self.set.contains(x as usize)
    }

    /// `h^s = s⁻¹ h s`.
    pub fn conjugate(&self, g: &GroupTable, s: ElemId) -> SubgroupHandle {
        let mut members: Vec<ElemId> = self.members.iter().map(|&x| g.conj(x, s)).collect();
        members.sort_unstable();
        let set = g.bitset(members.iter().copied());
        let generators = self.generators.iter().map(|&x| g.conj(x, s)).collect();
        SubgroupHandle { members, set, generators }
    }

    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> bool {
        self.set.is_subset(&other.set)
    }

    /// Number of members of `ids` lying in this subgroup.
    pub fn count_in(&self, ids: &FixedBitSet) -> usize {
        self.set.intersection_count(ids)
    }

    /// Right cosets `H g`, each labelled by its least element id, in label order.
    pub fn right_coset_labels(&self, g: &GroupTable) -> Vec<ElemId> {
        let mut covered = FixedBitSet::with_capacity(g.order());
        let mut labels = Vec::new();
        for x in g.ids() {
            if covered.contains(x as usize) {
                continue;
            }
            labels.push(x);
            for &h in &self.members {
                covered.insert(g.mul(h, x) as usize);
            }
        }
        labels
    }

    /// Least element of the right coset `H x`.
    pub fn right_coset_label(&self, g: &GroupTable, x: ElemId) -> ElemId {
        self.members.iter().map(|&h| g.mul(h, x)).min().expect("nonempty")
    }
}

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: SubgroupHandle,
    /// All distinct conjugates, sorted by canonical key.
    pub conjugates: Vec<SubgroupHandle>,
    /// `conjugates[i] = representative^{conjugators[i]}`.
    pub conjugators: Vec<ElemId>,
}

impl SubgroupClass {
    pub fn class_size(&self) -> usize {
        self.conjugates.len()
    }

    pub fn subgroup_order(&self) -> usize {
        self.representative.order()
    }

    pub fn contains_conjugate(&self, h: &SubgroupHandle) -> bool {
        self.conjugates.binary_search(h).is_ok()
    }

    pub fn position(&self, h: &SubgroupHandle) -> Option<usize> {
        self.conjugates.binary_search(h).ok()
    }
}

/// All conjugates `h^s`, found as the orbit of `h` under conjugation by the
/// generators of `g`.
pub fn conjugate_class(g: &GroupTable, h: &SubgroupHandle) -> SubgroupClass {
    let gens: Vec<ElemId> = if g.generators().is_empty() { g.ids().collect() } else { g.generators().to_vec() };
    let mut seen: HashSet<Vec<ElemId>> = HashSet::new();
    let mut orbit = vec![(h.clone(), g.identity())];
    seen.insert(h.members.clone());
    let mut i = 0;
    while i < orbit.len() {
        for &s in &gens {
            let c = orbit[i].0.conjugate(g, s);
            if seen.insert(c.members.clone()) {
                let t = g.mul(orbit[i].1, s);
                orbit.push((c, t));
            }
        }
        i += 1;
    }
    orbit.sort_by(|a, b| a.0.cmp(&b.0));
    let (conjugates, conjugators) = orbit.into_iter().unzip();
    SubgroupClass { representative: h.clone(), conjugates, conjugators }
}

/// Every subgroup of `g` up to conjugacy, sorted by (order, least conjugate).
///
/// Classes are discovered by extending class representatives by single
/// elements, starting from the trivial subgroup. Every subgroup `K ≠ 1` is
/// `⟨H, x⟩` for a maximal subgroup `H` of `K`, so the search is complete.
/// Candidates `x` are reduced modulo `H`-cosets, generators of `⟨x⟩`, and
/// conjugation by `N(H)`, which preserve the class of `⟨H, x⟩`.
pub fn all_subgroup_classes(g: &GroupTable, cap: usize) -> Result<Vec<SubgroupClass>> {
    if g.order() > cap {
        return Err(Error::OrderCap { order: g.order(), cap });
    }
    let mut known: HashSet<FixedBitSet> = HashSet::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let register = |h: SubgroupHandle, known: &mut HashSet<FixedBitSet>, classes: &mut Vec<SubgroupClass>| {
        let mut class = conjugate_class(g, &h);
        for c in &class.conjugates {
            known.insert(c.set.clone());
        }
        // canonical representative: the least conjugate
        let c0 = class.conjugators[0];
        if c0 != g.identity() {
            class.representative = class.conjugates[0].clone();
            let c0inv = g.inv(c0);
            for c in class.conjugators.iter_mut() {
                *c = g.mul(c0inv, *c);
            }
        }
        classes.push(class);
        classes.len() - 1
    };

    let trivial = SubgroupHandle::trivial(g);
    let idx = register(trivial, &mut known, &mut classes);
    queue.push_back(idx);

    while let Some(ci) = queue.pop_front() {
        let h = classes[ci].representative.clone();
        if h.order() == g.order() {
            continue;
        }
        let normalizer = g.normalizer(&h);
        let mut done = h.set.clone();
        for x in g.ids() {
            if done.contains(x as usize) {
                continue;
            }
            // mark every y with ⟨H, y⟩ conjugate to ⟨H, x⟩ under N(H)
            let ord = g.element_order(x) as u64;
            let mut powers = Vec::new();
            for j in 1..ord {
                if num_integer::gcd(j, ord) == 1 {
                    powers.push(g.pow(x, j));
                }
            }
            for &n in &normalizer {
                for &y in &powers {
                    let t = g.conj(y, n);
                    if !done.contains(t as usize) {
                        for &hh in h.members() {
                            done.insert(g.mul(hh, t) as usize);
                        }
                    }
                }
            }
            let k = h.extend(g, x);
            if !known.contains(&k.set) {
                let idx = register(k, &mut known, &mut classes);
                queue.push_back(idx);
            }
        }
    }

    classes.sort_by(|a, b| {
        (a.subgroup_order(), &a.conjugates[0]).cmp(&(b.subgroup_order(), &b.conjugates[0]))
    });
    Ok(classes)
}

/// Indices of the classes whose subgroups are maximal among proper subgroups.
pub fn maximal_class_indices(g: &GroupTable, classes: &[SubgroupClass]) -> Vec<usize> {
    (0..classes.len())
        .filter(|&i| {
            let c = &classes[i];
            let ord = c.subgroup_order();
            ord < g.order()
                && !classes.iter().any(|d| {
                    let dord = d.subgroup_order();
                    dord > ord
                        && dord < g.order()
                        && dord % ord == 0
                        && d.conjugates.iter().any(|k| c.representative.is_subgroup_of(k))
                })
        })
        .collect()
}

/// Finds, for each subgroup in `classes`, the index of its class: lookup
/// table from canonical member list to class index.
pub fn class_index(classes: &[SubgroupClass]) -> HashMap<Vec<ElemId>, usize> {
    let mut map = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        for h in &c.conjugates {
            map.insert(h.members.clone(), i);
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn a5() -> GroupTable {
        GroupTable::alternating(5).unwrap()
    }

    fn id(g: &GroupTable, s: &str) -> ElemId {
        g.id_of(&Permutation::parse_cycles(s, g.degree()).unwrap()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let g = a5();
        let t = SubgroupHandle::closure(&g, &[0]).unwrap();
        assert_eq!(t.order(), 1);
        let c = id(&g, "(1 2 3 4 5)");
        let inv = id(&g, "(2 5)(3 4)");
        // brute-force dihedral closure: words in c and inv until stable
        let mut brute: HashSet<ElemId> = [0].into_iter().collect();
        loop {
            let before = brute.len();
            let cur: Vec<_> = brute.iter().copied().collect();
            for x in cur {
                brute.insert(g.mul(x, c));
                brute.insert(g.mul(x, inv));
            }
            if brute.len() == before {
                break;
            }
        }
        let d10 = SubgroupHandle::closure(&g, &[c, inv]).unwrap();
        assert_eq!(d10.order(), 10);
        assert_eq!(brute.len(), 10);
        assert!(d10.members().iter().all(|x| brute.contains(x)));
        assert!(matches!(SubgroupHandle::closure(&g, &[999]), Err(Error::InvalidId(999))));
    }

    #[test]
    fn subgroups_are_closed_and_lagrange_holds() {
        let g = a5();
        let h = SubgroupHandle::closure(&g, &[id(&g, "(1 2 3)"), id(&g, "(1 2)(4 5)")]).unwrap();
        for &a in h.members() {
            assert!(h.contains(g.inv(a)));
            for &b in h.members() {
                assert!(h.contains(g.mul(a, b)));
            }
        }
        assert_eq!(g.order() % h.order(), 0);
    }

    #[test]
    fn conjugate_class_sizes() {
        let g = a5();
        let a4 = SubgroupHandle::closure(&g, &[id(&g, "(1 2 3)"), id(&g, "(1 2)(3 4)")]).unwrap();
        assert_eq!(a4.order(), 12);
        let class = conjugate_class(&g, &a4);
        assert_eq!(class.class_size(), 5);
        assert_eq!(class.class_size() * g.normalizer(&a4).len(), g.order());
        let whole = SubgroupHandle::whole(&g);
        assert_eq!(conjugate_class(&g, &whole).class_size(), 1);
    }

    #[test]
    fn a5_subgroup_lattice() {
        let g = a5();
        let classes = all_subgroup_classes(&g, DEFAULT_LATTICE_CAP).unwrap();
        let orders: Vec<usize> = classes.iter().map(|c| c.subgroup_order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 10, 12, 60]);
        for c in &classes {
            assert_eq!(c.class_size() * g.normalizer(&c.representative).len(), g.order());
            for (h, &s) in c.conjugates.iter().zip(&c.conjugators) {
                assert_eq!(&c.representative.conjugate(&g, s), h);
            }
        }
        // oracle: closures of all pairs of elements give every subgroup of A5
        // (every subgroup of A5 is 2-generated)
        let mut brute: HashSet<Vec<ElemId>> = HashSet::new();
        for a in g.ids() {
            for b in g.ids() {
                brute.insert(SubgroupHandle::closure(&g, &[a, b]).unwrap().members().to_vec());
            }
        }
        let total: usize = classes.iter().map(|c| c.class_size()).sum();
        assert_eq!(total, brute.len());
        assert_eq!(total, 59);
        let max: Vec<usize> =
            maximal_class_indices(&g, &classes).into_iter().map(|i| classes[i].subgroup_order()).collect();
        assert_eq!(max, vec![6, 10, 12]);
    }

    #[test]
    fn cyclic_lattice_and_cap() {
        let c3 = GroupTable::enumerate(&[Permutation::parse_cycles("(1 2 3)", 3).unwrap()]).unwrap();
        assert_eq!(all_subgroup_classes(&c3, 100).unwrap().len(), 2);
        assert!(matches!(all_subgroup_classes(&a5(), 10), Err(Error::OrderCap { order: 60, cap: 10 })));
    }

    #[test]
    fn right_cosets() {
        let g = a5();
        let a4 = SubgroupHandle::closure(&g, &[id(&g, "(1 2 3)"), id(&g, "(1 2)(3 4)")]).unwrap();
        let labels = a4.right_coset_labels(&g);
        assert_eq!(labels.len(), 5);
        for &l in &labels {
            assert_eq!(a4.right_coset_label(&g, l), l);
        }
    }
}
