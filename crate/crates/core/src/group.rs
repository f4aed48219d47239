//! Fully enumerated permutation groups.
//!
//! Elements are numbered by the lexicographic order of their image tables, so
//! the identity is always element 0 and numbering does not depend on the order
//! in which the closure discovered them.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::{CycleType, Permutation};
use crate::subgroup::SubgroupHandle;

/// Element identifier inside a [`GroupTable`].
pub type ElemId = u32;

/// Default budget of element products for [`GroupTable::enumerate`].
pub const DEFAULT_PRODUCT_CAP: u64 = 10_000_000;

const DENSE_LOOKUP_LIMIT: usize = 1 << 22;

enum Lookup {
    Dense { table: Vec<u32> },
    Hashed(HashMap<Vec<u16>, u32>),
}

pub struct GroupTable {
    degree: usize,
    points: Vec<u16>,
    base: Vec<usize>,
    lookup: Lookup,
    inverses: Vec<ElemId>,
    orders: Vec<u32>,
    generators: Vec<ElemId>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("base", &self.base)
            .finish()
    }
}

impl GroupTable {
    /// Breadth-first closure of `generators` with the default product budget.
    pub fn enumerate(generators: &[Permutation]) -> Result<Self> {
        Self::enumerate_with_cap(generators, DEFAULT_PRODUCT_CAP)
    }

    pub fn enumerate_with_cap(generators: &[Permutation], cap: u64) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidPermutation("empty generator list".into()))?;
        let degree = first.degree();
        if degree > u16::MAX as usize {
            return Err(Error::Unsupported(format!("degree {degree} too large")));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let gens: Vec<Vec<u16>> =
            generators.iter().map(|g| g.images().iter().map(|&x| x as u16).collect()).collect();
        let identity: Vec<u16> = (0..degree as u16).collect();
        let mut seen: HashSet<Vec<u16>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        let mut products: u64 = 0;
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                products += 1;
                if products > cap {
                    return Err(Error::CapExceeded(cap));
                }
                // x · g = x ∘ g
                let y: Vec<u16> = g.iter().map(|&p| x[p as usize]).collect();
                if !seen.contains(&y) {
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Vec<u16>> = seen.into_iter().collect();
        elements.sort_unstable();
        let mut table = Self::from_sorted(degree, elements)?;
        table.generators = gens
            .iter()
            .map(|g| table.lookup_images(g).expect("generator is in its own closure"))
            .collect();
        Ok(table)
    }

    /// Symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n < 2 {
            return Self::enumerate(&[Permutation::identity(n.max(1))]);
        }
        let cycle: Vec<u32> = (0..n as u32).collect();
        Self::enumerate(&[
            Permutation::from_cycles(n, &[cycle])?,
            Permutation::from_cycles(n, &[vec![0, 1]])?,
        ])
    }

    /// Alternating group on `n ≥ 3` points, generated by 3-cycles `(1 2 k)`.
    pub fn alternating(n: usize) -> Result<Self> {
        if n < 3 {
            return Self::enumerate(&[Permutation::identity(n.max(1))]);
        }
        let gens: Vec<Permutation> = (2..n as u32)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]))
            .collect::<Result<_>>()?;
        Self::enumerate(&gens)
    }

    fn from_sorted(degree: usize, elements: Vec<Vec<u16>>) -> Result<Self> {
        let order = elements.len();
        let base = choose_base(degree, &elements);
        let mut points = Vec::with_capacity(order * degree);
        for e in &elements {
            points.extend_from_slice(e);
        }
        let dense_size = degree.checked_pow(base.len() as u32).filter(|&s| s <= DENSE_LOOKUP_LIMIT);
        let lookup = match dense_size {
            Some(size) => {
                let mut table = vec![u32::MAX; size];
                for (id, e) in elements.iter().enumerate() {
                    table[dense_key(degree, &base, e)] = id as u32;
                }
                Lookup::Dense { table }
            }
            None => {
                let mut map = HashMap::with_capacity(order);
                for (id, e) in elements.iter().enumerate() {
                    map.insert(base.iter().map(|&b| e[b]).collect::<Vec<u16>>(), id as u32);
                }
                Lookup::Hashed(map)
            }
        };
        let mut table = GroupTable {
            degree,
            points,
            base,
            lookup,
            inverses: Vec::new(),
            orders: Vec::new(),
            generators: Vec::new(),
        };
        let mut inverses = Vec::with_capacity(order);
        let mut orders = Vec::with_capacity(order);
        for id in 0..order as u32 {
            let p = table.perm(id);
            let inv: Vec<u16> = p.inverse().images().iter().map(|&x| x as u16).collect();
            inverses.push(table.lookup_images(&inv).ok_or_else(|| {
                Error::InvalidPermutation("element set is not closed under inverses".into())
            })?);
            orders.push(p.order() as u32);
        }
        table.inverses = inverses;
        table.orders = orders;
        Ok(table)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    /// Ids of the generators this table was enumerated from.
    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn images(&self, id: ElemId) -> &[u16] {
        let start = id as usize * self.degree;
        &self.points[start..start + self.degree]
    }

    /// Raw image tables of all elements, concatenated in id order.
    pub fn image_bytes(&self) -> &[u16] {
        &self.points
    }

    pub fn perm(&self, id: ElemId) -> Permutation {
        Permutation::from_images_unchecked(self.images(id).iter().map(|&x| x as u32).collect())
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> {
        0..self.order() as ElemId
    }

    pub fn check_id(&self, id: ElemId) -> Result<()> {
        if (id as usize) < self.order() {
            Ok(())
        } else {
            Err(Error::InvalidId(id))
        }
    }

    fn lookup_images(&self, images: &[u16]) -> Option<ElemId> {
        let id = match &self.lookup {
            Lookup::Dense { table } => {
                let v = table[dense_key(self.degree, &self.base, images)];
                if v == u32::MAX {
                    return None;
                }
                v
            }
            Lookup::Hashed(map) => {
                let key: Vec<u16> = self.base.iter().map(|&b| images[b]).collect();
                *map.get(&key)?
            }
        };
        (self.images(id) == images).then_some(id)
    }

    /// Id of `p`, or `None` if `p` is not in the group.
    pub fn id_of(&self, p: &Permutation) -> Option<ElemId> {
        if p.degree() != self.degree {
            return None;
        }
        let images: Vec<u16> = p.images().iter().map(|&x| x as u16).collect();
        self.lookup_images(&images)
    }

    /// The product `a · b = a ∘ b`.
    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let ai = self.images(a);
        let bi = self.images(b);
        match &self.lookup {
            Lookup::Dense { table } => {
                let mut key = 0usize;
                for &p in &self.base {
                    key = key * self.degree + ai[bi[p] as usize] as usize;
                }
                table[key]
            }
            Lookup::Hashed(map) => {
                let key: Vec<u16> = self.base.iter().map(|&p| ai[bi[p] as usize]).collect();
                map[&key]
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inverses[a as usize]
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: ElemId, g: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: ElemId, e: u64) -> ElemId {
        let mut acc = self.identity();
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, id: ElemId) -> u32 {
        self.orders[id as usize]
    }

    /// Product of a word of element ids, left to right.
    pub fn product(&self, word: &[ElemId]) -> ElemId {
        word.iter().fold(self.identity(), |acc, &x| self.mul(acc, x))
    }

    /// Ids of all elements of order exactly `k`, ascending.
    pub fn elements_with_order(&self, k: u32) -> Vec<ElemId> {
        self.ids().filter(|&id| self.orders[id as usize] == k).collect()
    }

    /// Ids of all elements with cycle type `t`, ascending.
    pub fn elements_with_cycle_type(&self, t: &CycleType) -> Vec<ElemId> {
        self.ids().filter(|&id| &self.perm(id).cycle_type() == t).collect()
    }

    /// Bitset over element ids containing exactly `ids`.
    pub fn bitset(&self, ids: impl IntoIterator<Item = ElemId>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.order());
        for id in ids {
            set.insert(id as usize);
        }
        set
    }

    /// Elements `s` with `h^s = h`.
    pub fn normalizer(&self, h: &SubgroupHandle) -> Vec<ElemId> {
        self.ids()
            .filter(|&s| h.generators().iter().all(|&x| h.contains(self.conj(x, s))))
            .collect()
    }

    /// True when every generator of the table commutes with every other one,
    /// i.e. the group is abelian.
    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True if some element generates the whole group.
    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().any(|&o| o as usize == self.order())
    }
}

fn dense_key(degree: usize, base: &[usize], images: &[u16]) -> usize {
    base.iter().fold(0usize, |acc, &b| acc * degree + images[b] as usize)
}

/// Picks points in increasing order until their images separate all elements.
fn choose_base(degree: usize, elements: &[Vec<u16>]) -> Vec<usize> {
    let mut base = Vec::new();
    let mut distinct = 1usize;
    for p in 0..degree {
        if distinct == elements.len() {
            break;
        }
        let mut candidate = base.clone();
        candidate.push(p);
        let count = elements
            .iter()
            .map(|e| candidate.iter().map(|&b| e[b]).collect::<Vec<u16>>())
            .collect::<HashSet<_>>()
            .len();
        if count > distinct {
            base = candidate;
            distinct = count;
        }
    }
    if base.is_empty() {
        base.push(0);
    }
    base
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn a5_from_five_cycle_and_three_cycle() {
        let g = GroupTable::enumerate(&[p("(1 2 3 4 5)", 5), p("(1 2 3)", 5)]).unwrap();
        // orbit-stabilizer: A5 is 3-transitive on 5 points with trivial 3-point stabilizer
        assert_eq!(g.order(), 5 * 4 * 3);
        assert!(g.ids().all(|id| g.perm(id).is_even()));
    }

    #[test]
    fn cyclic_of_order_three() {
        let g = GroupTable::enumerate(&[p("(1 2 3)", 3)]).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_cyclic());
    }

    #[test]
    fn identity_is_zero_and_ids_are_sorted() {
        let g = GroupTable::symmetric(4).unwrap();
        assert!(g.perm(0).is_identity());
        for id in 1..g.order() as u32 {
            assert!(g.images(id - 1) < g.images(id));
        }
    }

    #[test]
    fn mul_matches_composition() {
        let g = GroupTable::symmetric(5).unwrap();
        for a in g.ids().step_by(7) {
            for b in g.ids().step_by(5) {
                let expect = Permutation::compose(&g.perm(a), &g.perm(b)).unwrap();
                assert_eq!(g.perm(g.mul(a, b)), expect);
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn cap_and_degree_errors() {
        assert!(matches!(
            GroupTable::enumerate_with_cap(&[p("(1 2 3 4 5)", 5), p("(1 2)", 5)], 50),
            Err(Error::CapExceeded(50))
        ));
        assert!(matches!(
            GroupTable::enumerate(&[p("(1 2)", 2), p("(1 2 3)", 3)]),
            Err(Error::DegreeMismatch(2, 3))
        ));
        assert!(GroupTable::enumerate(&[]).is_err());
    }

    #[test]
    fn element_orders_partition_and_divide_group_order() {
        let g = GroupTable::alternating(6).unwrap();
        let total: usize = (1..=g.order() as u32).map(|k| g.elements_with_order(k).len()).sum();
        assert_eq!(total, g.order());
        for id in g.ids() {
            assert_eq!(g.order() % g.element_order(id) as usize, 0);
        }
    }

    #[test]
    fn cycle_type_counts() {
        let a5 = GroupTable::alternating(5).unwrap();
        let five = CycleType::new(vec![5]).unwrap();
        let brute = a5.ids().filter(|&id| a5.perm(id).cycle_type().lengths() == [5]).count();
        assert_eq!(a5.elements_with_cycle_type(&five).len(), brute);
        assert_eq!(brute, 24);
        let trivial = CycleType::new(vec![1; 5]).unwrap();
        assert_eq!(a5.elements_with_cycle_type(&trivial), vec![0]);

        let a8 = GroupTable::alternating(8).unwrap();
        let t = CycleType::new(vec![7, 1]).unwrap();
        let count = a8.ids().filter(|&id| a8.perm(id).cycle_type() == t).count();
        assert_eq!(a8.elements_with_cycle_type(&t).len(), count);
        assert_eq!(count, 8 * 720);
    }
}
