//! The wreath product `G = S ≀ C_m` and the subgroups of `G` used to cover it.
//!
//! An element `(x_0, …, x_{m-1})γ^k` is stored as a base tuple of ids of `S`
//! plus a shift `k mod m`. Coordinates are 0-based; the product is
//!
//! ```text
//! (x, a) · (y, b) = (z, a + b),   z_j = x_j · y_{j+a}
//! ```
//!
//! which is the unique convention under which `(x)γ^k` normalizes
//! `M^{g_0} × … × M^{g_{m-1}}` exactly when `x_{i-k} ∈ g_{i-k}⁻¹ M g_i` for all
//! `i`. Equivalently it is the permutation `B(x) ∘ Γ^k` on `m·n` points with
//! `B(x)(i, p) = (i, x_i(p))` and `Γ(i, p) = (i − 1, p)`.

use std::fmt::Write as _;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::LoadedGroup;
use crate::error::{Error, Result};
use crate::group::{ElemId, GroupTable};
use crate::numtheory::{prime_divisors, smallest_prime_divisor};
use crate::perm::Permutation;
use crate::subgroup::SubgroupHandle;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WreathElement {
    pub base: Vec<ElemId>,
    pub shift: usize,
}

/// `(i + k) mod m` for a possibly negative offset. Every subscript shift in
/// this module goes through here.
#[inline]
pub fn shifted(i: usize, k: isize, m: usize) -> usize {
    (i as isize + k).rem_euclid(m as isize) as usize
}

/// `S ≀ C_m` over an enumerated base group.
#[derive(Clone, Copy)]
pub struct WreathGroup<'a> {
    s: &'a GroupTable,
    m: usize,
}

impl<'a> WreathGroup<'a> {
    pub fn new(s: &'a GroupTable, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Unsupported("wreath exponent m must be at least 1".into()));
        }
        Ok(WreathGroup { s, m })
    }

    pub fn base_group(&self) -> &'a GroupTable {
        self.s
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement { base: vec![self.s.identity(); self.m], shift: 0 }
    }

    /// `m · |S|^m`, exact.
    pub fn order_big(&self) -> BigUint {
        BigUint::from(self.s.order()).pow(self.m as u32) * self.m
    }

    /// `m · |S|^m` if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        u64::try_from(self.order_big()).ok()
    }

    fn check(&self, w: &WreathElement) -> Result<()> {
        if w.base.len() != self.m {
            return Err(Error::ExponentMismatch(w.base.len(), self.m));
        }
        Ok(())
    }

    pub fn element(&self, base: Vec<ElemId>, shift: usize) -> Result<WreathElement> {
        let w = WreathElement { base, shift: shift % self.m };
        self.check(&w)?;
        for &x in &w.base {
            self.s.check_id(x)?;
        }
        Ok(w)
    }

    pub fn mul(&self, a: &WreathElement, b: &WreathElement) -> Result<WreathElement> {
        self.check(a)?;
        self.check(b)?;
        let base = (0..self.m)
            .map(|j| self.s.mul(a.base[j], b.base[shifted(j, a.shift as isize, self.m)]))
            .collect();
        Ok(WreathElement { base, shift: (a.shift + b.shift) % self.m })
    }

    pub fn inv(&self, a: &WreathElement) -> WreathElement {
        let base = (0..self.m)
            .map(|i| self.s.inv(a.base[shifted(i, -(a.shift as isize), self.m)]))
            .collect();
        WreathElement { base, shift: (self.m - a.shift) % self.m }
    }

    /// The element with index `idx` in `0..m·|S|^m`: the shift is the most
    /// significant digit, then coordinates `m−1, …, 0` in base `|S|`.
    pub fn element_at(&self, idx: u64) -> WreathElement {
        let n = self.s.order() as u64;
        let mut rest = idx;
        let mut base = Vec::with_capacity(self.m);
        for _ in 0..self.m {
            base.push((rest % n) as ElemId);
            rest /= n;
        }
        WreathElement { base, shift: rest as usize }
    }

    pub fn index_of(&self, w: &WreathElement) -> u64 {
        let n = self.s.order() as u64;
        w.base.iter().rev().fold(w.shift as u64, |acc, &x| acc * n + x as u64)
    }

    /// The permutation `B(x) ∘ Γ^k` on `m · degree(S)` points; point `(i, p)`
    /// is `i · degree + p`.
    pub fn to_permutation(&self, w: &WreathElement) -> Permutation {
        let n = self.s.degree();
        let mut images = vec![0u32; n * self.m];
        for i in 0..self.m {
            // Γ^k(i, p) = (i − k, p), then B(x) acts in coordinate i − k
            let j = shifted(i, -(w.shift as isize), self.m);
            let xj = self.s.images(w.base[j]);
            for p in 0..n {
                images[i * n + p] = (j * n + xj[p] as usize) as u32;
            }
        }
        Permutation::from_images(images).expect("wreath element realizes a permutation")
    }
}

/// `N_G(M^{g_0} × … × M^{g_{m-1}})` with `g_0 = 1`, stored by the right-coset
/// labels `M g_i` (least element id of the coset). Equal labels give equal
/// subgroups.
#[derive(Clone, Debug)]
pub struct ProductTypeDescriptor {
    pub class_label: String,
    /// `M = R^conjugator` for the class representative `R`.
    pub conjugator: ElemId,
    subgroup: Arc<SubgroupHandle>,
    /// Coset labels for all `m` coordinates; `labels[0]` is the label of `M`.
    labels: Vec<ElemId>,
}

impl PartialEq for ProductTypeDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.subgroup == other.subgroup && self.labels == other.labels
    }
}

impl Eq for ProductTypeDescriptor {}

impl ProductTypeDescriptor {
    /// `cosets` are `g_1, …, g_{m-1}`; any coset representatives may be given.
    pub fn new(
        s: &GroupTable,
        class_label: impl Into<String>,
        conjugator: ElemId,
        subgroup: Arc<SubgroupHandle>,
        cosets: &[ElemId],
    ) -> Result<Self> {
        let mut labels = vec![subgroup.right_coset_label(s, s.identity())];
        for &g in cosets {
            s.check_id(g)?;
            labels.push(subgroup.right_coset_label(s, g));
        }
        Ok(ProductTypeDescriptor { class_label: class_label.into(), conjugator, subgroup, labels })
    }

    pub fn m(&self) -> usize {
        self.labels.len()
    }

    pub fn subgroup(&self) -> &SubgroupHandle {
        &self.subgroup
    }

    /// Coset labels of `M g_1, …, M g_{m-1}`.
    pub fn cosets(&self) -> &[ElemId] {
        &self.labels[1..]
    }

    /// `g_i` as used by the membership test; `g_0` is the identity.
    pub fn coset_rep(&self, i: usize) -> ElemId {
        self.labels[i]
    }

    /// `x_{i-k} ∈ g_{i-k}⁻¹ M g_i` for every coordinate `i`.
    pub fn contains(&self, s: &GroupTable, w: &WreathElement) -> bool {
        let m = self.m();
        debug_assert_eq!(w.base.len(), m);
        (0..m).all(|i| {
            let j = shifted(i, w.shift as isize, m);
            let y = s.mul(s.mul(self.labels[i], w.base[i]), s.inv(self.labels[j]));
            self.subgroup.contains(y)
        })
    }

    /// `x_t x_{t+k} ⋯ x_{t+(l-1)k} ∈ M^{g_t}` with `l = m / gcd(m, k)`.
    pub fn cumulative_check(&self, s: &GroupTable, w: &WreathElement, t: usize) -> bool {
        let m = self.m();
        let l = m / m.gcd(&w.shift);
        let mut prod = s.identity();
        for j in 0..l {
            prod = s.mul(prod, w.base[shifted(t, (j * w.shift) as isize, m)]);
        }
        let g = self.labels[t];
        self.subgroup.contains(s.mul(s.mul(g, prod), s.inv(g)))
    }

    /// The product subgroup `M^{g_0} × … × M^{g_{m-1}}` as explicit tuples;
    /// for tests and small cases only.
    pub fn base_members(&self, s: &GroupTable) -> Vec<Vec<ElemId>> {
        let factors: Vec<Vec<ElemId>> = self
            .labels
            .iter()
            .map(|&g| self.subgroup.members().iter().map(|&x| s.conj(x, g)).collect())
            .collect();
        let mut out = vec![Vec::new()];
        for f in &factors {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<ElemId>| {
                    f.iter().map(move |&x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }

    pub fn to_line(&self, s: &GroupTable, group: &str) -> String {
        let mut line = format!("product-type{{{}, {}, {}, cosets: [", group, self.class_label, s.perm(self.conjugator));
        for (i, &c) in self.cosets().iter().enumerate() {
            if i > 0 {
                line.push_str(", ");
            }
            let _ = write!(line, "{}", s.perm(c));
        }
        line.push_str("]}");
        line
    }
}

/// `Δ_φ = {(y_1, …, y_t, y_1^{φ_{1,2}}, …, y_t^{φ_{t,2}}, …)}` for a proper
/// divisor `t` of `m`. Only base membership (shift 0) and the size are used.
#[derive(Clone, Debug)]
pub struct DiagonalDescriptor {
    m: usize,
    t: usize,
    /// `phi[i][j]` is the table of `φ_{i+1, j+2}`.
    phi: Vec<Vec<Vec<ElemId>>>,
}

/// Fails unless `table` is a bijective homomorphism of `s`. Checking
/// `φ(a s) = φ(a) φ(s)` for all `a` and generators `s` suffices.
pub fn verify_automorphism(s: &GroupTable, table: &[ElemId]) -> Result<()> {
    let n = s.order();
    if table.len() != n {
        return Err(Error::NotAutomorphism(format!("table has {} entries, group has {n}", table.len())));
    }
    let mut seen = FixedBitSet::with_capacity(n);
    for &y in table {
        if y as usize >= n || seen.put(y as usize) {
            return Err(Error::NotAutomorphism("table is not a bijection".into()));
        }
    }
    for a in s.ids() {
        for &g in s.generators() {
            if table[s.mul(a, g) as usize] != s.mul(table[a as usize], table[g as usize]) {
                return Err(Error::NotAutomorphism(format!("fails on ({a}, {g})")));
            }
        }
    }
    Ok(())
}

/// The inner automorphism `y ↦ y^g`.
pub fn conjugation_table(s: &GroupTable, g: ElemId) -> Vec<ElemId> {
    s.ids().map(|y| s.conj(y, g)).collect()
}

impl DiagonalDescriptor {
    pub fn new(s: &GroupTable, m: usize, t: usize, phi: Vec<Vec<Vec<ElemId>>>) -> Result<Self> {
        if t == 0 || t >= m || m % t != 0 {
            return Err(Error::Unsupported(format!("t = {t} is not a proper divisor of m = {m}")));
        }
        let blocks = m / t - 1;
        if phi.len() != t || phi.iter().any(|row| row.len() != blocks) {
            return Err(Error::Unsupported(format!("expected a {t} × {blocks} automorphism array")));
        }
        for table in phi.iter().flatten() {
            verify_automorphism(s, table)?;
        }
        Ok(DiagonalDescriptor { m, t, phi })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn contains(&self, w: &WreathElement) -> bool {
        if w.shift != 0 || w.base.len() != self.m {
            return false;
        }
        (1..self.m / self.t).all(|j| {
            (0..self.t).all(|i| w.base[j * self.t + i] == self.phi[i][j - 1][w.base[i] as usize])
        })
    }

    /// `|Δ_φ| = |S|^t`.
    pub fn size(&self, s: &GroupTable) -> BigUint {
        BigUint::from(s.order()).pow(self.t as u32)
    }
}

/// `|S|^{m/ℓ}` for the least prime `ℓ | m`; bounds every diagonal subgroup.
pub fn diagonal_size_bound(s_order: usize, m: usize) -> BigUint {
    let l = smallest_prime_divisor(m as u64).unwrap_or(1) as usize;
    BigUint::from(s_order).pow((m / l) as u32)
}

/// The maximal subgroup `S^m ⋊ ⟨γ^r⟩` of index `r` containing the socle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SocleMaximal {
    pub prime: u64,
}

impl SocleMaximal {
    pub fn contains(&self, w: &WreathElement) -> bool {
        w.shift as u64 % self.prime == 0
    }

    pub fn to_line(&self) -> String {
        format!("socle{{{}}}", self.prime)
    }
}

/// One socle maximal per prime divisor of `m`.
pub fn socle_maximals(m: usize) -> Vec<SocleMaximal> {
    prime_divisors(m as u64).into_iter().map(|prime| SocleMaximal { prime }).collect()
}

#[derive(Clone, Debug)]
pub enum WreathSubgroup {
    Product(ProductTypeDescriptor),
    Socle(SocleMaximal),
    Diagonal(DiagonalDescriptor),
}

impl WreathSubgroup {
    pub fn contains(&self, s: &GroupTable, w: &WreathElement) -> bool {
        match self {
            WreathSubgroup::Product(d) => d.contains(s, w),
            WreathSubgroup::Socle(d) => d.contains(w),
            WreathSubgroup::Diagonal(d) => d.contains(w),
        }
    }
}

/// A family of subgroups of `S ≀ C_m` given by product-type descriptors and
/// socle maximals.
#[derive(Clone, Debug, Default)]
pub struct WreathFamily {
    pub product: Vec<ProductTypeDescriptor>,
    pub socle: Vec<SocleMaximal>,
}

impl WreathFamily {
    pub fn len(&self) -> usize {
        self.product.len() + self.socle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn covers(&self, s: &GroupTable, w: &WreathElement) -> bool {
        self.socle.iter().any(|d| d.contains(w)) || self.product.iter().any(|d| d.contains(s, w))
    }

    /// Least-index element of `G` outside every member, or `None` if the
    /// family covers `G`. Exhaustive; the caller bounds `|G|`.
    pub fn first_uncovered(&self, g: &WreathGroup<'_>) -> Option<WreathElement> {
        let order = g.order()?;
        let s = g.base_group();
        (0..order)
            .into_par_iter()
            .find_first(|&i| !self.covers(s, &g.element_at(i)))
            .map(|i| g.element_at(i))
    }

    pub fn to_lines(&self, s: &GroupTable, group: &str) -> Vec<String> {
        self.socle
            .iter()
            .map(|d| d.to_line())
            .chain(self.product.iter().map(|d| d.to_line(s, group)))
            .collect()
    }

    /// Inverse of [`WreathFamily::to_lines`]. Class labels and the group name
    /// are resolved against `g`.
    pub fn parse_lines<'l>(g: &LoadedGroup, m: usize, lines: impl IntoIterator<Item = &'l str>) -> Result<Self> {
        let mut fam = WreathFamily::default();
        for raw in lines {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |why: &str| Error::Parse(format!("{why}: {line}"));
            if let Some(r) = line.strip_prefix("socle{").and_then(|r| r.strip_suffix('}')) {
                let prime: u64 = r.trim().parse().map_err(|_| bad("bad prime"))?;
                if m % prime as usize != 0 || !crate::numtheory::is_prime(prime) {
                    return Err(bad("not a prime divisor of m"));
                }
                fam.socle.push(SocleMaximal { prime });
            } else if let Some(r) = line.strip_prefix("product-type{").and_then(|r| r.strip_suffix('}')) {
                let (head, cosets) = r.split_once(", cosets: [").ok_or_else(|| bad("missing cosets"))?;
                let cosets = cosets.strip_suffix(']').ok_or_else(|| bad("unterminated cosets"))?;
                let parts: Vec<&str> = head.split(", ").collect();
                let [group, label, conj] = parts[..] else { return Err(bad("expected group, label, conjugator")) };
                let named = crate::catalog::GroupSpec::builtin(group).map(|s| s.name);
                if named.unwrap_or_else(|_| group.to_string()) != g.name {
                    return Err(bad("descriptor names a different group"));
                }
                let class = g.class(label).ok_or_else(|| bad("unknown class label"))?;
                let s = &g.table;
                let elem = |text: &str| -> Result<ElemId> {
                    let p = Permutation::parse_cycles(text.trim(), s.degree())?;
                    s.id_of(&p).ok_or_else(|| bad("element not in group"))
                };
                let c = elem(conj)?;
                let gs: Vec<ElemId> = if cosets.trim().is_empty() {
                    Vec::new()
                } else {
                    cosets.split(", ").map(elem).collect::<Result<_>>()?
                };
                if gs.len() + 1 != m {
                    return Err(bad("coset count does not match m"));
                }
                let sub = class.class.representative.conjugate(s, c);
                fam.product.push(ProductTypeDescriptor::new(s, label, c, Arc::new(sub), &gs)?);
            } else {
                return Err(bad("unrecognized descriptor"));
            }
        }
        Ok(fam)
    }
}

/// A subgroup of `S` tagged with its class label and conjugator, as fed to
/// [`construct_bdsn_cover`].
#[derive(Clone, Debug)]
pub struct CoverMember {
    pub class_label: String,
    pub conjugator: ElemId,
    pub subgroup: Arc<SubgroupHandle>,
}

/// Every coset tuple `(g_1, …, g_{m-1})` over the right-coset labels of `h`,
/// in lexicographic order.
fn coset_tuples(s: &GroupTable, h: &SubgroupHandle, len: usize) -> Vec<Vec<ElemId>> {
    let labels = h.right_coset_labels(s);
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<ElemId>| {
                labels.iter().map(move |&l| {
                    let mut q = p.clone();
                    q.push(l);
                    q
                })
            })
            .collect();
    }
    out
}

/// From a cover `N` of `S`, the cover of `S ≀ C_m` made of the socle maximals
/// and every product-type subgroup over members of `N`. Its size is
/// `α(m) + Σ_{M ∈ N} |S:M|^{m−1}`.
pub fn construct_bdsn_cover(s: &GroupTable, n: &[CoverMember], m: usize) -> Result<WreathFamily> {
    let mut covered = FixedBitSet::with_capacity(s.order());
    for c in n {
        covered.union_with(c.subgroup.set());
    }
    if covered.count_ones(..) != s.order() {
        let missing = (0..s.order()).find(|&i| !covered.contains(i)).expect("some element uncovered");
        return Err(Error::NotACover(format!("{} is not in any member", s.perm(missing as ElemId))));
    }
    if m == 0 {
        return Err(Error::Unsupported("wreath exponent m must be at least 1".into()));
    }
    let mut fam = WreathFamily { product: Vec::new(), socle: socle_maximals(m) };
    for c in n {
        for gs in coset_tuples(s, &c.subgroup, m - 1) {
            fam.product.push(ProductTypeDescriptor::new(s, &c.class_label, c.conjugator, c.subgroup.clone(), &gs)?);
        }
    }
    Ok(fam)
}

/// `α(m) + Σ |S:M|^{m−1}` over the given subgroups.
pub fn bdsn_count(s_order: usize, orders: impl IntoIterator<Item = usize>, m: usize) -> BigUint {
    let sum: BigUint = orders.into_iter().map(|o| BigUint::from(s_order / o).pow(m as u32 - 1)).sum();
    sum + prime_divisors(m as u64).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a5() -> GroupTable {
        GroupTable::alternating(5).unwrap()
    }

    fn id(g: &GroupTable, s: &str) -> ElemId {
        g.id_of(&Permutation::parse_cycles(s, g.degree()).unwrap()).unwrap()
    }

    #[test]
    fn identity_inverse_and_indexing() {
        let s = a5();
        let g = WreathGroup::new(&s, 3).unwrap();
        let e = g.identity();
        for idx in [0u64, 1, 59, 60, 12345, 3 * 216000 - 1] {
            let w = g.element_at(idx);
            assert_eq!(g.index_of(&w), idx);
            assert_eq!(g.mul(&e, &w).unwrap(), w);
            assert_eq!(g.mul(&w, &g.inv(&w)).unwrap(), e);
            assert_eq!(g.mul(&g.inv(&w), &w).unwrap(), e);
        }
        assert_eq!(g.order(), Some(648000));
        assert!(g.mul(&e, &WreathGroup::new(&s, 2).unwrap().identity()).is_err());
    }

    #[test]
    fn square_of_shift_one_gives_cumulative_product() {
        let s = a5();
        let g = WreathGroup::new(&s, 2).unwrap();
        let x = id(&s, "(1 2 3 4 5)");
        let w = g.element(vec![x, s.identity()], 1).unwrap();
        let sq = g.mul(&w, &w).unwrap();
        assert_eq!(sq.shift, 0);
        assert_eq!(sq.base, vec![x, x]);
        let y = id(&s, "(1 2 3)");
        let w = g.element(vec![x, y], 1).unwrap();
        let sq = g.mul(&w, &w).unwrap();
        assert_eq!(sq.base, vec![s.mul(x, y), s.mul(y, x)]);
    }

    #[test]
    fn socle_maximal_counts() {
        assert!(socle_maximals(1).is_empty());
        assert_eq!(socle_maximals(12).iter().map(|d| d.prime).collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(socle_maximals(30).len(), 3);
        let w = WreathElement { base: vec![0; 6], shift: 4 };
        assert!(SocleMaximal { prime: 2 }.contains(&w));
        assert!(!SocleMaximal { prime: 3 }.contains(&w));
    }

    #[test]
    fn diagonal_examples() {
        let s = a5();
        let idt: Vec<ElemId> = s.ids().collect();
        let d = DiagonalDescriptor::new(&s, 2, 1, vec![vec![idt.clone()]]).unwrap();
        assert_eq!(d.size(&s), BigUint::from(60u32));
        for y in s.ids() {
            assert!(d.contains(&WreathElement { base: vec![y, y], shift: 0 }));
        }
        assert!(!d.contains(&WreathElement { base: vec![0, 1], shift: 0 }));
        assert!(!d.contains(&WreathElement { base: vec![0, 0], shift: 1 }));

        let d4 = DiagonalDescriptor::new(&s, 4, 2, vec![vec![idt.clone()], vec![idt.clone()]]).unwrap();
        assert_eq!(d4.size(&s), BigUint::from(3600u32));
        assert_eq!(diagonal_size_bound(60, 4), BigUint::from(3600u32));

        let c = id(&s, "(1 2 3)");
        let phi = conjugation_table(&s, c);
        let d = DiagonalDescriptor::new(&s, 2, 1, vec![vec![phi]]).unwrap();
        let mut hits = 0;
        for y in s.ids() {
            for z in s.ids() {
                let direct = s.mul(s.mul(s.inv(c), y), c) == z;
                assert_eq!(d.contains(&WreathElement { base: vec![y, z], shift: 0 }), direct);
                hits += direct as usize;
            }
        }
        assert_eq!(hits, 60);
    }

    #[test]
    fn non_automorphisms_are_rejected() {
        let s = a5();
        let mut t: Vec<ElemId> = s.ids().collect();
        t.swap(1, 2);
        assert!(matches!(DiagonalDescriptor::new(&s, 2, 1, vec![vec![t]]), Err(Error::NotAutomorphism(_))));
        let constant = vec![0; 60];
        assert!(verify_automorphism(&s, &constant).is_err());
        assert!(DiagonalDescriptor::new(&s, 2, 2, vec![]).is_err());
    }

    #[test]
    fn descriptors_compare_by_coset_labels() {
        let s = a5();
        let a4 = Arc::new(SubgroupHandle::closure(&s, &[id(&s, "(1 2 3)"), id(&s, "(1 2)(3 4)")]).unwrap());
        let g = id(&s, "(1 2 3 4 5)");
        let h = s.mul(id(&s, "(1 2 3)"), g);
        let d1 = ProductTypeDescriptor::new(&s, "A4", 0, a4.clone(), &[g]).unwrap();
        let d2 = ProductTypeDescriptor::new(&s, "A4", 0, a4.clone(), &[h]).unwrap();
        assert_eq!(d1, d2);
        let d3 = ProductTypeDescriptor::new(&s, "A4", 0, a4.clone(), &[0]).unwrap();
        assert_ne!(d1, d3);
        let w = WreathGroup::new(&s, 2).unwrap();
        let witness = (0..w.order().unwrap()).map(|i| w.element_at(i)).find(|x| d1.contains(&s, x) != d3.contains(&s, x));
        assert!(witness.is_some());
    }

    #[test]
    fn bdsn_count_and_size_for_m1() {
        let s = a5();
        let d10 = Arc::new(SubgroupHandle::closure(&s, &[id(&s, "(1 2 3 4 5)"), id(&s, "(2 5)(3 4)")]).unwrap());
        let n = vec![CoverMember { class_label: "D10".into(), conjugator: 0, subgroup: d10 }];
        assert!(matches!(construct_bdsn_cover(&s, &n, 1), Err(Error::NotACover(_))));
        assert_eq!(bdsn_count(7920, [720; 11].into_iter().chain([660; 12]), 2), BigUint::from(266u32));
    }

    #[test]
    fn line_round_trip() {
        let g = LoadedGroup::builtin("PSL(2,11)").unwrap();
        let s = &g.table;
        let mem = g.all_maximal_subgroups();
        let n: Vec<CoverMember> = mem
            .iter()
            .filter(|x| x.class_label == "11:5" || x.class_label == "D12")
            .map(|x| CoverMember {
                class_label: x.class_label.to_string(),
                conjugator: x.conjugator,
                subgroup: Arc::new(x.subgroup.clone()),
            })
            .collect();
        let fam = construct_bdsn_cover(s, &n, 1).unwrap();
        assert_eq!(fam.len(), 67);
        let lines = fam.to_lines(s, &g.name);
        let back = WreathFamily::parse_lines(&g, 1, lines.iter().map(|l| l.as_str())).unwrap();
        assert_eq!(back.product, fam.product);
        assert!(WreathFamily::parse_lines(&g, 1, ["socle{2}"]).is_err());
        assert!(WreathFamily::parse_lines(&g, 1, ["bogus"]).is_err());
    }
}
