//! The sets `Π₀ ⊆ A_n` and `𝓗₀` of maximal subgroups of `A_n`, and a
//! symbolic check that `𝓗₀` is definitely unbeatable on `Π₀`.
//!
//! Every element of `Π₀` has at most two cycles (fixed points included), so
//! all intersection counts come from cycle indices truncated to monomials
//! with at most two parts.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::numtheory::{divisors, is_prime, smallest_prime_divisor};
use crate::perm::Permutation;
use crate::serde_big;
use crate::subgroup::{conjugate_class, SubgroupHandle};
use crate::unbeatable::ConditionResult;

/// Bound on the order of a primitive subgroup of `S_n` not containing `A_n`.
pub const PRIMITIVE_BASE: (u32, u32) = (13, 5);

pub use crate::formulas::{binomial, factorial};

/// A cycle index `Σ c_λ p_λ` keeping only monomials with at most
/// `max_parts` cycles. Keys are cycle lengths, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleIndex {
    max_parts: usize,
    terms: BTreeMap<Vec<u64>, BigRational>,
}

impl CycleIndex {
    pub fn one(max_parts: usize) -> Self {
        CycleIndex { max_parts, terms: [(Vec::new(), BigRational::one())].into_iter().collect() }
    }

    fn add(&mut self, key: Vec<u64>, c: BigRational) {
        if key.len() > self.max_parts || c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += c;
    }

    /// `Z(S_k)` from `k Z(S_k) = Σ_{j=1}^{k} p_j Z(S_{k−j})`.
    pub fn symmetric(k: u64, max_parts: usize) -> Self {
        let mut z = vec![Self::one(max_parts)];
        for kk in 1..=k {
            let mut next = CycleIndex { max_parts, terms: BTreeMap::new() };
            let inv = BigRational::new(BigInt::one(), BigInt::from(kk));
            for j in 1..=kk {
                for (key, c) in &z[(kk - j) as usize].terms {
                    let mut k2 = key.clone();
                    k2.push(j);
                    k2.sort_unstable();
                    next.add(k2, c * &inv);
                }
            }
            z.push(next);
        }
        z.pop().expect("nonempty")
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out = CycleIndex { max_parts: self.max_parts, terms: BTreeMap::new() };
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.len() + b.len() > self.max_parts {
                    continue;
                }
                let mut k: Vec<u64> = a.iter().chain(b).copied().collect();
                k.sort_unstable();
                out.add(k, ca * cb);
            }
        }
        out
    }

    /// `p_j ↦ p_{jc}`.
    fn stretch(&self, c: u64) -> Self {
        CycleIndex {
            max_parts: self.max_parts,
            terms: self.terms.iter().map(|(k, v)| (k.iter().map(|x| x * c).collect(), v.clone())).collect(),
        }
    }

    /// `Z(S_a)[Z(S_b)]`, the cycle index of `S_b ≀ S_a` on `ab` points.
    pub fn wreath(b: u64, a: u64, max_parts: usize) -> Self {
        let outer = Self::symmetric(a, max_parts);
        let inner = Self::symmetric(b, max_parts);
        let mut out = CycleIndex { max_parts, terms: BTreeMap::new() };
        for (key, c) in &outer.terms {
            let mut prod = Self::one(max_parts);
            for &len in key {
                prod = prod.times(&inner.stretch(len));
            }
            for (k, v) in prod.terms {
                out.add(k, v * c);
            }
        }
        out
    }

    /// Number of elements of cycle type `lengths` in a group of the given
    /// order with this cycle index.
    pub fn count(&self, lengths: &[u64], order: &BigUint) -> BigUint {
        let mut k = lengths.to_vec();
        k.sort_unstable();
        let c = self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero);
        let v = c * BigRational::from_integer(BigInt::from(order.clone()));
        assert!(v.is_integer(), "cycle-type count must be integral");
        v.to_integer().to_biguint().expect("nonnegative")
    }
}

/// Number of permutations of cycle type `lengths` in `S_n`.
pub fn sn_type_count(n: u64, lengths: &[u64]) -> BigUint {
    let mut z = BigUint::one();
    let mut mult: BTreeMap<u64, u64> = BTreeMap::new();
    for &l in lengths {
        *mult.entry(l).or_default() += 1;
    }
    for (l, k) in mult {
        z *= BigUint::from(l).pow(k as u32) * factorial(k);
    }
    factorial(n) / z
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "case")]
pub enum AnCase {
    Odd { p: u64 },
    ZeroMod4,
    TwoMod4,
}

/// A class of subgroups of `A_n` of the form `K ∩ A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum AnClass {
    /// `(S_i × S_{n−i}) ∩ A_n`, the stabilizer of an `i`-set.
    Intransitive { i: u64 },
    /// `(S_b ≀ S_a) ∩ A_n`, the stabilizer of a partition into `a` blocks of size `b`.
    Imprimitive { a: u64, b: u64 },
}

impl AnClass {
    pub fn label(&self, n: u64) -> String {
        match *self {
            AnClass::Intransitive { i } => format!("(S{} x S{}) & A{}", i, n - i, n),
            AnClass::Imprimitive { a, b } => format!("(S{b} wr S{a}) & A{n}"),
        }
    }

    /// Order of `K ≤ S_n`; `K ∩ A_n` has half of it.
    pub fn sn_order(&self, n: u64) -> BigUint {
        match *self {
            AnClass::Intransitive { i } => factorial(i) * factorial(n - i),
            AnClass::Imprimitive { a, b } => factorial(b).pow(a as u32) * factorial(a),
        }
    }

    /// `|A_n : K ∩ A_n|`, which is also the number of conjugates.
    pub fn index(&self, n: u64) -> BigUint {
        factorial(n) / self.sn_order(n)
    }

    pub fn cycle_index(&self, n: u64) -> CycleIndex {
        match *self {
            AnClass::Intransitive { i } => CycleIndex::symmetric(i, 2).times(&CycleIndex::symmetric(n - i, 2)),
            AnClass::Imprimitive { a, b } => CycleIndex::wreath(b, a, 2),
        }
    }

    /// `|λ ∩ K|` for each cycle type `λ` (all even, so `K` may be used for `K ∩ A_n`).
    pub fn type_counts(&self, n: u64, types: &[Vec<u64>]) -> Vec<BigUint> {
        let z = self.cycle_index(n);
        let order = self.sn_order(n);
        types.iter().map(|t| z.count(t, &order)).collect()
    }

    /// Whether the permutation preserves the standard `i`-set `{0..i}` or
    /// the standard block partition.
    fn preserves(&self, n: u64, images: &[u16]) -> bool {
        match *self {
            AnClass::Intransitive { i } => (0..i as usize).all(|x| (images[x] as u64) < i),
            AnClass::Imprimitive { b, .. } => {
                (0..n as usize).all(|x| images[x] as u64 / b == images[x - x % b as usize] as u64 / b)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnSets {
    pub n: u64,
    pub case: AnCase,
    /// Cycle types of `Π₀`, fixed points included.
    pub pi0: Vec<Vec<u64>>,
    pub h0: Vec<AnClass>,
}

/// `Π₀` and `𝓗₀` by the parity of `n`.
pub fn an_set_constructors(n: u64) -> Result<AnSets> {
    if n < 5 {
        return Err(Error::Unsupported(format!("n = {n} < 5")));
    }
    if n % 2 == 1 {
        if is_prime(n) {
            return Err(Error::Unsupported(format!("n = {n} is an odd prime")));
        }
        let p = smallest_prime_divisor(n).expect("n > 1");
        return Ok(AnSets {
            n,
            case: AnCase::Odd { p },
            pi0: vec![vec![n]],
            h0: vec![AnClass::Imprimitive { a: p, b: n / p }],
        });
    }
    let odd_below: Vec<u64> = (1..n).step_by(2).filter(|&i| 2 * i < n).collect();
    let mut pi0: Vec<Vec<u64>> = odd_below.iter().map(|&i| vec![i, n - i]).collect();
    let mut h0: Vec<AnClass> = odd_below.iter().map(|&i| AnClass::Intransitive { i }).collect();
    let case = if n % 4 == 0 {
        AnCase::ZeroMod4
    } else {
        pi0.push(vec![n / 2, n / 2]);
        h0.push(AnClass::Imprimitive { a: 2, b: n / 2 });
        AnCase::TwoMod4
    };
    Ok(AnSets { n, case, pi0, h0 })
}

impl AnSets {
    pub fn pi0_size(&self) -> BigUint {
        self.pi0.iter().map(|t| sn_type_count(self.n, t)).sum()
    }

    /// `|𝓗₀|`.
    pub fn family_size(&self) -> BigUint {
        self.h0.iter().map(|c| c.index(self.n)).sum()
    }

    /// The intransitive and imprimitive classes of `A_n` outside `𝓗₀`.
    pub fn competitors(&self) -> Vec<AnClass> {
        let n = self.n;
        let mut out: Vec<AnClass> = (1..n).filter(|&i| 2 * i < n).map(|i| AnClass::Intransitive { i }).collect();
        for a in divisors(n) {
            if a >= 2 && a < n {
                out.push(AnClass::Imprimitive { a, b: n / a });
            }
        }
        out.retain(|c| !self.h0.contains(c));
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassHits {
    pub label: String,
    /// `|Π₀ ∩ H|` for one member `H` of the class.
    #[serde(serialize_with = "serde_big::big")]
    pub hits: BigUint,
    #[serde(serialize_with = "serde_big::big")]
    pub conjugates: BigUint,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnReport {
    pub n: u64,
    pub sets: AnSets,
    #[serde(serialize_with = "serde_big::big")]
    pub pi0_size: BigUint,
    #[serde(serialize_with = "serde_big::big")]
    pub family_size: BigUint,
    pub family: Vec<ClassHits>,
    pub competitors: Vec<ClassHits>,
    /// `⌈2.6^n⌉`, bounding `|Π₀ ∩ K|` for primitive `K`.
    #[serde(serialize_with = "serde_big::big")]
    pub primitive_bound: BigUint,
    pub conditions: Vec<ConditionResult>,
    pub assumptions: Vec<String>,
    pub pass: bool,
}

fn ceil_ratio_pow(num: u32, den: u32, e: u32) -> BigUint {
    let (q, r) = BigUint::from(num).pow(e).div_rem(&BigUint::from(den).pow(e));
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// Definite unbeatability of `𝓗₀` on `Π₀` by exact cycle-type counting.
/// Conditions 2 and 3 hold iff every `π ∈ Π₀` lies in exactly one member,
/// which is checked per cycle type as `Σ_H |λ ∩ H| = |λ|`.
pub fn check_an_unbeatable(n: u64) -> Result<AnReport> {
    let sets = an_set_constructors(n)?;
    let mut conditions = Vec::new();
    let family: Vec<ClassHits> = sets
        .h0
        .iter()
        .map(|c| ClassHits {
            label: c.label(n),
            hits: c.type_counts(n, &sets.pi0).into_iter().sum(),
            conjugates: c.index(n),
        })
        .collect();
    let w1 = family.iter().find(|h| h.hits.is_zero()).map(|h| h.label.clone());
    conditions.push(ConditionResult {
        id: "1".into(),
        pass: w1.is_none(),
        detail: "each class of 𝓗₀ meets Π₀".into(),
        witness: w1,
    });

    let mut w2 = None;
    let mut w3 = None;
    for t in &sets.pi0 {
        let covered: BigUint = sets.h0.iter().map(|c| c.type_counts(n, std::slice::from_ref(t))[0].clone() * c.index(n)).sum();
        let total = sn_type_count(n, t);
        let ratio = BigRational::new(BigInt::from(covered), BigInt::from(total));
        let name = format!("{:?}-cycles", t);
        if ratio.is_zero() && w2.is_none() {
            w2 = Some(name);
        } else if ratio > BigRational::one() && w3.is_none() {
            w3 = Some(format!("{name}: {ratio} members per element"));
        } else if ratio < BigRational::one() && w2.is_none() {
            w2 = Some(format!("{name}: {ratio} members per element"));
        }
    }
    conditions.push(ConditionResult {
        id: "2".into(),
        pass: w2.is_none(),
        detail: "every element of Π₀ lies in a member".into(),
        witness: w2,
    });
    conditions.push(ConditionResult {
        id: "3".into(),
        pass: w3.is_none(),
        detail: "no element of Π₀ lies in two members".into(),
        witness: w3,
    });

    let competitors: Vec<ClassHits> = sets
        .competitors()
        .iter()
        .map(|c| ClassHits {
            label: c.label(n),
            hits: c.type_counts(n, &sets.pi0).into_iter().sum(),
            conjugates: c.index(n),
        })
        .collect();
    let primitive_bound = ceil_ratio_pow(PRIMITIVE_BASE.0, PRIMITIVE_BASE.1, n as u32);
    let min = family.iter().map(|h| h.hits.clone()).min().unwrap_or_default();
    let worst = competitors.iter().max_by(|a, b| a.hits.cmp(&b.hits));
    let bound = worst.map(|w| w.hits.clone()).unwrap_or_default().max(primitive_bound.clone());
    let w4 = if min >= bound {
        None
    } else if worst.is_some_and(|w| w.hits > min) {
        worst.map(|w| w.label.clone())
    } else {
        Some("primitive".into())
    };
    conditions.push(ConditionResult {
        id: "4".into(),
        pass: w4.is_none(),
        detail: format!("min over 𝓗₀ = {min}, max over other maximal classes ≤ {bound}"),
        witness: w4,
    });
    let pass = conditions.iter().all(|c| c.pass);
    Ok(AnReport {
        n,
        pi0_size: sets.pi0_size(),
        family_size: sets.family_size(),
        sets,
        family,
        competitors,
        primitive_bound,
        conditions,
        assumptions: vec![
            "maximal subgroups of A_n are intransitive, imprimitive or primitive".into(),
            "a primitive subgroup of S_n not containing A_n has order below 2.6^n".into(),
        ],
        pass,
    })
}

/// `A_n` and every member of `𝓗₀` as subgroups of it, for `n ≤ 9`.
pub fn materialize_h0(n: u64) -> Result<(GroupTable, Vec<(AnClass, Vec<SubgroupHandle>)>)> {
    if n > 9 {
        return Err(Error::Unsupported(format!("materializing A_{n} is limited to n ≤ 9")));
    }
    let sets = an_set_constructors(n)?;
    let an = GroupTable::alternating(n as usize)?;
    let mut out = Vec::new();
    for c in &sets.h0 {
        let members: Vec<u32> = an.ids().filter(|&x| c.preserves(n, an.images(x))).collect();
        let mut rep = SubgroupHandle::trivial(&an);
        for &x in &members {
            if !rep.contains(x) {
                rep = rep.extend(&an, x);
            }
        }
        let rep = SubgroupHandle::from_members(&an, members, rep.generators().to_vec())?;
        let class = conjugate_class(&an, &rep);
        out.push((*c, class.conjugates));
    }
    Ok((an, out))
}

/// Cycle type of a permutation as ascending lengths, fixed points included.
pub fn cycle_lengths(p: &Permutation) -> Vec<u64> {
    let mut v: Vec<u64> = p.cycle_type().lengths().iter().map(|&x| x as u64).collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_cycle_index_counts_full_cycles() {
        for k in 1..12u64 {
            let z = CycleIndex::symmetric(k, 2);
            assert_eq!(z.count(&[k], &factorial(k)), factorial(k - 1));
        }
    }

    #[test]
    fn case_split_examples() {
        let s = an_set_constructors(9).unwrap();
        assert_eq!(s.case, AnCase::Odd { p: 3 });
        assert_eq!(s.h0, vec![AnClass::Imprimitive { a: 3, b: 3 }]);
        let s = an_set_constructors(12).unwrap();
        assert_eq!(s.pi0, vec![vec![1, 11], vec![3, 9], vec![5, 7]]);
        let s = an_set_constructors(10).unwrap();
        assert!(s.h0.contains(&AnClass::Imprimitive { a: 2, b: 5 }));
        assert!(s.pi0.contains(&vec![5, 5]));
        assert!(an_set_constructors(7).is_err());
    }
}
