//! Permutations of `{0, .., degree-1}`.
//!
//! `compose(p, q)` applies `q` first and then `p`, i.e. `(p ∘ q)(x) = p(q(x))`.
//! Every group table in the crate uses this product, so the abstract product
//! `a · b` of two group elements is `compose(a, b)`.
//!
//! Cycle notation in text is 1-indexed (`"(1 2 3)(4 5)"`), internal points
//! are 0-indexed.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

/// Multiset of cycle lengths, fixed points included, sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    /// Builds a cycle type from arbitrary lengths. Zero lengths are rejected.
    pub fn new(mut lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() || lengths.contains(&0) {
            return Err(Error::Parse(format!("bad cycle type {lengths:?}")));
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType(lengths))
    }

    /// Cycle type of lengths `parts` padded with fixed points up to `degree`.
    pub fn padded(parts: &[usize], degree: usize) -> Result<Self> {
        let used: usize = parts.iter().sum();
        if used > degree {
            return Err(Error::Parse(format!("cycle lengths {parts:?} exceed degree {degree}")));
        }
        let mut v = parts.to_vec();
        v.extend(std::iter::repeat(1).take(degree - used));
        CycleType::new(v)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Lengths greater than one.
    pub fn nontrivial(&self) -> Vec<usize> {
        self.0.iter().copied().filter(|&l| l > 1).collect()
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.0.len()) % 2 == 0
    }

    pub fn order(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &l| acc.lcm(&(l as u64)))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from 0-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let x = x as usize;
                if x >= degree {
                    return Err(Error::Parse(format!("point {} outside degree {degree}", x + 1)));
                }
                if touched[x] {
                    return Err(Error::Parse(format!("point {} repeated", x + 1)));
                }
                touched[x] = true;
                images[x] = c[(i + 1) % c.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Parses 1-indexed cycle notation such as `"(1 2 3)(4 5)"`. `"()"` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {text:?}")))?;
            let body = &open[..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                let p: u32 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {tok:?} in {text:?}")))?;
                if p == 0 {
                    return Err(Error::Parse(format!("points are 1-indexed in {text:?}")));
                }
                cycle.push(p - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `p ∘ q`: applies `q` first, then `p`.
    pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
        if p.degree() != q.degree() {
            return Err(Error::DegreeMismatch(p.degree(), q.degree()));
        }
        Ok(Permutation { images: q.images.iter().map(|&x| p.images[x as usize]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = Permutation::compose(&acc, &base).expect("same degree");
            }
            base = Permutation::compose(&base, &base).expect("same degree");
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Cycle type and parity (`true` for even permutations).
    pub fn cycle_type_and_parity(&self) -> (CycleType, bool) {
        let ct = CycleType::new(self.cycle_lengths()).expect("nonempty");
        let even = ct.is_even();
        (ct, even)
    }

    pub fn cycle_type(&self) -> CycleType {
        self.cycle_type_and_parity().0
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type_and_parity().1
    }

    /// Least `k ≥ 1` with `p^k = 1`, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn composition_applies_right_factor_first() {
        // (1 2) then (2 3): 1 -> 2 -> 3, so the composite sends point 1 to point 3.
        let a = p("(2 3)", 3);
        let b = p("(1 2)", 3);
        let c = Permutation::compose(&a, &b).unwrap();
        assert_eq!(c.apply(0), 2);
        assert_eq!(c, p("(1 3 2)", 3));
    }

    #[test]
    fn compose_examples() {
        let c = p("(1 2 3)", 3);
        assert_eq!(Permutation::compose(&c, &c).unwrap(), p("(1 3 2)", 3));
        let id = Permutation::identity(3);
        assert_eq!(Permutation::compose(&id, &c).unwrap(), c);
        assert!(Permutation::compose(&c, &c.inverse()).unwrap().is_identity());
        assert!(matches!(
            Permutation::compose(&c, &Permutation::identity(4)),
            Err(Error::DegreeMismatch(3, 4))
        ));
    }

    #[test]
    fn order_examples() {
        assert_eq!(Permutation::identity(7).order(), 1);
        assert_eq!(p("(1 2 3 4 5 6 7 8 9 10 11)", 11).order(), 11);
        let q = p("(1 2)(3 4 5)", 5);
        // brute-force powering
        let mut k = 1;
        let mut acc = q.clone();
        while !acc.is_identity() {
            acc = Permutation::compose(&acc, &q).unwrap();
            k += 1;
        }
        assert_eq!(k, 6);
        assert_eq!(q.order(), 6);
    }

    #[test]
    fn cycle_type_examples() {
        let (ct, even) = Permutation::identity(5).cycle_type_and_parity();
        assert_eq!(ct.lengths(), &[1, 1, 1, 1, 1]);
        assert!(even);
        let (ct, even) = p("(1 2 3 4 5)", 5).cycle_type_and_parity();
        assert_eq!(ct.lengths(), &[5]);
        assert!(even);
        let q = p("(1 2 3)(4 5 6 7 8 9 10 11 12 13 14)", 14);
        let (ct, even) = q.cycle_type_and_parity();
        assert_eq!(ct.lengths(), &[11, 3]);
        // count transpositions: a k-cycle is a product of k-1 of them
        let transpositions: usize = q.cycles().iter().map(|c| c.len() - 1).sum();
        assert_eq!(even, transpositions % 2 == 0);
        assert!(even);
    }

    #[test]
    fn parse_and_print_round_trip() {
        let q = p("(1 2 3 4 5)(6 7)", 8);
        assert_eq!(q.to_string(), "(1 2 3 4 5)(6 7)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(p("()", 4), Permutation::identity(4));
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn associativity_exhaustive_degree_4() {
        let all = all_perms(4);
        for a in &all {
            for b in &all {
                let ab = Permutation::compose(a, b).unwrap();
                for c in &all {
                    let lhs = Permutation::compose(&ab, c).unwrap();
                    let rhs = Permutation::compose(a, &Permutation::compose(b, c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<u32>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Permutation>) {
            if prefix.len() == n {
                out.push(Permutation::from_images(prefix.clone()).unwrap());
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    prefix.push(x as u32);
                    rec(prefix, used, n, out);
                    prefix.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
        out
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn parity_is_a_homomorphism(a in arb_perm(9), b in arb_perm(9)) {
            let ab = Permutation::compose(&a, &b).unwrap();
            prop_assert_eq!(ab.is_even(), a.is_even() == b.is_even());
        }

        #[test]
        fn cycle_notation_round_trips(a in arb_perm(12)) {
            prop_assert_eq!(Permutation::parse_cycles(&a.to_string(), 12).unwrap(), a);
        }

        #[test]
        fn order_is_least_power(a in arb_perm(8)) {
            let k = a.order();
            prop_assert!(a.pow(k).is_identity());
            for j in 1..k {
                prop_assert!(!a.pow(j).is_identity());
            }
        }
    }
}
