//! A permutation realization of `S ≀ C_m` on `m·deg(S)` points, with
//! product-type subgroups built explicitly and membership decided by direct
//! normalizer checks.

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sigma_core::catalog::LoadedGroup;
use sigma_core::wreath::{ProductTypeDescriptor, WreathElement, WreathGroup};
use sigma_core::{ElemId, GroupTable, Permutation, SubgroupHandle};

/// The explicit subgroup `M^{g_0} × … × M^{g_{m-1}}` built from raw (not
/// canonicalized) coset representatives.
pub struct ExplicitProduct {
    pub members: HashSet<Permutation>,
    pub generators: Vec<Permutation>,
}

pub fn realize_base(g: &WreathGroup<'_>, base: Vec<ElemId>) -> Permutation {
    g.to_permutation(&WreathElement { base, shift: 0 })
}

pub fn explicit_product(g: &WreathGroup<'_>, m_sub: &SubgroupHandle, reps: &[ElemId]) -> ExplicitProduct {
    let s = g.base_group();
    let factors: Vec<Vec<ElemId>> =
        reps.iter().map(|&r| m_sub.members().iter().map(|&x| s.conj(x, r)).collect()).collect();
    let mut tuples = vec![Vec::new()];
    for f in &factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t: Vec<ElemId>| {
                f.iter().map(move |&x| {
                    let mut u = t.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    let members = tuples.into_iter().map(|t| realize_base(g, t)).collect();
    let mut generators = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for &x in f {
            let mut t = vec![s.identity(); reps.len()];
            t[i] = x;
            generators.push(realize_base(g, t));
        }
    }
    ExplicitProduct { members, generators }
}

pub fn conj(x: &Permutation, w: &Permutation) -> Permutation {
    Permutation::compose(&Permutation::compose(&w.inverse(), x).unwrap(), w).unwrap()
}

pub fn normalizes_full(p: &ExplicitProduct, w: &Permutation) -> bool {
    p.members.iter().all(|x| p.members.contains(&conj(x, w)))
}

pub fn normalizes_by_generators(p: &ExplicitProduct, w: &Permutation) -> bool {
    p.generators.iter().all(|x| p.members.contains(&conj(x, w)))
}

pub fn random_descriptor(
    s: &GroupTable,
    maximal: &[(String, ElemId, Arc<SubgroupHandle>)],
    m: usize,
    rng: &mut ChaCha8Rng,
) -> (ProductTypeDescriptor, Arc<SubgroupHandle>, Vec<ElemId>) {
    let (label, c, sub) = &maximal[rng.gen_range(0..maximal.len())];
    let mut reps = vec![s.identity()];
    for _ in 1..m {
        reps.push(rng.gen_range(0..s.order() as ElemId));
    }
    let d = ProductTypeDescriptor::new(s, label.clone(), *c, sub.clone(), &reps[1..]).unwrap();
    (d, sub.clone(), reps)
}

pub fn a5_maximal(g: &LoadedGroup) -> Vec<(String, ElemId, Arc<SubgroupHandle>)> {
    g.all_maximal_subgroups()
        .into_iter()
        .map(|x| (x.class_label.to_string(), x.conjugator, Arc::new(x.subgroup.clone())))
        .collect()
}
