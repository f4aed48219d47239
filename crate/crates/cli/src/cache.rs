//! On-disk cache of subgroup lattices, keyed by a canonical hash of the group
//! as a set of permutations. Entries store class representatives by generator
//! images and are rebuilt by closure on load; an entry whose recorded hash or
//! rebuilt orders disagree is ignored and recomputed.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sigma_core::subgroup::{all_subgroup_classes, conjugate_class};
use sigma_core::{Error, GroupTable, Permutation, SubgroupClass, SubgroupHandle};

/// Hex SHA-256 of the degree and the sorted image lists of all elements.
pub fn group_hash(s: &GroupTable) -> String {
    let mut images: Vec<&[u16]> = s.ids().map(|x| s.images(x)).collect();
    images.sort_unstable();
    let mut h = Sha256::new();
    h.update((s.degree() as u64).to_le_bytes());
    for im in images {
        for &p in im {
            h.update(p.to_le_bytes());
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize, Deserialize)]
struct Entry {
    group_hash: String,
    /// Per class: subgroup order and generator images (0-based).
    classes: Vec<(usize, Vec<Vec<u32>>)>,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// `dir` defaults to `sigma-cover` under the system temp directory.
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir: Some(dir.unwrap_or_else(|| std::env::temp_dir().join("sigma-cover"))) }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// All subgroup classes of `s`, from the cache when a valid entry exists.
    pub fn lattice(&self, s: &GroupTable, cap: usize) -> Result<Vec<SubgroupClass>, Error> {
        let hash = group_hash(s);
        let path = self.dir.as_ref().map(|d| d.join(format!("{hash}-lattice.json")));
        if let Some(classes) = path.as_ref().and_then(|p| load(p, s, &hash)) {
            return Ok(classes);
        }
        let classes = all_subgroup_classes(s, cap)?;
        if let Some(p) = path {
            let entry = Entry {
                group_hash: hash,
                classes: classes
                    .iter()
                    .map(|c| {
                        let r = &c.representative;
                        (r.order(), r.generators().iter().map(|&x| s.perm(x).images().to_vec()).collect())
                    })
                    .collect(),
            };
            // the cache is an optimization; write failures are ignored
            if let Some(parent) = p.parent() {
                let _ = std::fs::create_dir_all(parent);
            }
            if let Ok(text) = serde_json::to_string(&entry) {
                let _ = std::fs::write(&p, text);
            }
        }
        Ok(classes)
    }
}

fn load(path: &PathBuf, s: &GroupTable, hash: &str) -> Option<Vec<SubgroupClass>> {
    let entry: Entry = serde_json::from_str(&std::fs::read_to_string(path).ok()?).ok()?;
    if entry.group_hash != hash {
        return None;
    }
    let mut out = Vec::with_capacity(entry.classes.len());
    for (order, gens) in entry.classes {
        let ids = gens
            .into_iter()
            .map(|im| Permutation::from_images(im).ok().and_then(|p| s.id_of(&p)))
            .collect::<Option<Vec<_>>>()?;
        let h = SubgroupHandle::closure(s, &ids).ok()?;
        if h.order() != order {
            return None;
        }
        out.push(conjugate_class(s, &h));
    }
    Some(out)
}
