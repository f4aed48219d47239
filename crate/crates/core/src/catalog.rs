//! Built-in groups and their maximal-subgroup classes, plus the text format
//! for user-supplied group spec files.
//!
//! Catalog generators are data; loading re-enumerates every class and checks
//! the recorded subgroup order and class size.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ElemId, GroupTable};
use crate::perm::Permutation;
use crate::subgroup::{conjugate_class, maximal_class_indices, SubgroupClass, SubgroupHandle};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    #[serde(default)]
    pub order: Option<usize>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub maximal_classes: Vec<MaximalClassSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MaximalClassSpec {
    pub label: String,
    pub generators: Vec<String>,
    pub expected_order: usize,
    pub expected_class_size: usize,
}

const BUILTIN: &[(&str, &str)] = &[
    ("A5", include_str!("../catalog/a5.yaml")),
    ("A6", include_str!("../catalog/a6.yaml")),
    ("PSL(2,7)", include_str!("../catalog/psl2_7.yaml")),
    ("PSL(2,11)", include_str!("../catalog/psl2_11.yaml")),
    ("PSL(2,13)", include_str!("../catalog/psl2_13.yaml")),
    ("M11", include_str!("../catalog/m11.yaml")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

fn normalize(name: &str) -> String {
    let s: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_uppercase();
    // L2(q) is the ATLAS spelling of PSL(2,q)
    if let Some(rest) = s.strip_prefix("L2(") {
        return format!("PSL(2,{rest}");
    }
    s
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_yaml::from_str(text).map_err(|e| Error::SpecFile(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let key = normalize(name);
        BUILTIN
            .iter()
            .find(|(n, _)| normalize(n) == key)
            .map(|(_, text)| Self::parse(text))
            .unwrap_or_else(|| Err(Error::UnknownGroup(name.to_string())))
    }

    /// A built-in name, or else a path to a spec file.
    pub fn resolve(source: &str) -> Result<Self> {
        match Self::builtin(source) {
            Err(Error::UnknownGroup(_)) if Path::new(source).is_file() => Self::from_file(Path::new(source)),
            other => other,
        }
    }

    pub fn to_text(&self) -> String {
        serde_yaml::to_string(self).expect("spec serializes")
    }

    fn parse_gens(&self, gens: &[String]) -> Result<Vec<Permutation>> {
        gens.iter().map(|g| Permutation::parse_cycles(g, self.degree)).collect()
    }
}

/// Generators of one representative per maximal class, as listed in the catalog.
pub fn maximal_catalog(name: &str) -> Result<Vec<(String, Vec<Permutation>)>> {
    let spec = GroupSpec::builtin(name)?;
    spec.maximal_classes
        .iter()
        .map(|c| Ok((c.label.clone(), spec.parse_gens(&c.generators)?)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct LabeledClass {
    pub label: String,
    pub class: SubgroupClass,
}

/// An enumerated group together with its verified maximal-subgroup classes.
pub struct LoadedGroup {
    pub name: String,
    pub table: GroupTable,
    pub maximal: Vec<LabeledClass>,
}

impl LoadedGroup {
    pub fn load(spec: &GroupSpec) -> Result<Self> {
        let gens = spec.parse_gens(&spec.generators)?;
        let table = GroupTable::enumerate(&gens)?;
        let fail = |label: &str, detail: String| Error::CatalogVerification {
            group: spec.name.clone(),
            label: label.to_string(),
            detail,
        };
        if let Some(order) = spec.order {
            if table.order() != order {
                return Err(fail("<group>", format!("generators give order {}, expected {order}", table.order())));
            }
        }
        let mut maximal = Vec::new();
        for c in &spec.maximal_classes {
            let perms = spec.parse_gens(&c.generators)?;
            let ids = perms
                .iter()
                .map(|p| table.id_of(p).ok_or_else(|| fail(&c.label, format!("generator {p} is not in the group"))))
                .collect::<Result<Vec<_>>>()?;
            let rep = SubgroupHandle::closure(&table, &ids)?;
            if rep.order() != c.expected_order {
                return Err(fail(&c.label, format!("order {} != expected {}", rep.order(), c.expected_order)));
            }
            let class = conjugate_class(&table, &rep);
            if class.class_size() != c.expected_class_size {
                return Err(fail(
                    &c.label,
                    format!("class size {} != expected {}", class.class_size(), c.expected_class_size),
                ));
            }
            if maximal.iter().any(|m: &LabeledClass| m.class.contains_conjugate(&rep)) {
                return Err(fail(&c.label, "conjugate to an earlier class".into()));
            }
            maximal.push(LabeledClass { label: c.label.clone(), class });
        }
        Ok(LoadedGroup { name: spec.name.clone(), table, maximal })
    }

    pub fn builtin(name: &str) -> Result<Self> {
        Self::load(&GroupSpec::builtin(name)?)
    }

    pub fn resolve(source: &str) -> Result<Self> {
        Self::load(&GroupSpec::resolve(source)?)
    }

    pub fn class(&self, label: &str) -> Option<&LabeledClass> {
        self.maximal.iter().find(|c| c.label == label)
    }

    /// All conjugates of all maximal classes, in class then canonical order.
    pub fn all_maximal_subgroups(&self) -> Vec<MaximalMember<'_>> {
        self.maximal
            .iter()
            .flat_map(|c| {
                c.class.conjugates.iter().zip(&c.class.conjugators).enumerate().map(move |(i, (h, &s))| {
                    MaximalMember { class_label: &c.label, index: i, conjugator: s, subgroup: h }
                })
            })
            .collect()
    }

    /// Compares the catalog against the maximal classes of a full subgroup
    /// lattice: every catalog class must be maximal and every maximal class
    /// must be in the catalog.
    pub fn check_against_lattice(&self, lattice: &[SubgroupClass]) -> MaximalityCheck {
        let max_idx = maximal_class_indices(&self.table, lattice);
        let catalog_maximal = self
            .maximal
            .iter()
            .map(|c| max_idx.iter().any(|&i| lattice[i].contains_conjugate(&c.class.representative)))
            .collect::<Vec<_>>();
        let missing = max_idx
            .iter()
            .filter(|&&i| !self.maximal.iter().any(|c| c.class.contains_conjugate(&lattice[i].representative)))
            .map(|&i| lattice[i].subgroup_order())
            .collect::<Vec<_>>();
        MaximalityCheck {
            all_catalog_classes_maximal: catalog_maximal.iter().all(|&b| b),
            missing_maximal_orders: missing,
        }
    }
}

/// One conjugate `R^conjugator` of a catalog class representative `R`.
#[derive(Clone, Copy, Debug)]
pub struct MaximalMember<'a> {
    pub class_label: &'a str,
    pub index: usize,
    pub conjugator: ElemId,
    pub subgroup: &'a SubgroupHandle,
}

impl MaximalMember<'_> {
    pub fn label(&self) -> String {
        format!("{}#{}", self.class_label, self.index)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MaximalityCheck {
    pub all_catalog_classes_maximal: bool,
    pub missing_maximal_orders: Vec<usize>,
}

impl MaximalityCheck {
    pub fn complete(&self) -> bool {
        self.all_catalog_classes_maximal && self.missing_maximal_orders.is_empty()
    }
}
