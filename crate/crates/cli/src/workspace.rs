//! Workspace files: a ring plus named modules, submodules, subcategories
//! and (optionally) explicit module universes.

use std::collections::BTreeMap;
use std::path::Path;

use modclose::closure::{Divisible, Subcategory};
use modclose::injective::is_injective_module;
use modclose::linalg::IntMatrix;
use modclose::module::{present_module, FPModule, Submodule};
use modclose::ring::RingDesc;
use serde::{Deserialize, Serialize};

use crate::json::{to_big, Int};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    #[serde(with = "ring_string")]
    pub ring: RingDesc,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub submodules: BTreeMap<String, SubmoduleSpec>,
    #[serde(default)]
    pub subcategories: BTreeMap<String, SubcategorySpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub universes: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub generators: usize,
    /// Relation columns, each of length `generators`.
    #[serde(default)]
    pub relations: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmoduleSpec {
    pub parent: String,
    #[serde(default)]
    pub gens: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubcategorySpec {
    #[serde(default)]
    pub finite: Vec<String>,
    #[serde(default)]
    pub divisible: Vec<DivisibleName>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivisibleName {
    Q,
    QmodZ,
}

impl From<DivisibleName> for Divisible {
    fn from(d: DivisibleName) -> Self {
        match d {
            DivisibleName::Q => Divisible::Rationals,
            DivisibleName::QmodZ => Divisible::RationalsModZ,
        }
    }
}

mod ring_string {
    use modclose::ring::RingDesc;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &RingDesc, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RingDesc, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl WorkspaceFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed workspace: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("workspace always serializes")
    }
}

/// A validated workspace: every name resolves and every object is built.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub file: WorkspaceFile,
    pub modules: BTreeMap<String, FPModule>,
    pub submodules: BTreeMap<String, Submodule>,
    pub subcategories: BTreeMap<String, Subcategory>,
}

fn matrix_from_columns(rows: usize, cols: &[Vec<Int>], what: &str) -> Result<IntMatrix, CliError> {
    for (j, c) in cols.iter().enumerate() {
        if c.len() != rows {
            return Err(CliError::input(format!(
                "{what}: column {j} has {} entries, expected {rows}",
                c.len()
            )));
        }
    }
    let cols: Vec<_> = cols.iter().map(|c| to_big(c)).collect();
    IntMatrix::from_columns(rows, &cols).map_err(|e| CliError::input(format!("{what}: {e}")))
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T, CliError> {
    map.get(name).ok_or_else(|| {
        let known: Vec<&str> = map.keys().map(String::as_str).collect();
        CliError::input(format!(
            "unknown {kind} `{name}` (defined: {})",
            if known.is_empty() { "none".to_string() } else { known.join(", ") }
        ))
    })
}

impl Workspace {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_file(WorkspaceFile::from_json(&text)?)
    }

    pub fn from_file(file: WorkspaceFile) -> Result<Self, CliError> {
        let ring = file.ring.clone();
        let mut modules = BTreeMap::new();
        for (name, spec) in &file.modules {
            let what = format!("module `{name}`");
            let rel = matrix_from_columns(spec.generators, &spec.relations, &what)?;
            let m = present_module(ring.clone(), spec.generators, rel)
                .map_err(|e| CliError::input(format!("{what}: {e}")))?;
            modules.insert(name.clone(), m);
        }

        let mut submodules = BTreeMap::new();
        for (name, spec) in &file.submodules {
            let what = format!("submodule `{name}`");
            let parent = lookup(&modules, "module", &spec.parent)
                .map_err(|e| CliError::input(format!("{what}: parent: {}", e.message)))?;
            let gens = matrix_from_columns(parent.n_gens(), &spec.gens, &what)?;
            let s = Submodule::new(parent, gens)
                .map_err(|e| CliError::input(format!("{what}: {e}")))?;
            submodules.insert(name.clone(), s);
        }

        let mut subcategories = BTreeMap::new();
        for (name, spec) in &file.subcategories {
            let what = format!("subcategory `{name}`");
            let mut finite = Vec::new();
            for obj in &spec.finite {
                let m = lookup(&modules, "module", obj)
                    .map_err(|e| CliError::input(format!("{what}: {}", e.message)))?;
                if !ring.is_integers() {
                    let injective = is_injective_module(m)
                        .map_err(|e| CliError::input(format!("{what}: {e}")))?;
                    if !injective {
                        return Err(CliError::input(format!(
                            "{what}: module `{obj}` ({}) is not injective over {ring}: Baer criterion fails",
                            m.describe()
                        )));
                    }
                }
                finite.push(m.clone());
            }
            let divisible = spec.divisible.iter().map(|&d| d.into()).collect();
            let cat = Subcategory::new(ring.clone(), finite, divisible)
                .map_err(|e| CliError::input(format!("{what}: {e}")))?;
            subcategories.insert(name.clone(), cat);
        }

        for (name, members) in &file.universes {
            for m in members {
                lookup(&modules, "module", m)
                    .map_err(|e| CliError::input(format!("universe `{name}`: {}", e.message)))?;
            }
        }

        Ok(Workspace {
            file,
            modules,
            submodules,
            subcategories,
        })
    }

    pub fn ring(&self) -> &RingDesc {
        &self.file.ring
    }

    pub fn module(&self, name: &str) -> Result<&FPModule, CliError> {
        lookup(&self.modules, "module", name)
    }

    pub fn submodule(&self, name: &str) -> Result<&Submodule, CliError> {
        lookup(&self.submodules, "submodule", name)
    }

    pub fn subcategory(&self, name: &str) -> Result<&Subcategory, CliError> {
        lookup(&self.subcategories, "subcategory", name)
    }

    pub fn universe(&self, name: &str) -> Result<Vec<FPModule>, CliError> {
        lookup(&self.file.universes, "universe", name)?
            .iter()
            .map(|m| self.module(m).cloned())
            .collect()
    }

    /// Labels of a subcategory's objects: module names, then `Q` / `QmodZ`.
    pub fn object_names(&self, cat: &str) -> Result<Vec<String>, CliError> {
        let spec = lookup(&self.file.subcategories, "subcategory", cat)?;
        let mut names = spec.finite.clone();
        let cat = self.subcategory(cat)?;
        names.extend(cat.divisible_objects().iter().map(|d| d.to_string()));
        Ok(names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "ring": "Zmod:4",
        "modules": {
            "R": {"generators": 1, "relations": []},
            "T": {"generators": 1, "relations": [[2]]}
        },
        "submodules": {"N": {"parent": "R", "gens": [[2]]}},
        "subcategories": {"A": {"finite": ["R"]}}
    }"#;

    #[test]
    fn loads_sample() {
        let ws = Workspace::from_file(WorkspaceFile::from_json(SAMPLE).unwrap()).unwrap();
        assert_eq!(ws.module("T").unwrap().describe(), "Z/2");
        assert_eq!(ws.object_names("A").unwrap(), vec!["R".to_string()]);
    }

    #[test]
    fn missing_names_are_reported() {
        let text = SAMPLE.replace(r#""parent": "R""#, r#""parent": "X""#);
        let err = Workspace::from_file(WorkspaceFile::from_json(&text).unwrap()).unwrap_err();
        assert!(err.message.contains("`X`"), "{}", err.message);
    }

    #[test]
    fn non_injective_object_cites_baer() {
        let text = SAMPLE.replace(r#""finite": ["R"]"#, r#""finite": ["T"]"#);
        let err = Workspace::from_file(WorkspaceFile::from_json(&text).unwrap()).unwrap_err();
        assert!(err.message.contains("`T`"));
        assert!(err.message.contains("Baer"));
    }

    #[test]
    fn bad_column_length() {
        let text = SAMPLE.replace(r#""relations": [[2]]"#, r#""relations": [[2, 1]]"#);
        let err = Workspace::from_file(WorkspaceFile::from_json(&text).unwrap()).unwrap_err();
        assert!(err.message.contains("module `T`"));
    }
}
