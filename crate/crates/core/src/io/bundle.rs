use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::CategoryFile;
use super::load_category_file;
use crate::cat::{builtin, FinCategory, FinFunctor, NatTransformation, PresentationContext};
use crate::error::{Error, Result};
use crate::factorization::FilteredPresentation;

/// A category given by builtin name, by file (optionally pinned by
/// digest), or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategorySource {
    Builtin(String),
    File {
        file: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        digest: Option<String>,
    },
    Inline(Box<CategoryFile>),
}

impl CategorySource {
    /// Resolves the category; file paths are relative to `base`.
    pub fn load(&self, base: &Path) -> Result<FinCategory> {
        match self {
            CategorySource::Builtin(name) => {
                builtin::by_name(name).ok_or_else(|| Error::Input(format!("unknown builtin category {name}")))
            }
            CategorySource::File { file, digest } => Ok(load_category_file(&base.join(file), digest.as_deref())?.1),
            CategorySource::Inline(f) => f.to_category(),
        }
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// A functor between two categories of the bundle, given by name tables,
/// as the identity, or as a constant functor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorEntry {
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub identity: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationEntry {
    pub source: String,
    pub target: String,
    pub components: BTreeMap<String, String>,
}

/// A filtered presentation: a stage functor out of a directed poset, the
/// apex, and one leg per stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationEntry {
    pub stages: String,
    pub apex: String,
    pub legs: BTreeMap<String, String>,
}

/// A choice of small objects in a category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextEntry {
    pub category: String,
    pub small: Vec<String>,
}

fn bundle_tag() -> String {
    "bundle".to_owned()
}

/// Named categories, functors, transformations, presentations and
/// contexts that refer to each other by key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    #[serde(default = "bundle_tag")]
    pub format: String,
    #[serde(default)]
    pub categories: BTreeMap<String, CategorySource>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, FunctorEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub transformations: BTreeMap<String, TransformationEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub presentations: BTreeMap<String, PresentationEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub contexts: BTreeMap<String, ContextEntry>,
}

/// A loaded bundle. Presentations are checked when loading.
#[derive(Debug, Clone, Default)]
pub struct Bundle {
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub functors: BTreeMap<String, FinFunctor>,
    pub transformations: BTreeMap<String, NatTransformation>,
    pub presentations: BTreeMap<String, FilteredPresentation>,
    pub contexts: BTreeMap<String, PresentationContext>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, key: &str) -> Result<&'a T> {
    map.get(key)
        .ok_or_else(|| Error::Input(format!("bundle has no {kind} named {key}")))
}

impl BundleFile {
    pub fn load(&self, base: &Path) -> Result<Bundle> {
        if self.format != "bundle" {
            return Err(Error::Parse(format!(
                "expected a bundle file, found format {}",
                self.format
            )));
        }
        let mut b = Bundle::default();
        for (k, src) in &self.categories {
            let c = src.load(base).map_err(|e| Error::Input(format!("category {k}: {e}")))?;
            b.categories.insert(k.clone(), Arc::new(c));
        }
        for (k, e) in &self.functors {
            let f = functor_from_entry(&b, e).map_err(|err| Error::Input(format!("functor {k}: {err}")))?;
            b.functors.insert(k.clone(), f);
        }
        for (k, e) in &self.transformations {
            let s = lookup(&b.functors, "functor", &e.source)?.clone();
            let t = lookup(&b.functors, "functor", &e.target)?.clone();
            let n = NatTransformation::from_names(s, t, &e.components)
                .map_err(|err| Error::Input(format!("transformation {k}: {err}")))?;
            b.transformations.insert(k.clone(), n);
        }
        for (k, e) in &self.presentations {
            let stages = lookup(&b.functors, "functor", &e.stages)?.clone();
            let (xi, c) = (stages.source().clone(), stages.target().clone());
            let apex = c
                .object_id(&e.apex)
                .ok_or_else(|| Error::Input(format!("presentation {k}: unknown apex {}", e.apex)))?;
            let legs = xi
                .objects()
                .map(|x| {
                    let n = xi.object_name(x);
                    let m = e
                        .legs
                        .get(n)
                        .ok_or_else(|| Error::Input(format!("presentation {k}: no leg at stage {n}")))?;
                    c.morphism_id(m)
                        .ok_or_else(|| Error::Input(format!("presentation {k}: unknown leg {m}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if e.legs.len() != xi.num_objects() {
                return Err(Error::Input(format!("presentation {k}: legs mention unknown stages")));
            }
            b.presentations
                .insert(k.clone(), FilteredPresentation::new(stages, apex, legs)?);
        }
        for (k, e) in &self.contexts {
            let c = lookup(&b.categories, "category", &e.category)?.clone();
            let small: Vec<&str> = e.small.iter().map(String::as_str).collect();
            b.contexts
                .insert(k.clone(), PresentationContext::from_names(c, &small)?);
        }
        Ok(b)
    }
}

fn functor_from_entry(b: &Bundle, e: &FunctorEntry) -> Result<FinFunctor> {
    let s = lookup(&b.categories, "category", &e.source)?;
    let t = lookup(&b.categories, "category", &e.target)?;
    let tables = !e.objects.is_empty() || !e.morphisms.is_empty();
    match (e.identity, &e.constant) {
        (true, None) if !tables => {
            if **s != **t {
                return Err(Error::Input("identity between different categories".to_owned()));
            }
            Ok(FinFunctor::new(
                s.clone(),
                t.clone(),
                s.objects().collect(),
                s.morphisms().collect(),
            )?)
        }
        (false, Some(x)) if !tables => {
            let x = t
                .object_id(x)
                .ok_or_else(|| Error::Input(format!("unknown object {x}")))?;
            Ok(FinFunctor::constant(s, t, x))
        }
        (false, None) => FinFunctor::from_names(s.clone(), t.clone(), &e.objects, &e.morphisms),
        _ => Err(Error::Input(
            "give exactly one of identity, constant, or name tables".to_owned(),
        )),
    }
}

impl Bundle {
    pub fn category(&self, key: &str) -> Result<&Arc<FinCategory>> {
        lookup(&self.categories, "category", key)
    }

    pub fn functor(&self, key: &str) -> Result<&FinFunctor> {
        lookup(&self.functors, "functor", key)
    }

    pub fn transformation(&self, key: &str) -> Result<&NatTransformation> {
        lookup(&self.transformations, "transformation", key)
    }

    pub fn presentation(&self, key: &str) -> Result<&FilteredPresentation> {
        lookup(&self.presentations, "presentation", key)
    }

    pub fn context(&self, key: &str) -> Result<&PresentationContext> {
        lookup(&self.contexts, "context", key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::validate_nat_trans;
    use crate::io::{canonical_json, parse_json};

    const TEXT: &str = r#"{
      "format": "bundle",
      "categories": {"A": "arrow", "S": "sets2"},
      "functors": {
        "id": {"source": "A", "target": "A", "identity": true},
        "one": {"source": "A", "target": "S", "constant": "1"},
        "G": {"source": "A", "target": "S",
              "objects": {"0": "2", "1": "1"},
              "morphisms": {"id_0": "2->2:[0,1]", "id_1": "1->1:[0]", "0<1": "2->1:[0,0]"}}
      },
      "transformations": {
        "phi": {"source": "one", "target": "G", "components": {"0": "1->2:[0]", "1": "1->1:[0]"}}
      },
      "presentations": {"P": {"stages": "id", "apex": "1", "legs": {"0": "0<1", "1": "id_1"}}},
      "contexts": {"ctx": {"category": "A", "small": ["0"]}}
    }"#;

    #[test]
    fn loads_and_round_trips() {
        let file: BundleFile = parse_json(TEXT, "bundle").unwrap();
        let b = file.load(Path::new(".")).unwrap();
        assert!(validate_nat_trans(b.transformation("phi").unwrap()).ok);
        assert_eq!(b.presentation("P").unwrap().max().index(), 1);
        assert_eq!(b.context("ctx").unwrap().small_objects().len(), 1);
        let again: BundleFile = parse_json(&canonical_json(&file), "bundle").unwrap();
        assert_eq!(again, file);
        assert!(matches!(b.functor("missing"), Err(Error::Input(_))));
    }

    #[test]
    fn inline_and_builtin_agree() {
        let inline = CategorySource::Inline(Box::new(CategoryFile::from_category(&builtin::poset3())));
        let named = CategorySource::Builtin("poset3".into());
        let text = canonical_json(&inline);
        let back: CategorySource = parse_json(&text, "source").unwrap();
        assert_eq!(back.load(Path::new(".")).unwrap(), named.load(Path::new(".")).unwrap());
    }
}
