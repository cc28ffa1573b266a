use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cat::{CategoryBuilder, FinCategory};
use crate::error::Result;

/// `{id, src, tgt}` entry shared by the category, 2-category and quiver
/// formats.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// Where a constructed category came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// Input name to digest.
    pub inputs: BTreeMap<String, String>,
}

fn category_tag() -> String {
    "category".to_owned()
}

/// On-disk form of a finite category. Composition entries are
/// `[g, f, g∘f]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    #[serde(default = "category_tag")]
    pub format: String,
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl CategoryFile {
    pub fn from_category(c: &FinCategory) -> Self {
        let morphisms = c
            .morphisms()
            .map(|f| MorphismEntry {
                id: c.morphism_name(f).to_owned(),
                src: c.object_name(c.src(f)).to_owned(),
                tgt: c.object_name(c.tgt(f)).to_owned(),
            })
            .collect();
        let identities = c
            .objects()
            .map(|x| (c.object_name(x).to_owned(), c.morphism_name(c.identity(x)).to_owned()))
            .collect();
        let mut composition = Vec::new();
        for f in c.morphisms() {
            for &g in c.outgoing(c.tgt(f)) {
                if let Some(h) = c.compose(g, f) {
                    composition.push([
                        c.morphism_name(g).to_owned(),
                        c.morphism_name(f).to_owned(),
                        c.morphism_name(h).to_owned(),
                    ]);
                }
            }
        }
        let mut file = CategoryFile {
            format: category_tag(),
            name: c.name().to_owned(),
            objects: c.object_names().to_vec(),
            morphisms,
            identities,
            composition,
            provenance: None,
        };
        file.canonicalize();
        file
    }

    /// Sorts every list, so equal categories serialize identically.
    pub fn canonicalize(&mut self) {
        self.objects.sort();
        self.morphisms.sort();
        self.composition.sort();
    }

    /// Builds the category. Unknown identifiers are input errors naming
    /// the identifier; law violations are left to validation.
    pub fn to_category(&self) -> Result<FinCategory> {
        if self.format != "category" {
            return Err(crate::Error::Parse(format!(
                "expected a category file, found format {}",
                self.format
            )));
        }
        let mut b = CategoryBuilder::new(self.name.clone());
        for o in &self.objects {
            b = b.object(o);
        }
        for m in &self.morphisms {
            b = b.morphism(&m.id, &m.src, &m.tgt);
        }
        for (o, m) in &self.identities {
            b = b.identity(o, m);
        }
        for [g, f, h] in &self.composition {
            b = b.compose(g, f, h);
        }
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{builtin, validate_category};

    #[test]
    fn builtins_round_trip() {
        for name in builtin::CORPUS {
            let c = builtin::by_name(name).unwrap();
            let file = CategoryFile::from_category(&c);
            let back = file.to_category().unwrap();
            assert_eq!(back, c);
            assert!(validate_category(&back).ok);
            assert_eq!(CategoryFile::from_category(&back), file);
        }
    }

    #[test]
    fn dangling_source_is_named() {
        let mut file = CategoryFile::from_category(&builtin::arrow());
        file.morphisms[0].src = "nowhere".into();
        let err = file.to_category().unwrap_err().to_string();
        assert!(err.contains("nowhere"), "{err}");
    }
}
