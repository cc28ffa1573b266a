use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::bundle::CategorySource;
use super::category::{CategoryFile, MorphismEntry};
use super::{digest_of, parse_json, read_text};
use crate::cat::{FinCategory, FinFunctor, NatTransformation};
use crate::error::{Error, Result};
use crate::limits2::{builtin as builtin2, CellId, TwoCategory, TwoCell, TwoFunctor};

fn two_category_tag() -> String {
    "two-category".to_owned()
}

fn two_functor_tag() -> String {
    "two-functor".to_owned()
}

/// On-disk form of a strict 2-category: the category format for objects
/// and 1-cells, plus 2-cells with identity, vertical and horizontal
/// tables. Table entries are `[s, t, result]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoCategoryFile {
    #[serde(default = "two_category_tag")]
    pub format: String,
    pub name: String,
    pub objects: Vec<String>,
    pub one_cells: Vec<MorphismEntry>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<[String; 3]>,
    pub two_cells: Vec<MorphismEntry>,
    pub identity_cells: BTreeMap<String, String>,
    pub vcomp: Vec<[String; 3]>,
    pub hcomp: Vec<[String; 3]>,
}

impl TwoCategoryFile {
    pub fn from_two_category(g: &TwoCategory) -> Self {
        let one = CategoryFile::from_category(g.underlying());
        let u = g.underlying();
        let mut two_cells: Vec<MorphismEntry> = g
            .cells()
            .map(|t| {
                let c = g.cell(t);
                MorphismEntry {
                    id: c.id.clone(),
                    src: u.morphism_name(c.src).to_owned(),
                    tgt: u.morphism_name(c.tgt).to_owned(),
                }
            })
            .collect();
        two_cells.sort();
        let identity_cells = u
            .morphisms()
            .map(|a| {
                (
                    u.morphism_name(a).to_owned(),
                    g.cell_name(g.identity_cell(a)).to_owned(),
                )
            })
            .collect();
        let table = |t: &BTreeMap<(CellId, CellId), CellId>| {
            let mut v: Vec<[String; 3]> = t
                .iter()
                .map(|(&(s, r), &x)| {
                    [
                        g.cell_name(s).to_owned(),
                        g.cell_name(r).to_owned(),
                        g.cell_name(x).to_owned(),
                    ]
                })
                .collect();
            v.sort();
            v
        };
        TwoCategoryFile {
            format: two_category_tag(),
            name: g.name().to_owned(),
            objects: one.objects,
            one_cells: one.morphisms,
            identities: one.identities,
            composition: one.composition,
            two_cells,
            identity_cells,
            vcomp: table(g.vcomp_table()),
            hcomp: table(g.hcomp_table()),
        }
    }

    pub fn canonicalize(&mut self) {
        self.objects.sort();
        self.one_cells.sort();
        self.composition.sort();
        self.two_cells.sort();
        self.vcomp.sort();
        self.hcomp.sort();
    }

    pub fn to_two_category(&self) -> Result<TwoCategory> {
        if self.format != "two-category" {
            return Err(Error::Parse(format!(
                "expected a two-category file, found format {}",
                self.format
            )));
        }
        let one = CategoryFile {
            format: "category".to_owned(),
            name: self.name.clone(),
            objects: self.objects.clone(),
            morphisms: self.one_cells.clone(),
            identities: self.identities.clone(),
            composition: self.composition.clone(),
            provenance: None,
        }
        .to_category()?;
        let one = Arc::new(one);
        let mor = |n: &str| {
            one.morphism_id(n)
                .ok_or_else(|| Error::Input(format!("unknown 1-cell {n}")))
        };
        let mut cells = Vec::with_capacity(self.two_cells.len());
        let mut pos = BTreeMap::new();
        for c in &self.two_cells {
            pos.insert(c.id.clone(), CellId(cells.len() as u32));
            cells.push(TwoCell {
                id: c.id.clone(),
                src: mor(&c.src)?,
                tgt: mor(&c.tgt)?,
            });
        }
        let cell = |n: &str| {
            pos.get(n)
                .copied()
                .ok_or_else(|| Error::Input(format!("unknown 2-cell {n}")))
        };
        let identity_cells = one
            .morphisms()
            .map(|a| {
                let n = one.morphism_name(a);
                let t = self
                    .identity_cells
                    .get(n)
                    .ok_or_else(|| Error::Input(format!("1-cell {n} has no identity 2-cell")))?;
                cell(t)
            })
            .collect::<Result<Vec<_>>>()?;
        let table = |rows: &[[String; 3]]| -> Result<BTreeMap<(CellId, CellId), CellId>> {
            rows.iter()
                .map(|[s, t, r]| Ok(((cell(s)?, cell(t)?), cell(r)?)))
                .collect()
        };
        TwoCategory::new(
            self.name.clone(),
            one.clone(),
            cells,
            identity_cells,
            table(&self.vcomp)?,
            table(&self.hcomp)?,
        )
    }
}

/// A 2-category by builtin name, file or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TwoCategorySource {
    Builtin(String),
    File {
        file: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        digest: Option<String>,
    },
    Inline(Box<TwoCategoryFile>),
}

impl TwoCategorySource {
    pub fn load(&self, base: &Path) -> Result<TwoCategory> {
        match self {
            TwoCategorySource::Builtin(n) => {
                builtin2::by_name(n).ok_or_else(|| Error::Input(format!("unknown builtin 2-category {n}")))
            }
            TwoCategorySource::File { file, digest } => {
                let path = base.join(file);
                let mut f: TwoCategoryFile = parse_json(&read_text(&path)?, &path.display().to_string())?;
                f.canonicalize();
                if let Some(want) = digest {
                    let got = digest_of(&f);
                    if &got != want {
                        return Err(Error::Input(format!(
                            "{}: digest {got} does not match {want}",
                            path.display()
                        )));
                    }
                }
                f.to_two_category()
            }
            TwoCategorySource::Inline(f) => f.to_two_category(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorMaps {
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

/// A strict 2-functor into finite categories. Value categories are listed
/// once under `categories` and referred to by key. Identity 1-cells and
/// identity 2-cells that are not listed go to identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoFunctorFile {
    #[serde(default = "two_functor_tag")]
    pub format: String,
    pub source: TwoCategorySource,
    pub categories: BTreeMap<String, CategorySource>,
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub one_cells: BTreeMap<String, FunctorMaps>,
    #[serde(default)]
    pub two_cells: BTreeMap<String, BTreeMap<String, String>>,
}

fn maps_of(f: &FinFunctor) -> FunctorMaps {
    let (s, t) = (f.source(), f.target());
    FunctorMaps {
        objects: s
            .objects()
            .map(|x| (s.object_name(x).to_owned(), t.object_name(f.obj(x)).to_owned()))
            .collect(),
        morphisms: s
            .morphisms()
            .map(|m| (s.morphism_name(m).to_owned(), t.morphism_name(f.mor(m)).to_owned()))
            .collect(),
    }
}

impl TwoFunctorFile {
    /// Writes every cell explicitly, with the 2-category and value
    /// categories inline.
    pub fn from_two_functor(h: &TwoFunctor) -> Self {
        let g = h.source();
        let u = g.underlying();
        let mut categories: BTreeMap<String, CategorySource> = BTreeMap::new();
        let mut keys: Vec<(Arc<FinCategory>, String)> = Vec::new();
        let mut objects = BTreeMap::new();
        for x in u.objects() {
            let c = h.obj(x);
            let key = match keys.iter().find(|(d, _)| **d == **c && d.name() == c.name()) {
                Some((_, k)) => k.clone(),
                None => {
                    let mut k = c.name().to_owned();
                    let mut i = 2;
                    while categories.contains_key(&k) {
                        k = format!("{}-{i}", c.name());
                        i += 1;
                    }
                    categories.insert(
                        k.clone(),
                        CategorySource::Inline(Box::new(CategoryFile::from_category(c))),
                    );
                    keys.push((c.clone(), k.clone()));
                    k
                }
            };
            objects.insert(u.object_name(x).to_owned(), key);
        }
        let one_cells = u
            .morphisms()
            .map(|a| (u.morphism_name(a).to_owned(), maps_of(h.one_cell(a))))
            .collect();
        let two_cells = g
            .cells()
            .map(|t| {
                let n = h.two_cell(t);
                let (c, d) = (n.source().source(), n.source().target());
                let comps = c
                    .objects()
                    .map(|x| (c.object_name(x).to_owned(), d.morphism_name(n.component(x)).to_owned()))
                    .collect();
                (g.cell_name(t).to_owned(), comps)
            })
            .collect();
        TwoFunctorFile {
            format: two_functor_tag(),
            source: TwoCategorySource::Inline(Box::new(TwoCategoryFile::from_two_category(g))),
            categories,
            objects,
            one_cells,
            two_cells,
        }
    }

    pub fn load(&self, base: &Path) -> Result<TwoFunctor> {
        if self.format != "two-functor" {
            return Err(Error::Parse(format!(
                "expected a two-functor file, found format {}",
                self.format
            )));
        }
        let g = Arc::new(self.source.load(base)?);
        let u = g.underlying();
        let mut cats: BTreeMap<&str, Arc<FinCategory>> = BTreeMap::new();
        for (k, src) in &self.categories {
            let c = src.load(base).map_err(|e| Error::Input(format!("category {k}: {e}")))?;
            cats.insert(k, Arc::new(c));
        }
        let on_objects = u
            .objects()
            .map(|x| {
                let n = u.object_name(x);
                let k = self
                    .objects
                    .get(n)
                    .ok_or_else(|| Error::Input(format!("object {n} has no value")))?;
                cats.get(k.as_str())
                    .cloned()
                    .ok_or_else(|| Error::Input(format!("object {n}: unknown category {k}")))
            })
            .collect::<Result<Vec<_>>>()?;
        for k in self.objects.keys() {
            if u.object_id(k).is_none() {
                return Err(Error::Input(format!("unknown object {k}")));
            }
        }
        let on_one = u
            .morphisms()
            .map(|a| {
                let (s, t) = (&on_objects[u.src(a).index()], &on_objects[u.tgt(a).index()]);
                let n = u.morphism_name(a);
                match self.one_cells.get(n) {
                    Some(m) => FinFunctor::from_names(s.clone(), t.clone(), &m.objects, &m.morphisms)
                        .map_err(|e| Error::Input(format!("1-cell {n}: {e}"))),
                    None if u.is_identity(a) => Ok(FinFunctor::identity(s)),
                    None => Err(Error::Input(format!("1-cell {n} has no value"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        for k in self.one_cells.keys() {
            if u.morphism_id(k).is_none() {
                return Err(Error::Input(format!("unknown 1-cell {k}")));
            }
        }
        let on_two = g
            .cells()
            .map(|t| {
                let c = g.cell(t);
                let (f, h) = (on_one[c.src.index()].clone(), on_one[c.tgt.index()].clone());
                match self.two_cells.get(&c.id) {
                    Some(comps) => NatTransformation::from_names(f, h, comps)
                        .map_err(|e| Error::Input(format!("2-cell {}: {e}", c.id))),
                    None if g.is_identity_cell(t) => Ok(NatTransformation::identity(&f)),
                    None => Err(Error::Input(format!("2-cell {} has no value", c.id))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        for k in self.two_cells.keys() {
            if g.cell_id(k).is_none() {
                return Err(Error::Input(format!("unknown 2-cell {k}")));
            }
        }
        TwoFunctor::new(g, on_objects, on_one, on_two)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::canonical_json;
    use crate::limits2::{validate_two_category, validate_two_functor};

    #[test]
    fn builtin_two_categories_round_trip() {
        for name in builtin2::CORPUS {
            let g = builtin2::by_name(name).unwrap();
            let file = TwoCategoryFile::from_two_category(&g);
            let back = file.to_two_category().unwrap();
            assert!(validate_two_category(&back).ok);
            let again = TwoCategoryFile::from_two_category(&back);
            assert_eq!(canonical_json(&again), canonical_json(&file));
        }
    }

    #[test]
    fn builtin_two_functors_round_trip() {
        for name in builtin2::FUNCTOR_CORPUS {
            let h = builtin2::functor_by_name(name).unwrap();
            let file = TwoFunctorFile::from_two_functor(&h);
            let text = canonical_json(&file);
            let parsed: TwoFunctorFile = parse_json(&text, name).unwrap();
            let back = parsed.load(Path::new(".")).unwrap();
            assert!(validate_two_functor(&back).ok, "{name}");
            assert_eq!(canonical_json(&TwoFunctorFile::from_two_functor(&back)), text);
        }
    }
}
