use serde::{Deserialize, Serialize};

use super::category::MorphismEntry;
use crate::diagram::{self, Coefficient, Quiver, Relation, RelationSet};
use crate::error::{Error, Result};

fn quiver_tag() -> String {
    "quiver".to_owned()
}

/// On-disk form of a quiver with relations. A relation is a list of
/// `[coefficient, path]` terms, each path a list of arrow ids in
/// traversal order (or `["id_<v>"]` for an empty path).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    #[serde(default = "quiver_tag")]
    pub format: String,
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<MorphismEntry>,
    #[serde(default)]
    pub relations: Vec<Vec<(i64, Vec<String>)>>,
}

impl QuiverFile {
    pub fn from_quiver(q: &Quiver, rels: &RelationSet<i64>) -> Self {
        let arrows = q
            .arrows()
            .iter()
            .map(|a| MorphismEntry {
                id: a.id.clone(),
                src: q.vertices()[a.src].clone(),
                tgt: q.vertices()[a.tgt].clone(),
            })
            .collect();
        let relations = rels
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, p)| {
                        let ids = if p.arrows.is_empty() {
                            vec![format!("id_{}", q.vertices()[p.src])]
                        } else {
                            p.arrows.iter().map(|&a| q.arrows()[a].id.clone()).collect()
                        };
                        (*c, ids)
                    })
                    .collect()
            })
            .collect();
        QuiverFile {
            format: quiver_tag(),
            name: q.name().to_owned(),
            vertices: q.vertices().to_vec(),
            arrows,
            relations,
        }
    }

    pub fn to_quiver(&self) -> Result<Quiver> {
        if self.format != "quiver" {
            return Err(Error::Parse(format!(
                "expected a quiver file, found format {}",
                self.format
            )));
        }
        let vs: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let arrows: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .map(|a| (a.id.as_str(), a.src.as_str(), a.tgt.as_str()))
            .collect();
        Quiver::new(self.name.clone(), &vs, &arrows)
    }

    /// The relations with coefficients read into `R`.
    pub fn relations<R: Coefficient>(&self, q: &Quiver) -> Result<RelationSet<R>> {
        self.relations
            .iter()
            .map(|terms| {
                let terms = terms
                    .iter()
                    .map(|(c, path)| {
                        let ids: Vec<&str> = path.iter().map(String::as_str).collect();
                        Ok((R::from_i64(*c), q.path(&ids)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Relation::new(terms)
            })
            .collect()
    }
}

pub const BUILTIN_QUIVERS: &[&str] = &["point", "a2", "square", "square-free", "complex"];

/// `square` carries its commutativity relation; `complex` is the window
/// `[0, 2]` of the presentation of complexes.
pub fn builtin_quiver(name: &str) -> Option<QuiverFile> {
    let built = match name {
        "point" => Ok(QuiverFile::from_quiver(&diagram::point(), &Vec::new())),
        "a2" => Ok(QuiverFile::from_quiver(&diagram::a2(), &Vec::new())),
        "square-free" => Ok(QuiverFile::from_quiver(&diagram::square(), &Vec::new())),
        "square" => {
            let q = diagram::square();
            diagram::square_commutes::<i64>(&q).map(|r| QuiverFile::from_quiver(&q, &r))
        }
        "complex" => diagram::complex_presentation::<i64>(0, 2).map(|(q, r)| QuiverFile::from_quiver(&q, &r)),
        _ => return None,
    };
    Some(built.expect("builtin quiver"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::F2;
    use crate::io::{canonical_json, parse_json};

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_QUIVERS {
            let f = builtin_quiver(name).unwrap();
            let text = canonical_json(&f);
            let back: QuiverFile = parse_json(&text, name).unwrap();
            let q = back.to_quiver().unwrap();
            let rels = back.relations::<i64>(&q).unwrap();
            assert_eq!(canonical_json(&QuiverFile::from_quiver(&q, &rels)), text);
            assert!(back.relations::<F2>(&q).is_ok());
        }
    }

    #[test]
    fn cyclic_quiver_loads_but_is_flagged() {
        let mut f = builtin_quiver("a2").unwrap();
        f.arrows.push(MorphismEntry {
            id: "b".into(),
            src: "v2".into(),
            tgt: "v1".into(),
        });
        assert!(!f.to_quiver().unwrap().is_acyclic());
    }
}
