use std::collections::HashMap;
use std::fmt;

use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use super::scalar::Coefficient;
use crate::error::{input, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite quiver; vertices and arrows are kept sorted by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    acyclic: bool,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// Arrows are `(id, src, tgt)` by vertex name. Arrow ids may not start
    /// with `id_`, which names empty paths.
    pub fn new(name: impl Into<String>, vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let mut vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        vs.sort();
        let vertex_index: HashMap<String, usize> = vs.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        if vertex_index.len() != vs.len() {
            return input("duplicate vertex".to_owned());
        }
        let mut arr = Vec::with_capacity(arrows.len());
        for &(id, s, t) in arrows {
            if id.starts_with("id_") {
                return input(format!("arrow id {id} clashes with empty-path names"));
            }
            let (Some(&src), Some(&tgt)) = (vertex_index.get(s), vertex_index.get(t)) else {
                return input(format!("arrow {id} has an unknown endpoint"));
            };
            arr.push(Arrow {
                id: id.to_owned(),
                src,
                tgt,
            });
        }
        arr.sort_by(|a, b| a.id.cmp(&b.id));
        let arrow_index: HashMap<String, usize> = arr.iter().enumerate().map(|(i, a)| (a.id.clone(), i)).collect();
        if arrow_index.len() != arr.len() {
            return input("duplicate arrow id".to_owned());
        }
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = vs.iter().map(|_| g.add_node(())).collect();
        for a in &arr {
            g.add_edge(nodes[a.src], nodes[a.tgt], ());
        }
        Ok(Quiver {
            name: name.into(),
            acyclic: !is_cyclic_directed(&g),
            vertices: vs,
            arrows: arr,
            vertex_index,
            arrow_index,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    /// Resolves a path given as arrow ids in traversal order, or as the
    /// single token `id_<v>` for the empty path at `v`.
    pub fn path(&self, ids: &[&str]) -> Result<Path> {
        if let [one] = ids {
            if let Some(v) = one.strip_prefix("id_") {
                let Some(v) = self.vertex(v) else {
                    return input(format!("unknown vertex in {one}"));
                };
                return Ok(Path::empty(v));
            }
        }
        let Some(first) = ids.first() else {
            return input("a path needs at least one arrow or an id_<v> token".to_owned());
        };
        let idx = |id: &str| {
            self.arrow(id)
                .ok_or_else(|| crate::Error::Input(format!("unknown arrow {id}")))
        };
        let mut p = Path::empty(self.arrows[idx(first)?].src);
        for id in ids {
            let a = idx(id)?;
            if self.arrows[a].src != p.tgt {
                return input(format!("path breaks at arrow {id}"));
            }
            p.arrows.push(a);
            p.tgt = self.arrows[a].tgt;
        }
        Ok(p)
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("id_{}", self.vertices[p.src]);
        }
        let ids: Vec<&str> = p.arrows.iter().map(|&a| self.arrows[a].id.as_str()).collect();
        ids.join(".")
    }
}

/// A path in traversal order; the empty path at `src` is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn empty(v: usize) -> Self {
        Path {
            src: v,
            tgt: v,
            arrows: Vec::new(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.tgt != next.src {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            src: self.src,
            tgt: next.tgt,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Canonical path order: length, then arrow sequence.
pub fn path_order(a: &Path, b: &Path) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.arrows.cmp(&b.arrows))
}

/// A formal combination of parallel paths declared zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation<R> {
    pub src: usize,
    pub tgt: usize,
    pub terms: Vec<(R, Path)>,
}

impl<R: Coefficient> Relation<R> {
    pub fn new(terms: Vec<(R, Path)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return input("a relation needs at least one term".to_owned());
        };
        let (src, tgt) = (first.src, first.tgt);
        if terms.iter().any(|(_, p)| p.src != src || p.tgt != tgt) {
            return input("relation terms must be parallel paths".to_owned());
        }
        Ok(Relation { src, tgt, terms })
    }

    pub fn label(&self, q: &Quiver) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, p)| format!("{c}*{}", q.path_label(p)))
            .collect();
        parts.join(" + ")
    }
}

impl<R: fmt::Display> fmt::Display for Relation<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "relation {} -> {} with {} terms",
            self.src,
            self.tgt,
            self.terms.len()
        )
    }
}

pub type RelationSet<R> = Vec<Relation<R>>;

/// The window `[n0, n1]` of the presentation of complexes: vertices
/// `n0..=n1`, arrows `d<n>: n → n+1`, relations `d_{n+1} d_n`.
pub fn complex_presentation<R: Coefficient>(n0: i64, n1: i64) -> Result<(Quiver, RelationSet<R>)> {
    if n0 >= n1 {
        return input(format!("complex window needs n0 < n1, got [{n0}, {n1}]"));
    }
    let names: Vec<String> = (n0..=n1).map(|n| n.to_string()).collect();
    let arrow_ids: Vec<String> = (n0..n1).map(|n| format!("d{n}")).collect();
    let arrows: Vec<(&str, &str, &str)> = arrow_ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), names[i].as_str(), names[i + 1].as_str()))
        .collect();
    let verts: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let q = Quiver::new(format!("complex[{n0},{n1}]"), &verts, &arrows)?;
    let mut rels = Vec::new();
    for w in arrow_ids.windows(2) {
        let p = q.path(&[w[0].as_str(), w[1].as_str()])?;
        rels.push(Relation::new(vec![(R::one(), p)])?);
    }
    Ok((q, rels))
}

/// `v1 → v2`.
pub fn a2() -> Quiver {
    Quiver::new("A2", &["v1", "v2"], &[("a", "v1", "v2")]).expect("A2 quiver")
}

pub fn point() -> Quiver {
    Quiver::new("point", &["v"], &[]).expect("point quiver")
}

/// `00 → 10 → 11` and `00 → 01 → 11`.
pub fn square() -> Quiver {
    Quiver::new(
        "square",
        &["00", "01", "10", "11"],
        &[
            ("x", "00", "10"),
            ("u", "10", "11"),
            ("y", "00", "01"),
            ("v", "01", "11"),
        ],
    )
    .expect("square quiver")
}

/// The commutativity relation `x.u - y.v` of [`square`].
pub fn square_commutes<R: Coefficient>(q: &Quiver) -> Result<RelationSet<R>> {
    Ok(vec![Relation::new(vec![
        (R::one(), q.path(&["x", "u"])?),
        (-R::one(), q.path(&["y", "v"])?),
    ])?])
}
