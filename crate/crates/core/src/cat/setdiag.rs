use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::category::{FinCategory, MorId, ObjId};
use super::functor::{violation, FinFunctor, ValidationReport};
use crate::error::{input, Result};

/// A functor from a finite shape into finite sets, with elements addressed by
/// position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetDiagram {
    shape: Arc<FinCategory>,
    sets: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
}

impl SetDiagram {
    pub fn new(shape: Arc<FinCategory>, sets: Vec<Vec<String>>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() != shape.num_objects() || maps.len() != shape.num_morphisms() {
            return input("set diagram is not total on its shape".to_owned());
        }
        for f in shape.morphisms() {
            let (s, t) = (shape.src(f), shape.tgt(f));
            let m = &maps[f.index()];
            if m.len() != sets[s.index()].len() || m.iter().any(|&v| v >= sets[t.index()].len()) {
                return input(format!(
                    "function table for {} has the wrong shape",
                    shape.morphism_name(f)
                ));
            }
        }
        Ok(SetDiagram { shape, sets, maps })
    }

    /// Anonymous elements `0..n` at each object.
    pub fn from_sizes(shape: Arc<FinCategory>, sizes: &[usize], maps: Vec<Vec<usize>>) -> Result<Self> {
        let sets = sizes.iter().map(|&n| (0..n).map(|i| i.to_string()).collect()).collect();
        SetDiagram::new(shape, sets, maps)
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    pub fn set(&self, x: ObjId) -> &[String] {
        &self.sets[x.index()]
    }

    pub fn size(&self, x: ObjId) -> usize {
        self.sets[x.index()].len()
    }

    pub fn map(&self, f: MorId) -> &[usize] {
        &self.maps[f.index()]
    }

    pub fn validate(&self) -> ValidationReport {
        let c = &self.shape;
        let mut out = Vec::new();
        for x in c.objects() {
            let id = self.map(c.identity(x));
            if id.iter().enumerate().any(|(i, &v)| i != v) {
                out.push(violation("functor identity", &[c.object_name(x)]));
            }
        }
        for f in c.morphisms() {
            for &g in c.outgoing(c.tgt(f)) {
                let Some(h) = c.compose(g, f) else { continue };
                let (fm, gm, hm) = (self.map(f), self.map(g), self.map(h));
                if fm.iter().zip(hm).any(|(&a, &b)| gm[a] != b) {
                    out.push(violation(
                        "functor composition",
                        &[c.morphism_name(g), c.morphism_name(f)],
                    ));
                }
            }
        }
        ValidationReport::from_violations(out)
    }

    /// Restriction `D ∘ delta` along a functor into the shape.
    pub fn restrict_along(&self, delta: &FinFunctor) -> Result<SetDiagram> {
        if !super::functor::same_category(delta.target(), &self.shape) {
            return input("restriction functor does not land in the diagram shape".to_owned());
        }
        let src = delta.source();
        let sets = src.objects().map(|x| self.sets[delta.obj(x).index()].clone()).collect();
        let maps = src
            .morphisms()
            .map(|f| self.maps[delta.mor(f).index()].clone())
            .collect();
        SetDiagram::new(src.clone(), sets, maps)
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.sets.len() + 1);
        let mut acc = 0;
        for s in &self.sets {
            off.push(acc);
            acc += s.len();
        }
        off.push(acc);
        off
    }
}

/// A cocone under a set diagram: apex elements and one leg per shape object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone {
    pub apex: Vec<String>,
    pub legs: Vec<Vec<usize>>,
}

impl Cocone {
    pub fn commutes(&self, d: &SetDiagram) -> bool {
        let c = d.shape();
        if self.legs.len() != c.num_objects() {
            return false;
        }
        for x in c.objects() {
            let leg = &self.legs[x.index()];
            if leg.len() != d.size(x) || leg.iter().any(|&v| v >= self.apex.len()) {
                return false;
            }
        }
        c.morphisms().all(|f| {
            let (s, t) = (c.src(f), c.tgt(f));
            d.map(f)
                .iter()
                .enumerate()
                .all(|(e, &fe)| self.legs[t.index()][fe] == self.legs[s.index()][e])
        })
    }

    /// The map out of `self` into `other` compatible with the legs, if it
    /// exists; `self` must be jointly surjective for uniqueness.
    pub fn factor_through(&self, other: &Cocone) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.apex.len()];
        for (mine, theirs) in self.legs.iter().zip(&other.legs) {
            for (&a, &b) in mine.iter().zip(theirs) {
                if map[a] == usize::MAX {
                    map[a] = b;
                } else if map[a] != b {
                    return None;
                }
            }
        }
        if map.contains(&usize::MAX) {
            return None;
        }
        Some(map)
    }
}

/// Colimit of a set diagram: the disjoint union of all values modulo the
/// equivalence generated by `e ~ D(f)(e)`.
///
/// Classes are ordered by their least member in the order (object, element),
/// and each apex element is labelled `x:e` after that member.
pub fn colimit_set_diagram(d: &SetDiagram) -> (Vec<String>, Cocone) {
    let c = d.shape();
    let off = d.offsets();
    let total = *off.last().unwrap_or(&0);
    let mut uf = UnionFind::<usize>::new(total);
    for f in c.morphisms() {
        let (s, t) = (c.src(f), c.tgt(f));
        for (e, &fe) in d.map(f).iter().enumerate() {
            uf.union(off[s.index()] + e, off[t.index()] + fe);
        }
    }
    let mut class_of_root = vec![usize::MAX; total];
    let mut apex = Vec::new();
    let mut legs = Vec::with_capacity(c.num_objects());
    for x in c.objects() {
        let mut leg = Vec::with_capacity(d.size(x));
        for e in 0..d.size(x) {
            let r = uf.find(off[x.index()] + e);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = apex.len();
                apex.push(format!("{}:{}", c.object_name(x), d.set(x)[e]));
            }
            leg.push(class_of_root[r]);
        }
        legs.push(leg);
    }
    let cocone = Cocone {
        apex: apex.clone(),
        legs,
    };
    (apex, cocone)
}

/// The canonical map `colim(D ∘ delta) → colim(D)` induced by `delta`.
pub fn colimit_comparison(d: &SetDiagram, delta: &FinFunctor) -> Result<ComparisonMap> {
    let restricted = d.restrict_along(delta)?;
    let (small, small_cocone) = colimit_set_diagram(&restricted);
    let (big, big_cocone) = colimit_set_diagram(d);
    let mut map = vec![usize::MAX; small.len()];
    for x in delta.source().objects() {
        for (e, &cls) in small_cocone.legs[x.index()].iter().enumerate() {
            map[cls] = big_cocone.legs[delta.obj(x).index()][e];
        }
    }
    Ok(ComparisonMap {
        source_size: small.len(),
        target_size: big.len(),
        map,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonMap {
    pub source_size: usize,
    pub target_size: usize,
    pub map: Vec<usize>,
}

impl ComparisonMap {
    pub fn is_bijection(&self) -> bool {
        if self.source_size != self.target_size {
            return false;
        }
        let mut seen = vec![false; self.target_size];
        self.map
            .iter()
            .all(|&v| v < self.target_size && !std::mem::replace(&mut seen[v], true))
    }
}
