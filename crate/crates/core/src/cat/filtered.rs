use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::category::{FinCategory, MorId, ObjId, RawCategory};
use super::functor::FinFunctor;
use crate::budget::Budget;
use crate::error::{input, Result};

/// A yes/no answer with a named witness when it is no (or, for searches
/// that succeed constructively, when it is yes).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Vec<String>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict {
            holds: true,
            witness: Vec::new(),
        }
    }

    pub fn no(witness: Vec<String>) -> Self {
        Verdict { holds: false, witness }
    }
}

/// Pairwise filteredness: nonempty, cospans for all object pairs, and a
/// coequalizing morphism for every parallel pair.
pub fn is_filtered(c: &FinCategory) -> Verdict {
    if c.num_objects() == 0 {
        return Verdict::no(vec!["empty".to_owned()]);
    }
    for x in c.objects() {
        for y in c.objects().skip(x.index() + 1) {
            let ok = c.objects().any(|z| !c.hom(x, z).is_empty() && !c.hom(y, z).is_empty());
            if !ok {
                return Verdict::no(vec![
                    "no cospan".to_owned(),
                    c.object_name(x).to_owned(),
                    c.object_name(y).to_owned(),
                ]);
            }
        }
    }
    for x in c.objects() {
        for y in c.objects() {
            let hom = c.hom(x, y);
            for (i, &f) in hom.iter().enumerate() {
                for &g in &hom[i + 1..] {
                    let ok = c.outgoing(y).iter().any(|&h| c.compose(h, f) == c.compose(h, g));
                    if !ok {
                        return Verdict::no(vec![
                            "not coequalized".to_owned(),
                            c.morphism_name(f).to_owned(),
                            c.morphism_name(g).to_owned(),
                        ]);
                    }
                }
            }
        }
    }
    Verdict::yes()
}

/// An ambient category with a designated set of small objects.
#[derive(Debug, Clone)]
pub struct PresentationContext {
    ambient: Arc<FinCategory>,
    small: Vec<ObjId>,
}

impl PresentationContext {
    pub fn new(ambient: Arc<FinCategory>, small: &[ObjId]) -> Result<Self> {
        if small.iter().any(|x| x.index() >= ambient.num_objects()) {
            return input("small object outside the ambient category".to_owned());
        }
        let mut small = small.to_vec();
        small.sort();
        small.dedup();
        Ok(PresentationContext { ambient, small })
    }

    pub fn from_names(ambient: Arc<FinCategory>, small: &[&str]) -> Result<Self> {
        let ids = small
            .iter()
            .map(|n| {
                ambient
                    .object_id(n)
                    .ok_or_else(|| crate::Error::Input(format!("unknown small object {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PresentationContext::new(ambient, &ids)
    }

    /// Every object is small.
    pub fn all(ambient: Arc<FinCategory>) -> Self {
        let small = ambient.objects().collect();
        PresentationContext { ambient, small }
    }

    pub fn ambient(&self) -> &Arc<FinCategory> {
        &self.ambient
    }

    pub fn small_objects(&self) -> &[ObjId] {
        &self.small
    }

    pub fn is_small(&self, x: ObjId) -> bool {
        self.small.binary_search(&x).is_ok()
    }
}

/// The canonical diagram of morphisms from small objects into a fixed object.
#[derive(Debug, Clone)]
pub struct CanonicalDiagram {
    pub index: Arc<FinCategory>,
    pub diagram: FinFunctor,
    /// For each index object, the ambient morphism `v: D_v → K` it stands for.
    pub arrows: Vec<MorId>,
}

/// Index objects are named after the morphism `v`; an index morphism
/// `a: D_v → D_w` with `w ∘ a = v` is named `a:v->w`.
pub fn canonical_diagram(ctx: &PresentationContext, k: ObjId) -> Result<CanonicalDiagram> {
    let c = ctx.ambient();
    if k.index() >= c.num_objects() {
        return input("target object is not in the ambient category".to_owned());
    }
    let vs: Vec<MorId> = ctx
        .small_objects()
        .iter()
        .flat_map(|&s| c.hom(s, k).iter().copied())
        .collect();
    let mut raw = RawCategory::new(format!("Δ({})", c.object_name(k)));
    for &v in &vs {
        raw.add_object(c.morphism_name(v));
    }
    // (index of v, index of w, ambient a)
    let mut mors: Vec<(usize, usize, MorId)> = Vec::new();
    let mut lookup = HashMap::new();
    let mut by_name = HashMap::new();
    for (i, &v) in vs.iter().enumerate() {
        for (j, &w) in vs.iter().enumerate() {
            for &a in c.hom(c.src(v), c.src(w)) {
                if c.compose(w, a) == Some(v) {
                    let name = format!("{}:{}->{}", c.morphism_name(a), c.morphism_name(v), c.morphism_name(w));
                    lookup.insert((i, j, a), mors.len());
                    by_name.insert(name.clone(), a);
                    raw.add_morphism(name, i, j);
                    mors.push((i, j, a));
                }
            }
        }
    }
    raw.identities = vs
        .iter()
        .enumerate()
        .map(|(i, &v)| lookup[&(i, i, c.identity(c.src(v)))])
        .collect();
    let index = raw.build(&Budget::default(), |g, f| {
        let (i, _, a) = mors[f];
        let (_, l, b) = mors[g];
        lookup.get(&(i, l, c.compose(b, a)?)).copied()
    })?;
    let index = Arc::new(index);
    let arrows: Vec<MorId> = index
        .objects()
        .map(|x| c.morphism_id(index.object_name(x)).expect("named after v"))
        .collect();
    let om = arrows.iter().map(|&v| c.src(v)).collect();
    let mm = index.morphisms().map(|m| by_name[index.morphism_name(m)]).collect();
    let diagram = FinFunctor::new(index.clone(), c.clone(), om, mm)?;
    Ok(CanonicalDiagram { index, diagram, arrows })
}

/// Cofinality through comma categories: for every `w` in the target,
/// `(w ↓ delta)` must be nonempty and connected.
pub fn is_cofinal(delta: &FinFunctor) -> Verdict {
    let (c, d) = (delta.source(), delta.target());
    for w in d.objects() {
        // comma objects (x, a: w → delta x)
        let mut objs: Vec<(ObjId, MorId)> = Vec::new();
        let mut pos = HashMap::new();
        for x in c.objects() {
            for &a in d.hom(w, delta.obj(x)) {
                pos.insert((x, a), objs.len());
                objs.push((x, a));
            }
        }
        if objs.is_empty() {
            return Verdict::no(vec![d.object_name(w).to_owned(), "empty".to_owned()]);
        }
        let mut uf = UnionFind::<usize>::new(objs.len());
        for (i, &(x, a)) in objs.iter().enumerate() {
            for &u in c.outgoing(x) {
                let a2 = d.comp(delta.mor(u), a);
                uf.union(i, pos[&(c.tgt(u), a2)]);
            }
        }
        let r = uf.find(0);
        if (1..objs.len()).any(|i| uf.find(i) != r) {
            return Verdict::no(vec![d.object_name(w).to_owned(), "disconnected".to_owned()]);
        }
    }
    Verdict::yes()
}

/// The specialised criterion for a fully faithful functor into a filtered
/// category: cofinal iff every target object maps into some image object.
/// Returns `None` when the criterion does not apply.
pub fn cofinal_by_reachability(delta: &FinFunctor) -> Option<Verdict> {
    let d = delta.target();
    if !delta.is_fully_faithful() || !is_filtered(d).holds {
        return None;
    }
    for w in d.objects() {
        let reach = delta.source().objects().any(|x| !d.hom(w, delta.obj(x)).is_empty());
        if !reach {
            return Some(Verdict::no(vec![d.object_name(w).to_owned(), "empty".to_owned()]));
        }
    }
    Some(Verdict::yes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::builtin;

    #[test]
    fn filtered_examples() {
        assert!(is_filtered(&builtin::terminal()).holds);
        let v = is_filtered(&builtin::discrete(2));
        assert!(!v.holds);
        assert_eq!(v.witness[0], "no cospan");
        let v = is_filtered(&builtin::parallel_pair());
        assert_eq!(v.witness, vec!["not coequalized", "f", "g"]);
        assert!(is_filtered(&builtin::square()).holds);
    }

    #[test]
    fn canonical_diagram_on_arrow() {
        let c = Arc::new(builtin::arrow());
        let ctx = PresentationContext::all(c.clone());
        let cd = canonical_diagram(&ctx, c.object_id("1").unwrap()).unwrap();
        assert_eq!(cd.index.num_objects(), 2);
        assert_eq!(cd.index.num_morphisms(), 3);
        let top = cd.index.object_id("id_1").unwrap();
        for x in cd.index.objects() {
            assert_eq!(cd.index.hom(x, top).len(), 1);
        }
    }

    #[test]
    fn empty_small_set_gives_empty_diagram() {
        let c = Arc::new(builtin::square());
        let ctx = PresentationContext::new(c.clone(), &[]).unwrap();
        let cd = canonical_diagram(&ctx, ObjId(3)).unwrap();
        assert_eq!(cd.index.num_objects(), 0);
        assert!(!is_filtered(&cd.index).holds);
    }

    #[test]
    fn top_inclusion_is_cofinal() {
        let a = Arc::new(builtin::arrow());
        let t = Arc::new(builtin::terminal());
        let top = FinFunctor::constant(&t, &a, a.object_id("1").unwrap());
        assert!(is_cofinal(&top).holds);
        let bottom = FinFunctor::constant(&t, &a, a.object_id("0").unwrap());
        assert!(!is_cofinal(&bottom).holds);
    }

    #[test]
    fn discrete_into_arrow_is_not_cofinal() {
        let a = Arc::new(builtin::arrow());
        let d = Arc::new(builtin::discrete(2));
        let f = FinFunctor::new(
            d.clone(),
            a.clone(),
            vec![ObjId(0), ObjId(1)],
            vec![a.identity(ObjId(0)), a.identity(ObjId(1))],
        )
        .unwrap();
        let v = is_cofinal(&f);
        assert_eq!(v.witness, vec!["0", "disconnected"]);
    }
}
