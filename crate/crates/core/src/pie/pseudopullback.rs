use std::collections::HashMap;
use std::sync::Arc;

use super::equifier::joint_equifier;
use super::inserter::{inserter, iso_inserter, Inserter};
use super::{PieBuild, PieOptions, ViaPie};
use crate::budget::{Budget, Meter};
use crate::cat::{
    is_isomorphism, product_category, same_category, validate_functor, FinCategory, FinFunctor, MorId,
    NatTransformation, ObjId, RawCategory,
};
use crate::error::{input, Result};

/// Triples `(a, b, theta: ΘA(a) ≅ ΘB(b))` with their projections.
#[derive(Debug, Clone)]
pub struct Pseudopullback {
    pub category: Arc<FinCategory>,
    pub proj_a: FinFunctor,
    pub proj_b: FinFunctor,
    /// The glue isomorphism of each object.
    pub glue: Vec<MorId>,
    objects: HashMap<(ObjId, ObjId, MorId), ObjId>,
    morphisms: HashMap<(ObjId, ObjId, MorId, MorId), MorId>,
}

impl Pseudopullback {
    pub fn object_of(&self, a: ObjId, b: ObjId, theta: MorId) -> Option<ObjId> {
        self.objects.get(&(a, b, theta)).copied()
    }

    pub fn morphism_of(&self, src: ObjId, tgt: ObjId, u: MorId, v: MorId) -> Option<MorId> {
        self.morphisms.get(&(src, tgt, u, v)).copied()
    }
}

fn check_cospan(ta: &FinFunctor, tb: &FinFunctor) -> Result<()> {
    if !same_category(ta.target(), tb.target()) {
        return input("pseudopullback functors must share their target".to_owned());
    }
    Ok(())
}

pub fn pseudopullback_direct(ta: &FinFunctor, tb: &FinFunctor, budget: &Budget) -> Result<Pseudopullback> {
    check_cospan(ta, tb)?;
    let (a, b, c) = (ta.source(), tb.source(), ta.target());
    let mut meter = Meter::new(budget.candidates, "pseudopullback candidates");
    let mut objs: Vec<(ObjId, ObjId, MorId)> = Vec::new();
    let mut by_pair: HashMap<(ObjId, ObjId), Vec<usize>> = HashMap::new();
    for x in a.objects() {
        for y in b.objects() {
            for theta in c.isos(ta.obj(x), tb.obj(y)) {
                meter.tick(1)?;
                by_pair.entry((x, y)).or_default().push(objs.len());
                objs.push((x, y, theta));
            }
        }
    }
    let mut mors: Vec<(usize, usize, MorId, MorId)> = Vec::new();
    let mut mor_index: HashMap<(usize, usize, MorId, MorId), usize> = HashMap::new();
    for u in a.morphisms() {
        for v in b.morphisms() {
            let (Some(srcs), Some(tgts)) = (by_pair.get(&(a.src(u), b.src(v))), by_pair.get(&(a.tgt(u), b.tgt(v))))
            else {
                continue;
            };
            for &s in srcs {
                let want = c.comp(tb.mor(v), objs[s].2);
                for &t in tgts {
                    meter.tick(1)?;
                    if c.comp(objs[t].2, ta.mor(u)) == want {
                        mor_index.insert((s, t, u, v), mors.len());
                        mors.push((s, t, u, v));
                    }
                }
            }
        }
    }
    let mut raw = RawCategory::new(format!("PP({},{})", a.name(), b.name()));
    let names: Vec<String> = objs
        .iter()
        .map(|&(x, y, t)| {
            format!(
                "pp(A={};B={};theta={})",
                a.object_name(x),
                b.object_name(y),
                c.morphism_name(t)
            )
        })
        .collect();
    for n in &names {
        raw.add_object(n.clone());
    }
    for &(s, t, u, v) in &mors {
        raw.add_morphism(
            format!(
                "({},{}):{}->{}",
                a.morphism_name(u),
                b.morphism_name(v),
                names[s],
                names[t]
            ),
            s,
            t,
        );
    }
    raw.identities = objs
        .iter()
        .enumerate()
        .map(|(i, &(x, y, _))| mor_index[&(i, i, a.identity(x), b.identity(y))])
        .collect();
    let (cat, obj_new, mor_new) = raw.build_indexed(budget, |g, f| {
        let (s, _, u1, v1) = mors[f];
        let (_, t, u2, v2) = mors[g];
        mor_index.get(&(s, t, a.compose(u2, u1)?, b.compose(v2, v1)?)).copied()
    })?;
    let cat = Arc::new(cat);
    let n = objs.len();
    let (mut oa, mut ob, mut glue) = (vec![ObjId(0); n], vec![ObjId(0); n], vec![MorId(0); n]);
    let mut objects = HashMap::with_capacity(n);
    for (r, &(x, y, t)) in objs.iter().enumerate() {
        let i = obj_new[r].index();
        oa[i] = x;
        ob[i] = y;
        glue[i] = t;
        objects.insert((x, y, t), obj_new[r]);
    }
    let (mut ma, mut mb) = (vec![MorId(0); mors.len()], vec![MorId(0); mors.len()]);
    let mut morphisms = HashMap::with_capacity(mors.len());
    for (r, &(s, t, u, v)) in mors.iter().enumerate() {
        let m = mor_new[r];
        ma[m.index()] = u;
        mb[m.index()] = v;
        morphisms.insert((obj_new[s], obj_new[t], u, v), m);
    }
    Ok(Pseudopullback {
        proj_a: FinFunctor::new(cat.clone(), a.clone(), oa, ma)?,
        proj_b: FinFunctor::new(cat.clone(), b.clone(), ob, mb)?,
        category: cat,
        glue,
        objects,
        morphisms,
    })
}

/// Equifier family names of the pseudopullback pipeline.
pub const PP_FAMILIES: &[&str] = &["left-inverse", "right-inverse"];

/// The pipeline: inserter of `⟨ΘA π1, ΘB π2⟩, ⟨ΘB π2, ΘA π1⟩: A×B ⇉ C×C`
/// followed by the joint equifier forcing the two inserted morphisms to be
/// mutually inverse.
pub fn pseudopullback_pie(
    ta: &FinFunctor,
    tb: &FinFunctor,
    opts: &PieOptions,
    budget: &Budget,
) -> Result<(PieBuild, Inserter, crate::cat::Product, crate::cat::Product)> {
    check_cospan(ta, tb)?;
    let c = ta.target();
    let k = product_category(&[ta.source().clone(), tb.source().clone()], budget)?;
    let l = product_category(&[c.clone(), c.clone()], budget)?;
    let fa = FinFunctor::compose(ta, &k.projections[0])?;
    let fb = FinFunctor::compose(tb, &k.projections[1])?;
    let f = l.pairing(&[fa.clone(), fb.clone()])?;
    let g = l.pairing(&[fb, fa])?;
    let ins = inserter(&f, &g, budget)?;
    let e = ins.category.clone();
    let u = ins.forgetful.clone();
    let ea = FinFunctor::compose(ta, &FinFunctor::compose(&k.projections[0], &u)?)?;
    let eb = FinFunctor::compose(tb, &FinFunctor::compose(&k.projections[1], &u)?)?;
    let parts = |x: ObjId| {
        let p = l.morphism_parts(ins.structure[x.index()][0]);
        (p[0], p[1])
    };
    let mut pairs = Vec::new();
    if opts.enabled("left-inverse") {
        let comps = e.objects().map(|x| {
            let (t1, t2) = parts(x);
            c.comp(t2, t1)
        });
        pairs.push((
            NatTransformation::identity(&ea),
            NatTransformation::new(ea.clone(), ea.clone(), comps.collect())?,
        ));
    }
    if opts.enabled("right-inverse") {
        let comps = e.objects().map(|x| {
            let (t1, t2) = parts(x);
            c.comp(t1, t2)
        });
        pairs.push((
            NatTransformation::identity(&eb),
            NatTransformation::new(eb.clone(), eb.clone(), comps.collect())?,
        ));
    }
    let view = joint_equifier(&e, &pairs)?;
    let sub = view.materialize(format!("PPie({},{})", ta.source().name(), tb.source().name()))?;
    let build = PieBuild {
        stages: vec![
            (
                "product".to_owned(),
                k.category.num_objects(),
                k.category.num_morphisms(),
            ),
            ("inserter".to_owned(), e.num_objects(), e.num_morphisms()),
            (
                "equifier".to_owned(),
                sub.category.num_objects(),
                sub.category.num_morphisms(),
            ),
        ],
        category: Arc::new(sub.category.clone()),
        sub,
    };
    Ok((build, ins, k, l))
}

/// Pseudopullback through the PIE pipeline, with the canonical comparison
/// `(a, b, theta) ↦ (a, b, theta, theta⁻¹)` from the direct construction.
pub fn pseudopullback_via_pie(ta: &FinFunctor, tb: &FinFunctor, budget: &Budget) -> Result<ViaPie> {
    let direct = pseudopullback_direct(ta, tb, budget)?;
    let (build, ins, k, l) = pseudopullback_pie(ta, tb, &PieOptions::default(), budget)?;
    let c = ta.target();
    let d = &direct.category;
    let mut om = Vec::with_capacity(d.num_objects());
    for x in d.objects() {
        let (a, b, t) = (direct.proj_a.obj(x), direct.proj_b.obj(x), direct.glue[x.index()]);
        let tinv = c.inverse(t).expect("glue is invertible");
        let y = ins
            .object_of(k.object_of(&[a, b]), &[l.morphism_of(&[t, tinv])])
            .and_then(|y| build.sub.local_object(y))
            .ok_or_else(|| crate::Error::Precondition("canonical correspondence misses an object".into()))?;
        om.push(y);
    }
    let mut mm = Vec::with_capacity(d.num_morphisms());
    for m in d.morphisms() {
        let (s, t) = (d.src(m), d.tgt(m));
        let km = k.morphism_of(&[direct.proj_a.mor(m), direct.proj_b.mor(m)]);
        let y = ins
            .morphism_of(
                build.sub.objects[om[s.index()].index()],
                build.sub.objects[om[t.index()].index()],
                km,
            )
            .and_then(|y| build.sub.local_morphism(y))
            .ok_or_else(|| crate::Error::Precondition("canonical correspondence misses a morphism".into()))?;
        mm.push(y);
    }
    let witness = FinFunctor::new(d.clone(), build.category.clone(), om, mm)?;
    Ok(ViaPie {
        witness_is_iso: is_isomorphism(&witness),
        direct: d.clone(),
        category: build.category,
        stages: build.stages,
        witness,
    })
}

/// Outcome of one direction of the pseudopullback/isomorpher comparison.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// The construction produced in the requested direction.
    pub construction: Arc<FinCategory>,
    /// The category it is compared against.
    pub counterpart: Arc<FinCategory>,
    /// Canonical comparison functor `counterpart → construction`.
    pub witness: FinFunctor,
    /// Isomorphism for `to_isomorpher`, equivalence for `to_pullback`.
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionDirection {
    ToIsomorpher,
    ToPullback,
}

/// Isomorpher of `ΘA π1, ΘB π2: A×B ⇉ C`, compared with the pseudopullback.
pub fn pullback_to_isomorpher(ta: &FinFunctor, tb: &FinFunctor, budget: &Budget) -> Result<Reduction> {
    check_cospan(ta, tb)?;
    let h = product_category(&[ta.source().clone(), tb.source().clone()], budget)?;
    let p = FinFunctor::compose(ta, &h.projections[0])?;
    let q = FinFunctor::compose(tb, &h.projections[1])?;
    let iso = iso_inserter(&p, &q, budget)?;
    let pp = pseudopullback_direct(ta, tb, budget)?;
    let d = &pp.category;
    let om = d
        .objects()
        .map(|x| {
            let hx = h.object_of(&[pp.proj_a.obj(x), pp.proj_b.obj(x)]);
            iso.object_of(hx, &[pp.glue[x.index()]])
                .ok_or_else(|| crate::Error::Precondition("isomorpher misses an object".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mm = d
        .morphisms()
        .map(|m| {
            let hm = h.morphism_of(&[pp.proj_a.mor(m), pp.proj_b.mor(m)]);
            iso.morphism_of(om[d.src(m).index()], om[d.tgt(m).index()], hm)
                .ok_or_else(|| crate::Error::Precondition("isomorpher misses a morphism".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = FinFunctor::new(d.clone(), iso.category.clone(), om, mm)?;
    Ok(Reduction {
        holds: is_isomorphism(&witness),
        construction: iso.category,
        counterpart: d.clone(),
        witness,
    })
}

/// Pseudopullback of `⟨Id, P⟩, ⟨Id, Q⟩: H → H×G`, compared with the
/// isomorpher of `P, Q` up to equivalence.
pub fn isomorpher_to_pullback(p: &FinFunctor, q: &FinFunctor, budget: &Budget) -> Result<Reduction> {
    if !p.is_parallel(q) {
        return input("isomorpher needs parallel functors".to_owned());
    }
    let h = p.source();
    let c = product_category(&[h.clone(), p.target().clone()], budget)?;
    let id = FinFunctor::identity(h);
    let ta = c.pairing(&[id.clone(), p.clone()])?;
    let tb = c.pairing(&[id, q.clone()])?;
    let pp = pseudopullback_direct(&ta, &tb, budget)?;
    let iso = iso_inserter(p, q, budget)?;
    let e = &iso.category;
    let om = e
        .objects()
        .map(|x| {
            let hx = iso.carrier(x);
            let glue = c.morphism_of(&[h.identity(hx), iso.structure[x.index()][0]]);
            pp.object_of(hx, hx, glue)
                .ok_or_else(|| crate::Error::Precondition("pseudopullback misses an object".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mm = e
        .morphisms()
        .map(|m| {
            let u = iso.forgetful.mor(m);
            pp.morphism_of(om[e.src(m).index()], om[e.tgt(m).index()], u, u)
                .ok_or_else(|| crate::Error::Precondition("pseudopullback misses a morphism".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = FinFunctor::new(e.clone(), pp.category.clone(), om, mm)?;
    let holds = validate_functor(&witness).ok && witness.is_fully_faithful() && witness.is_essentially_surjective();
    Ok(Reduction {
        construction: pp.category,
        counterpart: e.clone(),
        witness,
        holds,
    })
}

pub fn pullback_isomorpher_reduction(
    direction: ReductionDirection,
    first: &FinFunctor,
    second: &FinFunctor,
    budget: &Budget,
) -> Result<Reduction> {
    match direction {
        ReductionDirection::ToIsomorpher => pullback_to_isomorpher(first, second, budget),
        ReductionDirection::ToPullback => isomorpher_to_pullback(first, second, budget),
    }
}
