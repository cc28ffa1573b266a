use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::cat::{
    enumerate_functors, enumerate_transformations, is_isomorphism, product_category, product_table_estimate,
    FinCategory, FinFunctor, MorId, NatTransformation, ObjId, Product, RawCategory,
};
use crate::error::Result;
use crate::pie::{joint_equifier, joint_inserter, Inserter, PieBuild, PieOptions, ViaPie};

pub const FUN_FAMILIES: &[&str] = &["composition", "identity"];

/// The functor category `[C, K]` with its objects and morphisms kept as
/// functors and transformations.
#[derive(Debug, Clone)]
pub struct FunCategory {
    pub category: Arc<FinCategory>,
    pub functors: Vec<FinFunctor>,
    pub transformations: Vec<NatTransformation>,
    index: HashMap<Vec<MorId>, ObjId>,
}

impl FunCategory {
    pub fn object_of(&self, f: &FinFunctor) -> Option<ObjId> {
        self.index.get(f.morphism_map()).copied()
    }
}

fn functor_label(f: &FinFunctor) -> String {
    let t = f.target();
    let parts: Vec<&str> = f.morphism_map().iter().map(|&m| t.morphism_name(m)).collect();
    format!("fun[{}]", parts.join(","))
}

pub fn fun_category_direct(c: &Arc<FinCategory>, k: &Arc<FinCategory>, budget: &Budget) -> Result<FunCategory> {
    let functors = enumerate_functors(c, k, budget)?;
    let names: Vec<String> = functors.iter().map(functor_label).collect();
    let mut raw = RawCategory::new(format!("[{},{}]", c.name(), k.name()));
    for n in &names {
        raw.add_object(n.clone());
    }
    let mut trans: Vec<(usize, usize, NatTransformation)> = Vec::new();
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for t in enumerate_transformations(f, g, false, budget)? {
                trans.push((i, j, t));
            }
        }
    }
    let mut mor_index: HashMap<(usize, usize, Vec<MorId>), usize> = HashMap::with_capacity(trans.len());
    for (r, (s, t, a)) in trans.iter().enumerate() {
        let parts: Vec<&str> = a.components().iter().map(|&m| k.morphism_name(m)).collect();
        raw.add_morphism(format!("nat[{}]:{}->{}", parts.join(","), names[*s], names[*t]), *s, *t);
        mor_index.insert((*s, *t, a.components().to_vec()), r);
    }
    raw.identities = functors
        .iter()
        .enumerate()
        .map(|(i, f)| mor_index[&(i, i, NatTransformation::identity(f).components().to_vec())])
        .collect();
    let (cat, obj_new, mor_new) = raw.build_indexed(budget, |g, f| {
        let (s, _, u) = &trans[f];
        let (_, t, v) = &trans[g];
        let w: Vec<MorId> = u
            .components()
            .iter()
            .zip(v.components())
            .map(|(&x, &y)| k.comp(y, x))
            .collect();
        mor_index.get(&(*s, *t, w)).copied()
    })?;
    let mut placed_f = vec![None; functors.len()];
    let mut index = HashMap::with_capacity(functors.len());
    for (r, f) in functors.into_iter().enumerate() {
        index.insert(f.morphism_map().to_vec(), obj_new[r]);
        placed_f[obj_new[r].index()] = Some(f);
    }
    let mut placed_t = vec![None; trans.len()];
    for (r, (_, _, a)) in trans.into_iter().enumerate() {
        placed_t[mor_new[r].index()] = Some(a);
    }
    Ok(FunCategory {
        category: Arc::new(cat),
        functors: placed_f.into_iter().map(|f| f.expect("placed")).collect(),
        transformations: placed_t.into_iter().map(|t| t.expect("placed")).collect(),
        index,
    })
}

/// Composition-table size of the product `K^{ob C}` the PIE pipeline
/// materializes first.
pub fn fun_pie_estimate(c: &FinCategory, k: &Arc<FinCategory>) -> u128 {
    product_table_estimate(&vec![k.clone(); c.num_objects()])
}

/// `K^{ob C}`, a joint inserter with a pair `(π_c, π_d)` per morphism
/// `u: c → d`, then equifiers forcing the inserted maps to respect
/// composition and identities.
pub fn fun_category_pie(
    c: &Arc<FinCategory>,
    k: &Arc<FinCategory>,
    opts: &PieOptions,
    budget: &Budget,
) -> Result<(PieBuild, Inserter, Product)> {
    let prod = product_category(&vec![k.clone(); c.num_objects()], budget)?;
    let pairs: Vec<(FinFunctor, FinFunctor)> = c
        .morphisms()
        .map(|u| {
            (
                prod.projections[c.src(u).index()].clone(),
                prod.projections[c.tgt(u).index()].clone(),
            )
        })
        .collect();
    let ins = joint_inserter(&prod.category, &pairs, budget)?;
    let e = &ins.category;
    let p: Vec<FinFunctor> = prod
        .projections
        .iter()
        .map(|pr| FinFunctor::compose(pr, &ins.forgetful))
        .collect::<Result<_>>()?;
    let mut eq_pairs = Vec::new();
    if opts.enabled("composition") {
        for u in c.morphisms() {
            for v in c.morphisms() {
                let Some(vu) = c.compose(v, u) else { continue };
                let (a, b) = (p[c.src(u).index()].clone(), p[c.tgt(v).index()].clone());
                let phi: Vec<MorId> = e
                    .objects()
                    .map(|y| {
                        let s = &ins.structure[y.index()];
                        k.comp(s[v.index()], s[u.index()])
                    })
                    .collect();
                let psi: Vec<MorId> = e.objects().map(|y| ins.structure[y.index()][vu.index()]).collect();
                eq_pairs.push((
                    NatTransformation::new(a.clone(), b.clone(), phi)?,
                    NatTransformation::new(a, b, psi)?,
                ));
            }
        }
    }
    if opts.enabled("identity") {
        for x in c.objects() {
            let i = c.identity(x);
            let a = p[x.index()].clone();
            let phi: Vec<MorId> = e.objects().map(|y| ins.structure[y.index()][i.index()]).collect();
            eq_pairs.push((
                NatTransformation::new(a.clone(), a.clone(), phi)?,
                NatTransformation::identity(&a),
            ));
        }
    }
    let view = joint_equifier(e, &eq_pairs)?;
    let sub = view.materialize(format!("[{},{}]-pie", c.name(), k.name()))?;
    let build = PieBuild {
        stages: vec![
            (
                "product".to_owned(),
                prod.category.num_objects(),
                prod.category.num_morphisms(),
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
    Ok((build, ins, prod))
}

pub fn fun_category_via_pie(c: &Arc<FinCategory>, k: &Arc<FinCategory>, budget: &Budget) -> Result<ViaPie> {
    let direct = fun_category_direct(c, k, budget)?;
    let (build, ins, prod) = fun_category_pie(c, k, &PieOptions::default(), budget)?;
    let d = &direct.category;
    let missing = || crate::Error::Precondition("canonical correspondence is not total".into());
    let om = direct
        .functors
        .iter()
        .map(|f| {
            ins.object_of(prod.object_of(f.object_map()), f.morphism_map())
                .and_then(|y| build.sub.local_object(y))
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let mm = d
        .morphisms()
        .map(|a| {
            let (s, t) = (om[d.src(a).index()], om[d.tgt(a).index()]);
            ins.morphism_of(
                build.sub.objects[s.index()],
                build.sub.objects[t.index()],
                prod.morphism_of(direct.transformations[a.index()].components()),
            )
            .and_then(|y| build.sub.local_morphism(y))
            .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = FinFunctor::new(d.clone(), build.category.clone(), om, mm)?;
    Ok(ViaPie {
        witness_is_iso: is_isomorphism(&witness),
        direct: d.clone(),
        category: build.category,
        stages: build.stages,
        witness,
    })
}
