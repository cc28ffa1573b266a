use std::collections::HashMap;
use std::sync::Arc;

use super::linear::LinearCategory;
use super::matrix::{Matrix, MatrixCategory};
use super::quiver::{Path, Relation};
use super::scalar::FiniteField;
use crate::budget::{Budget, Meter};
use crate::cat::{
    is_isomorphism, product_category, FinCategory, FinFunctor, MorId, NatTransformation, ObjId, Product, RawCategory,
};
use crate::error::{input, Result};
use crate::pie::{for_each_tuple, joint_equifier, joint_inserter, Inserter, PieBuild, PieOptions, ViaPie};

/// Dimension per vertex and a matrix per arrow, as morphism ids of the
/// matrix category.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub arrows: Vec<MorId>,
}

/// Matrix of a path under arrow matrices `arrows` and vertex dimensions.
pub fn evaluate_path<F: FiniteField>(m: &MatrixCategory<F>, dims: &[usize], arrows: &[MorId], p: &Path) -> MorId {
    let mut acc = m.category.identity(m.object(dims[p.src]));
    for &a in &p.arrows {
        acc = m.category.comp(arrows[a], acc);
    }
    acc
}

pub fn evaluate_relation<F: FiniteField>(
    m: &MatrixCategory<F>,
    dims: &[usize],
    arrows: &[MorId],
    r: &Relation<F>,
) -> Matrix<F> {
    let mut acc = Matrix::zero(dims[r.tgt], dims[r.src]);
    for (c, p) in &r.terms {
        acc = acc.add(&m.matrix(evaluate_path(m, dims, arrows, p)).scale(*c));
    }
    acc
}

/// Representations satisfying the relations, with intertwiners.
#[derive(Debug, Clone)]
pub struct RepCategory {
    pub category: Arc<FinCategory>,
    pub objects: Vec<Representation>,
    /// One matrix per vertex for every morphism.
    pub morphisms: Vec<Vec<MorId>>,
    index: HashMap<Representation, ObjId>,
}

impl RepCategory {
    pub fn object_of(&self, r: &Representation) -> Option<ObjId> {
        self.index.get(r).copied()
    }
}

fn check_shapes<F: FiniteField>(a: &LinearCategory<F>) -> Result<()> {
    if a.quiver().vertices().is_empty() {
        return input("quiver has no vertices".to_owned());
    }
    Ok(())
}

fn rep_name<F: FiniteField>(a: &LinearCategory<F>, m: &MatrixCategory<F>, r: &Representation) -> String {
    let q = a.quiver();
    let dims: Vec<String> = q
        .vertices()
        .iter()
        .zip(&r.dims)
        .map(|(v, d)| format!("{v}={d}"))
        .collect();
    let mats: Vec<String> = q
        .arrows()
        .iter()
        .zip(&r.arrows)
        .map(|(x, &f)| format!("{}={}", x.id, m.matrix(f).label()))
        .collect();
    format!("rep({};{})", dims.join(","), mats.join(","))
}

pub fn rep_category_direct<F: FiniteField>(
    a: &LinearCategory<F>,
    m: &MatrixCategory<F>,
    budget: &Budget,
) -> Result<RepCategory> {
    check_shapes(a)?;
    let q = a.quiver();
    let mc = &m.category;
    let nv = q.vertices().len();
    let mut meter = Meter::new(budget.candidates, "representation candidates");
    let dim_lists: Vec<Vec<usize>> = vec![(0..=m.max_dim).collect(); nv];
    let mut objs: Vec<Representation> = Vec::new();
    for_each_tuple(&dim_lists, &mut |dims| {
        let lists: Vec<Vec<MorId>> = q
            .arrows()
            .iter()
            .map(|x| mc.hom(m.object(dims[x.src]), m.object(dims[x.tgt])).to_vec())
            .collect();
        for_each_tuple(&lists, &mut |arrows| {
            meter.tick(1)?;
            if a.relations()
                .iter()
                .all(|r| evaluate_relation(m, dims, arrows, r).is_zero())
            {
                objs.push(Representation {
                    dims: dims.to_vec(),
                    arrows: arrows.to_vec(),
                });
            }
            Ok(())
        })
    })?;
    let mut by_dims: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (i, r) in objs.iter().enumerate() {
        by_dims.entry(r.dims.clone()).or_default().push(i);
    }
    let mut keys: Vec<&Vec<usize>> = by_dims.keys().collect();
    keys.sort();
    let mut mors: Vec<(usize, usize, Vec<MorId>)> = Vec::new();
    for &dx in &keys {
        for &dy in &keys {
            let lists: Vec<Vec<MorId>> = (0..nv)
                .map(|v| mc.hom(m.object(dx[v]), m.object(dy[v])).to_vec())
                .collect();
            for_each_tuple(&lists, &mut |f| {
                for &i in &by_dims[dx] {
                    for &j in &by_dims[dy] {
                        meter.tick(1)?;
                        let ok =
                            q.arrows().iter().enumerate().all(|(k, x)| {
                                mc.comp(f[x.tgt], objs[i].arrows[k]) == mc.comp(objs[j].arrows[k], f[x.src])
                            });
                        if ok {
                            mors.push((i, j, f.to_vec()));
                        }
                    }
                }
                Ok(())
            })?;
        }
    }
    let names: Vec<String> = objs.iter().map(|r| rep_name(a, m, r)).collect();
    let mut raw = RawCategory::new(format!("Rep({},{})", q.name(), mc.name()));
    for n in &names {
        raw.add_object(n.clone());
    }
    let mut mor_index: HashMap<(usize, usize, Vec<MorId>), usize> = HashMap::with_capacity(mors.len());
    for (r, (s, t, f)) in mors.iter().enumerate() {
        let parts: Vec<String> = q
            .vertices()
            .iter()
            .zip(f)
            .map(|(v, &x)| format!("{v}={}", m.matrix(x).label()))
            .collect();
        raw.add_morphism(format!("hom({}):{}->{}", parts.join(","), names[*s], names[*t]), *s, *t);
        mor_index.insert((*s, *t, f.clone()), r);
    }
    raw.identities = objs
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let ids: Vec<MorId> = r.dims.iter().map(|&d| mc.identity(m.object(d))).collect();
            mor_index[&(i, i, ids)]
        })
        .collect();
    let (cat, obj_new, mor_new) = raw.build_indexed(budget, |g, f| {
        let (s, _, u) = &mors[f];
        let (_, t, v) = &mors[g];
        let w: Vec<MorId> = u.iter().zip(v).map(|(&x, &y)| mc.comp(y, x)).collect();
        mor_index.get(&(*s, *t, w)).copied()
    })?;
    let mut objects = vec![None; objs.len()];
    let mut index = HashMap::with_capacity(objs.len());
    for (r, o) in objs.into_iter().enumerate() {
        index.insert(o.clone(), obj_new[r]);
        objects[obj_new[r].index()] = Some(o);
    }
    let mut morphisms = vec![Vec::new(); mors.len()];
    for (r, (_, _, f)) in mors.into_iter().enumerate() {
        morphisms[mor_new[r].index()] = f;
    }
    Ok(RepCategory {
        category: Arc::new(cat),
        objects: objects.into_iter().map(|o| o.expect("placed")).collect(),
        morphisms,
        index,
    })
}

/// Family name of the equifier for relation `i`.
pub fn relation_family(i: usize) -> String {
    format!("relation-{i}")
}

/// Product of one matrix category per vertex, joint inserter with one pair
/// `(π_src, π_tgt)` per arrow, then one equifier per relation against zero.
pub fn rep_category_pie<F: FiniteField>(
    a: &LinearCategory<F>,
    m: &MatrixCategory<F>,
    opts: &PieOptions,
    budget: &Budget,
) -> Result<(PieBuild, Inserter, Product)> {
    check_shapes(a)?;
    let q = a.quiver();
    let nv = q.vertices().len();
    let k = product_category(&vec![m.category.clone(); nv], budget)?;
    let pairs: Vec<(FinFunctor, FinFunctor)> = q
        .arrows()
        .iter()
        .map(|x| (k.projections[x.src].clone(), k.projections[x.tgt].clone()))
        .collect();
    let ins = joint_inserter(&k.category, &pairs, budget)?;
    let e = &ins.category;
    let p: Vec<FinFunctor> = (0..nv)
        .map(|v| FinFunctor::compose(&k.projections[v], &ins.forgetful))
        .collect::<Result<_>>()?;
    let mut eq_pairs = Vec::new();
    for (i, r) in a.relations().iter().enumerate() {
        if !opts.enabled(&relation_family(i)) {
            continue;
        }
        let (f, g) = (p[r.src].clone(), p[r.tgt].clone());
        let mut phi = Vec::with_capacity(e.num_objects());
        let mut psi = Vec::with_capacity(e.num_objects());
        for y in e.objects() {
            let dims: Vec<usize> = p.iter().map(|pv| m.dim(pv.obj(y))).collect();
            let val = evaluate_relation(m, &dims, &ins.structure[y.index()], r);
            phi.push(m.morphism(&val).expect("matrix in range"));
            psi.push(m.zero(dims[r.src], dims[r.tgt]));
        }
        eq_pairs.push((
            NatTransformation::new(f.clone(), g.clone(), phi)?,
            NatTransformation::new(f, g, psi)?,
        ));
    }
    let view = joint_equifier(e, &eq_pairs)?;
    let sub = view.materialize(format!("Rep-pie({})", q.name()))?;
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
    Ok((build, ins, k))
}

pub fn rep_category_via_pie<F: FiniteField>(
    a: &LinearCategory<F>,
    m: &MatrixCategory<F>,
    budget: &Budget,
) -> Result<ViaPie> {
    let direct = rep_category_direct(a, m, budget)?;
    let (build, ins, k) = rep_category_pie(a, m, &PieOptions::default(), budget)?;
    let d = &direct.category;
    let missing = || crate::Error::Precondition("canonical correspondence is not total".into());
    let om = d
        .objects()
        .map(|x| {
            let r = &direct.objects[x.index()];
            let carrier = k.object_of(&r.dims.iter().map(|&n| m.object(n)).collect::<Vec<_>>());
            ins.object_of(carrier, &r.arrows)
                .and_then(|y| build.sub.local_object(y))
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let mm = d
        .morphisms()
        .map(|f| {
            let (s, t) = (om[d.src(f).index()], om[d.tgt(f).index()]);
            ins.morphism_of(
                build.sub.objects[s.index()],
                build.sub.objects[t.index()],
                k.morphism_of(&direct.morphisms[f.index()]),
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
