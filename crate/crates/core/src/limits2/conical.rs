use std::collections::HashMap;
use std::sync::Arc;

use super::two_functor::TwoFunctor;
use crate::budget::{Budget, Meter};
use crate::cat::{
    is_isomorphism, product_category, FinCategory, FinFunctor, MorId, NatTransformation, ObjId, Product, RawCategory,
};
use crate::error::Result;
use crate::pie::{
    for_each_tuple, joint_equifier, joint_inserter, joint_iso_inserter, Inserter, PieBuild, PieOptions, ViaPie,
};

/// Direction of the connectors: lax `l_a: H(a)(L_γ) → L_δ`, oplax
/// `m_a: M_δ → H(a)(M_γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Lax,
    Oplax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Lax,
    Oplax,
    Pseudo,
}

impl LimitKind {
    fn variance(self) -> Variance {
        match self {
            LimitKind::Oplax => Variance::Oplax,
            _ => Variance::Lax,
        }
    }

    fn label(self) -> &'static str {
        match self {
            LimitKind::Lax => "lax",
            LimitKind::Oplax => "oplax",
            LimitKind::Pseudo => "pseudo",
        }
    }
}

/// Equifier family names: connectors at identities, at composites, and
/// compatibility with 2-cells.
pub const LIMIT_FAMILIES: &[&str] = &["identity", "composition", "two-cell"];

/// An enumerated conical (op)lax limit or pseudolimit.
#[derive(Debug, Clone)]
pub struct ConicalLimit {
    pub category: Arc<FinCategory>,
    pub variance: Variance,
    /// `components[x][γ]`
    pub components: Vec<Vec<ObjId>>,
    /// `connectors[x][a]`, one per 1-cell including identities.
    pub connectors: Vec<Vec<MorId>>,
    /// `families[m][γ]`
    pub families: Vec<Vec<MorId>>,
    /// Projections to each `H(γ)`.
    pub projections: Vec<FinFunctor>,
    objects: HashMap<(Vec<ObjId>, Vec<MorId>), ObjId>,
    morphisms: HashMap<(ObjId, ObjId, Vec<MorId>), MorId>,
}

impl ConicalLimit {
    pub fn object_of(&self, components: &[ObjId], connectors: &[MorId]) -> Option<ObjId> {
        self.objects.get(&(components.to_vec(), connectors.to_vec())).copied()
    }

    pub fn morphism_of(&self, src: ObjId, tgt: ObjId, family: &[MorId]) -> Option<MorId> {
        self.morphisms.get(&(src, tgt, family.to_vec())).copied()
    }
}

fn connector_ok(h: &TwoFunctor, variance: Variance, comps: &[ObjId], conn: &[MorId]) -> bool {
    let gamma = h.source();
    let g = gamma.underlying();
    for (b, a) in gamma.composable_one_cells() {
        let ba = g.comp(b, a);
        let e = h.obj(g.tgt(b));
        let hb = h.one_cell(b);
        let want = match variance {
            Variance::Lax => e.compose(conn[b.index()], hb.mor(conn[a.index()])),
            Variance::Oplax => e.compose(hb.mor(conn[a.index()]), conn[b.index()]),
        };
        if want != Some(conn[ba.index()]) {
            return false;
        }
    }
    for t in gamma.cells() {
        if gamma.is_identity_cell(t) {
            continue;
        }
        let c = gamma.cell(t);
        let (a, b) = (c.src, c.tgt);
        let d = h.obj(g.tgt(a));
        let theta = h.two_cell(t).component(comps[g.src(a).index()]);
        let ok = match variance {
            Variance::Lax => d.compose(conn[b.index()], theta) == Some(conn[a.index()]),
            Variance::Oplax => d.compose(theta, conn[a.index()]) == Some(conn[b.index()]),
        };
        if !ok {
            return false;
        }
    }
    true
}

fn family_ok(h: &TwoFunctor, variance: Variance, sx: &[MorId], sy: &[MorId], u: &[MorId]) -> bool {
    let g = h.source().underlying();
    g.morphisms().all(|a| {
        if g.is_identity(a) {
            return true;
        }
        let (s, t) = (g.src(a).index(), g.tgt(a).index());
        let d = h.obj(g.tgt(a));
        let ha = h.one_cell(a);
        match variance {
            Variance::Lax => d.compose(u[t], sx[a.index()]) == d.compose(sy[a.index()], ha.mor(u[s])),
            Variance::Oplax => d.compose(sy[a.index()], u[t]) == d.compose(ha.mor(u[s]), sx[a.index()]),
        }
    })
}

fn conical_direct(h: &TwoFunctor, kind: LimitKind, invertible: bool, budget: &Budget) -> Result<ConicalLimit> {
    let variance = kind.variance();
    let gamma = h.source();
    let g = gamma.underlying();
    let mut meter = Meter::new(budget.candidates, "limit candidates");
    let obj_lists: Vec<Vec<ObjId>> = g.objects().map(|x| h.obj(x).objects().collect()).collect();
    let mut objs: Vec<(Vec<ObjId>, Vec<MorId>)> = Vec::new();
    for_each_tuple(&obj_lists, &mut |comps| {
        let conn_lists: Vec<Vec<MorId>> = g
            .morphisms()
            .map(|a| {
                let d = h.obj(g.tgt(a));
                let lg = comps[g.src(a).index()];
                let ld = comps[g.tgt(a).index()];
                if g.is_identity(a) {
                    return vec![d.identity(ld)];
                }
                let ha = h.one_cell(a).obj(lg);
                let hom = match variance {
                    Variance::Lax => d.hom(ha, ld),
                    Variance::Oplax => d.hom(ld, ha),
                };
                hom.iter().copied().filter(|&m| !invertible || d.is_iso(m)).collect()
            })
            .collect();
        for_each_tuple(&conn_lists, &mut |conn| {
            meter.tick(1)?;
            if connector_ok(h, variance, comps, conn) {
                objs.push((comps.to_vec(), conn.to_vec()));
            }
            Ok(())
        })
    })?;

    let mut by_comps: HashMap<Vec<ObjId>, Vec<usize>> = HashMap::new();
    for (i, (c, _)) in objs.iter().enumerate() {
        by_comps.entry(c.clone()).or_default().push(i);
    }
    let mut keys: Vec<&Vec<ObjId>> = by_comps.keys().collect();
    keys.sort();
    let mut mors: Vec<(usize, usize, Vec<MorId>)> = Vec::new();
    for &cx in &keys {
        for &cy in &keys {
            let hom_lists: Vec<Vec<MorId>> = g
                .objects()
                .map(|x| h.obj(x).hom(cx[x.index()], cy[x.index()]).to_vec())
                .collect();
            let (xs, ys) = (&by_comps[cx], &by_comps[cy]);
            for_each_tuple(&hom_lists, &mut |u| {
                for &i in xs {
                    for &j in ys {
                        meter.tick(1)?;
                        if family_ok(h, variance, &objs[i].1, &objs[j].1, u) {
                            mors.push((i, j, u.to_vec()));
                        }
                    }
                }
                Ok(())
            })?;
        }
    }
    assemble(h, kind, objs, mors, budget)
}

fn assemble(
    h: &TwoFunctor,
    kind: LimitKind,
    objs: Vec<(Vec<ObjId>, Vec<MorId>)>,
    mors: Vec<(usize, usize, Vec<MorId>)>,
    budget: &Budget,
) -> Result<ConicalLimit> {
    let variance = kind.variance();
    let gamma = h.source();
    let g = gamma.underlying();
    let (cl, ll) = match kind {
        LimitKind::Lax => ("L", "l"),
        LimitKind::Oplax => ("M", "m"),
        LimitKind::Pseudo => ("E", "e"),
    };
    let names: Vec<String> = objs
        .iter()
        .map(|(c, l)| {
            let cs: Vec<&str> = g.objects().map(|x| h.obj(x).object_name(c[x.index()])).collect();
            let ls: Vec<&str> = g
                .morphisms()
                .filter(|&a| !g.is_identity(a))
                .map(|a| h.obj(g.tgt(a)).morphism_name(l[a.index()]))
                .collect();
            format!("{}({}=[{}];{}=[{}])", kind.label(), cl, cs.join(","), ll, ls.join(","))
        })
        .collect();
    let mut raw = RawCategory::new(format!("{}lim({})", kind.label(), gamma.name()));
    for n in &names {
        raw.add_object(n.clone());
    }
    let mut index: HashMap<(usize, usize, Vec<MorId>), usize> = HashMap::with_capacity(mors.len());
    for (r, (s, t, u)) in mors.iter().enumerate() {
        let parts: Vec<&str> = g.objects().map(|x| h.obj(x).morphism_name(u[x.index()])).collect();
        raw.add_morphism(format!("[{}]:{}->{}", parts.join(","), names[*s], names[*t]), *s, *t);
        index.insert((*s, *t, u.clone()), r);
    }
    raw.identities = objs
        .iter()
        .enumerate()
        .map(|(i, (c, _))| {
            let ids: Vec<MorId> = g.objects().map(|x| h.obj(x).identity(c[x.index()])).collect();
            index[&(i, i, ids)]
        })
        .collect();
    let (cat, obj_new, mor_new) = raw.build_indexed(budget, |q, p| {
        let (s, _, u) = &mors[p];
        let (_, t, v) = &mors[q];
        let w: Vec<MorId> = g.objects().map(|x| h.obj(x).comp(v[x.index()], u[x.index()])).collect();
        index.get(&(*s, *t, w)).copied()
    })?;
    let cat = Arc::new(cat);
    let n = objs.len();
    let mut components = vec![Vec::new(); n];
    let mut connectors = vec![Vec::new(); n];
    let mut objects = HashMap::with_capacity(n);
    for (r, (c, l)) in objs.into_iter().enumerate() {
        let i = obj_new[r];
        objects.insert((c.clone(), l.clone()), i);
        components[i.index()] = c;
        connectors[i.index()] = l;
    }
    let mut families = vec![Vec::new(); mors.len()];
    let mut morphisms = HashMap::with_capacity(mors.len());
    for (r, (s, t, u)) in mors.into_iter().enumerate() {
        let m = mor_new[r];
        morphisms.insert((obj_new[s], obj_new[t], u.clone()), m);
        families[m.index()] = u;
    }
    let projections = g
        .objects()
        .map(|x| {
            FinFunctor::new(
                cat.clone(),
                h.obj(x).clone(),
                components.iter().map(|c| c[x.index()]).collect(),
                families.iter().map(|u| u[x.index()]).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConicalLimit {
        category: cat,
        variance,
        components,
        connectors,
        families,
        projections,
        objects,
        morphisms,
    })
}

pub fn lax_limit_direct(h: &TwoFunctor, budget: &Budget) -> Result<ConicalLimit> {
    conical_direct(h, LimitKind::Lax, false, budget)
}

pub fn oplax_limit_direct(h: &TwoFunctor, budget: &Budget) -> Result<ConicalLimit> {
    conical_direct(h, LimitKind::Oplax, false, budget)
}

/// Lax objects whose connectors are all invertible.
pub fn pseudo_limit_direct(h: &TwoFunctor, budget: &Budget) -> Result<ConicalLimit> {
    conical_direct(h, LimitKind::Pseudo, true, budget)
}

/// The pseudolimit cut out of the oplax limit instead.
pub fn pseudo_limit_oplax_side(h: &TwoFunctor, budget: &Budget) -> Result<ConicalLimit> {
    conical_direct(h, LimitKind::Oplax, true, budget)
}

#[derive(Debug, Clone)]
pub struct FilterComparison {
    pub lax_side: ConicalLimit,
    pub oplax_side: ConicalLimit,
    /// `(L, l) ↦ (L, l⁻¹)`, identity on component families.
    pub witness: FinFunctor,
    pub holds: bool,
}

/// Compares the invertible-connector filters of the lax and oplax limits.
pub fn compare_pseudo_filters(h: &TwoFunctor, budget: &Budget) -> Result<FilterComparison> {
    let lax_side = pseudo_limit_direct(h, budget)?;
    let oplax_side = pseudo_limit_oplax_side(h, budget)?;
    let g = h.source().underlying();
    let l = &lax_side.category;
    let missing = || crate::Error::Precondition("inverted connectors are not an oplax object".into());
    let om = l
        .objects()
        .map(|x| {
            let inv = g
                .morphisms()
                .map(|a| h.obj(g.tgt(a)).inverse(lax_side.connectors[x.index()][a.index()]))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(missing)?;
            oplax_side
                .object_of(&lax_side.components[x.index()], &inv)
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let mm = l
        .morphisms()
        .map(|m| {
            oplax_side
                .morphism_of(
                    om[l.src(m).index()],
                    om[l.tgt(m).index()],
                    &lax_side.families[m.index()],
                )
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = FinFunctor::new(l.clone(), oplax_side.category.clone(), om, mm)?;
    Ok(FilterComparison {
        holds: is_isomorphism(&witness),
        lax_side,
        oplax_side,
        witness,
    })
}

/// The product/inserter/equifier pipeline: `K = ∏_γ H(γ)`, the joint
/// (iso-)inserter over all 1-cells, then the equifier families of
/// [`LIMIT_FAMILIES`] not switched off in `opts`.
pub fn conical_pie(
    h: &TwoFunctor,
    kind: LimitKind,
    opts: &PieOptions,
    budget: &Budget,
) -> Result<(PieBuild, Inserter, Product)> {
    let variance = kind.variance();
    let gamma = h.source();
    let g = gamma.underlying();
    let values: Vec<Arc<FinCategory>> = g.objects().map(|x| h.obj(x).clone()).collect();
    let k = product_category(&values, budget)?;
    let pi = |x: ObjId| &k.projections[x.index()];
    let mut pairs = Vec::with_capacity(g.num_morphisms());
    for a in g.morphisms() {
        let ha = FinFunctor::compose(h.one_cell(a), pi(g.src(a)))?;
        let pd = pi(g.tgt(a)).clone();
        pairs.push(match variance {
            Variance::Lax => (ha, pd),
            Variance::Oplax => (pd, ha),
        });
    }
    let ins = match kind {
        LimitKind::Pseudo => joint_iso_inserter(&k.category, &pairs, budget)?,
        _ => joint_inserter(&k.category, &pairs, budget)?,
    };
    let e = &ins.category;
    let u = &ins.forgetful;
    let p: Vec<FinFunctor> = g
        .objects()
        .map(|x| FinFunctor::compose(pi(x), u))
        .collect::<Result<_>>()?;
    // functors E → H(δ): P_δ and H(a) P_γ
    let hp = |a: MorId| FinFunctor::compose(h.one_cell(a), &p[g.src(a).index()]);
    let conn = |x: ObjId, a: MorId| ins.structure[x.index()][a.index()];
    let oriented = |pa: FinFunctor, pd: FinFunctor| match variance {
        Variance::Lax => (pa, pd),
        Variance::Oplax => (pd, pa),
    };
    let mut eq_pairs: Vec<(NatTransformation, NatTransformation)> = Vec::new();
    if opts.enabled("identity") {
        for x in g.objects() {
            let a = g.identity(x);
            let (f, gg) = oriented(hp(a)?, p[x.index()].clone());
            let d = h.obj(x);
            let phi = e.objects().map(|y| conn(y, a)).collect();
            let psi = e.objects().map(|y| d.identity(p[x.index()].obj(y))).collect();
            eq_pairs.push((
                NatTransformation::new(f.clone(), gg.clone(), phi)?,
                NatTransformation::new(f, gg, psi)?,
            ));
        }
    }
    if opts.enabled("composition") {
        for (b, a) in gamma.composable_one_cells() {
            let ba = g.comp(b, a);
            let eps = h.obj(g.tgt(b));
            let hb = h.one_cell(b);
            let (f, gg) = oriented(hp(ba)?, p[g.tgt(b).index()].clone());
            let phi = e.objects().map(|y| conn(y, ba)).collect();
            let psi = e
                .objects()
                .map(|y| match variance {
                    Variance::Lax => eps.compose(conn(y, b), hb.mor(conn(y, a))),
                    Variance::Oplax => eps.compose(hb.mor(conn(y, a)), conn(y, b)),
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| crate::Error::Precondition("2-functor does not preserve composition".into()))?;
            eq_pairs.push((
                NatTransformation::new(f.clone(), gg.clone(), phi)?,
                NatTransformation::new(f, gg, psi)?,
            ));
        }
    }
    if opts.enabled("two-cell") {
        for t in gamma.cells() {
            let c = gamma.cell(t);
            let (a, b) = (c.src, c.tgt);
            let (x, d) = (g.src(a), h.obj(g.tgt(a)));
            let ht = h.two_cell(t);
            let theta = |y: ObjId| ht.component(p[x.index()].obj(y));
            let (f, gg, phi, psi): (FinFunctor, FinFunctor, Vec<MorId>, Vec<MorId>) = match variance {
                Variance::Lax => (
                    hp(a)?,
                    p[g.tgt(a).index()].clone(),
                    e.objects().map(|y| d.comp(conn(y, b), theta(y))).collect(),
                    e.objects().map(|y| conn(y, a)).collect(),
                ),
                Variance::Oplax => (
                    p[g.tgt(a).index()].clone(),
                    hp(b)?,
                    e.objects().map(|y| d.comp(theta(y), conn(y, a))).collect(),
                    e.objects().map(|y| conn(y, b)).collect(),
                ),
            };
            eq_pairs.push((
                NatTransformation::new(f.clone(), gg.clone(), phi)?,
                NatTransformation::new(f, gg, psi)?,
            ));
        }
    }
    let view = joint_equifier(e, &eq_pairs)?;
    let sub = view.materialize(format!("{}lim-pie({})", kind.label(), gamma.name()))?;
    let inserter_stage = match kind {
        LimitKind::Pseudo => "iso-inserter",
        _ => "inserter",
    };
    let build = PieBuild {
        stages: vec![
            (
                "product".to_owned(),
                k.category.num_objects(),
                k.category.num_morphisms(),
            ),
            (inserter_stage.to_owned(), e.num_objects(), e.num_morphisms()),
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

fn via_pie(h: &TwoFunctor, kind: LimitKind, budget: &Budget) -> Result<ViaPie> {
    let direct = match kind {
        LimitKind::Lax => lax_limit_direct(h, budget)?,
        LimitKind::Oplax => oplax_limit_direct(h, budget)?,
        LimitKind::Pseudo => pseudo_limit_direct(h, budget)?,
    };
    let (build, ins, k) = conical_pie(h, kind, &PieOptions::default(), budget)?;
    let d = &direct.category;
    let missing = || crate::Error::Precondition("canonical correspondence is not total".into());
    let om = d
        .objects()
        .map(|x| {
            ins.object_of(
                k.object_of(&direct.components[x.index()]),
                &direct.connectors[x.index()],
            )
            .and_then(|y| build.sub.local_object(y))
            .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let mm = d
        .morphisms()
        .map(|m| {
            let (s, t) = (om[d.src(m).index()], om[d.tgt(m).index()]);
            ins.morphism_of(
                build.sub.objects[s.index()],
                build.sub.objects[t.index()],
                k.morphism_of(&direct.families[m.index()]),
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

pub fn lax_limit_via_pie(h: &TwoFunctor, budget: &Budget) -> Result<ViaPie> {
    via_pie(h, LimitKind::Lax, budget)
}

pub fn oplax_limit_via_pie(h: &TwoFunctor, budget: &Budget) -> Result<ViaPie> {
    via_pie(h, LimitKind::Oplax, budget)
}

pub fn pseudo_limit_via_pie(h: &TwoFunctor, budget: &Budget) -> Result<ViaPie> {
    via_pie(h, LimitKind::Pseudo, budget)
}
