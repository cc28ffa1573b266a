use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use super::conical::{pseudo_limit_direct, ConicalLimit};
use super::two_category::TwoCategory;
use super::two_functor::TwoFunctor;
use crate::budget::{Budget, Meter};
use crate::cat::{
    builtin, enumerate_functors, enumerate_transformations, is_isomorphism, violation, FinFunctor, MorId,
    NatTransformation, RawCategory, ValidationReport,
};
use crate::error::{input, Result};
use crate::pie::for_each_tuple;

/// A pseudonatural transformation `W ⇒ H`: functors `α_γ: W(γ) → H(γ)` and
/// invertible fillers `α_a: H(a) α_γ ⇒ α_δ W(a)`, one per 1-cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoNatTransformation {
    pub components: Vec<FinFunctor>,
    pub fillers: Vec<NatTransformation>,
}

/// A modification: one natural transformation `α_γ ⇒ β_γ` per object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modification {
    pub components: Vec<NatTransformation>,
}

/// Checks typing, invertibility and the unit, composition and 2-cell
/// coherence equations.
pub fn validate_pseudonatural(w: &TwoFunctor, h: &TwoFunctor, alpha: &PseudoNatTransformation) -> ValidationReport {
    let gamma = h.source();
    let g = gamma.underlying();
    let mut out = Vec::new();
    for x in g.objects() {
        let f = &alpha.components[x.index()];
        if f.source() != w.obj(x) || f.target() != h.obj(x) {
            out.push(violation("component typing", &[g.object_name(x)]));
        }
    }
    for a in g.morphisms() {
        let f = &alpha.fillers[a.index()];
        let (s, t) = (g.src(a).index(), g.tgt(a).index());
        let src = FinFunctor::compose(h.one_cell(a), &alpha.components[s]);
        let tgt = FinFunctor::compose(&alpha.components[t], w.one_cell(a));
        if src.as_ref().ok() != Some(f.source()) || tgt.as_ref().ok() != Some(f.target()) {
            out.push(violation("filler typing", &[g.morphism_name(a)]));
        } else if !f.is_invertible() {
            out.push(violation("filler invertible", &[g.morphism_name(a)]));
        }
    }
    if !out.is_empty() {
        return ValidationReport::from_violations(out);
    }
    for x in g.objects() {
        let a = g.identity(x);
        if alpha.fillers[a.index()] != NatTransformation::identity(&alpha.components[x.index()]) {
            out.push(violation("unit coherence", &[g.object_name(x)]));
        }
    }
    for (b, a) in gamma.composable_one_cells() {
        if !composition_ok(w, h, &alpha.fillers, b, a) {
            out.push(violation(
                "composition coherence",
                &[g.morphism_name(b), g.morphism_name(a)],
            ));
        }
    }
    for t in gamma.cells() {
        if !two_cell_ok(w, h, &alpha.components, &alpha.fillers, t) {
            out.push(violation("two-cell coherence", &[gamma.cell_name(t)]));
        }
    }
    ValidationReport::from_violations(out)
}

/// `(α_{ba})_x = (α_b)_{W(a)x} ∘ H(b)((α_a)_x)`
fn composition_ok(w: &TwoFunctor, h: &TwoFunctor, fillers: &[NatTransformation], b: MorId, a: MorId) -> bool {
    let g = h.source().underlying();
    let ba = g.comp(b, a);
    let e = h.obj(g.tgt(b));
    let (wa, hb) = (w.one_cell(a), h.one_cell(b));
    w.obj(g.src(a)).objects().all(|x| {
        e.compose(
            fillers[b.index()].component(wa.obj(x)),
            hb.mor(fillers[a.index()].component(x)),
        ) == Some(fillers[ba.index()].component(x))
    })
}

/// `α_δ(W(t)_x) ∘ (α_a)_x = (α_b)_x ∘ H(t)_{α_γ x}`
fn two_cell_ok(
    w: &TwoFunctor,
    h: &TwoFunctor,
    comps: &[FinFunctor],
    fillers: &[NatTransformation],
    t: super::CellId,
) -> bool {
    let gamma = h.source();
    let g = gamma.underlying();
    let c = gamma.cell(t);
    let (a, b) = (c.src, c.tgt);
    let (s, d) = (g.src(a), g.tgt(a));
    let hd = h.obj(d);
    let (wt, ht) = (w.two_cell(t), h.two_cell(t));
    w.obj(s).objects().all(|x| {
        let lhs = hd.compose(comps[d.index()].mor(wt.component(x)), fillers[a.index()].component(x));
        let rhs = hd.compose(fillers[b.index()].component(x), ht.component(comps[s.index()].obj(x)));
        lhs.is_some() && lhs == rhs
    })
}

/// `(m_δ)_{W(a)x} ∘ (α_a)_x = (β_a)_x ∘ H(a)((m_γ)_x)` for every 1-cell.
fn modification_ok(
    w: &TwoFunctor,
    h: &TwoFunctor,
    alpha: &PseudoNatTransformation,
    beta: &PseudoNatTransformation,
    m: &[&NatTransformation],
) -> bool {
    let g = h.source().underlying();
    g.morphisms().all(|a| {
        if g.is_identity(a) {
            return true;
        }
        let (s, d) = (g.src(a), g.tgt(a));
        let hd = h.obj(d);
        let (wa, ha) = (w.one_cell(a), h.one_cell(a));
        w.obj(s).objects().all(|x| {
            hd.compose(m[d.index()].component(wa.obj(x)), alpha.fillers[a.index()].component(x))
                == hd.compose(beta.fillers[a.index()].component(x), ha.mor(m[s.index()].component(x)))
        })
    })
}

pub fn validate_modification(
    w: &TwoFunctor,
    h: &TwoFunctor,
    alpha: &PseudoNatTransformation,
    beta: &PseudoNatTransformation,
    m: &Modification,
) -> ValidationReport {
    let g = h.source().underlying();
    let mut out = Vec::new();
    for x in g.objects() {
        let c = &m.components[x.index()];
        if c.source() != &alpha.components[x.index()] || c.target() != &beta.components[x.index()] {
            out.push(violation("modification typing", &[g.object_name(x)]));
        }
    }
    if out.is_empty() {
        let refs: Vec<&NatTransformation> = m.components.iter().collect();
        if !modification_ok(w, h, alpha, beta, &refs) {
            out.push(violation("modification axiom", &[]));
        }
    }
    ValidationReport::from_violations(out)
}

/// `{W, H}_p`: pseudonatural transformations and modifications.
#[derive(Debug, Clone)]
pub struct WeightedLimit {
    pub category: Arc<crate::cat::FinCategory>,
    /// Indexed by object id.
    pub objects: Vec<PseudoNatTransformation>,
    /// Indexed by morphism id.
    pub morphisms: Vec<Modification>,
    index: HashMap<(Vec<Vec<MorId>>, Vec<Vec<MorId>>), crate::cat::ObjId>,
}

impl WeightedLimit {
    /// Looks an object up by the morphism maps of its components and the
    /// component lists of its fillers.
    pub fn object_of(&self, functors: &[Vec<MorId>], fillers: &[Vec<MorId>]) -> Option<crate::cat::ObjId> {
        self.index.get(&(functors.to_vec(), fillers.to_vec())).copied()
    }
}

fn key(alpha: &PseudoNatTransformation) -> (Vec<Vec<MorId>>, Vec<Vec<MorId>>) {
    (
        alpha.components.iter().map(|f| f.morphism_map().to_vec()).collect(),
        alpha.fillers.iter().map(|t| t.components().to_vec()).collect(),
    )
}

fn functor_label(f: &FinFunctor) -> String {
    let t = f.target();
    let parts: Vec<&str> = f.morphism_map().iter().map(|&m| t.morphism_name(m)).collect();
    format!("fun[{}]", parts.join(","))
}

fn trans_label(t: &NatTransformation) -> String {
    let d = t.source().target();
    let parts: Vec<&str> = t.components().iter().map(|&m| d.morphism_name(m)).collect();
    format!("[{}]", parts.join(","))
}

pub fn weighted_pseudolimit(w: &TwoFunctor, h: &TwoFunctor, budget: &Budget) -> Result<WeightedLimit> {
    if **w.source() != **h.source() {
        return input("weight and diagram must share their source 2-category".to_owned());
    }
    let gamma = h.source();
    let g = gamma.underlying();
    let mut meter = Meter::new(budget.candidates, "pseudonatural candidates");
    let funs: Vec<Vec<FinFunctor>> = g
        .objects()
        .map(|x| enumerate_functors(w.obj(x), h.obj(x), budget))
        .collect::<Result<_>>()?;
    let non_id: Vec<MorId> = g.morphisms().filter(|&a| !g.is_identity(a)).collect();
    let idx_lists: Vec<Vec<usize>> = funs.iter().map(|l| (0..l.len()).collect()).collect();
    let mut filler_cache: HashMap<(MorId, usize, usize), Rc<Vec<NatTransformation>>> = HashMap::new();
    let mut objects: Vec<PseudoNatTransformation> = Vec::new();
    let mut fun_choice: Vec<Vec<usize>> = Vec::new();
    for_each_tuple(&idx_lists, &mut |choice| {
        meter.tick(1)?;
        let comps: Vec<FinFunctor> = choice.iter().enumerate().map(|(x, &i)| funs[x][i].clone()).collect();
        let mut cands: Vec<Rc<Vec<NatTransformation>>> = Vec::with_capacity(non_id.len());
        for &a in &non_id {
            let (s, t) = (g.src(a).index(), g.tgt(a).index());
            let k = (a, choice[s], choice[t]);
            if !filler_cache.contains_key(&k) {
                let src = FinFunctor::compose(h.one_cell(a), &comps[s])?;
                let tgt = FinFunctor::compose(&comps[t], w.one_cell(a))?;
                let list = enumerate_transformations(&src, &tgt, true, budget)?;
                filler_cache.insert(k, Rc::new(list));
            }
            cands.push(filler_cache[&k].clone());
        }
        let pick_lists: Vec<Vec<usize>> = cands.iter().map(|l| (0..l.len()).collect()).collect();
        let mut fillers: Vec<NatTransformation> = g
            .morphisms()
            .map(|a| NatTransformation::identity(&comps[g.src(a).index()]))
            .collect();
        if non_id.is_empty() {
            objects.push(PseudoNatTransformation {
                components: comps,
                fillers,
            });
            fun_choice.push(choice.to_vec());
            return Ok(());
        }
        for_each_tuple(&pick_lists, &mut |pick| {
            meter.tick(1)?;
            for (j, &a) in non_id.iter().enumerate() {
                fillers[a.index()] = cands[j][pick[j]].clone();
            }
            let ok = gamma
                .composable_one_cells()
                .into_iter()
                .all(|(b, a)| composition_ok(w, h, &fillers, b, a))
                && gamma
                    .cells()
                    .all(|t| gamma.is_identity_cell(t) || two_cell_ok(w, h, &comps, &fillers, t));
            if ok {
                objects.push(PseudoNatTransformation {
                    components: comps.clone(),
                    fillers: fillers.clone(),
                });
                fun_choice.push(choice.to_vec());
            }
            Ok(())
        })
    })?;

    // modifications, grouped by the pair of component choices
    let mut trans_cache: HashMap<(usize, usize, usize), Rc<Vec<NatTransformation>>> = HashMap::new();
    let mut mods: Vec<(usize, usize, Vec<NatTransformation>)> = Vec::new();
    let mut mod_index: HashMap<(usize, usize, Vec<Vec<MorId>>), usize> = HashMap::new();
    for i in 0..objects.len() {
        for j in 0..objects.len() {
            let mut lists = Vec::with_capacity(g.num_objects());
            for x in g.objects() {
                let k = (x.index(), fun_choice[i][x.index()], fun_choice[j][x.index()]);
                if !trans_cache.contains_key(&k) {
                    let l = enumerate_transformations(
                        &objects[i].components[x.index()],
                        &objects[j].components[x.index()],
                        false,
                        budget,
                    )?;
                    trans_cache.insert(k, Rc::new(l));
                }
                lists.push(trans_cache[&k].clone());
            }
            let pick_lists: Vec<Vec<usize>> = lists.iter().map(|l| (0..l.len()).collect()).collect();
            for_each_tuple(&pick_lists, &mut |pick| {
                meter.tick(1)?;
                let m: Vec<&NatTransformation> = pick.iter().enumerate().map(|(x, &p)| &lists[x][p]).collect();
                if modification_ok(w, h, &objects[i], &objects[j], &m) {
                    let comps: Vec<Vec<MorId>> = m.iter().map(|t| t.components().to_vec()).collect();
                    mod_index.insert((i, j, comps), mods.len());
                    mods.push((i, j, m.into_iter().cloned().collect()));
                }
                Ok(())
            })?;
        }
    }

    let names: Vec<String> = objects
        .iter()
        .map(|alpha| {
            let cs: Vec<String> = alpha.components.iter().map(functor_label).collect();
            let fs: Vec<String> = non_id.iter().map(|a| trans_label(&alpha.fillers[a.index()])).collect();
            format!("psn({}|{})", cs.join(";"), fs.join(";"))
        })
        .collect();
    let mut raw = RawCategory::new(format!("wlim({})", gamma.name()));
    for n in &names {
        raw.add_object(n.clone());
    }
    for (s, t, m) in &mods {
        let parts: Vec<String> = m.iter().map(trans_label).collect();
        raw.add_morphism(format!("mod({}):{}->{}", parts.join(";"), names[*s], names[*t]), *s, *t);
    }
    raw.identities = (0..objects.len())
        .map(|i| {
            let ids: Vec<Vec<MorId>> = objects[i]
                .components
                .iter()
                .map(|f| NatTransformation::identity(f).components().to_vec())
                .collect();
            mod_index[&(i, i, ids)]
        })
        .collect();
    let (cat, obj_new, mor_new) = raw.build_indexed(budget, |q, p| {
        let (s, _, u) = &mods[p];
        let (_, t, v) = &mods[q];
        let comps: Vec<Vec<MorId>> = u
            .iter()
            .zip(v)
            .map(|(u, v)| {
                let d = u.source().target();
                u.components()
                    .iter()
                    .zip(v.components())
                    .map(|(&f, &g)| d.comp(g, f))
                    .collect()
            })
            .collect();
        mod_index.get(&(*s, *t, comps)).copied()
    })?;
    let mut sorted_objects = vec![None; objects.len()];
    let mut index = HashMap::with_capacity(objects.len());
    for (r, alpha) in objects.into_iter().enumerate() {
        index.insert(key(&alpha), obj_new[r]);
        sorted_objects[obj_new[r].index()] = Some(alpha);
    }
    let mut sorted_mods = vec![None; mods.len()];
    for (r, (_, _, m)) in mods.into_iter().enumerate() {
        sorted_mods[mor_new[r].index()] = Some(Modification { components: m });
    }
    Ok(WeightedLimit {
        category: Arc::new(cat),
        objects: sorted_objects.into_iter().map(|x| x.expect("object placed")).collect(),
        morphisms: sorted_mods.into_iter().map(|x| x.expect("morphism placed")).collect(),
        index,
    })
}

/// The weight with a single object and a single morphism at every object.
pub fn terminal_weight(gamma: &Arc<TwoCategory>) -> TwoFunctor {
    TwoFunctor::constant(gamma, &Arc::new(builtin::terminal()))
}

/// The conical pseudolimit next to `{1, H}_p`, with the comparison functor
/// sending `(L, l)` to the constant components at `L_γ` with fillers `l_a`.
pub fn pseudo_limit_as_weighted(h: &TwoFunctor, budget: &Budget) -> Result<(ConicalLimit, WeightedLimit, FinFunctor)> {
    let w = terminal_weight(h.source());
    let conical = pseudo_limit_direct(h, budget)?;
    let weighted = weighted_pseudolimit(&w, h, budget)?;
    let g = h.source().underlying();
    let c = &conical.category;
    let missing = || crate::Error::Precondition("pseudolimit object has no weighted counterpart".into());
    let om = c
        .objects()
        .map(|x| {
            let funs: Vec<Vec<MorId>> = g
                .objects()
                .map(|y| vec![h.obj(y).identity(conical.components[x.index()][y.index()])])
                .collect();
            let fills: Vec<Vec<MorId>> = conical.connectors[x.index()].iter().map(|&l| vec![l]).collect();
            weighted.object_of(&funs, &fills).ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let wc = &weighted.category;
    let mm = c
        .morphisms()
        .map(|m| {
            let (s, t) = (om[c.src(m).index()], om[c.tgt(m).index()]);
            let fam = &conical.families[m.index()];
            wc.hom(s, t)
                .iter()
                .copied()
                .find(|&n| {
                    weighted.morphisms[n.index()]
                        .components
                        .iter()
                        .zip(fam)
                        .all(|(tr, &u)| tr.components() == [u])
                })
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = FinFunctor::new(c.clone(), wc.clone(), om, mm)?;
    Ok((conical, weighted, witness))
}

/// Whether the comparison of [`pseudo_limit_as_weighted`] is an isomorphism.
pub fn terminal_weight_agrees(h: &TwoFunctor, budget: &Budget) -> Result<bool> {
    let (_, _, witness) = pseudo_limit_as_weighted(h, budget)?;
    Ok(is_isomorphism(&witness))
}
