use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::{Budget, Meter};
use crate::cat::{same_category, FinCategory, FinFunctor, MorId, ObjId, RawCategory};
use crate::error::{input, Result};

/// Output of an (iso-, joint) inserter: the category of pairs
/// `(k, (phi_i)_i)` with its faithful forgetful functor to `K`.
#[derive(Debug, Clone)]
pub struct Inserter {
    pub category: Arc<FinCategory>,
    pub forgetful: FinFunctor,
    /// Structure family `(phi_i)` of each object.
    pub structure: Vec<Vec<MorId>>,
    objects: HashMap<(ObjId, Vec<MorId>), ObjId>,
    morphisms: HashMap<(ObjId, ObjId, MorId), MorId>,
}

impl Inserter {
    pub fn carrier(&self, x: ObjId) -> ObjId {
        self.forgetful.obj(x)
    }

    pub fn object_of(&self, carrier: ObjId, structure: &[MorId]) -> Option<ObjId> {
        self.objects.get(&(carrier, structure.to_vec())).copied()
    }

    /// The morphism `src → tgt` lying over `f`, if `f` is compatible.
    pub fn morphism_of(&self, src: ObjId, tgt: ObjId, f: MorId) -> Option<MorId> {
        self.morphisms.get(&(src, tgt, f)).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flavour {
    Plain,
    Joint,
    Iso,
}

/// `(K, phi: F(K) → G(K))` with morphisms the `f` with `phi' ∘ F(f) = G(f) ∘ phi`.
pub fn inserter(f: &FinFunctor, g: &FinFunctor, budget: &Budget) -> Result<Inserter> {
    build(&[(f.clone(), g.clone())], Flavour::Plain, budget)
}

/// Inserter of a family of pairs `F_i, G_i: K → L_i` sharing the source `K`.
/// The empty family gives `K` itself.
pub fn joint_inserter(
    source: &Arc<FinCategory>,
    pairs: &[(FinFunctor, FinFunctor)],
    budget: &Budget,
) -> Result<Inserter> {
    if pairs.is_empty() {
        return Ok(trivial(source));
    }
    if !same_category(pairs[0].0.source(), source) {
        return input("joint inserter pairs must start at the given source".to_owned());
    }
    build(pairs, Flavour::Joint, budget)
}

/// The isomorpher: inserter restricted to invertible structure morphisms.
pub fn iso_inserter(p: &FinFunctor, q: &FinFunctor, budget: &Budget) -> Result<Inserter> {
    build(&[(p.clone(), q.clone())], Flavour::Iso, budget)
}

/// Joint isomorpher over several pairs.
pub fn joint_iso_inserter(
    source: &Arc<FinCategory>,
    pairs: &[(FinFunctor, FinFunctor)],
    budget: &Budget,
) -> Result<Inserter> {
    if pairs.is_empty() {
        return Ok(trivial(source));
    }
    if !same_category(pairs[0].0.source(), source) {
        return input("joint inserter pairs must start at the given source".to_owned());
    }
    build(pairs, Flavour::Iso, budget)
}

fn trivial(k: &Arc<FinCategory>) -> Inserter {
    let objects = k.objects().map(|x| ((x, Vec::new()), x)).collect();
    let morphisms = k.morphisms().map(|f| ((k.src(f), k.tgt(f), f), f)).collect();
    Inserter {
        category: k.clone(),
        forgetful: FinFunctor::identity(k),
        structure: vec![Vec::new(); k.num_objects()],
        objects,
        morphisms,
    }
}

fn object_name(flavour: Flavour, k: &FinCategory, x: ObjId, phis: &[MorId], targets: &[&Arc<FinCategory>]) -> String {
    let names: Vec<&str> = phis.iter().zip(targets).map(|(&m, l)| l.morphism_name(m)).collect();
    let carrier = k.object_name(x);
    match (flavour, phis.len()) {
        (Flavour::Plain, _) => format!("ins(K={carrier};phi={})", names[0]),
        (Flavour::Iso, 1) => format!("iso(K={carrier};theta={})", names[0]),
        (Flavour::Iso, _) => format!("iso(K={carrier};theta=[{}])", names.join(",")),
        (Flavour::Joint, _) => format!("jins(K={carrier};phi=[{}])", names.join(",")),
    }
}

fn build(pairs: &[(FinFunctor, FinFunctor)], flavour: Flavour, budget: &Budget) -> Result<Inserter> {
    let k = pairs[0].0.source().clone();
    for (f, g) in pairs {
        if !f.is_parallel(g) || !same_category(f.source(), &k) {
            return input("inserter needs parallel functors with a common source".to_owned());
        }
    }
    let targets: Vec<&Arc<FinCategory>> = pairs.iter().map(|(f, _)| f.target()).collect();
    let mut meter = Meter::new(budget.candidates, "inserter candidates");

    let allowed = |i: usize, m: MorId| flavour != Flavour::Iso || targets[i].is_iso(m);
    // objects: carrier and structure family
    let mut objs: Vec<(ObjId, Vec<MorId>)> = Vec::new();
    for x in k.objects() {
        let homs: Vec<Vec<MorId>> = pairs
            .iter()
            .enumerate()
            .map(|(i, (f, g))| {
                targets[i]
                    .hom(f.obj(x), g.obj(x))
                    .iter()
                    .copied()
                    .filter(|&m| allowed(i, m))
                    .collect()
            })
            .collect();
        for_each_tuple(&homs, &mut |t| {
            meter.tick(1)?;
            objs.push((x, t.to_vec()));
            Ok(())
        })?;
    }
    let mut index: HashMap<(ObjId, Vec<MorId>), usize> = HashMap::with_capacity(objs.len());
    let mut by_carrier: Vec<Vec<usize>> = vec![Vec::new(); k.num_objects()];
    for (i, o) in objs.iter().enumerate() {
        index.insert(o.clone(), i);
        by_carrier[o.0.index()].push(i);
    }

    // morphisms over each carrier morphism u: x -> y
    let mut mors: Vec<(usize, usize, MorId)> = Vec::new();
    let mut mor_index: HashMap<(usize, usize, MorId), usize> = HashMap::new();
    for u in k.morphisms() {
        let (x, y) = (k.src(u), k.tgt(u));
        // phi'_i grouped by phi'_i ∘ F_i(u)
        let groups: Vec<HashMap<MorId, Vec<MorId>>> = pairs
            .iter()
            .enumerate()
            .map(|(i, (f, g))| {
                let l = targets[i];
                let mut m: HashMap<MorId, Vec<MorId>> = HashMap::new();
                for &phi2 in l.hom(f.obj(y), g.obj(y)) {
                    if allowed(i, phi2) {
                        m.entry(l.comp(phi2, f.mor(u))).or_default().push(phi2);
                    }
                }
                m
            })
            .collect();
        for &si in &by_carrier[x.index()] {
            let phis = &objs[si].1;
            let mut opts: Vec<Vec<MorId>> = Vec::with_capacity(pairs.len());
            for (i, (_, g)) in pairs.iter().enumerate() {
                let want = targets[i].comp(g.mor(u), phis[i]);
                match groups[i].get(&want) {
                    Some(v) => opts.push(v.clone()),
                    None => {
                        opts.clear();
                        break;
                    }
                }
            }
            if opts.len() != pairs.len() {
                continue;
            }
            for_each_tuple(&opts, &mut |t| {
                meter.tick(1)?;
                let ti = index[&(y, t.to_vec())];
                mor_index.insert((si, ti, u), mors.len());
                mors.push((si, ti, u));
                Ok(())
            })?;
        }
    }

    let name = match flavour {
        Flavour::Plain => format!("Ins({},{})", k.name(), targets[0].name()),
        Flavour::Joint => format!("JIns({})", k.name()),
        Flavour::Iso => format!("Iso({})", k.name()),
    };
    let mut raw = RawCategory::new(name);
    let names: Vec<String> = objs
        .iter()
        .map(|(x, phis)| object_name(flavour, &k, *x, phis, &targets))
        .collect();
    for n in &names {
        raw.add_object(n.clone());
    }
    for &(s, t, u) in &mors {
        raw.add_morphism(format!("{}:{}->{}", k.morphism_name(u), names[s], names[t]), s, t);
    }
    raw.identities = (0..objs.len())
        .map(|i| mor_index[&(i, i, k.identity(objs[i].0))])
        .collect();
    let (cat, obj_new, mor_new) = raw.build_indexed(budget, |g, f| {
        let (s, _, u) = mors[f];
        let (_, t, v) = mors[g];
        mor_index.get(&(s, t, k.compose(v, u)?)).copied()
    })?;
    let cat = Arc::new(cat);
    let mut om = vec![ObjId(0); objs.len()];
    let mut structure = vec![Vec::new(); objs.len()];
    let mut objects = HashMap::with_capacity(objs.len());
    for (r, o) in objs.into_iter().enumerate() {
        let x = obj_new[r];
        om[x.index()] = o.0;
        structure[x.index()] = o.1.clone();
        objects.insert(o, x);
    }
    let mut mm = vec![MorId(0); mors.len()];
    let mut morphisms = HashMap::with_capacity(mors.len());
    for (r, &(s, t, u)) in mors.iter().enumerate() {
        let m = mor_new[r];
        mm[m.index()] = u;
        morphisms.insert((obj_new[s], obj_new[t], u), m);
    }
    let forgetful = FinFunctor::new(cat.clone(), k.clone(), om, mm)?;
    Ok(Inserter {
        category: cat,
        forgetful,
        structure,
        objects,
        morphisms,
    })
}

/// Calls `f` on every tuple of the cartesian product of `lists`, in
/// lexicographic order of positions.
pub(crate) fn for_each_tuple<T: Copy>(lists: &[Vec<T>], f: &mut dyn FnMut(&[T]) -> Result<()>) -> Result<()> {
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(());
    }
    let mut pos = vec![0usize; lists.len()];
    let mut cur: Vec<T> = lists.iter().map(|l| l[0]).collect();
    loop {
        f(&cur)?;
        let mut i = lists.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < lists[i].len() {
                cur[i] = lists[i][pos[i]];
                break;
            }
            pos[i] = 0;
            cur[i] = lists[i][0];
        }
    }
}

/// The joint inserter computed as a single inserter into the product of the
/// targets.
pub fn joint_inserter_packed(
    source: &Arc<FinCategory>,
    pairs: &[(FinFunctor, FinFunctor)],
    budget: &Budget,
) -> Result<Inserter> {
    if pairs.is_empty() {
        return Ok(trivial(source));
    }
    let targets: Vec<Arc<FinCategory>> = pairs.iter().map(|(f, _)| f.target().clone()).collect();
    let prod = crate::cat::product_category(&targets, budget)?;
    let fs: Vec<FinFunctor> = pairs.iter().map(|(f, _)| f.clone()).collect();
    let gs: Vec<FinFunctor> = pairs.iter().map(|(_, g)| g.clone()).collect();
    inserter(&prod.pairing(&fs)?, &prod.pairing(&gs)?, budget)
}
