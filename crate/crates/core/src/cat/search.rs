use std::collections::BTreeMap;
use std::sync::Arc;

use super::category::{FinCategory, MorId, ObjId};
use super::functor::{validate_functor, FinFunctor, NatTransformation};
use crate::budget::{Budget, Meter};
use crate::error::Result;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompareMode {
    Iso,
    Equivalence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub holds: bool,
    pub witness: Option<FinFunctor>,
}

/// Bijective on objects and morphisms and functorial.
pub fn is_isomorphism(f: &FinFunctor) -> bool {
    f.is_bijective() && validate_functor(f).ok
}

/// Joint colour refinement of two categories: objects and morphisms of equal
/// colour are indistinguishable by the counted invariants.
struct Colours {
    obj: [Vec<u32>; 2],
    mor: [Vec<u32>; 2],
}

fn colours(cats: [&FinCategory; 2]) -> Colours {
    let mut dict: BTreeMap<Vec<u64>, u32> = BTreeMap::new();
    let intern = |dict: &mut BTreeMap<Vec<u64>, u32>, sig: Vec<u64>| {
        let n = dict.len() as u32;
        *dict.entry(sig).or_insert(n)
    };
    let mut obj: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    for (side, c) in cats.iter().enumerate() {
        for x in c.objects() {
            let end = c.hom(x, x);
            let autos = end.iter().filter(|&&f| c.is_iso(f)).count();
            let idems = end.iter().filter(|&&f| c.compose(f, f) == Some(f)).count();
            let iso_class = c.objects().filter(|&y| c.find_iso(x, y).is_some()).count();
            let sig = vec![
                0,
                end.len() as u64,
                autos as u64,
                idems as u64,
                iso_class as u64,
                c.outgoing(x).len() as u64,
                c.incoming(x).len() as u64,
            ];
            obj[side].push(intern(&mut dict, sig));
        }
    }
    let mut distinct = count_distinct(&obj);
    loop {
        let mut dict: BTreeMap<Vec<u64>, u32> = BTreeMap::new();
        let mut next: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
        for (side, c) in cats.iter().enumerate() {
            for x in c.objects() {
                let mut nb: Vec<(u64, u64, u64)> = c
                    .objects()
                    .filter_map(|y| {
                        let (o, i) = (c.hom(x, y).len(), c.hom(y, x).len());
                        (o + i > 0).then_some((obj[side][y.index()] as u64, o as u64, i as u64))
                    })
                    .collect();
                nb.sort();
                let mut sig = vec![obj[side][x.index()] as u64];
                for (a, b, c) in nb {
                    sig.extend([a, b, c]);
                }
                next[side].push(intern(&mut dict, sig));
            }
        }
        let d = count_distinct(&next);
        obj = next;
        if d == distinct {
            break;
        }
        distinct = d;
    }
    let mut dict: BTreeMap<Vec<u64>, u32> = BTreeMap::new();
    let mut mor: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    for (side, c) in cats.iter().enumerate() {
        let mut factorizations = vec![0u64; c.num_morphisms()];
        for f in c.morphisms() {
            for &g in c.outgoing(c.tgt(f)) {
                if let Some(h) = c.compose(g, f) {
                    factorizations[h.index()] += 1;
                }
            }
        }
        for f in c.morphisms() {
            let (s, t) = (c.src(f), c.tgt(f));
            let left = c.hom(t, t).iter().filter(|&&g| c.compose(g, f) == Some(f)).count();
            let right = c.hom(s, s).iter().filter(|&&h| c.compose(f, h) == Some(f)).count();
            let sig = vec![
                obj[side][s.index()] as u64,
                obj[side][t.index()] as u64,
                c.is_identity(f) as u64,
                c.is_iso(f) as u64,
                (s == t && c.compose(f, f) == Some(f)) as u64,
                left as u64,
                right as u64,
                factorizations[f.index()],
            ];
            mor[side].push(intern(&mut dict, sig));
        }
    }
    Colours { obj, mor }
}

fn count_distinct(v: &[Vec<u32>; 2]) -> usize {
    let mut all: Vec<u32> = v[0].iter().chain(&v[1]).copied().collect();
    all.sort();
    all.dedup();
    all.len()
}

fn sorted(v: &[u32]) -> Vec<u32> {
    let mut s = v.to_vec();
    s.sort();
    s
}

#[derive(Clone, Copy)]
enum Step {
    Obj(ObjId),
    Mor(MorId),
}

/// Backtracking search for functors `a → b`. Morphism images are forced by
/// composition wherever both factors are already mapped.
struct Search<'a> {
    a: &'a FinCategory,
    b: &'a FinCategory,
    injective: bool,
    obj_cands: Vec<Vec<ObjId>>,
    mor_colour: Option<(&'a [u32], &'a [u32])>,
    steps: Vec<Step>,
    obj_map: Vec<u32>,
    mor_map: Vec<u32>,
    used_obj: Vec<bool>,
    used_mor: Vec<bool>,
    trail: Vec<MorId>,
    work: Vec<MorId>,
    meter: Meter,
    collect_all: bool,
    found: Vec<(Vec<ObjId>, Vec<MorId>)>,
}

impl<'a> Search<'a> {
    fn new(
        a: &'a FinCategory,
        b: &'a FinCategory,
        injective: bool,
        obj_cands: Vec<Vec<ObjId>>,
        mor_colour: Option<(&'a [u32], &'a [u32])>,
        budget: &Budget,
        collect_all: bool,
    ) -> Self {
        let steps = plan(a, &obj_cands);
        Search {
            a,
            b,
            injective,
            obj_cands,
            mor_colour,
            steps,
            obj_map: vec![NONE; a.num_objects()],
            mor_map: vec![NONE; a.num_morphisms()],
            used_obj: vec![false; b.num_objects()],
            used_mor: vec![false; b.num_morphisms()],
            trail: Vec::new(),
            work: Vec::new(),
            meter: Meter::new(budget.candidates, "functor search nodes"),
            collect_all,
            found: Vec::new(),
        }
    }

    fn colour_ok(&self, f: MorId, m: MorId) -> bool {
        match self.mor_colour {
            Some((ca, cb)) => ca[f.index()] == cb[m.index()],
            None => true,
        }
    }

    /// Maps `f ↦ m` and propagates forced composites; false on conflict.
    fn assign(&mut self, f: MorId, m: MorId) -> bool {
        if !self.set(f, m) {
            return false;
        }
        while let Some(f) = self.work.pop() {
            let m = MorId(self.mor_map[f.index()]);
            let a = self.a;
            for &g in a.outgoing(a.tgt(f)) {
                let gm = self.mor_map[g.index()];
                if gm == NONE {
                    continue;
                }
                let h = a.comp(g, f);
                let hm = self.b.comp(MorId(gm), m);
                if !self.ensure(h, hm) {
                    return false;
                }
            }
            for &e in a.incoming(a.src(f)) {
                let em = self.mor_map[e.index()];
                if em == NONE {
                    continue;
                }
                let h = a.comp(f, e);
                let hm = self.b.comp(m, MorId(em));
                if !self.ensure(h, hm) {
                    return false;
                }
            }
        }
        true
    }

    fn ensure(&mut self, h: MorId, hm: MorId) -> bool {
        let cur = self.mor_map[h.index()];
        if cur != NONE {
            return cur == hm.0;
        }
        self.set(h, hm)
    }

    fn set(&mut self, f: MorId, m: MorId) -> bool {
        if !self.colour_ok(f, m) || (self.injective && self.used_mor[m.index()]) {
            return false;
        }
        self.mor_map[f.index()] = m.0;
        self.used_mor[m.index()] = true;
        self.trail.push(f);
        self.work.push(f);
        true
    }

    fn undo(&mut self, mark: usize) {
        self.work.clear();
        while self.trail.len() > mark {
            let f = self.trail.pop().expect("trail");
            let m = self.mor_map[f.index()];
            self.mor_map[f.index()] = NONE;
            if self.injective {
                self.used_mor[m as usize] = false;
            }
        }
    }

    /// Returns true to stop the whole search.
    fn dfs(&mut self, i: usize) -> Result<bool> {
        if i == self.steps.len() {
            self.found.push((
                self.obj_map.iter().map(|&x| ObjId(x)).collect(),
                self.mor_map.iter().map(|&m| MorId(m)).collect(),
            ));
            return Ok(!self.collect_all);
        }
        match self.steps[i] {
            Step::Obj(x) => {
                let cands = self.obj_cands[x.index()].clone();
                for y in cands {
                    if self.injective && self.used_obj[y.index()] {
                        continue;
                    }
                    self.meter.tick(1)?;
                    self.obj_map[x.index()] = y.0;
                    self.used_obj[y.index()] = true;
                    let mark = self.trail.len();
                    if self.assign(self.a.identity(x), self.b.identity(y)) && self.dfs(i + 1)? {
                        return Ok(true);
                    }
                    self.undo(mark);
                    self.used_obj[y.index()] = false;
                    self.obj_map[x.index()] = NONE;
                }
                Ok(false)
            }
            Step::Mor(f) => {
                if self.mor_map[f.index()] != NONE {
                    return self.dfs(i + 1);
                }
                let s = ObjId(self.obj_map[self.a.src(f).index()]);
                let t = ObjId(self.obj_map[self.a.tgt(f).index()]);
                let b = self.b;
                for &m in b.hom(s, t) {
                    if self.injective && self.used_mor[m.index()] {
                        continue;
                    }
                    if !self.colour_ok(f, m) {
                        continue;
                    }
                    self.meter.tick(1)?;
                    let mark = self.trail.len();
                    if self.assign(f, m) && self.dfs(i + 1)? {
                        return Ok(true);
                    }
                    self.undo(mark);
                }
                Ok(false)
            }
        }
    }
}

/// Object order: fewest candidates first, then most connections to already
/// placed objects; after each object, the morphisms it closes up.
fn plan(a: &FinCategory, cands: &[Vec<ObjId>]) -> Vec<Step> {
    let n = a.num_objects();
    let mut placed = vec![false; n];
    let mut order: Vec<ObjId> = Vec::with_capacity(n);
    let mut steps = Vec::new();
    for _ in 0..n {
        let next = a
            .objects()
            .filter(|x| !placed[x.index()])
            .min_by_key(|&x| {
                let links: usize = order.iter().map(|&y| a.hom(x, y).len() + a.hom(y, x).len()).sum();
                (
                    links == 0 && !order.is_empty(),
                    cands[x.index()].len(),
                    usize::MAX - links,
                    x,
                )
            })
            .expect("unplaced object");
        placed[next.index()] = true;
        order.push(next);
        steps.push(Step::Obj(next));
        for &y in &order {
            for &f in a.hom(next, y) {
                steps.push(Step::Mor(f));
            }
            if y != next {
                for &f in a.hom(y, next) {
                    steps.push(Step::Mor(f));
                }
            }
        }
    }
    steps
}

fn run_search<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    // deep recursion on large categories needs more than the default stack
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(256 << 20)
            .spawn_scoped(s, f)
            .expect("spawn search thread")
            .join()
            .expect("search thread panicked")
    })
}

fn identity_by_names(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Option<FinFunctor> {
    if a.object_names() != b.object_names() || a.num_morphisms() != b.num_morphisms() {
        return None;
    }
    let mm = a
        .morphisms()
        .map(|f| b.morphism_id(a.morphism_name(f)))
        .collect::<Option<Vec<_>>>()?;
    let f = FinFunctor::new(a.clone(), b.clone(), a.objects().collect(), mm).ok()?;
    is_isomorphism(&f).then_some(f)
}

/// Searches for an isomorphism `a → b`.
pub fn find_isomorphism(a: &Arc<FinCategory>, b: &Arc<FinCategory>, budget: &Budget) -> Result<Option<FinFunctor>> {
    if a.num_objects() != b.num_objects()
        || a.num_morphisms() != b.num_morphisms()
        || a.num_composable_pairs() != b.num_composable_pairs()
    {
        return Ok(None);
    }
    if let Some(f) = identity_by_names(a, b) {
        return Ok(Some(f));
    }
    let col = colours([a, b]);
    if sorted(&col.obj[0]) != sorted(&col.obj[1]) || sorted(&col.mor[0]) != sorted(&col.mor[1]) {
        return Ok(None);
    }
    let cands: Vec<Vec<ObjId>> = a
        .objects()
        .map(|x| {
            b.objects()
                .filter(|y| col.obj[1][y.index()] == col.obj[0][x.index()])
                .collect()
        })
        .collect();
    let found = run_search(|| -> Result<_> {
        let mut s = Search::new(a, b, true, cands, Some((&col.mor[0], &col.mor[1])), budget, false);
        s.dfs(0)?;
        Ok(s.found.pop())
    })?;
    match found {
        None => Ok(None),
        Some((om, mm)) => {
            let f = FinFunctor::new(a.clone(), b.clone(), om, mm)?;
            debug_assert!(is_isomorphism(&f));
            Ok(Some(f))
        }
    }
}

/// All functors `c → k`, in search order.
pub fn enumerate_functors(c: &Arc<FinCategory>, k: &Arc<FinCategory>, budget: &Budget) -> Result<Vec<FinFunctor>> {
    let cands: Vec<Vec<ObjId>> = c.objects().map(|_| k.objects().collect()).collect();
    let found = run_search(|| -> Result<_> {
        let mut s = Search::new(c, k, false, cands, None, budget, true);
        s.dfs(0)?;
        Ok(s.found)
    })?;
    found
        .into_iter()
        .map(|(om, mm)| FinFunctor::new(c.clone(), k.clone(), om, mm))
        .collect()
}

/// All natural transformations `f ⇒ g` (only invertible ones when asked),
/// ordered lexicographically by their component lists.
pub fn enumerate_transformations(
    f: &FinFunctor,
    g: &FinFunctor,
    invertible_only: bool,
    budget: &Budget,
) -> Result<Vec<NatTransformation>> {
    if !f.is_parallel(g) {
        return crate::error::input("transformations need parallel functors".to_owned());
    }
    let (c, d) = (f.source(), f.target());
    let cands: Vec<Vec<MorId>> = c
        .objects()
        .map(|x| {
            d.hom(f.obj(x), g.obj(x))
                .iter()
                .copied()
                .filter(|&m| !invertible_only || d.is_iso(m))
                .collect()
        })
        .collect();
    let mut meter = Meter::new(budget.candidates, "transformation candidates");
    let mut comps = vec![MorId(NONE); c.num_objects()];
    let mut out = Vec::new();
    fn go(
        i: usize,
        c: &FinCategory,
        d: &FinCategory,
        f: &FinFunctor,
        g: &FinFunctor,
        cands: &[Vec<MorId>],
        comps: &mut Vec<MorId>,
        meter: &mut Meter,
        out: &mut Vec<Vec<MorId>>,
    ) -> Result<()> {
        if i == cands.len() {
            out.push(comps.clone());
            return Ok(());
        }
        let x = ObjId(i as u32);
        for &m in &cands[i] {
            meter.tick(1)?;
            comps[i] = m;
            // naturality on morphisms between x and earlier objects
            let ok = c.outgoing(x).iter().chain(c.incoming(x)).all(|&u| {
                let (s, t) = (c.src(u), c.tgt(u));
                if s.index() > i || t.index() > i {
                    return true;
                }
                d.compose(comps[t.index()], f.mor(u)) == d.compose(g.mor(u), comps[s.index()])
            });
            if ok {
                go(i + 1, c, d, f, g, cands, comps, meter, out)?;
            }
        }
        comps[i] = MorId(NONE);
        Ok(())
    }
    let mut raw = Vec::new();
    go(0, c, d, f, g, &cands, &mut comps, &mut meter, &mut raw)?;
    for comps in raw {
        out.push(NatTransformation::new(f.clone(), g.clone(), comps)?);
    }
    Ok(out)
}

/// The full subcategory on the least object of each isomorphism class,
/// together with the chosen isomorphisms into it.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub category: Arc<FinCategory>,
    /// Skeleton object representing each ambient object.
    pub rep: Vec<ObjId>,
    /// Least isomorphism from each ambient object to its representative
    /// (the identity on representatives).
    pub to_rep: Vec<MorId>,
    /// Ambient object of each skeleton object.
    pub objects: Vec<ObjId>,
    /// Ambient morphism of each skeleton morphism.
    pub morphisms: Vec<MorId>,
}

pub fn skeleton(c: &Arc<FinCategory>) -> Result<Skeleton> {
    let n = c.num_objects();
    let mut rep_amb = vec![ObjId(0); n];
    let mut to_rep = vec![MorId(0); n];
    let mut reps = Vec::new();
    for x in c.objects() {
        let found = reps.iter().find_map(|&r| c.find_iso(x, r).map(|i| (r, i)));
        match found {
            Some((r, i)) => {
                rep_amb[x.index()] = r;
                to_rep[x.index()] = i;
            }
            None => {
                reps.push(x);
                rep_amb[x.index()] = x;
                to_rep[x.index()] = c.identity(x);
            }
        }
    }
    let sub = c.full_subcategory(format!("sk({})", c.name()), &reps)?;
    let local: BTreeMap<ObjId, ObjId> = sub
        .objects
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, ObjId(i as u32)))
        .collect();
    Ok(Skeleton {
        category: Arc::new(sub.category),
        rep: rep_amb.iter().map(|r| local[r]).collect(),
        to_rep,
        objects: sub.objects,
        morphisms: sub.morphisms,
    })
}

fn equivalence_witness(a: &Arc<FinCategory>, b: &Arc<FinCategory>, budget: &Budget) -> Result<Option<FinFunctor>> {
    let (sa, sb) = (skeleton(a)?, skeleton(b)?);
    let Some(phi) = find_isomorphism(&sa.category, &sb.category, budget)? else {
        return Ok(None);
    };
    let mut local_mor = std::collections::HashMap::new();
    for (i, &m) in sa.morphisms.iter().enumerate() {
        local_mor.insert(m, MorId(i as u32));
    }
    let om = a
        .objects()
        .map(|x| sb.objects[phi.obj(sa.rep[x.index()]).index()])
        .collect();
    let mm = a
        .morphisms()
        .map(|f| {
            let (x, y) = (a.src(f), a.tgt(f));
            let ix_inv = a.inverse(sa.to_rep[x.index()]).expect("iso");
            let g = a.comp(sa.to_rep[y.index()], a.comp(f, ix_inv));
            sb.morphisms[phi.mor(local_mor[&g]).index()]
        })
        .collect();
    Ok(Some(FinFunctor::new(a.clone(), b.clone(), om, mm)?))
}

pub fn compare_categories(
    a: &Arc<FinCategory>,
    b: &Arc<FinCategory>,
    mode: CompareMode,
    budget: &Budget,
) -> Result<Comparison> {
    let witness = match mode {
        CompareMode::Iso => find_isomorphism(a, b, budget)?,
        CompareMode::Equivalence => equivalence_witness(a, b, budget)?,
    };
    Ok(Comparison {
        holds: witness.is_some(),
        witness,
    })
}
