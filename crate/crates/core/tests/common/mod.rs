//! Random instance generators and independent oracles shared by the
//! integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use fincat::cat::{
    builtin, enumerate_functors, enumerate_transformations, FinCategory, FinFunctor, MorId, NatTransformation, ObjId,
    SetDiagram,
};
use fincat::factorization::{FilteredPresentation, LiftProblem};
use fincat::Budget;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

/// A random partial order on `n` elements named `p0..`, built from random
/// edges `i < j` and closed transitively. With `top`, the last element is
/// made the maximum.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize, density: f64, top: bool) -> FinCategory {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) || (top && j == n - 1) {
                leq[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    builtin::poset(&format!("poset-{n}"), &names, |i, j| leq[i][j]).unwrap()
}

/// A random category with at most four objects: random posets mixed with
/// small non-thin shapes.
pub fn random_small_category(rng: &mut ChaCha8Rng) -> FinCategory {
    match rng.gen_range(0..10) {
        0 => builtin::parallel_pair(),
        1 => builtin::walking_iso(),
        2 => builtin::discrete(rng.gen_range(1..=3)),
        3 => builtin::sets(1),
        4 => builtin::arrow(),
        5 => builtin::terminal(),
        _ => {
            let n = rng.gen_range(1..=4);
            random_poset(rng, n, 0.5, false)
        }
    }
}

pub fn random_functor(rng: &mut ChaCha8Rng, c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Option<FinFunctor> {
    let all = enumerate_functors(c, d, &Budget::default()).ok()?;
    all.choose(rng).cloned()
}

/// Reads a functor into `sets(n)` as a set diagram.
pub fn set_diagram_of(f: &FinFunctor) -> SetDiagram {
    let t = f.target();
    let shape = f.source().clone();
    let sizes: Vec<usize> = shape
        .objects()
        .map(|x| t.object_name(f.obj(x)).parse().unwrap())
        .collect();
    let maps: Vec<Vec<usize>> = shape
        .morphisms()
        .map(|m| {
            let name = t.morphism_name(f.mor(m));
            let body = name.split_once(":[").unwrap().1.trim_end_matches(']');
            body.split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().unwrap())
                .collect()
        })
        .collect();
    SetDiagram::from_sizes(shape, &sizes, maps).unwrap()
}

/// The representable diagram `Hom(w, -)`.
pub fn representable(c: &Arc<FinCategory>, w: ObjId) -> SetDiagram {
    let sets: Vec<Vec<String>> = c
        .objects()
        .map(|x| c.hom(w, x).iter().map(|&m| c.morphism_name(m).to_owned()).collect())
        .collect();
    let maps: Vec<Vec<usize>> = c
        .morphisms()
        .map(|f| {
            let (s, t) = (c.src(f), c.tgt(f));
            c.hom(w, s)
                .iter()
                .map(|&a| {
                    let b = c.comp(f, a);
                    c.hom(w, t).iter().position(|&m| m == b).unwrap()
                })
                .collect()
        })
        .collect();
    SetDiagram::new(c.clone(), sets, maps).unwrap()
}

/// Random set diagrams on `c`: functors into `sets(2)` (or `sets(1)` when
/// there are too many) chosen uniformly.
pub fn random_set_diagrams(rng: &mut ChaCha8Rng, c: &Arc<FinCategory>, count: usize) -> Vec<SetDiagram> {
    let all = enumerate_functors(c, &arc(builtin::sets(2)), &Budget::default())
        .or_else(|_| enumerate_functors(c, &arc(builtin::sets(1)), &Budget::default()))
        .unwrap();
    (0..count).map(|_| set_diagram_of(all.choose(rng).unwrap())).collect()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Colimit class of every element `(object, index)`, numbered in order of
/// first appearance.
pub fn colimit_classes(d: &SetDiagram) -> (usize, Vec<Vec<usize>>) {
    let c = d.shape();
    let mut off = vec![0];
    for x in c.objects() {
        off.push(off.last().unwrap() + d.size(x));
    }
    let total = *off.last().unwrap();
    let mut parent: Vec<usize> = (0..total).collect();
    for f in c.morphisms() {
        let (s, t) = (c.src(f).index(), c.tgt(f).index());
        for (e, &fe) in d.map(f).iter().enumerate() {
            let (a, b) = (find(&mut parent, off[s] + e), find(&mut parent, off[t] + fe));
            parent[a] = b;
        }
    }
    let mut label = vec![usize::MAX; total];
    let mut n = 0;
    let mut classes = Vec::new();
    for x in c.objects() {
        let mut row = Vec::new();
        for e in 0..d.size(x) {
            let r = find(&mut parent, off[x.index()] + e);
            if label[r] == usize::MAX {
                label[r] = n;
                n += 1;
            }
            row.push(label[r]);
        }
        classes.push(row);
    }
    (n, classes)
}

/// Whether the canonical map `colim(D ∘ δ) → colim(D)` is a bijection,
/// computed without the library's colimit code.
pub fn comparison_is_bijective(d: &SetDiagram, delta: &FinFunctor) -> bool {
    let r = d.restrict_along(delta).unwrap();
    let (n_small, small) = colimit_classes(&r);
    let (n_big, big) = colimit_classes(d);
    if n_small != n_big {
        return false;
    }
    let mut map = vec![usize::MAX; n_small];
    for x in delta.source().objects() {
        for (e, &cls) in small[x.index()].iter().enumerate() {
            let img = big[delta.obj(x).index()][e];
            if map[cls] != usize::MAX && map[cls] != img {
                return false;
            }
            map[cls] = img;
        }
    }
    let mut seen = vec![false; n_big];
    map.iter()
        .all(|&v| v != usize::MAX && !std::mem::replace(&mut seen[v], true))
}

/// `(w ↓ δ)` nonempty and connected for every `w`, by breadth-first search
/// over comma objects.
pub fn cofinal_by_comma_bfs(delta: &FinFunctor) -> bool {
    let (c, d) = (delta.source(), delta.target());
    d.objects().all(|w| {
        let objs: Vec<(ObjId, MorId)> = c
            .objects()
            .flat_map(|x| d.hom(w, delta.obj(x)).iter().map(move |&a| (x, a)))
            .collect();
        if objs.is_empty() {
            return false;
        }
        let mut seen = vec![false; objs.len()];
        let mut queue = vec![0];
        seen[0] = true;
        while let Some(i) = queue.pop() {
            let (x, a) = objs[i];
            for (j, &(y, b)) in objs.iter().enumerate() {
                if seen[j] {
                    continue;
                }
                let fwd = c.hom(x, y).iter().any(|&u| d.comp(delta.mor(u), a) == b);
                let back = c.hom(y, x).iter().any(|&u| d.comp(delta.mor(u), b) == a);
                if fwd || back {
                    seen[j] = true;
                    queue.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    })
}

/// A random directed poset with a maximum on at most `max_n` elements.
pub fn random_directed_poset(rng: &mut ChaCha8Rng, max_n: usize) -> Arc<FinCategory> {
    let n = rng.gen_range(1..=max_n);
    arc(random_poset(rng, n, 0.4, true))
}

/// The presentation of the maximum of a directed poset by the poset itself.
pub fn self_presentation(p: &Arc<FinCategory>) -> FilteredPresentation {
    let top = p
        .objects()
        .find(|&m| p.objects().all(|x| !p.hom(x, m).is_empty()))
        .unwrap();
    let legs = p.objects().map(|x| p.hom(x, top)[0]).collect();
    FilteredPresentation::new(FinFunctor::identity(p), top, legs).unwrap()
}

pub fn value_categories() -> Vec<Arc<FinCategory>> {
    vec![
        arc(builtin::parallel_pair()),
        arc(builtin::sets(2)),
        arc(builtin::sets(1)),
    ]
}

/// Random `φ, ψ: F ⇒ G` on a presentation's target that agree at the apex.
pub fn random_equifier_data(
    rng: &mut ChaCha8Rng,
    p: &FilteredPresentation,
    l: &Arc<FinCategory>,
) -> Option<(NatTransformation, NatTransformation)> {
    let k = p.target();
    let f = random_functor(rng, k, l)?;
    let g = random_functor(rng, k, l)?;
    let ts = enumerate_transformations(&f, &g, false, &Budget::default()).ok()?;
    let phi = ts.choose(rng)?.clone();
    let same: Vec<&NatTransformation> = ts
        .iter()
        .filter(|t| t.component(p.apex()) == phi.component(p.apex()))
        .collect();
    let psi = (*same.choose(rng)?).clone();
    Some((phi, psi))
}

/// A random lifting problem with a commuting input pentagon.
pub fn random_lift_problem(
    rng: &mut ChaCha8Rng,
    p: &FilteredPresentation,
    l: &Arc<FinCategory>,
) -> Option<(FinFunctor, FinFunctor, LiftProblem)> {
    let k = p.target();
    let f = random_functor(rng, k, l)?;
    let g = random_functor(rng, k, l)?;
    let apex = p.apex();
    let phi = *l.hom(f.obj(apex), g.obj(apex)).choose(rng)?;
    let ts: Vec<ObjId> = k.objects().filter(|&x| !k.hom(x, apex).is_empty()).collect();
    let t_obj = *ts.choose(rng)?;
    let t = *k.hom(t_obj, apex).choose(rng)?;
    let ss: Vec<ObjId> = k.objects().filter(|&x| !k.hom(x, t_obj).is_empty()).collect();
    let s_obj = *ss.choose(rng)?;
    let s = *k.hom(s_obj, t_obj).choose(rng)?;
    let target = l.comp(phi, f.mor(k.comp(t, s)));
    let sigmas: Vec<MorId> = l
        .hom(f.obj(s_obj), g.obj(t_obj))
        .iter()
        .copied()
        .filter(|&sg| l.comp(g.mor(t), sg) == target)
        .collect();
    let sigma = *sigmas.choose(rng)?;
    Some((f, g, LiftProblem { s, t, sigma, phi }))
}

/// The equifier chain rule written out from scratch: least factoring
/// stage, then least strictly later stage with transported agreement.
pub fn equifier_chain_oracle(
    f: MorId,
    phi: &NatTransformation,
    psi: &NatTransformation,
    p: &FilteredPresentation,
) -> Vec<ObjId> {
    let (xi, k) = (p.index(), p.target());
    let l = phi.target().target();
    let g = phi.target();
    let start = xi
        .objects()
        .find(|&x| k.hom(k.src(f), p.stage(x)).iter().any(|&t| k.comp(p.leg(x), t) == f))
        .unwrap();
    let mut chain = vec![start];
    let mut cur = start;
    while phi.component(p.stage(cur)) != psi.component(p.stage(cur)) {
        let next = xi
            .objects()
            .filter(|&y| y != cur && !xi.hom(cur, y).is_empty())
            .find(|&y| {
                let tr = g.mor(p.stages().mor(xi.hom(cur, y)[0]));
                let x = p.stage(cur);
                l.comp(tr, phi.component(x)) == l.comp(tr, psi.component(x))
            })
            .unwrap();
        chain.push(next);
        cur = next;
    }
    chain
}

/// `chain(n)` presenting the top of `chain(n + 1)` through its last `n`
/// elements, so the first stage has an object below it.
pub fn shifted_presentation(n: usize) -> FilteredPresentation {
    let xi = arc(builtin::chain(n));
    let k = arc(builtin::chain(n + 1));
    let shift = |x: ObjId| ObjId(x.0 + 1);
    let om: Vec<ObjId> = xi.objects().map(shift).collect();
    let mm: Vec<MorId> = xi
        .morphisms()
        .map(|m| k.hom(shift(xi.src(m)), shift(xi.tgt(m)))[0])
        .collect();
    let top = ObjId(n as u32);
    let legs = xi.objects().map(|x| k.hom(shift(x), top)[0]).collect();
    FilteredPresentation::new(FinFunctor::new(xi, k, om, mm).unwrap(), top, legs).unwrap()
}

/// Counts functors by trying every object map and every choice of morphism
/// images, checking the laws on tables.
pub fn count_functors_brute(c: &FinCategory, k: &FinCategory) -> usize {
    let no = c.num_objects();
    let nk = k.num_objects();
    let mut count = 0;
    for code in 0..nk.pow(no as u32) {
        let mut om = vec![0usize; no];
        let mut x = code;
        for v in om.iter_mut() {
            *v = x % nk;
            x /= nk;
        }
        let choices: Vec<Vec<_>> = c
            .morphisms()
            .map(|f| {
                k.hom(ObjId(om[c.src(f).index()] as u32), ObjId(om[c.tgt(f).index()] as u32))
                    .to_vec()
            })
            .collect();
        let total: usize = choices.iter().map(|v| v.len()).product();
        for mut code in 0..total {
            let mm: Vec<_> = choices
                .iter()
                .map(|v| {
                    let m = v[code % v.len()];
                    code /= v.len();
                    m
                })
                .collect();
            let ids = c
                .objects()
                .all(|x| mm[c.identity(x).index()] == k.identity(ObjId(om[x.index()] as u32)));
            let comp = c.morphisms().all(|f| {
                c.morphisms().all(|g| match c.compose(g, f) {
                    Some(h) => k.compose(mm[g.index()], mm[f.index()]) == Some(mm[h.index()]),
                    None => true,
                })
            });
            if ids && comp {
                count += 1;
            }
        }
    }
    count
}

/// Independent count of representations of the linear quiver on `n`
/// vertices with dims `≤ d` over F₂, optionally requiring consecutive
/// composites to vanish.
pub fn count_linear_reps(n: usize, d: usize, squares_zero: bool) -> usize {
    fn mul(a: &[u8], b: &[u8], r: usize, k: usize, c: usize) -> Vec<u8> {
        let mut out = vec![0u8; r * c];
        for i in 0..r {
            for j in 0..c {
                out[i * c + j] = (0..k).map(|l| a[i * k + l] & b[l * c + j]).fold(0, |x, y| x ^ y);
            }
        }
        out
    }
    fn go(dims: &[usize], mats: &mut Vec<Vec<u8>>, squares_zero: bool) -> usize {
        let i = mats.len();
        if i + 1 == dims.len() {
            return 1;
        }
        let cells = dims[i] * dims[i + 1];
        let mut total = 0;
        for code in 0..(1usize << cells) {
            let m: Vec<u8> = (0..cells).map(|b| ((code >> b) & 1) as u8).collect();
            if squares_zero && i > 0 {
                let prod = mul(&m, &mats[i - 1], dims[i + 1], dims[i], dims[i - 1]);
                if prod.iter().any(|&x| x != 0) {
                    continue;
                }
            }
            mats.push(m);
            total += go(dims, mats, squares_zero);
            mats.pop();
        }
        total
    }
    let mut total = 0;
    for code in 0..(d + 1).pow(n as u32) {
        let dims: Vec<usize> = (0..n).map(|i| (code / (d + 1).pow(i as u32)) % (d + 1)).collect();
        total += go(&dims, &mut Vec::new(), squares_zero);
    }
    total
}
