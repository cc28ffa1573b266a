use std::sync::Arc;

use fincat::cat::{
    builtin, compare_categories, enumerate_functors, is_isomorphism, validate_category, validate_functor,
    validate_nat_trans, CompareMode, FinCategory, FinFunctor, NatTransformation, ObjId,
};
use fincat::pie::{
    equifier, inserter, iso_inserter, isomorpher_to_pullback, joint_equifier, joint_equifier_packed, joint_inserter,
    joint_inserter_packed, pseudopullback_direct, pseudopullback_pie, pseudopullback_via_pie, pullback_to_isomorpher,
    PieOptions,
};
use fincat::Budget;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

fn budget() -> Budget {
    Budget::default()
}

fn functors(c: &Arc<FinCategory>, k: &Arc<FinCategory>) -> Vec<FinFunctor> {
    enumerate_functors(c, k, &budget()).unwrap()
}

#[test]
fn inserter_of_identities_on_discrete() {
    let d = arc(builtin::discrete(2));
    let id = FinFunctor::identity(&d);
    let ins = inserter(&id, &id, &budget()).unwrap();
    let r = compare_categories(&ins.category, &d, CompareMode::Iso, &budget()).unwrap();
    assert!(r.holds);
}

#[test]
fn inserter_over_terminal_is_discrete_on_hom() {
    let t = arc(builtin::terminal());
    let l = arc(builtin::sets(2));
    let f = FinFunctor::constant(&t, &l, l.object_id("1").unwrap());
    let g = FinFunctor::constant(&t, &l, l.object_id("2").unwrap());
    let ins = inserter(&f, &g, &budget()).unwrap();
    assert_eq!(ins.category.num_objects(), 2);
    assert_eq!(ins.category.num_morphisms(), 2);
}

fn brute_inserter_objects(f: &FinFunctor, g: &FinFunctor) -> usize {
    let (k, l) = (f.source(), f.target());
    let mut n = 0;
    for x in k.objects() {
        for m in l.morphisms() {
            if l.src(m) == f.obj(x) && l.tgt(m) == g.obj(x) {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn random_inserters_match_enumeration_and_hom_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let l = arc(builtin::sets(2));
    for k in [builtin::arrow(), builtin::parallel_pair(), builtin::walking_iso()] {
        let k = arc(k);
        let fs = functors(&k, &l);
        for _ in 0..6 {
            let f = fs.choose(&mut rng).unwrap();
            let g = fs.choose(&mut rng).unwrap();
            let ins = inserter(f, g, &budget()).unwrap();
            let e = &ins.category;
            assert!(validate_category(e).ok);
            assert!(validate_functor(&ins.forgetful).ok);
            assert!(ins.forgetful.is_faithful());
            assert_eq!(e.num_objects(), brute_inserter_objects(f, g));
            // hom-sets are equalizers of u ↦ phi' F(u) and u ↦ G(u) phi
            for x in e.objects() {
                for y in e.objects() {
                    let (phi, phi2) = (ins.structure[x.index()][0], ins.structure[y.index()][0]);
                    let expect: Vec<_> = k
                        .hom(ins.carrier(x), ins.carrier(y))
                        .iter()
                        .copied()
                        .filter(|&u| l.comp(phi2, f.mor(u)) == l.comp(g.mor(u), phi))
                        .collect();
                    let mut got: Vec<_> = e.hom(x, y).iter().map(|&m| ins.forgetful.mor(m)).collect();
                    got.sort();
                    assert_eq!(got, expect);
                }
            }
            let iso = iso_inserter(f, g, &budget()).unwrap();
            let mut want: Vec<String> = e
                .objects()
                .filter(|&x| l.is_iso(ins.structure[x.index()][0]))
                .map(|x| format!("{:?}{:?}", ins.carrier(x), ins.structure[x.index()]))
                .collect();
            let mut have: Vec<String> = iso
                .category
                .objects()
                .map(|x| format!("{:?}{:?}", iso.carrier(x), iso.structure[x.index()]))
                .collect();
            want.sort();
            have.sort();
            assert_eq!(want, have);
            assert!(iso.forgetful.is_faithful());
        }
    }
}

#[test]
fn iso_inserter_of_identities_on_poset_is_the_poset() {
    let p = arc(builtin::square());
    let id = FinFunctor::identity(&p);
    let iso = iso_inserter(&id, &id, &budget()).unwrap();
    assert!(
        compare_categories(&iso.category, &p, CompareMode::Iso, &budget())
            .unwrap()
            .holds
    );
}

#[test]
fn joint_inserter_agrees_with_packed() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let k = arc(builtin::arrow());
    let l1 = arc(builtin::sets(2));
    let l2 = arc(builtin::walking_iso());
    let f1s = functors(&k, &l1);
    let f2s = functors(&k, &l2);
    for _ in 0..5 {
        let pairs = vec![
            (
                f1s.choose(&mut rng).unwrap().clone(),
                f1s.choose(&mut rng).unwrap().clone(),
            ),
            (
                f2s.choose(&mut rng).unwrap().clone(),
                f2s.choose(&mut rng).unwrap().clone(),
            ),
        ];
        let j = joint_inserter(&k, &pairs, &budget()).unwrap();
        let p = joint_inserter_packed(&k, &pairs, &budget()).unwrap();
        assert!(
            compare_categories(&j.category, &p.category, CompareMode::Iso, &budget())
                .unwrap()
                .holds
        );
        assert!(j.forgetful.is_faithful());
    }
    let single = joint_inserter(&k, &[(f1s[0].clone(), f1s[1].clone())], &budget()).unwrap();
    let plain = inserter(&f1s[0], &f1s[1], &budget()).unwrap();
    assert!(
        compare_categories(&single.category, &plain.category, CompareMode::Iso, &budget())
            .unwrap()
            .holds
    );
    let empty = joint_inserter(&k, &[], &budget()).unwrap();
    assert_eq!(*empty.category, *k);
}

#[test]
fn joint_inserter_over_terminal() {
    let t = arc(builtin::terminal());
    let l = arc(builtin::sets(2));
    let at = |n: &str| FinFunctor::constant(&t, &l, l.object_id(n).unwrap());
    let j = joint_inserter(&t, &[(at("1"), at("2")), (at("2"), at("2"))], &budget()).unwrap();
    assert_eq!(j.category.num_objects(), 2 * 4);
    assert_eq!(j.category.num_morphisms(), 8);
}

/// Natural transformations `f ⇒ g` by exhaustive component search.
fn transformations(f: &FinFunctor, g: &FinFunctor) -> Vec<NatTransformation> {
    let (k, l) = (f.source(), f.target());
    let mut out = Vec::new();
    let homs: Vec<Vec<_>> = k.objects().map(|x| l.hom(f.obj(x), g.obj(x)).to_vec()).collect();
    let mut pick = vec![0usize; homs.len()];
    if homs.iter().any(|h| h.is_empty()) {
        return out;
    }
    loop {
        let comps = pick.iter().zip(&homs).map(|(&i, h)| h[i]).collect();
        let t = NatTransformation::new(f.clone(), g.clone(), comps).unwrap();
        if validate_nat_trans(&t).ok {
            out.push(t);
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return out;
            }
            pick[i] += 1;
            if pick[i] < homs[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn equifier_examples() {
    let k = arc(builtin::arrow());
    let l = arc(builtin::sets(2));
    let fs = functors(&k, &l);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 10 {
        let f = fs.choose(&mut rng).unwrap();
        let g = fs.choose(&mut rng).unwrap();
        let ts = transformations(f, g);
        if ts.len() < 2 {
            continue;
        }
        checked += 1;
        let (phi, psi) = (ts.choose(&mut rng).unwrap(), ts.choose(&mut rng).unwrap());
        let same = equifier(phi, phi).unwrap();
        assert_eq!(same.kept_objects().len(), k.num_objects());
        let v = equifier(phi, psi).unwrap();
        let want: Vec<ObjId> = k.objects().filter(|&x| phi.component(x) == psi.component(x)).collect();
        assert_eq!(v.kept_objects(), &want[..]);
        // adding pairs never enlarges the kept set
        let extra = (
            ts.choose(&mut rng).unwrap().clone(),
            ts.choose(&mut rng).unwrap().clone(),
        );
        let pairs = vec![(phi.clone(), psi.clone()), extra];
        let j = joint_equifier(&k, &pairs).unwrap();
        assert!(j.kept_objects().iter().all(|x| v.contains(*x)));
        let packed = joint_equifier_packed(&k, &pairs, &budget()).unwrap();
        assert_eq!(j.kept_objects(), packed.kept_objects());
    }
    assert_eq!(joint_equifier(&k, &[]).unwrap().kept_objects().len(), 2);
}

#[test]
fn pseudopullback_of_identities_is_equivalent_to_base() {
    for k in [builtin::walking_iso(), builtin::square(), builtin::sets(2)] {
        let k = arc(k);
        let id = FinFunctor::identity(&k);
        let pp = pseudopullback_direct(&id, &id, &budget()).unwrap();
        assert!(validate_category(&pp.category).ok);
        let r = compare_categories(&pp.category, &k, CompareMode::Equivalence, &budget()).unwrap();
        assert!(r.holds, "{}", k.name());
        let via = pseudopullback_via_pie(&id, &id, &budget()).unwrap();
        assert!(via.witness_is_iso);
        assert!(
            compare_categories(&via.direct, &via.category, CompareMode::Iso, &budget())
                .unwrap()
                .holds
        );
    }
}

#[test]
fn pseudopullback_of_non_isomorphic_points_is_empty() {
    let t = arc(builtin::terminal());
    let l = arc(builtin::sets(2));
    let a = FinFunctor::constant(&t, &l, l.object_id("1").unwrap());
    let b = FinFunctor::constant(&t, &l, l.object_id("2").unwrap());
    let pp = pseudopullback_direct(&a, &b, &budget()).unwrap();
    assert_eq!(pp.category.num_objects(), 0);
    let via = pseudopullback_via_pie(&a, &b, &budget()).unwrap();
    assert_eq!(via.category.num_objects(), 0);
    // without one inverse law, split monos 1 → 2 survive
    let (loose, _, _, _) = pseudopullback_pie(&a, &b, &PieOptions::without("right-inverse"), &budget()).unwrap();
    assert!(loose.category.num_objects() > 0);
}

#[test]
fn random_pseudopullbacks_and_reductions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c = arc(builtin::sets(2));
    let sources = [
        arc(builtin::arrow()),
        arc(builtin::walking_iso()),
        arc(builtin::discrete(2)),
    ];
    for _ in 0..8 {
        let a = sources.choose(&mut rng).unwrap();
        let b = sources.choose(&mut rng).unwrap();
        let ta = functors(a, &c).choose(&mut rng).unwrap().clone();
        let tb = functors(b, &c).choose(&mut rng).unwrap().clone();
        let via = pseudopullback_via_pie(&ta, &tb, &budget()).unwrap();
        assert!(via.witness_is_iso);
        assert!(is_isomorphism(&via.witness));
        let red = pullback_to_isomorpher(&ta, &tb, &budget()).unwrap();
        assert!(red.holds);
        assert!(
            compare_categories(&red.construction, &red.counterpart, CompareMode::Iso, &budget())
                .unwrap()
                .holds
        );
    }
    let h = arc(builtin::arrow());
    let fs = functors(&h, &c);
    for _ in 0..8 {
        let p = fs.choose(&mut rng).unwrap();
        let q = fs.choose(&mut rng).unwrap();
        let red = isomorpher_to_pullback(p, q, &budget()).unwrap();
        assert!(red.holds);
        assert!(
            compare_categories(&red.construction, &red.counterpart, CompareMode::Equivalence, &budget())
                .unwrap()
                .holds
        );
    }
}
