mod common;

use common::*;
use fincat::cat::{builtin, cofinal_by_reachability, colimit_comparison, is_cofinal, FinFunctor, ObjId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng, i: usize) -> Option<FinFunctor> {
    match i % 5 {
        0 => {
            let c = arc(random_small_category(rng));
            Some(FinFunctor::identity(&c))
        }
        1 => {
            let c = arc(random_small_category(rng));
            let d = arc(builtin::discrete(rng.gen_range(2..=3)));
            Some(FinFunctor::constant(&c, &d, ObjId(0)))
        }
        _ => {
            let c = arc(random_small_category(rng));
            let d = arc(random_small_category(rng));
            random_functor(rng, &c, &d)
        }
    }
}

#[test]
fn cofinality_matches_colimit_comparison() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut yes, mut no, mut checked) = (0, 0, 0);
    let mut i = 0;
    while checked < 150 {
        i += 1;
        let Some(delta) = random_instance(&mut rng, i) else {
            continue;
        };
        let d = delta.target().clone();
        let verdict = is_cofinal(&delta);
        assert_eq!(verdict.holds, cofinal_by_comma_bfs(&delta));
        if let Some(v) = cofinal_by_reachability(&delta) {
            assert_eq!(v.holds, verdict.holds);
        }
        // representables detect cofinality exactly
        let reps_ok = d
            .objects()
            .all(|w| comparison_is_bijective(&representable(&d, w), &delta));
        assert_eq!(reps_ok, verdict.holds, "{:?}", verdict.witness);
        for diag in random_set_diagrams(&mut rng, &d, 20) {
            let ours = comparison_is_bijective(&diag, &delta);
            let lib = colimit_comparison(&diag, &delta).unwrap().is_bijection();
            assert_eq!(ours, lib);
            if verdict.holds {
                assert!(ours);
            }
        }
        if verdict.holds {
            yes += 1;
        } else {
            no += 1;
        }
        checked += 1;
    }
    assert!(yes > 10 && no > 10, "{yes} cofinal, {no} not");
}

#[test]
fn top_element_is_cofinal() {
    let c = arc(builtin::chain(4));
    let one = arc(builtin::terminal());
    let top = FinFunctor::constant(&one, &c, c.object_id("3").unwrap());
    let bottom = FinFunctor::constant(&one, &c, c.object_id("0").unwrap());
    assert!(is_cofinal(&top).holds);
    let v = is_cofinal(&bottom);
    assert!(!v.holds);
    assert_eq!(v.witness, vec!["1", "empty"]);
}

#[test]
fn constant_functors_to_the_point() {
    // the comma category over the point is the pair itself: connected
    let pp = arc(builtin::parallel_pair());
    let one = arc(builtin::terminal());
    assert!(is_cofinal(&FinFunctor::constant(&pp, &one, ObjId(0))).holds);
    // discrete two objects over the point: disconnected
    let d2 = arc(builtin::discrete(2));
    let v = is_cofinal(&FinFunctor::constant(&d2, &one, ObjId(0)));
    assert_eq!(v.witness[1], "disconnected");
}
