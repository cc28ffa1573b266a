mod common;

use common::*;
use fincat::cat::{
    builtin, compare_categories, enumerate_transformations, is_cofinal, is_filtered, product_category,
    validate_category, validate_functor, CompareMode, FinFunctor,
};
use fincat::diagram::fun_category_direct;
use fincat::io::{canonical_json, category_digest, parse_json, CategoryFile};
use fincat::pie::{equifier, inserter};
use fincat::{Budget, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn budget() -> Budget {
    Budget::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn category_files_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_small_category(&mut rng);
        prop_assert!(validate_category(&c).ok);
        let text = canonical_json(&CategoryFile::from_category(&c));
        let back: CategoryFile = parse_json(&text, "round trip").unwrap();
        let c2 = back.to_category().unwrap();
        prop_assert_eq!(canonical_json(&CategoryFile::from_category(&c2)), text);
        prop_assert_eq!(category_digest(&c2), category_digest(&c));
    }

    #[test]
    fn products_multiply_and_commute(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = arc(random_small_category(&mut rng));
        let b = arc(random_small_category(&mut rng));
        let ab = product_category(&[a.clone(), b.clone()], &budget()).unwrap();
        let ba = product_category(&[b.clone(), a.clone()], &budget()).unwrap();
        prop_assert_eq!(ab.category.num_objects(), a.num_objects() * b.num_objects());
        prop_assert_eq!(ab.category.num_morphisms(), a.num_morphisms() * b.num_morphisms());
        prop_assert!(validate_category(&ab.category).ok);
        for p in &ab.projections {
            prop_assert!(validate_functor(p).ok);
        }
        prop_assert!(compare_categories(&ab.category, &ba.category, CompareMode::Iso, &budget()).unwrap().holds);
    }

    #[test]
    fn inserter_objects_are_hom_elements(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = arc(random_small_category(&mut rng));
        let ls = value_categories();
        let l = &ls[rng.gen_range(0..ls.len())];
        let (Some(f), Some(g)) = (random_functor(&mut rng, &k, l), random_functor(&mut rng, &k, l)) else {
            return Ok(());
        };
        let ins = inserter(&f, &g, &budget()).unwrap();
        let expected: usize = k.objects().map(|x| l.hom(f.obj(x), g.obj(x)).len()).sum();
        prop_assert_eq!(ins.category.num_objects(), expected);
        prop_assert!(validate_category(&ins.category).ok);
    }

    #[test]
    fn equifier_of_a_pair_with_itself_keeps_everything(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = arc(random_small_category(&mut rng));
        let l = arc(builtin::sets(2));
        let (Some(f), Some(g)) = (random_functor(&mut rng, &k, &l), random_functor(&mut rng, &k, &l)) else {
            return Ok(());
        };
        let ts = enumerate_transformations(&f, &g, false, &budget()).unwrap();
        if let Some(phi) = ts.first() {
            prop_assert_eq!(equifier(phi, phi).unwrap().kept_objects().len(), k.num_objects());
        }
    }

    #[test]
    fn functor_category_counts_functors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = arc(random_small_category(&mut rng));
        // targets with small hom-sets keep the brute-force count cheap
        let k = arc(match rng.gen_range(0..4) {
            0 => builtin::sets(1),
            1 => builtin::arrow(),
            2 => builtin::walking_iso(),
            _ => builtin::parallel_pair(),
        });
        let fun = match fun_category_direct(&c, &k, &budget()) {
            Err(Error::Resource(_)) => return Ok(()),
            r => r.unwrap(),
        };
        prop_assert_eq!(fun.category.num_objects(), count_functors_brute(&c, &k));
        prop_assert!(validate_category(&fun.category).ok);
    }

    #[test]
    fn posets_with_a_top_are_filtered_and_the_top_is_cofinal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_directed_poset(&mut rng, 5);
        prop_assert!(is_filtered(&p).holds);
        prop_assert!(is_cofinal(&FinFunctor::identity(&p)).holds);
        let top = p.objects().find(|&m| p.objects().all(|x| !p.hom(x, m).is_empty())).unwrap();
        let one = arc(builtin::terminal());
        prop_assert!(is_cofinal(&FinFunctor::constant(&one, &p, top)).holds);
        // any other point misses the top
        if let Some(x) = p.objects().find(|&x| x != top) {
            prop_assert!(!is_cofinal(&FinFunctor::constant(&one, &p, x)).holds);
        }
    }
}
