mod common;

use std::sync::Arc;

use common::{all_algebras, random_raw};
use proptest::prelude::*;
use softcsp_core::algebra::weighted;
use softcsp_core::csp::{is_k_hyperarc_consistent, Normalized};
use softcsp_core::io::{
    gen_random_problem, load_algebra, load_problem, parse_raw_problem, save_algebra, save_problem,
    save_raw_problem,
};

#[test]
fn suite_algebras_round_trip() {
    for a in all_algebras() {
        let text = save_algebra(&a);
        let back = load_algebra(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(save_algebra(&back), text);
    }
}

#[test]
fn generated_batch_passes_the_loader() {
    let w = Arc::new(weighted(8).unwrap());
    for seed in 0..200 {
        for arity in [2, 3] {
            let p = gen_random_problem(w.clone(), 4, 3, 7, arity, seed).unwrap();
            assert!(p.constraints().all(|c| c.arity() <= arity));
            let text = save_problem(&p);
            assert_eq!(load_problem(&text, None).unwrap(), Normalized::Problem(p));
        }
    }
}

#[test]
fn unary_only_generation_is_consistent() {
    for a in all_algebras() {
        let p = gen_random_problem(Arc::new(a), 3, 3, 3, 2, 9).unwrap();
        assert!(is_k_hyperarc_consistent(&p, 2).unwrap().is_consistent());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn raw_problems_round_trip(which in 0usize..64, sizes in prop::collection::vec(1usize..4, 1..4), count in 0usize..6, seed: u64) {
        let all = all_algebras();
        let alg = Arc::new(all[which % all.len()].clone());
        let raw = random_raw(&alg, &sizes, count, seed, false);
        let text = save_raw_problem(&raw);
        let back = parse_raw_problem(&text, None).unwrap();
        prop_assert_eq!(&back, &raw);
        prop_assert_eq!(save_raw_problem(&back), text);
    }

    #[test]
    fn generator_is_deterministic(n in 2usize..5, d in 1usize..4, seed: u64) {
        let w = Arc::new(weighted(5).unwrap());
        let a = gen_random_problem(w.clone(), n, d, n + 1, 2, seed).unwrap();
        let b = gen_random_problem(w, n, d, n + 1, 2, seed).unwrap();
        prop_assert_eq!(save_problem(&a), save_problem(&b));
    }
}
