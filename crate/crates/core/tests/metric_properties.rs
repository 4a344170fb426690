use ltl_dstar_core::automata::{dist, Guard, NbaTransition};
use ltl_dstar_core::logic::{rho, zeta};
use ltl_dstar_core::{ApUniverse, Label, Nba};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn universe(r: usize) -> ApUniverse {
    ApUniverse::new((0..r).map(|i| format!("p{i}"))).unwrap()
}

fn guard_strategy(r: usize) -> impl Strategy<Value = Guard> {
    let leaf = prop_oneof![Just(Guard::True), Just(Guard::False), (0..r).prop_map(Guard::ap)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Guard::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Guard::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Guard::or(a, b)),
        ]
    })
}

/// A logically equivalent guard built from random local rewrites.
fn rewrite(g: &Guard, rng: &mut ChaCha8Rng) -> Guard {
    let g = match g {
        Guard::Not(a) => Guard::not(rewrite(a, rng)),
        Guard::And(a, b) => Guard::and(rewrite(a, rng), rewrite(b, rng)),
        Guard::Or(a, b) => Guard::or(rewrite(a, rng), rewrite(b, rng)),
        leaf => leaf.clone(),
    };
    match (rng.random_range(0..5), g) {
        (0, g) => Guard::not(Guard::not(g)),
        (1, Guard::And(a, b)) => Guard::not(Guard::or(Guard::not(*a), Guard::not(*b))),
        (1, Guard::Or(a, b)) => Guard::not(Guard::and(Guard::not(*a), Guard::not(*b))),
        (2, Guard::And(a, b)) => Guard::And(b, a),
        (2, Guard::Or(a, b)) => Guard::Or(b, a),
        (3, g) => Guard::and(g, Guard::True),
        (4, g) => Guard::or(Guard::False, g),
        (_, g) => g,
    }
}

fn brute_chi(g: &Guard, aps: &ApUniverse) -> Vec<Label> {
    aps.all_labels().filter(|&l| g.eval(l)).collect()
}

fn one_edge_nba(aps: &ApUniverse, guard: Guard) -> Nba {
    Nba::new(aps.clone(), 2, vec![0], vec![1], vec![NbaTransition { from: 0, guard, to: 1 }]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rho_is_a_metric(r in 1usize..=64, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let aps = universe(r);
        let mask = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
        let [x, y, z] = [a, b, c].map(|bits| aps.label_from_bits(bits & mask).unwrap());
        let d = |p, q| rho(p, q).unwrap();
        prop_assert_eq!(d(x, x), 0);
        prop_assert_eq!(d(x, y), d(y, x));
        prop_assert_eq!(d(x, y) == 0, x == y);
        prop_assert!(d(x, z) <= d(x, y) + d(y, z));
        let l1: u32 = zeta(x).iter().zip(zeta(y)).map(|(p, q)| p.abs_diff(q) as u32).sum();
        prop_assert_eq!(d(x, y), l1);
    }

    #[test]
    fn chi_equals_brute_force(r in 1usize..=10, g in guard_strategy(10)) {
        let aps = universe(r);
        let g = restrict(g, r);
        let models: Vec<Label> = g.models(r).iter().collect();
        prop_assert_eq!(&models, &brute_chi(&g, &aps));
        let nba = one_edge_nba(&aps, g.clone());
        prop_assert_eq!(ltl_dstar_core::automata::chi(&nba, 0, 1), brute_chi(&g, &aps));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn dist_ignores_guard_representation(r in 1usize..=6, g in guard_strategy(6), seed in any::<u64>()) {
        let aps = universe(r);
        let g = restrict(g, r);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = rewrite(&g, &mut rng);
        prop_assert_eq!(g.models(r), h.models(r));
        let (n1, n2) = (one_edge_nba(&aps, g), one_edge_nba(&aps, h));
        for l in aps.all_labels() {
            prop_assert_eq!(dist(&n1, 0, 1, l), dist(&n2, 0, 1, l));
        }
    }
}

/// Maps proposition indices into `0..r`.
fn restrict(g: Guard, r: usize) -> Guard {
    match g {
        Guard::Ap(i) => Guard::Ap(i % r),
        Guard::Not(a) => Guard::not(restrict(*a, r)),
        Guard::And(a, b) => Guard::and(restrict(*a, r), restrict(*b, r)),
        Guard::Or(a, b) => Guard::or(restrict(*a, r), restrict(*b, r)),
        leaf => leaf,
    }
}

#[test]
fn rho_exhaustive_small_universes() {
    for r in 1..=10usize {
        let aps = universe(r);
        let labels: Vec<Label> = aps.all_labels().collect();
        for x in &labels {
            for y in &labels {
                let d = rho(*x, *y).unwrap();
                assert_eq!(d, (x.bits() ^ y.bits()).count_ones());
                assert_eq!(d, rho(*y, *x).unwrap());
            }
        }
    }
}
