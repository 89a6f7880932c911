mod common;

use std::collections::BTreeSet;

use common::*;
use cover_persist::assoc::{prime_in_ass, witness_search, DEFAULT_WITNESS_BUDGET};
use cover_persist::cover::localize;
use cover_persist::{Monomial, MonomialIdeal, PrimeSupport};
use proptest::prelude::*;

fn gens_strategy(n: usize, max_gens: usize) -> impl Strategy<Value = Vec<Exps>> {
    prop::collection::vec(prop::collection::vec(0u32..=3, n), 1..=max_gens)
        .prop_filter("nonconstant generators", |gs| gs.iter().all(|g| g.iter().any(|&e| e > 0)))
}

fn two_ideals(max_vars: usize) -> impl Strategy<Value = (usize, Vec<Exps>, Vec<Exps>)> {
    (1..=max_vars).prop_flat_map(|n| (Just(n), gens_strategy(n, 4), gens_strategy(n, 3)))
}

fn ideal_and_support() -> impl Strategy<Value = (usize, Vec<Exps>, Vec<usize>)> {
    (1..=4usize).prop_flat_map(|n| {
        (Just(n), gens_strategy(n, 4), prop::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generators_are_the_minimal_elements((n, a, _b) in two_ideals(5)) {
        prop_assert!(same_ideal(&ideal(n, &a), &naive_minimal(&a)));
    }

    #[test]
    fn colon_matches_definition((n, a, b) in two_ideals(4)) {
        let (i, k) = (ideal(n, &a), ideal(n, &b));
        prop_assert!(same_ideal(&i.colon_ideal(&k).unwrap(), &colon_oracle(n, &a, &b)));
        let m = Monomial::new(b[0].clone()).unwrap();
        prop_assert!(same_ideal(&i.colon_monomial(&m).unwrap(), &colon_oracle(n, &a, &b[..1])));
    }

    #[test]
    fn colon_membership_duality((n, a, b) in two_ideals(4)) {
        // m ∈ I : g  iff  m·g ∈ I
        let i = ideal(n, &a);
        let g = Monomial::new(b[0].clone()).unwrap();
        let c = i.colon_monomial(&g).unwrap();
        for m in box_points(n, 3) {
            let mm = Monomial::new(m.clone()).unwrap();
            prop_assert_eq!(c.contains(&mm).unwrap(), member(&a, &mul(&m, &b[0])));
        }
    }

    #[test]
    fn ideal_is_inside_its_colon((n, a, b) in two_ideals(5)) {
        let (i, k) = (ideal(n, &a), ideal(n, &b));
        prop_assert!(i.is_subset_of(&i.colon_ideal(&k).unwrap()).unwrap());
    }

    #[test]
    fn intersect_matches_membership((n, a, b) in two_ideals(5)) {
        let (i, k) = (ideal(n, &a), ideal(n, &b));
        let both = i.intersect(&k).unwrap();
        prop_assert!(same_ideal(&both, &intersect_oracle(n, &a, &b)));
        prop_assert_eq!(both, k.intersect(&i).unwrap());
    }

    #[test]
    fn product_is_commutative_and_associative((n, a, b) in two_ideals(5), c in gens_strategy(5, 3)) {
        let (i, k) = (ideal(n, &a), ideal(n, &b));
        let l = ideal(n, &c.iter().map(|g| g[..n].to_vec()).collect::<Vec<_>>());
        prop_assert_eq!(i.product(&k).unwrap(), k.product(&i).unwrap());
        prop_assert_eq!(
            i.product(&k).unwrap().product(&l).unwrap(),
            i.product(&k.product(&l).unwrap()).unwrap()
        );
    }

    #[test]
    fn powers_add((n, a, _b) in two_ideals(4), s in 1u32..=3, t in 1u32..=2) {
        let i = ideal(n, &a);
        prop_assert_eq!(i.power(s).product(&i.power(t)).unwrap(), i.power(s + t));
        prop_assert!(same_ideal(&i.power(s), &power_oracle(&a, s)));
        prop_assert!(i.power(0).is_unit());
    }

    #[test]
    fn localization_commutes_with_powers((n, a, w) in ideal_and_support(), s in 1u32..=3) {
        let i = ideal(n, &a);
        let w = PrimeSupport::new(n, w).unwrap();
        let lhs = localize(&i.power(s), &w).unwrap();
        let rhs = localize(&i, &w).unwrap().power(s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn three_way_ass_agreement((n, a, w) in ideal_and_support()) {
        let i = ideal(n, &a);
        let prime = PrimeSupport::new(n, w.clone()).unwrap();
        let colon = prime_in_ass(&i, &prime).unwrap();
        let search = witness_search(&i, &prime, DEFAULT_WITNESS_BUDGET).unwrap();
        let oracle = ass_oracle(n, &a).contains(&w);
        prop_assert_eq!(colon.member, oracle);
        prop_assert_eq!(search.member, oracle);
        // both methods report the lex-least witness
        prop_assert_eq!(colon.witness, search.witness);
    }
}

#[test]
fn ass_oracle_on_known_ideals() {
    // (x0^2, x0 x1) = (x0) ∩ (x0^2, x1)
    let a = vec![vec![2, 0], vec![1, 1]];
    let expected: BTreeSet<Vec<usize>> = [vec![0], vec![0, 1]].into_iter().collect();
    assert_eq!(ass_oracle(2, &a), expected);
    let i = MonomialIdeal::parse("(x0^2, x0*x1)", Some(2)).unwrap();
    assert!(prime_in_ass(&i, &PrimeSupport::maximal(2)).unwrap().member);
}
