mod common;

use std::collections::BTreeSet;

use common::*;
use cover_persist::coloring::{chromatic_number, explicit_coloring_hpq, greedy_clique, is_critically_chromatic};
use cover_persist::cover::{cover_ideal_by_covers, cover_ideal_by_edges};
use cover_persist::Graph;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        (Just(n), prop::sample::subsequence(pairs, 0..=len))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn covers_match_brute_force((n, edges) in graph_strategy(10)) {
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        let got: BTreeSet<Vec<usize>> = g.minimal_vertex_covers().into_iter().map(|c| c.vertices).collect();
        prop_assert_eq!(got, brute_minimal_covers(n, &edges));
    }

    #[test]
    fn covers_are_complements_of_maximal_independent_sets((n, edges) in graph_strategy(10)) {
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        let mis = g.maximal_independent_sets();
        let covers = g.minimal_vertex_covers();
        prop_assert_eq!(mis.len(), covers.len());
        let from_mis: BTreeSet<Vec<usize>> =
            mis.iter().map(|s| (0..n).filter(|v| !s.contains(*v)).collect()).collect();
        let direct: BTreeSet<Vec<usize>> = covers.into_iter().map(|c| c.vertices).collect();
        prop_assert_eq!(from_mis, direct);
    }

    #[test]
    fn cover_ideal_constructions_agree((n, edges) in graph_strategy(10)) {
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        let a = cover_ideal_by_edges(&g);
        prop_assert_eq!(&a, &cover_ideal_by_covers(&g));
        if !edges.is_empty() {
            let expected: BTreeSet<Exps> =
                brute_minimal_covers(n, &edges).iter().map(|c| support_vec(n, c)).collect();
            prop_assert!(same_ideal(&a, &expected));
        }
    }

    #[test]
    fn expansion_adds_one_vertex_per_chosen_vertex((n, edges) in graph_strategy(8), pick in prop::collection::vec(0usize..8, 0..4)) {
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        let w: Vec<usize> = pick.into_iter().filter(|&v| v < n).collect();
        let distinct: BTreeSet<usize> = w.iter().copied().collect();
        let e = g.expand_at(&w).unwrap();
        prop_assert_eq!(e.n(), n + distinct.len());
        let added: usize = distinct.iter().map(|&v| g.degree(v) + 1).sum::<usize>()
            + distinct.iter().flat_map(|&u| distinct.iter().map(move |&v| (u, v))).filter(|&(u, v)| u < v && g.has_edge(u, v)).count();
        prop_assert_eq!(e.edge_count(), g.edge_count() + added);
    }

    #[test]
    fn chromatic_number_matches_backtracking((n, edges) in graph_strategy(9)) {
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        let r = chromatic_number(&g);
        prop_assert!(r.coloring.is_proper(&g));
        prop_assert_eq!(r.coloring.used_colors(), r.chromatic_number);
        prop_assert!(colorable(n, &edges, r.chromatic_number));
        prop_assert!(r.chromatic_number == 1 || !colorable(n, &edges, r.chromatic_number - 1));
        prop_assert!(greedy_clique(&g).len() <= r.chromatic_number);
    }

    #[test]
    fn criticality_matches_vertex_deletion((n, edges) in graph_strategy(8)) {
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        let chi = (1..=n).find(|&k| colorable(n, &edges, k)).unwrap();
        let critical = (0..n).all(|v| {
            let (m, e) = delete_vertex(n, &edges, v);
            colorable(m, &e, chi - 1)
        });
        prop_assert_eq!(is_critically_chromatic(&g, chi).unwrap().critical, critical);
    }
}

#[test]
fn hpq_matches_definition() {
    for p in 3..=5 {
        for q in 4..=7 {
            let g = Graph::build_hpq(p, q).unwrap();
            let mine: BTreeSet<(usize, usize)> =
                hpq_edges(p, q).into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
            assert_eq!(g.edges().into_iter().collect::<BTreeSet<_>>(), mine, "p = {p}, q = {q}");
        }
    }
}

#[test]
fn odd_cycles_are_critical() {
    for n in [3, 5, 7, 9] {
        let r = is_critically_chromatic(&Graph::cycle(n).unwrap(), 3).unwrap();
        assert!(r.critical && r.surviving.is_empty());
    }
    let r = is_critically_chromatic(&Graph::cycle(6).unwrap(), 2).unwrap();
    assert!(!r.critical);
    assert_eq!(r.surviving.len(), 6);
}

#[test]
fn explicit_colorings_match_backtracking() {
    for p in 4..=6 {
        for q in 4..=7 {
            let c = explicit_coloring_hpq(p, q).unwrap();
            let edges = hpq_edges(p, q);
            assert!(edges.iter().all(|&(u, v)| c.colors[u] != c.colors[v]));
            assert_eq!(c.colors.iter().collect::<BTreeSet<_>>().len(), p);
            assert!(!colorable(p * q, &edges, p - 1));
        }
    }
}
