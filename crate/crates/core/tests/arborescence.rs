use std::collections::BTreeMap;

use digraph_subdiv::arborescence::{
    b_size, f_bound, find_branching, find_branching_traced, find_branching_with_packing, maximal_packing, path_system,
    t_bound, Arborescence, BranchingRoute, Packing,
};
use digraph_subdiv::flow::disjoint_paths;
use digraph_subdiv::generate::{Family, GenSpec};
use digraph_subdiv::oracle::{brute_min_vertex_cut, oracle_has_subdivision};
use digraph_subdiv::{verify_subdivision, Digraph, Error, PatternSpec};
use num_bigint::BigUint;
use proptest::prelude::*;

// Independent evaluation of the bounds with plain u128 arithmetic.
fn naive_f(k: u32, l: u128) -> u128 {
    if k == 1 {
        return l;
    }
    let b: u128 = (0..k).map(|i| l.pow(i)).sum();
    let t = naive_f(k - 1, b * (l - 1) + 1) * b;
    t * (l - 1) * k as u128 + t
}

#[test]
fn bounds_match_direct_evaluation() {
    for k in 1..=3u32 {
        for l in 2..=5u128 {
            let f = f_bound(k as usize, &BigUint::from(l)).unwrap();
            assert_eq!(f, BigUint::from(naive_f(k, l)), "f({k},{l})");
            if k >= 2 {
                let b = b_size(k as usize - 1, &BigUint::from(l));
                let t = t_bound(k as usize, &BigUint::from(l)).unwrap();
                assert_eq!(f, &t * (l - 1) * k + &t);
                assert_eq!(t % &b, BigUint::from(0u8));
            }
        }
    }
    // k = 4 overflows u128 only for larger l; spot-check growth instead.
    for l in 2..=5u64 {
        let f3 = f_bound(3, &BigUint::from(l)).unwrap();
        let f4 = f_bound(4, &BigUint::from(l)).unwrap();
        assert!(f4 > f3);
    }
}

fn exact(n: usize, d: usize, seed: u64) -> Digraph {
    GenSpec::new(Family::ExactOutdegree { n, d }, seed).generate().unwrap()
}

#[test]
fn b22_on_regular_hosts_at_the_bound() {
    for seed in 0..20 {
        let d = exact(150, 36, seed);
        let cert = find_branching(&d, 2, 2).unwrap();
        assert!(verify_subdivision(&d, &cert).ok);
    }
}

#[test]
fn greedy_packings_are_locally_maximal() {
    for seed in 0..10 {
        let d = exact(60, 4, seed);
        for l in 2..=3 {
            let p = maximal_packing(&d, l, 5).unwrap();
            assert!(p.is_valid_in(&d));
            if p.complete.is_none() {
                assert!(p.is_locally_maximal(&d));
            }
        }
    }
}

/// 50 three-vertex stars; every vertex points at all vertices of the next
/// 12 stars (leaves also at their own root). Nothing is uncovered.
fn star_host() -> (Digraph, Packing) {
    let g = 50;
    let mut arcs = Vec::new();
    for s in 0..g {
        for v in 3 * s..3 * s + 3 {
            let mut outs: Vec<usize> = (1..=12).flat_map(|j| (0..3).map(move |i| 3 * ((s + j) % g) + i)).collect();
            if v != 3 * s {
                outs.pop();
                outs.push(3 * s);
            }
            arcs.extend(outs.into_iter().map(|w| (v, w)));
        }
    }
    let d = Digraph::new(3 * g, arcs).unwrap();
    let members = (0..g).map(|s| star(3 * s)).collect();
    (d, Packing { branching: 2, members, uncovered: vec![], complete: None })
}

fn star(root: usize) -> Arborescence {
    Arborescence {
        root,
        depth: 1,
        vertices: vec![root, root + 1, root + 2],
        parent: BTreeMap::from([(root + 1, root), (root + 2, root)]),
    }
}

#[test]
fn root_digraph_route() {
    let (d, packing) = star_host();
    assert_eq!(d.min_out_degree(), 36);
    assert!(packing.is_valid_in(&d) && packing.is_locally_maximal(&d));
    let (cert, route) = find_branching_with_packing(&d, 2, 2, &packing).unwrap();
    assert_eq!(route, BranchingRoute::RootDigraph);
    assert!(verify_subdivision(&d, &cert).ok);
}

/// 40 stars on 0..120 and 30 uncovered vertices 120..150. The root of star
/// 0 points at every uncovered vertex and at only two other stars, so it
/// is poor in the root digraph and has to be helped by redistribution.
fn sparse_root_host() -> (Digraph, Packing) {
    let g = 40;
    let next = |s: usize, count: usize| -> Vec<usize> {
        (1..=count).flat_map(|j| (0..3).map(move |i| 3 * ((s + j) % g) + i)).collect()
    };
    let mut arcs = Vec::new();
    for s in 0..g {
        for v in 3 * s..3 * s + 3 {
            let outs = if v == 0 {
                let mut o: Vec<usize> = (120..150).collect();
                o.extend(next(0, 2));
                o
            } else if v == 3 * s {
                next(s, 12)
            } else {
                let mut o = next(s, 12);
                o.pop();
                o.push(3 * s);
                o
            };
            arcs.extend(outs.into_iter().map(|w| (v, w)));
        }
    }
    for u in 120..150 {
        arcs.extend(next(u - 120, 12).into_iter().map(|w| (u, w)));
    }
    let d = Digraph::new(150, arcs).unwrap();
    let members = (0..g).map(|s| star(3 * s)).collect();
    (d, Packing { branching: 2, members, uncovered: (120..150).collect(), complete: None })
}

#[test]
fn augmented_route() {
    let (d, packing) = sparse_root_host();
    assert_eq!(d.min_out_degree(), 36);
    assert!(packing.is_valid_in(&d) && packing.is_locally_maximal(&d));
    let (cert, route) = find_branching_with_packing(&d, 2, 2, &packing).unwrap();
    assert_eq!(route, BranchingRoute::Augmented);
    assert!(verify_subdivision(&d, &cert).ok);
}

#[test]
fn packings_are_checked() {
    let (d, mut packing) = star_host();
    packing.members.pop();
    assert!(matches!(find_branching_with_packing(&d, 2, 2, &packing), Err(Error::InvalidArgument(_))));
}

#[test]
fn below_the_bound() {
    let c = digraph_subdiv::digraph::families::directed_cycle(8);
    assert!(matches!(find_branching(&c, 2, 2), Err(Error::HypothesisUnmet(_))));
    assert!(matches!(find_branching(&c, 1, 2), Err(Error::HypothesisUnmet(_))));
    let tt = digraph_subdiv::digraph::families::transitive_tournament(8);
    assert!(matches!(find_branching(&tt, 1, 8), Err(Error::HypothesisUnmet(_))));
}

#[test]
fn success_implies_oracle_on_small_hosts() {
    let mut hits = 0;
    for seed in 0..60 {
        let d = GenSpec::new(Family::Gnp { n: 8, p: 0.45 }, seed).generate().unwrap();
        for (k, l) in [(1, 2), (2, 2), (3, 1)] {
            if let Ok((cert, _)) = find_branching_traced(&d, k, l) {
                hits += 1;
                assert!(verify_subdivision(&d, &cert).ok);
                assert!(oracle_has_subdivision(&d, &PatternSpec::branching(k, l).unwrap()).unwrap());
            }
        }
    }
    assert!(hits > 0);
}

fn ends_ok(d: &Digraph, paths: &[Vec<usize>], sources: &[usize], targets: &[usize]) -> bool {
    let mut seen = vec![false; d.vertex_count()];
    paths.iter().all(|p| {
        d.is_dipath(p) && sources.contains(&p[0]) && targets.contains(p.last().unwrap())
            && p.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    })
}

fn small_digraph() -> impl Strategy<Value = Digraph> {
    (3usize..9).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..n * 3)
            .prop_map(move |arcs| Digraph::from_arcs_lossy(n, arcs.into_iter().filter(|(a, b)| a != b)))
    })
}

proptest! {
    #[test]
    fn menger_matches_brute_force(d in small_digraph(), s in 0usize..3, t in 0usize..3) {
        let n = d.vertex_count();
        let sources: Vec<usize> = (0..=s).filter(|&v| v < n).collect();
        let targets: Vec<usize> = (n - 1 - t.min(n - 1)..n).collect();
        let pair = disjoint_paths(&d, &sources, &targets);
        prop_assert!(ends_ok(&d, &pair.system.paths, &sources, &targets));
        prop_assert_eq!(pair.system.len(), pair.cut.len());
        prop_assert_eq!(pair.system.len(), brute_min_vertex_cut(&d, &sources, &targets).unwrap());
    }

    #[test]
    fn path_system_when_applicable(d in small_digraph(), extra in 0usize..3) {
        let n = d.vertex_count();
        let sources: Vec<usize> = d.vertices().filter(|&v| d.in_degree(v) == 0).take(1 + extra).collect();
        let targets: Vec<usize> = d.vertices().filter(|v| !sources.contains(v) && d.out_degree(*v) < d.degrees().max_in_degree).collect();
        if let Ok(sys) = path_system(&d, &sources, &targets) {
            prop_assert_eq!(sys.len(), sources.len());
            prop_assert!(ends_ok(&d, &sys.paths, &sources, &targets));
        }
        prop_assert!(n >= 3);
    }

    #[test]
    fn packings_stay_valid(d in small_digraph(), l in 2usize..4) {
        let p = maximal_packing(&d, l, 3).unwrap();
        prop_assert!(p.is_valid_in(&d));
        prop_assert!(p.complete.is_some() || p.is_locally_maximal(&d));
    }
}
