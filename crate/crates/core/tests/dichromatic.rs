use digraph_subdiv::dichromatic::{
    best_level, critical_subdigraph, dic_requirement, dichromatic_number, find_subdivision_auto, find_subdivision_dic,
    find_subdivision_reducible, greedy_embed_forest, two_source_step, verify_dicolouring,
};
use digraph_subdiv::digraph::families::{complete_digraph, directed_cycle};
use digraph_subdiv::generate::{Family, GenSpec};
use digraph_subdiv::oracle::oracle_has_subdivision;
use digraph_subdiv::structure::{bfs_tree, is_strong, strong_components, Direction};
use digraph_subdiv::{verify_subdivision, Digraph, Error, PatternSpec};
use proptest::prelude::*;

/// Kahn's algorithm on the subdigraph induced by `colour == c`.
fn class_acyclic(d: &Digraph, colour: &[usize], c: usize) -> bool {
    let members: Vec<usize> = d.vertices().filter(|&v| colour[v] == c).collect();
    let mut indeg: Vec<usize> = d
        .vertices()
        .map(|v| d.in_neighbours(v).iter().filter(|&&w| colour[w] == c && colour[v] == c).count())
        .collect();
    let mut stack: Vec<usize> = members.iter().copied().filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = stack.pop() {
        removed += 1;
        for &w in d.out_neighbours(v) {
            if colour[w] == c {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
    }
    removed == members.len()
}

/// Smallest k with a k-dicolouring, by enumerating all colour vectors.
fn brute_chi(d: &Digraph) -> usize {
    let n = d.vertex_count();
    for k in 1..=n {
        let mut colour = vec![0usize; n];
        loop {
            if (0..k).all(|c| class_acyclic(d, &colour, c)) {
                return k;
            }
            let mut i = 0;
            while i < n && colour[i] == k - 1 {
                colour[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            colour[i] += 1;
        }
    }
    n
}

fn gnp(n: usize, p: f64, seed: u64) -> Digraph {
    GenSpec::new(Family::Gnp { n, p }, seed).generate().unwrap()
}

#[test]
fn exact_solver_matches_enumeration() {
    for seed in 0..40 {
        let d = gnp(7, 0.45, seed);
        let col = dichromatic_number(&d).unwrap();
        assert!(verify_dicolouring(&d, &col.classes).unwrap());
        assert_eq!(col.k(), brute_chi(&d), "seed {seed}");
    }
}

#[test]
fn dichromatic_number_is_max_over_strong_components() {
    for seed in 0..40 {
        let d = gnp(11, 0.2, seed);
        let comps = strong_components(&d).members();
        let max = comps.iter().map(|c| dichromatic_number(&d.induced(c).0).unwrap().k()).max().unwrap();
        assert_eq!(dichromatic_number(&d).unwrap().k(), max);
    }
}

#[test]
fn best_level_halves_at_worst() {
    let mut tested = 0;
    for seed in 0..120 {
        let d = gnp(10, 0.35, seed);
        if !is_strong(&d) {
            continue;
        }
        tested += 1;
        let chi = dichromatic_number(&d).unwrap().k();
        for dir in [Direction::Out, Direction::In] {
            let level = best_level(&d, &bfs_tree(&d, 0, dir)).unwrap();
            assert!(2 * level.dic >= chi, "seed {seed}: {} < {chi}/2", level.dic);
            assert_eq!(level.dic, brute_chi(&d.induced(&level.vertices).0));
        }
    }
    assert!(tested > 20);
}

#[test]
fn critical_subdigraphs_are_critical() {
    let mut tested = 0;
    for seed in 0..80 {
        let d = gnp(9, 0.5, seed);
        if dichromatic_number(&d).unwrap().k() < 3 {
            continue;
        }
        tested += 1;
        let crit = critical_subdigraph(&d, 3).unwrap();
        let h = &crit.digraph;
        assert_eq!(brute_chi(h), 3);
        assert!(h.degrees().delta_zero >= 2);
        for v in h.vertices() {
            let rest: Vec<usize> = h.vertices().filter(|&w| w != v).collect();
            assert!(brute_chi(&h.induced(&rest).0) < 3);
        }
        for (a, b) in h.arcs() {
            assert!(brute_chi(&h.without_arc(a, b)) < 3);
        }
        for (a, b) in h.arcs() {
            assert!(d.has_arc(crit.vertices[a], crit.vertices[b]));
        }
    }
    assert!(tested > 5);
}

#[test]
fn forests_embed_greedily() {
    let k5 = complete_digraph(5);
    for seed in 0..20 {
        // random oriented tree on 5 vertices
        let t = GenSpec::new(Family::RandomTournament { n: 5 }, seed).generate().unwrap();
        let arcs: Vec<(usize, usize)> = (1..5).map(|v| {
            let p = (seed as usize + v) % v;
            if t.has_arc(p, v) { (p, v) } else { (v, p) }
        }).collect();
        let f = PatternSpec::custom(Digraph::new(5, arcs).unwrap());
        let cert = greedy_embed_forest(&k5, &f).unwrap();
        assert!(verify_subdivision(&k5, &cert).ok);
        assert!(cert.arc_paths.iter().all(|a| a.path.len() == 2));
        assert!(oracle_has_subdivision(&k5, &f).unwrap());
    }
    let star = PatternSpec::custom(Digraph::new(3, [(0, 1), (0, 2)]).unwrap());
    let k3 = complete_digraph(3);
    assert!(verify_subdivision(&k3, &greedy_embed_forest(&k3, &star).unwrap()).ok);
    assert!(matches!(greedy_embed_forest(&directed_cycle(5), &star), Err(Error::HypothesisUnmet(_))));
}

#[test]
fn peeling_on_complete_digraphs() {
    let cases = [
        (PatternSpec::complete_digraph(2).unwrap(), 5),
        (PatternSpec::custom(directed_cycle(3)), 9),
        (PatternSpec::transitive_tournament(3).unwrap(), 9),
        (PatternSpec::two_block_cycle(2, 1).unwrap(), 9),
    ];
    for (f, n) in cases {
        assert!(dic_requirement(&f) <= n as u64);
        let d = complete_digraph(n);
        let cert = find_subdivision_dic(&d, &f).unwrap();
        assert!(verify_subdivision(&d, &cert).ok, "{f}");
    }
}

#[test]
fn reducible_patterns() {
    // u <- x -> v, and an oriented 4-cycle with a 2-source and a 2-sink
    let cherry = PatternSpec::custom(Digraph::new(3, [(1, 0), (1, 2)]).unwrap());
    let c4 = PatternSpec::custom(Digraph::new(4, [(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap());
    let k7 = complete_digraph(7);
    for f in [&cherry, &c4] {
        let cert = find_subdivision_reducible(&k7, f).unwrap();
        assert!(verify_subdivision(&k7, &cert).ok);
        assert!(verify_subdivision(&k7, &find_subdivision_auto(&k7, f).unwrap()).ok);
    }
    let mut hits = 0;
    for seed in 0..60 {
        let d = gnp(8, 0.5, seed);
        if dichromatic_number(&d).unwrap().k() < 3 {
            continue;
        }
        hits += 1;
        let cert = two_source_step(&d, &cherry, 1).unwrap();
        assert!(verify_subdivision(&d, &cert).ok);
        assert!(oracle_has_subdivision(&d, &cherry).unwrap());
    }
    assert!(hits > 0);
}

#[test]
fn below_requirement_is_reported() {
    let f = PatternSpec::custom(directed_cycle(3));
    let d = directed_cycle(2);
    assert!(matches!(find_subdivision_dic(&d, &f), Err(Error::HypothesisUnmet(_))));
    assert!(matches!(find_subdivision_dic(&complete_digraph(22), &f), Err(Error::SizeGuard { .. }) | Ok(_)));
}

#[test]
fn success_implies_oracle() {
    let patterns = [PatternSpec::complete_digraph(2).unwrap(), PatternSpec::custom(directed_cycle(3))];
    for seed in 0..30 {
        let d = gnp(7, 0.55, seed);
        for f in &patterns {
            if let Ok(cert) = find_subdivision_dic(&d, f) {
                assert!(verify_subdivision(&d, &cert).ok);
                assert!(oracle_has_subdivision(&d, f).unwrap());
            }
        }
    }
}

fn small_digraph() -> impl Strategy<Value = Digraph> {
    (1usize..9).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..n * 3)
            .prop_map(move |arcs| Digraph::from_arcs_lossy(n, arcs.into_iter().filter(|(a, b)| a != b)))
    })
}

proptest! {
    #[test]
    fn witnesses_verify(d in small_digraph()) {
        let col = dichromatic_number(&d).unwrap();
        prop_assert!(verify_dicolouring(&d, &col.classes).unwrap());
        prop_assert!(col.k() <= d.vertex_count());
    }

    #[test]
    fn digon_needs_requirement_five(n in 2usize..5) {
        // below the requirement the construction may still succeed, but a
        // success must always verify
        let d = complete_digraph(n);
        let f = PatternSpec::complete_digraph(2).unwrap();
        if let Ok(cert) = find_subdivision_dic(&d, &f) {
            prop_assert!(verify_subdivision(&d, &cert).ok);
        }
    }
}
