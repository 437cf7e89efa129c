use digraph_subdiv::finders::{
    blocked_path_block_lengths, find_blocked_path, find_c_k_1, find_long_cycle, find_triple_path,
    find_two_block_cycle,
};
use digraph_subdiv::generate::{Family, GenSpec};
use digraph_subdiv::oracle::oracle_has_subdivision;
use digraph_subdiv::{verify_subdivision, Digraph, Error, PatternSpec};

fn exact(n: usize, d: usize, seed: u64) -> Digraph {
    GenSpec::new(Family::ExactOutdegree { n, d }, seed).generate().unwrap()
}

#[test]
fn blocked_paths_on_regular_hosts() {
    for ks in [vec![3, 2, 3, 2], vec![1, 1, 1], vec![0, 2, 2], vec![2, 3], vec![4]] {
        let sum: usize = ks.iter().sum();
        for seed in 0..20 {
            let d = exact(40, sum, seed);
            let cert = find_blocked_path(&d, (seed as usize) % 40, &ks).unwrap();
            assert!(verify_subdivision(&d, &cert).ok);
            let lens = blocked_path_block_lengths(&cert);
            for (i, (&got, &want)) in lens.iter().zip(&ks).enumerate() {
                if i % 2 == 0 {
                    assert!(got >= want, "{ks:?} block {i}: {got} < {want}");
                } else {
                    assert_eq!(got, want, "{ks:?} block {i}");
                }
            }
        }
    }
}

#[test]
fn long_cycles_on_regular_hosts() {
    for seed in 0..20 {
        let d = exact(30, 4, seed);
        let c = find_long_cycle(&d, 5).unwrap();
        assert!(c.len() >= 5);
        assert!(d.is_dipath(&c));
        assert!(d.has_arc(*c.last().unwrap(), c[0]));
    }
}

#[test]
fn c_k_1_at_the_bound() {
    for k in 2..=4 {
        for seed in 0..30 {
            let d = exact(25, k, seed);
            let cert = find_c_k_1(&d, k).unwrap();
            assert!(verify_subdivision(&d, &cert).ok);
        }
    }
}

#[test]
fn two_block_cycles_at_the_bound() {
    for (k1, k2) in [(2, 2), (2, 3), (3, 3), (4, 2), (1, 3), (5, 1)] {
        for seed in 0..15 {
            let d = exact(60, 2 * (k1 + k2) - 1, seed);
            let cert = find_two_block_cycle(&d, k1, k2).unwrap();
            assert!(verify_subdivision(&d, &cert).ok);
        }
    }
}

#[test]
fn triple_paths_at_the_bound() {
    for (k1, k2, k3) in [(2, 2, 2), (3, 2, 2), (2, 2, 1), (2, 1, 3), (3, 3, 3), (2, 3, 1)] {
        let (a, b) = (k1.max(k2), k1.min(k2));
        for seed in 0..15 {
            let d = exact(70, 3 * a + 2 * b + k3 - 5, seed);
            let cert = find_triple_path(&d, k1, k2, k3).unwrap();
            assert!(verify_subdivision(&d, &cert).ok);
        }
    }
}

#[test]
fn failures_name_the_hypothesis() {
    let tt = digraph_subdiv::digraph::families::transitive_tournament(6);
    assert!(matches!(find_two_block_cycle(&tt, 2, 2), Err(Error::HypothesisUnmet(_))));
    assert!(matches!(find_triple_path(&tt, 2, 2, 2), Err(Error::HypothesisUnmet(_))));
    assert!(matches!(find_long_cycle(&tt, 3), Err(Error::HypothesisUnmet(_))));
}

#[test]
fn finders_are_deterministic() {
    let d = exact(50, 9, 3);
    assert_eq!(find_two_block_cycle(&d, 2, 3).unwrap(), find_two_block_cycle(&d, 2, 3).unwrap());
    assert_eq!(find_triple_path(&d, 2, 2, 2).unwrap(), find_triple_path(&d, 2, 2, 2).unwrap());
}

#[test]
fn finder_success_implies_oracle_on_small_hosts() {
    for seed in 0..40 {
        let d = GenSpec::new(Family::Gnp { n: 6, p: 0.5 }, seed).generate().unwrap();
        if let Ok(cert) = find_c_k_1(&d, 2) {
            assert!(oracle_has_subdivision(&d, &cert.pattern).unwrap());
        }
        if let Ok(cert) = find_blocked_path(&d, 0, &[1, 1, 1]) {
            assert!(oracle_has_subdivision(&d, &PatternSpec::blocked_path(&[1, 1, 1]).unwrap()).unwrap());
            assert!(verify_subdivision(&d, &cert).ok);
        }
    }
}
