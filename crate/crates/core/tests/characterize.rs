use rand::rngs::StdRng;
use rand::SeedableRng;

use rainbow_core::characterize::{find_rainbow_spanning_turan, is_in_gk, is_in_hk, HkCase};
use rainbow_core::constructions::{build_case2_figure, build_gk, build_hnk, turan_graph};
use rainbow_core::iso::colored_isomorphic;
use rainbow_core::rainbow::count_rainbow_triangles;
use rainbow_core::verify::sampling::{mutate, scramble};
use rainbow_core::Error;

#[test]
fn scrambled_gk_is_recognized() {
    let mut rng = StdRng::seed_from_u64(4);
    for k in 0..=3 {
        for n in (3 * k).max(1)..=11 {
            let g = build_gk(n, k).unwrap().graph;
            for _ in 0..3 {
                let h = scramble(&g, &mut rng);
                let cert = is_in_gk(&h, k).unwrap_or_else(|| panic!("G_{k} on {n} rejected"));
                cert.validate(&h).unwrap();
                assert_eq!(cert.k, k);
            }
        }
    }
}

#[test]
fn gk_edits_are_rejected_unless_statistics_survive() {
    let mut rng = StdRng::seed_from_u64(9);
    let g = build_gk(9, 2).unwrap().graph;
    for _ in 0..400 {
        let h = mutate(&scramble(&g, &mut rng), &mut rng);
        let shaped = h.is_complete() && h.c() == 10 && count_rainbow_triangles(&h) == 2;
        if is_in_gk(&h, 2).is_some() {
            assert!(shaped);
        }
    }
}

#[test]
fn case_one_agrees_with_isomorphism_to_hnk() {
    let mut rng = StdRng::seed_from_u64(6);
    for k in 4..=8 {
        for n in k..=11 {
            let base = build_hnk(n, k).unwrap().graph;
            let h = scramble(&base, &mut rng);
            let cert = is_in_hk(&h, k).unwrap().expect("scrambled H accepted");
            assert_eq!(cert.case, HkCase::I);
            cert.validate(&h).unwrap();
            for _ in 0..20 {
                let e = mutate(&h, &mut rng);
                let accepted_as_one = matches!(is_in_hk(&e, k).unwrap(), Some(c) if c.case == HkCase::I);
                assert_eq!(accepted_as_one, colored_isomorphic(&e, &base), "n = {n}, k = {k}");
            }
        }
    }
}

#[test]
fn case_two_figure_is_accepted() {
    let fig = build_case2_figure(8, 7).unwrap();
    let cert = is_in_hk(&fig.graph, 7).unwrap().unwrap();
    assert_eq!(cert.case, HkCase::II);
    cert.validate(&fig.graph).unwrap();
    assert!(!colored_isomorphic(&fig.graph, &build_hnk(8, 7).unwrap().graph));
}

#[test]
fn rainbow_turan_is_found_in_scrambled_copies() {
    let mut rng = StdRng::seed_from_u64(12);
    for (n, q) in [(6, 3), (8, 4), (9, 5), (10, 4)] {
        let g = turan_graph(n, q, true).unwrap().graph;
        let mut complete = g.clone();
        let fresh = complete.fresh_color();
        for u in 0..n {
            for v in u + 1..n {
                if !complete.has_edge(u, v) {
                    complete = complete.add_edge(u, v, fresh).unwrap();
                }
            }
        }
        let h = scramble(&complete, &mut rng);
        let found = find_rainbow_spanning_turan(&h, q).unwrap().expect("planted");
        assert!(found.partition.matches(&found.parts));
        assert!(matches!(find_rainbow_spanning_turan(&g, q), Err(Error::NotComplete)));
    }
}
