use rainbow_core::constructions::turan_number;
use rainbow_core::graph::choose2;
use rainbow_core::rainbow::{count_rainbow_triangles, guaranteed_triangles_colordeg, has_rainbow_clique};
use rainbow_core::verify::{
    enumerate_colorings, find_tightness_witness, recolor_witness_colordeg, revalidate, verify_theorem, ColorConstraint,
    Grid, TheoremId, VerificationReport, DEFAULT_BUDGET,
};
use rainbow_core::Error;

fn grid(id: TheoremId, n: &[usize]) -> Grid {
    let mut g = Grid::default_for(id);
    g.n = n.to_vec();
    g
}

#[test]
fn theorem_one_sweeps_every_coloring_of_k5() {
    let r = verify_theorem(TheoremId::T1, &grid(TheoremId::T1, &[5])).unwrap();
    assert_eq!(r.instances, 115_975);
    assert_eq!(r.counterexample_count, 0);
    assert!(r.tightness_witnesses > 0);
}

#[test]
fn theorem_two_k2_at_n5() {
    let mut g = grid(TheoremId::T2, &[5]);
    g.k = vec![2];
    let r = verify_theorem(TheoremId::T2, &g).unwrap();
    assert!(r.passed());
    assert!(r.premises_met > 0);
}

#[test]
fn lemma_two_on_random_digraphs() {
    let r = verify_theorem(TheoremId::L2, &Grid::default_for(TheoremId::L2)).unwrap();
    assert_eq!(r.instances, 10_000);
    assert!(r.passed());
}

#[test]
fn reports_survive_json_and_revalidate() {
    let mut g = Grid::default_for(TheoremId::T6);
    g.pairs = vec![(8, 6)];
    g.samples = 100;
    let r = verify_theorem(TheoremId::T6, &g).unwrap();
    let back: VerificationReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
    assert!(revalidate(&r).unwrap());
    assert_eq!(r.grid.seed, 0);
}

#[test]
fn exhaustive_sweeps_respect_the_budget() {
    assert!(matches!(enumerate_colorings(7, ColorConstraint::Any, DEFAULT_BUDGET), Err(Error::BudgetExceeded { .. })));
    let mut g = grid(TheoremId::T2, &[6]);
    g.exhaustive_max_n = 6;
    assert!(matches!(verify_theorem(TheoremId::T2, &g), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn theorem_three_records_small_n_without_judging() {
    let mut g = grid(TheoremId::T3, &[5]);
    g.k = vec![2];
    let r = verify_theorem(TheoremId::T3, &g).unwrap();
    assert!(r.passed());
    assert_eq!(r.premises_met, 0);
}

#[test]
fn tightness_witnesses_sit_exactly_one_below() {
    let g = find_tightness_witness(TheoremId::T2, 9, 3).unwrap();
    assert_eq!((g.m() + g.c()) as u64, choose2(10) + 2);
    assert_eq!(count_rainbow_triangles(&g), 3);

    let g = find_tightness_witness(TheoremId::T5, 11, 7).unwrap();
    assert_eq!((g.m() + g.c()) as u64, choose2(11) + turan_number(11, 5).unwrap() + 1);
    assert!(!has_rainbow_clique(&g, 7));

    let g = find_tightness_witness(TheoremId::T1, 5, 0).unwrap();
    assert_eq!((g.m() + g.c()) as u64, choose2(6) - 1);
    assert_eq!(count_rainbow_triangles(&g), 0);

    assert!(find_tightness_witness(TheoremId::T6, 8, 6).is_err());
}

#[test]
fn recolored_g1_beats_the_color_degree_sum_with_one_triangle() {
    for n in 7..=12 {
        let g = recolor_witness_colordeg(n).unwrap();
        let sdc = g.degree_profile().sum_color_degree() as u64;
        assert!(sdc >= choose2(n as u64 + 1));
        assert_eq!(count_rainbow_triangles(&g), 1);
        assert!(guaranteed_triangles_colordeg(n as u64, sdc) >= 1);
    }
    assert_eq!(recolor_witness_colordeg(7).unwrap().degree_profile().sum_color_degree(), 28);
    assert!(recolor_witness_colordeg(6).is_err());
}
