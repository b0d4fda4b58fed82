use trirelax::experiment::{with_threads, ScenarioConfig};
use trirelax::{
    assemble_relaxation, directional_width, gen_directions, run_scenario, BoundsSet, Direction, GroupingChoice,
    Hypergraph, Relaxation, Scenario,
};

#[test]
fn scenario_results_do_not_depend_on_thread_count() {
    let config =
        ScenarioConfig { scenario: Scenario::Sparse, bound_sets: 2, directions: 40, seed: 9, retain_widths: true };
    let one = with_threads(1, || run_scenario(config)).unwrap().unwrap();
    let three = with_threads(3, || run_scenario(config)).unwrap().unwrap();
    assert_eq!(one, three);
}

#[test]
fn single_trinomial_range_of_f() {
    // every relaxation contains the graph, and f is bounded by the product range
    let h = Hypergraph::new(3, vec![[0, 1, 2]]).unwrap();
    let bounds = BoundsSet::new(vec![[1, 4], [0, 3], [2, 5]]).unwrap();
    let e = Direction::new(vec![1.0]).unwrap();
    for rel in Relaxation::ALL {
        let r = assemble_relaxation(&h, &bounds, rel).unwrap();
        let w = directional_width(&r.lp, &r.objective(&e)).unwrap();
        assert!((w - 60.0).abs() < 1e-9, "{rel}: {w}");
    }
}

#[test]
fn hull_is_narrowest_on_very_sparse_instance() {
    let h = trirelax::make_hypergraph(Scenario::VerySparse);
    let bounds = trirelax::gen_bounds(h.n(), 4);
    let dirs = gen_directions(h.edges().len(), 15, 8).unwrap();
    let hull = assemble_relaxation(&h, &bounds, Relaxation::Hull).unwrap();
    for choice in GroupingChoice::ALL {
        let dm = assemble_relaxation(&h, &bounds, Relaxation::DoubleMcCormick(choice)).unwrap();
        for d in &dirs {
            let wh = directional_width(&hull.lp, &hull.objective(d)).unwrap();
            let wd = directional_width(&dm.lp, &dm.objective(d)).unwrap();
            assert!(wh <= wd + 1e-6, "{wh} > {wd}");
        }
    }
}
