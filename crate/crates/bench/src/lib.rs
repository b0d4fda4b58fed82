//! Fixtures shared by the benchmarks.

use trirelax::{gen_bounds, gen_directions, make_hypergraph, BoundsSet, Direction, Hypergraph, Scenario};

/// A scenario hypergraph, one bound set and `directions` unit directions.
pub fn fixture(scenario: Scenario, directions: usize) -> (Hypergraph, BoundsSet, Vec<Direction>) {
    let h = make_hypergraph(scenario);
    let bounds = gen_bounds(h.n(), 3);
    let dirs = gen_directions(h.edges().len(), directions, 5).expect("positive dimension");
    (h, bounds, dirs)
}
