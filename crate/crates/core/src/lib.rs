//! Relaxations of trilinear monomials `f = x₁x₂x₃` over boxes.
//!
//! The crate builds the convex hull and the three double-McCormick
//! relaxations of a single trinomial ([`trilinear`]), evaluates their
//! closed-form volumes and checks them by Monte Carlo ([`volume`]), and runs
//! linear-programming width experiments on box cubic programs made of many
//! trinomials ([`boxcup`], [`experiment`]) with a small dense simplex solver
//! ([`lp`]).

pub mod boxcup;
pub mod error;
pub mod experiment;
pub mod ineq;
pub mod lp;
pub mod seed;
pub mod trilinear;
pub mod volume;

pub use boxcup::{
    assemble_relaxation, gen_bounds, gen_directions, make_hypergraph, AssembledRelaxation, BoundsSet, Direction,
    Hypergraph, Relaxation, Scenario,
};
pub use error::{Error, Result};
pub use experiment::{
    aggregated_idealized_radius, linear_fit, performance_profile, quasi_mean_width, run_scenario,
    width_difference_report, worst_case_sweep, DifferenceRow, ProfileCurve, RegressionResult, ScenarioConfig,
    ScenarioRun, WidthRecord, WorstCaseRow,
};
pub use ineq::{InequalitySystem, LinearInequality, SystemKind};
pub use lp::{directional_width, solve, FeasibleRegion, LinearProgram, Sense, Solution};
pub use trilinear::{
    double_mccormick_system, hull_formulation, mccormick_bilinear, membership, omega_permutation, Bounds3,
    GroupingChoice, OmegaLabeling,
};
pub use volume::{
    idealized_radial_distance, idealized_radius, mc_volume_estimate, vol_double_mccormick, vol_hull, McEstimate, Volume,
};
