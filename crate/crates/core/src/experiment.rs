//! Width experiments on the aggregate relaxations: quasi mean widths,
//! difference tables, performance profiles, radius regressions and the
//! worst-case sweep.
//!
//! Per-direction work runs on the ambient rayon pool (see [`with_threads`]).
//! Every direction is solved from the same phase-one basis and results are
//! reduced in direction-index order, so outputs do not depend on the number
//! of worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boxcup::{
    assemble_relaxation, gen_bounds, gen_directions, make_hypergraph, AssembledRelaxation, BoundsSet, Direction,
    Hypergraph, Relaxation, Scenario,
};
use crate::error::{Error, Result};
use crate::lp::FeasibleRegion;
use crate::seed::substream;
use crate::trilinear::{omega_permutation, GroupingChoice};
use crate::volume::{vol_double_mccormick, vol_hull};

/// Runs `f` on a dedicated pool with `threads` workers (0 = rayon default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Width of the region in each direction, in input order.
pub fn direction_widths(region: &AssembledRelaxation, directions: &[Direction]) -> Result<Vec<f64>> {
    let feasible = FeasibleRegion::new(&region.lp)?;
    directions
        .par_iter()
        .map(|d| {
            if d.len() != region.f_vars.len() {
                return Err(Error::DimensionMismatch { expected: region.f_vars.len(), got: d.len() });
            }
            feasible.width(&region.objective(d))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WidthSummary {
    pub omega: f64,
    pub std_error: f64,
    pub widths: Vec<f64>,
}

impl WidthSummary {
    pub fn from_widths(widths: Vec<f64>) -> Result<Self> {
        let (omega, std_error) = mean_and_std_error(&widths).ok_or(Error::NoDirections)?;
        Ok(Self { omega, std_error, widths })
    }
}

/// Mean and standard error, summed in index order.
fn mean_and_std_error(xs: &[f64]) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return Some((mean, 0.0));
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Some((mean, (var / n).sqrt()))
}

/// Mean over `directions` of `max − min` of `Σ q_e f_e`.
pub fn quasi_mean_width(region: &AssembledRelaxation, directions: &[Direction]) -> Result<WidthSummary> {
    if directions.is_empty() {
        return Err(Error::NoDirections);
    }
    WidthSummary::from_widths(direction_widths(region, directions)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WidthRecord {
    pub bound_set_id: usize,
    pub relaxation: Relaxation,
    pub omega: f64,
    pub std_error: f64,
    /// Per-direction widths, when retained.
    pub widths: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DifferenceRow {
    pub bound_set_id: usize,
    /// `ω(h) − ω(3)`
    pub d_h3: f64,
    /// `ω(2) − ω(3)`
    pub d_23: f64,
    /// `ω(1) − ω(3)`
    pub d_13: f64,
    /// `ω(1) − ω(h)`
    pub sort_key: f64,
}

/// `ω` per bound set, in [`Relaxation::ALL`] order.
fn omegas_by_set(records: &[WidthRecord]) -> Result<Vec<(usize, [f64; 4])>> {
    let mut ids: Vec<usize> = records.iter().map(|r| r.bound_set_id).collect();
    ids.sort_unstable();
    ids.dedup();
    ids.into_iter()
        .map(|id| {
            let mut w = [0.0; 4];
            for (slot, rel) in w.iter_mut().zip(Relaxation::ALL) {
                *slot = records
                    .iter()
                    .find(|r| r.bound_set_id == id && r.relaxation == rel)
                    .ok_or_else(|| Error::MissingRelaxation(id, rel.label().to_string()))?
                    .omega;
            }
            Ok((id, w))
        })
        .collect()
}

/// Differences against system 3, sorted by `ω(1) − ω(h)` (stable on id).
pub fn width_difference_report(records: &[WidthRecord]) -> Result<Vec<DifferenceRow>> {
    let mut rows: Vec<DifferenceRow> = omegas_by_set(records)?
        .into_iter()
        .map(|(id, [h, w1, w2, w3])| DifferenceRow {
            bound_set_id: id,
            d_h3: h - w3,
            d_23: w2 - w3,
            d_13: w1 - w3,
            sort_key: w1 - h,
        })
        .collect();
    rows.sort_by(|x, y| x.sort_key.total_cmp(&y.sort_key));
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub tau: Vec<f64>,
    /// Fractions for systems 1, 2 and 3.
    pub fractions: [Vec<f64>; 3],
}

pub const DEFAULT_TAU_POINTS: usize = 200;

/// `points` evenly spaced values on `[0, ln 2]`.
pub fn tau_grid(points: usize) -> Vec<f64> {
    let top = std::f64::consts::LN_2;
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points).map(|i| top * i as f64 / (points - 1) as f64).collect(),
    }
}

/// Fraction of bound sets with `ln(ω(ℓ)/ω(h)) ≤ τ`, for ℓ = 1, 2, 3.
pub fn performance_profile(records: &[WidthRecord], tau: &[f64]) -> Result<ProfileCurve> {
    let sets = omegas_by_set(records)?;
    if sets.is_empty() {
        return Err(Error::InvalidArgument("no width records".into()));
    }
    if let Some((id, _)) = sets.iter().find(|(_, w)| !(w[0] > 0.0)) {
        return Err(Error::NonPositiveHullWidth(*id));
    }
    if tau.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("tau grid must be increasing".into()));
    }
    let fractions = [1usize, 2, 3].map(|l| {
        let ratios: Vec<f64> = sets.iter().map(|(_, w)| (w[l] / w[0]).ln()).collect();
        tau.iter().map(|&t| ratios.iter().filter(|&&r| r <= t).count() as f64 / sets.len() as f64).collect()
    });
    Ok(ProfileCurve { tau: tau.to_vec(), fractions })
}

/// Per-edge volumes in [`Relaxation::ALL`] order.
pub fn edge_volumes(h: &Hypergraph, bounds: &BoundsSet) -> Result<Vec<[f64; 4]>> {
    h.edges()
        .iter()
        .map(|e| {
            let l = omega_permutation(&bounds.edge_bounds(e)).labeled;
            Ok([
                vol_hull(&l)?.value(),
                vol_double_mccormick(&l, GroupingChoice::ONE)?.value(),
                vol_double_mccormick(&l, GroupingChoice::TWO)?.value(),
                vol_double_mccormick(&l, GroupingChoice::THREE)?.value(),
            ])
        })
        .collect()
}

fn slot(relaxation: Relaxation) -> usize {
    Relaxation::ALL.iter().position(|&r| r == relaxation).expect("ALL lists every relaxation")
}

/// `Σ_e vol_ℓ(e)^{1/4}`, without the unit-ball constant.
pub fn aggregated_idealized_radius(h: &Hypergraph, bounds: &BoundsSet, relaxation: Relaxation) -> Result<f64> {
    Ok(edge_volumes(h, bounds)?.iter().map(|v| v[slot(relaxation)].powf(0.25)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionResult {
    pub slope: f64,
    pub intercept: f64,
    /// `None` when every `y` is equal.
    pub r_squared: Option<f64>,
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<RegressionResult> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    if x.len() < 2 || x.iter().all(|&v| v == x[0]) {
        return Err(Error::DegenerateRegression);
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    let r_squared = (ss_tot > 0.0).then(|| {
        let ss_res: f64 = x.iter().zip(y).map(|(a, b)| (b - (slope * a + intercept)).powi(2)).sum();
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    });
    Ok(RegressionResult { slope, intercept, r_squared })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub bound_sets: usize,
    pub directions: usize,
    pub seed: u64,
    pub retain_widths: bool,
}

impl ScenarioConfig {
    pub const DESK_BOUND_SETS: usize = 10;
    pub const DESK_DIRECTIONS: usize = 5_000;
    pub const PAPER_BOUND_SETS: usize = 30;
    pub const PAPER_DIRECTIONS: usize = 100_000;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRun {
    pub config: ScenarioConfig,
    pub hypergraph: Hypergraph,
    pub bound_sets: Vec<BoundsSet>,
    /// Bound set major, [`Relaxation::ALL`] minor.
    pub records: Vec<WidthRecord>,
    /// Per bound set, per edge volumes in [`Relaxation::ALL`] order.
    pub volumes: Vec<Vec<[f64; 4]>>,
}

/// Bound set `s` of a run seeded with `seed`.
pub fn scenario_bounds(h: &Hypergraph, seed: u64, count: usize) -> Vec<BoundsSet> {
    (0..count).map(|s| gen_bounds(h.n(), substream(seed, &format!("bounds/{s}")))).collect()
}

pub fn scenario_directions(h: &Hypergraph, seed: u64, count: usize) -> Result<Vec<Direction>> {
    gen_directions(h.edges().len(), count, substream(seed, "directions"))
}

/// Bounds, volumes and quasi mean widths of all four relaxations for one
/// scenario. The same directions are used for every bound set and
/// relaxation.
pub fn run_scenario(config: ScenarioConfig) -> Result<ScenarioRun> {
    if config.bound_sets == 0 || config.directions == 0 {
        return Err(Error::InvalidArgument("bound-set and direction counts must be positive".into()));
    }
    let hypergraph = make_hypergraph(config.scenario);
    let bound_sets = scenario_bounds(&hypergraph, config.seed, config.bound_sets);
    let directions = scenario_directions(&hypergraph, config.seed, config.directions)?;
    let mut records = Vec::with_capacity(4 * bound_sets.len());
    let mut volumes = Vec::with_capacity(bound_sets.len());
    for (id, bounds) in bound_sets.iter().enumerate() {
        volumes.push(edge_volumes(&hypergraph, bounds)?);
        for rel in Relaxation::ALL {
            let region = assemble_relaxation(&hypergraph, bounds, rel)?;
            let summary = quasi_mean_width(&region, &directions)?;
            records.push(WidthRecord {
                bound_set_id: id,
                relaxation: rel,
                omega: summary.omega,
                std_error: summary.std_error,
                widths: config.retain_widths.then_some(summary.widths),
            });
        }
    }
    Ok(ScenarioRun { config, hypergraph, bound_sets, records, volumes })
}

fn optional_fit(x: &[f64], y: &[f64]) -> Result<Option<RegressionResult>> {
    match linear_fit(x, y) {
        Ok(fit) => Ok(Some(fit)),
        Err(Error::DegenerateRegression) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionSeries {
    pub series: String,
    /// `None` when the points do not determine a line (fewer than two
    /// distinct `x` values).
    pub fit: Option<RegressionResult>,
}

/// Aggregated radius against `ω` for each relaxation (`radius_h`,
/// `radius_3`, `radius_2`, `radius_1`), then aggregated radial distance
/// against the quasi mean width difference for each system against the hull
/// (`distance_3h`, `distance_2h`, `distance_1h`). One point per bound set.
pub fn regression_series(volumes: &[Vec<[f64; 4]>], records: &[WidthRecord]) -> Result<Vec<RegressionSeries>> {
    let omegas = omegas_by_set(records)?;
    if omegas.len() != volumes.len() {
        return Err(Error::InvalidArgument(format!(
            "{} bound sets with widths but {} with volumes",
            omegas.len(),
            volumes.len()
        )));
    }
    let radius: Vec<[f64; 4]> = volumes
        .iter()
        .map(|edges| {
            let mut r = [0.0; 4];
            for v in edges {
                for (acc, vol) in r.iter_mut().zip(v) {
                    *acc += vol.powf(0.25);
                }
            }
            r
        })
        .collect();
    let mut out = Vec::with_capacity(7);
    for (name, s) in [("radius_h", 0), ("radius_3", 3), ("radius_2", 2), ("radius_1", 1)] {
        let x: Vec<f64> = radius.iter().map(|r| r[s]).collect();
        let y: Vec<f64> = omegas.iter().map(|(_, w)| w[s]).collect();
        out.push(RegressionSeries { series: name.into(), fit: optional_fit(&x, &y)? });
    }
    for (name, s) in [("distance_3h", 3), ("distance_2h", 2), ("distance_1h", 1)] {
        let x: Vec<f64> = radius.iter().map(|r| r[s] - r[0]).collect();
        let y: Vec<f64> = omegas.iter().map(|(_, w)| w[s] - w[0]).collect();
        out.push(RegressionSeries { series: name.into(), fit: optional_fit(&x, &y)? });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorstCaseRow {
    pub b3: u32,
    pub a3: u32,
    /// `ω` for systems 1, 2, 3.
    pub omega: [f64; 3],
    /// `ω(2) − ω(3)`
    pub d_23: f64,
    /// `ω(2) − ω(1)`
    pub d_21: f64,
    /// Volumes of one edge, in [`Relaxation::ALL`] order (all edges agree).
    pub edge_volumes: [f64; 4],
}

/// Six vertices, the first five on `[0, 1]` and the sixth on `[a₃, b₃]`,
/// with the ten hyperedges that contain the sixth vertex.
pub fn worst_case_instance(a3: u32, b3: u32) -> Result<(Hypergraph, BoundsSet)> {
    let mut edges = Vec::with_capacity(10);
    for j in 0..5 {
        for k in j + 1..5 {
            edges.push([j, k, 5]);
        }
    }
    let h = Hypergraph::new(6, edges)?;
    let mut bounds = vec![[0, 1]; 5];
    bounds.push([a3, b3]);
    Ok((h, BoundsSet::new(bounds)?))
}

/// Quasi mean widths of systems 1–3 for `a₃ = 1, …, b₃ − 1`, with one shared
/// set of directions.
pub fn worst_case_sweep(b3: u32, directions: usize, seed: u64) -> Result<Vec<WorstCaseRow>> {
    if b3 < 2 {
        return Err(Error::InvalidArgument(format!("b3 must be at least 2, got {b3}")));
    }
    if directions == 0 {
        return Err(Error::NoDirections);
    }
    let dirs = gen_directions(10, directions, substream(seed, "worst-case/directions"))?;
    (1..b3)
        .map(|a3| {
            let (h, bounds) = worst_case_instance(a3, b3)?;
            let mut omega = [0.0; 3];
            for (w, choice) in omega.iter_mut().zip(GroupingChoice::ALL) {
                let region = assemble_relaxation(&h, &bounds, Relaxation::DoubleMcCormick(choice))?;
                *w = quasi_mean_width(&region, &dirs)?.omega;
            }
            let edge_volumes = edge_volumes(&h, &bounds)?[0];
            Ok(WorstCaseRow { b3, a3, omega, d_23: omega[1] - omega[2], d_21: omega[1] - omega[0], edge_volumes })
        })
        .collect()
}
