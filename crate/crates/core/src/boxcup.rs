//! Box cubic program instances: hypergraph scenarios, random bounds and
//! objective directions, and the aggregate relaxations built by applying
//! one trinomial relaxation to every hyperedge.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ineq::LinearInequality;
use crate::lp::LinearProgram;
use crate::seed::stream_rng;
use crate::trilinear::{
    double_mccormick_system, hull_formulation, omega_permutation, Bounds3, GroupingChoice, OmegaLabeling,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Dense,
    Sparse,
    VerySparse,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [Scenario::Dense, Scenario::Sparse, Scenario::VerySparse];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Dense => "dense",
            Scenario::Sparse => "sparse",
            Scenario::VerySparse => "very-sparse",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL.into_iter().find(|sc| sc.name() == s).ok_or_else(|| {
            Error::InvalidArgument(format!("unknown scenario {s:?} (expected dense, sparse or very-sparse)"))
        })
    }
}

/// 3-uniform hypergraph. Vertices are 0-based internally; the JSON form is
/// `{"n": 6, "edges": [[1, 2, 3], ...]}` with 1-based vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphRepr", into = "HypergraphRepr")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    n: usize,
    edges: Vec<[usize; 3]>,
}

impl TryFrom<HypergraphRepr> for Hypergraph {
    type Error = Error;

    fn try_from(r: HypergraphRepr) -> Result<Self> {
        if r.edges.iter().flatten().any(|&v| v == 0) {
            return Err(Error::InvalidHypergraph("vertices are numbered from 1".into()));
        }
        Hypergraph::new(r.n, r.edges.into_iter().map(|e| e.map(|v| v - 1)).collect())
    }
}

impl From<Hypergraph> for HypergraphRepr {
    fn from(h: Hypergraph) -> Self {
        Self { n: h.n, edges: h.edges.into_iter().map(|e| e.map(|v| v + 1)).collect() }
    }
}

impl Hypergraph {
    /// Each edge is stored with its vertices in increasing order.
    pub fn new(n: usize, edges: Vec<[usize; 3]>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            if e[0] == e[1] || e[1] == e[2] {
                return Err(Error::InvalidHypergraph(format!("edge {e:?} repeats a vertex")));
            }
            if e[2] >= n {
                return Err(Error::InvalidHypergraph(format!("edge {e:?} leaves the vertex range 0..{n}")));
            }
            if sorted.contains(&e) {
                return Err(Error::InvalidHypergraph(format!("edge {e:?} appears twice")));
            }
            sorted.push(e);
        }
        Ok(Self { n, edges: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }
}

pub fn make_hypergraph(scenario: Scenario) -> Hypergraph {
    let (n, edges) = match scenario {
        Scenario::Dense => {
            let mut edges = Vec::with_capacity(20);
            for i in 0..6 {
                for j in i + 1..6 {
                    for k in j + 1..6 {
                        edges.push([i, j, k]);
                    }
                }
            }
            (6, edges)
        }
        Scenario::Sparse => (20, (0..20).map(|i| [i, (i + 1) % 20, (i + 2) % 20]).collect()),
        // Edge i meets edge i+1 in cycle vertex i and edge i+10 in chord
        // vertex 20 + i mod 10.
        Scenario::VerySparse => (30, (0..20).map(|i| [(i + 19) % 20, i, 20 + i % 10]).collect()),
    };
    Hypergraph::new(n, edges).expect("built-in scenarios are valid")
}

/// Integer box bounds `[aᵢ, bᵢ]` with `0 ≤ aᵢ < bᵢ`, one per vertex.
/// JSON form: `{"n": 6, "bounds": [[a, b], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BoundsSetRepr", into = "BoundsSetRepr")]
pub struct BoundsSet {
    bounds: Vec<[u32; 2]>,
}

#[derive(Serialize, Deserialize)]
struct BoundsSetRepr {
    n: usize,
    bounds: Vec<[u32; 2]>,
}

impl TryFrom<BoundsSetRepr> for BoundsSet {
    type Error = Error;

    fn try_from(r: BoundsSetRepr) -> Result<Self> {
        if r.n != r.bounds.len() {
            return Err(Error::InvalidBounds(format!("n = {} but {} intervals given", r.n, r.bounds.len())));
        }
        BoundsSet::new(r.bounds)
    }
}

impl From<BoundsSet> for BoundsSetRepr {
    fn from(b: BoundsSet) -> Self {
        Self { n: b.bounds.len(), bounds: b.bounds }
    }
}

impl BoundsSet {
    pub fn new(bounds: Vec<[u32; 2]>) -> Result<Self> {
        if let Some((i, [a, b])) = bounds.iter().enumerate().find(|(_, [a, b])| a >= b) {
            return Err(Error::InvalidBounds(format!("vertex {} has interval [{a}, {b}]", i + 1)));
        }
        Ok(Self { bounds })
    }

    pub fn n(&self) -> usize {
        self.bounds.len()
    }

    pub fn intervals(&self) -> &[[u32; 2]] {
        &self.bounds
    }

    pub fn interval(&self, v: usize) -> (f64, f64) {
        let [a, b] = self.bounds[v];
        (a as f64, b as f64)
    }

    /// Bounds of the trinomial on `edge`, in the edge's vertex order.
    pub fn edge_bounds(&self, edge: &[usize; 3]) -> Bounds3 {
        let a = edge.map(|v| self.bounds[v][0] as f64);
        let b = edge.map(|v| self.bounds[v][1] as f64);
        Bounds3::new(a, b).expect("validated at construction")
    }
}

pub const MAX_BOUND: u32 = 10;

/// The 55 integer pairs `0 ≤ a < b ≤ 10`, in lexicographic order.
pub fn bound_pairs() -> Vec<[u32; 2]> {
    (0..MAX_BOUND).flat_map(|a| (a + 1..=MAX_BOUND).map(move |b| [a, b])).collect()
}

/// Each interval is drawn uniformly from [`bound_pairs`].
pub fn gen_bounds(n: usize, seed: u64) -> BoundsSet {
    let pairs = bound_pairs();
    let mut rng = stream_rng(seed, "bounds");
    BoundsSet { bounds: (0..n).map(|_| pairs[rng.gen_range(0..pairs.len())]).collect() }
}

/// Unit-norm objective vector over the hyperedges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Direction(Vec<f64>);

impl Direction {
    pub fn new(q: Vec<f64>) -> Result<Self> {
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidArgument("direction must be a nonzero finite vector".into()));
        }
        Ok(Self(q.into_iter().map(|x| x / norm).collect()))
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Normalized standard-normal vectors, i.e. uniform on the unit sphere.
pub fn gen_directions(m: usize, count: usize, seed: u64) -> Result<Vec<Direction>> {
    if m == 0 {
        return Err(Error::InvalidArgument("direction dimension must be positive".into()));
    }
    let mut rng = stream_rng(seed, "directions");
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
        if let Ok(d) = Direction::new(q) {
            out.push(d);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relaxation {
    Hull,
    DoubleMcCormick(GroupingChoice),
}

impl Relaxation {
    /// Output order used throughout: hull, then systems 1, 2, 3.
    pub const ALL: [Relaxation; 4] = [
        Relaxation::Hull,
        Relaxation::DoubleMcCormick(GroupingChoice::ONE),
        Relaxation::DoubleMcCormick(GroupingChoice::TWO),
        Relaxation::DoubleMcCormick(GroupingChoice::THREE),
    ];

    pub fn label(self) -> &'static str {
        match self {
            Relaxation::Hull => "h",
            Relaxation::DoubleMcCormick(c) => ["1", "2", "3"][c.index() as usize - 1],
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        Relaxation::ALL
            .into_iter()
            .find(|r| r.label() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown relaxation {s:?}")))
    }
}

impl fmt::Display for Relaxation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Aggregate relaxation region (no objective) and where its variables live.
#[derive(Debug, Clone)]
pub struct AssembledRelaxation {
    pub relaxation: Relaxation,
    pub lp: LinearProgram,
    pub x_vars: Vec<usize>,
    /// One function variable per hyperedge, in edge order.
    pub f_vars: Vec<usize>,
    pub labelings: Vec<OmegaLabeling>,
}

impl AssembledRelaxation {
    /// Objective `Σ q_e f_e`.
    pub fn objective(&self, direction: &Direction) -> Vec<(usize, f64)> {
        self.f_vars.iter().copied().zip(direction.components().iter().copied()).collect()
    }
}

/// Applies `relaxation` to every hyperedge. Each edge is omega-labeled from
/// its own bounds; `x` variables are shared across edges and carry their box
/// bounds, and each `f` variable is bounded by the product range of its edge.
/// For the hull, single-variable `λ ≥ 0` rows become variable bounds.
pub fn assemble_relaxation(h: &Hypergraph, bounds: &BoundsSet, relaxation: Relaxation) -> Result<AssembledRelaxation> {
    if bounds.n() < h.n() {
        return Err(Error::MissingBounds { needed: h.n(), got: bounds.n() });
    }
    let mut lp = LinearProgram::new();
    let mut x_vars = Vec::with_capacity(h.n());
    for v in 0..h.n() {
        let (a, b) = bounds.interval(v);
        x_vars.push(lp.add_variable(format!("x{}", v + 1), a, b)?);
    }
    let mut f_vars = Vec::with_capacity(h.edges().len());
    for e in h.edges() {
        let (lo, hi) = bounds.edge_bounds(e).product_range();
        f_vars.push(lp.add_variable(format!("f{}_{}_{}", e[0] + 1, e[1] + 1, e[2] + 1), lo, hi)?);
    }

    let mut labelings = Vec::with_capacity(h.edges().len());
    for (ei, e) in h.edges().iter().enumerate() {
        let labeling = omega_permutation(&bounds.edge_bounds(e));
        let system = match relaxation {
            Relaxation::Hull => hull_formulation(&labeling.labeled),
            Relaxation::DoubleMcCormick(choice) => double_mccormick_system(&labeling.labeled, choice)?,
        };
        let mut map = vec![f_vars[ei]];
        map.extend(labeling.perm.iter().map(|&p| x_vars[e[p]]));
        for name in &system.variables()[4..] {
            map.push(lp.add_variable(format!("{name}_e{}", ei + 1), f64::NEG_INFINITY, f64::INFINITY)?);
        }
        for q in system.inequalities() {
            if let [(v, c)] = q.terms() {
                if *v >= 4 {
                    let bound = q.rhs() / c;
                    let var = &lp.variables()[map[*v]];
                    let (lo, hi) =
                        if *c > 0.0 { (var.lower.max(bound), var.upper) } else { (var.lower, var.upper.min(bound)) };
                    lp.set_bounds(map[*v], lo, hi)?;
                    continue;
                }
            }
            lp.add_constraint(LinearInequality::new(q.terms().iter().map(|&(v, c)| (map[v], c)), q.rhs())?)?;
        }
        labelings.push(labeling);
    }
    Ok(AssembledRelaxation { relaxation, lp, x_vars, f_vars, labelings })
}
