//! Dense bounded-variable primal simplex for the small programs built here.
//!
//! Constraints are `≥` rows at the interface. Two consecutive rows that are
//! exact negations of each other are merged into one equality row. Every row
//! gets a slack `s = a·x − rhs` with bounds `[0, ∞)` (or `[0, 0]` for merged
//! equalities), and the solver works on a condensed tableau that expresses
//! the basic variables in terms of the nonbasic ones, so the tableau is
//! `rows × structural` regardless of which variables are basic.
//!
//! Pricing uses Devex reference weights with a Harris two-pass ratio test; after
//! [`DEGENERATE_LIMIT`] degenerate pivots the solve switches to Bland's rule
//! for the rest of the run. Every optimum is re-checked against the original
//! rows; a check failure triggers one full re-solve under Bland's rule before
//! [`Error::SolverFailure`] is reported.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ineq::LinearInequality;

pub const FEASIBILITY_TOL: f64 = 1e-7;
pub const PIVOT_TOL: f64 = 1e-9;
pub const DEGENERATE_LIMIT: usize = 1000;

const INNER_FEAS_TOL: f64 = 1e-9;
const OPTIMALITY_TOL: f64 = 1e-9;
const ZERO_STEP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    variables: Vec<Variable>,
    constraints: Vec<LinearInequality>,
    objective: Vec<(usize, f64)>,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a variable; bounds may be infinite.
    pub fn add_variable(&mut self, name: impl Into<String>, lower: f64, upper: f64) -> Result<usize> {
        let name = name.into();
        if lower.is_nan() || upper.is_nan() || lower > upper || lower == f64::INFINITY || upper == f64::NEG_INFINITY {
            return Err(Error::InvalidArgument(format!("variable {name} has bounds [{lower}, {upper}]")));
        }
        self.variables.push(Variable { name, lower, upper });
        Ok(self.variables.len() - 1)
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) -> Result<()> {
        let v = self.variables.get_mut(var).ok_or(Error::UnknownVariable(var))?;
        if lower.is_nan() || upper.is_nan() || lower > upper {
            return Err(Error::InvalidArgument(format!("bounds [{lower}, {upper}] for {}", v.name)));
        }
        v.lower = lower;
        v.upper = upper;
        Ok(())
    }

    pub fn add_constraint(&mut self, constraint: LinearInequality) -> Result<()> {
        if let Some(&(v, _)) = constraint.terms().iter().find(|&&(v, _)| v >= self.variables.len()) {
            return Err(Error::UnknownVariable(v));
        }
        self.constraints.push(constraint);
        Ok(())
    }

    pub fn set_objective(&mut self, terms: impl IntoIterator<Item = (usize, f64)>) -> Result<()> {
        let terms: Vec<(usize, f64)> = terms.into_iter().collect();
        if let Some(&(v, _)) = terms.iter().find(|&&(v, _)| v >= self.variables.len()) {
            return Err(Error::UnknownVariable(v));
        }
        self.objective = terms;
        Ok(())
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[LinearInequality] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(usize, f64)] {
        &self.objective
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Largest violation of a bound or constraint at `point` (0 if feasible).
    pub fn max_violation(&self, point: &[f64]) -> f64 {
        let bounds = self.variables.iter().zip(point).map(|(v, &x)| (v.lower - x).max(x - v.upper).max(0.0));
        let rows = self.constraints.iter().map(|c| (-c.slack(point)).max(0.0));
        bounds.chain(rows).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub value: f64,
    pub point: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Solution {
    Optimal(Optimum),
    Infeasible,
    Unbounded,
}

impl Solution {
    pub fn value(&self) -> Option<f64> {
        match self {
            Solution::Optimal(o) => Some(o.value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[f64]> {
        match self {
            Solution::Optimal(o) => Some(&o.point),
            _ => None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, Solution::Optimal(_))
    }
}

pub fn solve(lp: &LinearProgram, sense: Sense) -> Result<Solution> {
    match FeasibleRegion::new(lp) {
        Ok(region) => region.optimize(lp.objective(), sense),
        Err(Error::Infeasible) => Ok(Solution::Infeasible),
        Err(e) => Err(e),
    }
}

/// `max c·x − min c·x` over the feasible set of `region` (its objective is
/// ignored).
pub fn directional_width(region: &LinearProgram, direction: &[(usize, f64)]) -> Result<f64> {
    FeasibleRegion::new(region)?.width(direction)
}

/// Original problem data kept for verification and for fallback re-solves.
#[derive(Debug)]
struct Problem {
    lp: LinearProgram,
    rows: Vec<Row>,
}

#[derive(Debug)]
struct Row {
    coeffs: Vec<f64>,
    rhs: f64,
    equality: bool,
}

impl Problem {
    fn new(lp: &LinearProgram) -> Self {
        let n = lp.num_variables();
        let dense = |c: &LinearInequality| {
            let mut row = vec![0.0; n];
            for &(v, a) in c.terms() {
                row[v] += a;
            }
            row
        };
        let mut rows = Vec::with_capacity(lp.constraints.len());
        let mut iter = lp.constraints.iter().peekable();
        while let Some(c) = iter.next() {
            let coeffs = dense(c);
            let paired = iter.peek().is_some_and(|next| {
                next.rhs() == -c.rhs()
                    && next.terms().len() == c.terms().len()
                    && next.terms().iter().zip(c.terms()).all(|(&(v1, a1), &(v2, a2))| v1 == v2 && a1 == -a2)
            });
            if paired {
                iter.next();
            }
            rows.push(Row { coeffs, rhs: c.rhs(), equality: paired });
        }
        Self { lp: lp.clone(), rows }
    }

    fn verify(&self, point: &[f64]) -> std::result::Result<(), String> {
        let worst = self.lp.max_violation(point);
        if worst > FEASIBILITY_TOL || point.iter().any(|x| !x.is_finite()) {
            return Err(format!("returned point violates the program by {worst:e}"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

/// Condensed tableau state: `x_B[i] = Σ_k tab[i][k] · x_N[k] + const`.
#[derive(Debug, Clone)]
struct Simplex {
    n: usize,
    m: usize,
    tab: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    value: Vec<f64>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    bland: bool,
    degenerate: usize,
    iterations: usize,
    scratch: Vec<f64>,
    reduced: Vec<f64>,
    weights: Vec<f64>,
}

fn resting_value(lower: f64, upper: f64) -> f64 {
    if lower.is_finite() {
        lower
    } else if upper.is_finite() {
        upper
    } else {
        0.0
    }
}

impl Simplex {
    fn new(problem: &Problem, bland: bool) -> Self {
        let n = problem.lp.num_variables();
        let m = problem.rows.len();
        let mut lower = Vec::with_capacity(n + m);
        let mut upper = Vec::with_capacity(n + m);
        let mut value = Vec::with_capacity(n + m);
        for v in &problem.lp.variables {
            lower.push(v.lower);
            upper.push(v.upper);
            value.push(resting_value(v.lower, v.upper));
        }
        let mut tab = Vec::with_capacity(m * n);
        for row in &problem.rows {
            tab.extend_from_slice(&row.coeffs);
            let activity: f64 = row.coeffs.iter().zip(&value[..n]).map(|(a, x)| a * x).sum();
            lower.push(0.0);
            upper.push(if row.equality { 0.0 } else { f64::INFINITY });
            value.push(activity - row.rhs);
        }
        Self {
            n,
            m,
            tab,
            lower,
            upper,
            value,
            basic: (n..n + m).collect(),
            nonbasic: (0..n).collect(),
            bland,
            degenerate: 0,
            iterations: 0,
            scratch: vec![0.0; n],
            reduced: vec![0.0; n],
            weights: vec![1.0; n],
        }
    }

    fn iteration_limit(&self) -> usize {
        20_000 + 50 * (self.n + self.m)
    }

    fn infeasibility_sign(&self, var: usize) -> f64 {
        let x = self.value[var];
        if x < self.lower[var] - INNER_FEAS_TOL {
            -1.0
        } else if x > self.upper[var] + INNER_FEAS_TOL {
            1.0
        } else {
            0.0
        }
    }

    /// Fills `self.reduced`. Returns false in phase one when the basis is
    /// already feasible.
    fn price(&mut self, phase: Phase, cost: &[f64]) -> bool {
        let n = self.n;
        let mut any = false;
        match phase {
            Phase::One => self.reduced.iter_mut().for_each(|d| *d = 0.0),
            Phase::Two => {
                for (d, &v) in self.reduced.iter_mut().zip(&self.nonbasic) {
                    *d = cost[v];
                }
            }
        }
        for i in 0..self.m {
            let c = match phase {
                Phase::One => self.infeasibility_sign(self.basic[i]),
                Phase::Two => cost[self.basic[i]],
            };
            if c == 0.0 {
                continue;
            }
            any = true;
            let row = &self.tab[i * n..(i + 1) * n];
            for (d, &a) in self.reduced.iter_mut().zip(row) {
                *d += c * a;
            }
        }
        phase == Phase::Two || any
    }

    /// Entering column and its direction of motion (+1 or −1).
    fn choose_entering(&self) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64, f64)> = None;
        for (k, &d) in self.reduced.iter().enumerate() {
            let v = self.nonbasic[k];
            if self.lower[v] == self.upper[v] {
                continue;
            }
            let dir = if d < -OPTIMALITY_TOL && self.value[v] < self.upper[v] {
                1.0
            } else if d > OPTIMALITY_TOL && self.value[v] > self.lower[v] {
                -1.0
            } else {
                continue;
            };
            let better = match best {
                None => true,
                Some((bk, _, score)) => {
                    if self.bland {
                        v < self.nonbasic[bk]
                    } else {
                        d * d / self.weights[k] > score
                    }
                }
            };
            if better {
                best = Some((k, dir, d * d / self.weights[k]));
            }
        }
        best.map(|(k, dir, _)| (k, dir))
    }

    /// Step limit imposed by basic row `i` when the entering variable moves
    /// with `rate = tab[i][q] * dir`. Returns `(step, bound hit)`; `slack`
    /// widens the bound for the first Harris pass.
    fn row_limit(&self, phase: Phase, i: usize, rate: f64, slack: f64) -> Option<(f64, f64)> {
        let v = self.basic[i];
        let (x, l, u) = (self.value[v], self.lower[v], self.upper[v]);
        if phase == Phase::One {
            if x < l - INNER_FEAS_TOL {
                return (rate > 0.0).then(|| ((l - x + slack) / rate, l));
            }
            if x > u + INNER_FEAS_TOL {
                return (rate < 0.0).then(|| ((x - u + slack) / -rate, u));
            }
        }
        if rate < 0.0 && l.is_finite() {
            Some((((x - l + slack) / -rate).max(0.0), l))
        } else if rate > 0.0 && u.is_finite() {
            Some((((u - x + slack) / rate).max(0.0), u))
        } else {
            None
        }
    }

    /// Leaving row (None for a bound flip), step length and the bound the
    /// leaving variable lands on. `Err(())` signals an unbounded ray.
    fn ratio_test(&self, phase: Phase, q: usize, dir: f64) -> std::result::Result<(Option<usize>, f64, f64), ()> {
        let n = self.n;
        let entering = self.nonbasic[q];
        let flip = if dir > 0.0 {
            self.upper[entering] - self.value[entering]
        } else {
            self.value[entering] - self.lower[entering]
        };

        let mut chosen: Option<(usize, f64, f64)> = None;
        if self.bland {
            for i in 0..self.m {
                let a = self.tab[i * n + q];
                if a.abs() <= PIVOT_TOL {
                    continue;
                }
                let Some((step, bound)) = self.row_limit(phase, i, a * dir, 0.0) else { continue };
                let replace = match chosen {
                    None => true,
                    Some((ci, cs, _)) => {
                        step < cs - ZERO_STEP || (step <= cs + ZERO_STEP && self.basic[i] < self.basic[ci])
                    }
                };
                if replace {
                    chosen = Some((i, step, bound));
                }
            }
        } else {
            let mut bound_max = f64::INFINITY;
            for i in 0..self.m {
                let a = self.tab[i * n + q];
                if a.abs() <= PIVOT_TOL {
                    continue;
                }
                if let Some((step, _)) = self.row_limit(phase, i, a * dir, INNER_FEAS_TOL) {
                    bound_max = bound_max.min(step);
                }
            }
            if bound_max.is_finite() {
                let mut best_pivot = 0.0;
                for i in 0..self.m {
                    let a = self.tab[i * n + q];
                    if a.abs() <= PIVOT_TOL {
                        continue;
                    }
                    let Some((step, bound)) = self.row_limit(phase, i, a * dir, 0.0) else { continue };
                    if step <= bound_max && a.abs() > best_pivot {
                        best_pivot = a.abs();
                        chosen = Some((i, step, bound));
                    }
                }
            }
        }

        match chosen {
            Some((_, step, _)) if flip <= step => Ok((None, flip, 0.0)),
            Some((i, step, bound)) => Ok((Some(i), step, bound)),
            None if flip.is_finite() => Ok((None, flip, 0.0)),
            None => Err(()),
        }
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let n = self.n;
        let inv = 1.0 / self.tab[p * n + q];
        {
            let row = &mut self.tab[p * n..(p + 1) * n];
            for a in row.iter_mut() {
                *a *= -inv;
            }
            row[q] = inv;
            self.scratch.copy_from_slice(row);
        }
        // Devex reference weights; scratch[k] = −α_pk / α_pq here.
        let wq = self.weights[q];
        for (k, w) in self.weights.iter_mut().enumerate() {
            if k != q {
                let r = self.scratch[k];
                *w = w.max(r * r * wq);
            }
        }
        self.weights[q] = (wq * inv * inv).max(1.0);
        for i in 0..self.m {
            if i == p {
                continue;
            }
            let row = &mut self.tab[i * n..(i + 1) * n];
            let a = row[q];
            if a == 0.0 {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&self.scratch) {
                *x += a * r;
            }
            row[q] = a * self.scratch[q];
        }
        std::mem::swap(&mut self.basic[p], &mut self.nonbasic[q]);
    }

    fn run(&mut self, phase: Phase, cost: &[f64]) -> std::result::Result<Outcome, String> {
        let n = self.n;
        self.weights.iter_mut().for_each(|w| *w = 1.0);
        loop {
            self.iterations += 1;
            if self.iterations > self.iteration_limit() {
                return Err(format!("iteration limit {} exceeded", self.iteration_limit()));
            }
            if !self.price(phase, cost) {
                return Ok(Outcome::Optimal);
            }
            let Some((q, dir)) = self.choose_entering() else {
                return Ok(match phase {
                    Phase::One => Outcome::Infeasible,
                    Phase::Two => Outcome::Optimal,
                });
            };
            let (leave, step, bound) = match self.ratio_test(phase, q, dir) {
                Ok(r) => r,
                Err(()) if phase == Phase::Two => return Ok(Outcome::Unbounded),
                Err(()) => return Err("phase one found an unbounded improving ray".into()),
            };
            if step <= ZERO_STEP {
                self.degenerate += 1;
                if self.degenerate >= DEGENERATE_LIMIT {
                    self.bland = true;
                }
            }
            let entering = self.nonbasic[q];
            let delta = step * dir;
            if delta != 0.0 {
                self.value[entering] += delta;
                for i in 0..self.m {
                    let a = self.tab[i * n + q];
                    if a != 0.0 {
                        self.value[self.basic[i]] += a * delta;
                    }
                }
            }
            match leave {
                None => {
                    self.value[entering] = if dir > 0.0 { self.upper[entering] } else { self.lower[entering] };
                }
                Some(p) => {
                    self.value[self.basic[p]] = bound;
                    self.pivot(p, q);
                }
            }
        }
    }

    fn point(&self) -> Vec<f64> {
        self.value[..self.n].to_vec()
    }
}

/// A program whose feasibility has been established, holding the phase-one
/// basis. Every [`optimize`](Self::optimize) call starts from that same
/// basis, so results never depend on the order of earlier calls.
#[derive(Debug, Clone)]
pub struct FeasibleRegion {
    problem: Arc<Problem>,
    start: Simplex,
}

impl FeasibleRegion {
    /// Runs phase one. Returns [`Error::Infeasible`] for an empty region.
    pub fn new(lp: &LinearProgram) -> Result<Self> {
        let problem = Arc::new(Problem::new(lp));
        match Self::phase_one(&problem, false) {
            Ok(start) => Ok(Self { problem, start }),
            Err(Error::SolverFailure(_)) => {
                let start = Self::phase_one(&problem, true)?;
                Ok(Self { problem, start })
            }
            Err(e) => Err(e),
        }
    }

    fn phase_one(problem: &Problem, bland: bool) -> Result<Simplex> {
        let mut s = Simplex::new(problem, bland);
        match s.run(Phase::One, &[]).map_err(Error::SolverFailure)? {
            Outcome::Optimal => {
                problem.verify(&s.point()).map_err(Error::SolverFailure)?;
                s.degenerate = 0;
                s.iterations = 0;
                s.bland = bland;
                Ok(s)
            }
            Outcome::Infeasible => Err(Error::Infeasible),
            Outcome::Unbounded => unreachable!("phase one never reports unbounded"),
        }
    }

    pub fn num_variables(&self) -> usize {
        self.problem.lp.num_variables()
    }

    /// A feasible point (the phase-one vertex).
    pub fn feasible_point(&self) -> Vec<f64> {
        self.start.point()
    }

    pub fn optimize(&self, objective: &[(usize, f64)], sense: Sense) -> Result<Solution> {
        let n = self.num_variables();
        let sign = match sense {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        };
        let mut cost = vec![0.0; n + self.start.m];
        for &(v, c) in objective {
            if v >= n {
                return Err(Error::UnknownVariable(v));
            }
            cost[v] += sign * c;
        }
        match self.phase_two(self.start.clone(), &cost, objective) {
            Ok(sol) => Ok(sol),
            Err(_) => {
                let start = Self::phase_one(&self.problem, true)?;
                self.phase_two(start, &cost, objective).map_err(Error::SolverFailure)
            }
        }
    }

    fn phase_two(
        &self,
        mut s: Simplex,
        cost: &[f64],
        objective: &[(usize, f64)],
    ) -> std::result::Result<Solution, String> {
        match s.run(Phase::Two, cost)? {
            Outcome::Optimal => {
                let point = s.point();
                self.problem.verify(&point)?;
                let value = objective.iter().map(|&(v, c)| c * point[v]).sum();
                Ok(Solution::Optimal(Optimum { value, point }))
            }
            Outcome::Unbounded => Ok(Solution::Unbounded),
            Outcome::Infeasible => unreachable!("phase two never reports infeasible"),
        }
    }

    /// `max − min` of `direction` over the region.
    pub fn width(&self, direction: &[(usize, f64)]) -> Result<f64> {
        let hi = self.optimize(direction, Sense::Maximize)?;
        let lo = self.optimize(direction, Sense::Minimize)?;
        match (hi, lo) {
            (Solution::Optimal(hi), Solution::Optimal(lo)) => Ok((hi.value - lo.value).max(0.0)),
            _ => Err(Error::Unbounded),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ineq(terms: &[(usize, f64)], rhs: f64) -> LinearInequality {
        LinearInequality::new(terms.iter().copied(), rhs).unwrap()
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18, x,y ≥ 0 → 36 at (2, 6)
        let mut lp = LinearProgram::new();
        let x = lp.add_variable("x", 0.0, f64::INFINITY).unwrap();
        let y = lp.add_variable("y", 0.0, f64::INFINITY).unwrap();
        lp.add_constraint(ineq(&[(x, -1.0)], -4.0)).unwrap();
        lp.add_constraint(ineq(&[(y, -2.0)], -12.0)).unwrap();
        lp.add_constraint(ineq(&[(x, -3.0), (y, -2.0)], -18.0)).unwrap();
        lp.set_objective([(x, 3.0), (y, 5.0)]).unwrap();
        let sol = solve(&lp, Sense::Maximize).unwrap();
        assert_abs_diff_eq!(sol.value().unwrap(), 36.0, epsilon = 1e-9);
        let p = sol.point().unwrap();
        assert_abs_diff_eq!(p[0], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(p[1], 6.0, epsilon = 1e-9);
    }

    #[test]
    fn contradictory_rows_are_infeasible() {
        let mut lp = LinearProgram::new();
        let x = lp.add_variable("x", f64::NEG_INFINITY, f64::INFINITY).unwrap();
        lp.add_constraint(ineq(&[(x, 1.0)], 1.0)).unwrap();
        lp.add_constraint(ineq(&[(x, -1.0)], 0.0)).unwrap();
        assert_eq!(solve(&lp, Sense::Minimize).unwrap(), Solution::Infeasible);
    }

    #[test]
    fn open_ray_is_unbounded() {
        let mut lp = LinearProgram::new();
        let x = lp.add_variable("x", 0.0, f64::INFINITY).unwrap();
        let y = lp.add_variable("y", f64::NEG_INFINITY, f64::INFINITY).unwrap();
        lp.add_constraint(ineq(&[(x, 1.0), (y, -1.0)], 0.0)).unwrap();
        lp.set_objective([(x, 1.0)]).unwrap();
        assert_eq!(solve(&lp, Sense::Maximize).unwrap(), Solution::Unbounded);
        assert_eq!(solve(&lp, Sense::Minimize).unwrap().value(), Some(0.0));
        assert_eq!(directional_width(&lp, &[(x, 1.0)]), Err(Error::Unbounded));
    }

    #[test]
    fn equality_pairs_are_respected() {
        // x + y = 3 written as two rows, x,y ∈ [0, 2]; min x → 1
        let mut lp = LinearProgram::new();
        let x = lp.add_variable("x", 0.0, 2.0).unwrap();
        let y = lp.add_variable("y", 0.0, 2.0).unwrap();
        let row = ineq(&[(x, 1.0), (y, 1.0)], 3.0);
        lp.add_constraint(row.clone()).unwrap();
        lp.add_constraint(row.negated()).unwrap();
        lp.set_objective([(x, 1.0)]).unwrap();
        assert_abs_diff_eq!(solve(&lp, Sense::Minimize).unwrap().value().unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(directional_width(&lp, &[(x, 1.0)]).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn free_variables_only_bounded_by_rows() {
        let mut lp = LinearProgram::new();
        let x = lp.add_variable("x", f64::NEG_INFINITY, f64::INFINITY).unwrap();
        lp.add_constraint(ineq(&[(x, 1.0)], -2.5)).unwrap();
        lp.add_constraint(ineq(&[(x, -1.0)], -4.0)).unwrap();
        assert_abs_diff_eq!(directional_width(&lp, &[(x, 1.0)]).unwrap(), 6.5, epsilon = 1e-12);
    }

    #[test]
    fn rejects_undeclared_variables() {
        let mut lp = LinearProgram::new();
        lp.add_variable("x", 0.0, 1.0).unwrap();
        assert_eq!(lp.add_constraint(ineq(&[(3, 1.0)], 0.0)), Err(Error::UnknownVariable(3)));
        assert_eq!(lp.set_objective([(1, 1.0)]), Err(Error::UnknownVariable(1)));
        assert!(lp.add_variable("y", 1.0, 0.0).is_err());
    }

    #[test]
    fn degenerate_cube_corner() {
        // Many redundant rows through the origin vertex of the unit cube.
        let mut lp = LinearProgram::new();
        let vars: Vec<usize> = (0..3).map(|i| lp.add_variable(format!("x{i}"), 0.0, 1.0).unwrap()).collect();
        for mask in 1..8usize {
            let terms: Vec<(usize, f64)> =
                vars.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| (v, 1.0)).collect();
            lp.add_constraint(ineq(&terms, 0.0)).unwrap();
        }
        let dir: Vec<(usize, f64)> = vars.iter().map(|&v| (v, 1.0)).collect();
        assert_abs_diff_eq!(directional_width(&lp, &dir).unwrap(), 3.0, epsilon = 1e-12);
    }
}
