//! Polyhedral systems for a single trinomial `f = x₁x₂x₃` over a box.
//!
//! Double-McCormick and hull systems share the projected coordinates
//! `(f, x1, x2, x3)`, always in that order, and are instantiated on
//! omega-labeled bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ineq::{InequalitySystem, LinearInequality, SystemKind};
use crate::lp::{FeasibleRegion, LinearProgram};

/// Box `[a₁,b₁]×[a₂,b₂]×[a₃,b₃]` with `0 ≤ aᵢ < bᵢ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds3 {
    a: [f64; 3],
    b: [f64; 3],
}

impl Bounds3 {
    pub fn new(a: [f64; 3], b: [f64; 3]) -> Result<Self> {
        for i in 0..3 {
            if !(a[i].is_finite() && b[i].is_finite()) {
                return Err(Error::InvalidBounds(format!("x{} bounds must be finite", i + 1)));
            }
            if a[i] < 0.0 {
                return Err(Error::InvalidBounds(format!("x{} has negative lower bound {}", i + 1, a[i])));
            }
            if a[i] >= b[i] {
                return Err(Error::InvalidBounds(format!(
                    "x{} interval [{}, {}] is empty or degenerate",
                    i + 1,
                    a[i],
                    b[i]
                )));
            }
        }
        Ok(Self { a, b })
    }

    pub fn lower(&self) -> [f64; 3] {
        self.a
    }

    pub fn upper(&self) -> [f64; 3] {
        self.b
    }

    /// Bounds with variable `t` of the result taken from variable `perm[t]`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Self { a: perm.map(|p| self.a[p]), b: perm.map(|p| self.b[p]) }
    }

    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.a.map(|x| x * t), self.b.map(|x| x * t))
    }

    /// `aᵥ·b_o b_o' + bᵥ·a_o a_o'` where `o, o'` are the other two indices.
    ///
    /// The inner products are commutative in floating point, so the value of
    /// a variable does not depend on where a permutation puts it.
    fn split_sum(&self, v: usize) -> f64 {
        let (o1, o2) = ((v + 1) % 3, (v + 2) % 3);
        self.a[v] * (self.b[o1] * self.b[o2]) + self.b[v] * (self.a[o1] * self.a[o2])
    }

    /// The three sums of the omega chain, in chain order:
    /// `a₁b₂b₃ + b₁a₂a₃`, `b₁a₂b₃ + a₁b₂a₃`, `b₁b₂a₃ + a₁a₂b₃`.
    pub fn omega_sums(&self) -> [f64; 3] {
        [0, 1, 2].map(|v| self.split_sum(v))
    }

    pub fn satisfies_omega(&self) -> bool {
        let s = self.omega_sums();
        s[0] <= s[1] && s[1] <= s[2]
    }

    /// `[a₁a₂a₃, b₁b₂b₃]`.
    pub fn product_range(&self) -> (f64, f64) {
        (self.a.iter().product(), self.b.iter().product())
    }

    /// Box corners; bit `t` of the index selects `b_t` over `a_t`.
    pub fn corners(&self) -> [[f64; 3]; 8] {
        std::array::from_fn(|v| std::array::from_fn(|t| if v >> t & 1 == 1 { self.b[t] } else { self.a[t] }))
    }

    pub fn box_volume(&self) -> f64 {
        (0..3).map(|i| self.b[i] - self.a[i]).product()
    }

    /// `(x₁x₂x₃, x₁, x₂, x₃)`.
    pub fn graph_point(x: [f64; 3]) -> [f64; 4] {
        [x[0] * x[1] * x[2], x[0], x[1], x[2]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaLabeling {
    /// Labeled variable `t` is original variable `perm[t]` (0-based).
    pub perm: [usize; 3],
    pub labeled: Bounds3,
}

impl OmegaLabeling {
    pub fn is_identity(&self) -> bool {
        self.perm == [0, 1, 2]
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Lexicographically smallest relabeling whose bounds satisfy the omega
/// chain. One always exists: the three chain sums are attached to the three
/// variables, so sorting the variables by their sum works.
pub fn omega_permutation(bounds: &Bounds3) -> OmegaLabeling {
    let sums = bounds.omega_sums();
    let perm = PERMUTATIONS
        .into_iter()
        .find(|p| sums[p[0]] <= sums[p[1]] && sums[p[1]] <= sums[p[2]])
        .expect("some permutation sorts three reals");
    OmegaLabeling { perm, labeled: bounds.permuted(perm) }
}

/// Which labeled variable stays out of the first bilinear grouping.
/// System `i` groups the other two variables first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupingChoice(u8);

impl GroupingChoice {
    pub const ONE: Self = Self(1);
    pub const TWO: Self = Self(2);
    pub const THREE: Self = Self(3);
    pub const ALL: [Self; 3] = [Self::ONE, Self::TWO, Self::THREE];

    pub fn new(system_index: u8) -> Result<Self> {
        match system_index {
            1..=3 => Ok(Self(system_index)),
            other => Err(Error::InvalidGrouping(other)),
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// `(i, j, k)`, 0-based: `i < j` are grouped as `w = xᵢxⱼ`, `k` is left.
    pub fn roles(self) -> (usize, usize, usize) {
        match self.0 {
            1 => (1, 2, 0),
            2 => (0, 2, 1),
            _ => (0, 1, 2),
        }
    }
}

pub const F: usize = 0;

fn x(i: usize) -> usize {
    1 + i
}

fn projected_names() -> Vec<String> {
    ["f", "x1", "x2", "x3"].map(String::from).to_vec()
}

fn row(terms: &[(usize, f64)], constant: f64) -> LinearInequality {
    LinearInequality::from_affine(terms.iter().copied(), constant).expect("every row has a unit coefficient")
}

/// The four McCormick inequalities for `w = xᵢxⱼ`, over variables
/// `(xi, xj, w)`.
pub fn mccormick_bilinear(a_i: f64, b_i: f64, a_j: f64, b_j: f64) -> Result<InequalitySystem> {
    if !(a_i < b_i && a_j < b_j) || [a_i, b_i, a_j, b_j].iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidBounds(format!("[{a_i}, {b_i}] × [{a_j}, {b_j}]")));
    }
    let (xi, xj, w) = (0, 1, 2);
    let rows = vec![
        row(&[(w, 1.0), (xi, -a_j), (xj, -a_i)], a_i * a_j),
        row(&[(w, -1.0), (xi, b_j), (xj, a_i)], -a_i * b_j),
        row(&[(w, -1.0), (xi, a_j), (xj, b_i)], -b_i * a_j),
        row(&[(w, 1.0), (xi, -b_j), (xj, -b_i)], b_i * b_j),
    ];
    let names = ["xi", "xj", "w"].map(String::from).to_vec();
    Ok(InequalitySystem::new(names, 3, rows, SystemKind::BilinearMcCormick))
}

fn projected_rows(labeled: &Bounds3, choice: GroupingChoice) -> [LinearInequality; 16] {
    let (i, j, k) = choice.roles();
    let (a, b) = (labeled.a, labeled.b);
    let (ai, aj, ak, bi, bj, bk) = (a[i], a[j], a[k], b[i], b[j], b[k]);
    let (xi, xj, xk) = (x(i), x(j), x(k));
    [
        row(&[(xi, 1.0)], -ai),
        row(&[(xj, 1.0)], -aj),
        row(&[(F, 1.0), (xi, -aj * ak), (xj, -ai * ak), (xk, -ai * aj)], 2.0 * ai * aj * ak),
        row(&[(F, 1.0), (xi, -aj * bk), (xj, -ai * bk), (xk, -bi * bj)], ai * aj * bk + bi * bj * bk),
        row(&[(xj, -1.0)], bj),
        row(&[(xi, -1.0)], bi),
        row(&[(F, 1.0), (xi, -bj * ak), (xj, -bi * ak), (xk, -ai * aj)], ai * aj * ak + bi * bj * ak),
        row(&[(F, 1.0), (xi, -bj * bk), (xj, -bi * bk), (xk, -bi * bj)], 2.0 * bi * bj * bk),
        row(&[(F, -1.0), (xi, bj * bk), (xj, ai * bk), (xk, ai * aj)], -ai * aj * bk - ai * bj * bk),
        row(&[(F, -1.0), (xi, aj * bk), (xj, bi * bk), (xk, ai * aj)], -ai * aj * bk - bi * aj * bk),
        row(&[(xk, -1.0)], bk),
        row(&[(F, -1.0), (xi, bj * ak), (xj, ai * ak), (xk, bi * bj)], -ai * bj * ak - bi * bj * ak),
        row(&[(F, -1.0), (xi, aj * ak), (xj, bi * ak), (xk, bi * bj)], -bi * aj * ak - bi * bj * ak),
        row(&[(xk, 1.0)], -ak),
        row(&[(F, 1.0), (xk, -ai * aj)], 0.0),
        row(&[(F, -1.0), (xk, bi * bj)], 0.0),
    ]
}

/// The fourteen inequalities obtained by projecting `w` out of the double
/// McCormick lifting for `choice`. The two further projected inequalities
/// are implied by these and are only available through
/// [`redundant_inequalities`].
pub fn double_mccormick_system(labeled: &Bounds3, choice: GroupingChoice) -> Result<InequalitySystem> {
    if !labeled.satisfies_omega() {
        return Err(Error::OmegaViolated);
    }
    let rows = projected_rows(labeled, choice);
    let kept = rows.into_iter().take(14).collect();
    Ok(InequalitySystem::new(projected_names(), 4, kept, SystemKind::DoubleMcCormick))
}

/// `f − aᵢaⱼxₖ ≥ 0` and `−f + bᵢbⱼxₖ ≥ 0` for the grouping `choice`.
pub fn redundant_inequalities(labeled: &Bounds3, choice: GroupingChoice) -> Result<[LinearInequality; 2]> {
    if !labeled.satisfies_omega() {
        return Err(Error::OmegaViolated);
    }
    let [.., lower, upper] = projected_rows(labeled, choice);
    Ok([lower, upper])
}

/// Convex hull of the graph as an extended formulation over the eight box
/// corners: `λ ≥ 0`, `Σλ = 1`, `x = Σλᵥ·v`, `f = Σλᵥ·v₁v₂v₃`. Equations are
/// stored as consecutive row pairs.
pub fn hull_formulation(bounds: &Bounds3) -> InequalitySystem {
    let lambda = |v: usize| 4 + v;
    let corners = bounds.corners();
    let mut rows = Vec::with_capacity(18);
    for v in 0..8 {
        rows.push(row(&[(lambda(v), 1.0)], 0.0));
    }
    let mut push_equation = |r: LinearInequality| {
        let neg = r.negated();
        rows.push(r);
        rows.push(neg);
    };
    push_equation(LinearInequality::new((0..8).map(|v| (lambda(v), 1.0)), 1.0).unwrap());
    for t in 0..3 {
        let terms = std::iter::once((x(t), 1.0)).chain((0..8).map(|v| (lambda(v), -corners[v][t])));
        push_equation(LinearInequality::new(terms, 0.0).unwrap());
    }
    let terms = std::iter::once((F, 1.0)).chain((0..8).map(|v| (lambda(v), -corners[v].iter().product::<f64>())));
    push_equation(LinearInequality::new(terms, 0.0).unwrap());

    let mut names = projected_names();
    names.extend((0..8).map(|v| format!("lambda{v}")));
    InequalitySystem::new(names, 4, rows, SystemKind::HullExtended)
}

/// Whether `point` (in the system's projected coordinates) lies in the
/// projection of the system's feasible set. Rows over projected variables
/// only are checked with `tol`; if auxiliary variables remain, their
/// feasibility is decided by the simplex solver at its own tolerance.
pub fn membership(point: &[f64], system: &InequalitySystem, tol: f64) -> Result<bool> {
    let projected = system.projected;
    if point.len() != projected {
        return Err(Error::DimensionMismatch { expected: projected, got: point.len() });
    }
    if !system.has_auxiliary() {
        return Ok(system.inequalities.iter().all(|q| q.slack(point) >= -tol));
    }

    let aux_count = system.variables.len() - projected;
    let mut lower = vec![f64::NEG_INFINITY; aux_count];
    let mut upper = vec![f64::INFINITY; aux_count];
    let mut rows = Vec::new();
    for q in &system.inequalities {
        let fixed: f64 = q.terms().iter().filter(|&&(v, _)| v < projected).map(|&(v, c)| c * point[v]).sum();
        let aux: Vec<(usize, f64)> =
            q.terms().iter().filter(|&&(v, _)| v >= projected).map(|&(v, c)| (v - projected, c)).collect();
        match aux[..] {
            [] => {
                if fixed - q.rhs() < -tol {
                    return Ok(false);
                }
            }
            // single-variable rows become bounds
            [(v, c)] if c > 0.0 => lower[v] = lower[v].max((q.rhs() - fixed) / c),
            [(v, c)] => upper[v] = upper[v].min((q.rhs() - fixed) / c),
            _ => rows.push(LinearInequality::new(aux, q.rhs() - fixed)?),
        }
    }
    let mut lp = LinearProgram::new();
    for (l, u) in lower.into_iter().zip(upper) {
        if l > u + tol {
            return Ok(false);
        }
        lp.add_variable(String::new(), l, u.max(l))?;
    }
    for row in rows {
        lp.add_constraint(row)?;
    }
    match FeasibleRegion::new(&lp) {
        Ok(_) => Ok(true),
        Err(Error::Infeasible) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{directional_width, LinearProgram, Sense};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn bounds(a: [f64; 3], b: [f64; 3]) -> Bounds3 {
        Bounds3::new(a, b).unwrap()
    }

    /// Oracle: every permutation checked against the chain by direct
    /// evaluation of the three sums on the permuted bounds.
    fn satisfying_permutations(bd: &Bounds3) -> Vec<[usize; 3]> {
        PERMUTATIONS
            .into_iter()
            .filter(|&p| {
                let l = bd.permuted(p);
                let (a, b) = (l.a, l.b);
                let s1 = a[0] * b[1] * b[2] + b[0] * a[1] * a[2];
                let s2 = b[0] * a[1] * b[2] + a[0] * b[1] * a[2];
                let s3 = b[0] * b[1] * a[2] + a[0] * a[1] * b[2];
                s1 <= s2 && s2 <= s3
            })
            .collect()
    }

    #[test]
    fn rejects_bad_bounds() {
        assert!(Bounds3::new([0.0, 1.0, 0.0], [1.0, 1.0, 1.0]).is_err());
        assert!(Bounds3::new([-1.0, 0.0, 0.0], [1.0, 1.0, 1.0]).is_err());
        assert!(Bounds3::new([0.0, 2.0, 0.0], [1.0, 1.0, 1.0]).is_err());
        assert!(Bounds3::new([0.0, 0.0, 0.0], [1.0, f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn omega_examples() {
        let l = omega_permutation(&bounds([0.0, 0.0, 2.0], [1.0, 1.0, 6.0]));
        assert!(l.is_identity());
        assert_eq!(l.labeled.omega_sums(), [0.0, 0.0, 2.0]);

        let bd = bounds([1.0, 1.0, 1.0], [2.0, 3.0, 4.0]);
        assert_eq!(satisfying_permutations(&bd), vec![[2, 1, 0]]);
        let l = omega_permutation(&bd);
        assert_eq!(l.perm, [2, 1, 0]);
        assert_eq!(l.labeled, bounds([1.0, 1.0, 1.0], [4.0, 3.0, 2.0]));
        assert_eq!(l.labeled.omega_sums(), [10.0, 11.0, 14.0]);

        let l = omega_permutation(&bounds([1.0, 2.0, 3.0], [2.0, 4.0, 5.0]));
        assert!(l.is_identity());
        assert_eq!(l.labeled.omega_sums(), [32.0, 32.0, 34.0]);
    }

    #[test]
    fn bilinear_examples() {
        let s = mccormick_bilinear(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(s.kind(), SystemKind::BilinearMcCormick);
        assert_eq!(s.len(), 4);
        let q = s.inequalities();
        assert_eq!(q[0].terms(), &[(2, 1.0)]);
        assert_eq!(q[0].rhs(), 0.0);
        assert_eq!(q[1].terms(), &[(0, 1.0), (2, -1.0)]);
        assert_eq!(q[2].terms(), &[(1, 1.0), (2, -1.0)]);
        assert_eq!(q[3].terms(), &[(0, -1.0), (1, -1.0), (2, 1.0)]);
        assert_eq!(q[3].rhs(), -1.0);

        let s = mccormick_bilinear(1.0, 2.0, 3.0, 4.0).unwrap();
        let first = &s.inequalities()[0];
        assert_eq!(first.terms(), &[(0, -3.0), (1, -1.0), (2, 1.0)]);
        assert_eq!(first.rhs(), -3.0);
        assert!(membership(&[1.0, 3.0, 3.0], &s, 0.0).unwrap());

        assert!(mccormick_bilinear(1.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn double_mccormick_inequality_three() {
        let labeled = bounds([1.0, 1.0, 1.0], [4.0, 3.0, 2.0]);
        let s = double_mccormick_system(&labeled, GroupingChoice::THREE).unwrap();
        assert_eq!(s.len(), 14);
        let q3 = &s.inequalities()[2];
        assert_eq!(q3.terms(), &[(0, 1.0), (1, -1.0), (2, -1.0), (3, -1.0)]);
        assert_eq!(q3.rhs(), -2.0);
    }

    #[test]
    fn double_mccormick_requires_omega() {
        let bd = bounds([1.0, 1.0, 1.0], [2.0, 3.0, 4.0]);
        assert_eq!(double_mccormick_system(&bd, GroupingChoice::ONE), Err(Error::OmegaViolated));
        assert_eq!(GroupingChoice::new(4), Err(Error::InvalidGrouping(4)));
    }

    #[test]
    fn unit_box_corners_satisfy_every_system() {
        let bd = bounds([0.0; 3], [1.0; 3]);
        for choice in GroupingChoice::ALL {
            let s = double_mccormick_system(&bd, choice).unwrap();
            for c in bd.corners() {
                assert!(membership(&Bounds3::graph_point(c), &s, 1e-12).unwrap());
            }
        }
    }

    #[test]
    fn redundancy_certificates() {
        let labeled = omega_permutation(&bounds([1.0, 2.0, 0.0], [5.0, 7.0, 3.0])).labeled;
        for choice in GroupingChoice::ALL {
            let (i, j, k) = choice.roles();
            let (a, b) = (labeled.a, labeled.b);
            let r = projected_rows(&labeled, choice);
            let combine = |parts: &[(f64, usize)]| {
                let mut coeffs = [0.0; 4];
                let mut rhs = 0.0;
                for &(w, idx) in parts {
                    for &(v, c) in r[idx].terms() {
                        coeffs[v] += w * c;
                    }
                    rhs += w * r[idx].rhs();
                }
                (coeffs, rhs)
            };
            let dense = |q: &LinearInequality| {
                let mut coeffs = [0.0; 4];
                for &(v, c) in q.terms() {
                    coeffs[v] = c;
                }
                (coeffs, q.rhs())
            };
            // 0-based rows: lower = aⱼaₖ·r0 + aᵢaₖ·r1 + r2, upper = bⱼaₖ·r5 + aᵢaₖ·r4 + r11
            let certificates = [
                combine(&[(a[j] * a[k], 0), (a[i] * a[k], 1), (1.0, 2)]),
                combine(&[(b[j] * a[k], 5), (a[i] * a[k], 4), (1.0, 11)]),
            ];
            for ((coeffs, rhs), q) in certificates.iter().zip(redundant_inequalities(&labeled, choice).unwrap()) {
                let (dq, sq) = dense(&q);
                for v in 0..4 {
                    assert_abs_diff_eq!(coeffs[v], dq[v], epsilon = 1e-12);
                }
                assert_abs_diff_eq!(*rhs, sq, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn hull_examples() {
        let unit = hull_formulation(&bounds([0.0; 3], [1.0; 3]));
        assert_eq!(unit.kind(), SystemKind::HullExtended);
        assert_eq!(unit.len(), 8 + 2 * 1 + 2 * 4);
        assert_eq!(unit.variables().len(), 12);
        let products: Vec<f64> = bounds([0.0; 3], [1.0; 3]).corners().iter().map(|c| c.iter().product()).collect();
        assert_eq!(products, vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);

        let bd = bounds([1.0, 1.0, 1.0], [4.0, 3.0, 2.0]);
        let mut products: Vec<f64> = bd.corners().iter().map(|c| c.iter().product()).collect();
        products.sort_by(f64::total_cmp);
        assert_eq!(products, vec![1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 24.0]);

        let s = hull_formulation(&bd);
        assert!(membership(&[1.0, 1.0, 1.0, 1.0], &s, 1e-9).unwrap());
        assert!(!membership(&[25.0, 4.0, 3.0, 2.0], &s, 1e-9).unwrap());
        assert!(!membership(&[0.5, 1.0, 1.0, 1.0], &s, 1e-9).unwrap());
    }

    #[test]
    fn hull_projected_f_range() {
        let bd = bounds([1.0, 2.0, 0.0], [3.0, 5.0, 2.0]);
        let s = hull_formulation(&bd);
        let mut lp = LinearProgram::new();
        for name in s.variables() {
            lp.add_variable(name.as_str(), f64::NEG_INFINITY, f64::INFINITY).unwrap();
        }
        for q in s.inequalities() {
            lp.add_constraint(q.clone()).unwrap();
        }
        lp.set_objective([(F, 1.0)]).unwrap();
        let hi = crate::lp::solve(&lp, Sense::Maximize).unwrap().value().unwrap();
        let lo = crate::lp::solve(&lp, Sense::Minimize).unwrap().value().unwrap();
        let (plo, phi) = bd.product_range();
        assert_abs_diff_eq!(hi, phi, epsilon = 1e-9);
        assert_abs_diff_eq!(lo, plo, epsilon = 1e-9);
    }

    #[test]
    fn membership_examples() {
        let bd = bounds([1.0, 2.0, 3.0], [2.0, 4.0, 5.0]);
        let l = omega_permutation(&bd).labeled;
        let mut systems: Vec<InequalitySystem> =
            GroupingChoice::ALL.iter().map(|&c| double_mccormick_system(&l, c).unwrap()).collect();
        systems.push(hull_formulation(&l));
        let mid = [0, 1, 2].map(|t| 0.5 * (l.a[t] + l.b[t]));
        for s in &systems {
            assert!(membership(&Bounds3::graph_point(l.a), s, 1e-9).unwrap());
            assert!(membership(&Bounds3::graph_point(mid), s, 1e-9).unwrap());
        }
        let (_, top) = l.product_range();
        assert!(!membership(&[top + 1.0, l.b[0], l.b[1], l.b[2]], &systems[3], 1e-9).unwrap());
        assert_eq!(membership(&[1.0, 2.0], &systems[0], 0.0), Err(Error::DimensionMismatch { expected: 4, got: 2 }));
    }

    /// Lifted system in `(f, x1, x2, x3, w)`: McCormick for `w = xᵢxⱼ`, then
    /// for `f = w·xₖ` with `w ∈ [aᵢaⱼ, bᵢbⱼ]`. Built from the bilinear
    /// envelope only, so it is independent of the projected transcription.
    fn lifted_program(labeled: &Bounds3, choice: GroupingChoice) -> LinearProgram {
        let (i, j, k) = choice.roles();
        let (a, b) = (labeled.a, labeled.b);
        let mut lp = LinearProgram::new();
        for name in ["f", "x1", "x2", "x3", "w"] {
            lp.add_variable(name, f64::NEG_INFINITY, f64::INFINITY).unwrap();
        }
        let w = 4;
        let inner = mccormick_bilinear(a[i], b[i], a[j], b[j]).unwrap();
        let outer = mccormick_bilinear(a[i] * a[j], b[i] * b[j], a[k], b[k]).unwrap();
        for q in inner.inequalities() {
            lp.add_constraint(q.remapped(|v| [x(i), x(j), w][v]).unwrap()).unwrap();
        }
        for q in outer.inequalities() {
            lp.add_constraint(q.remapped(|v| [w, x(k), F][v]).unwrap()).unwrap();
        }
        lp
    }

    fn projected_program(system: &InequalitySystem) -> LinearProgram {
        let mut lp = LinearProgram::new();
        for name in system.variables() {
            lp.add_variable(name.as_str(), f64::NEG_INFINITY, f64::INFINITY).unwrap();
        }
        for q in system.inequalities() {
            lp.add_constraint(q.clone()).unwrap();
        }
        lp
    }

    #[test]
    fn projection_matches_lifted_support_function() {
        let cases = [
            ([1.0, 1.0, 1.0], [4.0, 3.0, 2.0]),
            ([0.0, 2.0, 1.0], [3.0, 9.0, 4.0]),
            ([2.0, 0.0, 5.0], [7.0, 1.0, 10.0]),
            ([0.0, 0.0, 0.0], [1.0, 1.0, 1.0]),
        ];
        let dirs: Vec<[f64; 4]> = (0..24)
            .map(|s| {
                let t = s as f64;
                [(t * 0.7).sin(), (t * 1.3 + 0.2).cos(), (t * 2.1).sin() - 0.3, (t * 0.4 + 1.0).cos()]
            })
            .collect();
        for (a, b) in cases {
            let labeled = omega_permutation(&bounds(a, b)).labeled;
            for choice in GroupingChoice::ALL {
                let proj = projected_program(&double_mccormick_system(&labeled, choice).unwrap());
                let lifted = lifted_program(&labeled, choice);
                for d in &dirs {
                    let dir: Vec<(usize, f64)> = d.iter().copied().enumerate().collect();
                    for sense in [Sense::Minimize, Sense::Maximize] {
                        let mut p = proj.clone();
                        p.set_objective(dir.clone()).unwrap();
                        let mut l = lifted.clone();
                        l.set_objective(dir.clone()).unwrap();
                        let vp = crate::lp::solve(&p, sense).unwrap().value().unwrap();
                        let vl = crate::lp::solve(&l, sense).unwrap().value().unwrap();
                        assert_abs_diff_eq!(vp, vl, epsilon = 1e-7);
                    }
                }
            }
        }
    }

    #[test]
    fn redundant_rows_never_violated() {
        let labeled = omega_permutation(&bounds([1.0, 3.0, 2.0], [6.0, 4.0, 9.0])).labeled;
        for choice in GroupingChoice::ALL {
            let base = projected_program(&double_mccormick_system(&labeled, choice).unwrap());
            for q in redundant_inequalities(&labeled, choice).unwrap() {
                let violation = q.negated();
                let mut lp = base.clone();
                lp.set_objective(violation.terms().iter().copied()).unwrap();
                let v = crate::lp::solve(&lp, Sense::Maximize).unwrap().value().unwrap() - violation.rhs();
                assert!(v <= 1e-9, "violation {v}");
            }
        }
    }

    fn bounds_strategy() -> impl Strategy<Value = Bounds3> {
        let pair = (0u32..10).prop_flat_map(|a| (Just(a), a + 1..=10));
        [pair.clone(), pair.clone(), pair]
            .prop_map(|p| Bounds3::new(p.map(|(a, _)| a as f64), p.map(|(_, b)| b as f64)).unwrap())
    }

    proptest! {
        #[test]
        fn omega_labeling_is_valid_minimal_and_idempotent(bd in bounds_strategy()) {
            let l = omega_permutation(&bd);
            prop_assert!(l.labeled.satisfies_omega());
            prop_assert_eq!(l.labeled, bd.permuted(l.perm));
            prop_assert_eq!(satisfying_permutations(&bd)[0], l.perm);
            prop_assert!(omega_permutation(&l.labeled).is_identity());
        }

        #[test]
        fn graph_grid_inside_every_double_mccormick(bd in bounds_strategy()) {
            let l = omega_permutation(&bd).labeled;
            for choice in GroupingChoice::ALL {
                let s = double_mccormick_system(&l, choice).unwrap();
                prop_assert_eq!(s.len(), 14);
                for g in 0..125usize {
                    let steps = [g % 5, g / 5 % 5, g / 25];
                    let xs = [0, 1, 2].map(|t| l.a[t] + (l.b[t] - l.a[t]) * steps[t] as f64 / 4.0);
                    prop_assert!(membership(&Bounds3::graph_point(xs), &s, 1e-9).unwrap());
                }
            }
        }

        #[test]
        fn hull_width_never_exceeds_double_mccormick(bd in bounds_strategy(), seed in 0u64..1000) {
            let l = omega_permutation(&bd).labeled;
            let hull = projected_program(&hull_formulation(&l));
            let s = seed as f64;
            let dir: Vec<(usize, f64)> = (0..4).map(|v| (v, (s * (v as f64 + 1.0) * 0.37).sin())).collect();
            let wh = directional_width(&hull, &dir).unwrap();
            for choice in GroupingChoice::ALL {
                let dm = projected_program(&double_mccormick_system(&l, choice).unwrap());
                prop_assert!(wh <= directional_width(&dm, &dir).unwrap() + 1e-6);
            }
        }
    }
}
