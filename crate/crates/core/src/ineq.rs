//! Linear inequalities in `Σ cᵥ·v ≥ rhs` form and named systems of them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Σ coefficient·variable ≥ rhs`, with variables referenced by index into
/// the owning system's (or program's) variable list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearInequality {
    terms: Vec<(usize, f64)>,
    rhs: f64,
}

impl LinearInequality {
    /// Builds an inequality, merging repeated variables and dropping zero
    /// coefficients. Terms end up sorted by variable index.
    pub fn new(terms: impl IntoIterator<Item = (usize, f64)>, rhs: f64) -> Result<Self> {
        let mut terms: Vec<(usize, f64)> = terms.into_iter().collect();
        terms.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(terms.len());
        for (v, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += c,
                _ => merged.push((v, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0.0);
        if merged.is_empty() {
            return Err(Error::EmptyInequality);
        }
        Ok(Self { terms: merged, rhs })
    }

    /// Convenience for the `expr + constant ≥ 0` form used when writing the
    /// systems down by hand.
    pub fn from_affine(terms: impl IntoIterator<Item = (usize, f64)>, constant: f64) -> Result<Self> {
        Self::new(terms, -constant)
    }

    pub fn terms(&self) -> &[(usize, f64)] {
        &self.terms
    }

    pub fn rhs(&self) -> f64 {
        self.rhs
    }

    pub fn coefficient(&self, var: usize) -> f64 {
        self.terms.iter().find(|&&(v, _)| v == var).map_or(0.0, |&(_, c)| c)
    }

    /// `Σ c·x − rhs`; nonnegative iff the point satisfies the inequality.
    pub fn slack(&self, point: &[f64]) -> f64 {
        self.terms.iter().map(|&(v, c)| c * point[v]).sum::<f64>() - self.rhs
    }

    /// The inequality with every coefficient and the rhs negated.
    pub fn negated(&self) -> Self {
        Self { terms: self.terms.iter().map(|&(v, c)| (v, -c)).collect(), rhs: -self.rhs }
    }

    /// Same inequality over another variable numbering.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(self.terms.iter().map(|&(v, c)| (map(v), c)), self.rhs)
    }

    pub(crate) fn max_index(&self) -> usize {
        self.terms.last().map_or(0, |&(v, _)| v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SystemKind {
    BilinearMcCormick,
    DoubleMcCormick,
    HullExtended,
}

/// A finite list of `≥` inequalities over named variables.
///
/// The first `projected` variables are the coordinates of the set being
/// described; any remaining variables are auxiliary (the convex multipliers
/// of the hull formulation) and membership is decided by projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalitySystem {
    pub(crate) variables: Vec<String>,
    pub(crate) projected: usize,
    pub(crate) inequalities: Vec<LinearInequality>,
    pub(crate) kind: SystemKind,
}

impl InequalitySystem {
    pub(crate) fn new(
        variables: Vec<String>,
        projected: usize,
        inequalities: Vec<LinearInequality>,
        kind: SystemKind,
    ) -> Self {
        debug_assert!(projected <= variables.len());
        debug_assert!(inequalities.iter().all(|q| q.max_index() < variables.len()));
        Self { variables, projected, inequalities, kind }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn projected_variables(&self) -> &[String] {
        &self.variables[..self.projected]
    }

    pub fn inequalities(&self) -> &[LinearInequality] {
        &self.inequalities
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn has_auxiliary(&self) -> bool {
        self.projected < self.variables.len()
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_sorts_terms() {
        let q = LinearInequality::new([(2, 1.0), (0, 3.0), (2, 2.0)], 1.0).unwrap();
        assert_eq!(q.terms(), &[(0, 3.0), (2, 3.0)]);
        assert_eq!(q.coefficient(1), 0.0);
    }

    #[test]
    fn rejects_all_zero() {
        assert_eq!(LinearInequality::new([(0, 1.0), (0, -1.0)], 0.0), Err(Error::EmptyInequality));
    }

    #[test]
    fn slack_and_negation() {
        let q = LinearInequality::from_affine([(0, 1.0), (1, -2.0)], 3.0).unwrap();
        assert_eq!(q.rhs(), -3.0);
        assert_eq!(q.slack(&[1.0, 1.0]), 2.0);
        assert_eq!(q.negated().slack(&[1.0, 1.0]), -2.0);
    }
}
