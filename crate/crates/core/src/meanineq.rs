//! The two-sided mean inequality for nonnegative matrices
//!
//! `phi = sum a_ij (r_i - rho)(c_j - gamma) >= e (e/v - rho)(e/w - gamma)`
//!
//! whenever every row sum `r_i >= 2 rho` and every column sum `c_j >= 2 gamma`,
//! and the classical `psi = sum a_ij r_i c_j >= e^3 / (v w)` it refines.
//! Everything is exact rational arithmetic.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::graph::BipartiteGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) is negative")]
    Negative { row: usize, col: usize },
    #[error("{0} must be nonnegative")]
    NegativeParameter(&'static str),
}

/// A `v x w` matrix of nonnegative rationals with cached margins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegMatrix {
    rows: Vec<Vec<BigRational>>,
    row_sums: Vec<BigRational>,
    col_sums: Vec<BigRational>,
    total: BigRational,
}

impl NonnegMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self, MatrixError> {
        let width = rows.first().map_or(0, Vec::len);
        if width == 0 {
            return Err(MatrixError::Empty);
        }
        let mut col_sums = alloc::vec![BigRational::zero(); width];
        let mut row_sums = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(MatrixError::Ragged { row: i, len: row.len(), expected: width });
            }
            let mut sum = BigRational::zero();
            for (j, a) in row.iter().enumerate() {
                if a.is_negative() {
                    return Err(MatrixError::Negative { row: i, col: j });
                }
                sum += a;
                col_sums[j] += a;
            }
            row_sums.push(sum);
        }
        let total = row_sums.iter().fold(BigRational::zero(), |acc, r| acc + r);
        Ok(NonnegMatrix { rows, row_sums, col_sums, total })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&a| BigRational::from_integer(BigInt::from(a))).collect())
            .collect();
        Self::new(rows)
    }

    /// The reduced 0/1 incidence matrix of a graph with both classes nonempty.
    pub fn incidence(g: &BipartiteGraph) -> Result<Self, MatrixError> {
        let rows = g
            .incidence_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|a| BigRational::from_integer(BigInt::from(a))).collect())
            .collect();
        Self::new(rows)
    }

    pub fn v(&self) -> usize {
        self.rows.len()
    }

    pub fn w(&self) -> usize {
        self.col_sums.len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn row_sums(&self) -> &[BigRational] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[BigRational] {
        &self.col_sums
    }

    /// Sum of all entries.
    pub fn total(&self) -> &BigRational {
        &self.total
    }

    fn weighted_sum(&self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (row, r) in self.rows.iter().zip(&self.row_sums) {
            for (a, c) in row.iter().zip(&self.col_sums) {
                if !a.is_zero() {
                    acc += a * f(r, c);
                }
            }
        }
        acc
    }
}

/// `sum a_ij (r_i - rho)(c_j - gamma)`.
pub fn phi(m: &NonnegMatrix, rho: &BigRational, gamma: &BigRational) -> BigRational {
    m.weighted_sum(|r, c| (r - rho) * (c - gamma))
}

/// `sum a_ij r_i c_j`.
pub fn psi(m: &NonnegMatrix) -> BigRational {
    m.weighted_sum(|r, c| r * c)
}

/// `e (e/v - rho)(e/w - gamma)`.
pub fn lower_bound(m: &NonnegMatrix, rho: &BigRational, gamma: &BigRational) -> BigRational {
    let e = m.total();
    let v = BigRational::from_integer(BigInt::from(m.v()));
    let w = BigRational::from_integer(BigInt::from(m.w()));
    e * (e / &v - rho) * (e / &w - gamma)
}

/// `e^3 / (v w)`.
pub fn psi_lower_bound(m: &NonnegMatrix) -> BigRational {
    let e = m.total();
    let vw = BigRational::from_integer(BigInt::from(m.v() * m.w()));
    e * e * e / vw
}

/// Right-hand side of the identity
/// `phi - psi = -gamma sum r_i^2 - rho sum c_j^2 + rho gamma e`.
pub fn phi_minus_psi(m: &NonnegMatrix, rho: &BigRational, gamma: &BigRational) -> BigRational {
    let squares = |xs: &[BigRational]| xs.iter().fold(BigRational::zero(), |acc, x| acc + x * x);
    -(gamma * squares(m.row_sums())) - rho * squares(m.col_sums()) + rho * gamma * m.total()
}

/// Outcome of [`check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IneqVerdict {
    pub phi: BigRational,
    pub rhs: BigRational,
    /// Every row sum `>= 2 rho` and every column sum `>= 2 gamma`.
    pub hypotheses_hold: bool,
    /// `phi >= rhs`.
    pub satisfied: bool,
    pub equality: bool,
}

pub fn check(m: &NonnegMatrix, rho: &BigRational, gamma: &BigRational) -> Result<IneqVerdict, MatrixError> {
    if rho.is_negative() {
        return Err(MatrixError::NegativeParameter("rho"));
    }
    if gamma.is_negative() {
        return Err(MatrixError::NegativeParameter("gamma"));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let (row_min, col_min) = (&two * rho, &two * gamma);
    let hypotheses_hold =
        m.row_sums().iter().all(|r| *r >= row_min) && m.col_sums().iter().all(|c| *c >= col_min);
    let phi = phi(m, rho, gamma);
    let rhs = lower_bound(m, rho, gamma);
    Ok(IneqVerdict {
        satisfied: phi >= rhs,
        equality: phi == rhs,
        phi,
        rhs,
        hypotheses_hold,
    })
}

/// Searches `(rho, gamma)` on the grid of multiples of `1/denominator` for a
/// pair meeting the weakened hypotheses (row sums `>= rho`, column sums
/// `>= gamma`) at which the inequality fails. Returns the first hit in
/// `(rho, gamma)` order.
pub fn weak_hypothesis_violation(
    m: &NonnegMatrix,
    denominator: u32,
) -> Option<(BigRational, BigRational)> {
    let den = BigInt::from(denominator.max(1));
    let grid = |limit: &BigRational| -> Vec<BigRational> {
        let steps = (limit * BigRational::from_integer(den.clone())).floor().to_integer();
        let mut out = Vec::new();
        let mut k = BigInt::zero();
        while k <= steps {
            out.push(BigRational::new(k.clone(), den.clone()));
            k += 1;
        }
        out
    };
    let row_min = m.row_sums().iter().min()?.clone();
    let col_min = m.col_sums().iter().min()?.clone();
    let gammas = grid(&col_min);
    for rho in grid(&row_min) {
        for gamma in &gammas {
            let verdict = check(m, &rho, gamma).ok()?;
            if !verdict.satisfied {
                return Some((rho, gamma.clone()));
            }
        }
    }
    None
}
