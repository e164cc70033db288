//! Subgroup membership in `Z^window`, for checking generation claims about
//! the wreath families on a finite set of indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::words::Word;

use super::wreath::SupportVector;
use super::CoefficientError;

/// A subgroup of `Z^d`, stored as integer rows in echelon form with
/// positive pivots in strictly increasing columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    dim: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IntegerLattice {
    pub fn from_rows(dim: usize, rows: Vec<Vec<BigInt>>) -> IntegerLattice {
        let mut pending: Vec<Vec<BigInt>> = rows
            .into_iter()
            .inspect(|r| assert_eq!(r.len(), dim, "row length must match dimension"))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut echelon = Vec::new();
        for col in 0..dim {
            // Euclid on the column: repeatedly reduce by the smallest entry
            loop {
                let live: Vec<usize> = (0..pending.len())
                    .filter(|&i| !pending[i][col].is_zero())
                    .collect();
                if live.len() <= 1 {
                    break;
                }
                let pivot = *live.iter().min_by_key(|&&i| pending[i][col].abs()).unwrap();
                let pivot_row = pending[pivot].clone();
                for &i in &live {
                    if i == pivot {
                        continue;
                    }
                    let q = pending[i][col].div_floor(&pivot_row[col]);
                    for (x, p) in pending[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * p;
                    }
                }
            }
            if let Some(i) = (0..pending.len()).find(|&i| !pending[i][col].is_zero()) {
                let mut row = pending.swap_remove(i);
                if row[col].is_negative() {
                    row.iter_mut().for_each(|x| *x = -&*x);
                }
                echelon.push((col, row));
            }
            pending.retain(|r| r.iter().any(|x| !x.is_zero()));
        }
        IntegerLattice { dim, rows: echelon }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut rest = v.to_vec();
        for (col, row) in &self.rows {
            let (q, r) = rest[*col].div_rem(&row[*col]);
            if !r.is_zero() {
                return false;
            }
            for (x, p) in rest.iter_mut().zip(row) {
                *x -= &q * p;
            }
        }
        rest.iter().all(Zero::is_zero)
    }
}

fn to_row(v: &SupportVector, window: &[Word]) -> Result<Vec<BigInt>, CoefficientError> {
    if let Some(outside) = v.support().find(|w| !window.contains(w)) {
        return Err(CoefficientError::OutsideWindow(outside.to_string()));
    }
    Ok(window.iter().map(|w| v.entry(w)).collect())
}

/// Whether every target lies in the subgroup generated by `gens`, computed
/// exactly in `Z^window`. Supports that leave the window are an error.
pub fn lattice_generates(
    gens: &[SupportVector],
    targets: &[SupportVector],
    window: &[Word],
) -> Result<bool, CoefficientError> {
    let rows = gens
        .iter()
        .map(|g| to_row(g, window))
        .collect::<Result<Vec<_>, _>>()?;
    let targets = targets
        .iter()
        .map(|t| to_row(t, window))
        .collect::<Result<Vec<_>, _>>()?;
    let lattice = IntegerLattice::from_rows(window.len(), rows);
    Ok(targets.iter().all(|t| lattice.contains(t)))
}
