//! Exact Gaussian elimination over a field, first-nonzero pivoting.

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub enum LinearOutcome<F> {
    /// A particular solution (free variables set to zero) and the dimension
    /// of the kernel.
    Solved { solution: Vec<F>, rank: usize, kernel_dim: usize },
    Inconsistent { rank: usize },
}

impl<F> LinearOutcome<F> {
    pub fn kernel_dim(&self) -> Option<usize> {
        match self {
            Self::Solved { kernel_dim, .. } => Some(*kernel_dim),
            Self::Inconsistent { .. } => None,
        }
    }
}

/// Solves `A x = b` with `A` given row-major (`rows[i].len() == ncols`).
pub fn solve<F: Field>(rows: Vec<Vec<F>>, rhs: Vec<F>, ncols: usize) -> LinearOutcome<F> {
    debug_assert_eq!(rows.len(), rhs.len());
    let mut aug: Vec<Vec<F>> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            r.resize(ncols, F::zero());
            r.push(b);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..aug.len()).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(row, p);
        let inv = aug[row][col].inv_ref().expect("pivot is nonzero");
        for x in &mut aug[row][col..=ncols] {
            *x = x.mul_ref(&inv);
        }
        let pivot_row = aug[row].clone();
        for (r, other) in aug.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for k in col..=ncols {
                if !pivot_row[k].is_zero() {
                    other[k] = other[k].sub_ref(&factor.mul_ref(&pivot_row[k]));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == aug.len() {
            break;
        }
    }
    let rank = pivots.len();
    if aug[rank..].iter().any(|r| !r[ncols].is_zero()) {
        return LinearOutcome::Inconsistent { rank };
    }
    let mut solution = vec![F::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        solution[c] = aug[r][ncols].clone();
    }
    LinearOutcome::Solved { solution, rank, kernel_dim: ncols - rank }
}
