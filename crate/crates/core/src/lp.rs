//! Dense exact simplex over the rationals with Bland's rule.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Optimum of `max cᵀx` subject to `Ax <= b`, `x >= 0`, with `b >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Q,
    pub primal: Vec<Q>,
    /// Optimal multipliers of the constraints: `y >= 0`, `Aᵀy >= c`, `bᵀy = value`.
    pub dual: Vec<Q>,
    pub pivots: usize,
}

/// Solves from the slack basis, which is feasible because `b >= 0`.
/// Bland's rule picks the lowest-index improving column and breaks ratio
/// ties by lowest basic index, so the method terminates without cycling.
pub fn maximize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidFunction("LP dimensions disagree".into()));
    }
    if b.iter().any(|x| x.is_negative()) {
        return Err(Error::InvalidFunction("LP right-hand side must be nonnegative".into()));
    }
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut row = vec![Q::zero(); width];
            row[..n].clone_from_slice(&a[i]);
            row[n + i] = Q::from_integer(1.into());
            row[width - 1] = b[i].clone();
            row
        })
        .collect();
    let mut z = vec![Q::zero(); width];
    for j in 0..n {
        z[j] = -c[j].clone();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0;
    loop {
        let Some(col) = (0..n + m).find(|&j| z[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][col].is_positive() {
                let r = &t[i][width - 1] / &t[i][col];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => r < *lr || (r == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, r));
                }
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::InvalidFunction("LP is unbounded".into()));
        };
        let p = t[row][col].clone();
        for x in t[row].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, y) in r.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        let f = z[col].clone();
        for (x, y) in z.iter_mut().zip(&pivot_row) {
            *x -= &f * y;
        }
        basis[row] = col;
        pivots += 1;
    }
    let mut primal = vec![Q::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            primal[j] = t[i][width - 1].clone();
        }
    }
    let dual = z[n..n + m].to_vec();
    Ok(LpSolution {
        value: z[width - 1].clone(),
        primal,
        dual,
        pivots,
    })
}
