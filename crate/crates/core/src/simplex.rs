//! Dense exact-rational simplex for `max c.x : Ax <= b, x >= 0` with
//! `b >= 0`, so the slack basis is feasible and no phase-one is needed.
//!
//! Bland's rule (lowest entering column index, ties on the ratio test
//! broken toward the lowest basic variable index) guarantees termination
//! and makes the returned vertex deterministic. Everything is exact, so
//! the reported duals satisfy complementary slackness as identities.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

pub struct StandardLp {
    /// Objective coefficients, one per decision variable.
    pub objective: Vec<Rat>,
    /// Constraint rows, each `objective.len()` long.
    pub rows: Vec<Vec<Rat>>,
    /// Right-hand sides, all nonnegative.
    pub rhs: Vec<Rat>,
}

pub struct LpSolution {
    pub value: Rat,
    /// Optimal decision variables.
    pub x: Vec<Rat>,
    /// Optimal dual multipliers, one per constraint (the objective-row
    /// entries under the slack columns at optimality).
    pub duals: Vec<Rat>,
}

pub fn solve_max(lp: &StandardLp) -> Result<LpSolution> {
    let nv = lp.objective.len();
    let m = lp.rows.len();
    debug_assert!(lp.rows.iter().all(|r| r.len() == nv));
    debug_assert_eq!(lp.rhs.len(), m);
    debug_assert!(lp.rhs.iter().all(|b| !b.is_negative()));

    let ncols = nv + m; // decision vars then slacks
    // tableau rows: [vars | slacks | rhs]; objective row holds z_j - c_j.
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row: Vec<Rat> = Vec::with_capacity(ncols + 1);
        row.extend(lp.rows[i].iter().cloned());
        for j in 0..m {
            row.push(if i == j {
                Rat::from_integer(1.into())
            } else {
                Rat::zero()
            });
        }
        row.push(lp.rhs[i].clone());
        tab.push(row);
    }
    let mut obj: Vec<Rat> = lp.objective.iter().map(|c| -c.clone()).collect();
    obj.extend(std::iter::repeat_with(Rat::zero).take(m + 1));
    tab.push(obj);

    let mut basis: Vec<usize> = (nv..nv + m).collect();

    loop {
        // Bland: entering column = lowest index with negative reduced cost.
        let Some(enter) = (0..ncols).find(|&j| tab[m][j].is_negative()) else {
            break;
        };
        // Ratio test; ties toward the lowest basic variable index.
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    let cur = &tab[i][ncols] * &tab[l][enter];
                    let best = &tab[l][ncols] * &tab[i][enter];
                    cur < best || (cur == best && basis[i] < basis[l])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        let Some(leave) = leave else {
            return Err(Error::Contract(
                "linear program is unbounded; the empty-set column should bound it".into(),
            ));
        };

        // Pivot on (leave, enter).
        let pivot = tab[leave][enter].clone();
        for x in tab[leave].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..=m {
            if i == leave || tab[i][enter].is_zero() {
                continue;
            }
            let factor = tab[i][enter].clone();
            for j in 0..=ncols {
                let delta = &factor * &tab[leave][j];
                tab[i][j] -= delta;
            }
        }
        basis[leave] = enter;
    }

    let mut x = vec![Rat::zero(); nv];
    for i in 0..m {
        if basis[i] < nv {
            x[basis[i]] = tab[i][ncols].clone();
        }
    }
    let duals = (0..m).map(|i| tab[m][nv + i].clone()).collect();
    Ok(LpSolution {
        value: tab[m][ncols].clone(),
        x,
        duals,
    })
}
