//! Exact two-phase simplex over rationals.
//!
//! All variables are constrained nonnegative; rows may be `<=`, `>=`, or `=`.
//! Pivoting uses Bland's rule throughout, so the solver never cycles and the
//! returned basic feasible solution is deterministic for a given input.

use crate::rat::Rat;
use crate::Result;
use num::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            rel: Relation::Le,
            rhs,
        }
    }

    pub fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            rel: Relation::Ge,
            rhs,
        }
    }

    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            rel: Relation::Eq,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// m rows of length width+1 (rhs last), plus the solver keeps a cost row
    /// separately.
    rows: Vec<Vec<Rat>>,
    cost: Vec<Rat>,
    basis: Vec<usize>,
    width: usize,
    n_structural: usize,
    artificial_start: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &p;
        }
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for j in 0..=self.width {
                let delta = &factor * &self.rows[row][j];
                self.rows[i][j] -= delta;
            }
        }
        if !self.cost[col].is_zero() {
            let factor = self.cost[col].clone();
            for j in 0..=self.width {
                let delta = &factor * &self.rows[row][j];
                self.cost[j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: entering = lowest-index column with negative reduced
    /// cost; leaving = among minimum-ratio rows, the one whose basic variable
    /// has the lowest index. Returns false if the objective is unbounded.
    fn solve_min(&mut self, allowed: impl Fn(usize) -> bool) -> bool {
        loop {
            let entering = (0..self.width)
                .find(|&j| allowed(j) && self.cost[j].is_negative());
            let Some(col) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][col].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.rows[i][col];
                match &leaving {
                    None => leaving = Some((i, ratio)),
                    Some((best, best_ratio)) => {
                        if ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                        {
                            leaving = Some((i, ratio));
                        }
                    }
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    fn extract(&self) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); self.n_structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_structural {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

fn build_tableau(n: usize, constraints: &[Constraint]) -> Result<Tableau> {
    for c in constraints {
        if c.coeffs.len() != n {
            return Err(crate::Error::DimensionMismatch {
                left: n,
                right: c.coeffs.len(),
            });
        }
    }
    // Normalize every row to nonnegative rhs so slack/artificial setup is
    // uniform.
    let normalized: Vec<(Vec<Rat>, Relation, Rat)> = constraints
        .iter()
        .map(|c| {
            if c.rhs.is_negative() {
                let coeffs = c.coeffs.iter().map(|v| -v).collect();
                let rel = match c.rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (coeffs, rel, -&c.rhs)
            } else {
                (c.coeffs.clone(), c.rel, c.rhs.clone())
            }
        })
        .collect();

    let n_slack = normalized
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::Eq)
        .count();
    let n_artificial = normalized
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::Le)
        .count();
    let width = n + n_slack + n_artificial;
    let artificial_start = n + n_slack;

    let mut rows = Vec::with_capacity(normalized.len());
    let mut basis = Vec::with_capacity(normalized.len());
    let mut slack_at = n;
    let mut art_at = artificial_start;
    for (coeffs, rel, rhs) in &normalized {
        let mut row = vec![Rat::zero(); width + 1];
        row[..n].clone_from_slice(coeffs);
        row[width] = rhs.clone();
        match rel {
            Relation::Le => {
                row[slack_at] = Rat::one();
                basis.push(slack_at);
                slack_at += 1;
            }
            Relation::Ge => {
                row[slack_at] = -Rat::one();
                slack_at += 1;
                row[art_at] = Rat::one();
                basis.push(art_at);
                art_at += 1;
            }
            Relation::Eq => {
                row[art_at] = Rat::one();
                basis.push(art_at);
                art_at += 1;
            }
        }
        rows.push(row);
    }

    Ok(Tableau {
        rows,
        cost: vec![Rat::zero(); width + 1],
        basis,
        width,
        n_structural: n,
        artificial_start,
    })
}

/// Runs phase 1. Returns Ok(tableau) holding a basic feasible solution of the
/// original system with every artificial nonbasic or redundant row dropped,
/// or Ok(None) if the system is infeasible.
fn phase_one(n: usize, constraints: &[Constraint]) -> Result<Option<Tableau>> {
    let mut t = build_tableau(n, constraints)?;
    if t.artificial_start == t.width {
        return Ok(Some(t)); // all rows were Le: slack basis is already feasible
    }
    // Phase-1 objective: minimize the sum of artificials. Zero out the basic
    // artificial columns by subtracting their rows from the cost row.
    for j in t.artificial_start..t.width {
        t.cost[j] = Rat::one();
    }
    for i in 0..t.rows.len() {
        if t.basis[i] >= t.artificial_start {
            for j in 0..=t.width {
                let delta = t.rows[i][j].clone();
                t.cost[j] -= delta;
            }
        }
    }
    let finished = t.solve_min(|_| true);
    debug_assert!(finished, "phase-1 objective is bounded below by zero");
    // cost rhs now holds -(phase-1 optimum)
    if t.cost[t.width].is_negative() {
        return Ok(None);
    }
    // Drive any artificials still basic (at level zero) out of the basis.
    let mut drop_rows = Vec::new();
    for i in 0..t.rows.len() {
        if t.basis[i] < t.artificial_start {
            continue;
        }
        let pivot_col = (0..t.artificial_start).find(|&j| !t.rows[i][j].is_zero());
        match pivot_col {
            Some(col) => t.pivot(i, col),
            None => drop_rows.push(i), // redundant constraint
        }
    }
    for &i in drop_rows.iter().rev() {
        t.rows.remove(i);
        t.basis.remove(i);
    }
    Ok(Some(t))
}

/// Maximize `objective . x` subject to the constraints and `x >= 0`.
pub fn maximize(objective: &[Rat], constraints: &[Constraint]) -> Result<LpOutcome> {
    let n = objective.len();
    let Some(mut t) = phase_one(n, constraints)? else {
        return Ok(LpOutcome::Infeasible);
    };
    // Phase 2 minimizes -objective. Rebuild the cost row and zero out basic
    // columns.
    t.cost = vec![Rat::zero(); t.width + 1];
    for j in 0..n {
        t.cost[j] = -&objective[j];
    }
    for i in 0..t.rows.len() {
        let b = t.basis[i];
        if !t.cost[b].is_zero() {
            let factor = t.cost[b].clone();
            for j in 0..=t.width {
                let delta = &factor * &t.rows[i][j];
                t.cost[j] -= delta;
            }
        }
    }
    let art_start = t.artificial_start;
    if !t.solve_min(|j| j < art_start) {
        return Ok(LpOutcome::Unbounded);
    }
    let x = t.extract();
    let value = objective
        .iter()
        .zip(&x)
        .map(|(c, v)| c * v)
        .fold(Rat::zero(), |acc, v| acc + v);
    Ok(LpOutcome::Optimal { x, value })
}

/// Minimize `objective . x` subject to the constraints and `x >= 0`.
pub fn minimize(objective: &[Rat], constraints: &[Constraint]) -> Result<LpOutcome> {
    let negated: Vec<Rat> = objective.iter().map(|v| -v).collect();
    Ok(match maximize(&negated, constraints)? {
        LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
        other => other,
    })
}

/// A deterministic basic feasible solution of the system, if one exists.
pub fn feasible_point(n: usize, constraints: &[Constraint]) -> Result<Option<Vec<Rat>>> {
    Ok(phase_one(n, constraints)?.map(|t| t.extract()))
}
