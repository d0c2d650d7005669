//! Dense two-phase simplex with Bland's rule, generic over the scalar.
//!
//! The same tableau code runs in `f64` (pivot tolerance 1e-9) and in exact
//! `BigRational` arithmetic; rational runs deliver unambiguous verdicts for
//! membership and separation certificates near hull boundaries. Bland's rule
//! (smallest eligible column, ties on the smallest basic variable) makes the
//! solver deterministic and cycle-free, at the cost of more pivots than
//! steepest-edge variants — irrelevant at the sizes handled here.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

pub type BigRational = Ratio<BigInt>;

const MAX_VARS: usize = 10_000;
const MAX_CONSTRAINTS: usize = 10_000;

/// Scalar the simplex runs in: an ordered field with a pivot tolerance.
pub trait LpScalar:
    Clone
    + std::fmt::Debug
    + PartialOrd
    + num_traits::Zero
    + num_traits::One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Div<Output = Self>
{
    /// Strictly positive beyond the pivot tolerance.
    fn is_pos(&self) -> bool;
    /// Strictly negative beyond the pivot tolerance.
    fn is_neg(&self) -> bool;
    fn is_nonzero(&self) -> bool {
        self.is_pos() || self.is_neg()
    }
    /// Exact embedding of an f64 (dyadic rational).
    fn from_f64_exact(x: f64) -> Self;
    fn to_f64_lossy(&self) -> f64;
}

impl LpScalar for f64 {
    fn is_pos(&self) -> bool {
        *self > 1e-9
    }
    fn is_neg(&self) -> bool {
        *self < -1e-9
    }
    fn from_f64_exact(x: f64) -> Self {
        x
    }
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl LpScalar for BigRational {
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn from_f64_exact(x: f64) -> Self {
        BigRational::from_float(x).expect("finite f64")
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint<S> {
    pub coeffs: Vec<S>,
    pub cmp: Cmp,
    pub rhs: S,
}

impl<S> Constraint<S> {
    pub fn new(coeffs: Vec<S>, cmp: Cmp, rhs: S) -> Self {
        Constraint { coeffs, cmp, rhs }
    }
}

/// Maximize `objective · x` subject to the constraints, `x >= 0`.
#[derive(Clone, Debug)]
pub struct LpProblem<S> {
    pub num_vars: usize,
    pub objective: Vec<S>,
    pub constraints: Vec<Constraint<S>>,
}

#[derive(Clone, Debug)]
pub struct LpSolution<S> {
    pub x: Vec<S>,
    pub objective: S,
}

#[derive(Clone, Debug)]
pub enum LpOutcome<S> {
    Optimal(LpSolution<S>),
    Infeasible,
    Unbounded,
}

impl<S> LpOutcome<S> {
    pub fn optimal(self) -> Option<LpSolution<S>> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    basis: Vec<usize>,
}

enum Step {
    Optimal,
    Unbounded,
}

impl<S: LpScalar> Tableau<S> {
    fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    fn pivot(&mut self, r: usize, c: usize, cost: &mut [S], obj: &mut S) {
        let pivot = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / pivot.clone();
        }
        self.rhs[r] = self.rhs[r].clone() / pivot;
        for i in 0..self.rows.len() {
            if i == r || !self.rows[i][c].is_nonzero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.ncols() {
                let d = f.clone() * self.rows[r][j].clone();
                self.rows[i][j] = self.rows[i][j].clone() - d;
            }
            self.rhs[i] = self.rhs[i].clone() - f * self.rhs[r].clone();
        }
        let f = cost[c].clone();
        if f.is_nonzero() {
            for j in 0..self.ncols() {
                let d = f.clone() * self.rows[r][j].clone();
                cost[j] = cost[j].clone() - d;
            }
            *obj = obj.clone() + f * self.rhs[r].clone();
        }
        self.basis[r] = c;
    }

    /// Reduced costs and objective value of `cost` under the current basis.
    fn reduce(&self, cost: &[S]) -> (Vec<S>, S) {
        let mut reduced = cost.to_vec();
        let mut obj = S::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b].clone();
            if !cb.is_nonzero() {
                continue;
            }
            for j in 0..self.ncols() {
                let d = cb.clone() * self.rows[i][j].clone();
                reduced[j] = reduced[j].clone() - d;
            }
            obj = obj + cb * self.rhs[i].clone();
        }
        (reduced, obj)
    }

    /// Simplex iterations under Bland's rule until optimal or unbounded.
    fn run(&mut self, cost: &mut Vec<S>, obj: &mut S) -> Step {
        loop {
            // Entering: smallest column with positive reduced cost.
            let Some(c) = (0..self.ncols()).find(|&j| cost[j].is_pos()) else {
                return Step::Optimal;
            };
            // Leaving: minimum ratio, ties broken on the smallest basic var.
            let mut best: Option<(S, usize, usize)> = None; // (ratio, basisvar, row)
            for i in 0..self.rows.len() {
                if !self.rows[i][c].is_pos() {
                    continue;
                }
                let ratio = self.rhs[i].clone() / self.rows[i][c].clone();
                let replace = match &best {
                    None => true,
                    Some((r, bv, _)) => {
                        ratio < *r || (!(ratio > *r) && self.basis[i] < *bv)
                    }
                };
                if replace {
                    best = Some((ratio, self.basis[i], i));
                }
            }
            let Some((_, _, r)) = best else {
                return Step::Unbounded;
            };
            self.pivot(r, c, cost, obj);
        }
    }
}

/// Solve the LP. Deterministic; exact when `S` is rational.
pub fn lp_solve<S: LpScalar>(p: &LpProblem<S>) -> Result<LpOutcome<S>> {
    let n = p.num_vars;
    let m = p.constraints.len();
    if n > MAX_VARS || m > MAX_CONSTRAINTS {
        return Err(Error::LpTooLarge {
            vars: n,
            constraints: m,
        });
    }
    if p.objective.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.objective.len(),
        });
    }
    for c in &p.constraints {
        if c.coeffs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: c.coeffs.len(),
            });
        }
    }

    // Normalize to nonnegative right-hand sides.
    let rows_in: Vec<(Vec<S>, Cmp, S)> = p
        .constraints
        .iter()
        .map(|c| {
            if c.rhs.is_neg() {
                let coeffs = c.coeffs.iter().map(|v| -v.clone()).collect();
                let cmp = match c.cmp {
                    Cmp::Le => Cmp::Ge,
                    Cmp::Eq => Cmp::Eq,
                    Cmp::Ge => Cmp::Le,
                };
                (coeffs, cmp, -c.rhs.clone())
            } else {
                (c.coeffs.clone(), c.cmp, c.rhs.clone())
            }
        })
        .collect();

    let n_slack = rows_in
        .iter()
        .filter(|(_, cmp, _)| *cmp != Cmp::Eq)
        .count();
    let n_art = rows_in
        .iter()
        .filter(|(_, cmp, _)| *cmp != Cmp::Le)
        .count();
    let art_start = n + n_slack;
    let ncols = n + n_slack + n_art;

    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
    };
    let (mut next_slack, mut next_art) = (n, art_start);
    for (coeffs, cmp, rhs) in rows_in {
        let mut row = vec![S::zero(); ncols];
        row[..n].clone_from_slice(&coeffs);
        let basic = match cmp {
            Cmp::Le => {
                row[next_slack] = S::one();
                next_slack += 1;
                next_slack - 1
            }
            Cmp::Ge => {
                row[next_slack] = -S::one();
                next_slack += 1;
                row[next_art] = S::one();
                next_art += 1;
                next_art - 1
            }
            Cmp::Eq => {
                row[next_art] = S::one();
                next_art += 1;
                next_art - 1
            }
        };
        tab.rows.push(row);
        tab.rhs.push(rhs);
        tab.basis.push(basic);
    }

    // Phase 1: maximize minus the sum of artificials.
    if n_art > 0 {
        let mut phase1 = vec![S::zero(); ncols];
        for c in phase1.iter_mut().skip(art_start) {
            *c = -S::one();
        }
        let (mut cost, mut obj) = tab.reduce(&phase1);
        match tab.run(&mut cost, &mut obj) {
            Step::Unbounded => unreachable!("phase-1 objective is bounded by zero"),
            Step::Optimal => {}
        }
        if obj.is_neg() {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive leftover artificials out of the basis; rows that offer no
        // structural pivot are redundant and dropped.
        let mut drop_rows = Vec::new();
        for i in 0..tab.rows.len() {
            if tab.basis[i] < art_start {
                continue;
            }
            match (0..art_start).find(|&j| tab.rows[i][j].is_nonzero()) {
                Some(j) => {
                    let mut dummy_cost = vec![S::zero(); ncols];
                    let mut dummy_obj = S::zero();
                    tab.pivot(i, j, &mut dummy_cost, &mut dummy_obj);
                }
                None => drop_rows.push(i),
            }
        }
        for &i in drop_rows.iter().rev() {
            tab.rows.remove(i);
            tab.rhs.remove(i);
            tab.basis.remove(i);
        }
        // Artificial columns are gone for good.
        for row in &mut tab.rows {
            row.truncate(art_start);
        }
    }

    // Phase 2.
    let mut phase2 = vec![S::zero(); art_start];
    phase2[..n].clone_from_slice(&p.objective);
    let (mut cost, mut obj) = tab.reduce(&phase2);
    if let Step::Unbounded = tab.run(&mut cost, &mut obj) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut x = vec![S::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rhs[i].clone();
        }
    }
    let objective = p
        .objective
        .iter()
        .zip(&x)
        .fold(S::zero(), |acc, (c, v)| acc + c.clone() * v.clone());
    Ok(LpOutcome::Optimal(LpSolution { x, objective }))
}
