//! Dense two-phase tableau simplex with Bland's rule, generic over the
//! scalar field. Exact rationals and `f64` (with a pivot tolerance) both
//! implement [`Scalar`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Magnitudes at or below this are treated as zero when choosing pivots.
    fn tolerance() -> Self;
    fn abs(&self) -> Self;

    /// A column whose reduced cost is below minus this, with no positive
    /// entry, proves unboundedness; milder ones are treated as roundoff.
    fn unbounded_tolerance() -> Self {
        Self::tolerance()
    }

    fn is_positive(&self) -> bool {
        *self > Self::tolerance()
    }

    fn is_negative(&self) -> bool {
        *self < -Self::tolerance()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn tolerance() -> Self {
        1e-11
    }
    fn unbounded_tolerance() -> Self {
        1e-7
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        BigRational::from_integer(BigInt::from(1))
    }
    fn tolerance() -> Self {
        <BigRational as Zero>::zero()
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint<T> {
    pub coefficients: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

/// `minimize objective · x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
}

#[derive(Debug, Clone)]
pub struct LpOptimum<T> {
    pub x: Vec<T>,
    pub objective: T,
    /// One multiplier per constraint, signed for the minimization form:
    /// `<=` rows get `y <= 0`, `>=` rows `y >= 0`.
    pub duals: Vec<T>,
    pub pivots: usize,
}

const MAX_PIVOTS: usize = 200_000;
/// Inexact tableaux are rebuilt from the original rows this often.
const REFACTOR_EVERY: usize = 20;
/// Inexact runs fall back to Bland's rule after this many pivots.
const DANTZIG_PIVOTS: usize = 5_000;

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    z: Vec<T>,
    z_value: T,
    basis: Vec<usize>,
    artificial_from: usize,
    pivots: usize,
    initial_rows: Vec<Vec<T>>,
    initial_rhs: Vec<T>,
    cost: Vec<T>,
}

impl<T: Scalar> Tableau<T> {
    fn exact() -> bool {
        T::tolerance() == T::zero()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        self.pivots += 1;
        self.eliminate(r, c);
        let f = self.z[c].clone();
        if f != T::zero() {
            for (v, pv) in self.z.iter_mut().zip(&self.rows[r]) {
                *v = v.clone() - f.clone() * pv.clone();
            }
            self.z[c] = T::zero();
            self.z_value = self.z_value.clone() - f * self.rhs[r].clone();
        }
        self.basis[r] = c;
        if !Self::exact() && self.pivots.is_multiple_of(REFACTOR_EVERY) {
            self.refactor();
        }
    }

    fn eliminate(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        self.rhs[r] = self.rhs[r].clone() / p;
        self.rows[r][c] = T::one();
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f == T::zero() {
                continue;
            }
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                *v = v.clone() - f.clone() * pv.clone();
            }
            self.rows[i][c] = T::zero();
            self.rhs[i] = self.rhs[i].clone() - f * pivot_rhs.clone();
        }
    }

    /// Reduced costs of `cost` against the current basis.
    fn set_cost(&mut self, cost: Vec<T>) {
        self.z = cost.clone();
        self.z_value = T::zero();
        for i in 0..self.rows.len() {
            let cb = cost[self.basis[i]].clone();
            if cb == T::zero() {
                continue;
            }
            for (zj, a) in self.z.iter_mut().zip(&self.rows[i]) {
                *zj = zj.clone() - cb.clone() * a.clone();
            }
            self.z_value = self.z_value.clone() - cb * self.rhs[i].clone();
        }
        self.cost = cost;
    }

    /// Rebuilds the tableau for the current basis from the original rows,
    /// with partial pivoting, to shed accumulated roundoff.
    fn refactor(&mut self) {
        let m = self.rows.len();
        let mut rows = self.initial_rows.clone();
        let mut rhs = self.initial_rhs.clone();
        let mut assigned = vec![false; m];
        let mut new_basis = vec![usize::MAX; m];
        let old_basis = self.basis.clone();
        for &c in &old_basis {
            let best = (0..m).filter(|&i| !assigned[i]).max_by(|&a, &b| {
                rows[a][c]
                    .abs()
                    .partial_cmp(&rows[b][c].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            let Some(r) = best else { return };
            if !rows[r][c].abs().is_positive() {
                // numerically singular basis; keep the running tableau
                return;
            }
            assigned[r] = true;
            new_basis[r] = c;
            std::mem::swap(&mut self.rows, &mut rows);
            std::mem::swap(&mut self.rhs, &mut rhs);
            self.eliminate(r, c);
            std::mem::swap(&mut self.rows, &mut rows);
            std::mem::swap(&mut self.rhs, &mut rhs);
        }
        self.rows = rows;
        self.rhs = rhs;
        self.basis = new_basis;
        let cost = std::mem::take(&mut self.cost);
        self.set_cost(cost);
    }

    fn entering(&self, allowed: usize) -> Vec<usize> {
        let mut candidates: Vec<usize> =
            (0..allowed).filter(|&j| self.z[j].is_negative()).collect();
        if !Self::exact() && self.pivots < DANTZIG_PIVOTS {
            candidates.sort_by(|&a, &b| {
                self.z[a]
                    .partial_cmp(&self.z[b])
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        }
        candidates
    }

    /// Simplex iterations over columns `< allowed`: Bland's rule in exact
    /// arithmetic, Dantzig pricing with a Harris ratio test otherwise.
    fn optimize(&mut self, allowed: usize) -> Result<()> {
        let mut refreshed = false;
        'pivoting: loop {
            if self.pivots > MAX_PIVOTS {
                return Err(Error::Numeric(format!(
                    "simplex exceeded {MAX_PIVOTS} pivots"
                )));
            }
            for c in self.entering(allowed) {
                if let Some(r) = self.ratio_test(c) {
                    self.pivot(r, c);
                    refreshed = false;
                    continue 'pivoting;
                }
                if Self::exact() || self.z[c] < -T::unbounded_tolerance() {
                    if !Self::exact() && !refreshed {
                        break;
                    }
                    return Err(Error::Unbounded);
                }
            }
            if Self::exact() || refreshed {
                return Ok(());
            }
            // confirm optimality (or unboundedness) on a clean tableau
            self.refactor();
            refreshed = true;
        }
    }

    /// Leaving row for entering column `c`.
    fn ratio_test(&self, c: usize) -> Option<usize> {
        let rhs = |i: usize| {
            if self.rhs[i] < T::zero() {
                T::zero()
            } else {
                self.rhs[i].clone()
            }
        };
        let eligible = (0..self.rows.len()).filter(|&i| self.rows[i][c].is_positive());
        if Self::exact() {
            let mut best: Option<(usize, T)> = None;
            for i in eligible {
                let ratio = rhs(i) / self.rows[i][c].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            return best.map(|(r, _)| r);
        }
        // Harris: relaxed minimum ratio, then the largest pivot within it
        let tol = T::tolerance();
        let bound = eligible
            .clone()
            .map(|i| (rhs(i) + tol.clone()) / self.rows[i][c].clone())
            .fold(None, |m: Option<T>, r| match m {
                Some(m) if m <= r => Some(m),
                _ => Some(r),
            })?;
        eligible
            .filter(|&i| rhs(i) / self.rows[i][c].clone() <= bound)
            .fold(None, |best: Option<usize>, i| match best {
                Some(b) if self.rows[b][c] >= self.rows[i][c] => Some(b),
                _ => Some(i),
            })
    }
}

pub fn solve<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpOptimum<T>> {
    let n = lp.objective.len();
    let m = lp.constraints.len();
    for (i, con) in lp.constraints.iter().enumerate() {
        if con.coefficients.len() != n {
            return Err(Error::InvalidParameter(format!(
                "constraint {i} has {} coefficients, objective has {n}",
                con.coefficients.len()
            )));
        }
    }

    // normalize to nonnegative right-hand sides
    let mut flipped = vec![false; m];
    let mut relations = Vec::with_capacity(m);
    for (i, con) in lp.constraints.iter().enumerate() {
        flipped[i] = con.rhs < T::zero();
        relations.push(match (con.relation, flipped[i]) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        });
    }
    let slack_count = relations.iter().filter(|r| **r != Relation::Eq).count();
    let art_count = relations.iter().filter(|r| **r != Relation::Le).count();
    let width = n + slack_count + art_count;
    let artificial_from = n + slack_count;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    // column carrying +e_i in the initial tableau, for dual recovery
    let mut identity_col = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n, artificial_from);
    for (i, con) in lp.constraints.iter().enumerate() {
        let sign = |v: &T| if flipped[i] { -v.clone() } else { v.clone() };
        let mut row: Vec<T> = con.coefficients.iter().map(sign).collect();
        row.resize(width, T::zero());
        match relations[i] {
            Relation::Le => {
                row[next_slack] = T::one();
                basis.push(next_slack);
                identity_col.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -T::one();
                next_slack += 1;
                row[next_art] = T::one();
                basis.push(next_art);
                identity_col.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = T::one();
                basis.push(next_art);
                identity_col.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
        rhs.push(sign(&con.rhs));
    }

    let mut t = Tableau {
        initial_rows: rows.clone(),
        initial_rhs: rhs.clone(),
        rows,
        rhs,
        z: vec![T::zero(); width],
        z_value: T::zero(),
        basis,
        artificial_from,
        pivots: 0,
        cost: vec![T::zero(); width],
    };

    if art_count > 0 {
        // phase 1: minimize the sum of artificials
        let mut cost = vec![T::zero(); width];
        for c in cost.iter_mut().skip(artificial_from) {
            *c = T::one();
        }
        t.set_cost(cost);
        t.optimize(artificial_from)?;
        let scale = t.rhs.iter().fold(T::one(), |a, b| {
            let b = b.abs();
            if b > a {
                b
            } else {
                a
            }
        });
        if (-t.z_value.clone()).is_positive() && (-t.z_value.clone()) > T::tolerance() * scale {
            return Err(Error::Infeasible);
        }
        for i in 0..m {
            if t.basis[i] >= t.artificial_from {
                if let Some(c) =
                    (0..artificial_from).find(|&j| !t.rows[i][j].abs().le(&T::tolerance()))
                {
                    t.pivot(i, c);
                }
                // otherwise the row is redundant and the artificial stays at zero
            }
        }
    }

    // phase 2
    let mut cost = vec![T::zero(); width];
    cost[..n].clone_from_slice(&lp.objective);
    t.set_cost(cost);
    t.optimize(artificial_from)?;

    let mut x = vec![T::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs[i].clone();
        }
    }
    let objective = lp
        .objective
        .iter()
        .zip(&x)
        .fold(T::zero(), |acc, (c, v)| acc + c.clone() * v.clone());
    let duals = (0..m)
        .map(|i| {
            let y = -t.z[identity_col[i]].clone();
            if flipped[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    Ok(LpOptimum {
        x,
        objective,
        duals,
        pivots: t.pivots,
    })
}

/// Largest violation of primal feasibility, dual feasibility, and the
/// duality gap, recomputed from the original data. Zero for exact optima.
pub fn optimality_residual<T: Scalar>(lp: &LinearProgram<T>, opt: &LpOptimum<T>) -> T {
    let mut worst = T::zero();
    let mut bump = |v: T| {
        if v > worst {
            worst = v;
        }
    };
    for xv in &opt.x {
        bump(-xv.clone());
    }
    for (con, y) in lp.constraints.iter().zip(&opt.duals) {
        let lhs = con
            .coefficients
            .iter()
            .zip(&opt.x)
            .fold(T::zero(), |acc, (a, v)| acc + a.clone() * v.clone());
        match con.relation {
            Relation::Le => {
                bump(lhs - con.rhs.clone());
                bump(y.clone());
            }
            Relation::Ge => {
                bump(con.rhs.clone() - lhs);
                bump(-y.clone());
            }
            Relation::Eq => bump((lhs - con.rhs.clone()).abs()),
        }
    }
    for j in 0..lp.objective.len() {
        let reduced = lp
            .constraints
            .iter()
            .zip(&opt.duals)
            .fold(lp.objective[j].clone(), |acc, (con, y)| {
                acc - y.clone() * con.coefficients[j].clone()
            });
        bump(-reduced);
    }
    let dual_value = lp
        .constraints
        .iter()
        .zip(&opt.duals)
        .fold(T::zero(), |acc, (con, y)| acc + con.rhs.clone() * y.clone());
    bump((dual_value - opt.objective.clone()).abs());
    worst
}
