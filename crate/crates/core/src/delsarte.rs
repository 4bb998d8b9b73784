//! Krawtchouk polynomials over a real alphabet parameter and the finite
//! linear program that bounds `α(G(n, d))` from above.
//!
//! The LP is `min H(0)` over `H(x) = Σ_ℓ Ĥ_ℓ K_ℓ(x)` with `Ĥ_0 = 1`,
//! `Ĥ_ℓ >= 0` and `H(x) <= 0` at every integer `x` in `[d, n]`. It is solved
//! in the scaled variables `y_ℓ = Ĥ_ℓ K_ℓ(0)`, where every constraint
//! coefficient `K_ℓ(x) / K_ℓ(0)` has magnitude at most one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::simplex::{optimality_residual, solve, Constraint, LinearProgram, Relation};
use crate::spectral::eigenspace_constants;

/// Largest length the dense LP accepts.
pub const MAX_LP_LENGTH: usize = 128;

const CERTIFICATE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KrawtchoukParams {
    pub n: usize,
    pub q_prime: f64,
}

impl KrawtchoukParams {
    pub fn new(n: usize, q_prime: f64) -> Result<Self> {
        if n == 0 || n > MAX_LP_LENGTH {
            return Err(Error::InvalidParameter(format!(
                "Krawtchouk length must lie in 1..={MAX_LP_LENGTH}, got {n}"
            )));
        }
        if !(q_prime.is_finite() && q_prime > 1.0) {
            return Err(Error::Domain(format!("q' must exceed 1, got {q_prime}")));
        }
        Ok(KrawtchoukParams { n, q_prime })
    }
}

/// Neumaier's compensated sum.
fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let s = sum + t;
        comp += if sum.abs() >= t.abs() {
            (sum - s) + t
        } else {
            (t - s) + sum
        };
        sum = s;
    }
    sum + comp
}

/// `x (x−1) ... (x−j+1) / j!` for real `x`.
fn generalized_binomial(x: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (x - i as f64) / (i + 1) as f64)
}

/// `K_ℓ(x) = Σ_j C(x, j) C(n−x, ℓ−j) (−1)^j (q′−1)^(ℓ−j)`.
pub fn krawtchouk(ell: usize, x: f64, params: &KrawtchoukParams) -> Result<f64> {
    if ell > params.n {
        return Err(Error::InvalidParameter(format!(
            "Krawtchouk degree {ell} exceeds n={}",
            params.n
        )));
    }
    let n = params.n as f64;
    let w = params.q_prime - 1.0;
    Ok(compensated_sum((0..=ell).map(|j| {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sign * generalized_binomial(x, j)
            * generalized_binomial(n - x, ell - j)
            * w.powi((ell - j) as i32)
    })))
}

/// An optimal LP point with its certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LPSolution {
    pub n: usize,
    pub d: usize,
    pub q_prime: f64,
    /// `Ĥ_0, ..., Ĥ_n` with `Ĥ_0 = 1`.
    pub coefficients: Vec<f64>,
    /// `A_LP1(n, d) = H(0)`.
    pub objective: f64,
    /// `(x, H(x))` for every constrained `x`.
    pub certificate: Vec<(usize, f64)>,
    /// Dual certificate: a weight per constrained `x` (a relaxed distance
    /// distribution) whose total plus one matches the objective.
    pub duals: Vec<f64>,
    /// Optimality residual of the scaled LP as returned by the simplex.
    pub residual: f64,
}

impl LPSolution {
    /// `H(x)` re-evaluated from the coefficients.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let p = KrawtchoukParams::new(self.n, self.q_prime)?;
        let terms = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(ell, h)| Ok(h * krawtchouk(ell, x, &p)?))
            .collect::<Result<Vec<f64>>>()?;
        Ok(compensated_sum(terms))
    }

    /// Re-checks nonnegativity, every constraint, and the objective.
    pub fn verify(&self) -> Result<()> {
        let tol = CERTIFICATE_TOLERANCE * self.objective.abs().max(1.0);
        if (self.coefficients[0] - 1.0).abs() > 1e-15 {
            return Err(Error::Numeric("leading coefficient is not 1".into()));
        }
        if let Some((ell, h)) = self
            .coefficients
            .iter()
            .enumerate()
            .find(|(_, h)| **h < -1e-12)
        {
            return Err(Error::Numeric(format!(
                "coefficient {ell} is negative: {h}"
            )));
        }
        for x in self.d..=self.n {
            let value = self.evaluate(x as f64)?;
            if value > tol {
                return Err(Error::Numeric(format!("H({x}) = {value} > 0")));
            }
        }
        let h0 = self.evaluate(0.0)?;
        if (h0 - self.objective).abs() > tol {
            return Err(Error::Numeric(format!(
                "objective {} disagrees with H(0) = {h0}",
                self.objective
            )));
        }
        Ok(())
    }
}

/// `max Σ_x w_x` subject to `Σ_x w_x K_ℓ(x)/K_ℓ(0) >= −1` for `ℓ >= 1`: the
/// distance-distribution dual, which starts feasible at `w = 0`. Its
/// multipliers are the scaled polynomial coefficients `y`.
fn solve_distance_form(normalized: &[Vec<f64>], n: usize) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let lp = LinearProgram {
        objective: vec![-1.0; normalized.len()],
        constraints: (0..n)
            .map(|ell| Constraint {
                coefficients: normalized.iter().map(|row| -row[ell]).collect(),
                relation: Relation::Le,
                rhs: 1.0,
            })
            .collect(),
    };
    let opt = solve(&lp)?;
    let residual = optimality_residual(&lp, &opt);
    let y = opt.duals.iter().map(|v| -v).collect();
    Ok((y, opt.x, residual))
}

/// `min Σ y_ℓ` subject to `Σ_ℓ y_ℓ K_ℓ(x)/K_ℓ(0) <= −1` for constrained `x`.
fn solve_polynomial_form(normalized: &[Vec<f64>], n: usize) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let lp = LinearProgram {
        objective: vec![1.0; n],
        constraints: normalized
            .iter()
            .map(|row| Constraint {
                coefficients: row.clone(),
                relation: Relation::Le,
                rhs: -1.0,
            })
            .collect(),
    };
    let opt = solve(&lp)?;
    let residual = optimality_residual(&lp, &opt);
    Ok((opt.x, opt.duals, residual))
}

/// Solves the finite LP for `1 <= d <= n`.
pub fn a_lp1(n: usize, d: usize, q_prime: f64) -> Result<LPSolution> {
    let params = KrawtchoukParams::new(n, q_prime)?;
    if d == 0 || d > n {
        return Err(Error::InvalidParameter(format!(
            "the LP needs 1 <= d <= n, got d={d}, n={n}"
        )));
    }
    let k0: Vec<f64> = (0..=n)
        .map(|ell| krawtchouk(ell, 0.0, &params))
        .collect::<Result<_>>()?;
    // normalized[x - d][ell - 1] = K_ell(x) / K_ell(0)
    let normalized: Vec<Vec<f64>> = (d..=n)
        .map(|x| {
            (1..=n)
                .map(|ell| Ok(krawtchouk(ell, x as f64, &params)? / k0[ell]))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let (y, duals, residual) = match solve_distance_form(&normalized, n) {
        Ok(found) => found,
        Err(_) => solve_polynomial_form(&normalized, n).map_err(|e| match e {
            Error::Infeasible | Error::Unbounded => Error::Numeric(format!(
                "LP for n={n}, d={d}, q'={q_prime} reported {e}; smallest |K_ell(0)| = {:e}",
                k0.iter().fold(f64::INFINITY, |m, k| m.min(k.abs()))
            )),
            other => other,
        })?,
    };

    // Scale the nonconstant part up just enough that every constraint holds
    // after rounding; the objective moves by the same relative amount.
    let mut y: Vec<f64> = y.iter().map(|v| v.max(0.0)).collect();
    let worst = normalized
        .iter()
        .map(|row| compensated_sum(row.iter().zip(&y).map(|(a, b)| a * b)))
        .fold(f64::NEG_INFINITY, f64::max);
    if worst >= 0.0 {
        return Err(Error::Numeric(format!(
            "LP solution for n={n}, d={d}, q'={q_prime} cannot be repaired (max scaled slack {worst})"
        )));
    }
    if worst > -1.0 {
        let t = -1.0 / worst;
        for v in y.iter_mut() {
            *v *= t;
        }
    }

    let mut coefficients = Vec::with_capacity(n + 1);
    coefficients.push(1.0);
    coefficients.extend(y.iter().zip(&k0[1..]).map(|(v, k)| v / k));
    let objective = compensated_sum(std::iter::once(1.0).chain(y.iter().copied()));
    let mut solution = LPSolution {
        n,
        d,
        q_prime,
        coefficients,
        objective,
        certificate: Vec::new(),
        duals,
        residual,
    };
    solution.certificate = (d..=n)
        .map(|x| Ok((x, solution.evaluate(x as f64)?)))
        .collect::<Result<_>>()?;
    solution.verify()?;
    Ok(solution)
}

/// `θ_L(G)^n · A_LP1(n, d)` with `q′` from the spectrum of `G`. For `d = 0`
/// the power graph is edgeless and the value is `|V|^n`.
pub fn finite_alpha_upper(g: &Graph, n: usize, d: usize) -> Result<f64> {
    if d == 0 {
        return Ok((g.vertex_count() as f64).powi(n as i32));
    }
    let s = eigenspace_constants(g)?;
    Ok(s.theta_l.powi(n as i32) * a_lp1(n, d, s.q_prime)?.objective)
}

/// `(1/n) ln A_LP1(n, ⌈δn⌉)`, with `d` at least 1.
pub fn lp_rate(n: usize, delta: f64, q_prime: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::Domain(format!(
            "delta must lie in [0, 1], got {delta}"
        )));
    }
    let d = ((delta * n as f64 - 1e-9).ceil() as usize).clamp(1, n);
    Ok(a_lp1(n, d, q_prime)?.objective.ln() / n as f64)
}
