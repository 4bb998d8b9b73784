use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `Σ_v 1/(deg(v) + 1)`, a lower bound on `α(G)`.
pub fn caro_wei(g: &Graph) -> BigRational {
    (0..g.vertex_count()).fold(BigRational::zero(), |acc, v| {
        acc + BigRational::new(BigInt::from(1), BigInt::from(g.degree(v) + 1))
    })
}

/// `|V|·|T| / |N[T]|` for a nonempty independent set `T`; a lower bound on
/// `α(G)` when `G` is vertex-transitive (the caller's responsibility).
pub fn vt_counting_bound(g: &Graph, t: &[usize]) -> Result<BigRational> {
    if t.is_empty() {
        return Err(Error::InvalidParameter("the set T must be nonempty".into()));
    }
    g.check_independent(t)?;
    let closed = g.closed_neighborhood(t).len();
    Ok(BigRational::new(
        BigInt::from(g.vertex_count() * t.len()),
        BigInt::from(closed),
    ))
}

/// Natural log of [`gv_sphere_count`].
pub fn gv_sphere_count_ln(g: &Graph, s_size: usize, n: usize, d: usize) -> Result<f64> {
    let v = g.vertex_count();
    if s_size == 0 || s_size > v {
        return Err(Error::InvalidParameter(format!(
            "independent set size {s_size} outside 1..={v}"
        )));
    }
    if n == 0 || d > n {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and 0 <= d <= n, got n={n}, d={d}"
        )));
    }
    let ratio = v as f64 / s_size as f64 - 1.0;
    let mut terms = vec![0.0f64];
    if ratio > 0.0 {
        let mut ln_binom = 0.0f64;
        for i in 1..=d {
            ln_binom += ((n + 1 - i) as f64).ln() - (i as f64).ln();
            terms.push(ln_binom + i as f64 * ratio.ln());
        }
    }
    let peak = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ln_sum = peak + terms.iter().map(|t| (t - peak).exp()).sum::<f64>().ln();
    Ok(n as f64 * (v as f64).ln() - ln_sum)
}

/// `|V|^n / Σ_{i≤d} C(n,i) (|V|/|S| − 1)^i`: the counting lower bound on
/// `α(G(n, d))` obtained from the independent set `S^n`, for
/// vertex-transitive `G` and an independent `S` of size `s_size`.
pub fn gv_sphere_count(g: &Graph, s_size: usize, n: usize, d: usize) -> Result<f64> {
    Ok(gv_sphere_count_ln(g, s_size, n, d)?.exp())
}
