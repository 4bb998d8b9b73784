//! Rate functions (in nats) and the rules that turn graph invariants into
//! bounds on the rate-distance tradeoff.

mod envelope;
mod rules;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use envelope::{best_envelope, delta_grid, format_significant, Envelope, EnvelopeConfig, Rule};
pub use rules::{
    clique_cover_bounds, clique_cover_rate, clique_rate_bounds, edgeless_rate,
    fractional_coloring_bound, fractional_gv, hom_lift, hom_lift_bound, lower_bound_vt,
    lp_converse, power_bounds, power_sandwich, sum_of_cliques, sum_of_cliques_max,
    sum_of_cliques_rate, upper_bound_lp, vt_gv, RateBound, SumOfCliques,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub delta: f64,
    pub rate_nats: f64,
    pub kind: BoundKind,
    pub provenance: String,
}

fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && q > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "alphabet size q must exceed 1, got {q}"
        )))
    }
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must lie in [0, 1], got {x}")))
    }
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `H_q(x) = x ln(q−1) − x ln x − (1−x) ln(1−x)`.
pub fn entropy_hq(q: f64, x: f64) -> Result<f64> {
    check_q(q)?;
    check_unit("x", x)?;
    let linear = if x == 0.0 { 0.0 } else { x * (q - 1.0).ln() };
    Ok(linear - xlnx(x) - xlnx(1.0 - x))
}

/// `1 − 1/q`, where both `R_GV` and `R_LP1` reach zero.
pub fn plotkin_point(q: f64) -> f64 {
    1.0 - 1.0 / q
}

/// `R_GV(q, δ) = ln q − H_q(δ)` below the Plotkin point, zero beyond it.
pub fn r_gv(q: f64, delta: f64) -> Result<f64> {
    check_q(q)?;
    check_unit("delta", delta)?;
    if delta >= plotkin_point(q) {
        return Ok(0.0);
    }
    Ok((q.ln() - entropy_hq(q, delta)?).max(0.0))
}

/// The first linear programming bound
/// `H_q(((q−1) − (q−2)δ − 2√((q−1)δ(1−δ))) / q)` below the Plotkin point,
/// zero beyond it.
pub fn r_lp1(q: f64, delta: f64) -> Result<f64> {
    check_q(q)?;
    check_unit("delta", delta)?;
    let plotkin = plotkin_point(q);
    if delta >= plotkin {
        return Ok(0.0);
    }
    let inner =
        ((q - 1.0) - (q - 2.0) * delta - 2.0 * ((q - 1.0) * delta * (1.0 - delta)).sqrt()) / q;
    entropy_hq(q, inner.clamp(0.0, plotkin))
}

#[cfg(test)]
mod tests {
    use super::*;

    const QS: [f64; 5] = [2.0, 2.5, 2.23606797749979, 3.0, 10.0 / 3.0];

    #[test]
    fn entropy_examples() {
        let ln2 = 2f64.ln();
        assert!((entropy_hq(2.0, 0.5).unwrap() - ln2).abs() < 1e-15);
        assert_eq!(entropy_hq(7.0, 0.0).unwrap(), 0.0);
        assert!((entropy_hq(2.5, 0.6).unwrap() - 2.5f64.ln()).abs() < 1e-15);
        assert_eq!(entropy_hq(2.0, 1.0).unwrap(), 0.0);
        assert!(entropy_hq(1.0, 0.5).is_err());
        assert!(entropy_hq(2.0, 1.5).is_err());
    }

    #[test]
    fn plotkin_and_origin() {
        for q in QS {
            let p = plotkin_point(q);
            assert_eq!(r_gv(q, p).unwrap(), 0.0);
            assert_eq!(r_lp1(q, p).unwrap(), 0.0);
            assert_eq!(r_gv(q, 1.0).unwrap(), 0.0);
            assert!((r_gv(q, 0.0).unwrap() - q.ln()).abs() < 1e-12);
            assert!((r_lp1(q, 0.0).unwrap() - q.ln()).abs() < 1e-12);
            // continuity at the Plotkin point
            assert!(r_gv(q, p - 1e-9).unwrap() < 1e-6);
            assert!(r_lp1(q, p - 1e-9).unwrap() < 1e-3);
        }
    }

    #[test]
    fn binary_values() {
        let h2 = |x: f64| -x * x.ln() - (1.0 - x) * (1.0 - x).ln();
        assert!((r_gv(2.0, 0.11).unwrap() - (2f64.ln() - h2(0.11))).abs() < 1e-15);
        let inner = 0.5 - 0.21f64.sqrt();
        assert!((r_lp1(2.0, 0.3).unwrap() - h2(inner)).abs() < 1e-14);
        assert_eq!(r_gv(2.0, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn monotone_in_delta() {
        for q in QS {
            let mut prev = (f64::INFINITY, f64::INFINITY);
            for i in 0..=1000 {
                let d = i as f64 / 1000.0;
                let cur = (r_gv(q, d).unwrap(), r_lp1(q, d).unwrap());
                assert!(cur.0 >= 0.0 && cur.1 >= 0.0);
                assert!(cur.0 <= prev.0 + 1e-15 && cur.1 <= prev.1 + 1e-15);
                prev = cur;
            }
        }
    }
}
