use serde::Serialize;

use super::rules::{
    clique_cover_bounds, clique_rate_bounds, edgeless_rate, fractional_gv, hom_lift, lp_converse,
    power_bounds, sum_of_cliques, vt_gv, RateBound,
};
use super::{BoundKind, RatePoint};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// A bound-producing rule for [`best_envelope`].
#[derive(Debug, Clone, PartialEq)]
pub enum Rule {
    Vt,
    Frac,
    Lp,
    Power(usize),
    Cover,
    HomLift(Graph),
    SumCliqueGv,
    SumCliqueLp,
}

impl Rule {
    pub fn name(&self) -> String {
        match self {
            Rule::Vt => "vt".into(),
            Rule::Frac => "frac".into(),
            Rule::Lp => "lp".into(),
            Rule::Power(r) => format!("power:{r}"),
            Rule::Cover => "cover".into(),
            Rule::HomLift(h) => format!("homlift:{}", h.label()),
            Rule::SumCliqueGv => "sumclique-gv".into(),
            Rule::SumCliqueLp => "sumclique-lp".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeConfig {
    pub rules: Vec<Rule>,
}

impl EnvelopeConfig {
    /// vt, frac, lp, cover and every power rule up to `r_max`.
    pub fn with_max_power(r_max: usize) -> Self {
        let mut rules = vec![Rule::Vt, Rule::Frac, Rule::Lp, Rule::Cover];
        rules.extend((2..=r_max).map(Rule::Power));
        EnvelopeConfig { rules }
    }
}

impl Default for EnvelopeConfig {
    fn default() -> Self {
        Self::with_max_power(2)
    }
}

/// Every rule's points plus the pointwise best lower and upper values.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub graph_label: String,
    /// Sorted by `δ`, then provenance, then kind.
    pub points: Vec<RatePoint>,
    /// Per grid point: the largest lower bound.
    pub lower: Vec<Option<RatePoint>>,
    /// Per grid point: the smallest upper bound.
    pub upper: Vec<Option<RatePoint>>,
    /// Rules that were skipped and why.
    pub notes: Vec<String>,
}

/// `min, min + step, ...` up to `max` inclusive (within rounding).
pub fn delta_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&min) || !(min < max && max <= 1.0) || !(step > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= min < max <= 1 and step > 0, got min={min}, max={max}, step={step}"
        )));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=count).map(|i| min + step * i as f64).collect();
    if let Some(last) = grid.last_mut() {
        if (*last - max).abs() < 1e-9 * step.max(1.0) || *last > max {
            *last = max;
        }
    }
    Ok(grid)
}

fn bounds_for(g: &Graph, rule: &Rule, limits: &Limits) -> Result<(Vec<RateBound>, Vec<String>)> {
    let one = |b: RateBound| Ok((vec![b], Vec::new()));
    match rule {
        Rule::Vt => one(vt_gv(g, limits)?),
        Rule::Frac => one(fractional_gv(g, limits)?),
        Rule::Lp => one(lp_converse(g, limits)?),
        Rule::Power(r) => {
            let (lo, up, notes) = power_bounds(g, *r, limits)?;
            Ok((lo.into_iter().chain(up).collect(), notes))
        }
        Rule::Cover => {
            let c = crate::invariants::clique_number(g, limits)?;
            let (kl, ku) = clique_rate_bounds(c);
            let (lo, up, _) = clique_cover_bounds(g, &kl, &ku, limits)?;
            Ok((vec![lo, up], Vec::new()))
        }
        Rule::HomLift(h) => {
            let rate_h = vt_gv(h, limits)?;
            one(hom_lift(g, h, &rate_h, limits)?)
        }
        Rule::SumCliqueGv | Rule::SumCliqueLp => {
            let (a1, c, ac) = match g.clique_sum_profile().as_deref() {
                Some(&[(1, a1), (c, ac)]) => (a1, c, ac),
                _ => {
                    return Err(Error::HypothesisFailed(format!(
                        "{} is not of the form a1 K1 + ac Kc",
                        g.label()
                    )))
                }
            };
            let (kl, ku) = clique_rate_bounds(c);
            let (inner, name) = if *rule == Rule::SumCliqueGv {
                (kl, "sumclique-gv")
            } else {
                (ku, "sumclique-lp")
            };
            one(sum_of_cliques(a1, c, ac, &inner)?
                .bound()
                .with_provenance(name))
        }
    }
}

/// Evaluates every applicable rule on the grid and keeps, per point, the
/// best lower and upper bound. Edgeless graphs get the exact rate `ln |V|`.
pub fn best_envelope(
    g: &Graph,
    grid: &[f64],
    config: &EnvelopeConfig,
    limits: &Limits,
) -> Result<Envelope> {
    let mut notes = Vec::new();
    let mut bounds = Vec::new();
    if g.edge_count() == 0 {
        bounds.push(edgeless_rate(g, BoundKind::Lower));
        bounds.push(edgeless_rate(g, BoundKind::Upper));
    } else {
        for rule in &config.rules {
            match bounds_for(g, rule, limits) {
                Ok((found, rule_notes)) => {
                    bounds.extend(found);
                    notes.extend(rule_notes);
                }
                Err(e) => notes.push(format!("{} skipped: {e}", rule.name())),
            }
        }
    }

    let mut points = Vec::new();
    let mut lower = Vec::with_capacity(grid.len());
    let mut upper = Vec::with_capacity(grid.len());
    for &delta in grid {
        let mut best_lo: Option<RatePoint> = None;
        let mut best_up: Option<RatePoint> = None;
        for b in &bounds {
            let Some(p) = b.point(delta)? else { continue };
            let slot = match p.kind {
                BoundKind::Lower => &mut best_lo,
                BoundKind::Upper => &mut best_up,
            };
            let better = match slot {
                None => true,
                Some(cur) => match p.kind {
                    BoundKind::Lower => p.rate_nats > cur.rate_nats,
                    BoundKind::Upper => p.rate_nats < cur.rate_nats,
                },
            };
            if better {
                *slot = Some(p.clone());
            }
            points.push(p);
        }
        lower.push(best_lo);
        upper.push(best_up);
    }
    points.sort_by(|a, b| {
        a.delta
            .total_cmp(&b.delta)
            .then_with(|| a.provenance.cmp(&b.provenance))
            .then_with(|| a.kind.cmp(&b.kind))
    });
    Ok(Envelope {
        graph_label: g.label().to_string(),
        points,
        lower,
        upper,
        notes,
    })
}

/// `x` with `digits` significant digits, in plain notation unless the
/// exponent is below -5 or at least `digits`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{exp}", trim(mantissa))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    }
}

#[derive(Serialize)]
struct JsonPoint<'a> {
    delta: f64,
    bound: &'a str,
    kind: BoundKind,
    rate: f64,
}

#[derive(Serialize)]
struct JsonCurve<'a> {
    schema: u32,
    graph: &'a str,
    log_base: f64,
    points: Vec<JsonPoint<'a>>,
    envelope: Vec<JsonPoint<'a>>,
    notes: &'a [String],
}

impl Envelope {
    /// Rule rows and the winning `envelope` rows, in display units.
    fn rows(&self, log_base: f64) -> (Vec<JsonPoint<'_>>, Vec<JsonPoint<'_>>) {
        let scale = 1.0 / log_base.ln();
        let conv = |p: &RatePoint, bound: &'static str| JsonPoint {
            delta: p.delta,
            bound,
            kind: p.kind,
            rate: p.rate_nats * scale,
        };
        let points = self
            .points
            .iter()
            .map(|p| JsonPoint {
                delta: p.delta,
                bound: &p.provenance,
                kind: p.kind,
                rate: p.rate_nats * scale,
            })
            .collect();
        let envelope = self
            .lower
            .iter()
            .zip(&self.upper)
            .flat_map(|(l, u)| l.iter().chain(u.iter()))
            .map(|p| conv(p, "envelope"))
            .collect();
        (points, envelope)
    }

    /// CSV `delta,bound,kind,rate`, rates in base `log_base`, ordered by
    /// `δ` then bound name then kind.
    pub fn to_csv(&self, log_base: f64) -> String {
        let (points, envelope) = self.rows(log_base);
        let mut rows: Vec<JsonPoint> = points.into_iter().chain(envelope).collect();
        rows.sort_by(|a, b| {
            a.delta
                .total_cmp(&b.delta)
                .then_with(|| a.bound.cmp(b.bound))
                .then_with(|| a.kind.cmp(&b.kind))
        });
        let mut out = csv::Writer::from_writer(Vec::new());
        out.write_record(["delta", "bound", "kind", "rate"])
            .expect("writing to memory");
        for r in rows {
            out.write_record([
                format_significant(r.delta, 12).as_str(),
                r.bound,
                r.kind.as_str(),
                format_significant(r.rate, 12).as_str(),
            ])
            .expect("writing to memory");
        }
        String::from_utf8(out.into_inner().expect("flushing to memory")).expect("utf-8 fields")
    }

    pub fn to_json(&self, log_base: f64) -> String {
        let (points, envelope) = self.rows(log_base);
        serde_json::to_string_pretty(&JsonCurve {
            schema: 1,
            graph: &self.graph_label,
            log_base,
            points,
            envelope,
            notes: &self.notes,
        })
        .expect("curve serializes")
    }

    /// Largest `lower − upper` over the grid (negative when consistent).
    pub fn max_gap_violation(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .filter_map(|(l, u)| Some(l.as_ref()?.rate_nats - u.as_ref()?.rate_nats))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Points of a single provenance and kind, in grid order.
    pub fn series(&self, provenance: &str, kind: BoundKind) -> Vec<&RatePoint> {
        self.points
            .iter()
            .filter(|p| p.provenance == provenance && p.kind == kind)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rates::{r_gv, r_lp1};

    #[test]
    fn significant_formatting() {
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(
            format_significant(std::f64::consts::LN_2, 12),
            "0.69314718056"
        );
        assert_eq!(format_significant(0.1 + 0.2, 12), "0.3");
        assert_eq!(format_significant(1.0, 12), "1");
        assert_eq!(format_significant(2.5e-7, 12), "2.5e-7");
        assert_eq!(format_significant(-1.25, 12), "-1.25");
        assert_eq!(
            format_significant(123456789012345.0, 12),
            "1.23456789012e14"
        );
    }

    #[test]
    fn grid_endpoints() {
        let g = delta_grid(0.0, 1.0, 0.001).unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g[1000], 1.0);
        let g = delta_grid(0.0, 1.0, 0.3).unwrap();
        assert_eq!(g.len(), 4);
        assert!(delta_grid(0.5, 0.2, 0.1).is_err());
        assert!(delta_grid(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn clique_envelope_is_classical_pair() {
        let k3 = Graph::complete(3).unwrap();
        let grid = delta_grid(0.0, 1.0, 0.05).unwrap();
        let env =
            best_envelope(&k3, &grid, &EnvelopeConfig::default(), &Limits::default()).unwrap();
        for (i, &d) in grid.iter().enumerate() {
            let lo = env.lower[i].as_ref().unwrap().rate_nats;
            let up = env.upper[i].as_ref().unwrap().rate_nats;
            assert!(lo >= r_gv(3.0, d).unwrap() - 1e-12);
            assert!((up - r_lp1(3.0, d).unwrap()).abs() < 1e-9);
        }
        assert!(env.max_gap_violation() <= 1e-9);
    }

    #[test]
    fn pentagon_notes_and_csv() {
        let c5 = Graph::cycle(5).unwrap();
        let grid = delta_grid(0.0, 1.0, 0.1).unwrap();
        let env =
            best_envelope(&c5, &grid, &EnvelopeConfig::default(), &Limits::default()).unwrap();
        assert!(env
            .notes
            .iter()
            .any(|n| n.contains("power:r=2 upper skipped")));
        assert!(env.notes.iter().any(|n| n.starts_with("cover skipped")));
        let csv = env.to_csv(2.0);
        assert!(csv.starts_with("delta,bound,kind,rate\n0,LP-converse,upper,"));
        assert_eq!(csv, env.to_csv(2.0));
        let labelled = best_envelope(
            &Graph::kneser(5, 2).unwrap(),
            &grid,
            &EnvelopeConfig {
                rules: vec![Rule::HomLift(
                    Graph::kneser(5, 2).unwrap().with_label("kneser:5,2"),
                )],
            },
            &Limits::default(),
        )
        .unwrap();
        assert!(labelled
            .to_csv(2.0)
            .contains(",\"hom-lift:kneser:5,2\",lower,"));
        let json: serde_json::Value = serde_json::from_str(&env.to_json(2.0)).unwrap();
        assert_eq!(json["schema"], 1);
        // lower side at delta = 0 is log2 5 in base 2
        let first = &json["envelope"][0];
        assert!((first["rate"].as_f64().unwrap() - 5f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn edgeless_envelope() {
        let e = Graph::edgeless(3).unwrap();
        let env = best_envelope(
            &e,
            &[0.0, 0.5, 1.0],
            &EnvelopeConfig::default(),
            &Limits::default(),
        )
        .unwrap();
        for (l, u) in env.lower.iter().zip(&env.upper) {
            assert_eq!(l.as_ref().unwrap().rate_nats, 3f64.ln());
            assert_eq!(u.as_ref().unwrap().rate_nats, 3f64.ln());
        }
    }
}
