use std::fmt;
use std::sync::Arc;

use num_traits::{One, ToPrimitive};

use super::{check_unit, entropy_hq, r_gv, r_lp1, BoundKind, RatePoint};
use crate::error::{Error, Result};
use crate::graph::{find_homomorphism, is_vertex_transitive, strong_power, Graph};
use crate::invariants::{
    chromatic_number, clique_number, fractional_chromatic, fractional_clique_cover,
    independence_number,
};
use crate::limits::Limits;
use crate::spectral::eigenspace_constants;

type RateFn = dyn Fn(f64) -> Result<Option<f64>> + Send + Sync;

/// A rate bound as a function of `δ`, in nats. `None` marks a `δ` where the
/// rule says nothing.
#[derive(Clone)]
pub struct RateBound {
    kind: BoundKind,
    provenance: String,
    f: Arc<RateFn>,
}

impl fmt::Debug for RateBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RateBound")
            .field("kind", &self.kind)
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

impl RateBound {
    pub fn new(
        kind: BoundKind,
        provenance: impl Into<String>,
        f: impl Fn(f64) -> Result<Option<f64>> + Send + Sync + 'static,
    ) -> Self {
        RateBound {
            kind,
            provenance: provenance.into(),
            f: Arc::new(f),
        }
    }

    pub fn constant(kind: BoundKind, provenance: impl Into<String>, value: f64) -> Self {
        Self::new(kind, provenance, move |_| Ok(Some(value)))
    }

    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn rate(&self, delta: f64) -> Result<Option<f64>> {
        check_unit("delta", delta)?;
        (self.f)(delta)
    }

    pub fn point(&self, delta: f64) -> Result<Option<RatePoint>> {
        Ok(self.rate(delta)?.map(|rate_nats| RatePoint {
            delta,
            rate_nats,
            kind: self.kind,
            provenance: self.provenance.clone(),
        }))
    }

    fn require_kind(&self, kind: BoundKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "expected a {} bound, got {} bound '{}'",
                kind.as_str(),
                self.kind.as_str(),
                self.provenance
            )))
        }
    }
}

/// The exact rate `ln |V|` of an edgeless graph.
pub fn edgeless_rate(g: &Graph, kind: BoundKind) -> RateBound {
    RateBound::constant(kind, "edgeless", (g.vertex_count() as f64).ln())
}

fn require_vertex_transitive(g: &Graph, limits: &Limits) -> Result<()> {
    let known = g.known_symmetry().vertex_transitive;
    if known
        || (g.vertex_count() <= limits.max_automorphism_vertices
            && is_vertex_transitive(g, limits)?)
    {
        return Ok(());
    }
    Err(Error::HypothesisFailed(
        if g.vertex_count() <= limits.max_automorphism_vertices {
            format!("{} is not vertex-transitive", g.label())
        } else {
            format!(
                "vertex-transitivity of {} cannot be certified above {} vertices",
                g.label(),
                limits.max_automorphism_vertices
            )
        },
    ))
}

/// `ln α(G) + R_GV(|V|/α(G), δ)` for vertex-transitive `G`.
pub fn vt_gv(g: &Graph, limits: &Limits) -> Result<RateBound> {
    require_vertex_transitive(g, limits)?;
    let alpha = independence_number(g, limits)?.size;
    let v = g.vertex_count();
    if alpha == v {
        return Ok(edgeless_rate(g, BoundKind::Lower).with_provenance("vt-GV"));
    }
    let q = v as f64 / alpha as f64;
    let base = (alpha as f64).ln();
    Ok(RateBound::new(BoundKind::Lower, "vt-GV", move |d| {
        Ok(Some(base + r_gv(q, d)?))
    }))
}

pub fn lower_bound_vt(g: &Graph, delta: f64, limits: &Limits) -> Result<RatePoint> {
    point_of(&vt_gv(g, limits)?, delta)
}

fn point_of(bound: &RateBound, delta: f64) -> Result<RatePoint> {
    bound.point(delta)?.ok_or_else(|| {
        Error::Domain(format!(
            "{} gives no value at delta={delta}",
            bound.provenance()
        ))
    })
}

/// `ln θ_L(G) + R_LP1(|V|/θ_L(G), δ)` for vertex-transitive `G` whose
/// smallest-eigenspace projector is constant on edges.
pub fn lp_converse(g: &Graph, limits: &Limits) -> Result<RateBound> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    require_vertex_transitive(g, limits)?;
    let s = eigenspace_constants(g)?;
    let base = s.theta_l.ln();
    let q = s.q_prime;
    Ok(RateBound::new(BoundKind::Upper, "LP-converse", move |d| {
        Ok(Some(base + r_lp1(q, d)?))
    }))
}

pub fn upper_bound_lp(g: &Graph, delta: f64, limits: &Limits) -> Result<RatePoint> {
    point_of(&lp_converse(g, limits)?, delta)
}

/// `ln(|V|/χ*) + R_GV(χ*, δ)`; needs no symmetry.
pub fn fractional_gv(g: &Graph, limits: &Limits) -> Result<RateBound> {
    let chi = fractional_chromatic(g, limits)?;
    if chi.is_one() {
        return Ok(edgeless_rate(g, BoundKind::Lower).with_provenance("frac-GV"));
    }
    let q = chi
        .to_f64()
        .ok_or_else(|| Error::Numeric("fractional chromatic number overflows f64".into()))?;
    let base = (g.vertex_count() as f64 / q).ln();
    Ok(RateBound::new(BoundKind::Lower, "frac-GV", move |d| {
        Ok(Some(base + r_gv(q, d)?))
    }))
}

pub fn fractional_coloring_bound(g: &Graph, delta: f64, limits: &Limits) -> Result<RatePoint> {
    point_of(&fractional_gv(g, limits)?, delta)
}

/// `ln(|V(G)|/|V(H)|) + rate_H(δ)` given a homomorphism `G → H` and a lower
/// bound for vertex-transitive `H`.
pub fn hom_lift(g: &Graph, h: &Graph, rate_h: &RateBound, limits: &Limits) -> Result<RateBound> {
    rate_h.require_kind(BoundKind::Lower)?;
    require_vertex_transitive(h, limits)?;
    if find_homomorphism(g, h)?.is_none() {
        return Err(Error::NoHomomorphism {
            from: g.label().to_string(),
            to: h.label().to_string(),
        });
    }
    let shift = (g.vertex_count() as f64 / h.vertex_count() as f64).ln();
    let inner = rate_h.clone();
    Ok(RateBound::new(
        BoundKind::Lower,
        format!("hom-lift:{}", h.label()),
        move |d| Ok(inner.rate(d)?.map(|r| shift + r)),
    ))
}

pub fn hom_lift_bound(
    g: &Graph,
    h: &Graph,
    delta: f64,
    rate_h: &RateBound,
    limits: &Limits,
) -> Result<RatePoint> {
    point_of(&hom_lift(g, h, rate_h, limits)?, delta)
}

fn power_lower(r: usize, lower_r: &RateBound) -> RateBound {
    let inner = lower_r.clone();
    let rf = r as f64;
    RateBound::new(BoundKind::Lower, format!("power:r={r}"), move |d| {
        let scaled = rf * d;
        if scaled > 1.0 {
            return Ok(None);
        }
        Ok(inner.rate(scaled)?.map(|x| x / rf))
    })
}

fn power_upper(r: usize, upper_r: &RateBound) -> RateBound {
    let inner = upper_r.clone();
    let rf = r as f64;
    RateBound::new(BoundKind::Upper, format!("power:r={r}"), move |d| {
        Ok(inner.rate(d)?.map(|x| x / rf))
    })
}

/// `(1/r) lower_r(rδ)` and `(1/r) upper_r(δ)` from bounds on `G^r`. The
/// lower side is `None` when `rδ > 1`.
pub fn power_sandwich(
    r: usize,
    delta: f64,
    lower_r: &RateBound,
    upper_r: &RateBound,
) -> Result<(Option<RatePoint>, RatePoint)> {
    if r == 0 {
        return Err(Error::InvalidParameter("power r must be positive".into()));
    }
    lower_r.require_kind(BoundKind::Lower)?;
    upper_r.require_kind(BoundKind::Upper)?;
    Ok((
        power_lower(r, lower_r).point(delta)?,
        point_of(&power_upper(r, upper_r), delta)?,
    ))
}

/// Bounds on `G` through the strong power `G^r`: the lower side from vt-GV
/// (or frac-GV without symmetry) on `G^r`, the upper side from the LP
/// converse on `G^r`. Inapplicable sides come back as notes.
pub fn power_bounds(
    g: &Graph,
    r: usize,
    limits: &Limits,
) -> Result<(Option<RateBound>, Option<RateBound>, Vec<String>)> {
    if r == 0 {
        return Err(Error::InvalidParameter("power r must be positive".into()));
    }
    let gr = strong_power(g, r, limits)?;
    let mut notes = Vec::new();
    let lower = match vt_gv(&gr, limits) {
        Ok(b) => Some(b),
        Err(Error::HypothesisFailed(why)) => {
            notes.push(format!("power:r={r} lower uses frac-GV: {why}"));
            Some(fractional_gv(&gr, limits)?)
        }
        Err(e) => return Err(e),
    };
    let upper = match lp_converse(&gr, limits) {
        Ok(b) => Some(power_upper(r, &b)),
        Err(
            e @ (Error::NonConstantC { .. } | Error::HypothesisFailed(_) | Error::EdgelessGraph),
        ) => {
            notes.push(format!("power:r={r} upper skipped: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    Ok((lower.map(|b| power_lower(r, &b)), upper, notes))
}

/// `R_GV(c, δ)` and `R_LP1(c, δ)`, the classical bounds for `K_c`.
pub fn clique_rate_bounds(c: usize) -> (RateBound, RateBound) {
    if c <= 1 {
        return (
            RateBound::constant(BoundKind::Lower, "GV", 0.0),
            RateBound::constant(BoundKind::Upper, "LP1", 0.0),
        );
    }
    let q = c as f64;
    (
        RateBound::new(BoundKind::Lower, "GV", move |d| Ok(Some(r_gv(q, d)?))),
        RateBound::new(BoundKind::Upper, "LP1", move |d| Ok(Some(r_lp1(q, d)?))),
    )
}

/// `ln α(G) + (bounds on K_c)` when `ω = χ = c` and `θ*·ω = |V|`.
pub fn clique_cover_bounds(
    g: &Graph,
    lower_kc: &RateBound,
    upper_kc: &RateBound,
    limits: &Limits,
) -> Result<(RateBound, RateBound, usize)> {
    lower_kc.require_kind(BoundKind::Lower)?;
    upper_kc.require_kind(BoundKind::Upper)?;
    let omega = clique_number(g, limits)?;
    let chi = chromatic_number(g, limits)?;
    if omega != chi {
        return Err(Error::HypothesisFailed(format!(
            "clique cover needs omega = chi, got omega={omega}, chi={chi}"
        )));
    }
    let theta_star = fractional_clique_cover(g, limits)?;
    let v = num_rational::BigRational::from_integer(g.vertex_count().into());
    if theta_star.clone() * num_rational::BigRational::from_integer(omega.into()) != v {
        return Err(Error::HypothesisFailed(format!(
            "clique cover needs theta* * omega = |V|, got {theta_star} * {omega} != {}",
            g.vertex_count()
        )));
    }
    let base = (independence_number(g, limits)?.size as f64).ln();
    let lift = |inner: &RateBound| {
        let inner = inner.clone();
        RateBound::new(inner.kind(), "clique-cover", move |d| {
            Ok(inner.rate(d)?.map(|x| base + x))
        })
    };
    Ok((lift(lower_kc), lift(upper_kc), omega))
}

pub fn clique_cover_rate(
    g: &Graph,
    delta: f64,
    rate_kc: (&RateBound, &RateBound),
    limits: &Limits,
) -> Result<(RatePoint, RatePoint)> {
    let (lo, up, _) = clique_cover_bounds(g, rate_kc.0, rate_kc.1, limits)?;
    Ok((point_of(&lo, delta)?, point_of(&up, delta)?))
}

const LAMBDA_GRID_STEP: f64 = 1e-3;
const LAMBDA_TOLERANCE: f64 = 1e-9;

/// `max_{δ ≤ λ ≤ 1} [H_q(λ) + λ f(δ/λ)]`, returning the value and the
/// maximizing `λ`. Dense grid, then golden section around the best node.
pub fn sum_of_cliques_max(
    q: f64,
    delta: f64,
    f: &dyn Fn(f64) -> Result<f64>,
) -> Result<(f64, f64)> {
    check_unit("delta", delta)?;
    let objective = |lambda: f64| -> Result<f64> {
        if lambda <= 0.0 {
            return Ok(0.0);
        }
        let inner = (delta / lambda).min(1.0);
        Ok(entropy_hq(q, lambda)? + lambda * f(inner)?)
    };
    if delta >= 1.0 {
        return Ok((objective(1.0)?, 1.0));
    }
    let steps = ((1.0 - delta) / LAMBDA_GRID_STEP).ceil().max(1.0) as usize;
    let node = |i: usize| {
        if i == steps {
            1.0
        } else {
            delta + (1.0 - delta) * i as f64 / steps as f64
        }
    };
    let mut best = (f64::NEG_INFINITY, delta);
    let mut best_i = 0;
    for i in 0..=steps {
        let lambda = node(i);
        let value = objective(lambda)?;
        if value > best.0 {
            best = (value, lambda);
            best_i = i;
        }
    }
    let (mut a, mut b) = (
        node(best_i.saturating_sub(1)),
        node((best_i + 1).min(steps)),
    );
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let mut f1 = objective(x1)?;
    let mut f2 = objective(x2)?;
    while b - a > LAMBDA_TOLERANCE {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = objective(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = objective(x1)?;
        }
    }
    let mid = 0.5 * (a + b);
    let refined = objective(mid)?;
    if refined >= best.0 {
        best = (refined, mid);
    }
    Ok(best)
}

/// The rate of `a1 K_1 + ac K_c`,
/// `ln a1 + max_λ [H_q(λ) + λ R(K_c, δ/λ)]` with `q = ac/a1 + 1`, for a
/// bound `R` on `K_c` of either kind.
#[derive(Debug, Clone)]
pub struct SumOfCliques {
    pub a1: usize,
    pub c: usize,
    pub ac: usize,
    inner: RateBound,
}

impl SumOfCliques {
    pub fn q(&self) -> f64 {
        self.ac as f64 / self.a1 as f64 + 1.0
    }

    /// Value in nats and the maximizing `λ`.
    pub fn evaluate(&self, delta: f64) -> Result<(f64, f64)> {
        let inner = &self.inner;
        let f = |x: f64| {
            inner
                .rate(x)?
                .ok_or_else(|| Error::Domain(format!("{} undefined at {x}", inner.provenance())))
        };
        let (value, lambda) = sum_of_cliques_max(self.q(), delta, &f)?;
        Ok(((self.a1 as f64).ln() + value, lambda))
    }

    pub fn bound(&self) -> RateBound {
        let me = self.clone();
        RateBound::new(self.inner.kind(), "sumclique", move |d| {
            Ok(Some(me.evaluate(d)?.0))
        })
    }
}

pub fn sum_of_cliques(a1: usize, c: usize, ac: usize, rate_kc: &RateBound) -> Result<SumOfCliques> {
    if a1 == 0 || c == 0 || ac == 0 {
        return Err(Error::InvalidParameter(format!(
            "sum of cliques needs a1, c, ac >= 1, got a1={a1}, c={c}, ac={ac}"
        )));
    }
    Ok(SumOfCliques {
        a1,
        c,
        ac,
        inner: rate_kc.clone(),
    })
}

/// The point at `δ` together with the maximizing `λ`.
pub fn sum_of_cliques_rate(
    a1: usize,
    c: usize,
    ac: usize,
    delta: f64,
    rate_kc: &RateBound,
) -> Result<(RatePoint, f64)> {
    let s = sum_of_cliques(a1, c, ac, rate_kc)?;
    let (rate_nats, lambda) = s.evaluate(delta)?;
    Ok((
        RatePoint {
            delta,
            rate_nats,
            kind: rate_kc.kind(),
            provenance: "sumclique".into(),
        },
        lambda,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = std::f64::consts::LN_2;

    fn limits() -> Limits {
        Limits::default()
    }

    fn rate(b: &RateBound, d: f64) -> f64 {
        b.rate(d).unwrap().unwrap()
    }

    #[test]
    fn pentagon_vt_and_lp() {
        let c5 = Graph::cycle(5).unwrap();
        let lo = vt_gv(&c5, &limits()).unwrap();
        let up = lp_converse(&c5, &limits()).unwrap();
        let frac = fractional_gv(&c5, &limits()).unwrap();
        for i in 0..=100 {
            let d = i as f64 / 100.0;
            let want_lo = LN2 + r_gv(2.5, d).unwrap();
            assert!((rate(&lo, d) - want_lo).abs() < 1e-12);
            assert!((rate(&frac, d) - want_lo).abs() < 1e-12);
            let want_up = 0.5 * 5f64.ln() + r_lp1(5f64.sqrt(), d).unwrap();
            assert!((rate(&up, d) - want_up).abs() < 1e-9);
            assert!(rate(&lo, d) <= rate(&up, d) + 1e-9);
        }
        assert!((rate(&lo, 0.0) - 5f64.ln()).abs() < 1e-12);
        assert!((rate(&lo, 1.0) - LN2).abs() < 1e-12);
        assert!((rate(&up, 1.0) - 0.5 * 5f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn kneser_bounds_meet_at_plotkin() {
        for (c, a, k) in [(5usize, 2usize, 4.0f64), (7, 3, 15.0)] {
            let g = Graph::kneser(c, a).unwrap();
            let lo = vt_gv(&g, &limits()).unwrap();
            let up = lp_converse(&g, &limits()).unwrap();
            let p = 1.0 - a as f64 / c as f64;
            assert!((rate(&lo, p) - k.ln()).abs() < 1e-9);
            assert!((rate(&up, p) - k.ln()).abs() < 1e-9);
        }
    }

    #[test]
    fn clique_reduces_to_classical() {
        let k3 = Graph::complete(3).unwrap();
        let up = lp_converse(&k3, &limits()).unwrap();
        let lo = vt_gv(&k3, &limits()).unwrap();
        for d in [0.0, 0.1, 0.3, 0.6] {
            assert!((rate(&up, d) - r_lp1(3.0, d).unwrap()).abs() < 1e-9);
            assert!((rate(&lo, d) - r_gv(3.0, d).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn path_fractional_bound() {
        let p3 = Graph::path(3).unwrap();
        let b = fractional_gv(&p3, &limits()).unwrap();
        let want = 1.5f64.ln() + r_gv(2.0, 0.2).unwrap();
        assert!((rate(&b, 0.2) - want).abs() < 1e-12);
        assert!(matches!(
            vt_gv(&p3, &limits()),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn edgeless_short_circuit() {
        let e = Graph::edgeless(4).unwrap();
        assert!((rate(&vt_gv(&e, &limits()).unwrap(), 0.7) - 4f64.ln()).abs() < 1e-15);
        assert!((rate(&fractional_gv(&e, &limits()).unwrap(), 0.7) - 4f64.ln()).abs() < 1e-15);
        assert!(matches!(
            lp_converse(&e, &limits()),
            Err(Error::EdgelessGraph)
        ));
    }

    #[test]
    fn pentagon_square_refuses_lp() {
        let sq = strong_power(&Graph::cycle(5).unwrap(), 2, &limits()).unwrap();
        assert!(matches!(
            upper_bound_lp(&sq, 0.1, &limits()),
            Err(Error::NonConstantC { .. })
        ));
    }

    #[test]
    fn hom_lift_rules() {
        let l = limits();
        let c5 = Graph::cycle(5).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let c4 = Graph::cycle(4).unwrap();
        let r_k3 = vt_gv(&k3, &l).unwrap();
        let b = hom_lift(&c5, &k3, &r_k3, &l).unwrap();
        assert_eq!(b.provenance(), "hom-lift:K3");
        assert!((rate(&b, 0.2) - ((5.0f64 / 3.0).ln() + r_gv(3.0, 0.2).unwrap())).abs() < 1e-12);
        let r_c5 = vt_gv(&c5, &l).unwrap();
        let same = hom_lift(&c5, &c5, &r_c5, &l).unwrap();
        assert!((rate(&same, 0.3) - rate(&r_c5, 0.3)).abs() < 1e-15);
        let r_k2 = vt_gv(&k2, &l).unwrap();
        let b = hom_lift(&c4, &k2, &r_k2, &l).unwrap();
        assert!((rate(&b, 0.2) - (LN2 + rate(&r_k2, 0.2))).abs() < 1e-15);
        assert!(matches!(
            hom_lift(&c5, &k2, &r_k2, &l),
            Err(Error::NoHomomorphism { .. })
        ));
        let up = lp_converse(&k3, &l).unwrap();
        assert!(matches!(
            hom_lift(&c5, &k3, &up, &l),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn pentagon_power_two() {
        let c5 = Graph::cycle(5).unwrap();
        let (lo, up, notes) = power_bounds(&c5, 2, &limits()).unwrap();
        let lo = lo.unwrap();
        assert!(up.is_none());
        assert_eq!(notes.len(), 1);
        for d in [0.0, 0.1, 0.25, 0.5] {
            let want = 0.5 * 5f64.ln() + 0.5 * r_gv(5.0, 2.0 * d).unwrap();
            assert!((rate(&lo, d) - want).abs() < 1e-12);
        }
        assert!(lo.rate(0.6).unwrap().is_none());
    }

    #[test]
    fn power_sandwich_identity_and_k2() {
        let k2 = Graph::complete(2).unwrap();
        let lo = vt_gv(&k2, &limits()).unwrap();
        let up = lp_converse(&k2, &limits()).unwrap();
        let (a, b) = power_sandwich(1, 0.2, &lo, &up).unwrap();
        assert_eq!(a.unwrap().rate_nats, rate(&lo, 0.2));
        assert_eq!(b.rate_nats, rate(&up, 0.2));
        let (plo, pup, _) = power_bounds(&k2, 2, &limits()).unwrap();
        let want = 0.5 * r_gv(4.0, 0.4).unwrap();
        assert!((rate(&plo.unwrap(), 0.2) - want).abs() < 1e-12);
        let want = 0.5 * r_lp1(4.0, 0.2).unwrap();
        assert!((rate(&pup.unwrap(), 0.2) - want).abs() < 1e-9);
    }

    #[test]
    fn clique_cover_cases() {
        let l = limits();
        let (kl, ku) = clique_rate_bounds(2);
        let c6 = Graph::cycle(6).unwrap();
        let (lo, up) = clique_cover_rate(&c6, 0.2, (&kl, &ku), &l).unwrap();
        assert!((lo.rate_nats - (3f64.ln() + r_gv(2.0, 0.2).unwrap())).abs() < 1e-12);
        assert!((up.rate_nats - (3f64.ln() + r_lp1(2.0, 0.2).unwrap())).abs() < 1e-12);
        let (kl3, ku3) = clique_rate_bounds(3);
        let two_k3 = Graph::clique_sum(&[(2, 3)]).unwrap();
        let (lo, _) = clique_cover_rate(&two_k3, 0.1, (&kl3, &ku3), &l).unwrap();
        assert!((lo.rate_nats - (LN2 + r_gv(3.0, 0.1).unwrap())).abs() < 1e-12);
        assert!(matches!(
            clique_cover_rate(&Graph::cycle(5).unwrap(), 0.1, (&kl, &ku), &l),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn sum_of_cliques_quarter() {
        let (gv, lp) = clique_rate_bounds(2);
        let (p, lambda) = sum_of_cliques_rate(1, 2, 1, 0.25, &gv).unwrap();
        assert!((p.rate_nats - LN2).abs() < 1e-12);
        assert!((lambda - 0.5).abs() < 1e-6);
        // full space at delta = 0
        for (a1, c, ac) in [(1, 2, 1), (2, 3, 1), (1, 4, 3)] {
            let total = ((a1 + ac * c) as f64).ln();
            for inner in [&gv, &lp] {
                let (kc_lo, kc_up) = clique_rate_bounds(c);
                let inner = if inner.kind() == BoundKind::Lower {
                    kc_lo
                } else {
                    kc_up
                };
                let (p, _) = sum_of_cliques_rate(a1, c, ac, 0.0, &inner).unwrap();
                assert!((p.rate_nats - total).abs() < 1e-6, "{a1} {c} {ac}");
            }
        }
    }

    #[test]
    fn bound_domain_is_checked() {
        let b = vt_gv(&Graph::cycle(5).unwrap(), &limits()).unwrap();
        assert!(b.rate(1.5).is_err());
        assert!(b.rate(-0.1).is_err());
    }
}
