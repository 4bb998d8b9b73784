use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::ValueEnum;
use graphcap::delsarte::finite_alpha_upper;
use graphcap::graph::{is_edge_transitive, is_vertex_transitive};
use graphcap::invariants::{
    chromatic_number, clique_number, exact_alpha_power, fractional_chromatic,
    fractional_clique_cover, gv_sphere_count, independence_number,
};
use graphcap::rates::{
    best_envelope, delta_grid, format_significant, lp_converse, vt_gv, BoundKind, Envelope,
    EnvelopeConfig, Rule,
};
use graphcap::spectral::{adjacency_spectrum, eigenspace_constants, lovasz_theta_edge_transitive};
use graphcap::{Error, Graph, Limits};

use crate::spec::GraphSpec;
use crate::svg;

pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const USAGE: u8 = 2;
pub const CAP: u8 = 3;

/// Largest graph whose spectrum `info` computes.
const MAX_SPECTRUM_VERTICES: usize = 500;
/// Largest graph whose transitivity `info` decides by brute force.
const MAX_TRANSITIVITY_VERTICES: usize = 12;

fn is_cap(e: &Error) -> bool {
    matches!(
        e,
        Error::SizeCap { .. } | Error::Timeout { .. } | Error::EnumerationCap { .. }
    )
}

fn exit_code(e: &Error) -> u8 {
    match e {
        _ if is_cap(e) => CAP,
        Error::Parse { .. }
        | Error::InvalidParameter(_)
        | Error::VertexOutOfRange { .. }
        | Error::SelfLoop(_) => USAGE,
        _ => FAILED,
    }
}

fn fail(e: &Error) -> u8 {
    eprintln!("error: {e}");
    exit_code(e)
}

fn build(spec: &GraphSpec, limits: &Limits) -> Result<Graph, u8> {
    spec.build(limits).map_err(|e| fail(&e))
}

fn sig(x: f64) -> String {
    format_significant(x, 12)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

pub struct Output {
    pub log_base: f64,
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

pub fn parse_log_base(s: &str) -> Result<f64, String> {
    if s == "e" {
        return Ok(std::f64::consts::E);
    }
    match s.parse::<f64>() {
        Ok(b) if b > 0.0 && b != 1.0 && b.is_finite() => Ok(b),
        _ => Err(format!(
            "expected e, 2, 10 or another positive base other than 1, got `{s}`"
        )),
    }
}

fn axis_label(base: f64) -> String {
    if base == std::f64::consts::E {
        "rate (nats)".into()
    } else if base == 2.0 {
        "rate (bits)".into()
    } else {
        format!("rate (log base {base})")
    }
}

pub fn info(spec: &GraphSpec, limits: &Limits) -> u8 {
    let g = match build(spec, limits) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut capped = false;
    let mut out = String::new();
    let mut field = |out: &mut String, name: &str, value: graphcap::Result<String>| match value {
        Ok(v) => {
            let _ = writeln!(out, "{name}: {v}");
        }
        Err(e) => {
            capped |= is_cap(&e);
            let _ = writeln!(out, "{name}: unavailable ({e})");
        }
    };
    let _ = writeln!(out, "graph: {spec}");
    let _ = writeln!(out, "vertices: {}", g.vertex_count());
    let _ = writeln!(out, "edges: {}", g.edge_count());
    field(
        &mut out,
        "alpha",
        independence_number(&g, limits).map(|m| m.size.to_string()),
    );
    field(
        &mut out,
        "omega",
        clique_number(&g, limits).map(|x| x.to_string()),
    );
    field(
        &mut out,
        "chi",
        chromatic_number(&g, limits).map(|x| x.to_string()),
    );
    field(
        &mut out,
        "chi_fractional",
        fractional_chromatic(&g, limits).map(|x| x.to_string()),
    );
    field(
        &mut out,
        "theta_star",
        fractional_clique_cover(&g, limits).map(|x| x.to_string()),
    );
    if g.vertex_count() > MAX_SPECTRUM_VERTICES {
        field(
            &mut out,
            "spectrum",
            Err(Error::SizeCap {
                what: "spectrum",
                requested: g.vertex_count() as u128,
                cap: MAX_SPECTRUM_VERTICES as u128,
            }),
        );
    } else {
        field(
            &mut out,
            "spectrum",
            adjacency_spectrum(&g).map(|s| grouped_spectrum(&s)),
        );
        if g.edge_count() > 0 {
            field(
                &mut out,
                "theta_L",
                lovasz_theta_edge_transitive(&g, limits).map(sig),
            );
            field(
                &mut out,
                "q'",
                eigenspace_constants(&g).map(|s| sig(s.q_prime)),
            );
        }
    }
    if g.vertex_count() <= MAX_TRANSITIVITY_VERTICES {
        field(
            &mut out,
            "vertex_transitive",
            is_vertex_transitive(&g, limits).map(|b| b.to_string()),
        );
        field(
            &mut out,
            "edge_transitive",
            is_edge_transitive(&g, limits).map(|b| b.to_string()),
        );
    } else {
        let known = g.known_symmetry();
        let flag = |b: bool| {
            if b {
                "true (by construction)"
            } else {
                "not decided"
            }
        };
        let _ = writeln!(out, "vertex_transitive: {}", flag(known.vertex_transitive));
        let _ = writeln!(out, "edge_transitive: {}", flag(known.edge_transitive));
    }
    print!("{out}");
    if capped {
        CAP
    } else {
        OK
    }
}

fn grouped_spectrum(values: &[f64]) -> String {
    let rho = values.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        match groups.last_mut() {
            Some((value, count)) if (*value - v).abs() <= 1e-8 * rho => *count += 1,
            _ => groups.push((v, 1)),
        }
    }
    groups
        .iter()
        .map(|&(v, m)| {
            let v = if v.abs() < 1e-10 * rho { 0.0 } else { v };
            format!("{}^{m}", format_significant(v, 9))
        })
        .collect::<Vec<_>>()
        .join(", ")
}

const RULE_NAMES: [&str; 6] = ["vt", "frac", "lp", "cover", "sumclique-gv", "sumclique-lp"];

/// Splits a rule list at commas, rejoining the commas that belong to a
/// `homlift:SPEC` argument.
fn split_rules(list: &str) -> Vec<String> {
    let mut rules: Vec<String> = Vec::new();
    for token in list.split(',').map(str::trim) {
        let starts_rule = RULE_NAMES.contains(&token)
            || token.starts_with("power:")
            || token.starts_with("homlift:");
        match rules.last_mut() {
            Some(last) if !starts_rule && last.starts_with("homlift:") => {
                last.push(',');
                last.push_str(token);
            }
            _ => rules.push(token.to_string()),
        }
    }
    rules
}

fn parse_rules(list: &str, limits: &Limits) -> Result<Vec<Rule>, u8> {
    let mut rules = Vec::new();
    for name in split_rules(list) {
        let rule = match name.as_str() {
            "vt" => Rule::Vt,
            "frac" => Rule::Frac,
            "lp" => Rule::Lp,
            "cover" => Rule::Cover,
            "sumclique-gv" => Rule::SumCliqueGv,
            "sumclique-lp" => Rule::SumCliqueLp,
            _ => {
                if let Some(r) = name.strip_prefix("power:") {
                    match r.parse::<usize>() {
                        Ok(r) if r >= 1 => Rule::Power(r),
                        _ => {
                            eprintln!("error: power rule needs a positive integer, got `{name}`");
                            return Err(USAGE);
                        }
                    }
                } else if let Some(h) = name.strip_prefix("homlift:") {
                    match h.parse::<GraphSpec>() {
                        Ok(spec) => Rule::HomLift(build(&spec, limits)?),
                        Err(e) => {
                            eprintln!("error: in rule homlift: {e}");
                            return Err(USAGE);
                        }
                    }
                } else {
                    eprintln!(
                        "error: unknown rule `{name}`; expected vt, frac, lp, power:r, cover, homlift:SPEC, sumclique-gv or sumclique-lp"
                    );
                    return Err(USAGE);
                }
            }
        };
        rules.push(rule);
    }
    Ok(rules)
}

fn envelope(
    g: &Graph,
    rules: Vec<Rule>,
    (min, max, step): (f64, f64, f64),
    limits: &Limits,
) -> Result<Envelope, u8> {
    let grid = delta_grid(min, max, step).map_err(|e| fail(&e))?;
    let env = best_envelope(g, &grid, &EnvelopeConfig { rules }, limits).map_err(|e| fail(&e))?;
    for note in &env.notes {
        eprintln!("warning: {note}");
    }
    if env.points.is_empty() {
        eprintln!("error: no rule applies to {}", g.label());
        return Err(USAGE);
    }
    Ok(env)
}

fn write_output(env: &Envelope, output: &Output) -> u8 {
    let format = output.format.unwrap_or_else(|| {
        match output
            .path
            .as_ref()
            .and_then(|p| p.extension())
            .and_then(|e| e.to_str())
        {
            Some("json") => Format::Json,
            Some("svg") => Format::Svg,
            _ => Format::Csv,
        }
    });
    let text = match format {
        Format::Csv => env.to_csv(output.log_base),
        Format::Json => env.to_json(output.log_base) + "\n",
        Format::Svg => svg::render(env, output.log_base, &axis_label(output.log_base)),
    };
    match &output.path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return FAILED;
            }
        }
        None => print!("{text}"),
    }
    OK
}

pub fn curve(
    spec: &GraphSpec,
    rules: &str,
    grid: (f64, f64, f64),
    output: &Output,
    limits: &Limits,
) -> u8 {
    let run = || -> Result<u8, u8> {
        let g = build(spec, limits)?;
        let rules = parse_rules(rules, limits)?;
        let env = envelope(&g, rules, grid, limits)?;
        Ok(write_output(&env, output))
    };
    run().unwrap_or_else(|code| code)
}

/// Last grid point, walking up from `δ > 0`, where `a` is strictly above `b`.
fn crossover(env: &Envelope, a: &str, b: &str) -> Option<f64> {
    let b_at: HashMap<u64, f64> = env
        .series(b, BoundKind::Lower)
        .iter()
        .map(|p| (p.delta.to_bits(), p.rate_nats))
        .collect();
    env.series(a, BoundKind::Lower)
        .iter()
        .filter(|p| p.delta > 0.0)
        .map_while(|p| {
            let other = b_at.get(&p.delta.to_bits())?;
            (p.rate_nats > *other).then_some(p.delta)
        })
        .last()
}

pub fn figure_pentagon(output: &Output, limits: &Limits) -> u8 {
    let run = || -> Result<u8, u8> {
        let g = build(&GraphSpec::Cycle(5), limits)?;
        let rules = vec![Rule::Vt, Rule::Power(2), Rule::Lp];
        let env = envelope(&g, rules, (0.0, 1.0, 0.001), limits)?;
        match crossover(&env, "vt-GV", "power:r=2") {
            Some(d) => eprintln!("vt-GV is above the power:r=2 lower bound up to delta = {d}"),
            None => eprintln!("vt-GV is never above the power:r=2 lower bound"),
        }
        Ok(write_output(&env, output))
    };
    run().unwrap_or_else(|code| code)
}

fn skip_reason(e: &Error) -> String {
    let tag = match e {
        Error::NonConstantC { .. } => "NON_CONSTANT_C",
        Error::HypothesisFailed(_) => "HYPOTHESIS_FAILED",
        Error::EdgelessGraph => "EDGELESS",
        _ if is_cap(e) => "CAP",
        _ => "ERROR",
    };
    format!("{tag}: {e}")
}

pub fn verify(spec: &GraphSpec, max_n: usize, limits: &Limits) -> u8 {
    if max_n == 0 {
        eprintln!("error: --max-n must be at least 1");
        return USAGE;
    }
    let g = match build(spec, limits) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let alpha = match independence_number(&g, limits) {
        Ok(m) => m.size,
        Err(e) => return fail(&e),
    };
    let mut notes = Vec::new();
    let gv_ok = match vt_gv(&g, limits) {
        Ok(_) => true,
        Err(e) => {
            notes.push(format!("gv side skipped: {}", skip_reason(&e)));
            false
        }
    };
    let lp_ok = match lp_converse(&g, limits) {
        Ok(_) => true,
        Err(e) => {
            notes.push(format!("LP side skipped: {}", skip_reason(&e)));
            false
        }
    };

    println!("graph: {spec}  alpha = {alpha}");
    println!(
        "{:>3} {:>3} {:>16} {:>12} {:>16}  status",
        "n", "d", "gv_lower", "alpha", "lp_upper"
    );
    let (mut violations, mut capped, mut errors) = (0usize, false, false);
    for n in 1..=max_n {
        for d in 0..=n {
            let lower = if gv_ok {
                match gv_sphere_count(&g, alpha, n, d) {
                    Ok(x) => Some(x),
                    Err(e) => {
                        errors = true;
                        notes.push(format!("gv at n={n}, d={d}: {e}"));
                        None
                    }
                }
            } else {
                None
            };
            let upper = if lp_ok {
                match finite_alpha_upper(&g, n, d) {
                    Ok(x) => Some(x),
                    Err(e) => {
                        errors = true;
                        notes.push(format!("LP at n={n}, d={d}: {e}"));
                        None
                    }
                }
            } else {
                None
            };
            let exact = exact_alpha_power(&g, n, d, limits);
            let show = |x: Option<f64>| x.map_or("-".to_string(), |x| format_significant(x, 10));
            let (value, status) = match &exact {
                Ok(a) => {
                    let a = *a as f64;
                    let low_bad = lower.is_some_and(|l| l > a + 1e-9);
                    let up_bad = upper.is_some_and(|u| a > u * (1.0 + 1e-9) + 1e-9);
                    if low_bad || up_bad {
                        violations += 1;
                        (a.to_string(), "VIOLATION".to_string())
                    } else {
                        (a.to_string(), "ok".to_string())
                    }
                }
                Err(e) if is_cap(e) => {
                    capped = true;
                    ("?".to_string(), format!("unresolved: {e}"))
                }
                Err(e) => {
                    errors = true;
                    ("?".to_string(), format!("error: {e}"))
                }
            };
            println!(
                "{n:>3} {d:>3} {:>16} {value:>12} {:>16}  {status}",
                show(lower),
                show(upper)
            );
        }
    }
    for note in &notes {
        println!("note: {note}");
    }
    if violations > 0 {
        println!("{violations} violation(s)");
        FAILED
    } else if errors {
        FAILED
    } else if capped {
        CAP
    } else {
        OK
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homlift_commas_are_rejoined() {
        assert_eq!(
            split_rules("vt,homlift:kneser:5,2,power:2,lp"),
            ["vt", "homlift:kneser:5,2", "power:2", "lp"]
        );
        assert_eq!(
            split_rules("homlift:pow:kneser:5,2,2"),
            ["homlift:pow:kneser:5,2,2"]
        );
        assert_eq!(split_rules("vt,bogus"), ["vt", "bogus"]);
    }

    #[test]
    fn spectrum_groups_multiplicities() {
        let s = adjacency_spectrum(&Graph::cycle(5).unwrap()).unwrap();
        assert_eq!(grouped_spectrum(&s), "2^1, 0.618033989^2, -1.61803399^2");
    }

    #[test]
    fn log_base_names() {
        assert_eq!(parse_log_base("e").unwrap(), std::f64::consts::E);
        assert_eq!(parse_log_base("10").unwrap(), 10.0);
        assert!(parse_log_base("1").is_err());
        assert!(parse_log_base("-2").is_err());
        assert!(parse_log_base("two").is_err());
    }
}
