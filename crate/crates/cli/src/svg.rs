//! Static line plot of an envelope: one polyline per bound, dashed for upper
//! bounds, with a legend.

use std::fmt::Write;

use graphcap::rates::{BoundKind, Envelope};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 24.0;
const BOTTOM: f64 = 48.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render(env: &Envelope, log_base: f64, axis_label: &str) -> String {
    let scale = log_base.ln();
    let mut series: Vec<(&str, BoundKind)> = env
        .points
        .iter()
        .map(|p| (p.provenance.as_str(), p.kind))
        .collect();
    series.sort();
    series.dedup();

    let deltas = env.points.iter().map(|p| p.delta);
    let x_min = deltas.clone().fold(f64::INFINITY, f64::min);
    let x_max = deltas.fold(f64::NEG_INFINITY, f64::max);
    let (x_min, x_max) = if x_min < x_max {
        (x_min, x_max)
    } else {
        (0.0, 1.0)
    };
    let y_max = env
        .points
        .iter()
        .map(|p| p.rate_nats / scale)
        .fold(0.0f64, f64::max)
        .max(1e-12)
        * 1.05;

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| TOP + plot_h - y / y_max * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{LEFT}" y="16">{}</text>"#,
        escape(&env.graph_label)
    );
    let _ = writeln!(
        out,
        r#"<path d="M{LEFT},{TOP} V{:.2} H{:.2}" fill="none" stroke="black"/>"#,
        TOP + plot_h,
        LEFT + plot_w
    );
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let x = x_min + t * (x_max - x_min);
        let y = t * y_max;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{:.2}</text>"#,
            px(x),
            TOP + plot_h + 16.0,
            x
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{:.3}</text>"#,
            LEFT - 6.0,
            py(y) + 4.0,
            y
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">delta</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 8.0
    );
    let _ = writeln!(
        out,
        r#"<text x="14" y="{:.2}" text-anchor="middle" transform="rotate(-90 14 {:.2})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(axis_label)
    );

    for (i, (provenance, kind)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let dash = if *kind == BoundKind::Upper {
            r#" stroke-dasharray="6 3""#
        } else {
            ""
        };
        let coords: Vec<String> = env
            .points
            .iter()
            .filter(|p| p.provenance == *provenance && p.kind == *kind)
            .map(|p| format!("{:.2},{:.2}", px(p.delta), py(p.rate_nats / scale)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>"#,
            coords.join(" ")
        );
        let ly = TOP + 12.0 + 18.0 * i as f64;
        let lx = LEFT + plot_w + 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="1.5"{dash}/>"#,
            lx + 24.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{} ({})</text>"#,
            lx + 30.0,
            ly + 4.0,
            escape(provenance),
            kind.as_str()
        );
    }
    out.push_str("</svg>\n");
    out
}
