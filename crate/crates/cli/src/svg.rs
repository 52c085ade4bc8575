//! Self-contained SVG rendering of a figure.
//!
//! Polylines are drawn in pixel coordinates. Each also carries its exact
//! plot-space vertices in `data-points` (shortest round-trip `f64` text),
//! plus `data-family` and `data-param`, so curves can be checked from the
//! file alone.

use std::fmt::Write as _;

use crate::figures::{Curve, FigureSpec};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Tick positions on `[lo, hi]` at a 1-2-5 step giving about six ticks.
pub fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    let r = (v * 1e6).round() / 1e6;
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

struct Frame {
    x: (f64, f64),
    l: (f64, f64),
}

impl Frame {
    fn sx(&self) -> f64 {
        (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) / (self.x.1 - self.x.0)
    }

    fn sy(&self) -> f64 {
        (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM) / (self.l.1 - self.l.0)
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN_LEFT + (x - self.x.0) * self.sx()
    }

    fn py(&self, l: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM - (l - self.l.0) * self.sy()
    }
}

/// The SVG document. `command_line` is recorded verbatim in the metadata.
pub fn render(spec: &FigureSpec, curves: &[Curve], command_line: &str) -> String {
    let f = Frame {
        x: spec.x_range,
        l: spec.lambda_range,
    };
    let (left, right) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (top, bottom) = (MARGIN_TOP, HEIGHT - MARGIN_BOTTOM);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    // XML comments may not contain "--", so the command line itself lives in <metadata>
    let _ = writeln!(s, "<!-- generated by conformal5 figure; command line in metadata -->");
    let _ = writeln!(s, "<metadata>{}</metadata>", escape(command_line));
    let _ = writeln!(
        s,
        "<title>Geodesics through (0, 1) in the ({}, lambda) plane</title>",
        spec.plane_label()
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot-area"><rect x="{left}" y="{top}" width="{}" height="{}"/></clipPath></defs>"#,
        right - left,
        bottom - top
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    let _ = writeln!(s, r##"<g stroke="#000" stroke-width="1" fill="none">"##);
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{}" height="{}"/>"#,
        right - left,
        bottom - top
    );
    for t in ticks(f.x.0, f.x.1) {
        let x = f.px(t);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.3}" y1="{bottom}" x2="{x:.3}" y2="{:.3}"/>"#,
            bottom + 5.0
        );
    }
    for t in ticks(f.l.0, f.l.1) {
        let y = f.py(t);
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{y:.3}" x2="{left}" y2="{y:.3}"/>"#,
            left - 5.0
        );
    }
    if f.x.0 < 0.0 && f.x.1 > 0.0 {
        let x = f.px(0.0);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.3}" y1="{top}" x2="{x:.3}" y2="{bottom}" stroke="#999" stroke-dasharray="4 3"/>"##
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g text-anchor="middle">"#);
    for t in ticks(f.x.0, f.x.1) {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}">{}</text>"#,
            f.px(t),
            bottom + 18.0,
            tick_label(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}">{}</text>"#,
        (left + right) / 2.0,
        HEIGHT - 8.0,
        escape(spec.plane_label())
    );
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g text-anchor="end">"#);
    for t in ticks(f.l.0, f.l.1) {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}">{}</text>"#,
            left - 8.0,
            f.py(t) + 4.0,
            tick_label(t)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.3}" transform="rotate(-90 14 {:.3})" text-anchor="middle">lambda</text>"#,
        (top + bottom) / 2.0,
        (top + bottom) / 2.0
    );

    let _ = writeln!(
        s,
        r##"<g clip-path="url(#plot-area)" fill="none" stroke="#1f4e9c" stroke-width="1.5" stroke-linejoin="round">"##
    );
    for c in curves {
        let _ = write!(s, r#"<polyline data-family="{}" data-param="{}""#, c.family, c.param);
        if c.family == "axis" {
            let _ = write!(s, r##" stroke="#c0392b""##);
        }
        let exact: Vec<String> = c.points.iter().map(|(x, l)| format!("{x},{l}")).collect();
        let pixels: Vec<String> = c
            .points
            .iter()
            .map(|(x, l)| format!("{:.3},{:.3}", f.px(*x), f.py(*l)))
            .collect();
        let _ = writeln!(
            s,
            r#" data-points="{}" points="{}"/>"#,
            exact.join(" "),
            pixels.join(" ")
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r##"<circle cx="{:.3}" cy="{:.3}" r="3" fill="#000"/>"##,
        f.px(crate::figures::ANCHOR.0),
        f.py(crate::figures::ANCHOR.1)
    );
    let _ = writeln!(s, "</svg>");
    s
}
