//! Static SVG frames of configurations.

use std::fmt::Write;

use crate::error::Result;
use crate::foldgen::CounterexampleLayout;
use crate::linkage::Configuration;
use crate::point::Point;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 0.05;
const HIGHLIGHT: &str = "#c0392b";
const DIMMED: &str = "#9a9a9a";

/// SVG of `config`; bars flagged in `highlight` are drawn bold, the rest
/// dimmed. The y axis points up.
pub fn render_configuration(config: &Configuration, highlight: &[bool]) -> String {
    let pts: Vec<Point> = config
        .vertices()
        .iter()
        .map(|p| Point::new(p.x, -p.y))
        .collect();
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in &pts {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
    let pad = MARGIN * span;
    let (x0, y0) = (lo.x - pad, lo.y - pad);
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let unit = span / 100.0;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{:.0}" viewBox="{x0:.6} {y0:.6} {w:.6} {h:.6}">"#,
        WIDTH * h / w
    );
    let n = pts.len();
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        let hot = highlight.get(i).copied().unwrap_or(false);
        let (color, width) = if hot {
            (HIGHLIGHT, 0.9 * unit)
        } else {
            (DIMMED, 0.5 * unit)
        };
        let _ = writeln!(
            svg,
            r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{color}" stroke-width="{width:.6}" stroke-linecap="round"/>"#,
            a.x, a.y, b.x, b.y
        );
    }
    for p in &pts {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="white" stroke="black" stroke-width="{:.6}"/>"#,
            p.x,
            p.y,
            1.2 * unit,
            0.3 * unit
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// The layout at loop parameters `params`, gadget bars highlighted.
pub fn render_layout(layout: &CounterexampleLayout, params: &[f64]) -> Result<String> {
    let config = layout.gamma_at(params)?;
    let highlight: Vec<bool> = (0..config.n()).map(|b| layout.is_gadget_bar(b)).collect();
    Ok(render_configuration(&config, &highlight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foldgen::{build_counterexample, FoldLengths};

    #[test]
    fn svg_is_deterministic_and_complete() {
        let layout = build_counterexample(1, FoldLengths::default()).unwrap();
        let a = render_layout(&layout, &[0.0]).unwrap();
        let b = render_layout(&layout, &[0.0]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<line").count(), 5);
        assert_eq!(a.matches("<circle").count(), 5);
        assert_eq!(a.matches(HIGHLIGHT).count(), 3);
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert_ne!(a, render_layout(&layout, &[0.5]).unwrap());
    }

    #[test]
    fn view_box_has_five_percent_margin() {
        let c = Configuration::new(
            crate::linkage::Linkage::new(vec![1.0, 1.0, 2f64.sqrt()]).unwrap(),
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
            ],
        )
        .unwrap();
        let svg = render_configuration(&c, &[]);
        assert!(
            svg.contains(r#"viewBox="-0.050000 -1.050000 1.100000 1.100000""#),
            "{svg}"
        );
    }
}
