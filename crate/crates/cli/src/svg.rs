//! Persistence diagram and histograms as a standalone SVG document.

use std::fmt::Write;

use lattice_order::persistence::PersistenceDiagram;
use lattice_order::scores::{histogram, DiagramHistogram, Statistic};
use lattice_order::Result;

const WIDTH: f64 = 780.0;
const HEIGHT: f64 = 470.0;
const H0_COLOR: &str = "#1f77b4";
const H1_COLOR: &str = "#d62728";

struct Panel {
    x: f64,
    y: f64,
    w: f64,
    h: f64,
}

impl Panel {
    fn px(&self, v: f64, max: f64) -> f64 {
        self.x + v / max * self.w
    }

    fn py(&self, v: f64, max: f64) -> f64 {
        self.y + self.h - v / max * self.h
    }
}

/// Render the diagram (birth vs death, with diagonal) and two side histograms:
/// 0D death times and 1D lifetimes.
pub fn render(diagram: &PersistenceDiagram, bins: usize) -> Result<String> {
    let h0_hist = histogram(diagram, 0, Statistic::Death, bins)?;
    let h1_hist = histogram(diagram, 1, Statistic::Lifetime, bins)?;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    scatter(&mut s, diagram);
    bars(&mut s, &Panel { x: 520.0, y: 40.0, w: 220.0, h: 140.0 }, &h0_hist, "H0 death", H0_COLOR);
    bars(&mut s, &Panel { x: 520.0, y: 260.0, w: 220.0, h: 140.0 }, &h1_hist, "H1 lifetime", H1_COLOR);
    s.push_str("</svg>\n");
    Ok(s)
}

fn scatter(s: &mut String, d: &PersistenceDiagram) {
    let p = Panel { x: 60.0, y: 40.0, w: 360.0, h: 360.0 };
    let finite_max = d.pairs().filter(|q| !q.is_infinite()).map(|q| q.death).fold(0.0, f64::max);
    let top = if d.threshold.is_finite() { finite_max.max(d.threshold) } else { finite_max };
    let max = if top > 0.0 { top * 1.05 } else { 1.0 };

    let _ = writeln!(s, r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="13">Persistence diagram</text>"#, p.x + p.w / 2.0);
    axes(s, &p, max, max);
    let _ = writeln!(
        s,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-dasharray="4 3"/>"##,
        p.px(0.0, max),
        p.py(0.0, max),
        p.px(max, max),
        p.py(max, max)
    );
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">birth</text>"#, p.x + p.w / 2.0, p.y + p.h + 34.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">death</text>"#,
        p.y + p.h / 2.0,
        p.y + p.h / 2.0
    );

    let _ = writeln!(s, r#"<g fill="{H0_COLOR}" fill-opacity="0.7">"#);
    for q in &d.h0 {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3.5"/>"#, p.px(q.birth, max), p.py(q.death, max));
    }
    s.push_str("</g>\n");
    let _ = writeln!(s, r#"<g fill="{H1_COLOR}" fill-opacity="0.7">"#);
    for q in &d.h1 {
        let (cx, cy) = (p.px(q.birth, max), p.py(q.death, max));
        let _ = writeln!(s, r#"<rect x="{:.2}" y="{:.2}" width="7" height="7"/>"#, cx - 3.5, cy - 3.5);
    }
    s.push_str("</g>\n");

    // infinite bars sit on the top edge as downward triangles
    if d.infinite_h0_count > 0 {
        let (cx, cy) = (p.px(0.0, max), p.y);
        let _ = writeln!(
            s,
            r#"<path d="M {:.2} {:.2} L {:.2} {:.2} L {:.2} {:.2} Z" fill="{H0_COLOR}"/>"#,
            cx - 6.0,
            cy - 6.0,
            cx + 6.0,
            cy - 6.0,
            cx,
            cy + 5.0
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">inf x{}</text>"#, cx + 9.0, cy - 1.0, d.infinite_h0_count);
    }

    let ly = p.y + p.h + 52.0;
    let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{ly:.2}" r="3.5" fill="{H0_COLOR}"/>"#, p.x + 10.0);
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">H0 ({})</text>"#, p.x + 18.0, ly + 4.0, d.h0.len());
    let _ = writeln!(s, r#"<rect x="{:.2}" y="{:.2}" width="7" height="7" fill="{H1_COLOR}"/>"#, p.x + 96.5, ly - 3.5);
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">H1 ({})</text>"#, p.x + 108.0, ly + 4.0, d.h1.len());
    let _ = writeln!(
        s,
        r#"<path d="M {:.2} {:.2} L {:.2} {:.2} L {:.2} {:.2} Z" fill="{H0_COLOR}"/>"#,
        p.x + 184.0,
        ly - 4.0,
        p.x + 196.0,
        ly - 4.0,
        p.x + 190.0,
        ly + 5.0
    );
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">infinite</text>"#, p.x + 202.0, ly + 4.0);
}

fn axes(s: &mut String, p: &Panel, xmax: f64, ymax: f64) {
    let _ = writeln!(
        s,
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        p.x, p.y, p.w, p.h
    );
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let (vx, vy) = (t * xmax, t * ymax);
        let (x, y) = (p.px(vx, xmax), p.py(vy, ymax));
        let bottom = p.y + p.h;
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{bottom:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, bottom + 4.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, bottom + 16.0, tick(vx));
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black"/>"#, p.x - 4.0, p.x);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, p.x - 6.0, y + 4.0, tick(vy));
    }
}

fn tick(v: f64) -> String {
    if v == v.round() && v.abs() < 1e6 {
        format!("{v:.0}")
    } else {
        format!("{v:.3}")
    }
}

fn bars(s: &mut String, p: &Panel, hist: &DiagramHistogram, title: &str, color: &str) {
    let xmax = hist.bin_edges.last().copied().filter(|&v| v > 0.0).unwrap_or(1.0);
    let ymax = hist.counts.iter().copied().max().unwrap_or(0).max(1) as f64;
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{title}</text>"#, p.x + p.w / 2.0, p.y - 14.0);
    axes(s, p, xmax, ymax);
    let _ = writeln!(s, r#"<g fill="{color}" fill-opacity="0.7" stroke="{color}">"#);
    let lone = hist.bin_edges.first() == hist.bin_edges.last();
    for (i, &count) in hist.counts.iter().enumerate().filter(|(_, &c)| c > 0) {
        let (lo, hi) = if lone {
            (0.0, xmax)
        } else {
            (hist.bin_edges[i], hist.bin_edges[i + 1])
        };
        let (x0, x1) = (p.px(lo, xmax), p.px(hi, xmax));
        let y = p.py(count as f64, ymax);
        let _ = writeln!(
            s,
            r#"<rect x="{x0:.2}" y="{y:.2}" width="{:.2}" height="{:.2}"/>"#,
            (x1 - x0).max(1.0),
            p.y + p.h - y
        );
    }
    s.push_str("</g>\n");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram() -> PersistenceDiagram {
        PersistenceDiagram::from_pairs(1.0, [0.5, 0.5, 0.5], [(0.5, 0.7)], 1)
    }

    #[test]
    fn renders_all_series() {
        let svg = render(&diagram(), 10).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 3 + 1);
        assert!(svg.contains("inf x1"));
        assert!(svg.contains("stroke-dasharray"));
    }

    #[test]
    fn empty_diagram_renders() {
        let d = PersistenceDiagram::from_pairs(0.0, [], [], 1);
        let svg = render(&d, 5).unwrap();
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn deterministic() {
        assert_eq!(render(&diagram(), 8).unwrap(), render(&diagram(), 8).unwrap());
    }
}
