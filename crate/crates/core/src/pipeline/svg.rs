use std::fmt::Write;

use crate::kernel::Point;
use crate::mirror::reflected_region;

use super::{Instance, Run};

const PALETTE: [&str; 8] = ["#f4a261", "#2a9d8f", "#e9c46a", "#8ab17d", "#b56576", "#6d597a", "#90be6d", "#277da1"];

#[derive(Clone, Debug, Default)]
pub struct SvgOptions {
    /// Cell whose guarding-regions are drawn.
    pub selected_scr: Option<usize>,
    /// Overlay the reflected region of chosen guard `.0` through mirror `.1`.
    pub reflected: Option<(usize, usize)>,
}

struct Canvas {
    out: String,
    scale: f64,
    x0: f64,
    y1: f64,
}

impl Canvas {
    fn xy(&self, p: &Point) -> (f64, f64) {
        let (x, y) = p.to_f64();
        ((x - self.x0) * self.scale + 10.0, (self.y1 - y) * self.scale + 10.0)
    }

    fn poly(&mut self, pts: &[Point], attrs: &str) {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.xy(p);
            let _ = write!(d, "{}{:.3},{:.3}", if i == 0 { "" } else { " " }, x, y);
        }
        let _ = writeln!(self.out, r#"  <polygon points="{d}" {attrs}/>"#);
    }

    fn line(&mut self, a: &Point, b: &Point, attrs: &str) {
        let (x1, y1) = self.xy(a);
        let (x2, y2) = self.xy(b);
        let _ = writeln!(self.out, r#"  <line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {attrs}/>"#);
    }
}

/// Deterministic SVG of a run: cells, guarding-regions of one cell, polygon,
/// mirrors, guards and an optional reflected region.
pub fn render_svg(inst: &Instance, run: &Run, opts: &SvgOptions) -> String {
    let p = &inst.polygon;
    let (x0, y0, x1, y1) = p.bbox();
    let (x0, y0, x1, y1) = (x0.to_f64(), y0.to_f64(), x1.to_f64(), y1.to_f64());
    let scale = 600.0 / (x1 - x0).max(y1 - y0);
    let (w, h) = ((x1 - x0) * scale + 20.0, (y1 - y0) * scale + 20.0);
    let mut c = Canvas { out: String::new(), scale, x0, y1 };
    let _ = writeln!(c.out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#);
    c.out.push_str("<g id=\"cells\">\n");
    for cell in &run.scrs.cells {
        c.poly(&cell.boundary, r##"fill="none" stroke="#bbb" stroke-width="0.5""##);
    }
    c.out.push_str("</g>\n");
    if let Some(s) = opts.selected_scr {
        c.out.push_str("<g id=\"guarding-regions\">\n");
        for (k, g) in run.grs.iter().filter(|g| g.scr == s).enumerate() {
            let attrs = format!(r##"fill="{}" fill-opacity="0.6" stroke="#555" stroke-width="0.5""##, PALETTE[k % PALETTE.len()]);
            c.poly(&g.region.boundary, &attrs);
        }
        c.out.push_str("</g>\n");
    }
    if let Some((gi, e)) = opts.reflected {
        if let Some(g) = run.solution.guards.get(gi) {
            if let Ok(regions) = reflected_region(p, g, e) {
                c.out.push_str("<g id=\"reflected\">\n");
                for r in regions {
                    c.poly(&r.boundary, r##"fill="#a8dadc" fill-opacity="0.5" stroke="none""##);
                }
                c.out.push_str("</g>\n");
            }
        }
    }
    c.out.push_str("<g id=\"polygon\">\n");
    c.poly(p.vertices(), r##"fill="none" stroke="#222" stroke-width="2""##);
    for e in p.mirror_edges() {
        let s = p.edge(e);
        c.line(&s.a, &s.b, r##"stroke="#1d4ed8" stroke-width="4" stroke-linecap="round""##);
    }
    c.out.push_str("</g>\n<g id=\"guards\">\n");
    for g in &run.solution.guards {
        let (x, y) = c.xy(g);
        let _ = writeln!(c.out, r##"  <circle cx="{x:.3}" cy="{y:.3}" r="5" fill="#d62828"/>"##);
    }
    c.out.push_str("</g>\n</svg>\n");
    c.out
}

