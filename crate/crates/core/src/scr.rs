//! Second-order-convex-regions: the line arrangement clipped to the polygon.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{intersect_lines, ConvexCell, EdgeTag, Line, LineIntersection, Point, Scalar};
use crate::polygon::{PointClass, SimplePolygon};

pub const DEFAULT_LINE_CAP: usize = 512;

/// Which lines generate the arrangement.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineLevel {
    /// Vertex-pair lines, then lines joining their intersections to reflex
    /// vertices.
    #[default]
    Full,
    /// Vertex-pair lines only.
    Pairs,
    /// Lines through mutually visible vertex pairs.
    Visible,
    /// Polygon edge lines only.
    Edges,
}

impl fmt::Display for LineLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineLevel::Full => "full",
            LineLevel::Pairs => "pairs",
            LineLevel::Visible => "visible",
            LineLevel::Edges => "edges",
        })
    }
}

impl FromStr for LineLevel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "full" => Ok(LineLevel::Full),
            "pairs" => Ok(LineLevel::Pairs),
            "visible" => Ok(LineLevel::Visible),
            "edges" => Ok(LineLevel::Edges),
            _ => Err(format!("unknown line level {s:?}")),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScrSet {
    pub cells: Vec<ConvexCell>,
    pub generating_lines: Vec<Line>,
}

impl ScrSet {
    pub fn cell(&self, id: usize) -> &ConvexCell {
        &self.cells[id]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The cell containing `p` (closed), lowest id first.
    pub fn locate(&self, p: &Point) -> Option<usize> {
        self.cells.iter().position(|c| c.contains(p))
    }
}

struct LineSet {
    lines: Vec<Line>,
    seen: HashSet<Line>,
    cap: usize,
}

impl LineSet {
    fn push(&mut self, l: Option<Line>) -> Result<()> {
        if let Some(l) = l {
            if self.seen.insert(l.clone()) {
                self.lines.push(l);
                if self.lines.len() > self.cap {
                    return Err(Error::LineBudgetExceeded(self.cap));
                }
            }
        }
        Ok(())
    }
}

/// Deduplicated canonical lines for the arrangement.
pub fn generate_lines(p: &SimplePolygon, level: LineLevel, cap: usize) -> Result<Vec<Line>> {
    let n = p.len();
    let mut set = LineSet { lines: Vec::new(), seen: HashSet::new(), cap };
    for i in 0..n {
        set.push(Some(p.edge_line(i).clone()))?;
    }
    if level == LineLevel::Edges {
        return Ok(set.lines);
    }
    for i in 0..n {
        for j in i + 1..n {
            if level == LineLevel::Visible && !p.sees(p.vertex(i), p.vertex(j)) {
                continue;
            }
            set.push(Line::through(p.vertex(i), p.vertex(j)))?;
        }
    }
    if level != LineLevel::Full {
        return Ok(set.lines);
    }
    let reflex: Vec<Point> = p.reflex_vertices().into_iter().map(|i| p.vertex(i).clone()).collect();
    if reflex.is_empty() {
        return Ok(set.lines);
    }
    let step1 = set.lines.clone();
    let mut points: HashSet<Point> = HashSet::new();
    for i in 0..step1.len() {
        for j in i + 1..step1.len() {
            if let LineIntersection::Point(x) = intersect_lines(&step1[i], &step1[j]) {
                if points.insert(x.clone()) {
                    for r in &reflex {
                        if *r != x {
                            set.push(Line::through(&x, r))?;
                        }
                    }
                }
            }
        }
    }
    Ok(set.lines)
}

/// Builds the cells of the arrangement of `generate_lines(p)` inside `p`.
pub fn build_scr(p: &SimplePolygon, level: LineLevel, cap: usize) -> Result<ScrSet> {
    let lines = generate_lines(p, level, cap)?;
    Ok(arrange(p, lines))
}

/// Cells of the arrangement of `lines` clipped to `p`. The polygon edge
/// lines must be among `lines`.
pub fn arrange(p: &SimplePolygon, lines: Vec<Line>) -> ScrSet {
    let (x0, y0, x1, y1) = p.bbox();
    let one = Scalar::one();
    let (x0, y0, x1, y1) = (&x0 - &one, &y0 - &one, &x1 + &one, &y1 + &one);
    let bbox = ConvexCell::from_points(
        0,
        vec![Point::new(x0.clone(), y0.clone()), Point::new(x1.clone(), y0), Point::new(x1, y1.clone()), Point::new(x0, y1)],
    )
    .expect("bbox has area");
    let mut cells = vec![bbox];
    let edge_lines: HashSet<&Line> = (0..p.len()).map(|i| p.edge_line(i)).collect();
    let split_all = |cells: Vec<ConvexCell>, l: &Line, tag: EdgeTag| -> Vec<ConvexCell> {
        let mut out = Vec::with_capacity(cells.len() + 4);
        for c in cells {
            if c.crossed_by(l) {
                let (a, b) = c.split(l, tag);
                out.extend(a);
                out.extend(b);
            } else {
                out.push(c);
            }
        }
        out
    };
    // edge lines first, then drop the pieces outside
    for (k, l) in lines.iter().enumerate() {
        if edge_lines.contains(l) {
            cells = split_all(cells, l, EdgeTag::Line(k));
        }
    }
    cells.retain(|c| p.classify_point(&c.area_centroid()) == PointClass::Interior);
    for (k, l) in lines.iter().enumerate() {
        if !edge_lines.contains(l) {
            cells = split_all(cells, l, EdgeTag::Line(k));
        }
    }
    for c in cells.iter_mut() {
        retag(p, &lines, c);
        c.canonicalize();
    }
    cells.sort_by(|a, b| a.min_vertex().cmp(b.min_vertex()).then_with(|| a.boundary.cmp(&b.boundary)));
    for (i, c) in cells.iter_mut().enumerate() {
        c.id = i;
    }
    ScrSet { cells, generating_lines: lines }
}

/// Polygon edge tags for cell edges on the boundary, line tags otherwise.
fn retag(p: &SimplePolygon, lines: &[Line], c: &mut ConvexCell) {
    for i in 0..c.len() {
        let e = c.edge(i);
        let mid = e.midpoint();
        let on_edge = (0..p.len()).find(|&k| {
            let pe = p.edge(k);
            pe.contains(&e.a) && pe.contains(&e.b) && pe.contains(&mid)
        });
        c.edge_tags[i] = match on_edge {
            Some(k) => EdgeTag::Polygon(k),
            None => {
                let l = e.line();
                match lines.iter().position(|m| *m == l) {
                    Some(k) => EdgeTag::Line(k),
                    None => EdgeTag::Cut,
                }
            }
        };
    }
}
