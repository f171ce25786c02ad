//! Convex polygons with exact clipping.

use serde::{Deserialize, Serialize};

use super::geom::{orient_sign, signed_area, HalfLine, Line, Point, Segment};
use super::scalar::Scalar;

/// Where a cell edge came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeTag {
    /// Lies on edge `i` of the polygon.
    Polygon(usize),
    /// Lies on generating line `i` of an arrangement.
    Line(usize),
    /// Produced by some other cut (half-planes of a wedge, overlays).
    Cut,
}

/// A convex polygon with positive area, CCW, without repeated or collinear
/// consecutive vertices. Edge `i` runs from `boundary[i]` to `boundary[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexCell {
    pub id: usize,
    pub boundary: Vec<Point>,
    pub edge_tags: Vec<EdgeTag>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellLocation {
    Inside,
    Boundary,
    Outside,
}

impl ConvexCell {
    /// Builds a cell from the vertices of a convex polygon in either
    /// orientation. Returns `None` for zero-area input. Collinear and
    /// repeated vertices are dropped.
    pub fn from_points(id: usize, pts: Vec<Point>) -> Option<ConvexCell> {
        let tags = vec![EdgeTag::Cut; pts.len()];
        Self::from_tagged(id, pts, tags)
    }

    pub fn from_tagged(id: usize, mut pts: Vec<Point>, mut tags: Vec<EdgeTag>) -> Option<ConvexCell> {
        if pts.len() < 3 {
            return None;
        }
        if signed_area(&pts).signum() < 0 {
            pts.reverse();
            // edge i (p_i -> p_{i+1}) becomes edge n-2-i after reversal
            let n = tags.len();
            let mut nt = vec![EdgeTag::Cut; n];
            for (i, t) in tags.iter().enumerate() {
                nt[(2 * n - 2 - i) % n] = *t;
            }
            tags = nt;
        }
        let (pts, tags) = simplify(pts, tags);
        if pts.len() < 3 {
            return None;
        }
        Some(ConvexCell { id, boundary: pts, edge_tags: tags })
    }

    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn edge(&self, i: usize) -> Segment {
        let n = self.boundary.len();
        Segment::new(self.boundary[i].clone(), self.boundary[(i + 1) % n].clone())
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.boundary.len()).map(|i| self.edge(i))
    }

    pub fn area(&self) -> Scalar {
        signed_area(&self.boundary)
    }

    /// Average of the vertices; strictly interior for a convex cell.
    pub fn vertex_centroid(&self) -> Point {
        let n = Scalar::from_int(self.boundary.len() as i64);
        let mut x = Scalar::zero();
        let mut y = Scalar::zero();
        for p in &self.boundary {
            x = x + &p.x;
            y = y + &p.y;
        }
        Point::new(x / &n, y / &n)
    }

    /// Area centroid via a fan triangulation.
    pub fn area_centroid(&self) -> Point {
        let o = &self.boundary[0];
        let mut cx = Scalar::zero();
        let mut cy = Scalar::zero();
        let mut total = Scalar::zero();
        for i in 1..self.boundary.len() - 1 {
            let a = &self.boundary[i];
            let b = &self.boundary[i + 1];
            let w = super::geom::cross3(o, a, b);
            cx = cx + &w * (&o.x + &a.x + &b.x);
            cy = cy + &w * (&o.y + &a.y + &b.y);
            total = total + w;
        }
        let three = Scalar::from_int(3) * total;
        Point::new(cx / &three, cy / &three)
    }

    pub fn locate(&self, p: &Point) -> CellLocation {
        let n = self.boundary.len();
        let mut on_edge = false;
        for i in 0..n {
            match orient_sign(&self.boundary[i], &self.boundary[(i + 1) % n], p) {
                s if s < 0 => return CellLocation::Outside,
                0 => on_edge = true,
                _ => {}
            }
        }
        if on_edge {
            CellLocation::Boundary
        } else {
            CellLocation::Inside
        }
    }

    /// Closed containment.
    pub fn contains(&self, p: &Point) -> bool {
        self.locate(p) != CellLocation::Outside
    }

    pub fn contains_strictly(&self, p: &Point) -> bool {
        self.locate(p) == CellLocation::Inside
    }

    /// Keeps the part where `line.eval >= 0` (`keep_positive`) or `<= 0`.
    /// The new edge gets `tag`. `None` if the rest has zero area.
    pub fn clip(&self, line: &Line, keep_positive: bool, tag: EdgeTag) -> Option<ConvexCell> {
        let sgn = |p: &Point| {
            let s = line.side(p);
            if keep_positive {
                s
            } else {
                -s
            }
        };
        let n = self.boundary.len();
        let sides: Vec<i32> = self.boundary.iter().map(sgn).collect();
        if sides.iter().all(|&s| s >= 0) {
            return Some(self.clone());
        }
        if sides.iter().all(|&s| s <= 0) {
            return None;
        }
        let mut pts = Vec::with_capacity(n + 2);
        let mut tags = Vec::with_capacity(n + 2);
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (&self.boundary[i], &self.boundary[j]);
            let (sp, sq) = (sides[i], sides[j]);
            if sp >= 0 {
                pts.push(p.clone());
                // edge p->q keeps its tag unless it leaves the half-plane
                tags.push(if sq >= 0 || sp > 0 { self.edge_tags[i] } else { tag });
            }
            if (sp > 0 && sq < 0) || (sp < 0 && sq > 0) {
                let e = Segment::new(p.clone(), q.clone());
                let t = e.line_param(line).expect("crossing edge is not parallel");
                pts.push(e.at(&t));
                tags.push(if sp > 0 { tag } else { self.edge_tags[i] });
            }
        }
        // tags[k] labels pts[k] -> pts[k+1]; fix the labels of cut edges
        let m = pts.len();
        for k in 0..m {
            let a = &pts[k];
            let b = &pts[(k + 1) % m];
            if line.contains(a) && line.contains(b) {
                tags[k] = tag;
            }
        }
        ConvexCell::from_tagged(self.id, pts, tags)
    }

    /// Splits along a line; `(negative side, positive side)`.
    pub fn split(&self, line: &Line, tag: EdgeTag) -> (Option<ConvexCell>, Option<ConvexCell>) {
        (self.clip(line, false, tag), self.clip(line, true, tag))
    }

    /// Whether the open interior meets the line.
    pub fn crossed_by(&self, line: &Line) -> bool {
        let mut pos = false;
        let mut neg = false;
        for p in &self.boundary {
            match line.side(p) {
                1 => pos = true,
                -1 => neg = true,
                _ => {}
            }
            if pos && neg {
                return true;
            }
        }
        false
    }

    /// The supporting line of edge `i`, oriented so the cell is on its
    /// non-negative side.
    pub fn edge_halfplane(&self, i: usize) -> (Line, bool) {
        let e = self.edge(i);
        let l = e.line();
        let inside = self.vertex_centroid();
        (l.clone(), l.side(&inside) > 0)
    }

    /// Canonical rotation: start at the lexicographically smallest vertex.
    pub fn canonicalize(&mut self) {
        let (k, _) = self.boundary.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).unwrap();
        self.boundary.rotate_left(k);
        self.edge_tags.rotate_left(k);
    }

    pub fn min_vertex(&self) -> &Point {
        self.boundary.iter().min().unwrap()
    }
}

fn simplify(pts: Vec<Point>, tags: Vec<EdgeTag>) -> (Vec<Point>, Vec<EdgeTag>) {
    // drop repeats
    let mut p2: Vec<Point> = Vec::with_capacity(pts.len());
    let mut t2: Vec<EdgeTag> = Vec::with_capacity(pts.len());
    for (p, t) in pts.into_iter().zip(tags) {
        if p2.last() == Some(&p) {
            // the edge leaving the duplicate replaces the zero-length one
            *t2.last_mut().unwrap() = t;
            continue;
        }
        p2.push(p);
        t2.push(t);
    }
    while p2.len() > 1 && p2.first() == p2.last() {
        p2.pop();
        t2.pop();
    }
    // drop collinear vertices until stable
    loop {
        let n = p2.len();
        if n < 3 {
            return (p2, t2);
        }
        let mut removed = false;
        for i in 0..n {
            let prev = (i + n - 1) % n;
            let next = (i + 1) % n;
            if orient_sign(&p2[prev], &p2[i], &p2[next]) == 0 {
                p2.remove(i);
                // merged edge prev->next keeps the tag of prev->i
                t2.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return (p2, t2);
        }
    }
}

/// Exact intersection of two convex cells, `None` when it has zero area.
pub fn convex_intersection(a: &ConvexCell, b: &ConvexCell) -> Option<ConvexCell> {
    let mut cur = a.clone();
    for i in 0..b.len() {
        let (l, pos) = b.edge_halfplane(i);
        cur = cur.clip(&l, pos, b.edge_tags[i])?;
    }
    Some(cur)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfLineClip {
    Empty,
    Point(Point),
    Segment(Segment),
}

/// The closed portion of a half-line inside a convex cell.
pub fn clip_halfline_to_convex(h: &HalfLine, cell: &ConvexCell) -> HalfLineClip {
    // parametric clipping: t >= 0, and for each edge half-plane n.(o + t d) + c >= 0
    let mut lo = Scalar::zero();
    let mut hi: Option<Scalar> = None;
    let d = h.direction();
    for i in 0..cell.len() {
        let (l, pos) = cell.edge_halfplane(i);
        let (a, b, c) = if pos {
            (l.a.clone(), l.b.clone(), l.c.clone())
        } else {
            (-&l.a, -&l.b, -&l.c)
        };
        let f0 = &a * &h.origin.x + &b * &h.origin.y + &c;
        let fd = &a * &d.x + &b * &d.y;
        if fd.is_zero() {
            if f0.signum() < 0 {
                return HalfLineClip::Empty;
            }
            continue;
        }
        let t = -&f0 / &fd;
        if fd.signum() > 0 {
            if t > lo {
                lo = t;
            }
        } else {
            hi = Some(match hi {
                Some(cur) if cur <= t => cur,
                _ => t,
            });
        }
    }
    let hi = match hi {
        Some(v) => v,
        // a bounded cell always caps the half-line
        None => unreachable!("convex cell is bounded"),
    };
    match lo.cmp(&hi) {
        std::cmp::Ordering::Greater => HalfLineClip::Empty,
        std::cmp::Ordering::Equal => HalfLineClip::Point(h.at(&lo)),
        std::cmp::Ordering::Less => HalfLineClip::Segment(Segment::new(h.at(&lo), h.at(&hi))),
    }
}
