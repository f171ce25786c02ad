//! Simple polygons and direct visibility.

mod region;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{orient_sign, segment_contact, signed_area, Line, Point, Scalar, Segment, SegmentContact, Vector};

pub use region::VisibilityRegion;
pub(crate) use region::{enters_interior, first_hit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointClass {
    Interior,
    Boundary,
    Exterior,
}

/// A simple polygon with integer vertices in CCW order. Edge `i` runs from
/// vertex `i` to vertex `i + 1`.
#[derive(Clone, Debug)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
    mirrors: Vec<bool>,
    lines: Vec<Line>,
}

impl SimplePolygon {
    /// Validates and builds a polygon. Clockwise input is reversed and the
    /// mirror indices remapped to the new edge numbering. `mirrors = None`
    /// makes every edge a mirror.
    pub fn new(vertices: Vec<Point>, mirrors: Option<&[usize]>) -> Result<SimplePolygon> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("{n} vertices, need at least 3")));
        }
        for v in &vertices {
            if !v.x.is_integer() || !v.y.is_integer() {
                return Err(Error::InvalidPolygon(format!("vertex {v:?} is not integral")));
            }
        }
        let mut mask = vec![mirrors.is_none(); n];
        if let Some(ms) = mirrors {
            for &m in ms {
                if m >= n {
                    return Err(Error::InvalidPolygon(format!("mirror edge {m} out of range")));
                }
                mask[m] = true;
            }
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidPolygon(format!("repeated vertex at {i}")));
            }
        }
        let area = signed_area(&vertices);
        if area.is_zero() {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        let (vertices, mask) = if area.signum() < 0 {
            // new edge k is old edge n - 1 - k, reversed
            let vs: Vec<Point> = (0..n).map(|k| vertices[(n - k) % n].clone()).collect();
            let ms: Vec<bool> = (0..n).map(|k| mask[n - 1 - k]).collect();
            (vs, ms)
        } else {
            (vertices, mask)
        };
        let edges: Vec<Segment> =
            (0..n).map(|i| Segment::new(vertices[i].clone(), vertices[(i + 1) % n].clone())).collect();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                match segment_contact(&edges[i], &edges[j]) {
                    SegmentContact::None => {}
                    SegmentContact::Touch(_) if adjacent => {}
                    _ => return Err(Error::InvalidPolygon(format!("edges {i} and {j} intersect"))),
                }
            }
        }
        let lines = edges.iter().map(|e| e.line()).collect();
        Ok(SimplePolygon { vertices, mirrors: mask, lines })
    }

    pub fn from_coords(coords: &[[i64; 2]], mirrors: Option<&[usize]>) -> Result<SimplePolygon> {
        SimplePolygon::new(coords.iter().map(|c| Point::int(c[0], c[1])).collect(), mirrors)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.len()]
    }

    pub fn edge(&self, i: usize) -> Segment {
        let n = self.len();
        Segment::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone())
    }

    pub fn edge_line(&self, i: usize) -> &Line {
        &self.lines[i]
    }

    pub fn is_mirror(&self, i: usize) -> bool {
        self.mirrors[i]
    }

    pub fn mirror_edges(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.mirrors[i]).collect()
    }

    /// Same polygon with a different mirror set.
    pub fn with_mirrors(&self, mirrors: &[usize]) -> SimplePolygon {
        let mut p = self.clone();
        p.mirrors = vec![false; self.len()];
        for &m in mirrors {
            p.mirrors[m] = true;
        }
        p
    }

    pub fn area(&self) -> Scalar {
        signed_area(&self.vertices)
    }

    /// `(min_x, min_y, max_x, max_y)`.
    pub fn bbox(&self) -> (Scalar, Scalar, Scalar, Scalar) {
        let mut it = self.vertices.iter();
        let first = it.next().unwrap();
        let (mut x0, mut y0, mut x1, mut y1) = (first.x.clone(), first.y.clone(), first.x.clone(), first.y.clone());
        for p in it {
            if p.x < x0 {
                x0 = p.x.clone();
            }
            if p.x > x1 {
                x1 = p.x.clone();
            }
            if p.y < y0 {
                y0 = p.y.clone();
            }
            if p.y > y1 {
                y1 = p.y.clone();
            }
        }
        (x0, y0, x1, y1)
    }

    /// Side of edge `i`'s line that faces the interior: `> 0` inside.
    pub fn inner_side(&self, i: usize, p: &Point) -> i32 {
        let e = self.edge(i);
        orient_sign(&e.a, &e.b, p)
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        let n = self.len();
        orient_sign(&self.vertices[(i + n - 1) % n], &self.vertices[i], &self.vertices[(i + 1) % n]) < 0
    }

    pub fn reflex_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_reflex(i)).collect()
    }

    pub fn classify_point(&self, p: &Point) -> PointClass {
        let n = self.len();
        for i in 0..n {
            let u = &self.vertices[i];
            let w = &self.vertices[(i + 1) % n];
            if orient_sign(u, w, p) == 0 && between(u, w, p) {
                return PointClass::Boundary;
            }
        }
        let mut inside = false;
        for i in 0..n {
            let u = &self.vertices[i];
            let w = &self.vertices[(i + 1) % n];
            let up = u.y > p.y;
            if up == (w.y > p.y) {
                continue;
            }
            let o = orient_sign(u, w, p);
            if (w.y > u.y && o > 0) || (w.y < u.y && o < 0) {
                inside = !inside;
            }
        }
        if inside {
            PointClass::Interior
        } else {
            PointClass::Exterior
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.classify_point(p) != PointClass::Exterior
    }

    fn require_inside(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::QueryOutsidePolygon)
        }
    }

    /// Whether the closed segment `ab` lies in the closed polygon.
    pub fn segment_visible(&self, a: &Point, b: &Point) -> Result<bool> {
        self.require_inside(a)?;
        self.require_inside(b)?;
        Ok(self.sees(a, b))
    }

    /// [`Self::segment_visible`] without the membership checks; exterior
    /// endpoints yield `false`.
    pub fn sees(&self, a: &Point, b: &Point) -> bool {
        if a == b {
            return self.contains(a);
        }
        let n = self.len();
        let mut events: Vec<Scalar> = Vec::new();
        let seg = Segment { a: a.clone(), b: b.clone() };
        for i in 0..n {
            let u = &self.vertices[i];
            let w = &self.vertices[(i + 1) % n];
            let o1 = orient_sign(a, b, u);
            let o2 = orient_sign(a, b, w);
            if o1 * o2 > 0 {
                continue;
            }
            let o3 = orient_sign(u, w, a);
            let o4 = orient_sign(u, w, b);
            if o3 * o4 > 0 {
                continue;
            }
            if o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
                return false;
            }
            if o1 == 0 {
                let t = seg.param_of(u);
                if t.signum() > 0 && t < Scalar::one() {
                    events.push(t);
                }
            }
        }
        events.push(Scalar::zero());
        events.push(Scalar::one());
        events.sort();
        events.dedup();
        let two = Scalar::from_int(2);
        for w in events.windows(2) {
            let mid = seg.at(&((&w[0] + &w[1]) / &two));
            if self.classify_point(&mid) == PointClass::Exterior {
                return false;
            }
        }
        true
    }

    /// The closed parameter interval of `s` visible from `t`, if it has
    /// positive length. `t` must lie in the polygon and `s` in the polygon.
    pub fn visible_interval(&self, t: &Point, s: &Segment) -> Option<(Scalar, Scalar)> {
        let mut shadows: Vec<(Option<Scalar>, Option<Scalar>)> = Vec::new();
        let n = self.len();
        let pa = &s.a;
        let d = s.direction();
        for i in 0..n {
            let u = &self.vertices[i];
            let w = &self.vertices[(i + 1) % n];
            let st = orient_sign(u, w, t);
            if st == 0 {
                continue;
            }
            // beyond the edge line, and strictly between rays t->u and t->w
            let ouw = orient_sign(t, u, w);
            let cons = [
                lin_orient(u, w, pa, &d, -st),
                lin_orient(t, u, pa, &d, ouw),
                lin_orient(t, w, pa, &d, -ouw),
            ];
            if let Some(iv) = open_range(&cons) {
                shadows.push(iv);
            }
        }
        // leaving the polygon directly at t
        for cone in self.exit_shadows(t) {
            let cons: Vec<(Scalar, Scalar)> =
                cone.iter().map(|(dir, sg)| lin_orient_dir(t, dir, pa, &d, *sg)).collect();
            if let Some(iv) = open_range(&cons) {
                shadows.push(iv);
            }
        }
        let comps = complement(shadows);
        let two = Scalar::from_int(2);
        for (lo, hi) in comps {
            if lo == hi {
                continue;
            }
            let mid = s.at(&((&lo + &hi) / &two));
            if self.sees(t, &mid) {
                if self.sees(t, &s.at(&lo)) && self.sees(t, &s.at(&hi)) {
                    return Some((lo, hi));
                }
                log::debug!("shadow interval failed endpoint check, scanning");
                return self.visible_interval_scan(t, s);
            }
        }
        None
    }

    /// Forbidden open direction cones at a boundary point: each inner vec is
    /// a conjunction of strict `orient(t, t + dir, p) * sign > 0` tests.
    fn exit_shadows(&self, t: &Point) -> Vec<Vec<(Vector, i32)>> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            let v = &self.vertices[i];
            if v == t {
                let a = self.vertices[(i + 1) % n].sub(v);
                let b = self.vertices[(i + n - 1) % n].sub(v);
                match a.cross(&b).signum() {
                    // convex: outside if right of a or left of b
                    1 => {
                        out.push(vec![(a.clone(), -1)]);
                        out.push(vec![(b, 1)]);
                    }
                    -1 => out.push(vec![(b, 1), (a, -1)]),
                    _ => out.push(vec![(a, -1)]),
                }
                return out;
            }
        }
        for i in 0..n {
            let u = &self.vertices[i];
            let w = &self.vertices[(i + 1) % n];
            if orient_sign(u, w, t) == 0 && between(u, w, t) {
                out.push(vec![(w.sub(u), -1)]);
                return out;
            }
        }
        out
    }

    /// Slow exact fallback: test every elementary piece between rays
    /// through polygon vertices.
    pub(crate) fn visible_interval_scan(&self, t: &Point, s: &Segment) -> Option<(Scalar, Scalar)> {
        let mut cand = vec![Scalar::zero(), Scalar::one()];
        for v in &self.vertices {
            if v == t {
                continue;
            }
            if let Some(l) = Line::through(t, v) {
                if let Some(p) = s.line_param(&l) {
                    if p.signum() > 0 && p < Scalar::one() {
                        cand.push(p);
                    }
                }
            }
        }
        cand.sort();
        cand.dedup();
        let two = Scalar::from_int(2);
        let mut best: Option<(Scalar, Scalar)> = None;
        let mut cur: Option<(Scalar, Scalar)> = None;
        for i in 0..cand.len() {
            let here = self.sees(t, &s.at(&cand[i]));
            let next_open = if i + 1 < cand.len() {
                Some(self.sees(t, &s.at(&((&cand[i] + &cand[i + 1]) / &two))))
            } else {
                None
            };
            if here {
                cur = Some(match cur {
                    Some((lo, _)) => (lo, cand[i].clone()),
                    None => (cand[i].clone(), cand[i].clone()),
                });
            }
            if !here || next_open != Some(true) {
                if let Some((lo, hi)) = cur.take() {
                    if lo < hi && best.as_ref().is_none_or(|(blo, bhi)| &hi - &lo > bhi - blo) {
                        best = Some((lo, hi));
                    }
                }
            }
        }
        best
    }

    /// The visible part of edge `e` from `q`, as at most one segment.
    pub fn visible_portions_of_edge(&self, q: &Point, e: usize) -> Result<Vec<Segment>> {
        self.require_inside(q)?;
        let s = self.edge(e);
        Ok(self.visible_interval(q, &s).map(|(lo, hi)| Segment::new(s.at(&lo), s.at(&hi))).into_iter().collect())
    }

    pub fn point_visibility(&self, q: &Point) -> Result<VisibilityRegion> {
        self.require_inside(q)?;
        Ok(region::point_visibility(self, q))
    }

    /// Uniform interior point on a dyadic grid of `2^bits` steps per bbox
    /// side, by rejection.
    pub fn sample_interior<R: rand::Rng + ?Sized>(&self, rng: &mut R, bits: u32) -> Point {
        let (x0, y0, x1, y1) = self.bbox();
        let steps = 1i64 << bits;
        loop {
            let kx = rng.gen_range(0..=steps);
            let ky = rng.gen_range(0..=steps);
            let p = Point::new(&x0 + &(&x1 - &x0) * &Scalar::ratio(kx, steps), &y0 + &(&y1 - &y0) * &Scalar::ratio(ky, steps));
            if self.classify_point(&p) == PointClass::Interior {
                return p;
            }
        }
    }

    /// Vertices whose index appears in `set`, for convenience in tests.
    pub fn vertices_at(&self, set: &BTreeSet<usize>) -> Vec<Point> {
        set.iter().map(|&i| self.vertices[i].clone()).collect()
    }
}

/// `p` between `u` and `w` given collinearity.
pub(crate) fn between(u: &Point, w: &Point, p: &Point) -> bool {
    let (lx, hx) = if u.x <= w.x { (&u.x, &w.x) } else { (&w.x, &u.x) };
    let (ly, hy) = if u.y <= w.y { (&u.y, &w.y) } else { (&w.y, &u.y) };
    &p.x >= lx && &p.x <= hx && &p.y >= ly && &p.y <= hy
}

/// `sign * orient(a, b, pa + s d)` as `c0 + c1 s`.
fn lin_orient(a: &Point, b: &Point, pa: &Point, d: &Vector, sign: i32) -> (Scalar, Scalar) {
    lin_orient_dir(a, &b.sub(a), pa, d, sign)
}

fn lin_orient_dir(a: &Point, dir: &Vector, pa: &Point, d: &Vector, sign: i32) -> (Scalar, Scalar) {
    let c0 = dir.cross(&pa.sub(a));
    let c1 = dir.cross(d);
    if sign < 0 {
        (-c0, -c1)
    } else {
        (c0, c1)
    }
}

/// Open parameter range where every `c0 + c1 s > 0`, clipped to `(0, 1)`.
/// `None` bounds mean unbounded before clipping.
fn open_range(cons: &[(Scalar, Scalar)]) -> Option<(Option<Scalar>, Option<Scalar>)> {
    let mut lo: Option<Scalar> = None;
    let mut hi: Option<Scalar> = None;
    for (c0, c1) in cons {
        match c1.signum() {
            0 => {
                if c0.signum() <= 0 {
                    return None;
                }
            }
            sg => {
                let r = -c0 / c1;
                if sg > 0 {
                    if lo.as_ref().is_none_or(|l| &r > l) {
                        lo = Some(r);
                    }
                } else if hi.as_ref().is_none_or(|h| &r < h) {
                    hi = Some(r);
                }
            }
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l >= h {
            return None;
        }
    }
    Some((lo, hi))
}

/// Closed components of `[0, 1]` minus a union of open intervals; `None`
/// bounds are infinite.
fn complement(shadows: Vec<(Option<Scalar>, Option<Scalar>)>) -> Vec<(Scalar, Scalar)> {
    let one = Scalar::one();
    let mut iv: Vec<(Scalar, Scalar)> = shadows
        .into_iter()
        .map(|(l, h)| (l.unwrap_or_else(|| Scalar::from_int(-1)), h.unwrap_or_else(|| Scalar::from_int(2))))
        .collect();
    iv.sort();
    let mut out = Vec::new();
    // `cur` is never inside a processed interval
    let mut cur = Scalar::zero();
    for (l, h) in iv {
        if l >= cur && cur <= one {
            out.push((cur.clone(), Scalar::min(&l, &one)));
        }
        if h > cur {
            cur = h;
        }
    }
    if cur <= one {
        out.push((cur, one));
    }
    out
}
