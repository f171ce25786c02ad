use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{PointClass, SimplePolygon};
use crate::kernel::{orient_sign, signed_area, Point, Scalar, Vector};

/// A simple polygon, possibly with collinear chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VisibilityRegion {
    pub boundary: Vec<Point>,
}

impl VisibilityRegion {
    pub fn area(&self) -> Scalar {
        if self.boundary.len() < 3 {
            return Scalar::zero();
        }
        signed_area(&self.boundary)
    }

    /// Closed containment by crossing parity with a boundary check.
    pub fn contains(&self, p: &Point) -> bool {
        let n = self.boundary.len();
        if n < 3 {
            return false;
        }
        let mut inside = false;
        for i in 0..n {
            let u = &self.boundary[i];
            let w = &self.boundary[(i + 1) % n];
            let o = orient_sign(u, w, p);
            if o == 0 && super::between(u, w, p) {
                return true;
            }
            if (u.y > p.y) != (w.y > p.y) && ((w.y > u.y && o > 0) || (w.y < u.y && o < 0)) {
                inside = !inside;
            }
        }
        inside
    }
}

/// Angular key relative to a reference direction: half then cross sign.
fn angle_cmp(r: &Vector, a: &Vector, b: &Vector) -> Ordering {
    let half = |v: &Vector| {
        let c = r.cross(v).signum();
        if c > 0 || (c == 0 && r.dot(v).signum() > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b).signum()))
}

/// Whether direction `d` points into the open interior cone at vertex `i`.
pub(crate) fn enters_interior(p: &SimplePolygon, i: usize, d: &Vector) -> bool {
    let n = p.len();
    let v = p.vertex(i);
    let a = p.vertex(i + 1).sub(v);
    let b = p.vertex(i + n - 1).sub(v);
    match a.cross(&b).signum() {
        1 => a.cross(d).signum() > 0 && d.cross(&b).signum() > 0,
        -1 => !(b.cross(d).signum() >= 0 && d.cross(&a).signum() >= 0),
        _ => a.cross(d).signum() > 0,
    }
}

/// First boundary point strictly beyond `from` on the ray `from + t d`.
pub(crate) fn first_hit(p: &SimplePolygon, from: &Point, d: &Vector) -> Option<Point> {
    let n = p.len();
    let mut best: Option<Scalar> = None;
    for i in 0..n {
        let e = p.edge(i);
        let ed = e.direction();
        let den = d.cross(&ed);
        let w = e.a.sub(from);
        let cand = if den.is_zero() {
            if w.cross(d).is_zero() {
                // collinear edge: nearest endpoint ahead
                let ta = w.dot(d) / d.dot(d);
                let tb = e.b.sub(from).dot(d) / d.dot(d);
                let mut c: Option<Scalar> = None;
                for t in [ta, tb] {
                    if t.signum() > 0 && c.as_ref().is_none_or(|c| &t < c) {
                        c = Some(t);
                    }
                }
                c
            } else {
                None
            }
        } else {
            let t = w.cross(&ed) / &den;
            let u = w.cross(d) / &den;
            if t.signum() > 0 && u.signum() >= 0 && u <= Scalar::one() {
                Some(t)
            } else {
                None
            }
        };
        if let Some(t) = cand {
            if best.as_ref().is_none_or(|b| &t < b) {
                best = Some(t);
            }
        }
    }
    best.map(|t| from.add(&d.scale(&t)))
}

pub(super) fn point_visibility(poly: &SimplePolygon, q: &Point) -> VisibilityRegion {
    let n = poly.len();
    // reference direction and whether q sits on the boundary
    let on_boundary = poly.classify_point(q) == PointClass::Boundary;
    let mut at_vertex: Option<usize> = None;
    let mut reference = Vector::new(Scalar::one(), Scalar::zero());
    if on_boundary {
        for i in 0..n {
            if poly.vertex(i) == q {
                at_vertex = Some(i);
                reference = poly.vertex(i + 1).sub(q);
            }
        }
        if at_vertex.is_none() {
            for i in 0..n {
                let e = poly.edge(i);
                if e.contains(q) {
                    reference = e.b.sub(&e.a);
                }
            }
        }
    }
    // (point, direction, distance^2, order hint): hint < 0 puts far points first
    let mut pts: Vec<(Point, Vector, Scalar, i32)> = Vec::new();
    for i in 0..n {
        let v = poly.vertex(i);
        if v == q || !poly.sees(q, v) {
            continue;
        }
        let d = v.sub(q);
        let dist = d.dot(&d);
        if enters_interior(poly, i, &d) {
            if let Some(h) = first_hit(poly, v, &d) {
                // neighbours behind the ray on the clockwise side: near first
                let prev = poly.vertex(i + n - 1);
                let next = poly.vertex(i + 1);
                let side = {
                    let sp = d.cross(&prev.sub(q)).signum();
                    let sn = d.cross(&next.sub(q)).signum();
                    if sp != 0 {
                        sp
                    } else {
                        sn
                    }
                };
                let hint = if side < 0 { 1 } else { -1 };
                let hd = h.sub(q);
                let hdist = hd.dot(&hd);
                pts.push((v.clone(), d.clone(), dist, hint));
                pts.push((h, d, hdist, hint));
                continue;
            }
        }
        pts.push((v.clone(), d, dist, 0));
    }
    pts.sort_by(|a, b| {
        angle_cmp(&reference, &a.1, &b.1).then_with(|| {
            let hint = if a.3 != 0 { a.3 } else { b.3 };
            if hint < 0 {
                b.2.cmp(&a.2)
            } else {
                a.2.cmp(&b.2)
            }
        })
    });
    pts.dedup_by(|a, b| a.0 == b.0);
    let mut boundary: Vec<Point> = pts.into_iter().map(|p| p.0).collect();
    if on_boundary {
        boundary.insert(0, q.clone());
    }
    VisibilityRegion { boundary }
}
