//! Single-bounce specular visibility via the virtual-source construction.

mod dmvm;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{orient_sign, reflect_point, ConvexCell, Line, LineIntersection, Point, Scalar, Segment};
use crate::polygon::{SimplePolygon, VisibilityRegion};

pub use dmvm::{dmvm_points, dmvm_solve, orient_q, DmvmPoint, QPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorWindow {
    pub edge: usize,
    pub window: Segment,
    pub virtual_source: Point,
}

/// `carrier.at(t)` for `t` in `[t_lo, t_hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalOnSegment {
    pub carrier: Segment,
    pub t_lo: Scalar,
    pub t_hi: Scalar,
}

impl IntervalOnSegment {
    pub fn new(carrier: Segment, t_lo: Scalar, t_hi: Scalar) -> Self {
        debug_assert!(t_lo <= t_hi);
        IntervalOnSegment { carrier, t_lo, t_hi }
    }

    pub fn full(carrier: Segment) -> Self {
        IntervalOnSegment { carrier, t_lo: Scalar::zero(), t_hi: Scalar::one() }
    }

    pub fn lo_point(&self) -> Point {
        self.carrier.at(&self.t_lo)
    }

    pub fn hi_point(&self) -> Point {
        self.carrier.at(&self.t_hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.t_lo == self.t_hi
    }

    pub fn contains_param(&self, t: &Scalar) -> bool {
        &self.t_lo <= t && t <= &self.t_hi
    }
}

/// Intersection of parameter intervals.
pub fn intersect_params(a: &(Scalar, Scalar), b: &(Scalar, Scalar)) -> Option<(Scalar, Scalar)> {
    let lo = Scalar::max(&a.0, &b.0);
    let hi = Scalar::min(&a.1, &b.1);
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

fn check_mirror(p: &SimplePolygon, e: usize) -> Result<()> {
    if e >= p.len() || !p.is_mirror(e) {
        Err(Error::NotAMirror(e))
    } else {
        Ok(())
    }
}

/// The bounce point on edge `e` for a path from `x` to `y`, if the straight
/// line from the virtual source meets the edge and both points are on the
/// reflecting side.
pub fn bounce_point(p: &SimplePolygon, x: &Point, y: &Point, e: usize) -> Option<Point> {
    if p.inner_side(e, x) < 0 || p.inner_side(e, y) < 0 {
        return None;
    }
    let line = p.edge_line(e);
    let xr = reflect_point(x, line);
    if xr == *y {
        // both on the mirror line at the same spot
        return if p.edge(e).contains(y) { Some(y.clone()) } else { None };
    }
    let m = {
        let l = Line::through(&xr, y)?;
        match crate::kernel::intersect_lines(&l, line) {
        LineIntersection::Point(m) => m,
        _ => return None,
    }
    };
    // m must lie between the virtual source and y
    let s = Segment { a: xr, b: y.clone() };
    if !s.contains(&m) || !p.edge(e).contains(&m) {
        return None;
    }
    Some(m)
}

/// Unchecked reflected visibility.
pub fn reflects(p: &SimplePolygon, x: &Point, y: &Point, e: usize) -> bool {
    match bounce_point(p, x, y, e) {
        Some(m) => p.sees(x, &m) && p.sees(&m, y),
        None => false,
    }
}

pub fn reflected_visible(p: &SimplePolygon, x: &Point, y: &Point, e: usize) -> Result<bool> {
    check_mirror(p, e)?;
    if !p.contains(x) || !p.contains(y) {
        return Err(Error::QueryOutsidePolygon);
    }
    Ok(reflects(p, x, y, e))
}

/// Visible through some mirror edge of `p`, or directly.
pub fn sees_any(p: &SimplePolygon, x: &Point, y: &Point, reflection: bool) -> bool {
    if p.sees(x, y) {
        return true;
    }
    reflection && p.mirror_edges().into_iter().any(|e| reflects(p, x, y, e))
}

/// The visible window of mirror `e` from `x`.
pub fn mirror_window(p: &SimplePolygon, x: &Point, e: usize) -> Option<MirrorWindow> {
    if p.inner_side(e, x) <= 0 {
        return None;
    }
    let edge = p.edge(e);
    let (lo, hi) = p.visible_interval(x, &edge)?;
    Some(MirrorWindow { edge: e, window: Segment::new(edge.at(&lo), edge.at(&hi)), virtual_source: reflect_point(x, p.edge_line(e)) })
}

/// The e-reflected-visibility area of `x`: at most one region since the
/// window is a single interval.
pub fn reflected_region(p: &SimplePolygon, x: &Point, e: usize) -> Result<Vec<VisibilityRegion>> {
    check_mirror(p, e)?;
    if !p.contains(x) {
        return Err(Error::QueryOutsidePolygon);
    }
    let w = match mirror_window(p, x, e) {
        Some(w) => w,
        None => return Ok(vec![]),
    };
    Ok(vec![window_region(p, &w)])
}

/// Points of `p` seen from the virtual source through the window: an
/// angular sweep around the virtual source restricted to the window wedge.
fn window_region(p: &SimplePolygon, w: &MirrorWindow) -> VisibilityRegion {
    let src = &w.virtual_source;
    let line = p.edge_line(w.edge);
    let (wa, wb) = (&w.window.a, &w.window.b);
    // orient so that wa -> wb is counter-clockwise around src
    let (wa, wb) = if orient_sign(src, wa, wb) > 0 { (wa, wb) } else { (wb, wa) };
    let in_wedge = |v: &Point| orient_sign(src, wa, v) >= 0 && orient_sign(src, wb, v) <= 0;
    let n = p.len();
    // (point, dir, dist2, hint)
    let mut pts: Vec<(Point, crate::kernel::Vector, Scalar, i32)> = Vec::new();
    let far = |from: &Point, d: &crate::kernel::Vector| crate::polygon::first_hit(p, from, d);
    for m in [wa, wb] {
        let d = m.sub(src);
        pts.push((m.clone(), d.clone(), d.dot(&d), 0));
        // at a polygon corner the ray may leave the polygon right away
        if let Some(i) = p.vertices().iter().position(|v| v == m) {
            if !crate::polygon::enters_interior(p, i, &d) {
                continue;
            }
        }
        if let Some(h) = far(m, &d) {
            let hd = h.sub(src);
            // near then far on the first ray, far then near on the last
            let hint = if std::ptr::eq(m, wa) { 1 } else { -1 };
            pts.push((h, d, hd.dot(&hd), hint));
        }
    }
    for i in 0..n {
        let v = p.vertex(i);
        if p.inner_side(w.edge, v) <= 0 || !in_wedge(v) {
            continue;
        }
        let m = match crate::kernel::intersect_lines(&Line::through(src, v).unwrap(), line) {
            LineIntersection::Point(m) => m,
            _ => continue,
        };
        if !p.sees(&m, v) {
            continue;
        }
        let d = v.sub(src);
        let dist = d.dot(&d);
        let prev = p.vertex(i + n - 1);
        let next = p.vertex(i + 1);
        let sp = d.cross(&prev.sub(src)).signum();
        let sn = d.cross(&next.sub(src)).signum();
        if crate::polygon::enters_interior(p, i, &d) {
            if let Some(h) = far(v, &d) {
                let side = if sp != 0 { sp } else { sn };
                let hint = if side < 0 { 1 } else { -1 };
                let hd = h.sub(src);
                pts.push((v.clone(), d.clone(), dist, hint));
                pts.push((h, d, hd.dot(&hd), hint));
                continue;
            }
        }
        pts.push((v.clone(), d, dist, 0));
    }
    pts.sort_by(|a, b| {
        // the wedge is narrower than a half-turn, so cross signs order it
        let ang = 0.cmp(&a.1.cross(&b.1).signum());
        ang.then_with(|| {
            let hint = if a.3 != 0 { a.3 } else { b.3 };
            if hint < 0 {
                b.2.cmp(&a.2)
            } else {
                a.2.cmp(&b.2)
            }
        })
    });
    pts.dedup_by(|a, b| a.0 == b.0);
    // the window itself closes the region: start at wb going back to wa
    let mut boundary: Vec<Point> = pts.into_iter().map(|t| t.0).collect();
    // rotate so the two window endpoints are adjacent (wa first, wb last)
    if let Some(k) = boundary.iter().position(|q| q == wa) {
        boundary.rotate_left(k);
    }
    VisibilityRegion { boundary }
}

/// Parameters of `s` whose points see `t` via mirror `e`, as a closed
/// interval of positive length. Symmetric in viewer and target.
pub fn mirror_interval(p: &SimplePolygon, t: &Point, e: usize, s: &Segment) -> Option<(Scalar, Scalar)> {
    let line = p.edge_line(e);
    if p.inner_side(e, t) <= 0 {
        return None;
    }
    let edge = p.edge(e);
    let (jlo, jhi) = p.visible_interval(t, &edge)?;
    let (ja, jb) = (edge.at(&jlo), edge.at(&jhi));
    let tr = reflect_point(t, line);
    let pa = &s.a;
    let d = s.direction();
    let sg = orient_sign(&tr, &ja, &jb);
    // closed wedge from the virtual target through the window, inner side
    let closed = [
        lin(&tr, &ja, pa, &d, sg),
        lin(&tr, &jb, pa, &d, -sg),
        lin(&edge.a, &edge.b, pa, &d, 1),
    ];
    let (lo, hi) = closed_range(&closed)?;
    if lo >= hi {
        return None;
    }
    // open shadows of the inner parts of polygon edges, seen from the virtual target
    let mut shadows: Vec<(Option<Scalar>, Option<Scalar>)> = Vec::new();
    let n = p.len();
    for i in 0..n {
        if i == e {
            continue;
        }
        let f = p.edge(i);
        let (u, w) = match clip_inner(&f, &edge) {
            Some(c) => c,
            None => continue,
        };
        let st = orient_sign(&u, &w, &tr);
        if st == 0 {
            continue;
        }
        let ouw = orient_sign(&tr, &u, &w);
        let cons = [lin(&u, &w, pa, &d, -st), lin(&tr, &u, pa, &d, ouw), lin(&tr, &w, pa, &d, -ouw)];
        if let Some(iv) = open_range(&cons) {
            shadows.push(iv);
        }
    }
    let comps = complement_within(shadows, &lo, &hi);
    let two = Scalar::from_int(2);
    for (clo, chi) in comps {
        if clo == chi {
            continue;
        }
        let mid = s.at(&((&clo + &chi) / &two));
        if reflects(p, &mid, t, e) {
            if reflects(p, &s.at(&clo), t, e) && reflects(p, &s.at(&chi), t, e) {
                return Some((clo, chi));
            }
            log::debug!("mirror interval failed endpoint check, scanning");
            return mirror_interval_scan(p, t, e, s);
        }
    }
    None
}

/// Part of `ed` from which every point of `target` is seen via mirror `e`.
/// Vertices suffice: a convex target seen vertex by vertex through one
/// mirror is seen entirely.
pub fn strong_reflected_interval(p: &SimplePolygon, ed: &Segment, target: &ConvexCell, e: usize) -> Option<IntervalOnSegment> {
    if e >= p.len() || !p.is_mirror(e) {
        return None;
    }
    let mut acc = (Scalar::zero(), Scalar::one());
    for t in &target.boundary {
        let iv = mirror_interval(p, t, e, ed)?;
        acc = intersect_params(&acc, &iv)?;
    }
    Some(IntervalOnSegment::new(ed.clone(), acc.0, acc.1))
}

/// Maximal intervals of `ed` whose points see some of `uw` via mirror `e`,
/// each paired with the part of `uw` seen from at least one of its points.
pub fn weak_reflected_intervals(p: &SimplePolygon, ed: &Segment, uw: &Segment, e: usize) -> Vec<(IntervalOnSegment, IntervalOnSegment)> {
    if e >= p.len() || !p.is_mirror(e) {
        return vec![];
    }
    let line = p.edge_line(e);
    let mut pts: Vec<Point> = p.vertices().to_vec();
    pts.push(uw.a.clone());
    pts.push(uw.b.clone());
    let imgs: Vec<Point> = pts.iter().map(|v| reflect_point(v, line)).collect();
    let mut cand = vec![Scalar::zero(), Scalar::one()];
    let mut push = |l: Option<Line>| {
        if let Some(x) = l.and_then(|l| ed.line_param(&l)) {
            if x.signum() > 0 && x < Scalar::one() {
                cand.push(x);
            }
        }
    };
    push(Some(line.clone()));
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            if i < j {
                push(Line::through(&pts[i], &pts[j]));
                push(Line::through(&imgs[i], &imgs[j]));
            }
            if i != j {
                push(Line::through(&pts[i], &imgs[j]));
            }
        }
    }
    cand.sort();
    cand.dedup();
    let two = Scalar::from_int(2);
    let seen = |x: &Scalar| mirror_interval(p, &ed.at(x), e, uw);
    // each sample is an endpoint or an open piece
    let mut samples: Vec<(Scalar, Scalar, Option<(Scalar, Scalar)>)> = Vec::new();
    for i in 0..cand.len() {
        samples.push((cand[i].clone(), cand[i].clone(), seen(&cand[i])));
        if i + 1 < cand.len() {
            let mid = (&cand[i] + &cand[i + 1]) / &two;
            samples.push((cand[i].clone(), cand[i + 1].clone(), seen(&mid)));
        }
    }
    let mut out = Vec::new();
    let mut cur: Option<(Scalar, Scalar, Scalar, Scalar)> = None;
    for (lo, hi, s) in samples {
        match s {
            Some((ulo, uhi)) => {
                cur = Some(match cur {
                    Some((a, _, c, d)) => (a, hi, Scalar::min(&c, &ulo), Scalar::max(&d, &uhi)),
                    None => (lo, hi, ulo, uhi),
                });
            }
            None => {
                if let Some((a, b, c, d)) = cur.take() {
                    out.push((IntervalOnSegment::new(ed.clone(), a, b), IntervalOnSegment::new(uw.clone(), c, d)));
                }
            }
        }
    }
    if let Some((a, b, c, d)) = cur {
        out.push((IntervalOnSegment::new(ed.clone(), a, b), IntervalOnSegment::new(uw.clone(), c, d)));
    }
    out.retain(|(s, _)| !s.is_degenerate());
    out
}

/// Exact fallback over elementary pieces between all event lines.
pub fn mirror_interval_scan(p: &SimplePolygon, t: &Point, e: usize, s: &Segment) -> Option<(Scalar, Scalar)> {
    let line = p.edge_line(e);
    let tr = reflect_point(t, line);
    let mut cand = vec![Scalar::zero(), Scalar::one()];
    for v in p.vertices() {
        for anchor in [tr.clone(), reflect_point(v, line)] {
            let target = if anchor == tr { v.clone() } else { tr.clone() };
            if anchor == target {
                continue;
            }
            if let Some(l) = Line::through(&anchor, &target) {
                if let Some(x) = s.line_param(&l) {
                    if x.signum() > 0 && x < Scalar::one() {
                        cand.push(x);
                    }
                }
            }
        }
    }
    if let Some(x) = s.line_param(line) {
        if x.signum() > 0 && x < Scalar::one() {
            cand.push(x);
        }
    }
    cand.sort();
    cand.dedup();
    scan_best(&cand, |x| reflects(p, &s.at(x), t, e))
}

/// Longest run of `pred` over candidate parameters and the open pieces
/// between them.
pub(crate) fn scan_best(cand: &[Scalar], pred: impl Fn(&Scalar) -> bool) -> Option<(Scalar, Scalar)> {
    let two = Scalar::from_int(2);
    let mut best: Option<(Scalar, Scalar)> = None;
    let mut cur: Option<(Scalar, Scalar)> = None;
    for i in 0..cand.len() {
        let here = pred(&cand[i]);
        let next_open = if i + 1 < cand.len() { pred(&((&cand[i] + &cand[i + 1]) / &two)) } else { false };
        if here {
            cur = Some(match cur {
                Some((lo, _)) => (lo, cand[i].clone()),
                None => (cand[i].clone(), cand[i].clone()),
            });
        }
        if !here || !next_open {
            if let Some((lo, hi)) = cur.take() {
                if lo < hi && best.as_ref().is_none_or(|(blo, bhi)| &hi - &lo > bhi - blo) {
                    best = Some((lo, hi));
                }
            }
        }
    }
    best
}

/// Part of `f` on the closed inner side of edge `e`, if any of it is strictly
/// inside.
fn clip_inner(f: &Segment, e: &Segment) -> Option<(Point, Point)> {
    let sa = orient_sign(&e.a, &e.b, &f.a);
    let sb = orient_sign(&e.a, &e.b, &f.b);
    if sa <= 0 && sb <= 0 {
        return None;
    }
    if sa >= 0 && sb >= 0 {
        return Some((f.a.clone(), f.b.clone()));
    }
    let t = f.line_param(&e.line())?;
    let x = f.at(&t);
    Some(if sa > 0 { (f.a.clone(), x) } else { (x, f.b.clone()) })
}

fn lin(a: &Point, b: &Point, pa: &Point, d: &crate::kernel::Vector, sign: i32) -> (Scalar, Scalar) {
    let dir = b.sub(a);
    let c0 = dir.cross(&pa.sub(a));
    let c1 = dir.cross(d);
    if sign < 0 {
        (-c0, -c1)
    } else {
        (c0, c1)
    }
}

/// Closed range where every `c0 + c1 s >= 0`, within `[0, 1]`.
fn closed_range(cons: &[(Scalar, Scalar)]) -> Option<(Scalar, Scalar)> {
    let mut lo = Scalar::zero();
    let mut hi = Scalar::one();
    for (c0, c1) in cons {
        match c1.signum() {
            0 => {
                if c0.signum() < 0 {
                    return None;
                }
            }
            sg => {
                let r = -c0 / c1;
                if sg > 0 {
                    if r > lo {
                        lo = r;
                    }
                } else if r < hi {
                    hi = r;
                }
            }
        }
    }
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

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

/// Closed components of `[lo, hi]` minus open intervals.
fn complement_within(shadows: Vec<(Option<Scalar>, Option<Scalar>)>, lo: &Scalar, hi: &Scalar) -> Vec<(Scalar, Scalar)> {
    let below = lo - Scalar::one();
    let above = hi + Scalar::one();
    let mut iv: Vec<(Scalar, Scalar)> =
        shadows.into_iter().map(|(l, h)| (l.unwrap_or_else(|| below.clone()), h.unwrap_or_else(|| above.clone()))).collect();
    iv.sort();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    for (l, h) in iv {
        if l >= cur && &cur <= hi {
            out.push((cur.clone(), Scalar::min(&l, hi)));
        }
        if h > cur {
            cur = h;
        }
    }
    if &cur <= hi {
        out.push((cur, hi.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::PointClass;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sq() -> SimplePolygon {
        SimplePolygon::from_coords(&[[0, 0], [1, 0], [1, 1], [0, 1]], None).unwrap()
    }

    fn ell() -> SimplePolygon {
        SimplePolygon::from_coords(&[[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]], None).unwrap()
    }

    fn comb() -> SimplePolygon {
        SimplePolygon::from_coords(
            &[[0, 0], [9, 0], [9, 6], [8, 6], [8, 3], [6, 3], [6, 6], [5, 6], [5, 3], [3, 3], [3, 6], [2, 6], [2, 3], [0, 3]],
            None,
        )
        .unwrap()
    }

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point {
        Point::new(Scalar::ratio(x.0, x.1), Scalar::ratio(y.0, y.1))
    }

    #[test]
    fn square_bottom_bounce() {
        let s = sq();
        let x = pt((1, 4), (1, 4));
        let y = pt((3, 4), (1, 4));
        assert_eq!(bounce_point(&s, &x, &y, 0), Some(pt((1, 2), (0, 1))));
        assert!(reflected_visible(&s, &x, &y, 0).unwrap());
        // out and back along the normal
        assert!(reflected_visible(&s, &x, &x, 0).unwrap());
        let s2 = s.with_mirrors(&[1]);
        assert_eq!(reflected_visible(&s2, &x, &y, 0), Err(Error::NotAMirror(0)));
        assert_eq!(reflected_visible(&s, &Point::int(3, 3), &y, 0), Err(Error::QueryOutsidePolygon));
    }

    #[test]
    fn blocked_by_corner() {
        let l = ell();
        // upper arm to right arm via the bottom wall: bounce point hidden from x
        let x = pt((3, 4), (15, 8));
        let y = pt((15, 8), (1, 8));
        assert!(!reflects(&l, &x, &y, 0));
        // via the left wall the path stays inside
        let y2 = pt((1, 2), (1, 4));
        assert!(reflects(&l, &x, &y2, 5));
    }

    #[test]
    fn symmetric_and_region_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for poly in [sq(), ell(), comb()] {
            for e in 0..poly.len() {
                for _ in 0..6 {
                    let x = poly.sample_interior(&mut rng, 10);
                    let regions = reflected_region(&poly, &x, e).unwrap();
                    for _ in 0..25 {
                        let y = poly.sample_interior(&mut rng, 10);
                        let r = reflects(&poly, &x, &y, e);
                        assert_eq!(r, reflects(&poly, &y, &x, e));
                        let inr = regions.iter().any(|g| g.contains(&y));
                        assert_eq!(inr, r, "x={x:?} y={y:?} e={e}");
                    }
                }
            }
        }
    }

    #[test]
    fn convex_region_is_whole() {
        let s = sq();
        let r = reflected_region(&s, &pt((1, 3), (2, 3)), 2).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].area(), s.area());
    }

    #[test]
    fn interval_matches_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for poly in [ell(), comb()] {
            for e in 0..poly.len() {
                for _ in 0..8 {
                    let t = poly.sample_interior(&mut rng, 8);
                    let a = poly.sample_interior(&mut rng, 8);
                    let b = poly.sample_interior(&mut rng, 8);
                    if a == b || !poly.sees(&a, &b) {
                        continue;
                    }
                    let s = Segment::new(a, b);
                    assert_eq!(mirror_interval(&poly, &t, e, &s), mirror_interval_scan(&poly, &t, e, &s));
                }
            }
        }
    }

    /// Bisection along `ed` on the predicate, as an oracle for the ends.
    fn bisect(f: impl Fn(f64) -> bool, mut inside: f64, mut outside: f64) -> f64 {
        for _ in 0..60 {
            let m = 0.5 * (inside + outside);
            if f(m) {
                inside = m;
            } else {
                outside = m;
            }
        }
        inside
    }

    #[test]
    fn strong_interval_on_square() {
        let big = SimplePolygon::from_coords(&[[0, 0], [8, 0], [8, 8], [0, 8]], None).unwrap();
        let top = Segment::new(Point::int(0, 7), Point::int(8, 7));
        let target = ConvexCell::from_points(0, vec![Point::int(5, 5), Point::int(6, 5), Point::int(6, 6), Point::int(5, 6)]).unwrap();
        let iv = strong_reflected_interval(&big, &top, &target, 0).unwrap();
        assert!(!iv.is_degenerate());
        // convex room: every point of the line sees through the whole bottom wall
        let all = |s: f64| {
            let q = top.at(&Scalar::from_f64(s).unwrap());
            target.boundary.iter().all(|t| reflects(&big, &q, t, 0))
        };
        let mid = 0.5 * (iv.t_lo.to_f64() + iv.t_hi.to_f64());
        assert!(all(mid));
        let lo = bisect(all, mid, 0.0);
        let hi = bisect(all, mid, 1.0);
        assert!((lo - iv.t_lo.to_f64()).abs() < 1e-9 && (hi - iv.t_hi.to_f64()).abs() < 1e-9);
        // target on the midline: symmetric about the middle of the segment
        let mid_t = ConvexCell::from_points(0, vec![Point::int(4, 3), Point::int(5, 4), Point::int(4, 5), Point::int(3, 4)]).unwrap();
        let wall = SimplePolygon::from_coords(&[[0, 0], [8, 0], [8, 8], [6, 8], [6, 9], [2, 9], [2, 8], [0, 8]], None).unwrap();
        let iv = strong_reflected_interval(&wall, &top, &mid_t, 0).unwrap();
        assert_eq!(&iv.t_lo + &iv.t_hi, Scalar::one());
        // behind the reflecting side: nothing
        let hidden = ConvexCell::from_points(0, vec![pt((1, 2), (1, 2)), pt((1, 1), (1, 2)), pt((1, 2), (1, 1))]).unwrap();
        assert!(strong_reflected_interval(&big, &top, &hidden, 2).is_none() || big.inner_side(2, &hidden.boundary[0]) > 0);
    }

    #[test]
    fn weak_on_square() {
        let s = sq();
        let left = s.edge(3).reversed();
        let right = s.edge(1);
        let w = weak_reflected_intervals(&s, &left, &right, 0);
        assert_eq!(w.len(), 1);
        assert_eq!((w[0].0.t_lo.clone(), w[0].0.t_hi.clone()), (Scalar::zero(), Scalar::one()));
        assert_eq!((w[0].1.t_lo.clone(), w[0].1.t_hi.clone()), (Scalar::zero(), Scalar::one()));
        // the upper arm of the L cannot reach the right arm's far wall through the top of the upper arm
        let l = ell();
        let ed = Segment::new(Point::int(0, 2), Point::int(1, 2));
        let uw = Segment::new(Point::int(2, 0), Point::int(2, 1));
        assert!(weak_reflected_intervals(&l, &ed, &uw, 4).is_empty());
    }

    #[test]
    fn weak_pairs_are_sound() {
        let c = comb();
        let ed = Segment::new(Point::int(2, 3), Point::int(2, 6)).reversed();
        let uw = Segment::new(Point::int(6, 3), Point::int(6, 6));
        for e in 0..c.len() {
            for (src, _) in weak_reflected_intervals(&c, &ed, &uw, e) {
                let k = 16;
                for i in 0..=k {
                    let t = &src.t_lo + &(&(&src.t_hi - &src.t_lo) * &Scalar::ratio(i, k));
                    let x = ed.at(&t);
                    assert!(mirror_interval(&c, &x, e, &uw).is_some() || {
                        // grazing contact: a single point of uw
                        (0..=48).any(|j| reflects(&c, &x, &uw.at(&Scalar::ratio(j, 48)), e))
                    });
                }
            }
        }
        assert_eq!(c.classify_point(&Point::int(1, 1)), PointClass::Interior);
    }
}
