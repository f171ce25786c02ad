//! Temp-sub-regions: the parts of a source cell from which a target cell is
//! entirely visible.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::kernel::{
    convex_intersection, orient_sign, reflect_point, ConvexCell, EdgeTag, HalfLine, Line, Point, Scalar, Segment,
};
use crate::mirror::{dmvm_points, intersect_params, reflects, strong_reflected_interval, IntervalOnSegment};
use crate::polygon::SimplePolygon;
use crate::scr::ScrSet;

/// How the target is seen from a temp-sub-region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Channel {
    Direct,
    Mirror(usize),
    Mixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct TempSubRegion {
    pub region: ConvexCell,
    pub source_scr: usize,
    pub target: usize,
    pub channel: Channel,
    /// `None` when the region is the whole source cell.
    pub shl: Option<HalfLine>,
    pub ehl: Option<HalfLine>,
    pub sees: BTreeSet<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct FindOptions {
    pub reflection: bool,
    /// Sample-check every returned region against the target.
    pub validate: bool,
}

impl Default for FindOptions {
    fn default() -> Self {
        FindOptions { reflection: true, validate: true }
    }
}

/// Part of `ed` seeing every vertex of `target` directly.
pub fn direct_interval(p: &SimplePolygon, ed: &Segment, target: &ConvexCell) -> Option<IntervalOnSegment> {
    let mut acc = (Scalar::zero(), Scalar::one());
    for t in &target.boundary {
        let iv = p.visible_interval(t, ed)?;
        acc = intersect_params(&acc, &iv)?;
    }
    Some(IntervalOnSegment::new(ed.clone(), acc.0, acc.1))
}

/// Whether every vertex of `a` sees every vertex of `b` directly.
pub fn area_visible_direct(p: &SimplePolygon, a: &[Point], b: &[Point]) -> bool {
    a.iter().all(|s| b.iter().all(|t| p.sees(s, t)))
}

/// Whether every vertex of `a` sees every vertex of `b` through mirror `e`.
pub fn area_visible_mirror(p: &SimplePolygon, a: &[Point], b: &[Point], e: usize) -> bool {
    a.iter().all(|s| b.iter().all(|t| reflects(p, s, t, e)))
}

/// Whether every point of the convex hull of `src` sees every point of
/// `target`, each target point by some single channel. The target is cut
/// along the lines where any channel's view from a source vertex changes;
/// each piece must then be seen whole through one channel.
pub fn covers(p: &SimplePolygon, src: &[Point], target: &ConvexCell, reflection: bool) -> bool {
    if area_visible_direct(p, src, &target.boundary) {
        return true;
    }
    let mirrors = if reflection { p.mirror_edges() } else { vec![] };
    if mirrors.iter().any(|&e| area_visible_mirror(p, src, &target.boundary, e)) {
        return true;
    }
    if !reflection {
        return false;
    }
    let mut lines: BTreeSet<Line> = BTreeSet::new();
    let verts = p.vertices();
    for s in src {
        for w in verts {
            lines.extend(Line::through(s, w));
        }
        for &e in &mirrors {
            let l = p.edge_line(e);
            lines.insert(l.clone());
            let sr = reflect_point(s, l);
            for w in verts {
                lines.extend(Line::through(&sr, w));
                lines.extend(Line::through(&sr, &reflect_point(w, l)));
            }
        }
    }
    let mut pieces = vec![target.clone()];
    for l in &lines {
        if !target.crossed_by(l) {
            continue;
        }
        let mut next = Vec::with_capacity(pieces.len() + 2);
        for c in pieces {
            if c.crossed_by(l) {
                let (a, b) = c.split(l, EdgeTag::Cut);
                next.extend(a);
                next.extend(b);
            } else {
                next.push(c);
            }
        }
        pieces = next;
    }
    pieces.iter().all(|q| {
        area_visible_direct(p, src, &q.boundary) || mirrors.iter().any(|&e| area_visible_mirror(p, src, &q.boundary, e))
    })
}

/// Event parameters on `ed` for the full-view test of `target`.
fn mixed_events(p: &SimplePolygon, ed: &Segment, target: &ConvexCell) -> (Vec<Scalar>, Vec<(Scalar, Scalar)>) {
    let mut cand = vec![Scalar::zero(), Scalar::one()];
    let push = |l: Option<Line>, cand: &mut Vec<Scalar>| {
        if let Some(x) = l.and_then(|l| ed.line_param(&l)) {
            if x.signum() > 0 && x < Scalar::one() {
                cand.push(x);
            }
        }
    };
    let mirrors = p.mirror_edges();
    for t in &target.boundary {
        for w in p.vertices() {
            push(Line::through(t, w), &mut cand);
        }
        for &e in &mirrors {
            let l = p.edge_line(e);
            push(Some(l.clone()), &mut cand);
            let tr = reflect_point(t, l);
            for w in p.vertices() {
                push(Line::through(&tr, w), &mut cand);
                push(Line::through(&tr, &reflect_point(w, l)), &mut cand);
            }
        }
    }
    // merge points of direct and mirror views are irrational in general:
    // bracket them and keep runs off the brackets
    let mut brackets = Vec::new();
    let eps = Scalar::ratio(1, 1 << 40);
    for i in 0..target.len() {
        let uw = target.edge(i);
        for &e in &mirrors {
            for d in dmvm_points(p, ed, &uw, e) {
                match d.s.to_algebraic().as_rational() {
                    Some(r) => cand.push(r.clone()),
                    None => {
                        let (lo, hi) = d.s.bounds(&eps);
                        let lo = Scalar::max(&lo, &Scalar::zero());
                        let hi = Scalar::min(&hi, &Scalar::one());
                        cand.push(lo.clone());
                        cand.push(hi.clone());
                        brackets.push((lo, hi));
                    }
                }
            }
        }
    }
    cand.sort();
    cand.dedup();
    (cand, brackets)
}

/// Maximal intervals of `ed` from each point of which all of `target` is
/// visible, mixing direct sight and single bounces.
pub fn mixed_intervals(p: &SimplePolygon, ed: &Segment, target: &ConvexCell) -> Vec<IntervalOnSegment> {
    let (cand, brackets) = mixed_events(p, ed, target);
    let two = Scalar::from_int(2);
    let ok = |x: &Scalar| covers(p, &[ed.at(x)], target, true);
    let mut out = Vec::new();
    let mut cur: Option<(Scalar, Scalar)> = None;
    let flush = |cur: &mut Option<(Scalar, Scalar)>, out: &mut Vec<IntervalOnSegment>| {
        if let Some((lo, hi)) = cur.take() {
            if lo < hi {
                out.push(IntervalOnSegment::new(ed.clone(), lo, hi));
            }
        }
    };
    for i in 0..cand.len() {
        if ok(&cand[i]) {
            cur = Some(match cur.take() {
                Some((lo, _)) => (lo, cand[i].clone()),
                None => (cand[i].clone(), cand[i].clone()),
            });
        } else {
            flush(&mut cur, &mut out);
            continue;
        }
        if i + 1 < cand.len() {
            let (a, b) = (&cand[i], &cand[i + 1]);
            let bracketed = brackets.iter().any(|(lo, hi)| lo <= a && b <= hi);
            if bracketed || !ok(&((a + b) / &two)) {
                flush(&mut cur, &mut out);
            }
        }
    }
    flush(&mut cur, &mut out);
    out
}

/// `source ∩ ⋂ cone(apex, I)` for apexes strictly across `ed` from the
/// source; `None` if any apex is on the wrong side or the result is empty.
fn backward_wedge(source: &ConvexCell, iv: &IntervalOnSegment, apexes: &[Point]) -> Option<(ConvexCell, HalfLine, HalfLine)> {
    if iv.is_degenerate() {
        return None;
    }
    let (a, b) = (iv.lo_point(), iv.hi_point());
    let inside = source.area_centroid();
    let side = orient_sign(&a, &b, &inside);
    if apexes.iter().any(|x| orient_sign(&a, &b, x) != -side) {
        return None;
    }
    let mut region = source.clone();
    for x in apexes {
        for (through, keep) in [(&a, &b), (&b, &a)] {
            let l = Line::through(x, through)?;
            region = region.clip(&l, l.side(keep) > 0, EdgeTag::Cut)?;
        }
    }
    // the innermost ray at each end bounds the wedge
    let tight = |end: &Point, other: &Point| -> HalfLine {
        let mut best = &apexes[0];
        for x in &apexes[1..] {
            // x is tighter if its ray lies on the inner side of best's line
            let s_other = orient_sign(best, end, other);
            let s_x = orient_sign(best, end, &end.add(&end.sub(x)));
            if s_x == s_other {
                best = x;
            }
        }
        HalfLine::new(end.clone(), end.sub(best))
    };
    let shl = tight(&a, &b);
    let ehl = tight(&b, &a);
    Some((region, shl, ehl))
}

fn sample_points(c: &ConvexCell) -> Vec<Point> {
    let mut v = c.boundary.clone();
    v.push(c.area_centroid());
    v
}

/// Deterministic spot check of a returned region.
fn spot_check(p: &SimplePolygon, region: &ConvexCell, target: &ConvexCell, reflection: bool) -> bool {
    let tp = sample_points(target);
    sample_points(region).iter().all(|g| tp.iter().all(|z| crate::mirror::sees_any(p, g, z, reflection)))
}

fn whole(source: &ConvexCell, target: usize, channel: Channel) -> TempSubRegion {
    TempSubRegion {
        region: source.clone(),
        source_scr: source.id,
        target,
        channel,
        shl: None,
        ehl: None,
        sees: [source.id, target].into_iter().collect(),
    }
}

/// Temp-sub-regions of `source` generated through its edge `ed`.
pub fn find(p: &SimplePolygon, scrs: &ScrSet, source: usize, ed: &Segment, target: usize, opts: &FindOptions) -> Vec<TempSubRegion> {
    let src = scrs.cell(source);
    let tgt = scrs.cell(target);
    if source == target {
        return vec![whole(src, target, Channel::Direct)];
    }
    let mut out = Vec::new();
    let push = |region: ConvexCell, shl: HalfLine, ehl: HalfLine, channel: Channel, out: &mut Vec<TempSubRegion>| {
        let is_whole = region.area() == src.area();
        out.push(TempSubRegion {
            region,
            source_scr: source,
            target,
            channel,
            shl: if is_whole { None } else { Some(shl) },
            ehl: if is_whole { None } else { Some(ehl) },
            sees: [source, target].into_iter().collect(),
        });
    };
    if let Some(iv) = direct_interval(p, ed, tgt) {
        if let Some((r, s, e)) = backward_wedge(src, &iv, &tgt.boundary) {
            push(r, s, e, Channel::Direct, &mut out);
        }
    }
    if opts.reflection {
        for e in p.mirror_edges() {
            if let Some(iv) = strong_reflected_interval(p, ed, tgt, e) {
                let line = p.edge_line(e);
                let imgs: Vec<Point> = tgt.boundary.iter().map(|t| reflect_point(t, line)).collect();
                if let Some((r, s, h)) = backward_wedge(src, &iv, &imgs) {
                    push(r, s, h, Channel::Mirror(e), &mut out);
                }
            }
        }
        if out.is_empty() {
            for iv in mixed_intervals(p, ed, tgt) {
                let mut apex_sets = vec![tgt.boundary.clone()];
                for e in p.mirror_edges() {
                    let line = p.edge_line(e);
                    apex_sets.push(tgt.boundary.iter().map(|t| reflect_point(t, line)).collect());
                }
                for apexes in apex_sets {
                    if let Some((r, s, h)) = backward_wedge(src, &iv, &apexes) {
                        if covers(p, &r.boundary, tgt, true) {
                            push(r, s, h, Channel::Mixed, &mut out);
                            break;
                        }
                    }
                }
            }
        }
    }
    if opts.validate {
        out.retain(|t| {
            let ok = spot_check(p, &t.region, tgt, opts.reflection);
            if !ok {
                log::warn!("discarding region of cell {source} for target {target}: spot check failed");
            }
            ok
        });
    }
    out
}

/// All temp-sub-regions of `source` for `target`: whole-cell checks first,
/// then every edge of the source. Regions contained in another are dropped.
pub fn find_all(p: &SimplePolygon, scrs: &ScrSet, source: usize, target: usize, opts: &FindOptions) -> Vec<TempSubRegion> {
    let src = scrs.cell(source);
    let tgt = scrs.cell(target);
    if source == target || area_visible_direct(p, &src.boundary, &tgt.boundary) {
        return vec![whole(src, target, Channel::Direct)];
    }
    if opts.reflection {
        for e in p.mirror_edges() {
            if area_visible_mirror(p, &src.boundary, &tgt.boundary, e) {
                return vec![whole(src, target, Channel::Mirror(e))];
            }
        }
        let pairwise = src.boundary.iter().all(|s| tgt.boundary.iter().all(|t| crate::mirror::sees_any(p, s, t, true)));
        if pairwise && covers(p, &src.boundary, tgt, true) {
            return vec![whole(src, target, Channel::Mixed)];
        }
    }
    let mut all: Vec<TempSubRegion> = Vec::new();
    for i in 0..src.len() {
        all.extend(find(p, scrs, source, &src.edge(i), target, opts));
    }
    prune(all)
}

/// Drops regions contained in another (first of equal ones is kept).
fn prune(mut v: Vec<TempSubRegion>) -> Vec<TempSubRegion> {
    v.sort_by(|a, b| b.region.area().cmp(&a.region.area()).then_with(|| cmp_cells(&a.region, &b.region)));
    let mut keep: Vec<TempSubRegion> = Vec::new();
    for t in v {
        let inside = keep.iter().any(|k| {
            t.region.boundary.iter().all(|q| k.region.contains(q))
        });
        if !inside {
            keep.push(t);
        }
    }
    keep
}

fn cmp_cells(a: &ConvexCell, b: &ConvexCell) -> Ordering {
    let mut x = a.clone();
    let mut y = b.clone();
    x.canonicalize();
    y.canonicalize();
    x.boundary.cmp(&y.boundary)
}

/// Whether the region equals `source ∩ wedge(shl, ehl)`.
pub fn wedge_matches(t: &TempSubRegion, source: &ConvexCell) -> bool {
    match (&t.shl, &t.ehl) {
        (Some(s), Some(e)) => {
            // the wedge lies on the side of shl toward ehl's origin, and back
            let ls = s.line();
            let le = e.line();
            let keep_s = ls.side(&e.origin) > 0;
            let keep_e = le.side(&s.origin) > 0;
            let w = source.clip(&ls, keep_s, EdgeTag::Cut).and_then(|c| c.clip(&le, keep_e, EdgeTag::Cut));
            match w {
                Some(w) => {
                    convex_intersection(&w, &t.region).map(|c| c.area()) == Some(w.area()) && w.area() == t.region.area()
                }
                None => false,
            }
        }
        _ => t.region.area() == source.area(),
    }
}
