//! Points on a source segment where the direct and the mirror-visible parts
//! of a target segment meet.

use std::cmp::Ordering;

use serde::Serialize;

use crate::kernel::{reflect_point, Line, Point, QuadExt, Scalar, Segment, Vector};
use crate::polygon::SimplePolygon;

/// A point with coordinates in one quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoint {
    pub x: QuadExt,
    pub y: QuadExt,
}

impl QPoint {
    pub fn rational(p: &Point) -> Self {
        QPoint { x: QuadExt::rational(p.x.clone()), y: QuadExt::rational(p.y.clone()) }
    }

    /// `base + t * dir`.
    pub fn along(base: &Point, dir: &Vector, t: &QuadExt) -> Self {
        QPoint { x: t.scale(&dir.x).add_rational(&base.x), y: t.scale(&dir.y).add_rational(&base.y) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Serialize for QPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (x, y) = self.to_f64();
        [x, y].serialize(s)
    }
}

/// Exact orientation of three points in the same field.
pub fn orient_q(a: &QPoint, b: &QPoint, c: &QPoint) -> i32 {
    let ux = b.x.sub(&a.x);
    let uy = b.y.sub(&a.y);
    let vx = c.x.sub(&a.x);
    let vy = c.y.sub(&a.y);
    ux.mul(&vy).sub(&uy.mul(&vx)).signum()
}

#[derive(Clone, Debug, Serialize)]
pub struct DmvmPoint {
    pub position: QPoint,
    pub mirror: usize,
    pub reflex: usize,
    pub projection: QPoint,
    #[serde(skip)]
    pub s: QuadExt,
    #[serde(skip)]
    pub u: QuadExt,
}

/// Linear form `c0 + c1 s`.
type Lin = (Scalar, Scalar);

fn lin_mul(a: &Lin, b: &Lin) -> (Scalar, Scalar, Scalar) {
    (&a.0 * &b.0, &a.0 * &b.1 + &a.1 * &b.0, &a.1 * &b.1)
}

fn lin_eval(a: &Lin, s: &QuadExt) -> QuadExt {
    s.scale(&a.1).add_rational(&a.0)
}

/// `(numerator, denominator)` of the `uw` parameter hit by the line through
/// the moving point `base + s dir` and the fixed point `pivot`.
fn hit_param(base: &Point, dir: &Vector, pivot: &Point, uw: &Segment) -> (Lin, Lin) {
    let g = uw.a.sub(pivot);
    let e = uw.direction();
    let r0 = pivot.sub(base);
    // r(s) = r0 - s dir; u = -cross(r, g) / cross(r, e)
    let num = (-r0.cross(&g), dir.cross(&g));
    let den = (r0.cross(&e), -dir.cross(&e));
    (num, den)
}

fn between_q(a: &QPoint, m: &Point, b: &QPoint) -> bool {
    // m = a + lambda (b - a) with 0 < lambda < 1, collinearity assumed
    let dx = b.x.sub(&a.x);
    let (num, den) = if !dx.is_zero() {
        (a.x.neg().add_rational(&m.x), dx)
    } else {
        (a.y.neg().add_rational(&m.y), b.y.sub(&a.y))
    };
    if den.is_zero() {
        return false;
    }
    let lam = num.div(&den);
    lam.signum() > 0 && lam.cmp_rational(&Scalar::one()) == Ordering::Less
}

/// Solves the merge condition for one (reflex vertex, mirror endpoint)
/// pair: the shadow ray from `p(s)` past `rf` and the mirror ray from the
/// image of `p(s)` past `v` hit `uw` at the same point. Returns `(s, u)`
/// with both parameters in `[0, 1]` and the pivots strictly between the
/// (virtual) source and the hit point.
pub fn dmvm_solve(ed: &Segment, uw: &Segment, mirror: &Line, rf: &Point, v: &Point) -> Vec<(QuadExt, QuadExt)> {
    let d = ed.direction();
    let a_img = reflect_point(&ed.a, mirror);
    let d_img = reflect_point(&ed.b, mirror).sub(&a_img);
    let (nd, dd) = hit_param(&ed.a, &d, rf, uw);
    let (ne, de) = hit_param(&a_img, &d_img, v, uw);
    let l = lin_mul(&nd, &de);
    let r = lin_mul(&ne, &dd);
    let (c0, c1, c2) = (&l.0 - &r.0, &l.1 - &r.1, &l.2 - &r.2);
    let mut roots: Vec<QuadExt> = Vec::new();
    if c2.is_zero() {
        if !c1.is_zero() {
            roots.push(QuadExt::rational(-&c0 / &c1));
        }
    } else {
        let disc = &c1 * &c1 - Scalar::from_int(4) * &c2 * &c0;
        let two_a = Scalar::from_int(2) * &c2;
        match disc.signum() {
            0 => roots.push(QuadExt::rational(-&c1 / &two_a)),
            1 => {
                let base = -&c1 / &two_a;
                let k = Scalar::one() / &two_a;
                roots.push(QuadExt::new(base.clone(), -&k, disc.clone()));
                roots.push(QuadExt::new(base, k, disc));
            }
            _ => {}
        }
    }
    let zero = Scalar::zero();
    let one = Scalar::one();
    let mut out = Vec::new();
    for s in roots {
        if s.cmp_rational(&zero) == Ordering::Less || s.cmp_rational(&one) == Ordering::Greater {
            continue;
        }
        let ddv = lin_eval(&dd, &s);
        let dev = lin_eval(&de, &s);
        if ddv.is_zero() || dev.is_zero() {
            continue;
        }
        let u = lin_eval(&nd, &s).div(&ddv);
        if u.cmp_rational(&zero) == Ordering::Less || u.cmp_rational(&one) == Ordering::Greater {
            continue;
        }
        let p = QPoint::along(&ed.a, &d, &s);
        let pi = QPoint::along(&a_img, &d_img, &s);
        let q = QPoint::along(&uw.a, &uw.direction(), &u);
        if !between_q(&p, rf, &q) || !between_q(&pi, v, &q) {
            continue;
        }
        out.push((s, u));
    }
    out.sort_by_key(|a| a.0.to_algebraic());
    out.dedup_by(|a, b| a.0 == b.0);
    out
}

/// All merge points on `ed` for target `uw` and mirror `e`, over every
/// reflex vertex and both mirror endpoints.
pub fn dmvm_points(p: &SimplePolygon, ed: &Segment, uw: &Segment, e: usize) -> Vec<DmvmPoint> {
    let line = p.edge_line(e);
    let mut out = Vec::new();
    for rf in p.reflex_vertices() {
        for v in [e, (e + 1) % p.len()] {
            for (s, u) in dmvm_solve(ed, uw, line, p.vertex(rf), p.vertex(v)) {
                out.push(DmvmPoint {
                    position: QPoint::along(&ed.a, &ed.direction(), &s),
                    mirror: e,
                    reflex: rf,
                    projection: QPoint::along(&uw.a, &uw.direction(), &u),
                    s,
                    u,
                });
            }
        }
    }
    out.sort_by(|a, b| a.s.to_algebraic().cmp(&b.s.to_algebraic()).then(a.reflex.cmp(&b.reflex)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Symmetric configuration: the merge point sits on the axis x = 0.
    #[test]
    fn symmetric_merge() {
        // source on y = 0, mirror line y = 10, target on x = 5, blocker at (2, 4)
        let ed = Segment::new(Point::int(-6, 0), Point::int(6, 0));
        let uw = Segment::new(Point::int(5, 0), Point::int(5, 10));
        let mirror = Line::through(&Point::int(0, 10), &Point::int(1, 10)).unwrap();
        let rf = Point::int(2, 4);
        let v = Point::int(3, 10);
        let sols = dmvm_solve(&ed, &uw, &mirror, &rf, &v);
        for (s, u) in &sols {
            let p = QPoint::along(&ed.a, &ed.direction(), s);
            let q = QPoint::along(&uw.a, &uw.direction(), u);
            let pi = QPoint { x: p.x.clone(), y: p.y.neg().add_rational(&Scalar::from_int(20)) };
            assert_eq!(orient_q(&p, &QPoint::rational(&rf), &q), 0);
            assert_eq!(orient_q(&pi, &QPoint::rational(&v), &q), 0);
        }
        assert!(!sols.is_empty());
    }
}
