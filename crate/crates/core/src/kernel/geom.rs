use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    pub fn sub(&self, o: &Point) -> Vector {
        Vector { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn add(&self, v: &Vector) -> Point {
        Point::new(&self.x + &v.x, &self.y + &v.y)
    }

    /// `self + t * (to - self)`.
    pub fn lerp(&self, to: &Point, t: &Scalar) -> Point {
        Point::new(&self.x + t * (&to.x - &self.x), &self.y + t * (&to.y - &self.y))
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        Point::new(Scalar::mid(&self.x, &o.x), Scalar::mid(&self.y, &o.y))
    }

    pub fn dist2(&self, o: &Point) -> Scalar {
        let d = self.sub(o);
        d.dot(&d)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vector {
    pub x: Scalar,
    pub y: Scalar,
}

impl Vector {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Vector { x, y }
    }

    pub fn cross(&self, o: &Vector) -> Scalar {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &Vector) -> Scalar {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn scale(&self, t: &Scalar) -> Vector {
        Vector::new(&self.x * t, &self.y * t)
    }

    pub fn neg(&self) -> Vector {
        Vector::new(-&self.x, -&self.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Orientation {
    Left,
    Collinear,
    Right,
}

impl Orientation {
    pub fn from_sign(s: i32) -> Self {
        match s {
            s if s > 0 => Orientation::Left,
            0 => Orientation::Collinear,
            _ => Orientation::Right,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Orientation::Left => 1,
            Orientation::Collinear => 0,
            Orientation::Right => -1,
        }
    }

    pub fn reverse(self) -> Self {
        Orientation::from_sign(-self.sign())
    }
}

/// Twice the signed area of triangle `pqr`.
pub fn cross3(p: &Point, q: &Point, r: &Point) -> Scalar {
    q.sub(p).cross(&r.sub(p))
}

/// Sign of the determinant of `(q - p, r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    Orientation::from_sign(orient_sign(p, q, r))
}

/// Same as [`orientation`] as an integer sign. A double-precision estimate
/// is tried first and trusted only when it clears a conservative error bound.
pub fn orient_sign(p: &Point, q: &Point, r: &Point) -> i32 {
    let (px, py) = p.to_f64();
    let (qx, qy) = q.to_f64();
    let (rx, ry) = r.to_f64();
    let l = (qx - px) * (ry - py);
    let rr = (qy - py) * (rx - px);
    let det = l - rr;
    // each converted coordinate is off by a few ulps of its own magnitude, so
    // the bound uses coordinate magnitudes rather than the differences
    let mag = (px.abs() + qx.abs()) * (py.abs() + ry.abs()) + (py.abs() + qy.abs()) * (px.abs() + rx.abs());
    if det.is_finite() && mag.is_finite() && det.abs() > mag * 1e-12 + 1e-290 {
        return if det > 0.0 { 1 } else { -1 };
    }
    cross3(p, q, r).signum()
}

/// A line `a x + b y + c = 0` with integer, coprime coefficients and a
/// positive leading nonzero coefficient among `(a, b)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Line {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x + {}y + {} = 0]", self.a, self.b, self.c)
    }
}

impl Line {
    /// Canonicalizes `a x + b y + c = 0`; `None` when `a = b = 0`.
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Option<Line> {
        if a.is_zero() && b.is_zero() {
            return None;
        }
        let coeffs = [a, b, c];
        let mut lcm = BigInt::one();
        for v in &coeffs {
            lcm = lcm.lcm(&v.denom());
        }
        let mut ints: Vec<BigInt> = coeffs.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        let lead_negative = if !ints[0].is_zero() { ints[0].is_negative() } else { ints[1].is_negative() };
        if lead_negative {
            g = -g;
        }
        for v in ints.iter_mut() {
            *v = &*v / &g;
        }
        let [a, b, c]: [BigInt; 3] = ints.try_into().unwrap();
        Some(Line { a: Scalar::from(a), b: Scalar::from(b), c: Scalar::from(c) })
    }

    /// The line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Option<Line> {
        let a = &p.y - &q.y;
        let b = &q.x - &p.x;
        let c = &p.x * &q.y - &q.x * &p.y;
        Line::new(a, b, c)
    }

    /// Signed value of the line equation at `p`.
    pub fn eval(&self, p: &Point) -> Scalar {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn side(&self, p: &Point) -> i32 {
        self.eval(p).signum()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }

    /// Direction vector of the line.
    pub fn direction(&self) -> Vector {
        Vector::new(-&self.b, self.a.clone())
    }

    /// Some point on the line.
    pub fn some_point(&self) -> Point {
        if !self.b.is_zero() {
            Point::new(Scalar::zero(), -&self.c / &self.b)
        } else {
            Point::new(-&self.c / &self.a, Scalar::zero())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineIntersection {
    Point(Point),
    Parallel,
    Identical,
}

/// Exact intersection of two lines.
pub fn intersect_lines(l1: &Line, l2: &Line) -> LineIntersection {
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        // canonical forms make identical lines equal
        return if l1 == l2 { LineIntersection::Identical } else { LineIntersection::Parallel };
    }
    let x = (&l1.b * &l2.c - &l2.b * &l1.c) / &det;
    let y = (&l2.a * &l1.c - &l1.a * &l2.c) / &det;
    LineIntersection::Point(Point::new(x, y))
}

/// Mirror image of `p` across `l`.
pub fn reflect_point(p: &Point, l: &Line) -> Point {
    let norm2 = &l.a * &l.a + &l.b * &l.b;
    let k = Scalar::from_int(2) * l.eval(p) / norm2;
    Point::new(&p.x - &k * &l.a, &p.y - &k * &l.b)
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}-{:?}", self.a, self.b)
    }
}

impl Segment {
    /// Panics if the endpoints coincide.
    pub fn new(a: Point, b: Point) -> Self {
        assert!(a != b, "degenerate segment");
        Segment { a, b }
    }

    pub fn line(&self) -> Line {
        Line::through(&self.a, &self.b).expect("segment endpoints are distinct")
    }

    pub fn at(&self, t: &Scalar) -> Point {
        self.a.lerp(&self.b, t)
    }

    pub fn direction(&self) -> Vector {
        self.b.sub(&self.a)
    }

    pub fn reversed(&self) -> Segment {
        Segment { a: self.b.clone(), b: self.a.clone() }
    }

    pub fn midpoint(&self) -> Point {
        self.a.midpoint(&self.b)
    }

    /// Parameter of a point known to lie on the segment's line.
    pub fn param_of(&self, p: &Point) -> Scalar {
        let d = self.direction();
        if !d.x.is_zero() {
            (&p.x - &self.a.x) / &d.x
        } else {
            (&p.y - &self.a.y) / &d.y
        }
    }

    /// Whether `p` lies on the closed segment.
    pub fn contains(&self, p: &Point) -> bool {
        if orient_sign(&self.a, &self.b, p) != 0 {
            return false;
        }
        let t = self.param_of(p);
        t.signum() >= 0 && t <= Scalar::one()
    }

    /// Parameter along `self` where the supporting line of `self` meets `l`,
    /// if the two are not parallel.
    pub fn line_param(&self, l: &Line) -> Option<Scalar> {
        let fa = l.eval(&self.a);
        let fb = l.eval(&self.b);
        let den = &fa - &fb;
        if den.is_zero() {
            None
        } else {
            Some(fa / den)
        }
    }
}

/// How two closed segments meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentContact {
    None,
    /// Interiors cross at a single point.
    Proper(Point),
    /// They share exactly one point which is an endpoint of at least one.
    Touch(Point),
    /// Collinear with a common sub-segment of positive length.
    Overlap,
}

pub fn segment_contact(s: &Segment, t: &Segment) -> SegmentContact {
    let o1 = orient_sign(&s.a, &s.b, &t.a);
    let o2 = orient_sign(&s.a, &s.b, &t.b);
    let o3 = orient_sign(&t.a, &t.b, &s.a);
    let o4 = orient_sign(&t.a, &t.b, &s.b);
    if o1 == 0 && o2 == 0 {
        // collinear: compare parameters along s
        let ta = s.param_of(&t.a);
        let tb = s.param_of(&t.b);
        let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
        let lo = Scalar::max(&lo, &Scalar::zero());
        let hi = Scalar::min(&hi, &Scalar::one());
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => SegmentContact::None,
            std::cmp::Ordering::Equal => SegmentContact::Touch(s.at(&lo)),
            std::cmp::Ordering::Less => SegmentContact::Overlap,
        };
    }
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return SegmentContact::None;
    }
    if o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        let p = match intersect_lines(&s.line(), &t.line()) {
            LineIntersection::Point(p) => p,
            _ => unreachable!("non-collinear crossing segments meet in a point"),
        };
        return SegmentContact::Proper(p);
    }
    let p = if o1 == 0 {
        t.a.clone()
    } else if o2 == 0 {
        t.b.clone()
    } else if o3 == 0 {
        s.a.clone()
    } else {
        s.b.clone()
    };
    SegmentContact::Touch(p)
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfLine {
    pub origin: Point,
    pub dx: Scalar,
    pub dy: Scalar,
}

impl fmt::Debug for HalfLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->({}, {})", self.origin, self.dx, self.dy)
    }
}

impl HalfLine {
    /// Panics on a zero direction.
    pub fn new(origin: Point, direction: Vector) -> Self {
        assert!(!direction.is_zero(), "zero half-line direction");
        HalfLine { origin, dx: direction.x, dy: direction.y }
    }

    /// The half-line from `origin` through `through`, extended beyond it.
    pub fn towards(origin: Point, through: &Point) -> Self {
        let d = through.sub(&origin);
        HalfLine::new(origin, d)
    }

    pub fn direction(&self) -> Vector {
        Vector::new(self.dx.clone(), self.dy.clone())
    }

    pub fn at(&self, t: &Scalar) -> Point {
        self.origin.add(&self.direction().scale(t))
    }

    pub fn line(&self) -> Line {
        Line::through(&self.origin, &self.at(&Scalar::one())).unwrap()
    }
}

/// Exact signed area of a closed polygon given by its vertices (CCW positive).
pub fn signed_area(pts: &[Point]) -> Scalar {
    let n = pts.len();
    let mut acc = Scalar::zero();
    for i in 0..n {
        let p = &pts[i];
        let q = &pts[(i + 1) % n];
        acc = acc + (&p.x * &q.y - &q.x * &p.y);
    }
    acc * Scalar::ratio(1, 2)
}
