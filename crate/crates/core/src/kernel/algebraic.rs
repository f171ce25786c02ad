//! Quadratic algebraic numbers.
//!
//! [`QuadExt`] is `a + b sqrt(d)` with rational `a`, `b`, `d`, used for
//! arithmetic. [`AlgebraicScalar`] is the comparison-friendly form: a root of
//! a rational quadratic with an isolating interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::scalar::Scalar;

/// `sqrt` of a non-negative rational if it is rational.
pub fn rational_sqrt(v: &Scalar) -> Option<Scalar> {
    if v.signum() < 0 {
        return None;
    }
    let n = v.numer();
    let d = v.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &sn * &sn == n && &sd * &sd == d {
        Some(Scalar::from(sn) / Scalar::from(sd))
    } else {
        None
    }
}

/// Rational bounds `lo <= sqrt(v) <= hi` with `hi - lo <= 2^-bits` (relative
/// to the denominator scale). `v` must be non-negative.
pub fn sqrt_bounds(v: &Scalar, bits: u32) -> (Scalar, Scalar) {
    assert!(v.signum() >= 0, "sqrt of a negative value");
    // sqrt(n/d) = sqrt(n d) / d
    let n = v.numer();
    let d = v.denom();
    let scale = BigInt::from(1) << bits;
    let m = (&n * &d * &scale * &scale).sqrt();
    let den = Scalar::from(&d * &scale);
    let lo = Scalar::from(m.clone()) / &den;
    let hi = if &m * &m == &n * &d * &scale * &scale { lo.clone() } else { Scalar::from(m + 1) / &den };
    (lo, hi)
}

/// `a + b sqrt(d)` with `d > 0`. Values with different `d` only mix through
/// [`AlgebraicScalar`].
#[derive(Clone)]
pub struct QuadExt {
    pub a: Scalar,
    pub b: Scalar,
    pub d: Scalar,
}

// the radicand is irrelevant once `b = 0`
impl PartialEq for QuadExt {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Eq for QuadExt {}

impl std::hash::Hash for QuadExt {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.a.hash(h);
        self.b.hash(h);
        if !self.b.is_zero() {
            self.d.hash(h);
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl QuadExt {
    pub fn new(a: Scalar, b: Scalar, d: Scalar) -> Self {
        assert!(d.signum() > 0, "radicand must be positive");
        let mut q = QuadExt { a, b, d };
        if let Some(s) = rational_sqrt(&q.d) {
            q.a = &q.a + &q.b * &s;
            q.b = Scalar::zero();
            q.d = Scalar::one();
        }
        q
    }

    pub fn rational(a: Scalar) -> Self {
        QuadExt { a, b: Scalar::zero(), d: Scalar::one() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Lifts `v` into the field of `self`.
    pub fn lift(&self, v: &Scalar) -> QuadExt {
        QuadExt { a: v.clone(), b: Scalar::zero(), d: self.d.clone() }
    }

    fn same_field(&self, o: &QuadExt) -> Scalar {
        if self.b.is_zero() {
            o.d.clone()
        } else {
            assert!(o.b.is_zero() || o.d == self.d, "mixing different quadratic fields");
            self.d.clone()
        }
    }

    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 d
        let a2 = &self.a * &self.a;
        let bd = &self.b * &self.b * &self.d;
        match a2.cmp(&bd) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == 0
    }

    pub fn add(&self, o: &QuadExt) -> QuadExt {
        let d = self.same_field(o);
        QuadExt { a: &self.a + &o.a, b: &self.b + &o.b, d }
    }

    pub fn sub(&self, o: &QuadExt) -> QuadExt {
        let d = self.same_field(o);
        QuadExt { a: &self.a - &o.a, b: &self.b - &o.b, d }
    }

    pub fn mul(&self, o: &QuadExt) -> QuadExt {
        let d = self.same_field(o);
        let a = &self.a * &o.a + &self.b * &o.b * &d;
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadExt { a, b, d }
    }

    pub fn scale(&self, k: &Scalar) -> QuadExt {
        QuadExt { a: &self.a * k, b: &self.b * k, d: self.d.clone() }
    }

    pub fn add_rational(&self, k: &Scalar) -> QuadExt {
        QuadExt { a: &self.a + k, b: self.b.clone(), d: self.d.clone() }
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    /// Panics on zero.
    pub fn recip(&self) -> QuadExt {
        // 1 / (a + b r) = (a - b r) / (a^2 - b^2 d)
        let n = &self.a * &self.a - &self.b * &self.b * &self.d;
        assert!(!n.is_zero(), "division by zero in quadratic field");
        QuadExt { a: &self.a / &n, b: -&self.b / &n, d: self.d.clone() }
    }

    pub fn div(&self, o: &QuadExt) -> QuadExt {
        self.mul(&o.recip())
    }

    pub fn cmp_ext(&self, o: &QuadExt) -> Ordering {
        self.sub(o).signum().cmp(&0)
    }

    pub fn cmp_rational(&self, v: &Scalar) -> Ordering {
        self.add_rational(&-v).signum().cmp(&0)
    }

    pub fn to_algebraic(&self) -> AlgebraicScalar {
        if self.b.is_zero() {
            return AlgebraicScalar::from_rational(self.a.clone());
        }
        // (x - a)^2 - b^2 d = 0, larger root iff b > 0
        let p = -(Scalar::from_int(2) * &self.a);
        let q = &self.a * &self.a - &self.b * &self.b * &self.d;
        let idx = if self.b.signum() > 0 { 1 } else { 0 };
        let roots = AlgebraicScalar::roots(&Scalar::one(), &p, &q);
        roots[if roots.len() == 1 { 0 } else { idx }].clone()
    }

    /// Rational bounds within `eps` of each other.
    pub fn bounds(&self, eps: &Scalar) -> (Scalar, Scalar) {
        self.to_algebraic().bounds(eps)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_algebraic().to_f64()
    }
}

/// A real root of a rational quadratic, or a rational.
#[derive(Clone)]
pub enum AlgebraicScalar {
    Rational(Scalar),
    /// Irrational root of the monic `x^2 + p x + q`; `index` 0 is the smaller
    /// root. `lo < root < hi` and the interval excludes the other root.
    Root { p: Scalar, q: Scalar, index: u8, lo: Scalar, hi: Scalar },
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicScalar::Rational(v) => write!(f, "{v}"),
            AlgebraicScalar::Root { p, q, index, lo, hi } => {
                write!(f, "root{index}(x^2 + {p}x + {q}) in [{lo}, {hi}]")
            }
        }
    }
}

impl AlgebraicScalar {
    pub fn from_rational(v: Scalar) -> Self {
        AlgebraicScalar::Rational(v)
    }

    /// Real roots of `a x^2 + b x + c`, ascending, duplicates collapsed.
    /// `a = b = 0` yields no roots.
    pub fn roots(a: &Scalar, b: &Scalar, c: &Scalar) -> Vec<AlgebraicScalar> {
        if a.is_zero() {
            if b.is_zero() {
                return vec![];
            }
            return vec![AlgebraicScalar::Rational(-c / b)];
        }
        let p = b / a;
        let q = c / a;
        // roots of x^2 + p x + q: -p/2 +- sqrt(p^2/4 - q)
        let half = -(&p / Scalar::from_int(2));
        let disc = &half * &half - &q;
        match disc.signum() {
            -1 => vec![],
            0 => vec![AlgebraicScalar::Rational(half)],
            _ => {
                if let Some(s) = rational_sqrt(&disc) {
                    return vec![AlgebraicScalar::Rational(&half - &s), AlgebraicScalar::Rational(&half + &s)];
                }
                // sqrt(disc) is irrational so the bounds are strict
                let mut bits = 8;
                loop {
                    let (slo, shi) = sqrt_bounds(&disc, bits);
                    // other root is at distance 2 sqrt(disc) > 2 slo
                    if !slo.is_zero() && (&shi - &slo) < slo {
                        let r0 = AlgebraicScalar::Root {
                            p: p.clone(),
                            q: q.clone(),
                            index: 0,
                            lo: &half - &shi,
                            hi: &half - &slo,
                        };
                        let r1 = AlgebraicScalar::Root { p, q, index: 1, lo: &half + &slo, hi: &half + &shi };
                        return vec![r0, r1];
                    }
                    bits *= 2;
                }
            }
        }
    }

    pub fn as_rational(&self) -> Option<&Scalar> {
        match self {
            AlgebraicScalar::Rational(v) => Some(v),
            _ => None,
        }
    }

    fn eval(p: &Scalar, q: &Scalar, x: &Scalar) -> Scalar {
        x * x + p * x + q
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        if let AlgebraicScalar::Root { p, q, lo, hi, .. } = self {
            let mid = Scalar::mid(lo, hi);
            let fl = Self::eval(p, q, lo).signum();
            let fm = Self::eval(p, q, &mid).signum();
            debug_assert!(fm != 0);
            if fl == fm {
                *lo = mid;
            } else {
                *hi = mid;
            }
        }
    }

    pub fn interval(&self) -> (Scalar, Scalar) {
        match self {
            AlgebraicScalar::Rational(v) => (v.clone(), v.clone()),
            AlgebraicScalar::Root { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    /// Rational `lo <= self <= hi` with `hi - lo <= eps`.
    pub fn bounds(&self, eps: &Scalar) -> (Scalar, Scalar) {
        let mut s = self.clone();
        loop {
            let (lo, hi) = s.interval();
            if &hi - &lo <= *eps {
                return (lo, hi);
            }
            s.refine();
        }
    }

    pub fn cmp_rational(&self, v: &Scalar) -> Ordering {
        match self {
            AlgebraicScalar::Rational(r) => r.cmp(v),
            AlgebraicScalar::Root { p, q, lo, hi, .. } => {
                if v <= lo {
                    return Ordering::Greater;
                }
                if v >= hi {
                    return Ordering::Less;
                }
                // root in (lo, v) iff f changes sign there; f(v) != 0 since the root is irrational
                let fl = Self::eval(p, q, lo).signum();
                let fv = Self::eval(p, q, v).signum();
                if fl != fv {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn signum(&self) -> i32 {
        match self.cmp_rational(&Scalar::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn cmp_alg(&self, other: &AlgebraicScalar) -> Ordering {
        match (self, other) {
            (AlgebraicScalar::Rational(a), _) => other.cmp_rational(a).reverse(),
            (_, AlgebraicScalar::Rational(b)) => self.cmp_rational(b),
            (
                AlgebraicScalar::Root { p: p1, q: q1, index: i1, .. },
                AlgebraicScalar::Root { p: p2, q: q2, index: i2, .. },
            ) => {
                if p1 == p2 && q1 == q2 {
                    return i1.cmp(i2);
                }
                // distinct irreducible polynomials have no common root
                let mut a = self.clone();
                let mut b = other.clone();
                loop {
                    let (alo, ahi) = a.interval();
                    let (blo, bhi) = b.interval();
                    if ahi <= blo {
                        return Ordering::Less;
                    }
                    if bhi <= alo {
                        return Ordering::Greater;
                    }
                    if &ahi - &alo >= &bhi - &blo {
                        a.refine();
                    } else {
                        b.refine();
                    }
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            AlgebraicScalar::Rational(v) => v.to_f64(),
            AlgebraicScalar::Root { lo, .. } => {
                let mag = lo.abs().to_f64().max(1.0);
                let (l, h) = self.bounds(&Scalar::from_f64(mag * 1e-17).unwrap());
                Scalar::mid(&l, &h).to_f64()
            }
        }
    }
}

impl PartialEq for AlgebraicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_alg(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicScalar {}

impl PartialOrd for AlgebraicScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_alg(other)
    }
}

impl From<Scalar> for AlgebraicScalar {
    fn from(v: Scalar) -> Self {
        AlgebraicScalar::Rational(v)
    }
}

/// `floor(x * 10^digits)` for the roots of `a x^2 + b x + c` with integer
/// coefficients, computed with integer square roots only. Used as an
/// independent high-precision reference in tests.
pub fn decimal_roots(a: &BigInt, b: &BigInt, c: &BigInt, digits: u32) -> Vec<BigInt> {
    let disc = b * b - BigInt::from(4) * a * c;
    if disc.is_negative() {
        return vec![];
    }
    // ten guard digits, then truncate
    let guard = BigInt::from(10).pow(10);
    let scale = BigInt::from(10).pow(digits + 10);
    // root = (-b +- sqrt(disc)) / (2a) with sqrt(disc) bracketed by integers
    let s_lo = (&disc * &scale * &scale).sqrt();
    let s_hi = if &s_lo * &s_lo == &disc * &scale * &scale { s_lo.clone() } else { &s_lo + 1 };
    let two_a = BigInt::from(2) * a;
    let mut out: Vec<BigInt> = [(-1i32, &s_hi), (1, &s_lo)]
        .iter()
        .map(|(sg, s)| {
            let num = -b * &scale + BigInt::from(*sg) * *s;
            floor_div(&floor_div(&num, &two_a), &guard)
        })
        .collect();
    out.sort();
    if disc.is_zero() {
        out.truncate(1);
    }
    out
}

fn floor_div(n: &BigInt, d: &BigInt) -> BigInt {
    use num_integer::Integer;
    n.div_floor(d)
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Scalar::zero())
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
}

impl std::ops::Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: QuadExt) -> QuadExt {
        QuadExt::add(&self, &o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn sqrt2() {
        let r = AlgebraicScalar::roots(&s(1), &s(0), &s(-2));
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].cmp_rational(&Scalar::ratio(141421, 100000)), Ordering::Greater);
        assert_eq!(r[1].cmp_rational(&Scalar::ratio(141422, 100000)), Ordering::Less);
        assert!(r[0] < r[1]);
        assert!((r[1].to_f64() - 2f64.sqrt()).abs() < 1e-15);
        let q = QuadExt::new(s(0), s(1), s(2));
        assert_eq!(q.to_algebraic(), r[1]);
        assert_eq!(q.mul(&q), QuadExt::rational(s(2)));
    }

    #[test]
    fn rational_roots_collapse() {
        let r = AlgebraicScalar::roots(&s(1), &s(-3), &s(2));
        assert_eq!(r, vec![AlgebraicScalar::Rational(s(1)), AlgebraicScalar::Rational(s(2))]);
        assert_eq!(AlgebraicScalar::roots(&s(1), &s(0), &s(1)).len(), 0);
        assert_eq!(QuadExt::new(s(1), s(2), s(9)), QuadExt::rational(s(7)));
    }

    #[test]
    fn quad_sign() {
        // 3 - 2 sqrt(2) > 0, 1 - sqrt(2) < 0
        assert_eq!(QuadExt::new(s(3), s(-2), s(2)).signum(), 1);
        assert_eq!(QuadExt::new(s(1), s(-1), s(2)).signum(), -1);
        let x = QuadExt::new(s(1), s(1), s(3));
        let y = x.recip();
        assert_eq!(x.mul(&y), QuadExt::rational(s(1)));
    }

    /// Every comparison between random roots and random rationals agrees
    /// with 100-digit integer evaluation.
    #[test]
    fn agrees_with_hundred_digits() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let digits = 100u32;
        let scale = BigInt::from(10).pow(digits);
        let mut vals: Vec<(AlgebraicScalar, BigInt)> = Vec::new();
        while vals.len() < 1000 {
            let a = rng.gen_range(1..50i64);
            let b = rng.gen_range(-200..200i64);
            let c = rng.gen_range(-200..200i64);
            let alg = AlgebraicScalar::roots(&s(a), &s(b), &s(c));
            let dec = decimal_roots(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c), digits);
            assert_eq!(alg.len(), dec.len());
            for (x, d) in alg.into_iter().zip(dec) {
                vals.push((x, d));
            }
        }
        for w in vals.windows(2) {
            let (x, dx) = &w[0];
            let (y, dy) = &w[1];
            if dx != dy {
                assert_eq!(x.cmp(y), dx.cmp(dy), "{x:?} vs {y:?}");
            }
            if dx.is_positive() {
                assert_eq!(x.signum(), 1);
            } else if *dx < BigInt::from(-1) {
                assert_eq!(x.signum(), -1);
            }
            // rational probe at a 100-digit truncation: exact floor check
            let lo = Scalar::from(dx.clone()) / Scalar::from(scale.clone());
            let hi = Scalar::from(dx + 1) / Scalar::from(scale.clone());
            assert_ne!(x.cmp_rational(&lo), Ordering::Less);
            assert_eq!(x.cmp_rational(&hi), Ordering::Less);
        }
    }
}
