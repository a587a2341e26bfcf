//! Exact 2D primitives and the x-periodic cylinder metric.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Point {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Point {
        Point::new(Rational::from_int(x), Rational::from_int(y))
    }

    pub fn shifted_x(&self, dx: &Rational) -> Point {
        Point::new(&self.x + dx, self.y.clone())
    }

    pub fn minus(&self, o: &Point) -> (Rational, Rational) {
        (&self.x - &o.x, &self.y - &o.y)
    }
}

pub fn cross(u: &(Rational, Rational), v: &(Rational, Rational)) -> Rational {
    &u.0 * &v.1 - &u.1 * &v.0
}

/// Sign of the turn a -> b -> c; `Greater` is counter-clockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&b.minus(a), &c.minus(a)).signum()
}

/// Whether `p`, already known to be collinear with `s`, lies on the closed segment.
fn within_box(s: &Segment, p: &Point) -> bool {
    let (lx, hx) = if s.a.x <= s.b.x { (&s.a.x, &s.b.x) } else { (&s.b.x, &s.a.x) };
    let (ly, hy) = if s.a.y <= s.b.y { (&s.a.y, &s.b.y) } else { (&s.b.y, &s.a.y) };
    lx <= &p.x && &p.x <= hx && ly <= &p.y && &p.y <= hy
}

pub fn on_segment(s: &Segment, p: &Point) -> bool {
    orient(&s.a, &s.b, p) == Ordering::Equal && within_box(s, p)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Segment, GeometryError> {
        if a == b {
            return Err(GeometryError::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }

    pub fn shifted_x(&self, dx: &Rational) -> Segment {
        Segment { a: self.a.shifted_x(dx), b: self.b.shifted_x(dx) }
    }

    pub fn delta(&self) -> (Rational, Rational) {
        self.b.minus(&self.a)
    }

    fn has_endpoint(&self, p: &Point) -> bool {
        &self.a == p || &self.b == p
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IntersectionResult {
    None,
    /// Interiors meet in exactly one point.
    Proper(Point),
    /// The segments meet only at an endpoint common to both.
    SharedEndpoint(Point),
    /// An endpoint of one segment lies on the other, and is not an endpoint of both.
    Touching(Point),
    /// Collinear with more than one common point.
    Overlap,
}

pub fn segment_intersection(s1: &Segment, s2: &Segment) -> IntersectionResult {
    let o1 = orient(&s1.a, &s1.b, &s2.a);
    let o2 = orient(&s1.a, &s1.b, &s2.b);
    let o3 = orient(&s2.a, &s2.b, &s1.a);
    let o4 = orient(&s2.a, &s2.b, &s1.b);
    use Ordering::Equal;

    if o1 == Equal && o2 == Equal {
        return collinear_case(s1, s2);
    }
    if o1 != Equal && o2 != Equal && o3 != Equal && o4 != Equal {
        if o1 != o2 && o3 != o4 {
            return IntersectionResult::Proper(proper_point(s1, s2));
        }
        return IntersectionResult::None;
    }
    let candidates = [
        (o1, &s2.a, s1),
        (o2, &s2.b, s1),
        (o3, &s1.a, s2),
        (o4, &s1.b, s2),
    ];
    for (o, p, host) in candidates {
        if o == Equal && within_box(host, p) {
            return if s1.has_endpoint(p) && s2.has_endpoint(p) {
                IntersectionResult::SharedEndpoint(p.clone())
            } else {
                IntersectionResult::Touching(p.clone())
            };
        }
    }
    IntersectionResult::None
}

fn collinear_case(s1: &Segment, s2: &Segment) -> IntersectionResult {
    // project on the dominant axis
    let (d1x, d1y) = s1.delta();
    let use_x = d1x.abs() >= d1y.abs();
    let key = |p: &Point| if use_x { p.x.clone() } else { p.y.clone() };
    let (a0, a1) = sorted(key(&s1.a), key(&s1.b));
    let (b0, b1) = sorted(key(&s2.a), key(&s2.b));
    let lo = if a0 > b0 { a0 } else { b0 };
    let hi = if a1 < b1 { a1 } else { b1 };
    match lo.cmp(&hi) {
        Ordering::Greater => IntersectionResult::None,
        Ordering::Less => IntersectionResult::Overlap,
        Ordering::Equal => {
            let p = [&s1.a, &s1.b]
                .into_iter()
                .find(|p| key(p) == lo)
                .expect("touch point is an endpoint")
                .clone();
            if s1.has_endpoint(&p) && s2.has_endpoint(&p) {
                IntersectionResult::SharedEndpoint(p)
            } else {
                IntersectionResult::Touching(p)
            }
        }
    }
}

fn sorted(a: Rational, b: Rational) -> (Rational, Rational) {
    if a <= b { (a, b) } else { (b, a) }
}

fn proper_point(s1: &Segment, s2: &Segment) -> Point {
    let r = s1.delta();
    let s = s2.delta();
    let t = cross(&s2.a.minus(&s1.a), &s) / cross(&r, &s);
    Point::new(&s1.a.x + &t * &r.0, &s1.a.y + &t * &r.1)
}

/// Which half-plane a nonzero direction falls in: 0 for angles in [0, pi), 1 otherwise.
fn half(v: &(Rational, Rational)) -> u8 {
    if v.1.is_positive() || (v.1.is_zero() && v.0.is_positive()) { 0 } else { 1 }
}

/// Counter-clockwise angular order of nonzero directions, starting from the positive x axis.
pub fn cmp_direction(u: &(Rational, Rational), v: &(Rational, Rational)) -> Ordering {
    half(u).cmp(&half(v)).then_with(|| cross(v, u).signum())
}

/// Identifies `x` with `x + W`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CylinderMetric {
    width: Rational,
}

impl CylinderMetric {
    pub fn new(width: Rational) -> Result<CylinderMetric, GeometryError> {
        if !width.is_positive() {
            return Err(GeometryError::NonPositiveWidth);
        }
        Ok(CylinderMetric { width })
    }

    pub fn width(&self) -> &Rational {
        &self.width
    }

    pub fn wrap_x(&self, x: &Rational) -> Rational {
        x.rem_euclid(&self.width)
    }

    pub fn canonical(&self, p: &Point) -> Point {
        Point::new(self.wrap_x(&p.x), p.y.clone())
    }

    /// Representative of `dx` in `(-W/2, W/2)`, or `None` when it sits exactly on `±W/2`.
    pub fn shortest_delta(&self, dx: &Rational) -> Option<Rational> {
        let half = &self.width / Rational::from_int(2);
        let r = (dx + &half).rem_euclid(&self.width) - &half;
        if r == -half.clone() { None } else { Some(r) }
    }
}

/// Translates of `seg` by `{-W, 0, W}` clipped to the strip `0 <= x < W`.
pub fn lift_to_strip(seg: &Segment, metric: &CylinderMetric) -> Vec<Segment> {
    let w = metric.width();
    let mut out = Vec::new();
    for k in -1i64..=1 {
        let s = seg.shifted_x(&(w * Rational::from_int(k)));
        if let Some(piece) = clip_to_strip(&s, w) {
            out.push(piece);
        }
    }
    out
}

fn clip_to_strip(s: &Segment, w: &Rational) -> Option<Segment> {
    let (dx, dy) = s.delta();
    if dx.is_zero() {
        let inside = !s.a.x.is_negative() && &s.a.x < w;
        return inside.then(|| s.clone());
    }
    let t0 = -&s.a.x / &dx;
    let t1 = (w - &s.a.x) / &dx;
    let (lo, hi) = sorted(t0, t1);
    let lo = lo.max(Rational::zero());
    let hi = hi.min(Rational::one());
    if lo >= hi {
        return None;
    }
    let at = |t: &Rational| Point::new(&s.a.x + t * &dx, &s.a.y + t * &dy);
    Segment::new(at(&lo), at(&hi)).ok()
}
