use std::fmt::Write;

use super::{Crossing, DrawnGraph};
use crate::geometry::{lift_to_strip, Point, Segment};
use crate::rational::{Rational, Rounding};

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Pixels per drawing unit.
    pub scale: Rational,
    pub margin: Rational,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { scale: Rational::from_int(40), margin: Rational::from_int(20) }
    }
}

fn color_of(label: Option<&str>) -> &'static str {
    match label.map(|l| l.split('@').next().unwrap_or(l)) {
        Some("red") => "#d62728",
        Some("blue") => "#1f77b4",
        _ => "#222222",
    }
}

fn num(r: &Rational) -> String {
    r.to_decimal(2, Rounding::HalfEven)
}

/// Renders vertices, edges and hollow crossing markers; cylinder drawings are cut open at `x = 0`.
pub fn render_svg(d: &DrawnGraph, crossings: &[Crossing], opts: &SvgOptions) -> String {
    let mut segs: Vec<(usize, Segment)> = Vec::new();
    for e in 0..d.m() {
        for s in d.segments(e) {
            match d.metric() {
                None => segs.push((e, s)),
                Some(m) => segs.extend(lift_to_strip(&s, m).into_iter().map(|p| (e, p))),
            }
        }
    }
    let mut all: Vec<&Point> = d.positions().iter().collect();
    all.extend(segs.iter().flat_map(|(_, s)| [&s.a, &s.b]));
    let (mut x0, mut x1, mut y0, mut y1) = match all.first() {
        Some(p) => (p.x.clone(), p.x.clone(), p.y.clone(), p.y.clone()),
        None => (Rational::zero(), Rational::one(), Rational::zero(), Rational::one()),
    };
    for p in &all {
        x0 = x0.min(p.x.clone());
        x1 = x1.max(p.x.clone());
        y0 = y0.min(p.y.clone());
        y1 = y1.max(p.y.clone());
    }
    if let Some(m) = d.metric() {
        x0 = x0.min(Rational::zero());
        x1 = x1.max(m.width().clone());
    }
    let s = &opts.scale;
    let mg = &opts.margin;
    let two = Rational::from_int(2);
    let pxr = |p: &Point| ((&p.x - &x0) * s + mg, (&y1 - &p.y) * s + mg);
    let px = |p: &Point| {
        let (a, b) = pxr(p);
        (num(&a), num(&b))
    };
    let width = (&x1 - &x0) * s + mg * &two;
    let height = (&y1 - &y0) * s + mg * &two;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(&width),
        h = num(&height)
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    if let Some(m) = d.metric() {
        for x in [Rational::zero(), m.width().clone()] {
            let (a, b) = (px(&Point::new(x.clone(), y0.clone())), px(&Point::new(x, y1.clone())));
            writeln!(
                out,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999999" stroke-dasharray="4 4"/>"##,
                a.0, a.1, b.0, b.1
            )
            .unwrap();
        }
    }
    writeln!(out, r#"<g stroke-width="1.5" stroke-linecap="round">"#).unwrap();
    for (e, seg) in &segs {
        let (u, v) = d.edge(*e);
        let lu = d.graph().label(u);
        let lv = d.graph().label(v);
        let c = if color_of(lu) == "#1f77b4" || color_of(lv) == "#1f77b4" { "#1f77b4" } else { "#222222" };
        let (a, b) = (px(&seg.a), px(&seg.b));
        writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{c}"/>"#, a.0, a.1, b.0, b.1).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    let r = Rational::from_int(3);
    for c in crossings {
        let (x, y) = pxr(&c.point);
        writeln!(
            out,
            r##"<rect x="{}" y="{}" width="6" height="6" fill="none" stroke="#ff7f0e"/>"##,
            num(&(x - &r)),
            num(&(y - &r))
        )
        .unwrap();
    }
    for v in 0..d.n() {
        let p = px(d.position(v));
        writeln!(out, r#"<circle cx="{}" cy="{}" r="3" fill="{}"/>"#, p.0, p.1, color_of(d.graph().label(v))).unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}
