use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::DrawnGraph;
use crate::error::{Degeneracy, DrawingError};
use crate::geometry::{on_segment, segment_intersection, IntersectionResult, Point, Segment};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub edge_a: usize,
    pub edge_b: usize,
    /// Canonical point, reduced into `[0, W)` on a cylinder.
    pub point: Point,
    #[serde(skip)]
    pub seg_a: usize,
    #[serde(skip)]
    pub seg_b: usize,
    /// The crossing in the coordinates of `path(edge_a)`.
    #[serde(skip)]
    pub local_a: Point,
    #[serde(skip)]
    pub local_b: Point,
}

struct SegRec {
    edge: usize,
    index: usize,
    seg: Segment,
    /// `seg` plus this x offset gives the segment on the lifted path.
    offset: Rational,
    tail_vertex: Option<usize>,
    head_vertex: Option<usize>,
}

/// Where an intersection point sits on a segment.
#[derive(PartialEq, Eq, Clone, Copy)]
enum Spot {
    Vertex(usize),
    Bend,
    Interior,
}

fn spot(r: &SegRec, p: &Point, seg: &Segment) -> Spot {
    if p == &seg.a {
        r.tail_vertex.map_or(Spot::Bend, Spot::Vertex)
    } else if p == &seg.b {
        r.head_vertex.map_or(Spot::Bend, Spot::Vertex)
    } else {
        Spot::Interior
    }
}

/// All proper crossings, sorted by `(edge_a, edge_b, point)`.
pub fn compute_crossings(d: &DrawnGraph) -> Result<Vec<Crossing>, DrawingError> {
    let metric = d.metric();
    let width = metric.map(|m| m.width().clone());
    let mut recs = Vec::new();
    for e in 0..d.m() {
        let (u, v) = d.edge(e);
        let path = d.path(e);
        let last = path.len() - 2;
        for (i, w) in path.windows(2).enumerate() {
            let seg = Segment { a: w[0].clone(), b: w[1].clone() };
            let (seg, offset) = match &width {
                None => (seg, Rational::zero()),
                Some(wd) => {
                    let k = Rational::from_int((&seg.a.x / wd).floor());
                    let off = wd * &k;
                    (seg.shifted_x(&-off.clone()), off)
                }
            };
            recs.push(SegRec {
                edge: e,
                index: i,
                seg,
                offset,
                tail_vertex: (i == 0).then_some(u),
                head_vertex: (i == last).then_some(v),
            });
        }
    }

    let grid = Grid::new(d, &recs);
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (id, r) in recs.iter().enumerate() {
        for cell in grid.cells_of(&r.seg) {
            buckets.entry(cell).or_default().push(id);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for list in buckets.values() {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let (a, b) = (list[i].min(list[j]), list[i].max(list[j]));
                pairs.push((a, b));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let shifts: Vec<Rational> = match &width {
        None => vec![Rational::zero()],
        Some(w) => vec![-w.clone(), Rational::zero(), w.clone()],
    };
    let mut found = Vec::new();
    for (i, j) in pairs {
        let (s, t) = (&recs[i], &recs[j]);
        for k in &shifts {
            let t_seg = t.seg.shifted_x(k);
            let res = segment_intersection(&s.seg, &t_seg);
            if res == IntersectionResult::None {
                continue;
            }
            if let Some(c) = classify(d, s, t, &t_seg, k, res)? {
                found.push(c);
            }
        }
    }

    check_isolated_vertices(d, &recs, &shifts)?;

    let canon = |p: &Point| match metric {
        None => p.clone(),
        Some(m) => m.canonical(p),
    };
    for c in found.iter_mut() {
        c.point = canon(&c.point);
    }
    found.sort_by(|a, b| a.point.cmp(&b.point));
    for w in found.windows(2) {
        if w[0].point == w[1].point {
            let mut edges = vec![w[0].edge_a, w[0].edge_b, w[1].edge_a, w[1].edge_b];
            edges.sort_unstable();
            edges.dedup();
            return Err(Degeneracy::TriplePoint(edges).into());
        }
    }
    found.sort_by(|a, b| (a.edge_a, a.edge_b, &a.point).cmp(&(b.edge_a, b.edge_b, &b.point)));
    Ok(found)
}

fn classify(
    d: &DrawnGraph,
    s: &SegRec,
    t: &SegRec,
    t_seg: &Segment,
    shift: &Rational,
    res: IntersectionResult,
) -> Result<Option<Crossing>, DrawingError> {
    let (e, f) = (s.edge, t.edge);
    let err = |g: Degeneracy| -> Result<Option<Crossing>, DrawingError> { Err(g.into()) };
    match res {
        IntersectionResult::None => Ok(None),
        IntersectionResult::Overlap => {
            if e == f { err(Degeneracy::SelfIntersection(e)) } else { err(Degeneracy::Overlap(e.min(f), e.max(f))) }
        }
        IntersectionResult::Proper(p) => {
            if e == f {
                return err(Degeneracy::SelfIntersection(e));
            }
            if d.edges_share_endpoint(e, f) {
                return err(Degeneracy::AdjacentCrossing(e.min(f), e.max(f)));
            }
            let local_s = p.shifted_x(&s.offset);
            let local_t = p.shifted_x(&(&t.offset - shift));
            let (ea, sa, la, eb, sb, lb) = if e < f {
                (e, s.index, local_s, f, t.index, local_t)
            } else {
                (f, t.index, local_t, e, s.index, local_s)
            };
            Ok(Some(Crossing { edge_a: ea, edge_b: eb, point: p, seg_a: sa, seg_b: sb, local_a: la, local_b: lb }))
        }
        IntersectionResult::SharedEndpoint(p) | IntersectionResult::Touching(p) => {
            let sp = spot(s, &p, &s.seg);
            let tp = spot(t, &p, t_seg);
            match (sp, tp) {
                (Spot::Vertex(a), Spot::Vertex(b)) if a == b => Ok(None),
                (Spot::Bend, Spot::Bend) if e == f && s.index.abs_diff(t.index) == 1 => {
                    // the shared point must be the bend joining them, not a wrap-around touch
                    let joint = &d.path(e)[s.index.max(t.index)];
                    if &p.shifted_x(&s.offset) == joint { Ok(None) } else { err(Degeneracy::SelfIntersection(e)) }
                }
                _ if e == f => err(Degeneracy::SelfIntersection(e)),
                (Spot::Vertex(v), _) => err(Degeneracy::EdgeThroughVertex { edge: f, vertex: v }),
                (_, Spot::Vertex(v)) => err(Degeneracy::EdgeThroughVertex { edge: e, vertex: v }),
                _ => err(Degeneracy::Touching(e.min(f), e.max(f))),
            }
        }
    }
}

fn check_isolated_vertices(d: &DrawnGraph, recs: &[SegRec], shifts: &[Rational]) -> Result<(), DrawingError> {
    let isolated: Vec<usize> = (0..d.n()).filter(|&v| d.graph().degree(v) == 0).collect();
    if isolated.is_empty() {
        return Ok(());
    }
    for v in isolated {
        let p = d.position(v);
        for r in recs {
            for k in shifts {
                if on_segment(&r.seg, &p.shifted_x(&-k.clone())) {
                    return Err(Degeneracy::EdgeThroughVertex { edge: r.edge, vertex: v }.into());
                }
            }
        }
    }
    Ok(())
}

/// Uniform bucketing grid with exact cell boundaries.
struct Grid {
    x0: Rational,
    y0: Rational,
    cw: Rational,
    ch: Rational,
    /// Number of x cells when the x axis wraps.
    wrap: Option<i64>,
}

impl Grid {
    fn new(d: &DrawnGraph, recs: &[SegRec]) -> Grid {
        let side = ((recs.len() as f64).sqrt().ceil() as i64).max(1);
        let mut ys = recs.iter().flat_map(|r| [&r.seg.a.y, &r.seg.b.y]);
        let first = ys.next().cloned().unwrap_or_else(Rational::zero);
        let (mut ylo, mut yhi) = (first.clone(), first);
        for y in ys {
            if y < &ylo {
                ylo = y.clone();
            }
            if y > &yhi {
                yhi = y.clone();
            }
        }
        let ch = positive_or_one((yhi - &ylo) / Rational::from_int(side));
        match d.metric() {
            Some(m) => Grid {
                x0: Rational::zero(),
                y0: ylo,
                cw: m.width() / Rational::from_int(side),
                ch,
                wrap: Some(side),
            },
            None => {
                let mut xs = recs.iter().flat_map(|r| [&r.seg.a.x, &r.seg.b.x]);
                let first = xs.next().cloned().unwrap_or_else(Rational::zero);
                let (mut xlo, mut xhi) = (first.clone(), first);
                for x in xs {
                    if x < &xlo {
                        xlo = x.clone();
                    }
                    if x > &xhi {
                        xhi = x.clone();
                    }
                }
                Grid { cw: positive_or_one((xhi - &xlo) / Rational::from_int(side)), x0: xlo, y0: ylo, ch, wrap: None }
            }
        }
    }

    fn index(v: &Rational, origin: &Rational, size: &Rational) -> i64 {
        ((v - origin) / size).floor().to_i64().expect("grid index fits in i64")
    }

    fn cells_of(&self, s: &Segment) -> Vec<(i64, i64)> {
        let (xa, xb) = if s.a.x <= s.b.x { (&s.a.x, &s.b.x) } else { (&s.b.x, &s.a.x) };
        let (ya, yb) = if s.a.y <= s.b.y { (&s.a.y, &s.b.y) } else { (&s.b.y, &s.a.y) };
        let (ix0, ix1) = (Self::index(xa, &self.x0, &self.cw), Self::index(xb, &self.x0, &self.cw));
        let (iy0, iy1) = (Self::index(ya, &self.y0, &self.ch), Self::index(yb, &self.y0, &self.ch));
        let xs: Vec<i64> = match self.wrap {
            None => (ix0..=ix1).collect(),
            Some(nx) if ix1 - ix0 + 1 >= nx => (0..nx).collect(),
            Some(nx) => (ix0..=ix1).map(|i| i.rem_euclid(nx)).collect(),
        };
        let mut out = Vec::with_capacity(xs.len() * (iy1 - iy0 + 1) as usize);
        for &ix in &xs {
            for iy in iy0..=iy1 {
                out.push((ix, iy));
            }
        }
        out
    }
}

fn positive_or_one(r: Rational) -> Rational {
    if r.is_positive() { r } else { Rational::one() }
}

pub fn crossing_counts(crossings: &[Crossing], m: usize) -> Vec<usize> {
    let mut counts = vec![0; m];
    for c in crossings {
        counts[c.edge_a] += 1;
        counts[c.edge_b] += 1;
    }
    counts
}

/// Maximum number of crossings on a single edge of this drawing.
pub fn local_crossing_number(d: &DrawnGraph) -> Result<usize, DrawingError> {
    let cr = compute_crossings(d)?;
    Ok(crossing_counts(&cr, d.m()).into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::EdgeSpec;
    use super::*;
    use crate::geometry::CylinderMetric;
    use crate::rational::q;

    #[test]
    fn square_and_k4() {
        let c4 = DrawnGraph::new(pts(&[(0, 0), (1, 0), (1, 1), (0, 1)]), straight(&[(0, 1), (1, 2), (2, 3), (3, 0)]), None, None)
            .unwrap();
        assert!(compute_crossings(&c4).unwrap().is_empty());
        assert_eq!(local_crossing_number(&c4).unwrap(), 0);
        let k4 = k4_crossed();
        let cr = compute_crossings(&k4).unwrap();
        assert_eq!(cr.len(), 1);
        assert_eq!((cr[0].edge_a, cr[0].edge_b, &cr[0].point), (4, 5, &Point::int(1, 1)));
    }

    #[test]
    fn hex_cell_has_four_crossings() {
        let d = hex_cell();
        // oracle: every pair of chords tested directly
        let mut expected = 0;
        for e in 0..d.m() {
            for f in e + 1..d.m() {
                let s = d.segments(e).next().unwrap();
                let t = d.segments(f).next().unwrap();
                if matches!(segment_intersection(&s, &t), IntersectionResult::Proper(_)) {
                    expected += 1;
                }
            }
        }
        let cr = compute_crossings(&d).unwrap();
        assert_eq!(cr.len(), expected);
        assert_eq!(cr.len(), 4);
        assert!(crossing_counts(&cr, d.m()).iter().all(|&c| c <= 2));
        assert_eq!(local_crossing_number(&d).unwrap(), 2);
    }

    #[test]
    fn degeneracies_reported() {
        let overlap = DrawnGraph::new(pts(&[(0, 0), (2, 0), (1, 0), (3, 0)]), straight(&[(0, 1), (2, 3)]), None, None).unwrap();
        assert_eq!(compute_crossings(&overlap).unwrap_err(), DrawingError::Degenerate(Degeneracy::Overlap(0, 1)));

        let through = DrawnGraph::new(pts(&[(0, 0), (2, 0), (1, 0), (1, 2)]), straight(&[(0, 1), (2, 3)]), None, None).unwrap();
        assert_eq!(
            compute_crossings(&through).unwrap_err(),
            DrawingError::Degenerate(Degeneracy::EdgeThroughVertex { edge: 0, vertex: 2 })
        );

        let adjacent = DrawnGraph::new(
            pts(&[(0, 0), (2, 2), (2, 0)]),
            vec![
                EdgeSpec::straight(0, 1),
                EdgeSpec { u: 0, v: 2, bends: vec![Point::int(0, 2)] },
            ],
            None,
            None,
        )
        .unwrap();
        assert_eq!(compute_crossings(&adjacent).unwrap_err(), DrawingError::Degenerate(Degeneracy::AdjacentCrossing(0, 1)));

        let triple = DrawnGraph::new(
            pts(&[(0, 0), (2, 2), (0, 2), (2, 0), (1, 0), (1, 2)]),
            straight(&[(0, 1), (2, 3), (4, 5)]),
            None,
            None,
        )
        .unwrap();
        assert_eq!(compute_crossings(&triple).unwrap_err(), DrawingError::Degenerate(Degeneracy::TriplePoint(vec![0, 1, 2])));

        let isolated = DrawnGraph::new(pts(&[(0, 0), (2, 0), (1, 0)]), straight(&[(0, 1)]), None, None).unwrap();
        assert_eq!(
            compute_crossings(&isolated).unwrap_err(),
            DrawingError::Degenerate(Degeneracy::EdgeThroughVertex { edge: 0, vertex: 2 })
        );

        let bend_touch = DrawnGraph::new(
            pts(&[(0, 0), (2, 0), (0, 3), (2, 3)]),
            vec![EdgeSpec { u: 0, v: 1, bends: vec![Point::int(1, 1)] }, EdgeSpec { u: 2, v: 3, bends: vec![Point::int(1, 1)] }],
            None,
            None,
        )
        .unwrap();
        assert_eq!(compute_crossings(&bend_touch).unwrap_err(), DrawingError::Degenerate(Degeneracy::Touching(0, 1)));
    }

    #[test]
    fn seam_crossing_counted_once() {
        let m = CylinderMetric::new(q(10, 1)).unwrap();
        let d = DrawnGraph::new(pts(&[(9, 0), (1, 2), (9, 2), (1, 0)]), straight(&[(0, 1), (2, 3)]), Some(m), None).unwrap();
        let cr = compute_crossings(&d).unwrap();
        assert_eq!(cr.len(), 1);
        assert_eq!(cr[0].point, Point::int(0, 1));
    }
}
