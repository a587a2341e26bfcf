//! Polyline drawings of simple graphs in the plane or on an x-periodic cylinder.
//!
//! On a cylinder of width `W`, vertex x-coordinates live in `[0, W)` and every
//! polyline step (vertex to bend, bend to bend, bend to vertex) is drawn along
//! the shorter way around, so each step must move strictly less than `W/2` in x.
//! Bends may be stored in any translate.

mod crossings;
mod io;
mod planarize;
mod svg;
mod uncross;
mod verify;

pub use crossings::{compute_crossings, crossing_counts, local_crossing_number, Crossing};
pub use io::{from_json, to_json, DrawingFile, EdgeRecord, VertexRecord};
pub use planarize::{planarize, planarize_with, Face, NodeOrigin, Piece, Planarization};
pub use svg::{render_svg, SvgOptions};
pub use uncross::{greedy_uncross, greedy_uncross_with, Removal};
pub use verify::{verify_drawing, Check, CheckResult, Expectations, VerifyReport};

use crate::error::DrawingError;
use crate::geometry::{CylinderMetric, Point, Segment};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct DrawnGraph {
    graph: Graph,
    edges: Vec<(usize, usize)>,
    positions: Vec<Point>,
    bends: Vec<Vec<Point>>,
    metric: Option<CylinderMetric>,
    paths: Vec<Vec<Point>>,
}

/// Input record for one edge of a drawing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub u: usize,
    pub v: usize,
    pub bends: Vec<Point>,
}

impl EdgeSpec {
    pub fn straight(u: usize, v: usize) -> EdgeSpec {
        EdgeSpec { u, v, bends: Vec::new() }
    }
}

impl DrawnGraph {
    pub fn new(
        positions: Vec<Point>,
        edges: Vec<EdgeSpec>,
        metric: Option<CylinderMetric>,
        labels: Option<Vec<Option<String>>>,
    ) -> Result<DrawnGraph, DrawingError> {
        let n = positions.len();
        let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e.u, e.v)).collect();
        let mut graph = Graph::from_edges(n, &pairs)?;
        if let Some(l) = labels {
            if l.len() != n {
                return Err(DrawingError::PositionCount { expected: l.len(), got: n });
            }
            graph = graph.with_labels(l);
        }
        if let Some(m) = &metric {
            for (v, p) in positions.iter().enumerate() {
                if p.x.is_negative() || &p.x >= m.width() {
                    return Err(DrawingError::OutsideStrip(v));
                }
            }
        }
        let mut sorted: Vec<(&Point, usize)> = positions.iter().zip(0..).collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(DrawingError::CoincidentVertices(w[0].1.min(w[1].1), w[0].1.max(w[1].1)));
        }
        let mut paths = Vec::with_capacity(edges.len());
        for (id, e) in edges.iter().enumerate() {
            paths.push(lift_path(id, &positions[e.u], &e.bends, &positions[e.v], metric.as_ref())?);
        }
        Ok(DrawnGraph {
            graph,
            edges: pairs,
            positions,
            bends: edges.into_iter().map(|e| e.bends).collect(),
            metric,
            paths,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn position(&self, v: usize) -> &Point {
        &self.positions[v]
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn bends(&self, id: usize) -> &[Point] {
        &self.bends[id]
    }

    pub fn metric(&self) -> Option<&CylinderMetric> {
        self.metric.as_ref()
    }

    /// The polyline of edge `id` as a continuous path starting at its first endpoint.
    /// On a cylinder later points may leave the strip.
    pub fn path(&self, id: usize) -> &[Point] {
        &self.paths[id]
    }

    pub fn segments(&self, id: usize) -> impl Iterator<Item = Segment> + '_ {
        self.paths[id]
            .windows(2)
            .map(|w| Segment { a: w[0].clone(), b: w[1].clone() })
    }

    pub fn edges_share_endpoint(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    /// Drawing with the listed edges removed; surviving edges keep their relative order.
    pub fn without_edges(&self, removed: &[bool]) -> DrawnGraph {
        let edges: Vec<EdgeSpec> = (0..self.m())
            .filter(|&e| !removed[e])
            .map(|e| EdgeSpec { u: self.edges[e].0, v: self.edges[e].1, bends: self.bends[e].clone() })
            .collect();
        DrawnGraph::new(self.positions.clone(), edges, self.metric.clone(), Some(self.graph.labels().to_vec()))
            .expect("subdrawing of a valid drawing")
    }

    /// Subdrawing induced by the kept vertices, renumbered in increasing order.
    pub fn induced(&self, keep: &[bool]) -> DrawnGraph {
        let mut index = vec![usize::MAX; self.n()];
        let mut positions = Vec::new();
        let mut labels = Vec::new();
        for v in 0..self.n() {
            if keep[v] {
                index[v] = positions.len();
                positions.push(self.positions[v].clone());
                labels.push(self.graph.labels()[v].clone());
            }
        }
        let edges: Vec<EdgeSpec> = (0..self.m())
            .filter(|&e| keep[self.edges[e].0] && keep[self.edges[e].1])
            .map(|e| EdgeSpec { u: index[self.edges[e].0], v: index[self.edges[e].1], bends: self.bends[e].clone() })
            .collect();
        DrawnGraph::new(positions, edges, self.metric.clone(), Some(labels)).expect("induced subdrawing of a valid drawing")
    }
}

fn lift_path(
    id: usize,
    start: &Point,
    bends: &[Point],
    end: &Point,
    metric: Option<&CylinderMetric>,
) -> Result<Vec<Point>, DrawingError> {
    let mut path = vec![start.clone()];
    for target in bends.iter().chain(std::iter::once(end)) {
        let last = path.last().expect("nonempty");
        let next = match metric {
            None => target.clone(),
            Some(m) => {
                let dx = m
                    .shortest_delta(&(&target.x - &last.x))
                    .ok_or(DrawingError::AmbiguousWrap(id))?;
                Point::new(&last.x + &dx, target.y.clone())
            }
        };
        if &next == last {
            return Err(DrawingError::RepeatedPoint(id));
        }
        path.push(next);
    }
    Ok(path)
}
