use std::cmp::Ordering;

use serde::Serialize;

use super::{compute_crossings, Crossing, DrawnGraph};
use crate::error::DrawingError;
use crate::geometry::{cmp_direction, Point};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeOrigin {
    Original(usize),
    /// Index into `Planarization::crossings`.
    Dummy(usize),
}

/// A maximal crossing-free part of an edge.
#[derive(Clone, Debug)]
pub struct Piece {
    pub edge: usize,
    pub tail: usize,
    pub head: usize,
    /// Lifted polyline from `tail` to `head`.
    pub points: Vec<Point>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Face {
    /// Darts in walk order; dart `2p` runs along piece `p`, dart `2p + 1` against it.
    pub darts: Vec<usize>,
    /// `|f|`: incidences with nodes of the planarization, counted with multiplicity.
    pub size: usize,
    /// `|V(f)|`: incidences with original vertices, counted with multiplicity.
    pub original_count: usize,
    /// Edge pieces on the walk.
    pub segment_count: usize,
    /// Net x displacement along the walk; nonzero only for faces around the ends of a cylinder.
    pub winding: Rational,
    pub boundary: bool,
}

impl Face {
    /// Cell size for the density formula: original vertices plus edge segments.
    pub fn cell_size(&self) -> usize {
        self.original_count + self.segment_count
    }

    pub fn dummy_count(&self) -> usize {
        self.size - self.original_count
    }
}

#[derive(Clone, Debug)]
pub struct Planarization {
    pub n_original: usize,
    pub m_original: usize,
    pub origin: Vec<NodeOrigin>,
    pub pieces: Vec<Piece>,
    /// Darts leaving each node in counter-clockwise order.
    pub rotation: Vec<Vec<usize>>,
    pub faces: Vec<Face>,
    pub dart_face: Vec<usize>,
    pub crossings: Vec<Crossing>,
}

impl Planarization {
    pub fn node_count(&self) -> usize {
        self.origin.len()
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    pub fn dart_tail(&self, d: usize) -> usize {
        let p = &self.pieces[d / 2];
        if d % 2 == 0 { p.tail } else { p.head }
    }

    pub fn dart_head(&self, d: usize) -> usize {
        let p = &self.pieces[d / 2];
        if d % 2 == 0 { p.head } else { p.tail }
    }

    pub fn is_original(&self, node: usize) -> bool {
        matches!(self.origin[node], NodeOrigin::Original(_))
    }

    pub fn node_degree(&self, node: usize) -> usize {
        self.rotation[node].len()
    }

    /// `|V'| - |E'| + |F'|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.node_count() as i64 - self.piece_count() as i64 + self.faces.len() as i64
    }

    /// Faces sharing a piece with face `f`, without repetition.
    pub fn dual_neighbors(&self, f: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.faces[f]
            .darts
            .iter()
            .map(|&d| self.dart_face[d ^ 1])
            .filter(|&g| g != f)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub fn planarize(d: &DrawnGraph) -> Result<Planarization, DrawingError> {
    let crossings = compute_crossings(d)?;
    planarize_with(d, crossings)
}

/// Planarizes using crossings already computed for `d`.
pub fn planarize_with(d: &DrawnGraph, crossings: Vec<Crossing>) -> Result<Planarization, DrawingError> {
    let n = d.n();
    let mut origin: Vec<NodeOrigin> = (0..n).map(NodeOrigin::Original).collect();
    origin.extend((0..crossings.len()).map(NodeOrigin::Dummy));

    // crossings along each edge: (segment index, local point, node)
    let mut along: Vec<Vec<(usize, Point, usize)>> = vec![Vec::new(); d.m()];
    for (i, c) in crossings.iter().enumerate() {
        along[c.edge_a].push((c.seg_a, c.local_a.clone(), n + i));
        along[c.edge_b].push((c.seg_b, c.local_b.clone(), n + i));
    }

    let mut pieces = Vec::new();
    for (e, stops) in along.iter_mut().enumerate() {
        let path = d.path(e);
        let (u, v) = d.edge(e);
        let mut stops = std::mem::take(stops);
        stops.sort_by(|a, b| {
            a.0.cmp(&b.0).then_with(|| {
                let start = &path[a.0];
                dist2(start, &a.1).cmp(&dist2(start, &b.1))
            })
        });
        let mut tail = u;
        let mut pts = vec![path[0].clone()];
        let mut next_stop = stops.iter().peekable();
        for i in 0..path.len() - 1 {
            while let Some((_, p, node)) = next_stop.next_if(|s| s.0 == i) {
                pts.push(p.clone());
                pieces.push(Piece { edge: e, tail, head: *node, points: std::mem::replace(&mut pts, vec![p.clone()]) });
                tail = *node;
            }
            pts.push(path[i + 1].clone());
        }
        pieces.push(Piece { edge: e, tail, head: v, points: pts });
    }

    let node_count = origin.len();
    if !connected(node_count, &pieces) {
        return Err(DrawingError::Disconnected);
    }

    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for (p, piece) in pieces.iter().enumerate() {
        rotation[piece.tail].push(2 * p);
        rotation[piece.head].push(2 * p + 1);
    }
    let direction = |dart: usize| -> (Rational, Rational) {
        let pts = &pieces[dart / 2].points;
        if dart % 2 == 0 { pts[1].minus(&pts[0]) } else { pts[pts.len() - 2].minus(&pts[pts.len() - 1]) }
    };
    let mut rot_index = vec![0usize; 2 * pieces.len()];
    for darts in rotation.iter_mut() {
        let mut keyed: Vec<(usize, (Rational, Rational))> = darts.iter().map(|&x| (x, direction(x))).collect();
        keyed.sort_by(|a, b| match cmp_direction(&a.1, &b.1) {
            Ordering::Equal => a.0.cmp(&b.0),
            o => o,
        });
        *darts = keyed.into_iter().map(|(x, _)| x).collect();
        for (i, &x) in darts.iter().enumerate() {
            rot_index[x] = i;
        }
    }

    let head = |dart: usize| if dart % 2 == 0 { pieces[dart / 2].head } else { pieces[dart / 2].tail };
    let tail = |dart: usize| if dart % 2 == 0 { pieces[dart / 2].tail } else { pieces[dart / 2].head };
    let next = |dart: usize| {
        let at = head(dart);
        let ring = &rotation[at];
        let i = rot_index[dart ^ 1];
        ring[(i + ring.len() - 1) % ring.len()]
    };

    let mut dart_face = vec![usize::MAX; 2 * pieces.len()];
    let mut faces = Vec::new();
    for start in 0..2 * pieces.len() {
        if dart_face[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut darts = Vec::new();
        let mut cur = start;
        loop {
            dart_face[cur] = id;
            darts.push(cur);
            cur = next(cur);
            if cur == start {
                break;
            }
        }
        let original_count = darts.iter().filter(|&&x| tail(x) < n).count();
        let winding: Rational = darts
            .iter()
            .map(|&x| {
                let pts = &pieces[x / 2].points;
                let dx = &pts[pts.len() - 1].x - &pts[0].x;
                if x % 2 == 0 { dx } else { -dx }
            })
            .sum();
        faces.push(Face {
            size: darts.len(),
            original_count,
            segment_count: darts.len(),
            boundary: !winding.is_zero(),
            winding,
            darts,
        });
    }
    if pieces.is_empty() {
        faces.push(Face {
            darts: Vec::new(),
            size: 0,
            original_count: 0,
            segment_count: 0,
            winding: Rational::zero(),
            boundary: false,
        });
    }

    let p = Planarization { n_original: n, m_original: d.m(), origin, pieces, rotation, faces, dart_face, crossings };
    assert_eq!(p.euler_characteristic(), 2, "face tracing violated Euler's formula");
    Ok(p)
}

fn dist2(a: &Point, b: &Point) -> Rational {
    let (dx, dy) = b.minus(a);
    &dx * &dx + &dy * &dy
}

fn connected(nodes: usize, pieces: &[Piece]) -> bool {
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = nodes;
    for pc in pieces {
        let (a, b) = (find(&mut parent, pc.tail), find(&mut parent, pc.head));
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    comps <= 1
}
