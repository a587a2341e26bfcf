//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use kplanar_core::{DrawnGraph, Graph, Point, Rational};

/// Shortest cycle through each edge `uv`: BFS from `u` in `G - uv` to `v`.
pub fn brute_girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (u, v) in g.edges() {
        let mut dist = vec![usize::MAX; g.n()];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if (x == u && y == v) || dist[y] != usize::MAX {
                    continue;
                }
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
        if dist[v] != usize::MAX {
            let len = dist[v] + 1;
            best = Some(best.map_or(len, |b| b.min(len)));
        }
    }
    best
}

/// A 4-cycle exists iff two distinct vertices share two neighbours.
pub fn brute_has_c4(g: &Graph) -> bool {
    let n = g.n();
    let words = n.div_ceil(64);
    let mut rows = vec![vec![0u64; words]; n];
    for (u, v) in g.edges() {
        rows[u][v / 64] |= 1 << (v % 64);
        rows[v][u / 64] |= 1 << (u % 64);
    }
    for u in 0..n {
        for w in u + 1..n {
            let common: u32 = rows[u].iter().zip(&rows[w]).map(|(a, b)| (a & b).count_ones()).sum();
            if common >= 2 {
                return true;
            }
        }
    }
    false
}

/// Whether the graph contains a triangle, by scanning all triples of an adjacency matrix.
pub fn brute_has_c3(g: &Graph) -> bool {
    let n = g.n();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    (0..n).any(|x| (x + 1..n).any(|y| a[x][y] && (y + 1..n).any(|z| a[x][z] && a[y][z])))
}

fn sign(a: &Point, b: &Point, c: &Point) -> i32 {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Strict crossing of open segments `pq` and `rs`.
pub fn proper_cross(p: &Point, q: &Point, r: &Point, s: &Point) -> bool {
    let (d1, d2) = (sign(p, q, r), sign(p, q, s));
    let (d3, d4) = (sign(r, s, p), sign(r, s, q));
    d1 * d2 < 0 && d3 * d4 < 0
}

struct Lifted {
    edge: usize,
    a: Point,
    b: Point,
    lo: (f64, f64),
    hi: (f64, f64),
}

/// Per-edge crossing counts on the universal cover: every lifted segment of `e`
/// against every lifted segment of `f` translated by `k * W`, `k = -4..=4`.
pub fn cover_crossing_counts(d: &DrawnGraph) -> Vec<usize> {
    let width = d.metric().map(|m| m.width().clone());
    let shifts: Vec<i64> = if width.is_some() { (-4..=4).collect() } else { vec![0] };
    let w = width.clone().unwrap_or_else(Rational::zero);
    let wf = w.to_f64();
    let mut segs = Vec::new();
    for e in 0..d.m() {
        for pair in d.path(e).windows(2) {
            let (ax, ay, bx, by) = (pair[0].x.to_f64(), pair[0].y.to_f64(), pair[1].x.to_f64(), pair[1].y.to_f64());
            segs.push(Lifted {
                edge: e,
                a: pair[0].clone(),
                b: pair[1].clone(),
                lo: (ax.min(bx), ay.min(by)),
                hi: (ax.max(bx), ay.max(by)),
            });
        }
    }
    let mut counts = vec![0; d.m()];
    let eps = 1e-6;
    for (i, s) in segs.iter().enumerate() {
        for t in &segs[i + 1..] {
            if s.edge == t.edge || s.lo.1 > t.hi.1 + eps || t.lo.1 > s.hi.1 + eps {
                continue;
            }
            for &k in &shifts {
                let off = k as f64 * wf;
                if s.lo.0 > t.hi.0 + off + eps || t.lo.0 + off > s.hi.0 + eps {
                    continue;
                }
                let dx = &w * Rational::from_int(k);
                let (ta, tb) = (t.a.shifted_x(&dx), t.b.shifted_x(&dx));
                if proper_cross(&s.a, &s.b, &ta, &tb) {
                    counts[s.edge] += 1;
                    counts[t.edge] += 1;
                }
            }
        }
    }
    counts
}

use kplanar_core::drawing::{compute_crossings, crossing_counts, planarize};
use kplanar_core::{CylinderMetric, EdgeSpec};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn below(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    rng.next_u64() % n
}

/// Shape of the drawings produced by [`random_drawing`].
#[derive(Clone, Copy, Debug)]
pub struct DrawingShape {
    pub max_n: usize,
    pub grid: i64,
    /// Cylinder width, or a plane drawing.
    pub cylinder: Option<i64>,
    /// Maximum crossings per edge to accept.
    pub max_k: usize,
    pub bends: bool,
}

impl DrawingShape {
    pub fn plane(max_n: usize, max_k: usize) -> DrawingShape {
        DrawingShape { max_n, grid: 7, cylinder: None, max_k, bends: true }
    }
}

/// One attempt at a random connected drawing in general position.
fn attempt(rng: &mut ChaCha8Rng, s: &DrawingShape) -> Option<DrawnGraph> {
    let n = 3 + below(rng, (s.max_n - 2) as u64) as usize;
    let xmax = s.cylinder.unwrap_or(s.grid);
    let mut pts: Vec<(i64, i64)> = Vec::new();
    while pts.len() < n {
        let p = (below(rng, xmax as u64) as i64, below(rng, s.grid as u64) as i64);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if below(rng, 100) < 45 {
                let mut e = EdgeSpec::straight(u, v);
                if s.bends && below(rng, 5) == 0 {
                    let x = below(rng, xmax as u64) as i64;
                    let y = below(rng, s.grid as u64) as i64;
                    e.bends.push(Point::int(x, y));
                }
                edges.push(e);
            }
        }
    }
    let metric = s.cylinder.map(|w| CylinderMetric::new(Rational::from_int(w)).unwrap());
    let positions = pts.iter().map(|&(x, y)| Point::int(x, y)).collect();
    let d = DrawnGraph::new(positions, edges, metric, None).ok()?;
    if d.m() == 0 || !d.graph().is_connected() {
        return None;
    }
    let cr = compute_crossings(&d).ok()?;
    if crossing_counts(&cr, d.m()).into_iter().max().unwrap_or(0) > s.max_k {
        return None;
    }
    planarize(&d).ok()?;
    Some(d)
}

/// Rejection sampler: retries until a drawing passes every validity check.
pub fn random_drawing(seed: u64, s: &DrawingShape) -> DrawnGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(d) = attempt(&mut rng, s) {
            return d;
        }
    }
}

pub fn random_graph(seed: u64, max_n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 1 + below(&mut rng, max_n as u64) as usize;
    let density = 10 + below(&mut rng, 50);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if below(&mut rng, 100) < density {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Straight-line stacked triangulation: repeatedly put a vertex at the centroid
/// of a face and join it to the three corners.
pub fn stacked_triangulation(seed: u64, n: usize) -> DrawnGraph {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = vec![Point::int(0, 0), Point::int(60, 0), Point::int(0, 60)];
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0usize, 1, 2]];
    while pts.len() < n {
        let i = below(&mut rng, faces.len() as u64) as usize;
        let [a, b, c] = faces.swap_remove(i);
        let third = Rational::new(1, 3);
        let x = (&pts[a].x + &pts[b].x + &pts[c].x) * &third;
        let y = (&pts[a].y + &pts[b].y + &pts[c].y) * &third;
        let v = pts.len();
        pts.push(Point::new(x, y));
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    let specs = edges.iter().map(|&(u, v)| EdgeSpec::straight(u, v)).collect();
    DrawnGraph::new(pts, specs, None, None).unwrap()
}

use kplanar_core::constructions::Family;

/// Smallest wrapped width covering six horizontal periods.
pub fn six_periods(f: Family) -> usize {
    let p = f.period();
    let w = f.minimum().2.max(6 * p);
    w.div_ceil(p) * p
}

/// `|m/n - density| * rows` over many heights, measured once per family.
pub fn frozen_constant(f: Family) -> Rational {
    let (p, q) = match f {
        Family::C4Free1Planar => (21, 10),
        Family::Girth51Planar => (1, 2),
        Family::C4Free2Planar => (5, 2),
        Family::Girth52Planar => (3, 5),
        Family::Girth53Planar => (3, 1),
    };
    Rational::new(p, q)
}
