//! Simple undirected graphs with short-cycle queries.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::GraphError;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
    m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub n: usize,
    pub m: usize,
    pub m_over_n: Rational,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::ParallelEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, labels: vec![None; n], m: edges.len() })
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Graph {
        assert_eq!(labels.len(), self.n());
        self.labels = labels;
        self
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        Graph::from_edges(vertices.len(), &edges).expect("induced subgraph of a simple graph")
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let mut touched = vec![s];
            dist[s] = 0;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                        if 2 * dist[u] + 1 >= best {
                            break 'bfs;
                        }
                    }
                }
            }
            for v in touched {
                dist[v] = usize::MAX;
                parent[v] = usize::MAX;
            }
        }
        (best != usize::MAX).then_some(best)
    }

    pub fn has_c3(&self) -> bool {
        self.edges().any(|(u, v)| sorted_intersect(&self.adj[u], &self.adj[v], usize::MAX))
    }

    /// A 4-cycle `v-u-w-x` exists iff two neighbours of some `u` share another neighbour.
    pub fn has_c4(&self) -> bool {
        for u in 0..self.n() {
            let nb = &self.adj[u];
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    if sorted_intersect(&self.adj[nb[i]], &self.adj[nb[j]], u) {
                        return true;
                    }
                }
            }
        }
        false
    }

    pub fn density_report(&self) -> DensityReport {
        assert!(self.n() >= 1, "density of the empty graph");
        DensityReport { n: self.n(), m: self.m(), m_over_n: Rational::from(self.m()) / Rational::from(self.n()) }
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n()
    }

    /// Connected with at least three vertices and no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        let n = self.n();
        if n < 3 || !self.is_connected() {
            return false;
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut timer = 0;
        // iterative DFS: (vertex, parent, next neighbour index)
        let mut stack = vec![(0usize, usize::MAX, 0usize)];
        disc[0] = 0;
        low[0] = 0;
        let mut root_children = 0;
        while let Some(&mut (u, p, ref mut idx)) = stack.last_mut() {
            if *idx < self.adj[u].len() {
                let w = self.adj[u][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    timer += 1;
                    disc[w] = timer;
                    low[w] = timer;
                    if u == 0 {
                        root_children += 1;
                    }
                    stack.push((w, u, 0));
                } else if w != p {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if p != usize::MAX {
                    low[p] = low[p].min(low[u]);
                    if p != 0 && low[u] >= disc[p] {
                        return false;
                    }
                }
            }
        }
        root_children < 2
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).expect("petersen")
    }

    /// The Petersen graph is the unique 3-regular graph of girth 5 on 10 vertices.
    pub fn is_petersen(&self) -> bool {
        self.n() == 10
            && self.m() == 15
            && (0..10).all(|v| self.degree(v) == 3)
            && self.girth() == Some(5)
    }
}

fn sorted_intersect(a: &[usize], b: &[usize], skip: usize) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i] != skip {
                    return true;
                }
                i += 1;
                j += 1;
            }
        }
    }
    false
}
