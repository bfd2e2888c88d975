//! Simple undirected graphs on dense vertex ids `0..n`, plus the structural
//! reductions the certificates need (closed-neighbourhood deletion, D-cores,
//! connected components).

mod generate;
pub mod io;

pub use generate::{generate, GeneratorSpec};

use std::collections::VecDeque;
use std::sync::OnceLock;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Immutable simple graph. Adjacency lists are sorted and symmetric.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
    stats: OnceLock<GraphStats>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    /// `S(v)`: sum of the degrees of the neighbours of `v`.
    pub neighbor_degree_sums: Vec<usize>,
    pub triangle_free: bool,
}

/// A subgraph with dense local ids and the map back to the parent's ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `parent[local] = parent id`, strictly increasing.
    pub parent: Vec<usize>,
}

impl InducedSubgraph {
    pub fn lift(&self, local: usize) -> usize {
        self.parent[local]
    }

    pub fn lift_all(&self, locals: &[usize]) -> Vec<usize> {
        locals.iter().map(|&v| self.parent[v]).collect()
    }
}

impl Graph {
    /// Builds a graph from an edge list; duplicate pairs collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            n: adj.len(),
            m,
            adj,
            stats: OnceLock::new(),
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v].is_empty()).collect()
    }

    pub fn stats(&self) -> &GraphStats {
        self.stats.get_or_init(|| {
            let degrees: Vec<usize> = self.adj.iter().map(Vec::len).collect();
            let neighbor_degree_sums = self
                .adj
                .iter()
                .map(|list| list.iter().map(|&y| degrees[y]).sum())
                .collect();
            GraphStats {
                max_degree: degrees.iter().copied().max().unwrap_or(0),
                degrees,
                neighbor_degree_sums,
                triangle_free: self.find_triangle().is_none(),
            }
        })
    }

    /// First triangle `[a, b, c]` (`a < b < c`) found by scanning the edges.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for (u, v) in self.edges() {
            let (a, b) = (&self.adj[u], &self.adj[v]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let mut t = [u, v, a[i]];
                        t.sort_unstable();
                        return Some(t);
                    }
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.stats().triangle_free
    }

    pub fn require_triangle_free(&self) -> Result<()> {
        match self.find_triangle() {
            Some(t) => Err(Error::NotTriangleFree(t)),
            None => Ok(()),
        }
    }

    /// `N̄(u) = {u} ∪ N(u)`, sorted.
    pub fn closed_neighborhood(&self, u: usize) -> Vec<usize> {
        let mut c = self.adj[u].clone();
        let pos = c.partition_point(|&x| x < u);
        c.insert(pos, u);
        c
    }

    /// Subgraph induced by the vertices with `keep[v] == true`.
    pub fn induced(&self, keep: &[bool]) -> InducedSubgraph {
        let mut local = vec![usize::MAX; self.n];
        let parent: Vec<usize> = (0..self.n).filter(|&v| keep[v]).collect();
        for (i, &p) in parent.iter().enumerate() {
            local[p] = i;
        }
        let adj = parent
            .iter()
            .map(|&p| {
                self.adj[p]
                    .iter()
                    .filter(|&&q| keep[q])
                    .map(|&q| local[q])
                    .collect()
            })
            .collect();
        InducedSubgraph {
            graph: Self::from_adjacency(adj),
            parent,
        }
    }

    pub fn induced_on(&self, vertices: &[usize]) -> InducedSubgraph {
        let mut keep = vec![false; self.n];
        for &v in vertices {
            keep[v] = true;
        }
        self.induced(&keep)
    }

    pub fn remove_vertex(&self, v: usize) -> InducedSubgraph {
        let mut keep = vec![true; self.n];
        keep[v] = false;
        self.induced(&keep)
    }

    /// `G_u = G − N̄(u)`.
    pub fn remove_closed_neighborhood(&self, u: usize) -> Result<InducedSubgraph> {
        if u >= self.n {
            return Err(Error::OutOfRange { vertex: u, n: self.n });
        }
        let mut keep = vec![true; self.n];
        keep[u] = false;
        for &x in &self.adj[u] {
            keep[x] = false;
        }
        Ok(self.induced(&keep))
    }

    /// Maximal subgraph of minimum degree `>= d`, by peeling.
    pub fn d_core(&self, d: usize) -> InducedSubgraph {
        self.d_core_with_order(d).0
    }

    /// D-core together with the order in which vertices were peeled.
    pub fn d_core_with_order(&self, d: usize) -> (InducedSubgraph, Vec<usize>) {
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut alive = vec![true; self.n];
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| deg[v] < d).collect();
        let mut queued = vec![false; self.n];
        for &v in &queue {
            queued[v] = true;
        }
        let mut order = Vec::new();
        while let Some(v) = queue.pop_front() {
            alive[v] = false;
            order.push(v);
            for &x in &self.adj[v] {
                if alive[x] {
                    deg[x] -= 1;
                    if deg[x] < d && !queued[x] {
                        queued[x] = true;
                        queue.push_back(x);
                    }
                }
            }
        }
        (self.induced(&alive), order)
    }

    /// Component label per vertex (labels in order of smallest member) and count.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &x in &self.adj[v] {
                    if label[x] == usize::MAX {
                        label[x] = count;
                        stack.push(x);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn components(&self) -> Vec<InducedSubgraph> {
        let (label, count) = self.component_labels();
        (0..count)
            .map(|c| {
                let keep: Vec<bool> = label.iter().map(|&l| l == c).collect();
                self.induced(&keep)
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().1 <= 1
    }

    /// Hex SHA-256 of the canonical edge-list serialisation.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(io::to_edge_list(self).as_bytes());
        hex::encode(h.finalize())
    }
}
