use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    Cycle(usize),
    Path(usize),
    CompleteBipartite(usize, usize),
    Petersen,
    /// Disjointness graph of the `k`-subsets of `{0..n}`. With
    /// `require_triangle_free`, specs with `n >= 3k` are rejected.
    Kneser {
        n: usize,
        k: usize,
        require_triangle_free: bool,
    },
    Mycielski(Box<Graph>),
    /// Random maximal triangle-free graph from the greedy triangle-free process.
    TriangleFreeProcess { n: usize, seed: u64 },
    RandomBipartite { a: usize, b: usize, p: f64, seed: u64 },
}

impl GeneratorSpec {
    pub fn kneser(n: usize, k: usize) -> Self {
        GeneratorSpec::Kneser {
            n,
            k,
            require_triangle_free: true,
        }
    }

    /// Whether the construction always yields a triangle-free graph.
    pub fn guarantees_triangle_free(&self) -> bool {
        match self {
            GeneratorSpec::Cycle(n) => *n != 3,
            GeneratorSpec::Kneser { n, k, .. } => *n < 3 * *k,
            GeneratorSpec::Mycielski(base) => base.is_triangle_free(),
            _ => true,
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    match spec {
        GeneratorSpec::Cycle(n) => {
            if *n < 3 {
                return Err(Error::InvalidSpec(format!("cycle needs n >= 3, got {n}")));
            }
            let edges: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
            Graph::new(*n, &edges)
        }
        GeneratorSpec::Path(n) => {
            let edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
            Graph::new(*n, &edges)
        }
        GeneratorSpec::CompleteBipartite(a, b) => {
            let mut edges = Vec::with_capacity(a * b);
            for i in 0..*a {
                for j in 0..*b {
                    edges.push((i, a + j));
                }
            }
            Graph::new(a + b, &edges)
        }
        GeneratorSpec::Petersen => {
            let mut edges = Vec::with_capacity(15);
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::new(10, &edges)
        }
        GeneratorSpec::Kneser {
            n,
            k,
            require_triangle_free,
        } => kneser(*n, *k, *require_triangle_free),
        GeneratorSpec::Mycielski(base) => Ok(mycielski(base)),
        GeneratorSpec::TriangleFreeProcess { n, seed } => Ok(triangle_free_process(*n, *seed)),
        GeneratorSpec::RandomBipartite { a, b, p, seed } => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::InvalidSpec(format!("edge probability {p} not in [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut edges = Vec::new();
            for i in 0..*a {
                for j in 0..*b {
                    if rng.gen_bool(*p) {
                        edges.push((i, a + j));
                    }
                }
            }
            Graph::new(a + b, &edges)
        }
    }
}

fn kneser(n: usize, k: usize, require_triangle_free: bool) -> Result<Graph> {
    if k == 0 || k > n {
        return Err(Error::InvalidSpec(format!("kneser needs 1 <= k <= n, got n={n} k={k}")));
    }
    if require_triangle_free && n >= 3 * k {
        return Err(Error::InvalidSpec(format!(
            "kneser({n},{k}) contains triangles (n >= 3k)"
        )));
    }
    if n > 63 {
        return Err(Error::InvalidSpec("kneser ground set limited to 63".into()));
    }
    // k-subsets as bitmasks in lexicographic order of their sorted members.
    let mut sets = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<u64>) {
        if cur.len() == k {
            out.push(cur.iter().fold(0u64, |acc, &i| acc | (1 << i)));
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut current, &mut sets);
    let mut edges = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i] & sets[j] == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(sets.len(), &edges)
}

/// Vertices `0..n` copy the base, `n..2n` are the shadows, `2n` is the apex.
fn mycielski(base: &Graph) -> Graph {
    let n = base.n();
    let mut edges = Vec::with_capacity(3 * base.m() + n);
    for (u, v) in base.edges() {
        edges.push((u, v));
        edges.push((n + u, v));
        edges.push((u, n + v));
    }
    for i in 0..n {
        edges.push((n + i, 2 * n));
    }
    Graph::new(2 * n + 1, &edges).expect("mycielski ids in range")
}

/// Insert the non-edges in a uniformly random order, skipping any that
/// would close a triangle. A pair that closes a triangle at some point
/// keeps doing so, so one pass yields a maximal triangle-free graph.
fn triangle_free_process(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let words = n.div_ceil(64).max(1);
    let mut nbr = vec![vec![0u64; words]; n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        let common = nbr[u].iter().zip(&nbr[v]).any(|(a, b)| a & b != 0);
        if !common {
            nbr[u][v / 64] |= 1 << (v % 64);
            nbr[v][u / 64] |= 1 << (u % 64);
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).expect("process ids in range")
}
