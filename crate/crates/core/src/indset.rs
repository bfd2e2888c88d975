//! Independent sets: exhaustive enumeration (brute-force oracles), maximal
//! sets by Bron–Kerbosch, and the exact max-weight solver used for pricing.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Largest graph accepted by [`enumerate_all_independent_sets`].
pub const ENUMERATE_ALL_LIMIT: usize = 20;
/// Bitset width of the branching solvers.
pub const BITSET_LIMIT: usize = 128;
pub const DEFAULT_MAXIMAL_BUDGET: usize = 1_000_000;

type Bits = u128;

/// Sorted list of pairwise non-adjacent vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndepSet(Vec<usize>);

impl IndepSet {
    /// Validates ids, order and independence against `g`.
    pub fn new(g: &Graph, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
            return Err(Error::OutOfRange { vertex: v, n: g.n() });
        }
        if !is_independent(g, &vertices) {
            return Err(Error::InvalidInput(format!("{vertices:?} is not independent")));
        }
        Ok(IndepSet(vertices))
    }

    /// Caller guarantees `vertices` is sorted, duplicate-free and independent.
    pub fn from_sorted_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        IndepSet(vertices)
    }

    pub fn empty() -> Self {
        IndepSet(Vec::new())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn weight<S: Scalar>(&self, weights: &[S]) -> S {
        self.0
            .iter()
            .fold(S::zero(), |acc, &v| acc + weights[v].clone())
    }
}

pub fn is_independent(g: &Graph, vertices: &[usize]) -> bool {
    vertices.iter().enumerate().all(|(i, &u)| {
        vertices[i + 1..]
            .iter()
            .all(|&v| u != v && !g.has_edge(u, v))
    })
}

fn neighbor_bits(g: &Graph, what: &'static str) -> Result<Vec<Bits>> {
    if g.n() > BITSET_LIMIT {
        return Err(Error::TooLarge {
            what,
            n: g.n(),
            limit: BITSET_LIMIT,
        });
    }
    Ok((0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0, |acc, &x| acc | (1 << x)))
        .collect())
}

fn bits_to_vec(mut b: Bits) -> Vec<usize> {
    let mut out = Vec::with_capacity(b.count_ones() as usize);
    while b != 0 {
        let v = b.trailing_zeros() as usize;
        out.push(v);
        b &= b - 1;
    }
    out
}

fn full_mask(n: usize) -> Bits {
    if n == BITSET_LIMIT {
        Bits::MAX
    } else {
        (1 << n) - 1
    }
}

/// Every independent set including the empty set, in lexicographic order.
pub fn enumerate_all_independent_sets(g: &Graph) -> Result<Vec<IndepSet>> {
    if g.n() > ENUMERATE_ALL_LIMIT {
        return Err(Error::TooLarge {
            what: "independent-set enumeration",
            n: g.n(),
            limit: ENUMERATE_ALL_LIMIT,
        });
    }
    let nbr = neighbor_bits(g, "independent-set enumeration")?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(nbr: &[Bits], cand: Bits, cur: &mut Vec<usize>, out: &mut Vec<IndepSet>) {
        out.push(IndepSet(cur.clone()));
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            // only later vertices, so each set is produced once
            cur.push(v);
            rec(nbr, c & !nbr[v], cur, out);
            cur.pop();
        }
    }
    rec(&nbr, full_mask(g.n()), &mut current, &mut out);
    Ok(out)
}

pub fn enumerate_maximal_independent_sets(g: &Graph) -> Result<Vec<IndepSet>> {
    enumerate_maximal_independent_sets_budget(g, DEFAULT_MAXIMAL_BUDGET)
}

/// Inclusion-maximal independent sets, as maximal cliques of the complement
/// found by pivoting Bron–Kerbosch. Sorted lexicographically.
pub fn enumerate_maximal_independent_sets_budget(
    g: &Graph,
    budget: usize,
) -> Result<Vec<IndepSet>> {
    let nbr = neighbor_bits(g, "maximal independent-set enumeration")?;
    let all = full_mask(g.n());
    let co: Vec<Bits> = (0..g.n()).map(|v| all & !nbr[v] & !(1 << v)).collect();
    let mut out = Vec::new();

    struct Ctx<'a> {
        co: &'a [Bits],
        budget: usize,
        out: &'a mut Vec<IndepSet>,
    }

    fn bk(ctx: &mut Ctx<'_>, r: Bits, mut p: Bits, mut x: Bits) -> bool {
        if p == 0 && x == 0 {
            if ctx.out.len() >= ctx.budget {
                return false;
            }
            ctx.out.push(IndepSet(bits_to_vec(r)));
            return true;
        }
        let mut best = 0;
        let mut pivot_set = 0;
        let mut px = p | x;
        while px != 0 {
            let u = px.trailing_zeros() as usize;
            px &= px - 1;
            let c = (p & ctx.co[u]).count_ones();
            if c >= best {
                best = c;
                pivot_set = ctx.co[u];
            }
        }
        let mut cand = p & !pivot_set;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if !bk(ctx, r | (1 << v), p & ctx.co[v], x & ctx.co[v]) {
                return false;
            }
            p &= !(1 << v);
            x |= 1 << v;
        }
        true
    }

    let mut ctx = Ctx {
        co: &co,
        budget,
        out: &mut out,
    };
    if !bk(&mut ctx, 0, all, 0) {
        return Err(Error::TooLarge {
            what: "maximal independent-set enumeration budget",
            n: g.n(),
            limit: budget,
        });
    }
    out.sort();
    Ok(out)
}

/// Greedy maximal independent set containing `start`, extended in index order.
pub fn greedy_maximal_from(g: &Graph, start: usize) -> IndepSet {
    let mut blocked = vec![false; g.n()];
    let mut set = Vec::new();
    for v in std::iter::once(start).chain(0..g.n()) {
        if blocked[v] {
            continue;
        }
        set.push(v);
        blocked[v] = true;
        for &x in g.neighbors(v) {
            blocked[x] = true;
        }
    }
    set.sort_unstable();
    IndepSet(set)
}

/// Exact optimum value over subsets of a bitset, memoised per weight vector.
struct MwisSolver<'a, S: Scalar> {
    nbr: Vec<Bits>,
    w: &'a [S],
    memo: HashMap<Bits, S>,
}

impl<'a, S: Scalar> MwisSolver<'a, S> {
    fn deg(&self, v: usize, p: Bits) -> u32 {
        (self.nbr[v] & p).count_ones()
    }

    fn value(&mut self, p: Bits) -> S {
        if p == 0 {
            return S::zero();
        }
        if let Some(v) = self.memo.get(&p) {
            return v.clone();
        }
        let result = self.value_uncached(p);
        self.memo.insert(p, result.clone());
        result
    }

    fn value_uncached(&mut self, mut p: Bits) -> S {
        let mut acc = S::zero();
        // Isolated vertices are always taken; a leaf at least as heavy as its
        // neighbour can always replace that neighbour.
        loop {
            let mut changed = false;
            let mut scan = p;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                if p & (1 << v) == 0 {
                    continue;
                }
                match self.deg(v, p) {
                    0 => {
                        acc = acc + self.w[v].clone();
                        p &= !(1 << v);
                        changed = true;
                    }
                    1 => {
                        let u = (self.nbr[v] & p).trailing_zeros() as usize;
                        if self.w[v] >= self.w[u] {
                            acc = acc + self.w[v].clone();
                            p &= !(1 << v) & !(1 << u);
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        if p == 0 {
            return acc;
        }
        // Split into components.
        let first = p.trailing_zeros() as usize;
        let mut comp: Bits = 1 << first;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.nbr[v] & p & !comp;
            comp |= new;
            frontier |= new;
        }
        if comp != p {
            let a = self.value(comp);
            let b = self.value(p & !comp);
            return acc + a + b;
        }
        // Branch on a vertex of maximum degree (smallest id on ties).
        let mut branch = first;
        let mut best_deg = 0;
        let mut scan = p;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let d = self.deg(v, p);
            if d > best_deg {
                best_deg = d;
                branch = v;
            }
        }
        let without = self.value(p & !(1 << branch));
        let with = self.w[branch].clone() + self.value(p & !(1 << branch) & !self.nbr[branch]);
        acc + S::max_of(without, with)
    }
}

/// Exact maximum-weight independent set. Among optimal sets the one that
/// decides vertices in index order, preferring inclusion, is returned; for
/// strictly positive weights this is the lexicographically smallest.
pub fn max_weight_independent_set<S: Scalar>(g: &Graph, weights: &[S]) -> Result<(IndepSet, S)> {
    if weights.len() != g.n() {
        return Err(Error::InvalidInput(format!(
            "{} weights for {} vertices",
            weights.len(),
            g.n()
        )));
    }
    if let Some(v) = weights.iter().position(|w| *w < S::zero() || !w.to_f64().is_finite()) {
        return Err(Error::InvalidInput(format!("weight of vertex {v} must be finite and >= 0")));
    }
    let nbr = neighbor_bits(g, "max-weight independent set")?;
    let mut solver = MwisSolver {
        nbr,
        w: weights,
        memo: HashMap::new(),
    };
    let mut p = full_mask(g.n());
    let mut remaining = solver.value(p);
    let mut chosen = Vec::new();
    let mut total = S::zero();
    while p != 0 {
        let v = p.trailing_zeros() as usize;
        let rest = p & !(1 << v) & !solver.nbr[v];
        let with = weights[v].clone() + solver.value(rest);
        let slack = if S::EXACT {
            S::zero()
        } else {
            S::from_f64(1e-12 * (1.0 + remaining.to_f64().abs()))
        };
        if with.clone() + slack >= remaining {
            chosen.push(v);
            total = total + weights[v].clone();
            remaining = solver.value(rest);
            p = rest;
        } else {
            p &= !(1 << v);
        }
    }
    Ok((IndepSet(chosen), total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};
    use crate::scalar::parse_rational;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Graph {
        generate(&GeneratorSpec::Cycle(n)).unwrap()
    }

    fn sets(v: &[&[usize]]) -> Vec<IndepSet> {
        v.iter().map(|s| IndepSet(s.to_vec())).collect()
    }

    #[test]
    fn enumerate_all_examples() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(enumerate_all_independent_sets(&k2).unwrap(), sets(&[&[], &[0], &[1]]));
        let c5 = enumerate_all_independent_sets(&cycle(5)).unwrap();
        assert_eq!(c5.len(), 11);
        assert_eq!(c5.iter().filter(|s| s.len() == 2).count(), 5);
        assert_eq!(enumerate_all_independent_sets(&Graph::empty(3)).unwrap().len(), 8);
        assert_eq!(enumerate_all_independent_sets(&cycle(7)).unwrap().len(), 29);
        assert!(matches!(
            enumerate_all_independent_sets(&Graph::empty(21)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn cycle_counts_follow_lucas_numbers() {
        // |I(C_n)| = L_n with L_3 = 4, L_4 = 7, L_n = L_{n-1} + L_{n-2}
        let mut lucas = vec![2usize, 1];
        for i in 2..=15 {
            lucas.push(lucas[i - 1] + lucas[i - 2]);
        }
        for (n, &count) in lucas.iter().enumerate().skip(3) {
            assert_eq!(enumerate_all_independent_sets(&cycle(n)).unwrap().len(), count);
        }
    }

    #[test]
    fn maximal_examples() {
        let c5 = enumerate_maximal_independent_sets(&cycle(5)).unwrap();
        assert_eq!(c5, sets(&[&[0, 2], &[0, 3], &[1, 3], &[1, 4], &[2, 4]]));
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(enumerate_maximal_independent_sets(&k2).unwrap(), sets(&[&[0], &[1]]));
        assert_eq!(
            enumerate_maximal_independent_sets(&cycle(4)).unwrap(),
            sets(&[&[0, 2], &[1, 3]])
        );
        assert!(enumerate_maximal_independent_sets_budget(&cycle(12), 3).is_err());
    }

    #[test]
    fn maximal_matches_brute_force() {
        let g = generate(&GeneratorSpec::TriangleFreeProcess { n: 14, seed: 2 }).unwrap();
        let all = enumerate_all_independent_sets(&g).unwrap();
        let brute: Vec<_> = all
            .into_iter()
            .filter(|s| {
                (0..g.n()).all(|v| {
                    s.contains(v) || g.neighbors(v).iter().any(|&x| s.contains(x))
                })
            })
            .collect();
        let mut brute = brute;
        brute.sort();
        assert_eq!(enumerate_maximal_independent_sets(&g).unwrap(), brute);
    }

    #[test]
    fn mwis_examples() {
        let c5 = cycle(5);
        let (s, w) = max_weight_independent_set(&c5, &[1.0; 5]).unwrap();
        assert_eq!((s.vertices(), w), (&[0, 2][..], 2.0));
        let (s, w) = max_weight_independent_set(&c5, &[5.0, 1.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!((s.vertices(), w), (&[0, 3][..], 7.0));
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        let (s, w) = max_weight_independent_set(&k2, &[0.3, 0.9]).unwrap();
        assert_eq!((s.vertices(), w), (&[1][..], 0.9));
    }

    #[test]
    fn mwis_exact_weights() {
        let c5 = cycle(5);
        let w: Vec<_> = ["1/3", "1/2", "1/5", "2/7", "1/11"]
            .iter()
            .map(|s| parse_rational(s).unwrap())
            .collect();
        let (s, best) = max_weight_independent_set(&c5, &w).unwrap();
        let brute = enumerate_all_independent_sets(&c5)
            .unwrap()
            .into_iter()
            .map(|s| s.weight(&w))
            .max()
            .unwrap();
        assert_eq!(best, brute);
        assert_eq!(s.weight(&w), best);
    }

    #[test]
    fn mwis_rejects_bad_weights() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(max_weight_independent_set(&k2, &[1.0]).is_err());
        assert!(max_weight_independent_set(&k2, &[1.0, -0.5]).is_err());
        assert!(max_weight_independent_set(&k2, &[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn empty_graph_mwis() {
        let (s, w) = max_weight_independent_set::<f64>(&Graph::empty(0), &[]).unwrap();
        assert!(s.is_empty());
        assert_eq!(w, 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn mwis_agrees_with_brute_force(seed in 0u64..1000, n in 1usize..=12, raw in prop::collection::vec(0.0f64..10.0, 12)) {
            let g = generate(&GeneratorSpec::TriangleFreeProcess { n, seed }).unwrap();
            let w = &raw[..n];
            let (s, best) = max_weight_independent_set(&g, w).unwrap();
            prop_assert!(is_independent(&g, s.vertices()));
            let brute = enumerate_all_independent_sets(&g).unwrap()
                .iter().map(|s| s.weight(w)).fold(0.0, f64::max);
            prop_assert!((best - brute).abs() <= 1e-9);
            prop_assert!((s.weight(w) - best).abs() <= 1e-12);
        }
    }
}
