//! Bipartite graphs between equations (left) and variables (right).

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::structure::{Structure, StructureBuilder};

const INF: usize = usize::MAX;

/// Hopcroft-Karp on a left-indexed adjacency list. Returns the left→right and
/// right→left mates. Vertices and neighbors are scanned in index order, so the
/// result is deterministic.
pub fn hopcroft_karp(
    adj: &[Vec<usize>],
    n_right: usize,
) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let n_left = adj.len();
    let mut left: Vec<Option<usize>> = vec![None; n_left];
    let mut right: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![INF; n_left];
    let mut next = vec![0usize; n_left];
    let mut queue = VecDeque::new();
    let mut stack = Vec::new();

    // Greedy warm start.
    for u in 0..n_left {
        if let Some(&v) = adj[u].iter().find(|&&v| right[v].is_none()) {
            left[u] = Some(v);
            right[v] = Some(u);
        }
    }

    loop {
        queue.clear();
        for u in 0..n_left {
            if left[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match right[v] {
                    None => found = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }

        next.fill(0);
        let mut augmented = false;
        for s in 0..n_left {
            if left[s].is_some() {
                continue;
            }
            stack.clear();
            stack.push(s);
            while let Some(&u) = stack.last() {
                if next[u] < adj[u].len() {
                    let v = adj[u][next[u]];
                    match right[v] {
                        None => {
                            for &x in &stack {
                                let y = adj[x][next[x]];
                                left[x] = Some(y);
                                right[y] = Some(x);
                            }
                            augmented = true;
                            break;
                        }
                        Some(w) if dist[w] != INF && dist[w] == dist[u] + 1 => stack.push(w),
                        Some(_) => next[u] += 1,
                    }
                } else {
                    dist[u] = INF;
                    stack.pop();
                    if let Some(&p) = stack.last() {
                        next[p] += 1;
                    }
                }
            }
        }
        if !augmented {
            break;
        }
    }
    (left, right)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: Vec<String>,
    right: Vec<String>,
    /// Sorted right neighbors of each left vertex.
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds a graph from index pairs; duplicate edges collapse.
    pub fn new<I>(left: Vec<String>, right: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); left.len()];
        for (u, v) in edges {
            if u >= left.len() || v >= right.len() {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) references an unknown vertex"
                )));
            }
            adj[u].push(v);
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        Ok(Self { left, right, adj })
    }

    /// Equations on the left, variables on the right, one edge per
    /// appearance.
    pub fn from_structure(s: &Structure) -> Self {
        Self {
            left: s.equation_names().to_vec(),
            right: s.variable_names().to_vec(),
            adj: s.incidence().to_vec(),
        }
    }

    /// Reads the graph back as a structure. Fails when some vertex has no
    /// edge, since such a vertex has no counterpart in a structure.
    pub fn to_structure(&self) -> Result<Structure> {
        let mut covered = vec![false; self.right.len()];
        let mut b = StructureBuilder::new();
        for (u, row) in self.adj.iter().enumerate() {
            let vars: Vec<&str> = row
                .iter()
                .map(|&v| {
                    covered[v] = true;
                    self.right[v].as_str()
                })
                .collect();
            b.equation(&self.left[u], &vars)?;
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidArgument(format!(
                "variable `{}` has no incident edge",
                self.right[v]
            )));
        }
        Ok(b.build())
    }

    pub fn left_count(&self) -> usize {
        self.left.len()
    }

    pub fn right_count(&self) -> usize {
        self.right.len()
    }

    pub fn left_names(&self) -> &[String] {
        &self.left
    }

    pub fn right_names(&self) -> &[String] {
        &self.right
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |&v| (u, v)))
    }

    /// Same vertices; an edge exactly where `self` has none.
    pub fn complement(&self) -> Self {
        let n = self.right.len();
        let adj = self
            .adj
            .iter()
            .map(|row| {
                let mut out = Vec::with_capacity(n - row.len());
                let mut it = row.iter().peekable();
                for v in 0..n {
                    if it.peek() == Some(&&v) {
                        it.next();
                    } else {
                        out.push(v);
                    }
                }
                out
            })
            .collect();
        Self {
            left: self.left.clone(),
            right: self.right.clone(),
            adj,
        }
    }

    pub fn maximum_matching(&self) -> Matching {
        let (left, right) = hopcroft_karp(&self.adj, self.right.len());
        Matching { left, right }
    }

    /// Whether `m` can be grown along an alternating path. A matching is
    /// maximum exactly when this is false.
    pub fn has_augmenting_path(&self, m: &Matching) -> bool {
        let mut seen = vec![false; self.right.len()];
        let mut stack: Vec<usize> = (0..self.left.len())
            .filter(|&u| m.left[u].is_none())
            .collect();
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                match m.right[v] {
                    None => return true,
                    Some(w) => stack.push(w),
                }
            }
        }
        false
    }

    /// Searches for a biclique `K_{a,b}`: `a` left vertices all adjacent to
    /// the same `b` right vertices. Exhaustive over left subsets of size `a`
    /// in lexicographic order, pruning as soon as the common neighborhood
    /// drops below `b`.
    pub fn find_biclique(
        &self,
        a: usize,
        b: usize,
        budget: &Budget,
    ) -> Result<Option<BicliqueWitness>> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidArgument(
                "biclique sides must be positive".into(),
            ));
        }
        budget.check_size(self.left.len())?;
        if a > self.left.len() || b > self.right.len() {
            return Ok(None);
        }

        let n_right = self.right.len();
        let neighborhoods: Vec<FixedBitSet> = self
            .adj
            .iter()
            .map(|row| {
                let mut s = FixedBitSet::with_capacity(n_right);
                s.extend(row.iter().copied());
                s
            })
            .collect();
        let mut common = vec![FixedBitSet::with_capacity(n_right); a + 1];
        common[0].insert_range(..);

        let mut search = BicliqueSearch {
            neighborhoods: &neighborhoods,
            a,
            b,
            chosen: Vec::with_capacity(a),
            common: &mut common,
            ticker: budget.ticker(),
        };
        if !search.extend(0)? {
            return Ok(None);
        }
        let left_idx = search.chosen.clone();
        let right_idx: Vec<usize> = common[a].ones().take(b).collect();
        let witness = BicliqueWitness {
            left: left_idx.iter().map(|&u| self.left[u].clone()).collect(),
            right: right_idx.iter().map(|&v| self.right[v].clone()).collect(),
            left_indices: left_idx,
            right_indices: right_idx,
        };
        assert!(
            witness.verify(self),
            "biclique search returned a non-biclique"
        );
        Ok(Some(witness))
    }
}

struct BicliqueSearch<'a> {
    neighborhoods: &'a [FixedBitSet],
    a: usize,
    b: usize,
    chosen: Vec<usize>,
    common: &'a mut [FixedBitSet],
    ticker: crate::budget::Ticker<'a>,
}

impl BicliqueSearch<'_> {
    fn extend(&mut self, start: usize) -> Result<bool> {
        let depth = self.chosen.len();
        if depth == self.a {
            return Ok(true);
        }
        let n = self.neighborhoods.len();
        let last = n - (self.a - depth);
        for u in start..=last {
            self.ticker.tick()?;
            let (done, rest) = self.common.split_at_mut(depth + 1);
            let next = &mut rest[0];
            next.clone_from(&done[depth]);
            next.intersect_with(&self.neighborhoods[u]);
            if next.count_ones(..) < self.b {
                continue;
            }
            self.chosen.push(u);
            if self.extend(u + 1)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// A set of edges of some host graph with no shared endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.left.iter().filter(|m| m.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mate_of_left(&self, u: usize) -> Option<usize> {
        self.left[u]
    }

    pub fn mate_of_right(&self, v: usize) -> Option<usize> {
        self.right[v]
    }

    /// Matched `(left, right)` pairs in left index order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.left
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.map(|v| (u, v)))
            .collect()
    }

    /// Every left vertex is matched.
    pub fn saturates_left(&self) -> bool {
        self.left.iter().all(Option::is_some)
    }

    /// Checks the matching property and that every edge is in `g`.
    pub fn is_valid_in(&self, g: &BipartiteGraph) -> bool {
        if self.left.len() != g.left_count() || self.right.len() != g.right_count() {
            return false;
        }
        let mut used = vec![false; g.right_count()];
        for (u, v) in self.edges() {
            if used[v] || !g.has_edge(u, v) || self.right[v] != Some(u) {
                return false;
            }
            used[v] = true;
        }
        self.right
            .iter()
            .enumerate()
            .all(|(v, m)| m.is_none_or(|u| self.left[u] == Some(v)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicliqueWitness {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub left_indices: Vec<usize>,
    pub right_indices: Vec<usize>,
}

impl BicliqueWitness {
    /// Edge-by-edge check against the host graph.
    pub fn verify(&self, g: &BipartiteGraph) -> bool {
        self.left_indices
            .iter()
            .all(|&u| self.right_indices.iter().all(|&v| g.has_edge(u, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{coupled, triangle};
    use proptest::prelude::*;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    /// Largest matching by trying every subset of edges.
    fn brute_force_matching_size(g: &BipartiteGraph) -> usize {
        let edges: Vec<_> = g.edges().collect();
        fn go(edges: &[(usize, usize)], i: usize, ul: &mut Vec<bool>, ur: &mut Vec<bool>) -> usize {
            if i == edges.len() {
                return 0;
            }
            let skip = go(edges, i + 1, ul, ur);
            let (u, v) = edges[i];
            if ul[u] || ur[v] {
                return skip;
            }
            ul[u] = true;
            ur[v] = true;
            let take = 1 + go(edges, i + 1, ul, ur);
            ul[u] = false;
            ur[v] = false;
            skip.max(take)
        }
        go(
            &edges,
            0,
            &mut vec![false; g.left_count()],
            &mut vec![false; g.right_count()],
        )
    }

    fn brute_force_biclique(g: &BipartiteGraph, a: usize, b: usize) -> bool {
        let (n, m) = (g.left_count(), g.right_count());
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == a)
            .any(|ls| {
                (0u32..1 << m)
                    .filter(|s| s.count_ones() as usize == b)
                    .any(|rs| {
                        (0..n).filter(|u| ls >> u & 1 == 1).all(|u| {
                            (0..m)
                                .filter(|v| rs >> v & 1 == 1)
                                .all(|v| g.has_edge(u, v))
                        })
                    })
            })
    }

    fn arb_graph(max_left: usize, max_right: usize) -> impl Strategy<Value = BipartiteGraph> {
        (1..=max_left, 1..=max_right).prop_flat_map(|(n, m)| {
            proptest::collection::vec(proptest::bool::weighted(0.35), n * m).prop_map(move |bits| {
                let edges = (0..n * m).filter(|&k| bits[k]).map(|k| (k / m, k % m));
                BipartiteGraph::new(names("f", n), names("x", m), edges).unwrap()
            })
        })
    }

    #[test]
    fn coupled_graph() {
        let g = BipartiteGraph::from_structure(&coupled());
        assert_eq!(g.edge_count(), 16);
        let m = g.maximum_matching();
        assert_eq!(m.len(), 7);
        assert!(m.is_valid_in(&g));
        assert_eq!(m.edges(), (0..7).map(|i| (i, i)).collect::<Vec<_>>());
    }

    #[test]
    fn triangle_graphs() {
        let g = BipartiteGraph::from_structure(&triangle());
        assert_eq!(g.edge_count(), 10);
        let m = g.maximum_matching();
        assert_eq!(m.len(), 4);
        assert!(m.is_valid_in(&g));
        assert!(!g.has_augmenting_path(&m));

        let c = g.complement();
        let mut edges: Vec<(String, String)> = c
            .edges()
            .map(|(u, v)| (c.left_names()[u].clone(), c.right_names()[v].clone()))
            .collect();
        edges.sort();
        let expected: Vec<(String, String)> = [
            ("f1", "x2"),
            ("f1", "x4"),
            ("f2", "x3"),
            ("f2", "x4"),
            ("f3", "x1"),
            ("f3", "x4"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        assert_eq!(edges, expected);
    }

    #[test]
    fn single_edge() {
        let s = Structure::from_equations([("f1", ["x1"])]).unwrap();
        let g = BipartiteGraph::from_structure(&s);
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 0)]);
    }

    #[test]
    fn edgeless_and_complete_graphs() {
        let empty = BipartiteGraph::new(names("f", 3), names("x", 2), []).unwrap();
        assert!(empty.maximum_matching().is_empty());
        assert_eq!(empty.find_biclique(1, 1, &Budget::default()).unwrap(), None);

        let full_edges = (0..3).flat_map(|u| (0..2).map(move |v| (u, v)));
        let full = BipartiteGraph::new(names("f", 3), names("x", 2), full_edges).unwrap();
        assert_eq!(full.complement().edge_count(), 0);
        assert_eq!(full.complement(), empty);
    }

    #[test]
    fn new_rejects_unknown_vertices() {
        assert!(BipartiteGraph::new(names("f", 1), names("x", 1), [(0, 1)]).is_err());
    }

    #[test]
    fn bicliques_in_fixture_complements() {
        let g = BipartiteGraph::from_structure(&coupled());
        let w = g.find_biclique(2, 2, &Budget::default()).unwrap().unwrap();
        assert_eq!(w.left, ["f4", "f5"]);
        // f4 and f5 share x1, x3, x4, x5; the first two in index order.
        assert!(w.verify(&g));
        let w = g.find_biclique(2, 4, &Budget::default()).unwrap().unwrap();
        assert_eq!(w.left, ["f4", "f5"]);
        assert_eq!(w.right, ["x1", "x3", "x4", "x5"]);

        let c = BipartiteGraph::from_structure(&triangle()).complement();
        let w = c.find_biclique(3, 1, &Budget::default()).unwrap().unwrap();
        assert_eq!(w.left, ["f1", "f2", "f3"]);
        assert_eq!(w.right, ["x4"]);
    }

    #[test]
    fn biclique_guard() {
        let g = BipartiteGraph::new(names("f", 25), names("x", 1), []).unwrap();
        assert!(matches!(
            g.find_biclique(1, 1, &Budget::default()),
            Err(Error::GuardExceeded {
                size: 25,
                limit: 24
            })
        ));
        assert!(g
            .find_biclique(1, 1, &Budget::unlimited())
            .unwrap()
            .is_none());
        assert!(g.find_biclique(0, 1, &Budget::default()).is_err());
    }

    #[test]
    fn structure_round_trip_rejects_isolated() {
        let g = BipartiteGraph::new(names("f", 1), names("x", 2), [(0, 0)]).unwrap();
        assert!(g.to_structure().is_err());
        let g = BipartiteGraph::new(names("f", 2), names("x", 1), [(0, 0)]).unwrap();
        assert!(g.to_structure().is_err());
    }

    #[test]
    fn long_augmenting_paths() {
        // Greedy warm start matches f_i to x_i, leaving one long path.
        let n = 50_000;
        let mut edges = Vec::new();
        for i in 0..n {
            edges.push((i, i));
            if i + 1 < n {
                edges.push((i + 1, i));
            }
        }
        let mut left = names("f", n);
        left.push("g".into());
        edges.push((n, n - 1));
        edges.push((0, n));
        let g = BipartiteGraph::new(left, names("x", n + 1), edges).unwrap();
        let m = g.maximum_matching();
        assert_eq!(m.len(), n + 1);
        assert!(m.is_valid_in(&g));
    }

    proptest! {
        #[test]
        fn matching_is_maximum(g in arb_graph(8, 8)) {
            let m = g.maximum_matching();
            prop_assert!(m.is_valid_in(&g));
            prop_assert!(!g.has_augmenting_path(&m));
            prop_assert_eq!(m.len(), brute_force_matching_size(&g));
        }

        #[test]
        fn complement_is_involution(g in arb_graph(10, 10)) {
            let c = g.complement();
            prop_assert_eq!(g.edge_count() + c.edge_count(), g.left_count() * g.right_count());
            prop_assert_eq!(c.complement(), g);
        }

        #[test]
        fn biclique_search_matches_brute_force(g in arb_graph(7, 7), a in 1usize..4, b in 1usize..4) {
            let found = g.find_biclique(a, b, &Budget::default()).unwrap();
            if let Some(w) = &found {
                prop_assert!(w.verify(&g));
                prop_assert_eq!(w.left_indices.len(), a);
                prop_assert_eq!(w.right_indices.len(), b);
            }
            prop_assert_eq!(found.is_some(), brute_force_biclique(&g, a, b));
        }

        #[test]
        fn structure_round_trip(g in arb_graph(8, 8)) {
            let covered_left = (0..g.left_count()).all(|u| !g.neighbors(u).is_empty());
            let covered_right = (0..g.right_count()).all(|v| g.edges().any(|(_, w)| w == v));
            if covered_left && covered_right {
                let s = g.to_structure().unwrap();
                let back = BipartiteGraph::from_structure(&s);
                let named = |h: &BipartiteGraph| {
                    let mut e: Vec<(String, String)> = h
                        .edges()
                        .map(|(u, v)| (h.left_names()[u].clone(), h.right_names()[v].clone()))
                        .collect();
                    e.sort();
                    e
                };
                prop_assert_eq!(named(&back), named(&g));
                prop_assert_eq!(back.to_structure().unwrap(), s);
            }
        }
    }
}
