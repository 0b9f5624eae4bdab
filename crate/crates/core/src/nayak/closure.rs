use std::cmp::Reverse;
use std::collections::BinaryHeap;

use fixedbitset::FixedBitSet;

use super::DependencyGraph;

/// Irreflexive transitive closure of a dependency graph, stored as its
/// strongly-coupled clusters plus reachability between clusters.
///
/// `(a, b)` belongs to the closure iff `a != b` and `b` is reachable from
/// `a`. Clusters are numbered in a canonical topological order: among the
/// clusters whose predecessors are all placed, the one holding the smallest
/// variable index comes next. The numbering depends only on the closure, so
/// two orderings are equal iff their pair sets are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalOrdering {
    names: Vec<String>,
    cluster_of: Vec<usize>,
    clusters: Vec<Vec<usize>>,
    /// Clusters strictly reachable from each cluster; all ids are larger.
    reach: Vec<FixedBitSet>,
}

impl CausalOrdering {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    /// Clusters in causal order, members sorted by index.
    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    pub fn cluster_names(&self) -> Vec<Vec<&str>> {
        self.clusters
            .iter()
            .map(|c| c.iter().map(|&v| self.names[v].as_str()).collect())
            .collect()
    }

    /// Whether cluster `d` is reachable from a different cluster `c`.
    pub fn cluster_reaches(&self, c: usize, d: usize) -> bool {
        self.reach[c].contains(d)
    }

    /// Clusters reachable from `c`, in causal order.
    pub fn reachable_clusters(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.reach[c].ones()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let (ca, cb) = (self.cluster_of[a], self.cluster_of[b]);
        ca == cb || self.reach[ca].contains(cb)
    }

    pub fn contains_named(&self, a: &str, b: &str) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(a), Some(b)) => self.contains(a, b),
            _ => false,
        }
    }

    pub fn strongly_coupled(&self, a: usize, b: usize) -> bool {
        a != b && self.cluster_of[a] == self.cluster_of[b]
    }

    /// Number of closure pairs, computed without listing them.
    pub fn edge_count(&self) -> usize {
        self.clusters
            .iter()
            .enumerate()
            .map(|(c, members)| {
                let size = members.len();
                let downstream: usize = self.reach[c].ones().map(|d| self.clusters[d].len()).sum();
                size * (size - 1) + size * downstream
            })
            .sum()
    }

    /// Sorted targets of `a` in the closure.
    pub fn successors(&self, a: usize) -> Vec<usize> {
        let c = self.cluster_of[a];
        let mut out: Vec<usize> = self.clusters[c]
            .iter()
            .copied()
            .filter(|&v| v != a)
            .chain(
                self.reach[c]
                    .ones()
                    .flat_map(|d| self.clusters[d].iter().copied()),
            )
            .collect();
        out.sort_unstable();
        out
    }

    /// All closure pairs in `(source, target)` index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.names.len()).flat_map(move |a| self.successors(a).into_iter().map(move |b| (a, b)))
    }

    /// Transitive reduction of the cluster graph: `(c, d)` where `d` is
    /// reachable from `c` through no third cluster.
    pub fn covering_edges(&self) -> Vec<(usize, usize)> {
        let k = self.clusters.len();
        let mut out = Vec::new();
        let mut implied = FixedBitSet::with_capacity(k);
        for c in 0..k {
            implied.clear();
            // Ascending ids are topological, so every cluster that could
            // imply `d` is visited before `d`.
            for d in self.reach[c].ones() {
                if !implied.contains(d) {
                    out.push((c, d));
                    implied.union_with(&self.reach[d]);
                }
            }
        }
        out
    }

    /// Assembles an ordering from a partition and a cluster-level edge
    /// relation, numbering clusters canonically. `closed` tells whether
    /// `edges` is already transitively closed.
    fn assemble(
        names: Vec<String>,
        groups: Vec<Vec<usize>>,
        edges: Vec<Vec<usize>>,
        closed: bool,
    ) -> Self {
        let k = groups.len();
        let mut indegree = vec![0usize; k];
        for row in &edges {
            for &d in row {
                indegree[d] += 1;
            }
        }
        let key = |g: usize| groups[g][0];
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..k)
            .filter(|&g| indegree[g] == 0)
            .map(|g| Reverse((key(g), g)))
            .collect();
        let mut order = Vec::with_capacity(k);
        while let Some(Reverse((_, g))) = heap.pop() {
            order.push(g);
            for &d in &edges[g] {
                indegree[d] -= 1;
                if indegree[d] == 0 {
                    heap.push(Reverse((key(d), d)));
                }
            }
        }
        assert_eq!(order.len(), k, "cluster graph must be acyclic");

        let mut canon = vec![0usize; k];
        for (pos, &g) in order.iter().enumerate() {
            canon[g] = pos;
        }
        let mut cluster_of = vec![0usize; names.len()];
        let mut clusters = vec![Vec::new(); k];
        for (g, members) in groups.into_iter().enumerate() {
            for &v in &members {
                cluster_of[v] = canon[g];
            }
            clusters[canon[g]] = members;
        }

        let mut reach = vec![FixedBitSet::new(); k];
        for pos in (0..k).rev() {
            let g = order[pos];
            let mut bits = FixedBitSet::with_capacity(k);
            for &d in &edges[g] {
                let cd = canon[d];
                bits.insert(cd);
                if !closed {
                    bits.union_with(&reach[cd]);
                }
            }
            reach[pos] = bits;
        }

        CausalOrdering {
            names,
            cluster_of,
            clusters,
            reach,
        }
    }
}

/// Strongly connected components in the order Tarjan's algorithm emits them
/// (every edge between components points to an earlier one). Iterative, so
/// long dependency chains do not exhaust the call stack.
fn tarjan(g: &DependencyGraph) -> (Vec<usize>, Vec<Vec<usize>>) {
    const UNSET: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp_of = vec![UNSET; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut stack = Vec::new();
    let mut calls: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        calls.push((root, 0));

        while let Some(top) = calls.last_mut() {
            let (v, next) = *top;
            let succ = g.successors(v);
            if next < succ.len() {
                top.1 += 1;
                let w = succ[next];
                if index[w] == UNSET {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if low[v] == index[v] {
                let id = comps.len();
                let mut members = Vec::new();
                loop {
                    let w = stack.pop().expect("component root is on the stack");
                    on_stack[w] = false;
                    comp_of[w] = id;
                    members.push(w);
                    if w == v {
                        break;
                    }
                }
                members.sort_unstable();
                comps.push(members);
            }
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
        }
    }
    (comp_of, comps)
}

/// Closure by depth-first search: Tarjan's pass yields the clusters, then
/// reachability is accumulated over the acyclic cluster graph from the sinks
/// up. Runs in `O(|V| + |E|)` plus `O(k·|E|/64)` word operations for `k`
/// clusters.
pub fn transitive_closure(g: &DependencyGraph) -> CausalOrdering {
    let (comp_of, comps) = tarjan(g);
    let mut edges = vec![Vec::new(); comps.len()];
    for (a, b) in g.edges() {
        let (ca, cb) = (comp_of[a], comp_of[b]);
        if ca != cb {
            edges[ca].push(cb);
        }
    }
    for row in &mut edges {
        row.sort_unstable();
        row.dedup();
    }
    CausalOrdering::assemble(g.names().to_vec(), comps, edges, false)
}

/// Reference closure by Warshall's `O(|V|³)` dynamic program over a dense
/// reachability matrix, with clusters read off mutual reachability. Kept
/// separate from [`transitive_closure`] so each can check the other.
pub fn closure_oracle(g: &DependencyGraph) -> CausalOrdering {
    let n = g.vertex_count();
    let mut m: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut row = FixedBitSet::with_capacity(n);
            row.extend(g.successors(v).iter().copied());
            row
        })
        .collect();
    let mut via = FixedBitSet::with_capacity(n);
    for k in 0..n {
        via.clone_from(&m[k]);
        for row in m.iter_mut() {
            if row.contains(k) {
                row.union_with(&via);
            }
        }
    }

    const UNSET: usize = usize::MAX;
    let mut group_of = vec![UNSET; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if group_of[i] != UNSET {
            continue;
        }
        let id = groups.len();
        let mut members = vec![i];
        group_of[i] = id;
        for j in i + 1..n {
            if m[i].contains(j) && m[j].contains(i) {
                group_of[j] = id;
                members.push(j);
            }
        }
        groups.push(members);
    }

    let edges: Vec<Vec<usize>> = groups
        .iter()
        .enumerate()
        .map(|(id, members)| {
            let mut row: Vec<usize> = m[members[0]]
                .ones()
                .map(|j| group_of[j])
                .filter(|&d| d != id)
                .collect();
            row.sort_unstable();
            row.dedup();
            row
        })
        .collect();
    CausalOrdering::assemble(g.names().to_vec(), groups, edges, true)
}
