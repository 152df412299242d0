//! Two-coloured graphs and the analytics the bounds are stated in terms of:
//! girth, paths of length three, degree pruning, and contraction onto the
//! first colour class.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// An edge of a [`BipartiteGraph`], always stored as (class-V index, class-W index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub v: usize,
    pub w: usize,
}

impl Edge {
    pub const fn new(v: usize, w: usize) -> Self {
        Edge { v, w }
    }
}

impl From<(usize, usize)> for Edge {
    fn from((v, w): (usize, usize)) -> Self {
        Edge { v, w }
    }
}

/// A vertex of a [`BipartiteGraph`], tagged with its colour class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    V(usize),
    W(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({v}, {w}) out of range for a graph with v = {nv}, w = {nw}")]
    OutOfRange { v: usize, w: usize, nv: usize, nw: usize },
    #[error("duplicate edge ({v}, {w})")]
    DuplicateEdge { v: usize, w: usize },
    #[error("edge {{{a}, {b}}} out of range for a graph on {n} vertices")]
    SimpleOutOfRange { a: usize, b: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{a}, {b}}}")]
    SimpleDuplicate { a: usize, b: usize },
}

/// A bipartite graph with colour classes `V = 0..v` and `W = 0..w`.
///
/// Immutable once built. Edges are kept sorted by `(v, w)` and the adjacency
/// lists are sorted, so iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    v: usize,
    w: usize,
    edges: Vec<Edge>,
    v_adj: Vec<Vec<usize>>,
    w_adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds a graph from `(i, j)` pairs with `i` in class V and `j` in class W.
    ///
    /// Rejects out-of-range indices and repeated pairs, naming the offending pair.
    pub fn from_edges<I, E>(v: usize, w: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut seen = BTreeSet::new();
        for e in pairs {
            let e = e.into();
            if e.v >= v || e.w >= w {
                return Err(GraphError::OutOfRange { v: e.v, w: e.w, nv: v, nw: w });
            }
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge { v: e.v, w: e.w });
            }
        }
        Ok(Self::from_sorted_unique(v, w, seen.into_iter().collect()))
    }

    /// The graph with the given class sizes and no edges.
    pub fn empty(v: usize, w: usize) -> Self {
        Self::from_sorted_unique(v, w, Vec::new())
    }

    fn from_sorted_unique(v: usize, w: usize, edges: Vec<Edge>) -> Self {
        let mut v_adj = vec![Vec::new(); v];
        let mut w_adj = vec![Vec::new(); w];
        for e in &edges {
            v_adj[e.v].push(e.w);
            w_adj[e.w].push(e.v);
        }
        for list in &mut w_adj {
            list.sort_unstable();
        }
        BipartiteGraph { v, w, edges, v_adj, w_adj }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn w(&self) -> usize {
        self.w
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        self.edges.binary_search(&Edge { v, w }).is_ok()
    }

    /// Class-W neighbours of V-vertex `i`, ascending.
    pub fn v_neighbors(&self, i: usize) -> &[usize] {
        &self.v_adj[i]
    }

    /// Class-V neighbours of W-vertex `j`, ascending.
    pub fn w_neighbors(&self, j: usize) -> &[usize] {
        &self.w_adj[j]
    }

    pub fn degree(&self, x: Vertex) -> usize {
        match x {
            Vertex::V(i) => self.v_adj[i].len(),
            Vertex::W(j) => self.w_adj[j].len(),
        }
    }

    pub fn v_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.v_adj.iter().map(Vec::len)
    }

    pub fn w_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.w_adj.iter().map(Vec::len)
    }

    /// Smallest degree over both classes; `None` for the graph with no vertices.
    pub fn min_degree(&self) -> Option<usize> {
        self.v_degrees().chain(self.w_degrees()).min()
    }

    /// All class-V degrees equal and all class-W degrees equal.
    pub fn is_biregular(&self) -> bool {
        fn constant(mut it: impl Iterator<Item = usize>) -> bool {
            match it.next() {
                Some(first) => it.all(|d| d == first),
                None => true,
            }
        }
        constant(self.v_degrees()) && constant(self.w_degrees())
    }

    /// Swaps the roles of the two colour classes.
    pub fn transposed(&self) -> Self {
        let edges = self.edges.iter().map(|e| (e.w, e.v));
        Self::from_edges(self.w, self.v, edges).expect("transpose preserves validity")
    }

    /// The 0/1 reduced incidence matrix, `v` rows by `w` columns.
    pub fn incidence_rows(&self) -> Vec<Vec<u8>> {
        let mut rows = vec![vec![0u8; self.w]; self.v];
        for e in &self.edges {
            rows[e.v][e.w] = 1;
        }
        rows
    }

    /// Flattened adjacency with V-vertex `i` at `i` and W-vertex `j` at `v + j`.
    fn flat_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<Vec<usize>> = Vec::with_capacity(self.v + self.w);
        for list in &self.v_adj {
            adj.push(list.iter().map(|&j| self.v + j).collect());
        }
        for list in &self.w_adj {
            adj.push(list.clone());
        }
        adj
    }

    /// Exact girth plus 4- and 6-cycle detection.
    pub fn girth(&self) -> GirthReport {
        let adj = self.flat_adjacency();
        let girth = shortest_cycle(&adj);
        let has_c6 = match girth {
            None => false,
            Some(g) if g >= 8 => false,
            Some(6) => true,
            Some(_) => self.has_six_cycle(),
        };
        GirthReport { girth, has_c4: girth == Some(4), has_c6 }
    }

    // a - x - b - y - c - z - a with a, b, c in V and x, y, z in W, all distinct.
    fn has_six_cycle(&self) -> bool {
        for a in 0..self.v {
            for &x in &self.v_adj[a] {
                for &b in &self.w_adj[x] {
                    if b == a {
                        continue;
                    }
                    for &y in &self.v_adj[b] {
                        if y == x {
                            continue;
                        }
                        for &c in &self.w_adj[y] {
                            if c == a || c == b {
                                continue;
                            }
                            let closes = self.v_adj[c]
                                .iter()
                                .any(|&z| z != x && z != y && self.has_edge(a, z));
                            if closes {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }

    /// Number of paths on four distinct vertices, via the per-edge sum of
    /// `(d(y) - 1)(d(z) - 1)`.
    pub fn count_paths3(&self) -> u64 {
        self.edges
            .iter()
            .map(|e| {
                let dv = self.v_adj[e.v].len() as u64;
                let dw = self.w_adj[e.w].len() as u64;
                (dv - 1) * (dw - 1)
            })
            .sum()
    }

    /// Same quantity as [`count_paths3`](Self::count_paths3) by walking every
    /// vertex sequence `(x, y, z, t)`. Quartic in the degree; meant for small graphs.
    pub fn count_paths3_enumerate(&self) -> u64 {
        let adj = self.flat_adjacency();
        let mut sequences = 0u64;
        for x in 0..adj.len() {
            for &y in &adj[x] {
                for &z in &adj[y] {
                    if z == x {
                        continue;
                    }
                    for &t in &adj[z] {
                        if t != x && t != y {
                            sequences += 1;
                        }
                    }
                }
            }
        }
        // each undirected path is walked once from each end
        sequences / 2
    }

    /// Repeatedly deletes vertices of degree below `k` until none remain.
    ///
    /// Returns the residual graph, with surviving vertices renumbered in their
    /// original order, and the number of edges deleted.
    pub fn prune_min_degree(&self, k: usize) -> (BipartiteGraph, usize) {
        let n = self.v + self.w;
        let adj = self.flat_adjacency();
        let mut alive = vec![true; n];
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| degree[x] < k).collect();
        let mut removed = 0;
        while let Some(x) = queue.pop_front() {
            if !alive[x] {
                continue;
            }
            alive[x] = false;
            for &y in &adj[x] {
                if alive[y] {
                    removed += 1;
                    degree[y] -= 1;
                    if degree[y] + 1 == k {
                        queue.push_back(y);
                    }
                }
            }
        }

        let mut new_index = vec![usize::MAX; n];
        let (mut nv, mut nw) = (0, 0);
        for x in 0..n {
            if alive[x] {
                if x < self.v {
                    new_index[x] = nv;
                    nv += 1;
                } else {
                    new_index[x] = nw;
                    nw += 1;
                }
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| alive[e.v] && alive[self.v + e.w])
            .map(|e| Edge::new(new_index[e.v], new_index[self.v + e.w]))
            .collect();
        (Self::from_sorted_unique(nv, nw, edges), removed)
    }

    /// The uncoloured graph on class V joining two vertices whenever they
    /// share a class-W neighbour.
    pub fn contract(&self) -> SimpleGraph {
        let mut pairs = BTreeSet::new();
        for list in &self.w_adj {
            for (k, &a) in list.iter().enumerate() {
                for &b in &list[k + 1..] {
                    pairs.insert((a, b));
                }
            }
        }
        SimpleGraph { n: self.v, edges: pairs.into_iter().collect() }
    }

    /// Girth at least 8, every degree at least 2, and exactly one path of
    /// length 3 between every non-adjacent pair of opposite colours.
    pub fn verify_weak_gq(&self) -> bool {
        if matches!(self.girth().girth, Some(g) if g < 8) {
            return false;
        }
        if self.min_degree().is_some_and(|d| d < 2) {
            return false;
        }
        let mut reach = vec![0usize; self.w];
        for x in 0..self.v {
            reach.iter_mut().for_each(|c| *c = 0);
            for &y in &self.v_adj[x] {
                for &z in &self.w_adj[y] {
                    if z == x {
                        continue;
                    }
                    for &t in &self.v_adj[z] {
                        if t != y {
                            reach[t] += 1;
                        }
                    }
                }
            }
            for (t, &count) in reach.iter().enumerate() {
                if !self.has_edge(x, t) && count != 1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Result of [`BipartiteGraph::girth`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GirthReport {
    /// Length of a shortest cycle, `None` for a forest.
    pub girth: Option<usize>,
    pub has_c4: bool,
    pub has_c6: bool,
}

impl GirthReport {
    /// Girth at least `g`, counting forests as infinite girth.
    pub fn at_least(&self, g: usize) -> bool {
        self.girth.is_none_or(|girth| girth >= g)
    }
}

/// A simple uncoloured graph on `0..n`, edges stored as sorted `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut seen = BTreeSet::new();
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(GraphError::SimpleOutOfRange { a, b, n });
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let key = if a < b { (a, b) } else { (b, a) };
            if !seen.insert(key) {
                return Err(GraphError::SimpleDuplicate { a: key.0, b: key.1 });
            }
        }
        Ok(SimpleGraph { n, edges: seen.into_iter().collect() })
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        SimpleGraph { n, edges }
    }

    /// The complete bipartite graph on `0..a` and `a..a + b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).collect();
        SimpleGraph { n: a + b, edges }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn girth(&self) -> Option<usize> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        shortest_cycle(&adj)
    }
}

/// Exact girth by a breadth-first search from every vertex.
fn shortest_cycle(adj: &[Vec<usize>]) -> Option<usize> {
    let n = adj.len();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for source in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[source] = 0;
        parent[source] = usize::MAX;
        queue.clear();
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            // no shorter cycle through `source` can be found past this depth
            if 2 * dist[x] >= best {
                break;
            }
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}
