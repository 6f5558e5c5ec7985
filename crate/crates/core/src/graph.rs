//! Simple undirected graphs, strong products, and the exact combinatorial
//! solvers behind every capacity bound.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bitset::Bitset;
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("strong product would have {vertices} vertices, cap is {cap}")]
    ProductTooLarge { vertices: usize, cap: usize },
    #[error("exact clique cover needs at most {cap} vertices, graph has {vertices}")]
    GraphTooLargeForExactCover { vertices: usize, cap: usize },
}

/// Simple undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    adjacency: Vec<Bitset>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut graph = Graph::edgeless(vertex_count);
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::VertexOutOfRange(u, v, vertex_count));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            graph.add_edge(u, v);
        }
        Ok(graph)
    }

    pub fn edgeless(vertex_count: usize) -> Self {
        assert!(vertex_count > 0, "a graph needs at least one vertex");
        Graph {
            vertex_count,
            adjacency: vec![Bitset::new(vertex_count); vertex_count],
        }
    }

    pub fn complete(vertex_count: usize) -> Self {
        let mut graph = Graph::edgeless(vertex_count);
        for u in 0..vertex_count {
            for v in u + 1..vertex_count {
                graph.add_edge(u, v);
            }
        }
        graph
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`, for `n >= 3`.
    pub fn cycle(vertex_count: usize) -> Self {
        assert!(vertex_count >= 3);
        let mut graph = Graph::edgeless(vertex_count);
        for u in 0..vertex_count {
            graph.add_edge(u, (u + 1) % vertex_count);
        }
        graph
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Bitset::count).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count)
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges().into_iter().collect()
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count;
        let mut out = Graph::edgeless(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    out.add_edge(u, v);
                }
            }
        }
        out
    }
}

pub fn is_complete(graph: &Graph) -> bool {
    let n = graph.vertex_count();
    graph.edge_count() == n * (n - 1) / 2
}

/// Strong product with vertex `(g, h)` at index `g * |V(H)| + h`.
pub fn strong_product(g: &Graph, h: &Graph, limits: &Limits) -> Result<Graph, GraphError> {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let vertices = ng
        .checked_mul(nh)
        .filter(|&v| v <= limits.product_cap)
        .ok_or(GraphError::ProductTooLarge {
            vertices: ng.saturating_mul(nh),
            cap: limits.product_cap,
        })?;
    let closed = |graph: &Graph, v: usize| -> Vec<usize> {
        std::iter::once(v).chain(graph.neighbors(v)).collect()
    };
    let mut out = Graph::edgeless(vertices);
    for a in 0..ng {
        let near_a = closed(g, a);
        for b in 0..nh {
            let near_b = closed(h, b);
            let from = a * nh + b;
            for &a2 in &near_a {
                for &b2 in &near_b {
                    let to = a2 * nh + b2;
                    if to > from {
                        out.add_edge(from, to);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `G ⊠ G ⊠ ... ⊠ G` (`n` factors, left-associated).
pub fn strong_power(g: &Graph, n: usize, limits: &Limits) -> Result<Graph, GraphError> {
    assert!(n >= 1, "strong power exponent must be at least 1");
    let mut out = g.clone();
    for _ in 1..n {
        out = strong_product(&out, g, limits)?;
    }
    Ok(out)
}

/// A maximum independent set, found by branch and bound.
///
/// Vertices are ranked by degree (descending, index tiebreak). Each node of
/// the search partitions its candidate set greedily into cliques of `graph`;
/// an independent set meets every clique at most once, so the number of
/// cliques bounds what the candidates can still add. The returned set is
/// sorted and depends only on the graph.
pub fn maximum_independent_set(graph: &Graph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    // adjacency and non-adjacency relabelled by rank
    let mut adjacent = vec![Bitset::new(n); n];
    let mut compatible = vec![Bitset::new(n); n];
    for (i, &v) in order.iter().enumerate() {
        for (j, &w) in order.iter().enumerate() {
            if i == j {
                continue;
            }
            if graph.has_edge(v, w) {
                adjacent[i].insert(j);
            } else {
                compatible[i].insert(j);
            }
        }
    }
    let mut search = IndependentSetSearch {
        adjacent: &adjacent,
        compatible: &compatible,
        current: Vec::new(),
        best: Vec::new(),
    };
    search.expand(Bitset::full(n));
    let mut best: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    best.sort_unstable();
    best
}

pub fn independence_number(graph: &Graph) -> usize {
    maximum_independent_set(graph).len()
}

struct IndependentSetSearch<'a> {
    adjacent: &'a [Bitset],
    compatible: &'a [Bitset],
    current: Vec<usize>,
    best: Vec<usize>,
}

impl IndependentSetSearch<'_> {
    fn expand(&mut self, mut candidates: Bitset) {
        let (vertices, bounds) = self.clique_partition(&candidates);
        for (&v, &bound) in vertices.iter().zip(&bounds).rev() {
            if self.current.len() + bound <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = candidates.intersection(&self.compatible[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }

    /// Greedy sequential partition of `candidates` into cliques. Returns the
    /// vertices in class order with, for each, the number of classes up to
    /// and including its own.
    fn clique_partition(&self, candidates: &Bitset) -> (Vec<usize>, Vec<usize>) {
        let mut remaining = candidates.clone();
        let mut vertices = Vec::with_capacity(candidates.count());
        let mut bounds = Vec::with_capacity(vertices.capacity());
        let mut class = 0;
        while !remaining.is_empty() {
            class += 1;
            let mut open = remaining.clone();
            while let Some(v) = open.first() {
                remaining.remove(v);
                open.remove(v);
                open.intersect_with(&self.adjacent[v]);
                vertices.push(v);
                bounds.push(class);
            }
        }
        (vertices, bounds)
    }
}

/// Minimum number of cliques covering all vertices, i.e. the chromatic
/// number of the complement, by exact DSATUR branch and bound.
pub fn clique_cover_number(graph: &Graph, limits: &Limits) -> Result<usize, GraphError> {
    let n = graph.vertex_count();
    if n > limits.clique_cover_cap.min(64) {
        return Err(GraphError::GraphTooLargeForExactCover {
            vertices: n,
            cap: limits.clique_cover_cap.min(64),
        });
    }
    Ok(chromatic_number(&graph.complement()))
}

pub fn chromatic_number(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    assert!(n <= 64);
    let adjacency: Vec<u64> = (0..n)
        .map(|v| graph.neighbors(v).fold(0u64, |acc, w| acc | 1 << w))
        .collect();
    let mut colors = vec![usize::MAX; n];
    let mut coloring = Coloring {
        adjacency: &adjacency,
        best: n,
    };
    // a greedy clique gives a lower bound that often ends the search early
    let lower = greedy_clique(&adjacency);
    coloring.search(&mut colors, 0, 0, lower);
    coloring.best
}

fn greedy_clique(adjacency: &[u64]) -> usize {
    let n = adjacency.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adjacency[v].count_ones()), v));
    let mut clique = 0u64;
    for &v in &order {
        if clique & !adjacency[v] == 0 {
            clique |= 1 << v;
        }
    }
    clique.count_ones() as usize
}

struct Coloring<'a> {
    adjacency: &'a [u64],
    best: usize,
}

impl Coloring<'_> {
    fn search(&mut self, colors: &mut [usize], colored: usize, used: usize, lower: usize) {
        if self.best <= lower {
            return;
        }
        let n = colors.len();
        if colored == n {
            self.best = self.best.min(used);
            return;
        }
        // most saturated uncolored vertex, ties by degree then index
        let mut pick = usize::MAX;
        let mut pick_key = (0, 0);
        for v in 0..n {
            if colors[v] != usize::MAX {
                continue;
            }
            let mut seen = 0u64;
            let mut degree = 0;
            let mut neighbors = self.adjacency[v];
            while neighbors != 0 {
                let w = neighbors.trailing_zeros() as usize;
                neighbors &= neighbors - 1;
                if colors[w] != usize::MAX {
                    seen |= 1 << colors[w];
                } else {
                    degree += 1;
                }
            }
            let key = (seen.count_ones() as usize, degree);
            if pick == usize::MAX || key > pick_key {
                pick = v;
                pick_key = key;
            }
        }
        let v = pick;
        let mut blocked = 0u64;
        let mut neighbors = self.adjacency[v];
        while neighbors != 0 {
            let w = neighbors.trailing_zeros() as usize;
            neighbors &= neighbors - 1;
            if colors[w] != usize::MAX {
                blocked |= 1 << colors[w];
            }
        }
        for c in 0..used {
            if blocked >> c & 1 == 0 {
                colors[v] = c;
                self.search(colors, colored + 1, used, lower);
                colors[v] = usize::MAX;
                if self.best <= lower {
                    return;
                }
            }
        }
        if used + 1 < self.best {
            colors[v] = used;
            self.search(colors, colored + 1, used + 1, lower);
            colors[v] = usize::MAX;
        }
    }
}
