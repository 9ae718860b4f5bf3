//! Simple undirected graphs on at most 32 vertices, one `u32` adjacency row
//! per vertex.

use std::fmt;

use thiserror::Error;

/// Hard cap on the number of vertices; each adjacency row fits in a `u32`.
pub const MAX_ORDER: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the cap of {MAX_ORDER} vertices")]
    OrderTooLarge(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("not a bijection on 0..{0}")]
    NotAPermutation(usize),
    #[error("edge {0} is not present in the graph")]
    MissingEdge(Edge),
}

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: u8,
    v: u8,
}

impl Edge {
    /// Builds the edge `{a, b}` in canonical orientation. Fails on a loop or
    /// on an endpoint beyond the vertex cap.
    pub fn new(a: usize, b: usize) -> Result<Self, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        for x in [a, b] {
            if x >= MAX_ORDER {
                return Err(GraphError::VertexOutOfRange { vertex: x, order: MAX_ORDER });
            }
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Ok(Edge { u: u as u8, v: v as u8 })
    }

    #[inline]
    pub(crate) fn new_unchecked(a: usize, b: usize) -> Self {
        debug_assert!(a != b && a < MAX_ORDER && b < MAX_ORDER);
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Edge { u: u as u8, v: v as u8 }
    }

    #[inline]
    pub fn u(self) -> usize {
        self.u as usize
    }

    #[inline]
    pub fn v(self) -> usize {
        self.v as usize
    }

    /// Vertex mask with both endpoints set.
    #[inline]
    pub fn mask(self) -> u32 {
        (1 << self.u) | (1 << self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Simple undirected graph. Row `v` holds the neighbourhood of `v` as a bit
/// mask; rows beyond `order` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    rows: [u32; MAX_ORDER],
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self, GraphError> {
        if order > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(order));
        }
        Ok(Graph { order, rows: [0; MAX_ORDER] })
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(order)?;
        for &(a, b) in edges {
            g.insert_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(order: usize) -> Result<Self, GraphError> {
        Ok(Graph::empty(order)?.complement())
    }

    /// The cycle 0-1-..-(n-1)-0. Orders below 3 give the corresponding path.
    pub fn cycle(order: usize) -> Result<Self, GraphError> {
        let mut g = Graph::path(order)?;
        if order >= 3 {
            g.insert_edge(0, order - 1)?;
        }
        Ok(g)
    }

    pub fn path(order: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(order)?;
        for v in 1..order {
            g.insert_edge(v - 1, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Mask with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u32 {
        full_mask(self.order)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u32 {
        self.rows[v]
    }

    #[inline]
    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.order]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order && b < self.order && self.rows[a] >> b & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Adds `{a, b}`; adding an existing edge is a no-op.
    pub fn insert_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        self.rows[a] |= 1 << b;
        self.rows[b] |= 1 << a;
        Ok(())
    }

    #[inline]
    pub(crate) fn toggle_edge_unchecked(&mut self, e: Edge) {
        self.rows[e.u()] ^= 1 << e.v();
        self.rows[e.v()] ^= 1 << e.u();
    }

    /// Copy of `self` with `e` added.
    pub fn with_edge(&self, e: Edge) -> Result<Self, GraphError> {
        let mut g = *self;
        g.insert_edge(e.u(), e.v())?;
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.order {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.order })
        } else {
            Ok(())
        }
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.order).flat_map(move |u| {
            let mut higher = self.rows[u] & !full_mask(u + 1);
            std::iter::from_fn(move || {
                if higher == 0 {
                    return None;
                }
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                Some(Edge::new_unchecked(u, v))
            })
        })
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let mut g = *self;
        for v in 0..self.order {
            g.rows[v] = !self.rows[v] & all & !(1 << v);
        }
        g
    }

    /// Degrees sorted in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Vertices reachable from `start` inside `within`. `start` must be in `within`.
    #[inline]
    pub(crate) fn reach_within(&self, start: usize, within: u32) -> u32 {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.rows[v] & within & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    /// True when the subgraph induced by `within` is connected (the empty set counts).
    #[inline]
    pub(crate) fn is_connected_within(&self, within: u32) -> bool {
        if within == 0 {
            return true;
        }
        self.reach_within(within.trailing_zeros() as usize, within) == within
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertex_mask())
    }

    /// Connected, at least three vertices and no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        if self.order < 3 || !self.is_connected() {
            return false;
        }
        let all = self.vertex_mask();
        (0..self.order).all(|v| self.is_connected_within(all & !(1 << v)))
    }

    /// Whether some pair of vertices has two common neighbours, i.e. the
    /// graph has a (not necessarily induced) 4-cycle.
    pub fn contains_c4(&self) -> bool {
        self.find_c4().is_some()
    }

    /// First 4-cycle `[a, b, c, d]` (edges ab, bc, cd, da) found by scanning
    /// pairs `a < c` with two common neighbours.
    pub fn find_c4(&self) -> Option<[usize; 4]> {
        for a in 0..self.order {
            for c in (a + 1)..self.order {
                let common = self.rows[a] & self.rows[c];
                if common.count_ones() >= 2 {
                    let b = common.trailing_zeros() as usize;
                    let d = (common & (common - 1)).trailing_zeros() as usize;
                    return Some([a, b, c, d]);
                }
            }
        }
        None
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn apply_permutation(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.order {
            return Err(GraphError::NotAPermutation(self.order));
        }
        let mut seen = 0u32;
        for &p in perm {
            if p >= self.order || seen >> p & 1 == 1 {
                return Err(GraphError::NotAPermutation(self.order));
            }
            seen |= 1 << p;
        }
        Ok(self.permuted(perm))
    }

    /// `apply_permutation` without validation.
    pub(crate) fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph { order: self.order, rows: [0; MAX_ORDER] };
        for (v, &pv) in perm.iter().enumerate() {
            let mut row = self.rows[v];
            let mut out = 0u32;
            while row != 0 {
                let w = row.trailing_zeros() as usize;
                row &= row - 1;
                out |= 1 << perm[w];
            }
            g.rows[pv] = out;
        }
        g
    }

    /// Removes every edge of `edges`. All of them must be present.
    pub fn remove_edges(&self, edges: &[Edge]) -> Result<Graph, GraphError> {
        let mut g = *self;
        for &e in edges {
            if !g.has_edge(e.u(), e.v()) {
                return Err(GraphError::MissingEdge(e));
            }
            g.toggle_edge_unchecked(e);
        }
        Ok(g)
    }

    /// Removes a set of edges known to be present.
    #[inline]
    pub(crate) fn without_edges_unchecked(&self, edges: &[Edge]) -> Graph {
        let mut g = *self;
        for &e in edges {
            debug_assert!(g.has_edge(e.u(), e.v()));
            g.toggle_edge_unchecked(e);
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [", self.order)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("])")
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}
