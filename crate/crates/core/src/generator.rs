//! Isomorph-free generation of graphs with a fixed order and edge count.
//!
//! Canonical augmentation by edges. A graph with `k + 1` edges is built from
//! one with `k` edges by adding a non-edge, one non-edge per orbit of the
//! parent's automorphism group. The child is kept only when the added edge
//! lies in the automorphism orbit of the child's canonical deletion edge,
//! so every isomorphism class appears exactly once and no global table is
//! needed.
//!
//! The canonical deletion edge is taken among the edges whose endpoint
//! degrees `(min, max)` are lexicographically largest, ties broken by the
//! canonical labeling. Most children fail the degree comparison and are
//! dropped before any labeling is computed. The rule also gives a strong
//! prune: degrees only grow along a construction path, and the edge that
//! lifts a vertex from degree `j` to `j + 1` has pair minimum `<= j + 1`.
//! So once a graph has minimum degree `delta` below the target and some edge
//! whose endpoints both have degree `>= delta + 2`, no descendant can reach
//! the target minimum degree.
//!
//! Biconnectivity is only a final filter.

use std::fmt;

use crate::canon::{canonical_labeling, Labeling, Perm, UnionFind};
use crate::graph::{Edge, Graph, MAX_ORDER};

/// What to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub order: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub require_biconnected: bool,
}

impl GenSpec {
    /// Biconnected graphs of minimum degree 3, the arrowing candidates.
    pub fn candidates(order: usize, edges: usize) -> Self {
        GenSpec { order, edges, min_degree: 3, require_biconnected: true }
    }

    /// Every graph with the given order and size.
    pub fn all(order: usize, edges: usize) -> Self {
        GenSpec { order, edges, min_degree: 0, require_biconnected: false }
    }

    /// Why no graph can meet this spec, if that is evident up front.
    pub fn diagnose(&self) -> Option<Infeasible> {
        let n = self.order;
        if n > MAX_ORDER {
            return Some(Infeasible::OrderTooLarge(n));
        }
        let max = n * n.saturating_sub(1) / 2;
        if self.edges > max {
            return Some(Infeasible::TooManyEdges { edges: self.edges, max });
        }
        if self.min_degree * n > 2 * self.edges || (n > 0 && self.min_degree >= n) {
            return Some(Infeasible::DegreeBudget { order: n, edges: self.edges, min_degree: self.min_degree });
        }
        if self.require_biconnected && n < 3 {
            return Some(Infeasible::TooSmallForBiconnected(n));
        }
        None
    }

    fn accepts_final(&self, g: &Graph) -> bool {
        g.min_degree() >= self.min_degree && (!self.require_biconnected || g.is_biconnected())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasible {
    OrderTooLarge(usize),
    TooManyEdges { edges: usize, max: usize },
    DegreeBudget { order: usize, edges: usize, min_degree: usize },
    TooSmallForBiconnected(usize),
}

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasible::OrderTooLarge(n) => write!(f, "order {n} exceeds the cap of {MAX_ORDER}"),
            Infeasible::TooManyEdges { edges, max } => {
                write!(f, "{edges} edges requested but a simple graph of this order has at most {max}")
            }
            Infeasible::DegreeBudget { order, edges, min_degree } => write!(
                f,
                "minimum degree {min_degree} on {order} vertices needs at least {} edges (and degree < order), have {edges}",
                (min_degree * order).div_ceil(2)
            ),
            Infeasible::TooSmallForBiconnected(n) => write!(f, "no biconnected graph has {n} vertices"),
        }
    }
}

/// A node of the generation tree: a graph on the canonical construction
/// path, possibly with its labeling already computed.
#[derive(Clone, Debug)]
pub struct Node {
    pub graph: Graph,
    labeling: Option<Labeling>,
}

impl Node {
    pub fn new(graph: Graph) -> Self {
        Node { graph, labeling: None }
    }
}

/// Predicate closed under taking subgraphs; used to prune whole subtrees.
pub trait Hereditary: Sync {
    fn admits(&self, g: &Graph) -> bool;
}

/// Admits everything.
#[derive(Debug, Clone, Copy, Default)]
pub struct AnyGraph;

impl Hereditary for AnyGraph {
    #[inline]
    fn admits(&self, _: &Graph) -> bool {
        true
    }
}

/// Admits graphs without a 4-cycle.
#[derive(Debug, Clone, Copy, Default)]
pub struct C4Free;

impl Hereditary for C4Free {
    #[inline]
    fn admits(&self, g: &Graph) -> bool {
        !g.contains_c4()
    }
}

/// Edge-augmentation generator for one [`GenSpec`].
pub struct Generator<H = AnyGraph> {
    spec: GenSpec,
    filter: H,
}

impl Generator<AnyGraph> {
    pub fn new(spec: GenSpec) -> Self {
        Generator { spec, filter: AnyGraph }
    }
}

impl<H: Hereditary> Generator<H> {
    pub fn with_filter(spec: GenSpec, filter: H) -> Self {
        Generator { spec, filter }
    }

    pub fn spec(&self) -> &GenSpec {
        &self.spec
    }

    fn root(&self) -> Option<Node> {
        if self.spec.diagnose().is_some() {
            return None;
        }
        let g = Graph::empty(self.spec.order).expect("order checked");
        (self.filter.admits(&g) && !self.prune(&g, &degrees(&g), 0)).then(|| Node::new(g))
    }

    /// Calls `visit` on one representative of every isomorphism class that
    /// meets the spec, in a deterministic order.
    pub fn for_each(&self, mut visit: impl FnMut(&Graph)) {
        if let Some(root) = self.root() {
            self.expand(root, 0, &mut visit);
        }
    }

    /// Graphs on the construction path with exactly `level` edges, in
    /// generation order. Each is the root of an independent subtree, so the
    /// list is a deterministic partition of the work.
    pub fn frontier(&self, level: usize) -> Vec<Node> {
        let level = level.min(self.spec.edges);
        let mut layer: Vec<Node> = self.root().into_iter().collect();
        for k in 0..level {
            let mut next = Vec::new();
            for node in layer {
                self.children(node, k, &mut |child| next.push(child));
            }
            layer = next;
        }
        layer
    }

    /// Smallest level whose frontier has at least `target` nodes (or the
    /// final level), together with that frontier.
    pub fn split(&self, target: usize) -> (usize, Vec<Node>) {
        let mut layer: Vec<Node> = self.root().into_iter().collect();
        let mut k = 0;
        while k < self.spec.edges && layer.len() < target && !layer.is_empty() {
            let mut next = Vec::new();
            for node in layer {
                self.children(node, k, &mut |child| next.push(child));
            }
            layer = next;
            k += 1;
        }
        (k, layer)
    }

    /// Runs the subtree under a frontier node found at `level`.
    pub fn for_each_below(&self, node: Node, level: usize, mut visit: impl FnMut(&Graph)) {
        self.expand(node, level, &mut visit);
    }

    fn expand(&self, node: Node, k: usize, visit: &mut impl FnMut(&Graph)) {
        if k == self.spec.edges {
            if self.spec.accepts_final(&node.graph) {
                visit(&node.graph);
            }
            return;
        }
        self.children(node, k, &mut |child| self.expand(child, k + 1, visit));
    }

    /// Accepted children of `node`, which has `k` edges.
    fn children(&self, node: Node, k: usize, emit: &mut impl FnMut(Node)) {
        let g = node.graph;
        let n = g.order();
        let generators = match node.labeling {
            Some(l) => l.generators,
            None => canonical_labeling(&g).generators,
        };
        let deg = degrees(&g);

        let mut orbits = (!generators.is_empty()).then(|| non_edge_orbits(&g, &generators));
        for b in 1..n {
            let mut cand = !g.neighbors(b) & ((1u32 << b) - 1);
            while cand != 0 {
                let a = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                if let Some(uf) = orbits.as_mut() {
                    let p = pair_index(a, b);
                    if uf.find(p) != p {
                        continue;
                    }
                }
                let e = Edge::new_unchecked(a, b);
                let mut child = g;
                child.toggle_edge_unchecked(e);
                let mut cdeg = deg;
                cdeg[a] += 1;
                cdeg[b] += 1;
                if self.prune(&child, &cdeg, k + 1) || !self.filter.admits(&child) {
                    continue;
                }
                if let Some(labeling) = self.accept(&child, &cdeg, e) {
                    emit(Node { graph: child, labeling });
                }
            }
        }
    }

    /// Whether no descendant of `g` (which has `k` edges) can meet the spec.
    fn prune(&self, g: &Graph, deg: &[u8; MAX_ORDER], k: usize) -> bool {
        let d = self.spec.min_degree;
        if d == 0 {
            return false;
        }
        let n = g.order();
        let remaining = self.spec.edges - k;
        let mut deficiency = 0;
        let mut delta = usize::MAX;
        for &x in &deg[..n] {
            let x = x as usize;
            deficiency += d.saturating_sub(x);
            delta = delta.min(x);
        }
        if deficiency > 2 * remaining {
            return true;
        }
        if delta < d {
            let (best, _) = best_pair(g, deg);
            if (best >> 8) as usize >= delta + 2 {
                return true;
            }
        }
        false
    }

    /// The canonical-deletion test for `child = parent + e`. Returns `None`
    /// to reject, `Some(labeling)` to accept (with the child's labeling when
    /// it had to be computed).
    fn accept(&self, child: &Graph, deg: &[u8; MAX_ORDER], e: Edge) -> Option<Option<Labeling>> {
        let (best, ties) = best_pair(child, deg);
        if pair_key(deg, e) != best {
            return None;
        }
        if ties == 1 {
            return Some(None);
        }
        let lab = canonical_labeling(child);
        let pos = &lab.position;
        let canonical_edge = child
            .edges()
            .filter(|&f| pair_key(deg, f) == best)
            .max_by_key(|f| {
                let (x, y) = (pos[f.u()], pos[f.v()]);
                (x.max(y), x.min(y))
            })
            .expect("e itself has the best pair");
        if canonical_edge == e || same_edge_orbit(&lab.generators, e, canonical_edge) {
            Some(Some(lab))
        } else {
            None
        }
    }
}

fn degrees(g: &Graph) -> [u8; MAX_ORDER] {
    let mut d = [0u8; MAX_ORDER];
    for (v, x) in d.iter_mut().enumerate().take(g.order()) {
        *x = g.degree(v) as u8;
    }
    d
}

#[inline]
fn pair_key(deg: &[u8; MAX_ORDER], e: Edge) -> u16 {
    let (x, y) = (deg[e.u()], deg[e.v()]);
    (x.min(y) as u16) << 8 | x.max(y) as u16
}

/// Largest endpoint-degree pair over all edges and how many edges attain it.
fn best_pair(g: &Graph, deg: &[u8; MAX_ORDER]) -> (u16, usize) {
    let mut best = 0u16;
    let mut ties = 0;
    for e in g.edges() {
        let p = pair_key(deg, e);
        match p.cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = p;
                ties = 1;
            }
            std::cmp::Ordering::Equal => ties += 1,
            std::cmp::Ordering::Less => {}
        }
    }
    (best, ties)
}

#[inline]
fn pair_index(a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    b * (b - 1) / 2 + a
}

/// Union-find over vertex pairs, merged along the automorphism generators.
/// Roots are the smallest pair index of each orbit.
fn non_edge_orbits(g: &Graph, generators: &[Perm]) -> UnionFind {
    let n = g.order();
    let mut uf = UnionFind::new(n * n.saturating_sub(1) / 2);
    for gen in generators {
        for b in 1..n {
            let mut cand = !g.neighbors(b) & ((1u32 << b) - 1);
            while cand != 0 {
                let a = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                let (x, y) = (gen[a] as usize, gen[b] as usize);
                let (x, y) = if x < y { (x, y) } else { (y, x) };
                uf.union(pair_index(a, b), pair_index(x, y));
            }
        }
    }
    uf
}

fn same_edge_orbit(generators: &[Perm], from: Edge, to: Edge) -> bool {
    let mut orbit = vec![from];
    let mut i = 0;
    while i < orbit.len() {
        let e = orbit[i];
        i += 1;
        for gen in generators {
            let img = Edge::new_unchecked(gen[e.u()] as usize, gen[e.v()] as usize);
            if img == to {
                return true;
            }
            if !orbit.contains(&img) {
                orbit.push(img);
            }
        }
    }
    false
}

/// All classes meeting `spec`, in generation order. Empty when the spec is
/// infeasible; see [`GenSpec::diagnose`].
pub fn generate(spec: GenSpec) -> Vec<Graph> {
    let mut out = Vec::new();
    Generator::new(spec).for_each(|g| out.push(*g));
    out
}

pub fn count(spec: GenSpec) -> usize {
    let mut c = 0;
    Generator::new(spec).for_each(|_| c += 1);
    c
}
