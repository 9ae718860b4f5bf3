//! Canonical labeling by individualization and refinement.
//!
//! The search tree starts from the equitable refinement of the unit
//! partition. Each internal node individualizes one vertex of its first
//! non-singleton cell and refines again. Every discrete leaf yields a
//! relabeling; the canonical graph is the one with the lexicographically
//! smallest upper-triangle bit string in graph6 order (column by column).
//!
//! Subtrees are skipped when an automorphism fixing the current prefix maps
//! them onto an explored sibling. Cells made of mutual twins are handled by
//! exploring a single child and recording the twin transpositions. Because
//! every child of every node on the first path is either explored or in a
//! known orbit, the recorded automorphisms generate the full group.

use std::fmt;

use crate::graph::{Graph, MAX_ORDER};
use crate::graph6;

/// A permutation stored as `image[v]`.
pub type Perm = [u8; MAX_ORDER];

/// graph6 bytes of the canonically relabeled graph. Equal forms means
/// isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// Wraps graph6 bytes that are already known to be canonical.
    pub fn from_canonical_bytes(bytes: Vec<u8>) -> Self {
        CanonicalForm(bytes)
    }

    pub fn to_graph(&self) -> Graph {
        graph6::parse_graph6(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `position[v]` is the canonical label of vertex `v`.
    pub position: Perm,
    /// The graph relabeled by `position`.
    pub canonical: Graph,
    /// Generators of the automorphism group of the input graph.
    pub generators: Vec<Perm>,
}

impl Labeling {
    pub fn form(&self) -> CanonicalForm {
        CanonicalForm(graph6::encode(&self.canonical))
    }

    /// Vertex orbits of the automorphism group, as a representative per vertex.
    pub fn vertex_orbits(&self) -> Vec<usize> {
        let n = self.canonical.order();
        let mut uf = UnionFind::new(n);
        for g in &self.generators {
            for (v, &image) in g.iter().enumerate().take(n) {
                uf.union(v, image as usize);
            }
        }
        (0..n).map(|v| uf.find(v)).collect()
    }
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    let mut part = Partition::unit(n);
    let mut queue = Splitters::new();
    if n > 0 {
        queue.push(part.cells[0]);
    }
    part.refine(g, &mut queue);

    let mut search = Search { g, n, first: None, best: None, generators: Vec::new(), first_path: Vec::new() };
    let mut prefix = Vec::with_capacity(n);
    search.dfs(&part, &mut prefix);

    let best = search.best.expect("the search always reaches a leaf");
    Labeling { position: best.position, canonical: best.relabeled, generators: search.generators }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form()
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && a.degree_sequence() == b.degree_sequence()
        && canonical_labeling(a).canonical == canonical_labeling(b).canonical
}

/// Lexicographic key of a labeled graph: column `j` of the upper triangle as
/// a `j`-bit number with `x(0, j)` as the most significant bit.
fn certificate(g: &Graph) -> [u32; MAX_ORDER] {
    let mut cert = [0u32; MAX_ORDER];
    for (j, c) in cert.iter_mut().enumerate().take(g.order()).skip(1) {
        let col = g.neighbors(j) & ((1u32 << j) - 1);
        *c = col.reverse_bits() >> (32 - j);
    }
    cert
}

/// Ordered partition of the vertex set, cells as bit masks.
#[derive(Clone, Copy)]
struct Partition {
    cells: [u32; MAX_ORDER],
    len: usize,
}

struct Splitters {
    items: [u32; 4 * MAX_ORDER],
    head: usize,
    tail: usize,
}

impl Splitters {
    fn new() -> Self {
        Splitters { items: [0; 4 * MAX_ORDER], head: 0, tail: 0 }
    }

    #[inline]
    fn push(&mut self, s: u32) {
        self.items[self.tail] = s;
        self.tail += 1;
    }

    #[inline]
    fn pop(&mut self) -> Option<u32> {
        (self.head < self.tail).then(|| {
            self.head += 1;
            self.items[self.head - 1]
        })
    }
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cells = [0; MAX_ORDER];
        let len = if n == 0 {
            0
        } else {
            cells[0] = crate::graph::full_mask(n);
            1
        };
        Partition { cells, len }
    }

    /// Refines to the coarsest equitable partition finer than `self`,
    /// splitting each cell by neighbour counts into the queued splitters.
    /// Fragments are ordered by increasing count, which keeps the result
    /// independent of vertex labels.
    fn refine(&mut self, g: &Graph, queue: &mut Splitters) {
        let n = g.order();
        while let Some(splitter) = queue.pop() {
            if self.len == n {
                return;
            }
            let mut i = 0;
            while i < self.len {
                let cell = self.cells[i];
                if cell & (cell - 1) == 0 {
                    i += 1;
                    continue;
                }
                let mut by_count = [0u32; MAX_ORDER + 1];
                let mut used = 0u64;
                let mut rest = cell;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let c = (g.neighbors(v) & splitter).count_ones() as usize;
                    by_count[c] |= 1 << v;
                    used |= 1 << c;
                }
                let pieces = used.count_ones() as usize;
                if pieces == 1 {
                    i += 1;
                    continue;
                }
                self.cells.copy_within(i + 1..self.len, i + pieces);
                let mut k = i;
                while used != 0 {
                    let c = used.trailing_zeros() as usize;
                    used &= used - 1;
                    self.cells[k] = by_count[c];
                    queue.push(by_count[c]);
                    k += 1;
                }
                self.len += pieces - 1;
                i += pieces;
            }
        }
    }

    fn first_nontrivial(&self) -> Option<usize> {
        self.cells[..self.len].iter().position(|&c| c & (c.wrapping_sub(1)) != 0)
    }
}

#[derive(Clone, Copy)]
struct Leaf {
    position: Perm,
    relabeled: Graph,
    cert: [u32; MAX_ORDER],
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Perm>,
    first_path: Vec<u8>,
}

/// Cell whose members all have the same neighbourhood outside the cell and
/// are either pairwise adjacent or pairwise non-adjacent.
fn is_twin_cell(g: &Graph, cell: u32) -> bool {
    let v0 = cell.trailing_zeros() as usize;
    let outside = g.neighbors(v0) & !cell;
    let clique = g.neighbors(v0) & cell != 0;
    let mut rest = cell;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let row = g.neighbors(v);
        if row & !cell != outside {
            return false;
        }
        let inside = row & cell;
        let want = if clique { cell & !(1 << v) } else { 0 };
        if inside != want {
            return false;
        }
    }
    true
}

impl Search<'_> {
    /// Returns `Some(level)` when the caller chain should unwind to the node
    /// at depth `level`, because an automorphism mapped the rest of the
    /// subtree onto an already explored one.
    fn dfs(&mut self, part: &Partition, prefix: &mut Vec<u8>) -> Option<usize> {
        let depth = prefix.len();
        let Some(t) = part.first_nontrivial() else {
            return self.leaf(part, prefix);
        };
        let cell = part.cells[t];
        let on_first_path = self.first.is_none() || self.first_path.starts_with(prefix);

        if is_twin_cell(self.g, cell) {
            if on_first_path {
                self.add_twin_generators(cell);
            }
            let w = cell.trailing_zeros() as usize;
            return self.child(part, t, w, prefix).filter(|&l| l < depth);
        }

        let mut explored = 0u32;
        let mut orbits: Option<(usize, UnionFind)> = None;
        let mut rest = cell;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if explored != 0 {
                let stale = orbits.as_ref().is_none_or(|(k, _)| *k != self.generators.len());
                if stale {
                    orbits = Some((self.generators.len(), self.stabilizer_orbits(prefix)));
                }
                let uf = &mut orbits.as_mut().expect("just computed").1;
                let root = uf.find(w);
                let mut seen = explored;
                let mut equivalent = false;
                while seen != 0 {
                    let x = seen.trailing_zeros() as usize;
                    seen &= seen - 1;
                    if uf.find(x) == root {
                        equivalent = true;
                        break;
                    }
                }
                if equivalent {
                    continue;
                }
            }
            explored |= 1 << w;
            if let Some(level) = self.child(part, t, w, prefix) {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn child(&mut self, part: &Partition, t: usize, w: usize, prefix: &mut Vec<u8>) -> Option<usize> {
        let mut next = *part;
        next.cells.copy_within(t + 1..next.len, t + 2);
        next.cells[t] = 1 << w;
        next.cells[t + 1] = part.cells[t] & !(1 << w);
        next.len += 1;
        let mut queue = Splitters::new();
        queue.push(1 << w);
        next.refine(self.g, &mut queue);
        prefix.push(w as u8);
        let r = self.dfs(&next, prefix);
        prefix.pop();
        r
    }

    fn leaf(&mut self, part: &Partition, prefix: &[u8]) -> Option<usize> {
        let mut position = [0u8; MAX_ORDER];
        for (pos, &c) in part.cells[..self.n].iter().enumerate() {
            position[c.trailing_zeros() as usize] = pos as u8;
        }
        for (v, p) in position.iter_mut().enumerate().skip(self.n) {
            *p = v as u8;
        }
        let relabeled = self.g.permuted(&position.map(usize::from)[..self.n]);
        let cert = certificate(&relabeled);
        let leaf = Leaf { position, relabeled, cert };

        let Some(first) = &self.first else {
            self.first_path = prefix.to_vec();
            self.first = Some(leaf);
            self.best = Some(leaf);
            return None;
        };
        if first.cert == cert {
            let aut = compose_to(&first.position, &leaf.position, self.n);
            self.push_generator(aut);
            let common = self.first_path.iter().zip(prefix).take_while(|(a, b)| a == b).count();
            return Some(common);
        }
        let best = self.best.as_ref().expect("set with first");
        match cert.cmp(&best.cert) {
            std::cmp::Ordering::Less => self.best = Some(leaf),
            std::cmp::Ordering::Equal => {
                let aut = compose_to(&best.position, &leaf.position, self.n);
                self.push_generator(aut);
            }
            std::cmp::Ordering::Greater => {}
        }
        None
    }

    fn push_generator(&mut self, aut: Perm) {
        if (0..self.n).any(|v| aut[v] as usize != v) && !self.generators.contains(&aut) {
            self.generators.push(aut);
        }
    }

    fn add_twin_generators(&mut self, cell: u32) {
        let v0 = cell.trailing_zeros() as usize;
        let mut rest = cell & (cell - 1);
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut t = identity();
            t.swap(v0, v);
            self.push_generator(t);
        }
    }

    fn stabilizer_orbits(&self, prefix: &[u8]) -> UnionFind {
        let mut uf = UnionFind::new(self.n);
        for g in &self.generators {
            if prefix.iter().all(|&p| g[p as usize] == p) {
                for (v, &image) in g.iter().enumerate().take(self.n) {
                    uf.union(v, image as usize);
                }
            }
        }
        uf
    }
}

fn identity() -> Perm {
    std::array::from_fn(|i| i as u8)
}

/// The automorphism taking vertex `v` to the vertex that `reference` places
/// where `other` places `v`.
fn compose_to(reference: &Perm, other: &Perm, n: usize) -> Perm {
    let mut inv = [0u8; MAX_ORDER];
    for v in 0..n {
        inv[reference[v] as usize] = v as u8;
    }
    let mut aut = identity();
    for v in 0..n {
        aut[v] = inv[other[v] as usize];
    }
    aut
}

/// Small union-find over at most [`MAX_ORDER`] elements (or more, for
/// vertex pairs).
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u16>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u16).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    /// Unions by keeping the smaller index as root.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u16;
        }
    }
}
