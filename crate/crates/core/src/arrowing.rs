//! Deciding `F -> (P3, Cn)` and `F -> (P3, Pn)` for `F` on `n` vertices.
//!
//! A colouring with no red `P3` has a matching as its red class. Removing
//! more red edges can only destroy blue Hamiltonian cycles, so it suffices
//! to check the inclusion-maximal matchings: `F` arrows iff `F - M` is
//! Hamiltonian for every maximal matching `M`.

use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError};
use crate::graph6;
use crate::hamilton::{self, Engine};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrowingError {
    #[error("graph has {order} vertices but the target needs exactly {n}")]
    OrderMismatch { order: usize, n: usize },
    #[error("target length {0} is below 3")]
    TargetTooSmall(usize),
    #[error("brute force supports at most {max} vertices, graph has {0}", max = hamilton::DP_MAX_ORDER)]
    TooLargeForBruteForce(usize),
    #[error("red edge {0} is not an edge of the graph")]
    RedEdgeMissing(Edge),
    #[error("edges {0} and {1} share a vertex")]
    NotAMatching(Edge, Edge),
    #[error("malformed certificate line: {0}")]
    BadCertificate(String),
}

/// Pairwise vertex-disjoint edges, kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Matching(Vec<Edge>);

impl Matching {
    pub fn new(mut edges: Vec<Edge>) -> Result<Self, ArrowingError> {
        edges.sort_unstable();
        edges.dedup();
        let mut covered = 0u32;
        for (i, e) in edges.iter().enumerate() {
            if covered & e.mask() != 0 {
                let other = edges[..i].iter().find(|f| f.mask() & e.mask() != 0).expect("overlap exists");
                return Err(ArrowingError::NotAMatching(*other, *e));
            }
            covered |= e.mask();
        }
        Ok(Matching(edges))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Vertices covered by the matching.
    pub fn covered(&self) -> u32 {
        self.0.iter().fold(0, |m, e| m | e.mask())
    }

    /// No edge of `g` joins two uncovered vertices.
    pub fn is_maximal_in(&self, g: &Graph) -> bool {
        let free = g.vertex_mask() & !self.covered();
        let mut rest = free;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if g.neighbors(v) & free != 0 {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A red matching whose complement in the host has no blue `C_n` (or `P_n`),
/// witnessing that the host does not arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringCertificate {
    pub red: Matching,
    pub target_n: usize,
}

impl ColoringCertificate {
    /// One-line form: `<graph6> <n> <u-v> <u-v> ...`.
    pub fn to_line(&self, host: &Graph) -> String {
        let mut line = format!("{} {}", graph6::write_graph6(host), self.target_n);
        for e in self.red.edges() {
            line.push_str(&format!(" {e}"));
        }
        line
    }

    pub fn parse_line(line: &str) -> Result<(Graph, ColoringCertificate), ArrowingError> {
        let bad = |why: &str| ArrowingError::BadCertificate(format!("{why}: {line:?}"));
        let mut fields = line.split_whitespace();
        let g6 = fields.next().ok_or_else(|| bad("missing graph6"))?;
        let host = graph6::parse_graph6(g6.as_bytes()).map_err(|e| bad(&e.to_string()))?;
        let target_n = fields
            .next()
            .ok_or_else(|| bad("missing n"))?
            .parse()
            .map_err(|_| bad("n is not an integer"))?;
        let mut red = Vec::new();
        for pair in fields {
            let (a, b) = pair.split_once('-').ok_or_else(|| bad("edge is not u-v"))?;
            let a: usize = a.parse().map_err(|_| bad("bad vertex"))?;
            let b: usize = b.parse().map_err(|_| bad("bad vertex"))?;
            red.push(Edge::new(a, b).map_err(|e| bad(&e.to_string()))?);
        }
        Ok((host, ColoringCertificate { red: Matching::new(red)?, target_n }))
    }
}

/// Which red matchings are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// All inclusion-maximal matchings, any size.
    #[default]
    Complete,
    /// Every matching with `floor(n/2) - 2 <= |M| <= floor(n/2)`, smallest
    /// size first. Faster, but its soundness rests only on observation.
    Window,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Complete => "complete",
            Mode::Window => "window",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Cycle,
    Path,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub arrows: bool,
    /// First failing matching in enumeration order when `arrows` is false.
    pub certificate: Option<ColoringCertificate>,
}

/// Calls `visit` on every inclusion-maximal matching of `g` exactly once.
///
/// Branches on the lowest-indexed free vertex that still has a free
/// neighbour: it is matched to each such neighbour in increasing order, and
/// finally left permanently uncovered if none of its neighbours already is.
pub fn for_each_maximal_matching<B>(
    g: &Graph,
    mut visit: impl FnMut(&[Edge]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let mut stack = Vec::with_capacity(g.order() / 2);
    maximal_rec(g, g.vertex_mask(), 0, 0, &mut stack, &mut visit)
}

fn maximal_rec<B>(
    g: &Graph,
    all: u32,
    covered: u32,
    skipped: u32,
    stack: &mut Vec<Edge>,
    visit: &mut impl FnMut(&[Edge]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let free = all & !covered & !skipped;
    let mut pivot = None;
    let mut stranded = 0u32;
    let mut rest = free;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if g.neighbors(v) & free != 0 {
            if pivot.is_none() {
                pivot = Some(v);
            }
        } else {
            stranded |= 1 << v;
        }
    }
    // Stranded vertices stay uncovered, so none may touch a skipped vertex.
    let mut s = stranded;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        if g.neighbors(v) & skipped != 0 {
            return ControlFlow::Continue(());
        }
    }
    let Some(v) = pivot else {
        return visit(stack);
    };
    let mut partners = g.neighbors(v) & free;
    while partners != 0 {
        let u = partners.trailing_zeros() as usize;
        partners &= partners - 1;
        stack.push(Edge::new_unchecked(v, u));
        let r = maximal_rec(g, all, covered | 1 << v | 1 << u, skipped, stack, visit);
        stack.pop();
        r?;
    }
    if g.neighbors(v) & skipped == 0 {
        maximal_rec(g, all, covered, skipped | 1 << v, stack, visit)?;
    }
    ControlFlow::Continue(())
}

pub fn enumerate_maximal_matchings(g: &Graph) -> Vec<Matching> {
    let mut out = Vec::new();
    let _ = for_each_maximal_matching::<()>(g, |m| {
        out.push(Matching(m.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

/// Calls `visit` on every matching with exactly `size` edges, in
/// lexicographic order of their sorted edge lists.
pub fn for_each_matching_of_size<B>(
    g: &Graph,
    size: usize,
    mut visit: impl FnMut(&[Edge]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    fn rec<B>(
        edges: &[Edge],
        from: usize,
        size: usize,
        covered: u32,
        stack: &mut Vec<Edge>,
        visit: &mut impl FnMut(&[Edge]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if stack.len() == size {
            return visit(stack);
        }
        let need = size - stack.len();
        for i in from..edges.len() {
            if edges.len() - i < need {
                break;
            }
            let e = edges[i];
            if covered & e.mask() == 0 {
                stack.push(e);
                let r = rec(edges, i + 1, size, covered | e.mask(), stack, visit);
                stack.pop();
                r?;
            }
        }
        ControlFlow::Continue(())
    }
    let edges = g.edge_list();
    rec(&edges, 0, size, 0, &mut Vec::with_capacity(size), &mut visit)
}

/// Every matching of `g` (including the empty one), grouped by size.
pub fn enumerate_all_matchings(g: &Graph) -> Vec<Matching> {
    let mut out = Vec::new();
    for size in 0..=g.order() / 2 {
        let _ = for_each_matching_of_size::<()>(g, size, |m| {
            out.push(Matching(m.to_vec()));
            ControlFlow::Continue(())
        });
    }
    out
}

/// Matching sizes checked in [`Mode::Window`].
pub fn window_sizes(n: usize) -> std::ops::RangeInclusive<usize> {
    (n / 2).saturating_sub(2)..=n / 2
}

fn check_target(g: &Graph, n: usize) -> Result<(), ArrowingError> {
    if n < 3 {
        return Err(ArrowingError::TargetTooSmall(n));
    }
    if g.order() != n {
        return Err(ArrowingError::OrderMismatch { order: g.order(), n });
    }
    Ok(())
}

fn blue_survives(g: &Graph, red: &[Edge], target: Target) -> bool {
    let blue = g.without_edges_unchecked(red);
    match target {
        Target::Cycle => hamilton::has_hamiltonian_cycle(&blue),
        Target::Path => hamilton::has_hamiltonian_path(&blue),
    }
}

fn first_failure(g: &Graph, mode: Mode, target: Target) -> Option<Vec<Edge>> {
    let check = |m: &[Edge]| {
        if blue_survives(g, m, target) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(m.to_vec())
        }
    };
    match mode {
        Mode::Complete => for_each_maximal_matching(g, check).break_value(),
        Mode::Window => window_sizes(g.order()).find_map(|k| for_each_matching_of_size(g, k, check).break_value()),
    }
}

fn decide(g: &Graph, n: usize, mode: Mode, target: Target) -> Result<Verdict, ArrowingError> {
    check_target(g, n)?;
    Ok(match first_failure(g, mode, target) {
        None => Verdict { arrows: true, certificate: None },
        Some(red) => Verdict {
            arrows: false,
            certificate: Some(ColoringCertificate { red: Matching(red), target_n: n }),
        },
    })
}

/// Does `g` (on exactly `n` vertices) arrow `(P3, C_n)`?
pub fn decide_arrowing_cycle(g: &Graph, n: usize, mode: Mode) -> Result<Verdict, ArrowingError> {
    decide(g, n, mode, Target::Cycle)
}

/// Does `g` (on exactly `n` vertices) arrow `(P3, P_n)`? Always uses the
/// complete maximal-matching test.
pub fn decide_arrowing_path(g: &Graph, n: usize) -> Result<Verdict, ArrowingError> {
    decide(g, n, Mode::Complete, Target::Path)
}

/// Boolean-only cycle test for the search loop; skips all validation.
pub fn arrows_cycle(g: &Graph, mode: Mode) -> bool {
    first_failure(g, mode, Target::Cycle).is_none()
}

/// Minimum degree at least 3 and 2-connected. Every graph that arrows
/// `(P3, C_n)` on `n >= 4` vertices passes: at a vertex of degree at most 2
/// one red edge leaves blue degree at most 1, and a Hamiltonian graph has no
/// cut vertex.
pub fn necessary_conditions(g: &Graph) -> bool {
    g.min_degree() >= 3 && g.is_biconnected()
}

/// Arrowing straight from the definition: every red/blue colouring of the
/// edges either has two red edges at one vertex or a blue Hamiltonian
/// cycle (path). Edges are coloured one at a time; a branch dies as soon
/// as it makes a red `P3`, and each complete colouring is checked with the
/// subset DP engine.
pub fn arrows_by_bruteforce(g: &Graph, n: usize, target: Target) -> Result<bool, ArrowingError> {
    check_target(g, n)?;
    if n > hamilton::DP_MAX_ORDER {
        return Err(ArrowingError::TooLargeForBruteForce(n));
    }
    let edges = g.edge_list();
    Ok(every_colouring(&edges, 0, 0, *g, target))
}

/// `red_at` holds the vertices that already have a red edge; `blue` is `g`
/// minus the red edges chosen so far.
fn every_colouring(edges: &[Edge], i: usize, red_at: u32, blue: Graph, target: Target) -> bool {
    let Some(&e) = edges.get(i) else {
        let ok = match target {
            Target::Cycle => hamilton::has_hamiltonian_cycle_with(&blue, Engine::SubsetDp),
            Target::Path => hamilton::has_hamiltonian_path_with(&blue, Engine::SubsetDp),
        };
        return ok.expect("order checked against the DP bound");
    };
    if !every_colouring(edges, i + 1, red_at, blue, target) {
        return false;
    }
    if red_at & e.mask() != 0 {
        return true;
    }
    let mut red = blue;
    red.toggle_edge_unchecked(e);
    every_colouring(edges, i + 1, red_at | e.mask(), red, target)
}

/// Drops red edges from a valid certificate, lowest edge first, as long as
/// the blue graph stays non-Hamiltonian. The result is inclusion-minimal.
pub fn minimize_certificate(g: &Graph, cert: &ColoringCertificate) -> ColoringCertificate {
    let mut red = cert.red.edges().to_vec();
    let mut i = 0;
    while i < red.len() {
        let mut trial = red.clone();
        trial.remove(i);
        if blue_survives(g, &trial, Target::Cycle) {
            i += 1;
        } else {
            red = trial;
        }
    }
    ColoringCertificate { red: Matching(red), target_n: cert.target_n }
}

/// True iff `cert.red` is a matching of `g` and `g - red` has no
/// Hamiltonian cycle, so the colouring avoids both a red `P3` and a blue
/// `C_n`.
pub fn check_certificate(g: &Graph, cert: &ColoringCertificate) -> Result<bool, ArrowingError> {
    check_target(g, cert.target_n)?;
    let red = cert.red.edges();
    if let Some(&e) = red.iter().find(|e| !g.has_edge(e.u(), e.v())) {
        return Err(ArrowingError::RedEdgeMissing(e));
    }
    let mut covered = 0u32;
    for e in red {
        if covered & e.mask() != 0 {
            return Ok(false);
        }
        covered |= e.mask();
    }
    let blue = g.remove_edges(red).map_err(|e| match e {
        GraphError::MissingEdge(e) => ArrowingError::RedEdgeMissing(e),
        other => ArrowingError::BadCertificate(other.to_string()),
    })?;
    Ok(!hamilton::has_hamiltonian_cycle(&blue))
}
