//! Named graphs with known arrowing behaviour, the even-order construction
//! `F_n`, and the C4 Turán computation on small orders.
//!
//! Edge lists are written with 1-based vertex names exactly as drawn and
//! shifted to 0-based labels on construction.

use std::fmt;
use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::arrowing::{self, ColoringCertificate, Matching, Mode};
use crate::canon::canonical_form;
use crate::generator::{C4Free, GenSpec, Generator};
use crate::graph::{Edge, Graph};
use crate::graph6;

/// Largest order accepted by [`turan_ex`].
pub const TURAN_MAX_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("unknown fixture name {0:?}")]
    UnknownName(String),
    #[error("F_n needs an even order of at least 12, got {0}")]
    BadConstructionOrder(usize),
    #[error("C4 Turán enumeration supports orders 1..={TURAN_MAX_ORDER}, got {0}")]
    TuranOrder(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("independent-set certificate rejected on {0}")]
    CertificateRejected(String),
}

/// One checkable property of a fixture graph. Vertex pairs are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    EdgeCount { edges: usize },
    /// Complete-mode decision of `(P3, C_n)` on `n = order`.
    ArrowsCycle { arrows: bool },
    /// Decision of `(P3, P_n)` on `n = order`.
    ArrowsPath { arrows: bool },
    C4Free { c4_free: bool },
    ComplementMaxDegree { degree: usize },
    /// The red matching leaves no blue Hamiltonian cycle.
    Certificate { red: Vec<(usize, usize)> },
    /// The red matching leaves this blue Hamiltonian cycle.
    BlueCycle { red: Vec<(usize, usize)>, cycle: Vec<usize> },
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = |red: &[(usize, usize)]| red.iter().map(|(a, b)| format!("v{a}v{b}")).collect::<Vec<_>>().join(",");
        match self {
            Expectation::EdgeCount { edges } => write!(f, "{edges} edges"),
            Expectation::ArrowsCycle { arrows: true } => write!(f, "arrows (P3, C_n)"),
            Expectation::ArrowsCycle { arrows: false } => write!(f, "does not arrow (P3, C_n)"),
            Expectation::ArrowsPath { arrows: true } => write!(f, "arrows (P3, P_n)"),
            Expectation::ArrowsPath { arrows: false } => write!(f, "does not arrow (P3, P_n)"),
            Expectation::C4Free { c4_free } => write!(f, "C4-free = {c4_free}"),
            Expectation::ComplementMaxDegree { degree } => write!(f, "complement max degree {degree}"),
            Expectation::Certificate { red } => write!(f, "red {{{}}} blocks every blue C_n", pairs(red)),
            Expectation::BlueCycle { red, cycle } => {
                let c: Vec<String> = cycle.iter().map(|v| format!("v{v}")).collect();
                write!(f, "red {{{}}} leaves blue cycle {}", pairs(red), c.join(","))
            }
        }
    }
}

fn red_edges(g: &Graph, red: &[(usize, usize)]) -> Result<Vec<Edge>, String> {
    red.iter()
        .map(|&(a, b)| {
            let e = Edge::new(a - 1, b - 1).map_err(|e| e.to_string())?;
            if g.has_edge(e.u(), e.v()) {
                Ok(e)
            } else {
                Err(format!("red edge v{a}v{b} is not in the graph"))
            }
        })
        .collect()
}

impl Expectation {
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        let n = g.order();
        let expect = |ok: bool, found: String| if ok { Ok(()) } else { Err(found) };
        match self {
            Expectation::EdgeCount { edges } => {
                expect(g.edge_count() == *edges, format!("found {} edges", g.edge_count()))
            }
            Expectation::ArrowsCycle { arrows } => {
                let v = arrowing::decide_arrowing_cycle(g, n, Mode::Complete).map_err(|e| e.to_string())?;
                expect(v.arrows == *arrows, format!("decided {}", v.arrows))
            }
            Expectation::ArrowsPath { arrows } => {
                let v = arrowing::decide_arrowing_path(g, n).map_err(|e| e.to_string())?;
                expect(v.arrows == *arrows, format!("decided {}", v.arrows))
            }
            Expectation::C4Free { c4_free } => {
                expect(g.contains_c4() != *c4_free, format!("contains C4 = {}", g.contains_c4()))
            }
            Expectation::ComplementMaxDegree { degree } => {
                let d = g.complement().max_degree();
                expect(d == *degree, format!("found {d}"))
            }
            Expectation::Certificate { red } => {
                let red = Matching::new(red_edges(g, red)?).map_err(|e| e.to_string())?;
                let cert = ColoringCertificate { red, target_n: n };
                let ok = arrowing::check_certificate(g, &cert).map_err(|e| e.to_string())?;
                expect(ok, "blue graph is still Hamiltonian".into())
            }
            Expectation::BlueCycle { red, cycle } => {
                let red = red_edges(g, red)?;
                Matching::new(red.clone()).map_err(|e| e.to_string())?;
                let blue = g.remove_edges(&red).map_err(|e| e.to_string())?;
                let mut seen = 0u32;
                for &v in cycle {
                    if v == 0 || v > n {
                        return Err(format!("cycle vertex v{v} out of range"));
                    }
                    seen |= 1 << (v - 1);
                }
                if cycle.len() != n || seen != g.vertex_mask() {
                    return Err("cycle does not visit every vertex once".into());
                }
                for i in 0..n {
                    let (a, b) = (cycle[i], cycle[(i + 1) % n]);
                    if !blue.has_edge(a - 1, b - 1) {
                        return Err(format!("v{a}v{b} is not blue"));
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    pub provenance: &'static str,
    pub expectations: Vec<Expectation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub fixture: String,
    pub expectation: String,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {}: {}", self.fixture, self.expectation),
            Some(why) => write!(f, "FAIL {}: {} ({why})", self.fixture, self.expectation),
        }
    }
}

impl Fixture {
    pub fn check(&self) -> Vec<Outcome> {
        self.expectations
            .iter()
            .map(|e| Outcome {
                fixture: self.name.clone(),
                expectation: e.to_string(),
                failure: e.check(&self.graph).err(),
            })
            .collect()
    }
}

fn one_based(order: usize, edges: &[(usize, usize)]) -> Graph {
    let shifted: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    Graph::from_edges(order, &shifted).expect("fixture edge lists are valid")
}

// Complement of the 7-vertex witness: triangle v1v2v3, path v2v4v5 and
// triangle v5v6v7.
const F7_COMPLEMENT: [(usize, usize); 8] = [(1, 2), (1, 3), (2, 3), (2, 4), (4, 5), (5, 6), (5, 7), (6, 7)];

// Maximal red matchings of the 7-vertex witness, up to symmetry, with a
// blue Hamiltonian cycle that survives each.
type RedAndCycle = (&'static [(usize, usize)], [usize; 7]);

const F7_CASES: [RedAndCycle; 5] = [
    (&[(1, 4), (2, 5), (3, 6)], [1, 5, 3, 4, 6, 2, 7]),
    (&[(1, 4), (2, 6), (3, 5)], [1, 5, 2, 7, 4, 3, 6]),
    (&[(1, 4), (2, 6), (3, 7)], [1, 6, 4, 3, 5, 2, 7]),
    (&[(2, 5), (1, 6), (3, 7)], [1, 5, 3, 4, 6, 2, 7]),
    (&[(2, 6), (1, 5), (3, 7)], [1, 4, 6, 3, 5, 2, 7]),
];

// Complement of the 9-vertex witness: K4 on v1..v4, K4 on v5..v8, and seven
// more edges.
const F9_COMPLEMENT: [(usize, usize); 19] = [
    (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
    (5, 6), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8),
    (4, 6), (1, 7), (3, 9), (4, 9), (7, 9), (8, 9), (2, 5),
];

const F10: [(usize, usize); 18] = [
    (1, 2), (1, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 6), (3, 7), (4, 8),
    (4, 9), (5, 8), (5, 9), (4, 6), (5, 7), (6, 10), (7, 10), (8, 10), (9, 10),
];

const F11: [(usize, usize); 20] = [
    (1, 2), (1, 6), (1, 9), (2, 3), (2, 5), (2, 7), (3, 4), (3, 6), (3, 8), (4, 7),
    (4, 10), (5, 9), (5, 6), (6, 7), (6, 11), (7, 8), (7, 11), (8, 10), (9, 11), (10, 11),
];

// The five C4-free graphs on 7 vertices with 9 edges.
const G1: [(usize, usize); 9] = [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (2, 7), (3, 4), (5, 6)];
const G2: [(usize, usize); 9] = [(1, 7), (1, 2), (1, 3), (3, 4), (3, 5), (1, 6), (2, 3), (4, 5), (6, 7)];
const G3: [(usize, usize); 9] = [(1, 3), (1, 4), (2, 4), (2, 5), (3, 4), (4, 5), (1, 6), (6, 7), (2, 7)];
// u1..u7
const G4: [(usize, usize); 9] = [(1, 2), (2, 3), (3, 4), (1, 5), (2, 5), (3, 6), (4, 6), (5, 7), (6, 7)];
// v1..v7
const G5: [(usize, usize); 9] = [(1, 2), (1, 3), (1, 4), (3, 5), (4, 7), (5, 6), (5, 7), (6, 7), (2, 6)];

// Red matchings of the complements of G4 and G5 that block every blue C7.
const G4_BAR_RED: [(usize, usize); 2] = [(2, 7), (3, 5)];
const G5_BAR_RED: [(usize, usize); 3] = [(1, 6), (3, 7), (4, 5)];

/// Names accepted by [`build_named`].
pub const NAMED: [&str; 11] = ["F9", "F10", "F11", "K44_minus_e", "G1", "G2", "G3", "G4", "G5", "G4_bar", "G5_bar"];

/// The 13-edge graph on 7 vertices that arrows `(P3, C7)`.
pub fn build_f7() -> Graph {
    one_based(7, &F7_COMPLEMENT).complement()
}

// Labels in F_n: x = 0, u_i = i, v_i = t + i, y = n - 1.
const X: usize = 0;
const U3: usize = 3;

/// `F_n` for even `n >= 12`: a ladder `u_1..u_t`, `v_1..v_t` with both
/// diagonals in every square, closed by `x` (adjacent to `u_1, v_1, u_3`)
/// and `y` (adjacent to `u_t, v_t, v_{t-2}`). It has `2n - 2` edges.
pub fn build_fn_even(n: usize) -> Result<Graph, FixtureError> {
    if !n.is_multiple_of(2) || !(12..=crate::graph::MAX_ORDER).contains(&n) {
        return Err(FixtureError::BadConstructionOrder(n));
    }
    let t = (n - 2) / 2;
    let (u, v, y) = (|i: usize| i, |i: usize| t + i, n - 1);
    let mut edges = vec![(X, u(1)), (X, v(1)), (X, U3), (u(t), y), (v(t), y), (v(t - 2), y)];
    for i in 1..t {
        edges.extend([(u(i), u(i + 1)), (v(i), v(i + 1)), (v(i), u(i + 1)), (u(i), v(i + 1))]);
    }
    Ok(Graph::from_edges(n, &edges).expect("labels are below n"))
}

/// `F_n` without the edge `x u_3`; arrows `(P3, P_n)` with `2n - 3` edges.
pub fn build_fn_even_path(n: usize) -> Result<Graph, FixtureError> {
    let g = build_fn_even(n)?;
    Ok(g.remove_edges(&[Edge::new(X, U3).expect("distinct")]).expect("edge present"))
}

fn k44_minus_e() -> Graph {
    let mut edges = Vec::new();
    for a in 0..4 {
        for b in 4..8 {
            if (a, b) != (3, 7) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(8, &edges).expect("valid")
}

pub fn build_named(name: &str) -> Result<Graph, FixtureError> {
    Ok(match name {
        "F9" => one_based(9, &F9_COMPLEMENT).complement(),
        "F10" => one_based(10, &F10),
        "F11" => one_based(11, &F11),
        "K44_minus_e" => k44_minus_e(),
        "G1" => one_based(7, &G1),
        "G2" => one_based(7, &G2),
        "G3" => one_based(7, &G3),
        "G4" => one_based(7, &G4),
        "G5" => one_based(7, &G5),
        "G4_bar" => one_based(7, &G4).complement(),
        "G5_bar" => one_based(7, &G5).complement(),
        other => return Err(FixtureError::UnknownName(other.to_string())),
    })
}

fn named(name: &str) -> Graph {
    build_named(name).expect("listed in NAMED")
}

fn pairs(red: &[(usize, usize)]) -> Vec<(usize, usize)> {
    red.to_vec()
}

/// Every fixture with its expectations, in a fixed order.
pub fn all_fixtures() -> Vec<Fixture> {
    use Expectation::*;
    let arrows = ArrowsCycle { arrows: true };
    let mut out = vec![Fixture {
        name: "F7".into(),
        graph: build_f7(),
        provenance: "7-vertex witness, given as the complement of an 8-edge graph",
        expectations: [EdgeCount { edges: 13 }, arrows.clone(), ComplementMaxDegree { degree: 3 }]
            .into_iter()
            .chain(F7_CASES.iter().map(|(red, cycle)| BlueCycle { red: pairs(red), cycle: cycle.to_vec() }))
            .collect(),
    }];
    for (name, edges, provenance) in [
        ("F9", 17, "9-vertex witness, given as the complement of a 19-edge graph"),
        ("F10", 18, "10-vertex witness"),
        ("F11", 20, "11-vertex witness"),
        ("K44_minus_e", 15, "8-vertex witness, complete bipartite K4,4 minus one edge"),
    ] {
        out.push(Fixture {
            name: name.into(),
            graph: named(name),
            provenance,
            expectations: vec![EdgeCount { edges }, arrows.clone()],
        });
    }
    for name in ["G1", "G2", "G3", "G4", "G5"] {
        out.push(Fixture {
            name: name.into(),
            graph: named(name),
            provenance: "C4-free extremal graph on 7 vertices",
            expectations: vec![EdgeCount { edges: 9 }, C4Free { c4_free: true }],
        });
    }
    for (name, red) in [("G4_bar", &G4_BAR_RED[..]), ("G5_bar", &G5_BAR_RED[..])] {
        out.push(Fixture {
            name: name.into(),
            graph: named(name),
            provenance: "complement of a C4-free extremal graph; 12 edges, does not arrow",
            expectations: vec![
                EdgeCount { edges: 12 },
                Certificate { red: pairs(red) },
                ArrowsCycle { arrows: false },
            ],
        });
    }
    out.push(Fixture {
        name: "F12".into(),
        graph: build_fn_even(12).expect("12 is valid"),
        provenance: "even-order ladder construction F_n at n = 12",
        expectations: vec![EdgeCount { edges: 22 }, arrows],
    });
    out.push(Fixture {
        name: "F12_path".into(),
        graph: build_fn_even_path(12).expect("12 is valid"),
        provenance: "F_12 without x u_3, path variant",
        expectations: vec![EdgeCount { edges: 21 }, ArrowsPath { arrows: true }],
    });
    out
}

/// `ex(n, C4)` and all extremal isomorphism classes, found by walking the
/// edge-augmentation tree restricted to C4-free graphs.
pub fn turan_ex(n: usize) -> Result<(usize, Vec<Graph>), FixtureError> {
    if n == 0 || n > TURAN_MAX_ORDER {
        return Err(FixtureError::TuranOrder(n));
    }
    let mut best = (0, vec![Graph::empty(n).expect("small order")]);
    for m in 1..=n * (n - 1) / 2 {
        let mut found = Vec::new();
        Generator::with_filter(GenSpec::all(n, m), C4Free).for_each(|g| found.push(*g));
        if found.is_empty() {
            break;
        }
        best = (m, found);
    }
    Ok(best)
}

/// For a 7-vertex graph whose complement contains a 4-cycle `abcd`,
/// colours red the chords `ac` and `bd` that are edges of `g7`. In the blue
/// graph `{a, b, c, d}` is independent, so no Hamiltonian cycle exists.
/// The certificate is checked before it is returned.
pub fn verify_lemma1(g7: &Graph) -> Result<ColoringCertificate, FixtureError> {
    if g7.order() != 7 {
        return Err(FixtureError::Precondition(format!("order is {}, not 7", g7.order())));
    }
    let [a, b, c, d] = g7
        .complement()
        .find_c4()
        .ok_or_else(|| FixtureError::Precondition("complement contains no C4".into()))?;
    let red: Vec<Edge> = [(a, c), (b, d)]
        .into_iter()
        .filter(|&(p, q)| g7.has_edge(p, q))
        .map(|(p, q)| Edge::new(p, q).expect("distinct"))
        .collect();
    let cert = ColoringCertificate { red: Matching::new(red).expect("chords are disjoint"), target_n: 7 };
    match arrowing::check_certificate(g7, &cert) {
        Ok(true) => Ok(cert),
        _ => Err(FixtureError::CertificateRejected(graph6::write_graph6(g7))),
    }
}

#[derive(Serialize)]
struct ManifestEntry<'a> {
    name: &'a str,
    provenance: &'a str,
    graph6: String,
    expectations: &'a [Expectation],
}

/// Writes each fixture's graph6 line to `graphs` and a JSON object per
/// fixture, in the same order, to `manifest`.
pub fn export(fixtures: &[Fixture], mut graphs: impl Write, mut manifest: impl Write) -> io::Result<()> {
    for f in fixtures {
        let g6 = graph6::write_graph6(&f.graph);
        writeln!(graphs, "{g6}")?;
        let entry = ManifestEntry { name: &f.name, provenance: f.provenance, graph6: g6, expectations: &f.expectations };
        serde_json::to_writer(&mut manifest, &entry)?;
        writeln!(manifest)?;
    }
    Ok(())
}

/// True iff the classes in `found` are exactly the classes of `expected`.
pub fn same_classes(found: &[Graph], expected: &[Graph]) -> bool {
    let mut a: Vec<_> = found.iter().map(canonical_form).collect();
    let mut b: Vec<_> = expected.iter().map(canonical_form).collect();
    a.sort();
    b.sort();
    a == b
}
