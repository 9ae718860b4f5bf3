//! Hamiltonian cycle and path existence.
//!
//! The default engine is a backtracking search over bit masks. It grows a
//! path from a fixed start vertex and abandons a branch as soon as an
//! unvisited vertex has fewer than two usable neighbours, the unvisited set
//! falls apart, or more than two unvisited vertices are forced to be ends of
//! the remaining path. The subset DP engine is kept as an independent
//! second implementation.

use thiserror::Error;

use crate::graph::Graph;

/// Largest order the subset DP accepts (`2^24` states of one word each).
pub const DP_MAX_ORDER: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Backtrack,
    SubsetDp,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonError {
    #[error("subset DP supports at most {DP_MAX_ORDER} vertices, graph has {0}")]
    TooLargeForDp(usize),
}

pub fn has_hamiltonian_cycle(g: &Graph) -> bool {
    backtrack_cycle(g)
}

pub fn has_hamiltonian_path(g: &Graph) -> bool {
    backtrack_path(g)
}

pub fn has_hamiltonian_cycle_with(g: &Graph, engine: Engine) -> Result<bool, HamiltonError> {
    match engine {
        Engine::Backtrack => Ok(backtrack_cycle(g)),
        Engine::SubsetDp => dp_cycle(g),
    }
}

pub fn has_hamiltonian_path_with(g: &Graph, engine: Engine) -> Result<bool, HamiltonError> {
    match engine {
        Engine::Backtrack => Ok(backtrack_path(g)),
        Engine::SubsetDp => dp_path(g),
    }
}

fn backtrack_cycle(g: &Graph) -> bool {
    let n = g.order();
    if n < 3 || g.min_degree() < 2 || !g.is_connected() {
        return false;
    }
    let start = (0..n).min_by_key(|&v| g.degree(v)).expect("n >= 3");
    let unvisited = g.vertex_mask() & !(1 << start);
    extend(g, start, start, unvisited, true)
}

fn backtrack_path(g: &Graph) -> bool {
    let n = g.order();
    if n <= 1 {
        return n == 1;
    }
    if !g.is_connected() {
        return false;
    }
    let leaves: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    if leaves.len() > 2 {
        return false;
    }
    // A degree-one vertex must be an end of the path, so it is the only start
    // worth trying.
    let starts: Vec<usize> = if leaves.is_empty() { (0..n).collect() } else { vec![leaves[0]] };
    let all = g.vertex_mask();
    starts.into_iter().any(|s| extend(g, s, s, all & !(1 << s), false))
}

/// Extends the path `start .. end` through `unvisited`. With `closing`, the
/// last vertex must also be adjacent to `start`.
fn extend(g: &Graph, start: usize, end: usize, unvisited: u32, closing: bool) -> bool {
    if unvisited == 0 {
        return !closing || g.has_edge(end, start);
    }
    if !viable(g, start, end, unvisited, closing) {
        return false;
    }
    let mut options = g.neighbors(end) & unvisited;
    // Fewest onward choices first.
    let mut order = [(0u32, 0u8); 32];
    let mut k = 0;
    while options != 0 {
        let w = options.trailing_zeros() as usize;
        options &= options - 1;
        order[k] = ((g.neighbors(w) & unvisited).count_ones(), w as u8);
        k += 1;
    }
    order[..k].sort_unstable();
    order[..k].iter().any(|&(_, w)| {
        let w = w as usize;
        extend(g, start, w, unvisited & !(1 << w), closing)
    })
}

fn viable(g: &Graph, start: usize, end: usize, unvisited: u32, closing: bool) -> bool {
    if g.neighbors(end) & unvisited == 0 {
        return false;
    }
    if closing && g.neighbors(start) & unvisited == 0 {
        return false;
    }
    if !g.is_connected_within(unvisited) {
        return false;
    }
    let single = unvisited & (unvisited - 1) == 0;
    let mut attach = 1u32 << end;
    if closing {
        attach |= 1 << start;
    }
    let mut ends = 0;
    let mut rest = unvisited;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let inner = (g.neighbors(u) & unvisited).count_ones();
        let outer = (g.neighbors(u) & attach).count_ones();
        if closing && inner + outer < 2 && !single {
            return false;
        }
        if inner <= 1 {
            ends += 1;
        }
    }
    single || ends <= 2
}

fn dp_table(g: &Graph, seeds: impl Iterator<Item = usize>) -> Result<Vec<u32>, HamiltonError> {
    let n = g.order();
    if n > DP_MAX_ORDER {
        return Err(HamiltonError::TooLargeForDp(n));
    }
    // reach[mask]: vertices v such that some seeded path covers exactly mask and ends at v.
    let mut reach = vec![0u32; 1 << n];
    for s in seeds {
        reach[1 << s] |= 1 << s;
    }
    for mask in 1usize..(1 << n) {
        let mut ends = reach[mask];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut next = g.neighbors(v) & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                reach[mask | 1 << w] |= 1 << w;
            }
        }
    }
    Ok(reach)
}

fn dp_cycle(g: &Graph) -> Result<bool, HamiltonError> {
    let n = g.order();
    if n > DP_MAX_ORDER {
        return Err(HamiltonError::TooLargeForDp(n));
    }
    if n < 3 {
        return Ok(false);
    }
    let reach = dp_table(g, std::iter::once(0))?;
    Ok(reach[(1 << n) - 1] & g.neighbors(0) != 0)
}

fn dp_path(g: &Graph) -> Result<bool, HamiltonError> {
    let n = g.order();
    if n > DP_MAX_ORDER {
        return Err(HamiltonError::TooLargeForDp(n));
    }
    if n == 0 {
        return Ok(false);
    }
    let reach = dp_table(g, 0..n)?;
    Ok(reach[(1 << n) - 1] != 0)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    pub(crate) fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    /// Every vertex ordering, checked edge by edge.
    fn brute(g: &Graph, cycle: bool) -> bool {
        fn rec(g: &Graph, order: &mut Vec<usize>, used: u32, cycle: bool) -> bool {
            let n = g.order();
            if order.len() == n {
                return !cycle || (n >= 3 && g.has_edge(order[n - 1], order[0]));
            }
            for v in 0..n {
                if used >> v & 1 == 0 && order.last().is_none_or(|&l| g.has_edge(l, v)) {
                    order.push(v);
                    let ok = rec(g, order, used | 1 << v, cycle);
                    order.pop();
                    if ok {
                        return true;
                    }
                }
            }
            false
        }
        g.order() > 0 && rec(g, &mut Vec::new(), 0, cycle)
    }

    #[test]
    fn named_examples() {
        for n in 3..12 {
            assert!(has_hamiltonian_cycle(&Graph::cycle(n).unwrap()));
            assert!(has_hamiltonian_path(&Graph::path(n).unwrap()));
            assert!(!has_hamiltonian_cycle(&Graph::path(n).unwrap()));
        }
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!has_hamiltonian_path(&star));
        let pendant = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4)]).unwrap();
        assert!(!has_hamiltonian_cycle(&pendant));
        assert!(has_hamiltonian_path(&pendant));
        let p = petersen();
        assert!(!has_hamiltonian_cycle(&p));
        assert!(has_hamiltonian_path(&p));
        assert_eq!(has_hamiltonian_cycle_with(&p, Engine::SubsetDp), Ok(false));
        assert_eq!(has_hamiltonian_path_with(&p, Engine::SubsetDp), Ok(true));
        assert!(!has_hamiltonian_cycle(&Graph::complete(2).unwrap()));
        assert!(has_hamiltonian_path(&Graph::empty(1).unwrap()));
    }

    #[test]
    fn dp_refuses_large_graphs() {
        let g = Graph::cycle(25).unwrap();
        assert_eq!(has_hamiltonian_cycle_with(&g, Engine::SubsetDp), Err(HamiltonError::TooLargeForDp(25)));
        assert!(has_hamiltonian_cycle(&Graph::cycle(32).unwrap()));
    }

    #[test]
    fn exhaustive_labeled_graphs_up_to_six() {
        for n in 1..=6 {
            let m = n * (n - 1) / 2;
            for bits in 0u32..(1 << m) {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for v in 1..n {
                    for u in 0..v {
                        if bits >> k & 1 == 1 {
                            g.insert_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                let c = brute(&g, true);
                let p = brute(&g, false);
                assert_eq!(has_hamiltonian_cycle(&g), c, "{g:?}");
                assert_eq!(has_hamiltonian_cycle_with(&g, Engine::SubsetDp).unwrap(), c);
                assert_eq!(has_hamiltonian_path(&g), p, "{g:?}");
                assert_eq!(has_hamiltonian_path_with(&g, Engine::SubsetDp).unwrap(), p);
            }
        }
    }

    #[test]
    fn random_graphs_agree_with_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(21);
        for _ in 0..1500 {
            let n = rng.gen_range(7..=8);
            let p = rng.gen_range(0.25..0.7);
            let mut g = Graph::empty(n).unwrap();
            for v in 1..n {
                for u in 0..v {
                    if rng.gen_bool(p) {
                        g.insert_edge(u, v).unwrap();
                    }
                }
            }
            let c = has_hamiltonian_cycle(&g);
            assert_eq!(c, brute(&g, true), "{g:?}");
            assert_eq!(has_hamiltonian_path(&g), brute(&g, false), "{g:?}");
            if c {
                assert!(g.is_biconnected() && g.min_degree() >= 2);
            }
        }
    }

    #[test]
    fn monotone_under_edge_addition() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(4);
        for _ in 0..300 {
            let n = rng.gen_range(5..=12);
            let mut g = Graph::empty(n).unwrap();
            for v in 1..n {
                for u in 0..v {
                    if rng.gen_bool(0.4) {
                        g.insert_edge(u, v).unwrap();
                    }
                }
            }
            let (c, p) = (has_hamiltonian_cycle(&g), has_hamiltonian_path(&g));
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v {
                g.insert_edge(u, v).unwrap();
                assert!(!c || has_hamiltonian_cycle(&g));
                assert!(!p || has_hamiltonian_path(&g));
            }
        }
    }
}
