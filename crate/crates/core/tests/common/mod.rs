#![allow(dead_code)]

use p3cn::generator::{generate, GenSpec};
use p3cn::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// One graph per isomorphism class on `n` vertices, every edge count.
pub fn all_classes(n: usize) -> Vec<Graph> {
    (0..=n * (n - 1) / 2).flat_map(|m| generate(GenSpec::all(n, m))).collect()
}

/// Biconnected classes with minimum degree 3 on `n` vertices.
pub fn all_candidates(n: usize) -> Vec<Graph> {
    (0..=n * (n - 1) / 2).flat_map(|m| generate(GenSpec::candidates(n, m))).collect()
}

pub fn random_relabel(g: &Graph, rng: &mut impl Rng) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(rng);
    g.apply_permutation(&perm).unwrap()
}

/// Lexicographically smallest upper-triangle bit string over all vertex
/// orderings. Independent of the crate's canonical labeling.
fn min_code(n: usize, adj: &[u32]) -> u64 {
    fn next_perm(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mut code = 0u64;
        for v in 1..n {
            for u in 0..v {
                code = code << 1 | u64::from(adj[perm[u]] >> perm[v] & 1);
            }
        }
        best = best.min(code);
        if !next_perm(&mut perm) {
            return best;
        }
    }
}

/// Number of isomorphism classes of graphs on `n` vertices, by relabeling
/// every labeled graph and keeping the smallest code.
pub fn brute_force_class_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let mut seen = std::collections::HashSet::new();
    for bits in 0u64..(1 << pairs.len()) {
        let mut adj = vec![0u32; n];
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        seen.insert(min_code(n, &adj));
    }
    seen.len()
}
