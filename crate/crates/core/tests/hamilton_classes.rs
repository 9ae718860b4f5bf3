mod common;

use p3cn::fixtures::{all_fixtures, build_fn_even};
use p3cn::hamilton::{
    has_hamiltonian_cycle, has_hamiltonian_cycle_with, has_hamiltonian_path, has_hamiltonian_path_with, Engine,
};
use p3cn::Graph;
use rand::{Rng, SeedableRng};

/// Tries every vertex ordering.
fn by_orderings(g: &Graph, cycle: bool) -> bool {
    fn extend(g: &Graph, order: &mut Vec<usize>, used: u32, cycle: bool) -> bool {
        let n = g.order();
        if order.len() == n {
            return !cycle || (n >= 3 && g.has_edge(order[n - 1], order[0]));
        }
        (0..n).any(|v| {
            if used >> v & 1 == 1 || order.last().is_some_and(|&l| !g.has_edge(l, v)) {
                return false;
            }
            order.push(v);
            let ok = extend(g, order, used | 1 << v, cycle);
            order.pop();
            ok
        })
    }
    g.order() > 0 && extend(g, &mut Vec::new(), 0, cycle)
}

#[test]
fn every_class_up_to_seven_vertices() {
    let mut total = 0;
    for n in 1..=7 {
        for g in common::all_classes(n) {
            let (c, p) = (by_orderings(&g, true), by_orderings(&g, false));
            assert_eq!(has_hamiltonian_cycle(&g), c, "{g:?}");
            assert_eq!(has_hamiltonian_path(&g), p, "{g:?}");
            assert_eq!(has_hamiltonian_cycle_with(&g, Engine::SubsetDp).unwrap(), c);
            assert_eq!(has_hamiltonian_path_with(&g, Engine::SubsetDp).unwrap(), p);
            total += 1;
        }
    }
    assert_eq!(total, 1 + 2 + 4 + 11 + 34 + 156 + 1044);
}

#[test]
fn engines_agree_on_fixtures_minus_random_matchings() {
    let mut graphs: Vec<Graph> = all_fixtures().into_iter().map(|f| f.graph).collect();
    graphs.extend((12..=20).step_by(2).map(|n| build_fn_even(n).unwrap()));
    let mut rng = rand::rngs::StdRng::seed_from_u64(77);
    for g in graphs {
        for _ in 0..40 {
            let mut blue = g;
            let mut covered = 0u32;
            for e in g.edges() {
                if covered & e.mask() == 0 && rng.gen_bool(0.3) {
                    covered |= e.mask();
                    blue = blue.remove_edges(&[e]).unwrap();
                }
            }
            assert_eq!(has_hamiltonian_cycle(&blue), has_hamiltonian_cycle_with(&blue, Engine::SubsetDp).unwrap());
            assert_eq!(has_hamiltonian_path(&blue), has_hamiltonian_path_with(&blue, Engine::SubsetDp).unwrap());
        }
    }
}
