mod common;

use splitclust::*;

use common::*;

#[test]
fn four_vertex_family_has_eleven_classes() {
    assert_eq!(nonisomorphic_graphs(4).len(), 11);
    assert_eq!(nonisomorphic_graphs(3).len(), 4);
}

#[test]
fn vertex_cover_gadget_matches_cover_number() {
    for n in 1..=5 {
        for g in nonisomorphic_graphs(n) {
            let tau = vertex_cover_number(&g);
            for k in 0..=n {
                let gadget = gen_vertex_cover_gadget(&g, k).unwrap();
                if gadget.n() > SearchBudget::default().max_vertices {
                    continue;
                }
                assert_eq!(decide(&gadget, k).unwrap(), tau <= k, "{g:?} k={k}");
            }
        }
    }
}

#[test]
fn coloring_gadget_matches_colorability() {
    let mut family = nonisomorphic_graphs(4);
    family.extend(nonisomorphic_graphs(5));
    family.push(cycle(5));
    family.push(clique(4));
    for g in &family {
        for k in [3, 4] {
            let inst = gen_coloring_gadget(g, k).unwrap();
            let sol = solve_multicut_exact(&inst, &SearchBudget::with_max_cost(inst.k())).unwrap();
            assert_eq!(sol.is_some(), is_k_colorable(g, k), "{g:?} k={k}");
            if let Some(sol) = sol {
                assert!(verify_multicut_solution(&inst, &sol).unwrap());
            }
        }
    }
}

#[test]
fn coloring_gadget_solution_translates() {
    let inst = gen_coloring_gadget(&clique(3), 3).unwrap();
    let sol = solve_multicut_exact(&inst, &SearchBudget::with_max_cost(2))
        .unwrap()
        .unwrap();
    assert_eq!(sol.cost(), 2);
    let (g, _) = mcvs_to_ccvs(&inst).unwrap();
    let f = multicut_solution_to_clustering(&inst, &sol).unwrap();
    assert!(is_valid_clustering(&g, &f));
    assert_eq!(f.cost(g.n()).unwrap(), 2);
}

#[test]
fn random_graphs_are_reproducible() {
    for seed in 0..20 {
        let a = gen_random(9, 0.4, 0.4, false, seed).unwrap();
        let b = gen_random(9, 0.4, 0.4, false, seed).unwrap();
        assert_eq!(write_graph(&a), write_graph(&b));
        let c = gen_random(9, 0.5, 0.5, true, seed).unwrap();
        assert!(c.is_complete());
        assert_eq!(c.neutral_count(), 0);
    }
}
