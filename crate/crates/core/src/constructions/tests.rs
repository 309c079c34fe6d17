use proptest::prelude::*;

use super::*;
use crate::atlas;
use crate::colouring::Kind;
use crate::families;
use crate::graph::Graph;
use crate::invariants::{self, Limits};
use crate::testutil::{brute_force_automorphisms, path};
use crate::truncation::Truncation;

/// Independent check: no non-identity automorphism of the finite graph
/// preserves the colouring.
fn brute_distinguishing(g: &Graph, c: &Colouring) -> bool {
    brute_force_automorphisms(g).into_iter().all(|p| {
        let identity = p.image.iter().enumerate().all(|(i, &j)| i == j);
        identity || !preserves(g, c, &p.image)
    })
}

fn preserves(g: &Graph, c: &Colouring, image: &[usize]) -> bool {
    let vertices_ok = c
        .vertex_colours
        .as_ref()
        .is_none_or(|vc| (0..g.n()).all(|v| vc[image[v]] == vc[v]));
    let edges_ok = c.edge_colours.as_ref().is_none_or(|ec| {
        g.edges()
            .enumerate()
            .all(|(e, (u, v))| ec[g.edge_id(image[u], image[v]).unwrap()] == ec[e])
    });
    vertices_ok && edges_ok
}

/// Independent check for small truncations: every automorphism fixing the
/// boundary pointwise and preserving the colouring is the identity.
fn brute_pointwise(t: &Truncation, c: &Colouring) -> bool {
    let g = t.graph();
    brute_force_automorphisms(g).into_iter().all(|p| {
        let fixes_boundary = t.boundary().into_iter().all(|b| p.image[b] == b);
        let identity = p.image.iter().enumerate().all(|(i, &j)| i == j);
        identity || !fixes_boundary || !preserves(g, c, &p.image)
    })
}

#[test]
fn edge_from_vertex_on_path_uses_farther_endpoint() {
    let g = path(5);
    let vc = Colouring::vertex(vec![1, 2, 1, 1, 2]);
    let (ec, case) = edge_from_vertex_colouring(&g, &vc).unwrap();
    assert_eq!(ec.edge_colours(), &[1, 2, 1, 2]);
    assert_eq!(case, EdgeCase::CentralVertex { centre: 2 });
    assert!(brute_distinguishing(&g, &ec));
}

#[test]
fn edge_from_vertex_on_star_copies_leaf_colours() {
    let g = families::complete_bipartite(1, 3).unwrap();
    let vc = Colouring::vertex(vec![1, 1, 2, 3]);
    let (ec, _) = edge_from_vertex_colouring(&g, &vc).unwrap();
    assert_eq!(ec.edge_colours(), &[1, 2, 3]);
}

#[test]
fn edge_from_vertex_central_edge_needs_the_extra_colour() {
    // P4 coloured 1,2,2,1 would be symmetric; 1,1,2,2 is distinguishing but
    // the farther-endpoint rule gives the mirror-symmetric 1,1,2.
    let g = path(4);
    let vc = Colouring::vertex(vec![1, 1, 2, 2]);
    let (ec, case) = edge_from_vertex_colouring(&g, &vc).unwrap();
    assert!(ec.num_colours() <= 3);
    assert!(brute_distinguishing(&g, &ec));
    assert!(matches!(case, EdgeCase::CentralEdge { .. }));
}

#[test]
fn edge_from_vertex_with_cycle() {
    // Triangle 0-1-2 with the pendant path 2-3-4.
    let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
    let limits = Limits::default();
    let d = invariants::distinguishing_value(&g, Kind::Vertex, false, &limits).unwrap();
    let (ec, case) = edge_from_vertex_colouring(&g, &d.certificate).unwrap();
    assert!(ec.num_colours() <= d.value + 1);
    assert!(brute_distinguishing(&g, &ec));
    assert_eq!(case, EdgeCase::Cycle { cycle: vec![0, 1, 2] });
}

#[test]
fn edge_from_vertex_rejects_bad_input() {
    let g = path(5);
    let symmetric = Colouring::vertex(vec![1, 2, 1, 2, 1]);
    assert!(matches!(edge_from_vertex_colouring(&g, &symmetric), Err(Error::Precondition(_))));
    let k2 = path(2);
    assert!(matches!(
        edge_from_vertex_colouring(&k2, &Colouring::vertex(vec![1, 2])),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn edge_from_vertex_on_truncated_tree() {
    let t = families::regular_tree(3, 4).unwrap();
    let vc = tree_dplus1(&t).unwrap().0;
    let (ec, case) = edge_from_vertex_colouring(&t, &vc).unwrap();
    assert!(ec.num_colours() <= vc.num_colours() + 1);
    assert!(matches!(case, EdgeCase::Ray { ref ray } if ray.len() == 5));
}

#[test]
fn exhaustive_edge_from_vertex_on_small_atlas() {
    let limits = Limits::default();
    for n in 3..=6 {
        for g in atlas::connected_graphs(n) {
            let d = invariants::distinguishing_value(&g, Kind::Vertex, false, &limits).unwrap();
            let (ec, _) = edge_from_vertex_colouring(&g, &d.certificate).unwrap();
            assert!(ec.num_colours() <= d.value + 1);
            if n <= 5 {
                assert!(brute_distinguishing(&g, &ec));
            }
        }
    }
}

#[test]
fn proper_2d1_on_petersen_and_double_ray() {
    let g = families::petersen();
    let (c, _) = proper_dist_2d1(&g).unwrap();
    assert!(c.num_colours() <= 5);
    assert!(c.is_proper(&g));
    let t = families::double_ray(8).unwrap();
    let (c, _) = proper_dist_2d1(&t).unwrap();
    assert_eq!(c.num_colours(), 3);
    assert!(c.is_proper(t.graph()));
}

#[test]
fn proper_2d1_rejects_balanced_complete_bipartite_and_c6() {
    let k33 = families::complete_bipartite(3, 3).unwrap();
    assert!(matches!(proper_dist_2d1(&k33), Err(Error::Precondition(_))));
    let c6 = families::cycle(6).unwrap();
    assert!(matches!(proper_dist_2d1(&c6), Err(Error::Precondition(_))));
}

#[test]
fn proper_2d1_on_small_atlas_matches_brute_force() {
    for n in 4..=6 {
        for g in atlas::connected_graphs(n) {
            if g.max_degree() < 3 || g.is_balanced_complete_bipartite() {
                continue;
            }
            let (c, _) = proper_dist_2d1(&g).unwrap();
            assert!(c.num_colours() < 2 * g.max_degree());
            if n <= 5 {
                assert!(brute_distinguishing(&g, &c));
            }
        }
    }
}

#[test]
fn low_degree_graphs_get_three_colours() {
    for n in [3, 5, 7, 8, 9, 10] {
        let g = families::cycle(n).unwrap();
        let (c, _) = proper_dist_2d1(&g).unwrap();
        assert!(c.num_colours() <= 3, "C_{n}");
    }
    for n in 3..9 {
        let g = path(n);
        let (c, _) = proper_dist_2d1(&g).unwrap();
        assert!(c.num_colours() <= 3);
        assert!(brute_distinguishing(&g, &c), "P_{n}");
    }
    assert!(matches!(proper_dist_2d1(&families::cycle(4).unwrap()), Err(Error::Precondition(_))));
}

#[test]
fn tree_dplus1_examples() {
    let star = families::complete_bipartite(1, 4).unwrap();
    let (c, audit) = tree_dplus1(&star).unwrap();
    assert_eq!(c.num_colours(), 5);
    assert_eq!(audit.root, 0);
    let p6 = path(6);
    let (c, _) = tree_dplus1(&p6).unwrap();
    assert!(c.num_colours() <= 3);
    assert!(brute_distinguishing(&p6, &c));
    let t = families::double_ray(6).unwrap();
    let (c, _) = tree_dplus1(&t).unwrap();
    assert_eq!(c.num_colours(), 3);
    assert!(matches!(tree_dplus1(&families::cycle(5).unwrap()), Err(Error::Precondition(_))));
}

#[test]
fn tree_dplus1_on_small_truncations_matches_brute_force() {
    for t in [
        families::regular_tree(3, 2).unwrap(),
        families::star_one_ray(3, 5).unwrap(),
        families::random_tree_min3(2, 4).unwrap(),
    ] {
        let (c, _) = tree_dplus1(&t).unwrap();
        if t.graph().n() <= 9 {
            assert!(brute_pointwise(&t, &c));
        }
    }
}

#[test]
fn tree3_schedule_on_cubic_tree() {
    let t = families::regular_tree(3, 20).unwrap();
    let (c, s) = tree_infmotion_3(&t).unwrap();
    assert_eq!(s.k, vec![3, 16]);
    assert_eq!(s.c_sizes, vec![12]);
    assert_eq!(s.horizon, 15);
    let levels: Vec<u32> = s.placements.iter().map(|p| p.level).collect();
    assert_eq!(levels, (4..=15).collect::<Vec<_>>());
    assert_eq!(c.num_colours(), 3);
    assert_eq!(c.reserved, Some(RED));
}

#[test]
fn tree3_preconditions() {
    let dr = families::double_ray(20).unwrap();
    assert!(matches!(tree_infmotion_3(&dr), Err(Error::Precondition(_))));
    let small = families::regular_tree(3, 10).unwrap();
    assert!(matches!(tree_infmotion_3(&small), Err(Error::Precondition(_))));
    let pendant = families::star_one_ray(3, 20).unwrap();
    assert!(matches!(tree_infmotion_3(&pendant), Err(Error::Precondition(_))));
}

#[test]
fn tree3_on_random_trees() {
    for seed in 0..3 {
        let probe = families::random_tree_min3(4, seed).unwrap();
        let c3 = probe.ray_origins(3).unwrap().c.len() as u32;
        let t = families::random_tree_min3(3 + c3 + 1, seed).unwrap();
        let (c, s) = tree_infmotion_3(&t).unwrap();
        assert_eq!(s.c_sizes, vec![c3 as usize]);
        assert!(c.num_colours() <= 3);
    }
}

#[test]
fn tree_delta_on_star_with_one_ray() {
    let t = families::star_one_ray(4, 12).unwrap();
    let (c, audit) = tree_delta(&t).unwrap();
    assert_eq!(c.num_colours(), 4);
    assert_eq!(audit.core, CoreKind::Path);
    assert_eq!(audit.pendant_vertices, 3);
}

#[test]
fn tree_delta_on_cubic_tree_with_pendant_leaf() {
    // Extra leaf on the root of the cubic tree of radius 16.
    let base = families::regular_tree(3, 16).unwrap();
    let g = base.graph();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.push((0, g.n()));
    let t = Truncation::new(Graph::new(g.n() + 1, &edges).unwrap(), 0, 16).unwrap();
    let (c, audit) = tree_delta(&t).unwrap();
    assert!(c.num_colours() <= 4);
    assert_eq!(audit.core, CoreKind::Branching);
    assert_eq!(audit.pendant_vertices, 1);
}

#[test]
fn tree_delta_on_ray_with_pendant_path() {
    // A ray from 0 with the path 2-11-12 hanging off vertex 2.
    let mut edges: Vec<(usize, usize)> = (0..10).map(|i| (i, i + 1)).collect();
    edges.extend([(2, 11), (11, 12)]);
    let t = Truncation::new(Graph::new(13, &edges).unwrap(), 0, 10).unwrap();
    let (c, audit) = tree_delta(&t).unwrap();
    assert!(c.num_colours() <= 3);
    assert_eq!(audit.core, CoreKind::Path);
    assert_eq!(audit.pendant_vertices, 2);
}

#[test]
fn subcubic4_on_random_subcubic_trees() {
    for seed in 0..4 {
        let probe = families::random_subcubic_tree(8, seed).unwrap();
        let c7 = probe.ray_origins(7).unwrap().c.len() as u32;
        let t = families::random_subcubic_tree(c7 + 10, seed).unwrap();
        let (c, plan) = subcubic_infmotion_4(&t).unwrap();
        assert!(c.num_colours() <= 4);
        assert_eq!(plan.stages[0].r, 7);
        assert_eq!(plan.stages[0].c_size, c7 as usize);
        plan.check(&t, &c).unwrap();
    }
}

#[test]
fn subcubic4_on_hex_lattice() {
    let t = families::hex_lattice(20).unwrap();
    let (c, plan) = subcubic_infmotion_4(&t).unwrap();
    assert!(c.num_colours() <= 4);
    assert_eq!(c.reserved, Some(BLACK));
    assert!(!plan.stages.is_empty());
}

#[test]
fn subcubic4_rejects_infeasible_first_stage_quickly() {
    let t = families::regular_tree(3, 16).unwrap();
    match subcubic_infmotion_4(&t) {
        Err(Error::Precondition(msg)) => assert!(msg.contains("C_7 has 192 vertices"), "{msg}"),
        other => panic!("expected a precondition error, got {other:?}"),
    }
}

#[test]
fn subcubic4_preconditions() {
    let t = families::regular_tree(4, 3).unwrap();
    assert!(matches!(subcubic_infmotion_4(&t), Err(Error::Precondition(_))));
    let t = families::star_one_ray(3, 20).unwrap();
    assert!(matches!(subcubic_infmotion_4(&t), Err(Error::Precondition(_))));
    let t = families::hex_lattice(10).unwrap();
    assert!(matches!(subcubic_infmotion_4(&t), Err(Error::Precondition(_))));
}

#[test]
fn total_pin_examples() {
    let limits = Limits::default();
    for g in [path(7), families::cycle(4).unwrap(), families::complete(4).unwrap()] {
        let tc = invariants::proper_chromatic(&g, Kind::Total, &limits).unwrap();
        let (c, audit) = total_dist_pin(&g, &tc.certificate).unwrap();
        assert!(c.num_colours() <= tc.value + 1);
        assert!(c.is_proper(&g));
        assert!(brute_distinguishing(&g, &c));
        assert_eq!(audit.pinned.is_empty(), audit.fresh.is_none());
    }
    // K2 with vertices 1, 2 and edge 3 is already distinguishing.
    let k2 = path(2);
    let tc = Colouring::total(vec![1, 2], vec![3]);
    let (c, audit) = total_dist_pin(&k2, &tc).unwrap();
    assert_eq!(c, tc);
    assert!(audit.pinned.is_empty());
    let improper = Colouring::total(vec![1, 1], vec![2]);
    assert!(matches!(total_dist_pin(&k2, &improper), Err(Error::Precondition(_))));
}

#[test]
fn edge_pin_ray_examples() {
    for t in [families::ray(19).unwrap(), families::double_ray(10).unwrap()] {
        let ec = greedy_edge_colouring(t.graph(), t.root()).unwrap();
        let (c, audit) = edge_dist_pin_ray(&t, &ec).unwrap();
        assert_eq!(audit.pinned.len(), 3);
        assert!(c.num_colours() <= ec.num_colours() + 1);
        assert!(c.is_proper(t.graph()));
    }
    let k4 = Truncation::new(families::complete(4).unwrap(), 0, 1).unwrap();
    let ec = greedy_edge_colouring(k4.graph(), 0).unwrap();
    assert!(edge_dist_pin_ray(&k4, &ec).is_err());
}

#[test]
fn greedy_edge_colouring_of_trees_uses_delta_colours() {
    let t = families::regular_tree(3, 5).unwrap();
    let ec = greedy_edge_colouring(t.graph(), 0).unwrap();
    assert_eq!(ec.num_colours(), 3);
    assert!(ec.is_proper(t.graph()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tree_dplus1_bound_on_random_trees(parents in prop::collection::vec(any::<prop::sample::Index>(), 1..24)) {
        let parent: Vec<u32> = std::iter::once(u32::MAX)
            .chain(parents.iter().enumerate().map(|(i, ix)| ix.index(i + 1) as u32))
            .collect();
        let g = Graph::from_parents(&parent).unwrap();
        let (c, _) = tree_dplus1(&g).unwrap();
        prop_assert!(c.num_colours() <= g.max_degree() + 1);
        prop_assert!(c.is_proper(&g));
    }

    #[test]
    fn proper_2d1_bound_on_random_graphs(n in 4usize..10, mask in any::<u64>(), extra in any::<u64>()) {
        // A random spanning tree plus random chords.
        let mut edges = Vec::new();
        for v in 1..n {
            edges.push(((mask >> (v * 3)) as usize % v, v));
        }
        for (i, (u, v)) in (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).enumerate() {
            if extra >> (i % 64) & 1 == 1 && i % 3 == 0 && !edges.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
        let g = Graph::new(n, &edges).unwrap();
        prop_assume!(g.max_degree() >= 3 && !g.is_balanced_complete_bipartite());
        let (c, _) = proper_dist_2d1(&g).unwrap();
        prop_assert!(c.num_colours() < 2 * g.max_degree());
    }
}
