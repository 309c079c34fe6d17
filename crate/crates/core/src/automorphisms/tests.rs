use super::*;
use crate::testutil::{all_permutations, brute_force_automorphisms, cycle, path};

fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, &edges).unwrap()
}

#[test]
fn group_orders_of_small_graphs() {
    assert_eq!(aut_group(&complete(4), None).order, BigUint::from(24u32));
    assert_eq!(aut_group(&cycle(6), None).order, BigUint::from(12u32));
    assert_eq!(aut_group(&path(5), None).order, BigUint::from(2u32));
}

#[test]
fn coloured_hexagon_keeps_half_the_dihedral_group() {
    let g = cycle(6);
    let colours = [1, 2, 1, 2, 1, 2];
    let expected = brute_force_automorphisms(&g)
        .into_iter()
        .filter(|p| (0..6).all(|v| colours[v] == colours[p.image[v]]))
        .count();
    assert_eq!(expected, 6);
    let grp = aut_group(&g, Some(&colours));
    assert_eq!(grp.order, BigUint::from(6u32));
    assert_eq!(grp.orbits, vec![vec![0, 2, 4], vec![1, 3, 5]]);
}

#[test]
fn generators_are_automorphisms() {
    let petersen = crate::families::petersen();
    let grp = aut_group(&petersen, None);
    assert_eq!(grp.order, BigUint::from(120u32));
    assert!(grp.generators.iter().all(|p| p.is_automorphism_of(&petersen)));
    let all = enumerate_group(10, &grp.generators, 1000).unwrap();
    assert_eq!(all.len(), 120);
}

#[test]
fn distinguishing_examples() {
    let p3 = path(3);
    assert!(is_distinguishing(&p3, &Colouring::vertex(vec![1, 2, 2])).unwrap().is_distinguishing());

    let c4 = cycle(4);
    let v = is_distinguishing(&c4, &Colouring::vertex(vec![1, 1, 2, 2])).unwrap();
    let w = v.witness().expect("preserved by a reflection");
    // The only non-trivial dihedral element preserving the colouring.
    let preserving: Vec<_> = brute_force_automorphisms(&c4)
        .into_iter()
        .filter(|p| !p.is_identity() && p.preserves(&c4, &Colouring::vertex(vec![1, 1, 2, 2])))
        .collect();
    assert_eq!(preserving, vec![w.clone()]);
    assert_eq!(w.image, vec![1, 0, 3, 2]);

    let star = Graph::from_edge_list(&[(0, 1), (0, 2), (0, 3)]).unwrap();
    assert!(is_distinguishing(&star, &Colouring::edge(vec![1, 2, 3])).unwrap().is_distinguishing());
    let v = is_distinguishing(&star, &Colouring::edge(vec![1, 2, 2])).unwrap();
    assert_eq!(v.witness().unwrap().image, vec![0, 1, 3, 2]);
}

#[test]
fn total_colourings_use_both_layers() {
    let k2 = path(2);
    assert!(is_distinguishing(&k2, &Colouring::total(vec![1, 2], vec![3])).unwrap().is_distinguishing());
    assert!(!is_distinguishing(&k2, &Colouring::total(vec![1, 1], vec![3])).unwrap().is_distinguishing());
}

#[test]
fn incomplete_colourings_are_rejected() {
    assert!(is_distinguishing(&path(3), &Colouring::vertex(vec![1, 2])).is_err());
}

#[test]
fn motion_examples() {
    assert_eq!(motion(&complete(3)).unwrap(), Motion::Moves(2));
    assert_eq!(motion(&cycle(6)).unwrap(), Motion::Moves(4));
    // P_4 with an extra leaf on an interior vertex.
    let g = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
    assert_eq!(brute_force_automorphisms(&g).len(), 2);
    // 0 and 4 are twins, so that tree is not rigid; add a leaf to make it so.
    let rigid = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]).unwrap();
    assert_eq!(brute_force_automorphisms(&rigid).len(), 1);
    assert_eq!(motion(&rigid).unwrap(), Motion::Rigid);
    for n in 2..7 {
        assert_eq!(motion(&complete(n)).unwrap(), Motion::Moves(2));
    }
}

#[test]
fn truncation_modes() {
    let t = crate::families::double_ray(3).unwrap();
    // P_7 rooted at the centre 0; ids in BFS order: 0, 1, 2 at depth 1, ...
    let constant = Colouring::vertex(vec![1; 7]);
    assert!(truncation_distinguishing(&t, &constant, BoundaryMode::Pointwise)
        .unwrap()
        .is_distinguishing());
    assert!(!truncation_distinguishing(&t, &constant, BoundaryMode::Setwise)
        .unwrap()
        .is_distinguishing());

    let star = crate::families::regular_tree(3, 2).unwrap();
    let v = truncation_distinguishing(&star, &Colouring::vertex(vec![1; 10]), BoundaryMode::Pointwise).unwrap();
    assert!(v.is_distinguishing());

    let ray = crate::families::ray(6).unwrap();
    let rainbow = Colouring::vertex((0..7).collect());
    for mode in [BoundaryMode::Pointwise, BoundaryMode::Setwise] {
        assert!(truncation_distinguishing(&ray, &rainbow, mode).unwrap().is_distinguishing());
    }
}

#[test]
fn pointwise_mode_sees_interior_symmetry() {
    // Root with two pendant leaves and a ray: the leaves can be swapped while
    // the boundary stays fixed.
    let t = crate::families::star_one_ray(3, 4).unwrap();
    let c = Colouring::vertex(vec![1; t.graph().n()]);
    let v = truncation_distinguishing(&t, &c, BoundaryMode::Pointwise).unwrap();
    let w = v.witness().unwrap();
    assert_eq!(w.support().len(), 2);
}

#[test]
fn brute_force_agrees_on_every_small_graph() {
    for n in 1..=6 {
        for g in crate::atlas::connected_graphs(n) {
            let brute = brute_force_automorphisms(&g).len();
            assert_eq!(aut_group(&g, None).order, BigUint::from(brute), "{:?}", g.to_json_value());
        }
    }
}

#[test]
fn permutation_helpers() {
    let p = Permutation { image: vec![1, 2, 0] };
    assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
    assert_eq!(p.support(), vec![0, 1, 2]);
    assert_eq!(all_permutations(4).len(), 24);
    assert!(!Permutation { image: vec![0, 0] }.is_bijection());
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn graphs() -> impl Strategy<Value = Graph> {
        (2usize..=7).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn order_matches_brute_force(g in graphs()) {
            let brute = brute_force_automorphisms(&g).len();
            prop_assert_eq!(aut_group(&g, None).order, BigUint::from(brute));
        }

        #[test]
        fn pruning_never_changes_results(g in graphs(), colours in proptest::collection::vec(0u32..3, 7)) {
            let c = &colours[..g.n()];
            let a = aut_group_with(&g, Some(c), true);
            let b = aut_group_with(&g, Some(c), false);
            prop_assert_eq!(&a.order, &b.order);
            prop_assert_eq!(&a.orbits, &b.orbits);
        }

        #[test]
        fn orbits_match_group_closure(g in graphs()) {
            let grp = aut_group(&g, None);
            let all = enumerate_group(g.n(), &grp.generators, 10_000).unwrap();
            prop_assert_eq!(BigUint::from(all.len()), grp.order.clone());
            for orbit in &grp.orbits {
                let v = orbit[0];
                let mut images: Vec<usize> = all.iter().map(|p| p.image[v]).collect();
                images.sort();
                images.dedup();
                prop_assert_eq!(&images, orbit);
            }
        }

        #[test]
        fn distinguishing_matches_brute_force(g in graphs(), colours in proptest::collection::vec(0u32..3, 7)) {
            let c = Colouring::vertex(colours[..g.n()].to_vec());
            let brute = brute_force_automorphisms(&g)
                .into_iter()
                .any(|p| !p.is_identity() && p.preserves(&g, &c));
            let v = is_distinguishing(&g, &c).unwrap();
            prop_assert_eq!(v.is_distinguishing(), !brute);
            if let Some(w) = v.witness() {
                prop_assert!(w.is_automorphism_of(&g) && w.preserves(&g, &c) && !w.is_identity());
            }
        }

        #[test]
        fn edge_distinguishing_matches_brute_force(g in graphs(), colours in proptest::collection::vec(0u32..2, 21)) {
            let c = Colouring::edge(colours[..g.m()].to_vec());
            let brute = brute_force_automorphisms(&g)
                .into_iter()
                .any(|p| !p.is_identity() && p.preserves(&g, &c));
            prop_assert_eq!(is_distinguishing(&g, &c).unwrap().is_distinguishing(), !brute);
        }
    }
}
