#![allow(clippy::needless_range_loop)]

mod common;

use dpgraph::catalog::{all_graphs, c7_with_pendant, connected_graphs, cycle, graphs_in_range, path, random_graph};
use dpgraph::products::{geodesic_factorization, geodesic_factorization_check};
use dpgraph::verify::{check_thm1, thm1_criterion};
use dpgraph::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn same_adjacency(g: &Graph, a: &common::Adj) -> bool {
    (0..g.order()).all(|u| (0..g.order()).all(|v| g.has_edge(u, v) == a[u].contains(&v)))
}

#[test]
fn products_match_edge_rules() {
    let small = graphs_in_range(1, 4, false).unwrap();
    for g in &small {
        for h in &small {
            let lex = lex_product(g, h).unwrap();
            let cart = cart_product(g, h).unwrap();
            assert!(same_adjacency(&lex.graph, &common::lex_adj(g, h)));
            assert!(same_adjacency(&cart.graph, &common::cart_adj(g, h)));
        }
    }
}

#[test]
fn lex_distance_matches_bfs() {
    for g in graphs_in_range(2, 5, true).unwrap() {
        let gd = bfs_distances(&g);
        for h in graphs_in_range(1, 4, false).unwrap() {
            let p = lex_product(&g, &h).unwrap();
            let d = common::all_pairs(&common::lex_adj(&g, &h));
            let n = h.order();
            for a in 0..p.graph.order() {
                for b in 0..p.graph.order() {
                    if a == b {
                        continue;
                    }
                    let got = lex_distance(&gd, &h, (a / n, a % n), (b / n, b % n)).unwrap();
                    assert_eq!(Some(got), d[a][b], "{g:?} {h:?} {a} {b}");
                }
            }
        }
    }
}

#[test]
fn lex_product_connected_iff_left_connected() {
    for g in graphs_in_range(2, 4, false).unwrap() {
        for h in graphs_in_range(1, 3, false).unwrap() {
            let p = lex_product(&g, &h).unwrap();
            assert_eq!(common::connected(&common::adj(&p.graph)), is_connected(&g));
        }
    }
}

#[test]
fn lex_distance_rejects_bad_input() {
    let k1 = bfs_distances(&path(1));
    assert!(lex_distance(&k1, &path(2), (0, 0), (0, 1)).is_err());
    let split = bfs_distances(&Graph::empty(3).unwrap());
    assert!(lex_distance(&split, &path(2), (0, 0), (1, 1)).is_err());
    let p3 = bfs_distances(&path(3));
    assert!(lex_distance(&p3, &path(2), (1, 1), (1, 1)).is_err());
}

#[test]
fn cart_distance_matches_bfs_and_is_symmetric_in_factors() {
    let cat = graphs_in_range(1, 4, false).unwrap();
    for g in &cat {
        for h in &cat {
            let (m, n) = (g.order(), h.order());
            let (gd, hd) = (bfs_distances(g), bfs_distances(h));
            let d = common::all_pairs(&common::cart_adj(g, h));
            let swapped = bfs_distances(&cart_product(h, g).unwrap().graph);
            for a in 0..m * n {
                for b in 0..m * n {
                    let (u, x, v, y) = (a / n, a % n, b / n, b % n);
                    assert_eq!(cart_distance(&gd, &hd, (u, x), (v, y)), d[a][b]);
                    assert_eq!(swapped.get(x * m + u, y * m + v), d[a][b]);
                }
            }
        }
    }
}

#[test]
fn pendant_prism_shape() {
    let p = cart_product(&c7_with_pendant(), &path(2)).unwrap();
    assert_eq!(p.graph.order(), 16);
    assert_eq!(p.graph.size(), 24);
    assert!(is_connected(&p.graph));
}

/// Every walk in P3 □ P3 of length up to four between every pair.
#[test]
fn geodesic_factorization_on_grid() {
    let g = path(3);
    let p = cart_product(&g, &g).unwrap();
    let a = common::adj(&p.graph);
    let d = common::all_pairs(&a);
    let mut walks: Vec<Vec<usize>> = (0..9).map(|v| vec![v]).collect();
    let mut checked = 0;
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &walks {
            for &x in &a[*w.last().unwrap()] {
                let mut e = w.clone();
                e.push(x);
                next.push(e);
            }
        }
        for w in &next {
            let f = geodesic_factorization(&p, &g, &g, w).unwrap();
            let is_geo = d[w[0]][*w.last().unwrap()] == Some(w.len() - 1);
            assert_eq!(f.product_geodesic, is_geo, "{w:?}");
            // A product geodesic always projects onto factor geodesics.
            if is_geo {
                assert!(f.factors_geodesic, "{w:?}");
            }
            assert_eq!(geodesic_factorization_check(&p, &g, &g, w).unwrap(), f.holds());
            checked += 1;
        }
        walks = next;
    }
    assert_eq!(checked, 828);
    assert!(matches!(
        geodesic_factorization(&p, &g, &g, &[0, 8]),
        Err(Error::NotAWalk { .. })
    ));
}

#[test]
fn thm1_criterion_monotone_in_right_order() {
    for g in graphs_in_range(2, 7, true).unwrap() {
        let s = dp_spectrum(&g).unwrap();
        let mut prev = false;
        for n in 1..=6 {
            let now = thm1_criterion(&s, n).unwrap();
            assert!(!prev || now, "{g:?} n = {n}");
            prev = now;
        }
    }
}

#[test]
fn thm1_on_pendant_fixture() {
    let g = c7_with_pendant();
    let s = dp_spectrum(&g).unwrap();
    assert!(!thm1_criterion(&s, 1).unwrap());
    assert!(thm1_criterion(&s, 2).unwrap());
    let r = check_thm1(&[g], &[path(1), path(2), Graph::empty(2).unwrap()]).unwrap();
    assert!(r.holds(), "{r}");
}

#[test]
fn lex_spectrum_against_naive_for_tiny_products() {
    for g in graphs_in_range(2, 4, true).unwrap() {
        for h in all_graphs(2).unwrap().iter().chain(all_graphs(3).unwrap().iter()) {
            let p = lex_product(&g, h).unwrap();
            let naive = common::naive_spectrum(&p.graph);
            let want = naive.len() == p.graph.order();
            let crit = thm1_criterion(&dp_spectrum(&g).unwrap(), h.order()).unwrap();
            assert_eq!(crit, want, "{g:?} {h:?}");
        }
    }
}

#[test]
fn cartesian_of_sdp_factors_is_sdp() {
    for g in connected_graphs(4).unwrap() {
        for h in [path(2), path(3), cycle(3)] {
            let p = cart_product(&g, &h).unwrap();
            assert_eq!(is_sdp(&p.graph).unwrap(), is_sdp(&g).unwrap(), "{g:?} {h:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cross_and_project_round_trip(seed in any::<u64>(), a in 1u64..16, b in 1u64..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(4, 0.5, &mut rng);
        let h = random_graph(3, 0.5, &mut rng);
        let p = cart_product(&g, &h).unwrap();
        let sa = VertexSet::from_bits(4, a).unwrap();
        let sb = VertexSet::from_bits(3, b & 7).unwrap();
        prop_assume!(!sb.is_empty());
        let k = p.cross(&sa, &sb).unwrap();
        prop_assert_eq!(k.len(), sa.len() * sb.len());
        prop_assert_eq!(project(&k, &p).unwrap(), sa);
    }

    #[test]
    fn encode_decode_inverse(m in 1usize..=8, n in 1usize..=8) {
        let p = lex_product(&path(m), &path(n)).unwrap();
        for i in 0..m * n {
            let (u, x) = p.decode(i);
            prop_assert_eq!(p.encode(u, x), i);
        }
    }
}
