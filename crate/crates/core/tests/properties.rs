use std::collections::BTreeSet;

use proptest::prelude::*;

use p3tree::completer::{check_invariants, complete, Anchor};
use p3tree::format::{parse, serialize};
use p3tree::gen::{gen_plane_3tree, subsample_plane};
use p3tree::graph::{Edge, Graph};
use p3tree::ktree::{reroot_pes, verify_pes};
use p3tree::plane::{delete_edges_plane, embed_planar, extends, trace_rotation};
use p3tree::render::{crossing_audit, grid_layout, layout, rotation_mismatches, AUDIT_TOL};
use p3tree::tw3::{reduce_tw3, three_tree_completion, treewidth_oracle};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut es = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        es.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &es).unwrap()
        })
    })
}

/// Some rotation system satisfies the Euler relation on every component.
fn planar_by_search(g: &Graph) -> bool {
    fn perms(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            perms(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let orders: Vec<Vec<Vec<usize>>> = (0..g.n())
        .map(|v| {
            let nb = g.neighbors(v);
            if nb.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            perms(&mut nb[1..].to_vec(), &mut vec![nb[0]], &mut out);
            out
        })
        .collect();
    let mut idx = vec![0usize; g.n()];
    loop {
        let rot: Vec<Vec<usize>> = (0..g.n()).map(|v| orders[v][idx[v]].clone()).collect();
        if trace_rotation(g, &rot).is_ok() {
            return true;
        }
        let mut i = 0;
        while i < g.n() {
            idx[i] += 1;
            if idx[i] < orders[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == g.n() {
            return false;
        }
    }
}

fn search_size(g: &Graph) -> u64 {
    (0..g.n())
        .map(|v| (1..g.degree(v).max(1) as u64).product::<u64>())
        .product()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn reduction_matches_oracle(g in graph_strategy(10)) {
        let tw = treewidth_oracle(&g).unwrap();
        prop_assert_eq!(reduce_tw3(&g).is_accept(), tw <= 3);
    }

    #[test]
    fn fill_completion_is_a_three_tree(g in graph_strategy(10)) {
        prop_assume!(g.n() >= 3 && reduce_tw3(&g).is_accept());
        let f = three_tree_completion(&g).unwrap();
        prop_assert!(g.edge_set().is_subset(&f.base.edge_set()));
        prop_assert_eq!(f.base.m(), 3 * g.n() - 6);
        prop_assert!(verify_pes(&f.base, &f.pes, true).unwrap());
    }

    #[test]
    fn embedding_agrees_with_search(g in graph_strategy(6)) {
        prop_assume!(search_size(&g) <= 200_000);
        prop_assert_eq!(embed_planar(&g).is_ok(), planar_by_search(&g));
    }

    #[test]
    fn round_trip(n in 3usize..40, seed in any::<u64>(), keep in 0.0f64..=1.0) {
        let (p, _) = gen_plane_3tree(n, seed).unwrap();
        let q = subsample_plane(&p, keep, seed);
        let s = serialize(&q);
        let back = parse(&s).unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert_eq!(serialize(&back), s);
    }

    #[test]
    fn deletion_is_extended(n in 3usize..30, seed in any::<u64>(), keep in 0.0f64..=1.0) {
        let (p, _) = gen_plane_3tree(n, seed).unwrap();
        let q = subsample_plane(&p, keep, seed);
        let added: BTreeSet<Edge> = p.graph().edge_set().difference(&q.graph().edge_set()).copied().collect();
        prop_assert_eq!(&delete_edges_plane(&p, &added), &q);
        prop_assert!(extends(&p, &q, &added).unwrap());
    }

    #[test]
    fn reroot_from_every_face(n in 4usize..30, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let (p, pes) = gen_plane_3tree(n, seed).unwrap();
        prop_assert!(verify_pes(p.graph(), &pes, true).unwrap());
        let w = &p.faces()[pick.index(p.faces().len())].walks[0];
        let r = reroot_pes(p.graph(), [w[0], w[1], w[2]]).unwrap();
        prop_assert_eq!(&r.order[..3], &w[..]);
        prop_assert!(verify_pes(p.graph(), &r, true).unwrap());
    }

    #[test]
    fn completion_invariants(n in 3usize..40, seed in any::<u64>(), keep in 0.0f64..=1.0) {
        let (p, _) = gen_plane_3tree(n, seed).unwrap();
        let q = subsample_plane(&p, keep, seed ^ 1);
        let c = complete(&q, None).unwrap();
        for ch in check_invariants(&c) {
            prop_assert!(ch.pass, "{} failed", ch.name);
        }
        let l = layout(&c.output).unwrap();
        prop_assert!(crossing_audit(&c.output, &l, AUDIT_TOL).is_empty());
        prop_assert!(rotation_mismatches(&c.output, &l).is_empty());
        let g = grid_layout(&c.output).unwrap();
        prop_assert!(crossing_audit(&c.output, &g, AUDIT_TOL).is_empty());
        prop_assert!(rotation_mismatches(&c.output, &g).is_empty());
    }

    #[test]
    fn anchored_completion(n in 3usize..30, seed in any::<u64>(), keep in 0.0f64..=1.0, pick in any::<prop::sample::Index>(), use_edge in any::<bool>()) {
        let (p, _) = gen_plane_3tree(n, seed).unwrap();
        let q = subsample_plane(&p, keep, seed ^ 2);
        let w = &q.outer_face().walks[0];
        let i = pick.index(w.len());
        let anchor = if use_edge && w.len() > 1 {
            Anchor::Edge(w[i], w[(i + 1) % w.len()])
        } else {
            Anchor::Vertex(w[i])
        };
        let c = complete(&q, Some(anchor)).unwrap();
        prop_assert!(anchor.on_face(c.output.outer_face()));
        prop_assert!(extends(&c.output, &q, &c.added).unwrap());
    }
}

/// 1000 seeded random graphs on up to 15 vertices, densities spread so
/// both verdicts occur often.
#[test]
fn reduction_matches_oracle_up_to_15() {
    use rand::Rng;
    let mut r = p3tree::gen::rng(15);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..1000 {
        let n = r.gen_range(1..=15u64) as usize;
        let p: f64 = r.gen_range(0.1..0.6);
        let es: Vec<Edge> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| r.gen::<f64>() < p)
            .collect();
        let g = Graph::from_edges(n, &es).unwrap();
        let tw = treewidth_oracle(&g).unwrap();
        assert_eq!(reduce_tw3(&g).is_accept(), tw <= 3, "edges {es:?}");
        if tw <= 3 {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 100 && no > 100, "accepted {yes}, rejected {no}");
}
