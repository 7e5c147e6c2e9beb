//! Treewidth-3 recognition by reduction rules, with the trace that drives
//! the completion pipeline.
//!
//!     cargo run --example recognize_tw3

use p3tree::tw3::{reduce_tw3, three_tree_completion, Rule, Verdict};
use p3tree::Graph;

fn cube() -> Graph {
    let es: Vec<_> = (0..8usize)
        .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
        .filter(|(u, v)| u < v)
        .collect();
    Graph::from_edges(8, &es).unwrap()
}

fn octahedron() -> Graph {
    let mut g = Graph::complete(6);
    for (a, b) in [(0, 1), (2, 3), (4, 5)] {
        g.remove_edge(a, b);
    }
    g
}

fn main() {
    for (name, g) in [("cube", cube()), ("octahedron", octahedron()), ("C7", Graph::cycle(7))] {
        match reduce_tw3(&g) {
            Verdict::Accept(trace) => {
                println!("{name}: treewidth <= 3");
                for s in &trace.steps {
                    println!("  {:?}: remove {:?}, fill {:?}", s.rule, s.removed, s.fill);
                }
                println!("  cube steps: {}", trace.count(Rule::Cube));
                let f = three_tree_completion(&g).unwrap();
                println!("  3-tree completion adds {} edges, order {:?}", f.fill.len(), f.pes.order);
            }
            Verdict::Reject { remainder, map } => {
                println!("{name}: rejected, stuck on {} vertices {map:?}", remainder.n());
            }
        }
    }
}
