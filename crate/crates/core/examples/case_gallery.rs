//! One small input per construction of the completion, with the edges each
//! adds and how often each case ran.
//!
//!     cargo run --example case_gallery

use p3tree::completer::{case_articulation, case_disconnected, case_triconnected, case_two_cut, complete};
use p3tree::plane::{embed_planar, PlaneGraph, WalkRef};
use p3tree::Graph;

fn drawing(n: usize, es: &[(usize, usize)]) -> PlaneGraph {
    embed_planar(&Graph::from_edges(n, es).unwrap()).unwrap()
}

fn main() -> p3tree::Result<()> {
    // Triangle 345 drawn inside triangle 012.
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])?;
    let rot = vec![vec![1, 2], vec![2, 0], vec![0, 1], vec![4, 5], vec![5, 3], vec![3, 4]];
    let joins = vec![vec![WalkRef::Dart(0, 1), WalkRef::Dart(3, 5)]];
    let nested = PlaneGraph::from_parts(g, rot, &joins, WalkRef::Dart(0, 2))?;
    let c = case_disconnected(&nested, None)?;
    println!("nested triangles: {:?}", c.added);

    let bowtie = drawing(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]);
    println!("bowtie at 0:      {:?}", case_articulation(&bowtie, 0, None)?.added);

    let k4e = drawing(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]);
    println!("K4 - 23 at 01:    {:?}", case_two_cut(&k4e, 0, 1, None)?.added);

    let c4 = embed_planar(&Graph::cycle(4))?;
    println!("C4 at 02:         {:?}", case_two_cut(&c4, 0, 2, None)?.added);

    let mut es = Graph::complete(4).edges();
    es.extend([(0, 4), (1, 4), (3, 4)]);
    es.retain(|&e| e != (0, 1));
    let tri = drawing(5, &es);
    println!("3-connected:      {:?}", case_triconnected(&tri, None)?.added);

    let chain = drawing(7, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6)]);
    let c = complete(&chain, None)?;
    println!("triangle chain:   {} added, cases {:?}", c.added.len(), c.stats);
    Ok(())
}
