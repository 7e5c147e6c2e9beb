//! Planarity testing with an embedding, edge deletion, and the extension
//! check that ties a completion to its input.
//!
//!     cargo run --example embed_and_extend

use std::collections::BTreeSet;

use p3tree::format::{parse_edge_list, serialize};
use p3tree::plane::{delete_edges_plane, embed_planar, extends};
use p3tree::Graph;

fn main() -> p3tree::Result<()> {
    let k4 = embed_planar(&Graph::complete(4))?;
    println!("K4 faces: {:?}", k4.faces().iter().map(|f| &f.walks[0]).collect::<Vec<_>>());

    let drop = BTreeSet::from([(2, 3)]);
    let smaller = delete_edges_plane(&k4, &drop);
    println!("K4 extends K4 - 23: {}", extends(&k4, &smaller, &drop)?);
    println!("with the wrong edge set: {}", extends(&k4, &smaller, &BTreeSet::from([(0, 1)]))?);

    match embed_planar(&Graph::complete(5)) {
        Err(e) => println!("K5: {e}"),
        Ok(_) => unreachable!(),
    }

    let house = parse_edge_list("n 5\n0 1\n1 2\n2 3\n3 0\n2 4\n3 4\n")?;
    print!("{}", serialize(&house));
    Ok(())
}
