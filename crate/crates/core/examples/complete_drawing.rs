//! Complete a drawn 5-cycle to a plane 3-tree and print the witnesses.
//!
//!     cargo run --example complete_drawing

use p3tree::completer::{check_invariants, complete, Anchor};
use p3tree::format::serialize;
use p3tree::plane::embed_planar;
use p3tree::Graph;

fn main() -> p3tree::Result<()> {
    let c5 = embed_planar(&Graph::cycle(5))?;
    let c = complete(&c5, Some(Anchor::Vertex(2)))?;

    println!("added edges: {:?}", c.added);
    println!("elimination order: {:?}", c.pes.order);
    for (f, src) in c.provenance.iter().enumerate() {
        println!("  output face {f} {:?} lies in input face {src}", c.output.face(f).walks[0]);
    }
    for ch in check_invariants(&c) {
        println!("{:<26} {}", ch.name, if ch.pass { "ok" } else { "FAILED" });
    }
    println!("outer triangle: {:?}", c.output.outer_face().walks[0]);
    print!("{}", serialize(&c.output));
    Ok(())
}
