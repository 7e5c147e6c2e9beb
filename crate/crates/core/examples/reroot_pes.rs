//! Growth orders of a plane 3-tree started from any of its faces.
//!
//!     cargo run --example reroot_pes

use p3tree::gen::gen_plane_3tree;
use p3tree::ktree::{reroot_pes, verify_pes};

fn main() -> p3tree::Result<()> {
    let (p, pes) = gen_plane_3tree(8, 1)?;
    println!("generated order: {:?}", pes.order);
    for f in p.faces() {
        let w = &f.walks[0];
        let r = reroot_pes(p.graph(), [w[0], w[1], w[2]])?;
        println!("from {:?}: {:?} valid={}", &w[..3], r.order, verify_pes(p.graph(), &r, true)?);
    }
    // Not a triangle of the graph.
    println!("{:?}", reroot_pes(p.graph(), [0, 1, 1]));
    Ok(())
}
