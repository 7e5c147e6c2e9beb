//! Seeded random plane 3-trees, and thinned copies of them that serve as
//! completion inputs.
//!
//!     cargo run --example stacked_generator -- 12 7

use p3tree::gen::{gen_plane_3tree, subsample_plane};
use p3tree::ktree::{is_stacked_plane_3tree, verify_pes};

fn main() -> p3tree::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let (p, pes) = gen_plane_3tree(n, seed)?;
    println!("n = {}, m = {} (3n - 6 = {})", p.n(), p.m(), 3 * n - 6);
    println!("faces: {}", p.faces().len());
    println!("growth order valid: {}", verify_pes(p.graph(), &pes, true)?);
    println!("recognized as stacked: {}", is_stacked_plane_3tree(&p).is_some());

    for keep in [0.9, 0.6, 0.3] {
        let q = subsample_plane(&p, keep, seed);
        println!("keep {keep}: {} edges, {} faces", q.m(), q.faces().len());
    }
    Ok(())
}
