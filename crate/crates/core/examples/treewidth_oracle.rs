//! Exact treewidth of small graphs, checked against the reduction rules.
//!
//!     cargo run --release --example treewidth_oracle

use p3tree::gen::enum_graphs;
use p3tree::tw3::{reduce_tw3, treewidth_oracle};

fn main() -> p3tree::Result<()> {
    for n in 1..=6 {
        let mut hist = [0usize; 6];
        let mut disagree = 0;
        for g in enum_graphs(n)? {
            let tw = treewidth_oracle(&g)?;
            hist[tw] += 1;
            disagree += usize::from(reduce_tw3(&g).is_accept() != (tw <= 3));
        }
        println!("n = {n}: graphs by treewidth {:?}, disagreements {disagree}", &hist[..n.max(1)]);
    }
    Ok(())
}
