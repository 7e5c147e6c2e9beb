//! Render a completed drawing to SVG, added edges dashed.
//!
//!     cargo run --example render_svg -- out.svg

use p3tree::completer::complete;
use p3tree::gen::{gen_plane_3tree, subsample_plane};
use p3tree::render::{crossing_audit, layout, svg, AUDIT_TOL};

fn main() -> p3tree::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "completion.svg".into());
    let (p, _) = gen_plane_3tree(25, 3)?;
    let input = subsample_plane(&p, 0.5, 3);
    let c = complete(&input, None)?;

    let l = layout(&c.output)?;
    let defects = crossing_audit(&c.output, &l, AUDIT_TOL);
    println!("{:?} layout, residual {:e}, {} defects", l.method, l.residual, defects.len());
    std::fs::write(&path, svg(&c.output, &l, &c.added)).expect("writable output path");
    println!("wrote {path}: {} solid, {} dashed", input.m(), c.added.len());
    Ok(())
}
