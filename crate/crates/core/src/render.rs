//! Straight-line drawings of plane triangulations and SVG output.
//!
//! Positions come from Tutte's barycentric method: the outer triangle is
//! pinned to an equilateral frame in the unit square and every other vertex
//! sits at the average of its neighbors. Deeply stacked triangulations can
//! squeeze a barycentric drawing below any fixed tolerance; [`layout`] then
//! switches to the grid drawing of de Fraysseix, Pach and Pollack, mapped
//! onto the same frame.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::plane::PlaneGraph;

/// Largest allowed residual of the barycentric system.
pub const RESIDUAL_LIMIT: f64 = 1e-10;

/// Default tolerance of the crossing audit, in frame units.
pub const AUDIT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Tutte,
    Grid,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub pos: Vec<[f64; 2]>,
    /// Max norm of `L x - b` over both coordinates; zero for grid drawings.
    pub residual: f64,
    pub method: Method,
}

fn frame() -> [[f64; 2]; 3] {
    [[0.0, 0.0], [0.5, 3f64.sqrt() / 2.0], [1.0, 0.0]]
}

/// Barycentric placement with the outer face on the frame corners.
pub fn tutte_layout(p: &PlaneGraph) -> Result<Layout> {
    let n = p.n();
    if n < 3 || !p.is_triangulation() {
        return Err(Error::NotTriangulation);
    }
    // Outer walks run clockwise, so the corners go clockwise as well.
    let frame = frame();
    let outer = &p.outer_face().walks[0];
    let mut pos = vec![[0.0; 2]; n];
    let mut slot = vec![usize::MAX; n];
    for (k, &v) in outer.iter().enumerate() {
        pos[v] = frame[k];
    }
    let inner: Vec<usize> = (0..n).filter(|v| !outer.contains(v)).collect();
    for (i, &v) in inner.iter().enumerate() {
        slot[v] = i;
    }
    let k = inner.len();
    if k == 0 {
        return Ok(Layout {
            pos,
            residual: 0.0,
            method: Method::Tutte,
        });
    }
    let mut a = DMatrix::<f64>::zeros(k, k);
    let mut b = DMatrix::<f64>::zeros(k, 2);
    for (i, &v) in inner.iter().enumerate() {
        a[(i, i)] = p.graph().degree(v) as f64;
        for &w in p.graph().neighbors(v) {
            if slot[w] == usize::MAX {
                b[(i, 0)] += pos[w][0];
                b[(i, 1)] += pos[w][1];
            } else {
                a[(i, slot[w])] -= 1.0;
            }
        }
    }
    let x = a
        .clone()
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::Internal("singular barycentric system".into()))?;
    let residual = (&a * &x - &b).amax();
    if residual >= RESIDUAL_LIMIT {
        return Err(Error::Internal(format!("barycentric residual {residual:e}")));
    }
    for (i, &v) in inner.iter().enumerate() {
        pos[v] = [x[(i, 0)], x[(i, 1)]];
    }
    Ok(Layout {
        pos,
        residual,
        method: Method::Tutte,
    })
}

/// Canonical order for the outer triangle `[a, b, c]`: `a`, `b` first, `c`
/// last. For each later vertex returns its leftmost and rightmost earlier
/// neighbor on the contour at insertion time.
fn canonical_order(p: &PlaneGraph, a: usize, b: usize, c: usize) -> Vec<(usize, usize, usize)> {
    let n = p.n();
    let g = p.graph();
    let mut alive = vec![true; n];
    let mut contour = vec![a, c, b];
    let mut peeled = Vec::with_capacity(n);
    while peeled.len() + 3 < n {
        let pos = |w: usize, cont: &[usize]| cont.iter().position(|&x| x == w);
        let i = (1..contour.len() - 1)
            .find(|&i| {
                let v = contour[i];
                g.neighbors(v).iter().all(|&w| {
                    !alive[w] || pos(w, &contour).is_none_or(|j| j + 1 == i || j == i + 1)
                })
            })
            .expect("a triangulation has a canonical order");
        let (v, left, right) = (contour[i], contour[i - 1], contour[i + 1]);
        alive[v] = false;
        let live: Vec<usize> = p.rotation(v).iter().copied().filter(|&w| alive[w]).collect();
        let k = live.iter().position(|&w| w == left).unwrap();
        let mut path: Vec<usize> = live[k..].iter().chain(&live[..k]).copied().collect();
        if path.last() != Some(&right) {
            path.reverse();
            path.rotate_right(1);
        }
        debug_assert_eq!((path[0], path[path.len() - 1]), (left, right));
        contour.splice(i..=i, path[1..path.len() - 1].iter().copied());
        peeled.push((v, left, right));
    }
    debug_assert_eq!(contour.len(), 3);
    peeled.push((contour[1], a, b));
    peeled.reverse();
    peeled
}

/// Straight-line grid drawing by the shift method, mapped onto the frame.
pub fn grid_layout(p: &PlaneGraph) -> Result<Layout> {
    let n = p.n();
    if n < 3 || !p.is_triangulation() {
        return Err(Error::NotTriangulation);
    }
    let o = &p.outer_face().walks[0];
    let (a, b, c) = (o[0], o[1], o[2]);
    let order = canonical_order(p, a, b, c);
    let mut x = vec![0i64; n];
    let mut y = vec![0i64; n];
    let mut under: Vec<Vec<usize>> = vec![Vec::new(); n];
    let (v3, _, _) = order[0];
    x[b] = 2;
    x[v3] = 1;
    y[v3] = 1;
    for v in [a, b, v3] {
        under[v] = vec![v];
    }
    let mut contour = vec![a, v3, b];
    for &(v, left, right) in &order[1..] {
        let i = contour.iter().position(|&w| w == left).unwrap();
        let j = contour.iter().position(|&w| w == right).unwrap();
        for &w in &contour[i + 1..j] {
            for &u in &under[w] {
                x[u] += 1;
            }
        }
        for &w in &contour[j..] {
            for &u in &under[w] {
                x[u] += 2;
            }
        }
        x[v] = (x[left] + x[right] + y[right] - y[left]) / 2;
        y[v] = (x[right] - x[left] + y[left] + y[right]) / 2;
        let mut u = vec![v];
        for &w in &contour[i + 1..j] {
            u.append(&mut under[w]);
        }
        under[v] = u;
        contour.splice(i + 1..j, [v]);
    }
    // affine map taking a, b, c to the frame corners
    let f = frame();
    let src = |v: usize| [x[v] as f64, y[v] as f64];
    let (pa, pb, pc) = (src(a), src(b), src(c));
    let m = nalgebra::Matrix2::new(pb[0] - pa[0], pc[0] - pa[0], pb[1] - pa[1], pc[1] - pa[1]);
    let inv = m
        .try_inverse()
        .ok_or_else(|| Error::Internal("degenerate grid frame".into()))?;
    let pos = (0..n)
        .map(|v| {
            let q = src(v);
            let st = inv * nalgebra::Vector2::new(q[0] - pa[0], q[1] - pa[1]);
            let (s, t) = (st[0], st[1]);
            [
                f[0][0] + s * (f[1][0] - f[0][0]) + t * (f[2][0] - f[0][0]),
                f[0][1] + s * (f[1][1] - f[0][1]) + t * (f[2][1] - f[0][1]),
            ]
        })
        .collect();
    Ok(Layout {
        pos,
        residual: 0.0,
        method: Method::Grid,
    })
}

/// Tutte placement if it passes the crossing audit at [`AUDIT_TOL`],
/// otherwise the grid drawing.
pub fn layout(p: &PlaneGraph) -> Result<Layout> {
    let t = tutte_layout(p);
    if let Ok(l) = &t {
        if crossing_audit(p, l, AUDIT_TOL).is_empty() {
            return t;
        }
    }
    grid_layout(p)
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = DVector::from_column_slice(&[b[0] - a[0], b[1] - a[1]]);
    let w = DVector::from_column_slice(&[p[0] - a[0], p[1] - a[1]]);
    let t = (w.dot(&d) / d.norm_squared()).clamp(0.0, 1.0);
    (w - d * t).norm()
}

/// A defect found by [`crossing_audit`].
#[derive(Clone, Debug, PartialEq)]
pub enum Defect {
    /// Two edges without a common endpoint meet.
    Crossing(Edge, Edge),
    /// A vertex lies on (or within tolerance of) an edge it is not an end of.
    Touching(usize, Edge),
}

/// Checks that no two edges meet except at a shared endpoint. Orientation
/// tests count as decisive only beyond `tol`; anything closer is reported
/// as touching.
pub fn crossing_audit(p: &PlaneGraph, layout: &Layout, tol: f64) -> Vec<Defect> {
    let pos = &layout.pos;
    let edges = p.graph().edges();
    let mut out = Vec::new();
    for &(u, v) in &edges {
        for x in 0..p.n() {
            if x != u && x != v && point_segment_distance(pos[x], pos[u], pos[v]) <= tol {
                out.push(Defect::Touching(x, (u, v)));
            }
        }
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let o1 = orient(pos[a], pos[b], pos[c]);
            let o2 = orient(pos[a], pos[b], pos[d]);
            let o3 = orient(pos[c], pos[d], pos[a]);
            let o4 = orient(pos[c], pos[d], pos[b]);
            if o1 * o2 < 0.0 && o3 * o4 < 0.0 && [o1, o2, o3, o4].iter().all(|o| o.abs() > tol) {
                out.push(Defect::Crossing((a, b), (c, d)));
            }
        }
    }
    out
}

/// Vertices whose neighbors do not appear counterclockwise in the
/// rotation's cyclic order.
pub fn rotation_mismatches(p: &PlaneGraph, layout: &Layout) -> Vec<usize> {
    let pos = &layout.pos;
    (0..p.n())
        .filter(|&v| {
            let mut by_angle = p.rotation(v).to_vec();
            let angle = |w: usize| (pos[w][1] - pos[v][1]).atan2(pos[w][0] - pos[v][0]);
            by_angle.sort_by(|&x, &y| angle(x).total_cmp(&angle(y)));
            let r = p.rotation(v);
            let Some(s) = by_angle.iter().position(|&x| Some(&x) == r.first()) else {
                return false;
            };
            by_angle.rotate_left(s);
            by_angle != r
        })
        .collect()
}

/// SVG 1.1 picture of a triangulation. Edges in `dashed` are drawn dashed,
/// all others solid.
pub fn render_svg(p: &PlaneGraph, dashed: &BTreeSet<Edge>) -> Result<String> {
    Ok(svg(p, &layout(p)?, dashed))
}

pub fn svg(p: &PlaneGraph, layout: &Layout, dashed: &BTreeSet<Edge>) -> String {
    const SIZE: f64 = 600.0;
    const MARGIN: f64 = 30.0;
    let height = SIZE * 3f64.sqrt() / 2.0;
    let xy = |v: usize| {
        let [x, y] = layout.pos[v];
        (MARGIN + x * SIZE, MARGIN + height - y * SIZE)
    };
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#,
        w = SIZE + 2.0 * MARGIN,
        h = height + 2.0 * MARGIN
    )
    .unwrap();
    writeln!(s, r#"<g stroke="black" stroke-width="1.5">"#).unwrap();
    for (u, v) in p.graph().edges() {
        let ((x1, y1), (x2, y2)) = (xy(u), xy(v));
        let style = if dashed.contains(&(u, v)) {
            r##" class="added" stroke="#c03030" stroke-dasharray="6,4""##
        } else {
            r#" class="original""#
        };
        writeln!(
            s,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"{style}/>"#
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g font-family="sans-serif" font-size="11" text-anchor="middle">"#).unwrap();
    for v in 0..p.n() {
        let (x, y) = xy(v);
        writeln!(
            s,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="7" fill="white" stroke="black"/><text x="{x:.3}" y="{ty:.3}">{v}</text>"#,
            ty = y + 4.0
        )
        .unwrap();
    }
    writeln!(s, "</g>\n</svg>").unwrap();
    s
}
