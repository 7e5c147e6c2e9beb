//! Completion of a plane partial 3-tree to a plane 3-tree on the same vertex
//! set whose drawing extends the given one.
//!
//! The recursion follows the connectivity of the input. Graphs on at most
//! four vertices are completed by search over the drawings of the triangle
//! and of `K4`. Larger graphs are split at a separator of size 0, 1 or 2
//! around an innermost part, both sides are completed, and the results are
//! glued inside a triangle of the outer side. A 3-connected graph loses the
//! last vertex of an elimination order of some 3-tree containing it; that
//! vertex comes back inside the triangle left behind.
//!
//! Every level checks its own result (edge count, triangular faces, strict
//! elimination order, extension) before returning it, and then re-designates
//! the outer face to a triangle inside the input's outer face that touches
//! the anchor, if one was requested.

use std::collections::BTreeSet;
use std::ops::AddAssign;

use crate::error::{Error, Result};
use crate::graph::{articulation_vertices, first_two_cut, Edge, Graph, VertexSet};
use crate::ktree::{reroot_pes, verify_pes, Pes};
use crate::plane::{self, extends, insert_after, Face, FaceId, PlaneGraph, Restriction};
use crate::tw3::{reduce_tw3, three_tree_completion};

/// A vertex or an edge that must end up on the outer triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Anchor {
    Vertex(usize),
    Edge(usize, usize),
}

impl Anchor {
    pub fn vertices(&self) -> Vec<usize> {
        match *self {
            Anchor::Vertex(v) => vec![v],
            Anchor::Edge(u, v) => vec![u, v],
        }
    }

    fn relabel(&self, f: impl Fn(usize) -> Option<usize>) -> Option<Anchor> {
        Some(match *self {
            Anchor::Vertex(v) => Anchor::Vertex(f(v)?),
            Anchor::Edge(u, v) => Anchor::Edge(f(u)?, f(v)?),
        })
    }

    /// Lies on the boundary of `face`: the vertex appears, or one of the
    /// edge's darts does.
    pub fn on_face(&self, face: &Face) -> bool {
        match *self {
            Anchor::Vertex(v) => face.has_vertex(v),
            Anchor::Edge(u, v) => face.has_dart((u, v)) || face.has_dart((v, u)),
        }
    }
}

/// How often each construction ran, summed over the recursion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CaseStats {
    pub direct: usize,
    pub disconnected: usize,
    pub articulation: usize,
    pub two_cut_with_edge: usize,
    pub two_cut_without_edge: usize,
    pub triconnected: usize,
    /// Parts on fewer than 3 vertices stacked into a triangle.
    pub small_parts: usize,
}

impl AddAssign for CaseStats {
    fn add_assign(&mut self, o: Self) {
        self.direct += o.direct;
        self.disconnected += o.disconnected;
        self.articulation += o.articulation;
        self.two_cut_with_edge += o.two_cut_with_edge;
        self.two_cut_without_edge += o.two_cut_without_edge;
        self.triconnected += o.triconnected;
        self.small_parts += o.small_parts;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub input: PlaneGraph,
    pub output: PlaneGraph,
    pub added: BTreeSet<Edge>,
    /// Growth order of `output`, base triangle first.
    pub pes: Pes,
    /// Output face id to the input face it lies in.
    pub provenance: Vec<FaceId>,
    pub stats: CaseStats,
}

/// One named invariant and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

/// Evaluates every invariant of a completion from scratch.
pub fn check_invariants(c: &Completion) -> Vec<Check> {
    let n = c.input.n();
    let out = &c.output;
    let inp = c.input.graph().edge_set();
    let outp = out.graph().edge_set();
    let spanning = out.n() == n
        && inp.is_subset(&outp)
        && c.added.iter().all(|e| outp.contains(e) && !inp.contains(e))
        && outp.len() == inp.len() + c.added.len();
    let size = n >= 3 && out.m() == 3 * n - 6;
    let faces = out.faces().len() == 2 * n.max(2) - 4 && out.faces().iter().all(Face::is_triangle);
    let pes = verify_pes(out.graph(), &c.pes, true).unwrap_or(false);
    let ext = spanning && extends(out, &c.input, &c.added).unwrap_or(false);
    let prov = spanning && {
        let all: VertexSet = (0..n).collect();
        out.restrict(&all, &c.added).face_map == c.provenance
    };
    vec![
        Check { name: "spanning", pass: spanning },
        Check { name: "edge count 3n-6", pass: size },
        Check { name: "triangular faces", pass: faces },
        Check { name: "strict elimination order", pass: pes },
        Check { name: "extension", pass: ext },
        Check { name: "provenance", pass: prov },
    ]
}

fn validate_anchor(g: &PlaneGraph, anchor: Option<Anchor>) -> Result<()> {
    let Some(an) = anchor else { return Ok(()) };
    for v in an.vertices() {
        g.graph().check_vertex(v)?;
    }
    if let Anchor::Edge(u, v) = an {
        if !g.graph().has_edge(u, v) {
            return Err(Error::AnchorNotOnOuterFace);
        }
    }
    if !an.on_face(g.outer_face()) {
        return Err(Error::AnchorNotOnOuterFace);
    }
    Ok(())
}

fn validate(g: &PlaneGraph, anchor: Option<Anchor>) -> Result<()> {
    if g.n() < 3 {
        return Err(Error::TooSmall(g.n()));
    }
    validate_anchor(g, anchor)?;
    if !reduce_tw3(g.graph()).is_accept() {
        return Err(Error::NotPartial3Tree);
    }
    Ok(())
}

/// Completes `g` to a plane 3-tree whose drawing extends `g`'s drawing. With
/// an anchor, the anchor lies on the outer triangle of the result.
pub fn complete(g: &PlaneGraph, anchor: Option<Anchor>) -> Result<Completion> {
    validate(g, anchor)?;
    solve(g, anchor)
}

fn solve(g: &PlaneGraph, anchor: Option<Anchor>) -> Result<Completion> {
    if g.n() <= 4 {
        return direct(g, anchor);
    }
    if !g.graph().is_connected() {
        return disconnected(g, anchor);
    }
    if let Some(&a) = articulation_vertices(g.graph())?.iter().next() {
        return articulation(g, a, anchor);
    }
    if let Some((a, b)) = first_two_cut(g.graph()) {
        return two_cut(g, a, b, anchor);
    }
    triconnected(g, anchor)
}

fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

/// Builds the completion from a rotation system on all of `g`'s vertices,
/// checks it, and picks the outer face.
fn finish(
    g: &PlaneGraph,
    rot: Vec<Vec<usize>>,
    order: Vec<usize>,
    anchor: Option<Anchor>,
    stats: CaseStats,
) -> Result<Completion> {
    let n = g.n();
    let mut es = Vec::new();
    for (v, r) in rot.iter().enumerate() {
        es.extend(r.iter().filter(|&&w| w > v).map(|&w| (v, w)));
    }
    let graph = Graph::from_edges(n, &es)?;
    let dart = (0..n)
        .find(|&v| !rot[v].is_empty())
        .map(|v| (v, rot[v][0]))
        .ok_or_else(|| internal("no edges"))?;
    let out = PlaneGraph::connected(graph, rot, dart).map_err(|e| internal(format!("glued rotation: {e}")))?;
    let added: BTreeSet<Edge> = out.graph().edge_set().difference(&g.graph().edge_set()).copied().collect();
    let all: VertexSet = (0..n).collect();
    let r = out.restrict(&all, &added);
    if r.plane.faces().len() != g.faces().len() || r.plane.with_outer(g.outer()) != *g {
        return Err(internal("restriction of the glued drawing differs from the input"));
    }
    let c = Completion {
        input: g.clone(),
        output: out,
        added,
        pes: Pes::new(order, 3),
        provenance: r.face_map,
        stats,
    };
    let c = rehost(c, anchor)?;
    // extension and provenance hold by the restriction check above
    let out = &c.output;
    if out.m() != 3 * n - 6 || !out.faces().iter().all(Face::is_triangle) {
        return Err(internal("glued drawing is not a triangulation"));
    }
    if !verify_pes(out.graph(), &c.pes, true)? {
        return Err(internal("concatenated elimination order is invalid"));
    }
    Ok(c)
}

/// Re-designates the outer face: the lowest-numbered output triangle that
/// lies in the input's outer face and touches the anchor.
pub fn rehost_outer(c: Completion, anchor: Anchor) -> Result<Completion> {
    rehost(c, Some(anchor))
}

fn rehost(mut c: Completion, anchor: Option<Anchor>) -> Result<Completion> {
    let target = c.input.outer();
    let f = (0..c.output.faces().len())
        .find(|&f| {
            c.provenance.get(f) == Some(&target)
                && anchor.is_none_or(|a| a.vertices().iter().all(|&v| c.output.face(f).has_vertex(v)))
        })
        .ok_or(Error::NoSuchFace)?;
    c.output = c.output.with_outer(f);
    Ok(c)
}

/// Triangle or `K4`: search all drawings for one that extends `g`.
fn direct(g: &PlaneGraph, anchor: Option<Anchor>) -> Result<Completion> {
    let n = g.n();
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    let full = Graph::complete(n);
    let added: BTreeSet<Edge> = full.edge_set().difference(&g.graph().edge_set()).copied().collect();
    // every cyclic order per vertex: fix the first neighbor, permute the rest
    let orders: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|v| {
            let nb: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            if nb.len() == 2 {
                vec![nb]
            } else {
                vec![vec![nb[0], nb[1], nb[2]], vec![nb[0], nb[2], nb[1]]]
            }
        })
        .collect();
    let total: usize = orders.iter().map(Vec::len).product();
    for k in 0..total {
        let mut idx = k;
        let rot: Vec<Vec<usize>> = orders
            .iter()
            .map(|o| {
                let r = o[idx % o.len()].clone();
                idx /= o.len();
                r
            })
            .collect();
        let keeps_order = (0..n).all(|v| {
            let mut r: Vec<usize> = rot[v].iter().copied().filter(|&w| g.graph().has_edge(v, w)).collect();
            if let Some(i) = r.iter().position(|&w| Some(&w) == g.rotation(v).first()) {
                r.rotate_left(i);
            }
            r == g.rotation(v)
        });
        if !keeps_order {
            continue;
        }
        let Ok(p) = PlaneGraph::connected(full.clone(), rot.clone(), (0, 1)) else {
            continue;
        };
        for f in 0..p.faces().len() {
            if extends(&p.with_outer(f), g, &added)? {
                let stats = CaseStats {
                    direct: 1,
                    ..Default::default()
                };
                return finish(g, rot, (0..n).collect(), anchor, stats);
            }
        }
    }
    Err(internal("no drawing of the complete graph extends the input"))
}

/// Sides of a split: an innermost part `G1` (component plus separator) and
/// the rest `G2`.
#[derive(Clone, Debug)]
pub struct InnerPart {
    pub component: VertexSet,
    /// Drawing induced on component plus separator, with the outer face
    /// re-designated to the face holding the rest of the graph.
    pub g1: Restriction,
    /// Drawing induced on everything but the component.
    pub g2: Restriction,
    /// Face of `g2` holding the component.
    pub f: FaceId,
}

/// Picks the component `C` of `g - sep` whose induced drawing together with
/// `sep` has every other vertex in its outer face; ties go to the lowest
/// vertex id.
pub fn select_inner_part(g: &PlaneGraph, sep: &VertexSet) -> Result<InnerPart> {
    let n = g.n();
    for &v in sep {
        g.graph().check_vertex(v)?;
    }
    let mut removed = vec![false; n];
    for &v in sep {
        removed[v] = true;
    }
    let comps = g.graph().components_avoiding(&removed);
    if comps.len() < 2 {
        return Err(Error::NotSeparating);
    }
    // Strict pass: the rest lies in G1's outer face. Fallback: in any single
    // face of G1 (then that face is designated outer).
    for strict in [true, false] {
        for comp in &comps {
            let c: VertexSet = comp.iter().copied().collect();
            let keep: VertexSet = c.union(sep).copied().collect();
            let r1 = g.induced(&keep);
            let mut host: Option<FaceId> = None;
            let ok = (0..n).filter(|v| !keep.contains(v)).all(|v| {
                let f = r1.face_map[g.some_face_at(v)];
                *host.get_or_insert(f) == f
            });
            let Some(host) = host else { continue };
            if !ok || (strict && host != r1.plane.outer()) {
                continue;
            }
            let g1 = Restriction {
                plane: r1.plane.with_outer(host),
                ..r1
            };
            let rest: VertexSet = (0..n).filter(|v| !c.contains(v)).collect();
            let g2 = g.induced(&rest);
            let f = g2.face_map[g.some_face_at(comp[0])];
            return Ok(InnerPart {
                component: c,
                g1,
                g2,
                f,
            });
        }
    }
    Err(Error::NotSeparating)
}

fn local(map: &[usize], v: usize) -> usize {
    map.binary_search(&v).expect("vertex in part")
}

fn sub_anchor(anchor: Option<Anchor>, r: &Restriction) -> Option<Anchor> {
    let a = anchor?.relabel(|v| r.map.binary_search(&v).ok())?;
    a.on_face(r.plane.outer_face()).then_some(a)
}

/// Copies a part's rotations into the global table.
fn lift(c: &Completion, map: &[usize], rot: &mut [Vec<usize>]) {
    for (v, r) in c.output.rotations().iter().enumerate() {
        rot[map[v]] = r.iter().map(|&w| map[w]).collect();
    }
}

fn lift_order<'a>(order: &'a [usize], map: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    order.iter().map(move |&v| map[v])
}

/// Output triangle of `c` (global ids) lying in input face `f`.
fn triangle_in(c: &Completion, f: FaceId, map: &[usize]) -> Result<[usize; 3]> {
    let id = c
        .provenance
        .iter()
        .position(|&p| p == f)
        .ok_or_else(|| internal("no triangle in the host face"))?;
    let w = &c.output.face(id).walks[0];
    Ok([map[w[0]], map[w[1]], map[w[2]]])
}

/// Output triangle left of the dart `(u, v)` (local ids), as `[u, v, w]` in
/// global ids.
fn triangle_at(c: &Completion, u: usize, v: usize, map: &[usize]) -> Result<[usize; 3]> {
    let f = c
        .output
        .face_of_dart(u, v)
        .ok_or_else(|| internal("missing dart"))?;
    let w = &c.output.face(f).walks[0];
    let i = w.iter().position(|&x| x == u).unwrap();
    Ok([map[u], map[w[(i + 1) % 3]], map[w[(i + 2) % 3]]])
}

/// Rotates a triangle walk to start at `v`.
fn starting_at(w: &[usize], v: usize) -> Result<[usize; 3]> {
    let i = w
        .iter()
        .position(|&x| x == v)
        .ok_or_else(|| internal("vertex not on triangle"))?;
    Ok([w[i], w[(i + 1) % 3], w[(i + 2) % 3]])
}

/// Puts one or two new vertices into the triangle `t`; the second goes into
/// the sub-triangle `t0 t1 s0`.
fn stack_small(rot: &mut [Vec<usize>], t: [usize; 3], s: &[usize]) {
    plane::stack_into(rot, t, s[0]);
    if let Some(&s1) = s.get(1) {
        plane::stack_into(rot, [t[0], t[1], s[0]], s1);
    }
}

/// Adds diagonals to the face traced as `w`. Diagonals are pairs of walk
/// positions and must not cross; each goes into the sub-face holding both
/// of its corners.
fn add_diagonals(rot: &mut [Vec<usize>], w: &[usize], diagonals: &[(usize, usize)]) {
    let mut polys: Vec<Vec<usize>> = vec![(0..w.len()).collect()];
    for &(i, j) in diagonals {
        let k = polys
            .iter()
            .position(|p| p.contains(&i) && p.contains(&j))
            .expect("diagonals do not cross");
        let p = polys.swap_remove(k);
        let mut ki = p.iter().position(|&x| x == i).unwrap();
        let mut kj = p.iter().position(|&x| x == j).unwrap();
        if ki > kj {
            std::mem::swap(&mut ki, &mut kj);
        }
        let (ci, cj) = (p[ki], p[kj]);
        let next = |k: usize| w[p[(k + 1) % p.len()]];
        insert_after(&mut rot[w[ci]], next(ki), w[cj]);
        insert_after(&mut rot[w[cj]], next(kj), w[ci]);
        polys.push(p[ki..=kj].to_vec());
        polys.push(p[kj..].iter().chain(&p[..=ki]).copied().collect());
    }
}

/// `rot[v]` rotated to start at `first`.
fn rotated(r: &[usize], first: usize) -> Vec<usize> {
    let i = r.iter().position(|&x| x == first).expect("neighbor in rotation");
    r[i..].iter().chain(&r[..i]).copied().collect()
}

/// In `rot_a`, the element just before the first member of a maximal run
/// satisfying `inside` (cyclically).
fn before_run(rot_a: &[usize], inside: impl Fn(usize) -> bool) -> Option<usize> {
    let k = rot_a.len();
    (0..k)
        .find(|&i| !inside(rot_a[i]) && inside(rot_a[(i + 1) % k]))
        .map(|i| rot_a[i])
}

/// Case: `g` is disconnected.
pub fn case_disconnected(g: &PlaneGraph, anchor: Option<Anchor>) -> Result<Completion> {
    validate(g, anchor)?;
    if g.graph().is_connected() {
        return Err(Error::NotSeparating);
    }
    disconnected(g, anchor)
}

fn disconnected(g: &PlaneGraph, anchor: Option<Anchor>) -> Result<Completion> {
    let part = select_inner_part(g, &VertexSet::new())?;
    let (r1, r2) = (&part.g1, &part.g2);
    let (n1, n2) = (r1.map.len(), r2.map.len());
    if n1 < 3 && n2 < 3 {
        return direct(g, anchor);
    }
    let mut stats = CaseStats {
        disconnected: 1,
        ..Default::default()
    };
    let mut rot = vec![Vec::new(); g.n()];
    let mut order = Vec::with_capacity(g.n());
    if n1 < 3 || n2 < 3 {
        let (big, small, host) = if n1 < 3 {
            (r2, r1, part.f)
        } else {
            (r1, r2, r1.plane.outer())
        };
        let sub = if n1 < 3 { sub_anchor(anchor, big) } else { None };
        let t = solve(&big.plane, sub)?;
        stats += t.stats;
        stats.small_parts += 1;
        lift(&t, &big.map, &mut rot);
        stack_small(&mut rot, triangle_in(&t, host, &big.map)?, &small.map);
        order.extend(lift_order(&t.pes.order, &big.map));
        order.extend(&small.map);
        return finish(g, rot, order, anchor, stats);
    }

    let t1 = solve(&r1.plane, None)?;
    let t2 = solve(&r2.plane, sub_anchor(anchor, r2))?;
    stats += t1.stats;
    stats += t2.stats;
    lift(&t1, &r1.map, &mut rot);
    lift(&t2, &r2.map, &mut rot);
    let o = &t1.output.outer_face().walks[0];
    let [a, b, c] = [r1.map[o[0]], r1.map[o[1]], r1.map[o[2]]];
    let [x, y, z] = triangle_in(&t2, part.f, &r2.map)?;
    // join the two boundaries by za, then triangulate the annulus
    insert_after(&mut rot[z], x, a);
    insert_after(&mut rot[a], b, z);
    add_diagonals(
        &mut rot,
        &[z, a, b, c, a, z, x, y],
        &[(4, 6), (1, 7), (3, 6), (2, 6), (2, 7)],
    );
    let p2 = reroot_pes(
        t2.output.graph(),
        [local(&r2.map, x), local(&r2.map, y), local(&r2.map, z)],
    )?;
    order.extend(lift_order(&t1.pes.order, &r1.map));
    order.extend(lift_order(&p2.order, &r2.map));
    finish(g, rot, order, anchor, stats)
}

/// Case: `g` is connected and `a` is a cut vertex.
pub fn case_articulation(g: &PlaneGraph, a: usize, anchor: Option<Anchor>) -> Result<Completion> {
    validate(g, anchor)?;
    g.graph().check_vertex(a)?;
    if !articulation_vertices(g.graph())?.contains(&a) {
        return Err(Error::NotArticulation(a));
    }
    articulation(g, a, anchor)
}

fn articulation(g: &PlaneGraph, a: usize, anchor: Option<Anchor>) -> Result<Completion> {
    let part = select_inner_part(g, &VertexSet::from([a]))?;
    let (r1, r2) = (&part.g1, &part.g2);
    let cset = &part.component;
    let mut stats = CaseStats {
        articulation: 1,
        ..Default::default()
    };
    let mut rot = vec![Vec::new(); g.n()];
    let mut order = Vec::with_capacity(g.n());
    let ra = g.rotation(a);
    // neighbor of a on the rest side just before the component's edges, and
    // the other way round
    let p = before_run(ra, |v| cset.contains(&v)).ok_or_else(|| internal("no rest side at a"))?;
    let q = before_run(ra, |v| !cset.contains(&v)).ok_or_else(|| internal("no component side at a"))?;
    let (a1, a2) = (local(&r1.map, a), local(&r2.map, a));

    if cset.len() == 1 || r2.map.len() == 2 {
        // one side is a single pendant vertex
        let (big, small, d, sub) = if cset.len() == 1 {
            (r2, r1, p, sub_anchor(anchor, r2))
        } else {
            (r1, r2, q, Some(Anchor::Vertex(a1)))
        };
        let t = solve(&big.plane, sub)?;
        stats += t.stats;
        stats.small_parts += 1;
        lift(&t, &big.map, &mut rot);
        let tri = triangle_at(&t, local(&big.map, a), local(&big.map, d), &big.map)?;
        let s: Vec<usize> = small.map.iter().copied().filter(|&v| v != a).collect();
        stack_small(&mut rot, tri, &s);
        order.extend(lift_order(&t.pes.order, &big.map));
        order.extend(s);
        return finish(g, rot, order, anchor, stats);
    }

    let t1 = solve(&r1.plane, Some(Anchor::Vertex(a1)))?;
    let t2 = solve(&r2.plane, sub_anchor(anchor, r2))?;
    stats += t1.stats;
    stats += t2.stats;
    lift(&t1, &r1.map, &mut rot);
    let rot1a = std::mem::take(&mut rot[a]);
    lift(&t2, &r2.map, &mut rot);
    let o = starting_at(&t1.output.outer_face().walks[0], a1)?;
    let (u1, u2) = (r1.map[o[1]], r1.map[o[2]]);
    let [_, p, w] = triangle_at(&t2, a2, local(&r2.map, p), &r2.map)?;
    // the star of a in G1 goes into the angle p..w
    let k = rot[a].iter().position(|&x| x == p).unwrap() + 1;
    let block = rotated(&rot1a, u2);
    rot[a].splice(k..k, block);
    add_diagonals(&mut rot, &[a, u1, u2, a, p, w], &[(1, 5), (2, 5), (2, 4)]);
    let p2 = reroot_pes(
        t2.output.graph(),
        [a2, local(&r2.map, w), local(&r2.map, p)],
    )?;
    order.extend(lift_order(&t1.pes.order, &r1.map));
    order.extend(lift_order(&p2.order[1..], &r2.map));
    finish(g, rot, order, anchor, stats)
}

/// Case: `g` is 2-connected and `{a, b}` separates it.
pub fn case_two_cut(g: &PlaneGraph, a: usize, b: usize, anchor: Option<Anchor>) -> Result<Completion> {
    validate(g, anchor)?;
    g.graph().check_vertex(a)?;
    g.graph().check_vertex(b)?;
    let mut removed = vec![false; g.n()];
    removed[a] = true;
    removed[b] = true;
    let two_connected = g.graph().is_connected() && articulation_vertices(g.graph())?.is_empty();
    if a == b || !two_connected || g.graph().components_avoiding(&removed).len() < 2 {
        return Err(Error::NotTwoCut(a, b));
    }
    two_cut(g, a, b, anchor)
}

/// Draws the missing edge `ab` next to the innermost side of the cut.
fn insert_cut_edge(g: &PlaneGraph, a: usize, b: usize) -> Result<PlaneGraph> {
    let part = select_inner_part(g, &VertexSet::from([a, b]))?;
    let cset = &part.component;
    let last = before_run(g.rotation(a), |v| !cset.contains(&v))
        .ok_or_else(|| internal("no component side at a"))?;
    let f = g.face_of_dart(a, last).unwrap();
    let w = &g.face(f).walks[0];
    let (ia, ib) = (
        w.iter().position(|&x| x == a).unwrap(),
        w.iter()
            .position(|&x| x == b)
            .ok_or_else(|| internal("cut pair not on a common face"))?,
    );
    let mut rot = g.rotations().to_vec();
    insert_after(&mut rot[a], w[(ia + 1) % w.len()], b);
    insert_after(&mut rot[b], w[(ib + 1) % w.len()], a);
    let mut graph = g.graph().clone();
    graph.add_edge(a, b);
    let o = &g.outer_face().walks[0];
    PlaneGraph::connected(graph, rot, (o[0], o[1]))
}

fn two_cut(g: &PlaneGraph, a: usize, b: usize, anchor: Option<Anchor>) -> Result<Completion> {
    let mut stats = CaseStats::default();
    let h = if g.graph().has_edge(a, b) {
        stats.two_cut_with_edge += 1;
        g.clone()
    } else {
        stats.two_cut_without_edge += 1;
        insert_cut_edge(g, a, b)?
    };
    let part = select_inner_part(&h, &VertexSet::from([a, b]))?;
    let (r1, r2) = (&part.g1, &part.g2);
    let (a1, b1) = (local(&r1.map, a), local(&r1.map, b));
    let (a2, b2) = (local(&r2.map, a), local(&r2.map, b));
    let t1 = solve(&r1.plane, Some(Anchor::Edge(a1, b1)))?;
    let t2 = solve(&r2.plane, sub_anchor(anchor, r2))?;
    stats += t1.stats;
    stats += t2.stats;

    // orient ab so that the component's side is on its left in G2
    let (s, t) = if r2.plane.face_of_dart(a2, b2) == Some(part.f) {
        (a, b)
    } else if r2.plane.face_of_dart(b2, a2) == Some(part.f) {
        (b, a)
    } else {
        return Err(internal("cut edge does not border the host face"));
    };
    let [_, _, x] = triangle_at(&t2, local(&r2.map, s), local(&r2.map, t), &r2.map)?;
    let o = starting_at(&t1.output.outer_face().walks[0], local(&r1.map, t))?;
    if r1.map[o[1]] != s {
        return Err(internal("outer triangle of the inner side is misoriented"));
    }
    let c = r1.map[o[2]];

    let mut rot = vec![Vec::new(); g.n()];
    lift(&t1, &r1.map, &mut rot);
    let rot1s = std::mem::take(&mut rot[s]);
    let rot1t = std::mem::take(&mut rot[t]);
    lift(&t2, &r2.map, &mut rot);
    let block_s: Vec<usize> = rotated(&rot1s, t)[1..].to_vec();
    let mut block_t = rotated(&rot1t, c);
    block_t.pop();
    let k = rot[s].iter().position(|&v| v == t).unwrap() + 1;
    rot[s].splice(k..k, block_s);
    let k = rot[t].iter().position(|&v| v == x).unwrap() + 1;
    rot[t].splice(k..k, block_t);
    add_diagonals(&mut rot, &[s, c, t, x], &[(1, 3)]);

    let p2 = reroot_pes(t2.output.graph(), [a2, b2, local(&r2.map, x)])?;
    let mut order: Vec<usize> = lift_order(&t1.pes.order, &r1.map).collect();
    order.extend(lift_order(&p2.order[2..], &r2.map));
    finish(g, rot, order, anchor, stats)
}

/// Case: `g` is 3-connected on more than 4 vertices.
pub fn case_triconnected(g: &PlaneGraph, anchor: Option<Anchor>) -> Result<Completion> {
    validate(g, anchor)?;
    if g.n() <= 4 {
        return Err(Error::TooSmall(g.n()));
    }
    triconnected(g, anchor)
}

/// Smallest triangle of `base` through the anchor.
fn anchor_triangle(base: &Graph, an: Anchor) -> Result<[usize; 3]> {
    match an {
        Anchor::Vertex(v) => {
            let nb = base.neighbors(v);
            for (i, &x) in nb.iter().enumerate() {
                if let Some(&y) = nb[i + 1..].iter().find(|&&y| base.has_edge(x, y)) {
                    return Ok([v, x, y]);
                }
            }
        }
        Anchor::Edge(u, v) => {
            if let Some(&w) = base.neighbors(u).iter().find(|&&w| base.has_edge(v, w)) {
                return Ok([u, v, w]);
            }
        }
    }
    Err(internal("anchor lies on no triangle of the 3-tree completion"))
}

fn triconnected(g: &PlaneGraph, anchor: Option<Anchor>) -> Result<Completion> {
    let n = g.n();
    let fc = three_tree_completion(g.graph())?;
    let pes = match anchor {
        None => fc.pes,
        Some(an) => reroot_pes(&fc.base, anchor_triangle(&fc.base, an)?)?,
    };
    let u = *pes.order.last().unwrap();
    let nb = g.graph().neighbors(u);
    if nb.len() != 3 || fc.base.neighbors(u) != nb {
        return Err(Error::InternalK33(u));
    }
    let mut removed = vec![false; n];
    for &v in nb {
        removed[v] = true;
    }
    let comps = g.graph().components_avoiding(&removed);
    if comps.len() != 2 || !comps.contains(&vec![u]) {
        return Err(Error::InternalK33(u));
    }

    let p: Vec<usize> = g.rotation(u).to_vec();
    let mut missing = [false; 3];
    for i in 0..3 {
        let (pi, pj) = (p[i], p[(i + 1) % 3]);
        if g.graph().has_edge(pi, pj) {
            // present edges must close the triangle u pi pj
            let f = g.face(g.face_of_dart(u, pi).unwrap());
            if !(f.is_triangle() && f.has_vertex(pj)) {
                return Err(Error::InternalK33(u));
            }
        } else {
            missing[i] = true;
        }
    }
    // remove u; the missing edges take over its slots
    let mut rot = g.rotations().to_vec();
    for i in 0..3 {
        let r = &mut rot[p[i]];
        let k = r.iter().position(|&x| x == u).unwrap();
        let mut ins = Vec::new();
        if missing[i] {
            ins.push(p[(i + 1) % 3]);
        }
        if missing[(i + 2) % 3] {
            ins.push(p[(i + 2) % 3]);
        }
        r.splice(k..=k, ins);
    }
    rot[u].clear();
    let inv = |v: usize| if v > u { v - 1 } else { v };
    let map: Vec<usize> = (0..n).filter(|&v| v != u).collect();
    let local_rot: Vec<Vec<usize>> = map
        .iter()
        .map(|&v| rot[v].iter().map(|&w| inv(w)).collect())
        .collect();
    let mut es = Vec::new();
    for (v, r) in local_rot.iter().enumerate() {
        es.extend(r.iter().filter(|&&w| w > v).map(|&w| (v, w)));
    }
    let graph = Graph::from_edges(n - 1, &es)?;
    let dart = g
        .outer_face()
        .darts()
        .find(|&(x, y)| x != u && y != u)
        .ok_or_else(|| internal("outer face lies around the removed vertex"))?;
    let h = PlaneGraph::connected(graph, local_rot, (inv(dart.0), inv(dart.1)))?;
    let sub = anchor.and_then(|an| an.relabel(|v| (v != u).then(|| inv(v))));
    let t = solve(&h, sub)?;

    let f = t.output.face(t.output.face_of_dart(inv(p[0]), inv(p[1])).unwrap());
    if !(f.is_triangle() && f.has_vertex(inv(p[2]))) {
        return Err(internal("triangle left by the removed vertex was subdivided"));
    }
    let mut rot = vec![Vec::new(); n];
    lift(&t, &map, &mut rot);
    plane::stack_into(&mut rot, [p[0], p[1], p[2]], u);
    let mut order: Vec<usize> = lift_order(&t.pes.order, &map).collect();
    order.push(u);
    let mut stats = t.stats;
    stats.triconnected += 1;
    finish(g, rot, order, anchor, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{embed_planar, WalkRef};
    use std::collections::BTreeMap;

    fn drawing(n: usize, es: &[(usize, usize)]) -> PlaneGraph {
        embed_planar(&Graph::from_edges(n, es).unwrap()).unwrap()
    }

    fn assert_valid(c: &Completion) {
        for ch in check_invariants(c) {
            assert!(ch.pass, "{} failed", ch.name);
        }
    }

    fn nested_triangles() -> PlaneGraph {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let rot = vec![vec![1, 2], vec![2, 0], vec![0, 1], vec![4, 5], vec![5, 3], vec![3, 4]];
        let joins = vec![vec![WalkRef::Dart(0, 1), WalkRef::Dart(3, 5)]];
        PlaneGraph::from_parts(g, rot, &joins, WalkRef::Dart(0, 2)).unwrap()
    }

    fn bowtie() -> PlaneGraph {
        drawing(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    }

    fn k4_minus_23() -> PlaneGraph {
        drawing(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    }

    /// Sorted degree sequence of the added edges on each side of a split.
    fn added_profile(added: &BTreeSet<Edge>, side: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for &(u, v) in added {
            let (l, r) = if side.contains(&u) { (u, v) } else { (v, u) };
            assert!(side.contains(&l) && !side.contains(&r), "edge {u}-{v} does not cross");
            *left.entry(l).or_insert(0) += 1;
            *right.entry(r).or_insert(0) += 1;
        }
        let sorted = |m: BTreeMap<usize, usize>| {
            let mut d: Vec<usize> = m.into_values().collect();
            d.sort_unstable();
            d
        };
        (sorted(left), sorted(right))
    }


    #[test]
    fn triangle_is_fixed() {
        let t = drawing(3, &[(0, 1), (1, 2), (0, 2)]);
        let c = complete(&t, None).unwrap();
        assert!(c.added.is_empty());
        assert_eq!(c.output, t);
        assert_valid(&c);
    }

    #[test]
    fn c5_gets_nine_edges() {
        let c = complete(&embed_planar(&Graph::cycle(5)).unwrap(), None).unwrap();
        assert_eq!(c.output.m(), 9);
        assert_eq!(c.added.len(), 4);
        assert_valid(&c);
    }

    #[test]
    fn generated_three_tree_is_fixed() {
        let (p, _) = crate::gen::gen_plane_3tree(20, 7).unwrap();
        let c = complete(&p, None).unwrap();
        assert!(c.added.is_empty());
        assert_eq!(c.output, p);
    }

    #[test]
    fn errors() {
        let e = drawing(2, &[(0, 1)]);
        assert_eq!(complete(&e, None).unwrap_err(), Error::TooSmall(2));
        let mut oct = Graph::complete(6);
        for (a, b) in [(0, 1), (2, 3), (4, 5)] {
            oct.remove_edge(a, b);
        }
        let oct = embed_planar(&oct).unwrap();
        assert_eq!(complete(&oct, None).unwrap_err(), Error::NotPartial3Tree);
        let t = nested_triangles();
        assert_eq!(complete(&t, Some(Anchor::Vertex(4))).unwrap_err(), Error::AnchorNotOnOuterFace);
        assert_eq!(complete(&t, Some(Anchor::Vertex(9))).unwrap_err(), Error::BadVertex { vertex: 9, n: 6 });
        assert_eq!(case_articulation(&t, 0, None).unwrap_err(), Error::DisconnectedInput);
        assert_eq!(case_articulation(&bowtie(), 1, None).unwrap_err(), Error::NotArticulation(1));
        assert_eq!(case_two_cut(&bowtie(), 1, 2, None).unwrap_err(), Error::NotTwoCut(1, 2));
    }

    #[test]
    fn two_disjoint_triangles() {
        let c = case_disconnected(&nested_triangles(), None).unwrap();
        assert_eq!(c.added.len(), 6);
        assert_eq!(c.output.m(), 12);
        // x, y, z take 3, 2, 1 connectors; so do a, b, c
        assert_eq!(added_profile(&c.added, &[0, 1, 2]), (vec![1, 2, 3], vec![1, 2, 3]));
        assert_eq!(c.stats.disconnected, 1);
        assert_valid(&c);
    }

    #[test]
    fn triangle_plus_isolated_vertex() {
        let c = complete(&drawing(4, &[(0, 1), (1, 2), (0, 2)]), None).unwrap();
        assert_eq!(c.output.graph(), &Graph::complete(4));
        assert_eq!(c.added, BTreeSet::from([(0, 3), (1, 3), (2, 3)]));
        assert_eq!(c.pes.order[3], 3);
        assert_valid(&c);
    }

    #[test]
    fn triangle_plus_isolated_edge() {
        let c = complete(&drawing(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]), None).unwrap();
        assert_eq!(c.output.m(), 9);
        assert_valid(&c);
    }

    #[test]
    fn bowtie_gets_three_edges() {
        let c = case_articulation(&bowtie(), 0, None).unwrap();
        assert_eq!(c.added.len(), 3);
        assert_eq!(c.output.m(), 9);
        // x b, x c, y c
        assert_eq!(added_profile(&c.added, &[1, 2]), (vec![1, 2], vec![1, 2]));
        assert_valid(&c);
    }

    #[test]
    fn articulation_variants() {
        let pendant = drawing(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4), (0, 5)]);
        assert_valid(&complete(&pendant, None).unwrap());
        let chain = drawing(7, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6)]);
        let c = complete(&chain, None).unwrap();
        assert_eq!(c.output.m(), 15);
        assert!(c.stats.articulation >= 2);
        assert_valid(&c);
    }

    #[test]
    fn k4_minus_edge_gets_xc() {
        let c = case_two_cut(&k4_minus_23(), 0, 1, None).unwrap();
        assert_eq!(c.added, BTreeSet::from([(2, 3)]));
        assert_eq!(c.output.graph(), &Graph::complete(4));
        assert_valid(&c);
    }

    #[test]
    fn c4_gets_its_chord() {
        let c = case_two_cut(&embed_planar(&Graph::cycle(4)).unwrap(), 0, 2, None).unwrap();
        assert!(c.added.contains(&(0, 2)));
        assert_eq!(c.output.graph(), &Graph::complete(4));
        assert_valid(&c);
    }

    #[test]
    fn two_cut_with_subdivided_side() {
        // triangles 012 and 013 glued on 01, edge 13 subdivided by 4
        let g = drawing(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (3, 4), (1, 4)]);
        let c = complete(&g, None).unwrap();
        assert_eq!(c.output.m(), 9);
        assert_valid(&c);
    }

    fn stacked5() -> Vec<Edge> {
        let mut es = Graph::complete(4).edges();
        es.extend([(0, 4), (1, 4), (3, 4)]);
        es
    }

    #[test]
    fn triconnected_three_tree_is_fixed() {
        let g = drawing(5, &stacked5());
        let c = case_triconnected(&g, None).unwrap();
        assert!(c.added.is_empty());
        assert_eq!(c.output, g);
        assert_valid(&c);
    }

    #[test]
    fn triconnected_minus_edge() {
        let es: Vec<Edge> = stacked5().into_iter().filter(|&e| e != (0, 1)).collect();
        let g = drawing(5, &es);
        let c = case_triconnected(&g, None).unwrap();
        assert_eq!(c.added.len(), 1);
        assert_valid(&c);
    }

    #[test]
    fn rehost_examples() {
        let t = drawing(3, &[(0, 1), (1, 2), (0, 2)]);
        let c = complete(&t, None).unwrap();
        let r = rehost_outer(c.clone(), Anchor::Vertex(0)).unwrap();
        assert_eq!(r.output, c.output);

        let nt = nested_triangles();
        let c = complete(&nt, Some(Anchor::Vertex(1))).unwrap();
        assert!(c.output.outer_face().has_vertex(1));
        assert!(extends(&c.output, &nt, &c.added).unwrap());

        let g = k4_minus_23();
        let f = g.face_of_dart(0, 1).unwrap();
        let g = g.with_outer(f);
        let c = complete(&g, Some(Anchor::Edge(0, 1))).unwrap();
        let o = c.output.outer_face();
        assert!(o.has_vertex(0) && o.has_vertex(1));
        assert_valid(&c);
    }

    #[test]
    fn inner_part_examples() {
        let nt = nested_triangles();
        let p = select_inner_part(&nt, &VertexSet::new()).unwrap();
        assert_eq!(p.component, VertexSet::from([3, 4, 5]));
        assert_eq!(p.g2.map, vec![0, 1, 2]);
        assert_ne!(p.f, p.g2.plane.outer());

        let p = select_inner_part(&bowtie(), &VertexSet::from([0])).unwrap();
        assert_eq!(p.component, VertexSet::from([1, 2]));
        assert_eq!(p.g1.map, vec![0, 1, 2]);
        assert_eq!(p.g2.map, vec![0, 3, 4]);

        let p = select_inner_part(&k4_minus_23(), &VertexSet::from([0, 1])).unwrap();
        assert_eq!(p.g1.map, vec![0, 1, 2]);
        assert_eq!(p.g2.map, vec![0, 1, 3]);

        assert_eq!(
            select_inner_part(&bowtie(), &VertexSet::from([1])).unwrap_err(),
            Error::NotSeparating
        );
    }
}
