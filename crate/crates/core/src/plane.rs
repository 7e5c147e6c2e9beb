//! Combinatorial plane drawings.
//!
//! A drawing is a rotation system (counterclockwise neighbor cycle per
//! vertex) plus the nesting of connected components: every face is a set
//! of boundary walks, one per component it touches, and one face is
//! designated outer.
//!
//! Face tracing: after arriving at `v` along the dart `(u, v)` the walk
//! continues to the neighbor immediately clockwise from `u` around `v`,
//! i.e. the predecessor of `u` in the stored counterclockwise cycle. The
//! traced face always lies to the left of each dart, so bounded faces of a
//! straight-line drawing come out counterclockwise.

pub mod embed;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, VertexSet};

pub use embed::embed_planar;

pub type FaceId = usize;

/// Directed edge `(tail, head)`.
pub type Dart = (usize, usize);

/// Names a boundary walk: by its smallest dart, or by the vertex itself for
/// an isolated vertex (whose "walk" has no darts).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WalkRef {
    Dart(usize, usize),
    Vertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Closed walks given as vertex sequences; walk `[v0, v1, .., vk]` uses
    /// the darts `(v0, v1), .., (vk, v0)`. An isolated vertex is `[v]`.
    pub walks: Vec<Vec<usize>>,
}

impl Face {
    /// Number of darts on the boundary.
    pub fn boundary_len(&self) -> usize {
        self.walks.iter().filter(|w| w.len() > 1).map(Vec::len).sum()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.walks
            .iter()
            .filter(|w| w.len() > 1)
            .flat_map(|w| (0..w.len()).map(move |i| (w[i], w[(i + 1) % w.len()])))
    }

    pub fn vertices(&self) -> VertexSet {
        self.walks.iter().flatten().copied().collect()
    }

    pub fn is_triangle(&self) -> bool {
        self.walks.len() == 1 && self.walks[0].len() == 3 && {
            let w = &self.walks[0];
            w[0] != w[1] && w[1] != w[2] && w[0] != w[2]
        }
    }

    pub fn key(&self) -> Option<WalkRef> {
        self.walks.first().map(|w| walk_ref(w))
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.walks.iter().any(|w| w.contains(&v))
    }

    pub fn has_dart(&self, d: Dart) -> bool {
        self.darts().any(|x| x == d)
    }
}

fn walk_ref(w: &[usize]) -> WalkRef {
    if w.len() == 1 {
        WalkRef::Vertex(w[0])
    } else {
        WalkRef::Dart(w[0], w[1])
    }
}

/// Rotates a walk so that its lexicographically smallest dart comes first.
fn canonical_walk(mut w: Vec<usize>) -> Vec<usize> {
    let k = w.len();
    if k > 1 {
        let best = (0..k).min_by_key(|&i| (w[i], w[(i + 1) % k])).unwrap();
        w.rotate_left(best);
    }
    w
}

/// Rotates a cyclic sequence to start at its smallest element.
pub(crate) fn canonical_cycle(mut c: Vec<usize>) -> Vec<usize> {
    if let Some(i) = c.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i) {
        c.rotate_left(i);
    }
    c
}

/// Dense dart numbering based on the sorted adjacency lists.
#[derive(Clone, Debug)]
struct DartIndex {
    offset: Vec<usize>,
}

impl DartIndex {
    fn new(g: &Graph) -> Self {
        let mut offset = Vec::with_capacity(g.n() + 1);
        let mut acc = 0;
        for v in 0..g.n() {
            offset.push(acc);
            acc += g.degree(v);
        }
        offset.push(acc);
        DartIndex { offset }
    }

    fn id(&self, g: &Graph, u: usize, v: usize) -> usize {
        self.offset[u] + g.neighbors(u).binary_search(&v).expect("dart of the graph")
    }

    fn count(&self) -> usize {
        *self.offset.last().unwrap_or(&0)
    }
}

fn check_rotation(g: &Graph, rot: &[Vec<usize>]) -> Result<()> {
    if rot.len() != g.n() {
        return Err(Error::BadRotation(format!(
            "{} rotations for {} vertices",
            rot.len(),
            g.n()
        )));
    }
    for (v, r) in rot.iter().enumerate() {
        let mut sorted = r.clone();
        sorted.sort_unstable();
        if sorted != g.neighbors(v) {
            return Err(Error::BadRotation(format!(
                "rotation at {v} is not a cyclic order of its neighbors"
            )));
        }
    }
    Ok(())
}

/// Traces every boundary walk of a rotation system. Isolated vertices yield
/// single-vertex walks. The rotation must be a valid permutation per vertex.
pub(crate) fn trace_walks(g: &Graph, rot: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let idx = DartIndex::new(g);
    let mut pos = vec![0usize; idx.count()];
    for (v, r) in rot.iter().enumerate() {
        for (i, &u) in r.iter().enumerate() {
            pos[idx.id(g, v, u)] = i;
        }
    }
    let mut seen = vec![false; idx.count()];
    let mut walks = Vec::new();
    for u in 0..g.n() {
        if g.degree(u) == 0 {
            walks.push(vec![u]);
            continue;
        }
        for &v in g.neighbors(u) {
            let start = idx.id(g, u, v);
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                seen[idx.id(g, a, b)] = true;
                walk.push(a);
                let r = &rot[b];
                let i = pos[idx.id(g, b, a)];
                let w = r[(i + r.len() - 1) % r.len()];
                a = b;
                b = w;
                if (a, b) == (u, v) {
                    break;
                }
            }
            walks.push(walk);
        }
    }
    walks
}

/// Traces the walk containing dart `(u, v)` directly from a rotation table.
pub(crate) fn walk_from(rot: &[Vec<usize>], u: usize, v: usize) -> Vec<usize> {
    let mut walk = Vec::new();
    let (mut a, mut b) = (u, v);
    loop {
        walk.push(a);
        let r = &rot[b];
        let i = r.iter().position(|&x| x == a).expect("dart in rotation");
        let w = r[(i + r.len() - 1) % r.len()];
        a = b;
        b = w;
        if (a, b) == (u, v) {
            return walk;
        }
        debug_assert!(walk.len() <= 4 * rot.len() * rot.len() + 4, "runaway walk");
    }
}

/// Traces faces of a rotation system and checks the Euler relation
/// `n - m + f = 2` on every connected component.
pub fn trace_rotation(g: &Graph, rot: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    check_rotation(g, rot)?;
    let walks = trace_walks(g, rot);
    let comps = g.components_avoiding(&[]);
    let mut comp_of = vec![0usize; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut count = vec![0i64; comps.len()];
    for w in &walks {
        count[comp_of[w[0]]] += 1;
    }
    for (i, c) in comps.iter().enumerate() {
        let nv = c.len() as i64;
        let me: i64 = c.iter().map(|&v| g.degree(v) as i64).sum::<i64>() / 2;
        if nv - me + count[i] != 2 {
            return Err(Error::NotPlanarRotation);
        }
    }
    Ok(walks)
}

/// A plane graph: graph, rotation system, face structure and outer face.
/// Always stored in canonical form (rotations start at their smallest
/// neighbor, walks at their smallest dart, faces sorted by first walk), so
/// structural equality is drawing equality.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    faces: Vec<Face>,
    outer: FaceId,
    darts: DartIndex,
    dart_face: Vec<FaceId>,
    isolated_face: BTreeMap<usize, FaceId>,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.rotation == other.rotation
            && self.faces == other.faces
            && self.outer == other.outer
    }
}

impl Eq for PlaneGraph {}

impl PlaneGraph {
    /// Drawing of a graph whose faces are exactly the traced walks except
    /// that the walks listed together in one `joins` entry share a face.
    /// `outer` names any walk of the outer face.
    pub fn from_parts(
        graph: Graph,
        rotation: Vec<Vec<usize>>,
        joins: &[Vec<WalkRef>],
        outer: WalkRef,
    ) -> Result<Self> {
        let walks = trace_rotation(&graph, &rotation)?;
        let idx = DartIndex::new(&graph);
        let mut walk_of_dart = vec![usize::MAX; idx.count()];
        let mut walk_of_vertex = BTreeMap::new();
        for (i, w) in walks.iter().enumerate() {
            if w.len() == 1 {
                walk_of_vertex.insert(w[0], i);
            } else {
                for j in 0..w.len() {
                    walk_of_dart[idx.id(&graph, w[j], w[(j + 1) % w.len()])] = i;
                }
            }
        }
        let resolve = |r: WalkRef| -> Result<usize> {
            match r {
                WalkRef::Vertex(v) => walk_of_vertex
                    .get(&v)
                    .copied()
                    .ok_or_else(|| Error::BadRotation(format!("vertex {v} is not isolated"))),
                WalkRef::Dart(u, v) => {
                    if u < graph.n() && graph.has_edge(u, v) {
                        Ok(walk_of_dart[idx.id(&graph, u, v)])
                    } else {
                        Err(Error::BadRotation(format!("no dart {u}>{v}")))
                    }
                }
            }
        };
        let mut group = vec![usize::MAX; walks.len()];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for j in joins {
            let gid = groups.len();
            let mut members = Vec::new();
            for &r in j {
                let w = resolve(r)?;
                if group[w] != usize::MAX {
                    return Err(Error::BadRotation("walk listed in two faces".into()));
                }
                group[w] = gid;
                members.push(w);
            }
            groups.push(members);
        }
        for (w, gslot) in group.iter_mut().enumerate() {
            if *gslot == usize::MAX {
                *gslot = groups.len();
                groups.push(vec![w]);
            }
        }
        let outer_group = group[resolve(outer)?];

        // Nesting must form a tree: components and faces as nodes, walks as
        // edges.
        let comps = graph.components_avoiding(&[]);
        let mut comp_of = vec![0usize; graph.n()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let nodes = comps.len() + groups.len();
        if walks.len() + 1 != nodes {
            return Err(Error::NotPlanarRotation);
        }
        let mut parent: Vec<usize> = (0..nodes).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (w, walk) in walks.iter().enumerate() {
            let a = find(&mut parent, comp_of[walk[0]]);
            let b = find(&mut parent, comps.len() + group[w]);
            if a == b {
                return Err(Error::NotPlanarRotation);
            }
            parent[a] = b;
        }

        let walk_groups = groups
            .into_iter()
            .map(|g| g.into_iter().map(|w| walks[w].clone()).collect())
            .collect();
        Ok(Self::assemble(graph, rotation, walk_groups, outer_group))
    }

    /// Drawing of a connected graph; every walk is its own face.
    pub fn connected(graph: Graph, rotation: Vec<Vec<usize>>, outer: Dart) -> Result<Self> {
        PlaneGraph::from_parts(graph, rotation, &[], WalkRef::Dart(outer.0, outer.1))
    }

    /// Trusted constructor: `groups` partitions the traced walks into faces.
    pub(crate) fn assemble(
        graph: Graph,
        rotation: Vec<Vec<usize>>,
        groups: Vec<Vec<Vec<usize>>>,
        outer_group: usize,
    ) -> Self {
        let rotation: Vec<Vec<usize>> = rotation.into_iter().map(canonical_cycle).collect();
        let mut tagged: Vec<(Vec<Vec<usize>>, bool)> = groups
            .into_iter()
            .enumerate()
            .map(|(i, g)| {
                let mut ws: Vec<Vec<usize>> = g.into_iter().map(canonical_walk).collect();
                ws.sort_by_key(|w| walk_ref(w));
                (ws, i == outer_group)
            })
            .collect();
        tagged.sort_by_key(|(ws, _)| ws.first().map(|w| walk_ref(w)));
        let darts = DartIndex::new(&graph);
        let mut dart_face = vec![usize::MAX; darts.count()];
        let mut isolated_face = BTreeMap::new();
        let mut faces = Vec::with_capacity(tagged.len());
        let mut outer = 0;
        for (id, (walks, is_outer)) in tagged.into_iter().enumerate() {
            if is_outer {
                outer = id;
            }
            for w in &walks {
                if w.len() == 1 {
                    isolated_face.insert(w[0], id);
                } else {
                    for j in 0..w.len() {
                        dart_face[darts.id(&graph, w[j], w[(j + 1) % w.len()])] = id;
                    }
                }
            }
            faces.push(Face { id, walks });
        }
        PlaneGraph {
            graph,
            rotation,
            faces,
            outer,
            darts,
            dart_face,
            isolated_face,
        }
    }

    /// The drawing of the empty graph: a single face with no boundary.
    pub fn null() -> Self {
        Self::assemble(Graph::empty(0), Vec::new(), vec![Vec::new()], 0)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    /// Counterclockwise neighbor cycle at `v`, starting at its smallest
    /// neighbor.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn outer(&self) -> FaceId {
        self.outer
    }

    pub fn outer_face(&self) -> &Face {
        &self.faces[self.outer]
    }

    /// Face to the left of dart `(u, v)`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<FaceId> {
        if u < self.n() && self.graph.has_edge(u, v) {
            Some(self.dart_face[self.darts.id(&self.graph, u, v)])
        } else {
            None
        }
    }

    /// A face incident to `v`: its own face when isolated, otherwise the
    /// face left of its first dart.
    pub fn some_face_at(&self, v: usize) -> FaceId {
        match self.rotation[v].first() {
            Some(&w) => self.face_of_dart(v, w).unwrap(),
            None => self.isolated_face[&v],
        }
    }

    pub fn is_triangulation(&self) -> bool {
        let n = self.n();
        n >= 3 && self.m() == 3 * n - 6 && self.faces.iter().all(Face::is_triangle)
    }

    /// Same drawing with the outer face re-designated.
    pub fn with_outer(&self, f: FaceId) -> PlaneGraph {
        assert!(f < self.faces.len());
        let mut p = self.clone();
        p.outer = f;
        p
    }

    /// Restriction to the vertices in `keep` with the edges in `drop`
    /// removed. Vertices are relabeled densely in ascending order.
    pub fn restrict(&self, keep: &VertexSet, drop: &BTreeSet<Edge>) -> Restriction {
        let n = self.n();
        let mut kept = vec![false; n];
        for &v in keep {
            kept[v] = true;
        }
        let map: Vec<usize> = keep.iter().copied().collect();
        let mut inv = vec![usize::MAX; n];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        let survives =
            |u: usize, v: usize| kept[u] && kept[v] && !drop.contains(&edge(u, v));

        // Faces separated only by removed elements merge.
        let nf = self.faces.len();
        let mut parent: Vec<usize> = (0..nf).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (u, v) in self.graph.edges() {
            if !survives(u, v) {
                let a = find(&mut parent, self.face_of_dart(u, v).unwrap());
                let b = find(&mut parent, self.face_of_dart(v, u).unwrap());
                parent[a] = b;
            }
        }

        let mut sub = Graph::empty(map.len());
        let mut rot = vec![Vec::new(); map.len()];
        for (i, &v) in map.iter().enumerate() {
            for &w in &self.rotation[v] {
                if survives(v, w) {
                    rot[i].push(inv[w]);
                    if inv[w] > i {
                        sub.add_edge(i, inv[w]);
                    }
                }
            }
        }
        if map.is_empty() {
            return Restriction {
                plane: PlaneGraph::null(),
                map,
                face_map: vec![0; nf],
            };
        }

        let walks = trace_walks(&sub, &rot);
        let mut root_group: BTreeMap<usize, usize> = BTreeMap::new();
        let mut groups: Vec<Vec<Vec<usize>>> = Vec::new();
        for w in walks {
            let old = if w.len() == 1 {
                self.some_face_at(map[w[0]])
            } else {
                self.face_of_dart(map[w[0]], map[w[1]]).unwrap()
            };
            let r = find(&mut parent, old);
            let gid = *root_group.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[gid].push(w);
        }
        let outer_root = find(&mut parent, self.outer);
        let outer_group = root_group[&outer_root];
        let reps: Vec<WalkRef> = groups.iter().map(|g| walk_ref(&g[0])).collect();
        let plane = PlaneGraph::assemble(sub, rot, groups, outer_group);
        let group_face: Vec<FaceId> = reps
            .into_iter()
            .map(|r| match r {
                WalkRef::Vertex(v) => plane.isolated_face[&v],
                WalkRef::Dart(u, v) => plane.face_of_dart(u, v).unwrap(),
            })
            .collect();
        let face_map = (0..nf)
            .map(|f| {
                let r = find(&mut parent, f);
                group_face[root_group[&r]]
            })
            .collect();
        Restriction {
            plane,
            map,
            face_map,
        }
    }

    /// Restriction to the vertices in `keep` (all surviving edges kept).
    pub fn induced(&self, keep: &VertexSet) -> Restriction {
        self.restrict(keep, &BTreeSet::new())
    }
}

/// Result of restricting a drawing.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub plane: PlaneGraph,
    /// New vertex id to old vertex id.
    pub map: Vec<usize>,
    /// Old face id to the id of the restricted face containing it.
    pub face_map: Vec<FaceId>,
}

/// Faces of a drawing (already validated at construction).
pub fn trace_faces(p: &PlaneGraph) -> Vec<Face> {
    p.faces().to_vec()
}

/// Removes `drop` from the drawing, keeping rotations in order.
pub fn delete_edges_plane(p: &PlaneGraph, drop: &BTreeSet<Edge>) -> PlaneGraph {
    let all: VertexSet = (0..p.n()).collect();
    p.restrict(&all, drop).plane
}

/// True iff deleting `added` from `big` reproduces `small` exactly:
/// same rotations, same face nesting, same outer face.
pub fn extends(big: &PlaneGraph, small: &PlaneGraph, added: &BTreeSet<Edge>) -> Result<bool> {
    if big.n() != small.n() {
        return Err(Error::VertexMismatch(big.n(), small.n()));
    }
    let mut expect = small.graph().clone();
    for &(u, v) in added {
        if u >= big.n() || v >= big.n() || u == v || !expect.add_edge(u, v) {
            return Ok(false);
        }
    }
    if &expect != big.graph() {
        return Ok(false);
    }
    Ok(&delete_edges_plane(big, added) == small)
}

/// The face of `p` restricted to `h` whose region contains the connected
/// vertex set `c`.
pub fn locate_component_face(p: &PlaneGraph, h: &VertexSet, c: &VertexSet) -> Result<FaceId> {
    if c.is_empty() || !h.is_disjoint(c) {
        return Err(Error::SplitAcrossFaces);
    }
    let r = p.induced(h);
    let mut found = None;
    for &v in c {
        let f = r.face_map[p.some_face_at(v)];
        if *found.get_or_insert(f) != f {
            return Err(Error::SplitAcrossFaces);
        }
    }
    Ok(found.unwrap())
}

/// Inserts `new` immediately counterclockwise after `after` in a rotation.
pub(crate) fn insert_after(r: &mut Vec<usize>, after: usize, new: usize) {
    match r.iter().position(|&x| x == after) {
        Some(i) => r.insert(i + 1, new),
        None => {
            debug_assert!(r.is_empty(), "{after} not in rotation {r:?}");
            r.push(new)
        }
    }
}

/// Places a new vertex `v` inside the triangular face traced as
/// `[t0, t1, t2]`, joined to all three corners.
pub(crate) fn stack_into(rot: &mut [Vec<usize>], t: [usize; 3], v: usize) {
    for i in 0..3 {
        insert_after(&mut rot[t[i]], t[(i + 1) % 3], v);
    }
    rot[v] = t.to_vec();
}
