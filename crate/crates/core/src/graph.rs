//! Simple undirected graphs over dense vertex ids and the connectivity
//! primitives the completion algorithm dispatches on.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Unordered edge, always stored with the smaller endpoint first.
pub type Edge = (usize, usize);

pub type VertexSet = BTreeSet<usize>;

/// Normalizes a vertex pair into an [`Edge`].
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple graph on vertices `0..n`. Adjacency lists are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Loops and out-of-range endpoints are
    /// rejected; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::BadRotation(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::BadVertex { vertex: v, n: self.n() })
        }
    }

    /// Adds `uv`; returns false if it was already present. Panics on loops.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "loop at {u}");
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                self.m += 1;
                true
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(i) => {
                self.adj[u].remove(i);
                let j = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(j);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// All edges, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().into_iter().collect()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Components of the graph with the vertices flagged in `removed`
    /// deleted. Each component is sorted; components are ordered by their
    /// smallest vertex.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = removed.to_vec();
        seen.resize(n, false);
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components_avoiding(&[]).len() <= 1
    }

    /// Graph with vertex `v` removed and the rest relabeled densely.
    pub fn without_vertex(&self, v: usize) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        induced_subgraph(self, &keep.into_iter().collect()).expect("valid subset")
    }
}

/// Partition of the vertex set into connected components.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    g.components_avoiding(&[])
        .into_iter()
        .map(|c| c.into_iter().collect())
        .collect()
}

/// Cut vertices of a connected graph (Hopcroft–Tarjan lowpoints).
pub fn articulation_vertices(g: &Graph) -> Result<VertexSet> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    Ok(cut_vertices(g, None))
}

/// Cut vertices of `g - skip`, ignoring connectivity of the input.
fn cut_vertices(g: &Graph, skip: Option<usize>) -> VertexSet {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = VertexSet::new();
    let mut time = 0;
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if Some(root) == skip || disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, parent, idx) = stack[top];
            if idx < g.adj[v].len() {
                let w = g.adj[v][idx];
                stack[top].2 += 1;
                if Some(w) == skip || w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        out.insert(parent);
                    }
                }
            }
        }
        if root_children > 1 {
            out.insert(root);
        }
    }
    out
}

/// All separating vertex pairs of a 2-connected graph, sorted.
///
/// A pair `{a, b}` separates `g` exactly when `b` is a cut vertex of
/// `g - a`, so one lowpoint pass per vertex finds every pair.
pub fn two_cuts(g: &Graph) -> Result<Vec<(usize, usize)>> {
    if g.n() < 3 || !g.is_connected() || !cut_vertices(g, None).is_empty() {
        return Err(Error::NotTwoConnected);
    }
    let mut out = Vec::new();
    for a in 0..g.n() {
        for b in cut_vertices(g, Some(a)) {
            if b > a {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// First separating pair in lexicographic order, if any. Same contract as
/// [`two_cuts`] but stops early.
pub fn first_two_cut(g: &Graph) -> Option<(usize, usize)> {
    for a in 0..g.n() {
        if let Some(&b) = cut_vertices(g, Some(a)).iter().find(|&&b| b > a) {
            return Some((a, b));
        }
    }
    None
}

/// Subgraph induced by `s`, relabeled to `0..|s|` in ascending order of the
/// original ids. The returned map sends new ids to old ids.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
    let map: Vec<usize> = s.iter().copied().collect();
    if let Some(&bad) = map.iter().find(|&&v| v >= g.n()) {
        return Err(Error::BadVertex { vertex: bad, n: g.n() });
    }
    let mut inv = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        inv[v] = i;
    }
    let mut h = Graph::empty(map.len());
    for (i, &v) in map.iter().enumerate() {
        for &w in g.neighbors(v) {
            if inv[w] != usize::MAX && inv[w] > i {
                h.add_edge(i, inv[w]);
            }
        }
    }
    Ok((h, map))
}
