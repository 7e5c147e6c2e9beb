//! Planarity testing with an embedding as output.
//!
//! Each biconnected block is embedded by incremental face placement
//! (Demoucron, Malgrange and Pertuiset): keep an embedded subgraph, compute
//! its fragments, and route a path of a fragment through a face that holds
//! all of its attachment vertices, preferring fragments with a single such
//! face. Blocks are then glued at their cut vertices and components are
//! nested side by side in one face.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{trace_walks, walk_ref, PlaneGraph, WalkRef};
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

/// Computes some plane drawing of `g`, or reports that none exists.
pub fn embed_planar(g: &Graph) -> Result<PlaneGraph> {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return Err(Error::Nonplanar(Box::new(g.clone())));
    }
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(g) {
        embed_block(g, &block, &mut rot)?;
    }
    let walks = trace_walks(g, &rot);
    let comps = g.components_avoiding(&[]);
    let mut comp_of = vec![0usize; n];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut first_walk: Vec<Option<WalkRef>> = vec![None; comps.len()];
    for w in &walks {
        first_walk[comp_of[w[0]]].get_or_insert(walk_ref(w));
    }
    if n == 0 {
        return Ok(PlaneGraph::null());
    }
    let refs: Vec<WalkRef> = first_walk.into_iter().map(Option::unwrap).collect();
    let joins = if refs.len() > 1 { vec![refs.clone()] } else { Vec::new() };
    PlaneGraph::from_parts(g.clone(), rot, &joins, refs[0])
        .map_err(|_| Error::Nonplanar(Box::new(g.clone())))
}

/// Biconnected blocks as edge lists, in an order where every block after
/// the first in its component shares a vertex with an earlier block.
fn blocks(g: &Graph) -> Vec<Vec<Edge>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut estack: Vec<Edge> = Vec::new();
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, parent, idx) = stack[top];
            if idx < g.degree(v) {
                stack[top].2 += 1;
                let w = g.neighbors(v)[idx];
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    estack.push((v, w));
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    estack.push((v, w));
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(edge(e.0, e.1));
                            if e == (parent, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    // Blocks pop out leaves-first; reverse gives a root-first order within
    // each component's block-cut tree.
    out.reverse();
    out
}

fn embed_block(g: &Graph, block: &[Edge], rot: &mut [Vec<usize>]) -> Result<()> {
    let local = if block.len() == 1 {
        let (u, v) = block[0];
        BTreeMap::from([(u, vec![v]), (v, vec![u])])
    } else {
        dmp(block).ok_or_else(|| Error::Nonplanar(Box::new(g.clone())))?
    };
    // Splice into the drawing: a vertex already drawn is the unique shared
    // cut vertex; the whole block goes into one of its angles.
    for (v, r) in local {
        if rot[v].is_empty() {
            rot[v] = r;
        } else {
            let at = 1.min(rot[v].len());
            rot[v].splice(at..at, r);
        }
    }
    Ok(())
}

/// Embeds a 2-connected edge set; returns the rotation per vertex or `None`
/// when the block is not planar.
fn dmp(block: &[Edge]) -> Option<BTreeMap<usize, Vec<usize>>> {
    let verts: BTreeSet<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
    let ids: Vec<usize> = verts.iter().copied().collect();
    let k = ids.len();
    let local_of: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); k];
    for &(u, v) in block {
        let (a, b) = (local_of[&u], local_of[&v]);
        adj[a].push(b);
        adj[b].push(a);
    }

    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut placed_v = vec![false; k];
    let mut placed_e: BTreeSet<Edge> = BTreeSet::new();

    // Initial cycle: the first edge plus a shortest detour around it.
    let (s, t) = (0, adj[0][0]);
    let detour = bfs_path(&adj, s, t, |a, b| edge(a, b) != edge(s, t), |_| true)?;
    let cycle = detour;
    let len = cycle.len();
    for i in 0..len {
        let v = cycle[i];
        rot[v] = vec![cycle[(i + len - 1) % len], cycle[(i + 1) % len]];
        placed_v[v] = true;
        placed_e.insert(edge(v, cycle[(i + 1) % len]));
    }

    while placed_e.len() < block.len() {
        let faces = walks_of(&rot);
        let frags = fragments(&adj, &placed_v, &placed_e);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let ok: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, w)| frag.attach.iter().all(|a| w.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match ok.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, ok[0]));
                    break;
                }
                _ => {
                    choice.get_or_insert((fi, ok[0]));
                }
            }
        }
        let (fi, face) = choice?;
        let frag = &frags[fi];
        let path = if frag.inner.is_empty() {
            frag.attach.clone()
        } else {
            let a1 = frag.attach[0];
            let a2 = frag.attach[1];
            let inner: BTreeSet<usize> = frag.inner.iter().copied().collect();
            // a1 -> inner vertices -> a2
            let mut p = bfs_path(
                &adj,
                a1,
                a2,
                |x, y| (x == a1 && inner.contains(&y)) || (inner.contains(&x)),
                |y| inner.contains(&y) || y == a2,
            )?;
            p.dedup();
            p
        };
        insert_path(&mut rot, &faces[face], &path);
        for w in path.windows(2) {
            placed_e.insert(edge(w[0], w[1]));
        }
        for &v in &path {
            placed_v[v] = true;
        }
    }
    Some(
        rot.into_iter()
            .enumerate()
            .map(|(i, r)| (ids[i], r.into_iter().map(|x| ids[x]).collect()))
            .collect(),
    )
}

struct Fragment {
    attach: Vec<usize>,
    inner: Vec<usize>,
}

fn fragments(adj: &[Vec<usize>], placed_v: &[bool], placed_e: &BTreeSet<Edge>) -> Vec<Fragment> {
    let k = adj.len();
    let mut out = Vec::new();
    for u in 0..k {
        for &v in &adj[u] {
            if u < v && placed_v[u] && placed_v[v] && !placed_e.contains(&edge(u, v)) {
                out.push(Fragment {
                    attach: vec![u, v],
                    inner: Vec::new(),
                });
            }
        }
    }
    let mut seen = placed_v.to_vec();
    for s in 0..k {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = vec![s];
        let mut attach = BTreeSet::new();
        let mut i = 0;
        while i < inner.len() {
            let v = inner[i];
            i += 1;
            for &w in &adj[v] {
                if placed_v[w] {
                    attach.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    inner.push(w);
                }
            }
        }
        out.push(Fragment {
            attach: attach.into_iter().collect(),
            inner,
        });
    }
    out
}

/// Shortest path `s .. t` using steps allowed by `step(from, to)` and only
/// entering vertices accepted by `enter`.
fn bfs_path(
    adj: &[Vec<usize>],
    s: usize,
    t: usize,
    step: impl Fn(usize, usize) -> bool,
    enter: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[s] = s;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if prev[w] != usize::MAX || !step(v, w) || !enter(w) {
                continue;
            }
            prev[w] = v;
            if w == t {
                let mut path = vec![t];
                let mut x = t;
                while x != s {
                    x = prev[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            q.push_back(w);
        }
    }
    None
}

fn walks_of(rot: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut out = Vec::new();
    for u in 0..rot.len() {
        for &v in &rot[u] {
            if seen.contains(&(u, v)) {
                continue;
            }
            let w = super::walk_from(rot, u, v);
            for i in 0..w.len() {
                seen.insert((w[i], w[(i + 1) % w.len()]));
            }
            out.push(w);
        }
    }
    out
}

/// Routes `path` (endpoints on `face`, interior new) through `face`.
fn insert_path(rot: &mut [Vec<usize>], face: &[usize], path: &[usize]) {
    let k = face.len();
    let (a, b) = (path[0], *path.last().unwrap());
    let ia = face.iter().position(|&x| x == a).unwrap();
    let ib = face.iter().position(|&x| x == b).unwrap();
    let after_a = face[(ia + 1) % k];
    let after_b = face[(ib + 1) % k];
    super::insert_after(&mut rot[a], after_a, path[1]);
    super::insert_after(&mut rot[b], after_b, path[path.len() - 2]);
    for i in 1..path.len() - 1 {
        rot[path[i]] = vec![path[i - 1], path[i + 1]];
    }
}
