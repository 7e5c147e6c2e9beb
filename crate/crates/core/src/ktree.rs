//! Perfect elimination schemes and k-tree witnesses.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::plane::PlaneGraph;

/// A vertex ordering whose first `k` vertices form the base clique. Read
/// left to right it is a growth order: every later vertex is simplicial in
/// the prefix it closes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pes {
    pub order: Vec<usize>,
    pub k: usize,
}

impl Pes {
    pub fn new(order: Vec<usize>, k: usize) -> Self {
        Pes { order, k }
    }

    pub fn base(&self) -> &[usize] {
        &self.order[..self.k.min(self.order.len())]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

fn positions(g: &Graph, order: &[usize]) -> Result<Vec<usize>> {
    if order.len() != g.n() {
        return Err(Error::NotPermutation);
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        if v >= g.n() || pos[v] != usize::MAX {
            return Err(Error::NotPermutation);
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// Checks the scheme: base is a clique and each later vertex's earlier
/// neighbors form a clique. With `strict_ktree`, the base must have exactly
/// `k` vertices and every later vertex exactly `k` earlier neighbors.
pub fn verify_pes(g: &Graph, p: &Pes, strict_ktree: bool) -> Result<bool> {
    let pos = positions(g, &p.order)?;
    let base = p.base();
    if strict_ktree && base.len() != p.k {
        return Ok(false);
    }
    if !g.is_clique(base) {
        return Ok(false);
    }
    for (i, &v) in p.order.iter().enumerate().skip(base.len()) {
        let back: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] < i).collect();
        if strict_ktree && back.len() != p.k {
            return Ok(false);
        }
        if !g.is_clique(&back) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Growth order of a 3-tree starting from the triangle `t` (in the given
/// vertex order). Works by repeatedly peeling the lowest-numbered simplicial
/// degree-3 vertex outside `t`; on a 3-tree this always ends at `t`.
pub fn reroot_pes(g: &Graph, t: [usize; 3]) -> Result<Pes> {
    let n = g.n();
    if t.iter().any(|&v| v >= n) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] || !g.is_clique(&t)
    {
        return Err(Error::NotATriangle(t));
    }
    if n < 3 || g.m() != 3 * n - 6 {
        return Err(Error::NotAThreeTree);
    }
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let protected = |v: usize| t.contains(&v);
    let mut peeled = Vec::with_capacity(n - 3);
    // Candidates are re-examined only when a neighbor is removed.
    let mut queue: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| deg[v] == 3 && !protected(v)).collect();
    while let Some(v) = queue.pop_first() {
        if !alive[v] || deg[v] != 3 {
            continue;
        }
        let nb: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
        if !g.is_clique(&nb) {
            continue;
        }
        alive[v] = false;
        peeled.push(v);
        for &w in &nb {
            deg[w] -= 1;
            if deg[w] == 3 && !protected(w) {
                queue.insert(w);
            }
        }
    }
    if peeled.len() != n - 3 {
        return Err(Error::NotAThreeTree);
    }
    let mut order = t.to_vec();
    order.extend(peeled.into_iter().rev());
    Ok(Pes::new(order, 3))
}

/// Accepts plane triangulations whose graph is a 3-tree, returning a growth
/// order from one of the faces.
pub fn is_stacked_plane_3tree(p: &PlaneGraph) -> Option<Pes> {
    if !p.is_triangulation() {
        return None;
    }
    let w = &p.faces()[0].walks[0];
    reroot_pes(p.graph(), [w[0], w[1], w[2]]).ok()
}
