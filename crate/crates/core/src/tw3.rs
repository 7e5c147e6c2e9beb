//! Recognition of graphs of treewidth at most 3 by safe reductions, plus
//! completion of accepted graphs to 3-trees.
//!
//! The reduction set is the classical one for partial 3-trees: remove
//! vertices of degree at most 3 while filling their neighborhoods, with two
//! extra rules (buddy and cube) for configurations where no single vertex can
//! be removed safely. Every rule turns the graph into a minor of itself, so a
//! rejection is a certificate of treewidth at least 4 once no rule applies.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};
use crate::ktree::Pes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Degree 0.
    Islet,
    /// Degree 1.
    Twig,
    /// Degree 2; fills the edge between the neighbors.
    Series,
    /// Degree 3 with at least one edge among the neighbors.
    Triangle,
    /// Two degree-3 vertices with the same neighborhood.
    Buddy,
    /// A cube corner: degree-3 center `v` with independent degree-3
    /// neighbors that pairwise share a second neighbor.
    Cube,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    /// Removed vertices in elimination order.
    pub removed: Vec<usize>,
    /// Edges added to the remaining graph.
    pub fill: Vec<Edge>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    /// All vertices in the order they were removed.
    pub fn elimination_order(&self) -> Vec<usize> {
        self.steps.iter().flat_map(|s| s.removed.iter().copied()).collect()
    }

    pub fn fill(&self) -> BTreeSet<Edge> {
        self.steps.iter().flat_map(|s| s.fill.iter().copied()).collect()
    }

    pub fn count(&self, rule: Rule) -> usize {
        self.steps.iter().filter(|s| s.rule == rule).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept(ReductionTrace),
    /// Irreducible remainder (minimum degree 4 or no applicable rule),
    /// relabeled densely; `map` gives original ids.
    Reject { remainder: Graph, map: Vec<usize> },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept(_))
    }
}

struct Work {
    adj: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
    left: usize,
}

impl Work {
    fn new(g: &Graph) -> Self {
        Work {
            adj: (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect(),
            alive: vec![true; g.n()],
            left: g.n(),
        }
    }

    fn deg(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn nb(&self, v: usize) -> Vec<usize> {
        self.adj[v].iter().copied().collect()
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    fn remove(&mut self, v: usize) {
        for w in std::mem::take(&mut self.adj[v]) {
            self.adj[w].remove(&v);
        }
        self.alive[v] = false;
        self.left -= 1;
    }

    /// Makes `vs` a clique, returning the new edges.
    fn fill(&mut self, vs: &[usize]) -> Vec<Edge> {
        let mut out = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if self.adj[vs[i]].insert(vs[j]) {
                    self.adj[vs[j]].insert(vs[i]);
                    out.push(edge(vs[i], vs[j]));
                }
            }
        }
        out
    }

    fn missing(&self, vs: &[usize]) -> usize {
        let mut k = 0;
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !self.adjacent(vs[i], vs[j]) {
                    k += 1;
                }
            }
        }
        k
    }

    fn alive_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(|&v| self.alive[v])
    }

    /// Picks the next step without applying it.
    fn choose(&self) -> Option<(Rule, Vec<usize>)> {
        // Simplicial removals first, they add nothing.
        for v in self.alive_ids() {
            let d = self.deg(v);
            if d <= 3 && self.missing(&self.nb(v)) == 0 {
                let rule = [Rule::Islet, Rule::Twig, Rule::Series, Rule::Triangle][d];
                return Some((rule, vec![v]));
            }
        }
        for v in self.alive_ids() {
            if self.deg(v) == 2 {
                return Some((Rule::Series, vec![v]));
            }
        }
        for v in self.alive_ids() {
            if self.deg(v) == 3 && self.missing(&self.nb(v)) < 3 {
                return Some((Rule::Triangle, vec![v]));
            }
        }
        for v in self.alive_ids() {
            if self.deg(v) != 3 {
                continue;
            }
            for w in self.alive_ids().filter(|&w| w > v) {
                if self.deg(w) == 3 && self.adj[v] == self.adj[w] {
                    return Some((Rule::Buddy, vec![v, w]));
                }
            }
        }
        for v in self.alive_ids() {
            if let Some(corner) = self.cube_at(v) {
                return Some((Rule::Cube, corner));
            }
        }
        None
    }

    /// `[a, b, c, v]` when `v` is the center of a cube configuration.
    fn cube_at(&self, v: usize) -> Option<Vec<usize>> {
        if self.deg(v) != 3 {
            return None;
        }
        let abc = self.nb(v);
        if self.missing(&abc) != 3 || abc.iter().any(|&x| self.deg(x) != 3) {
            return None;
        }
        let pairs: Vec<BTreeSet<usize>> = abc
            .iter()
            .map(|&x| self.adj[x].iter().copied().filter(|&y| y != v).collect())
            .collect();
        let outer: BTreeSet<usize> = pairs.iter().flatten().copied().collect();
        if outer.len() == 3 && pairs[0] != pairs[1] && pairs[1] != pairs[2] && pairs[0] != pairs[2]
        {
            let mut out = abc;
            out.push(v);
            Some(out)
        } else {
            None
        }
    }

    fn apply(&mut self, rule: Rule, vs: &[usize]) -> Vec<Edge> {
        match rule {
            Rule::Cube => {
                let outer: BTreeSet<usize> = vs[..3]
                    .iter()
                    .flat_map(|&x| self.adj[x].iter().copied())
                    .filter(|&y| y != vs[3])
                    .collect();
                for &x in vs {
                    self.remove(x);
                }
                self.fill(&outer.into_iter().collect::<Vec<_>>())
            }
            _ => {
                let nb = self.nb(vs[0]);
                for &x in vs {
                    self.remove(x);
                }
                self.fill(&nb)
            }
        }
    }
}

/// Runs the reduction to completion.
pub fn reduce_tw3(g: &Graph) -> Verdict {
    let mut w = Work::new(g);
    let mut trace = ReductionTrace::default();
    while w.left > 0 {
        let Some((rule, removed)) = w.choose() else {
            let keep: crate::graph::VertexSet = w.alive_ids().collect();
            let mut rem = Graph::empty(g.n());
            for v in w.alive_ids() {
                for &x in &w.adj[v] {
                    if v < x {
                        rem.add_edge(v, x);
                    }
                }
            }
            let (remainder, map) = crate::graph::induced_subgraph(&rem, &keep).expect("ids in range");
            return Verdict::Reject { remainder, map };
        };
        let fill = w.apply(rule, &removed);
        trace.steps.push(Step {
            rule,
            removed,
            fill,
        });
    }
    Verdict::Accept(trace)
}

pub fn is_partial_3tree(g: &Graph) -> bool {
    reduce_tw3(g).is_accept()
}

/// A spanning 3-tree containing the input graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillCompletion {
    pub base: Graph,
    /// Edges of `base` that are not edges of the input.
    pub fill: BTreeSet<Edge>,
    pub pes: Pes,
}

/// Completes a partial 3-tree on at least 3 vertices to a 3-tree. When the
/// input already is a 3-tree, the fill is empty.
pub fn three_tree_completion(g: &Graph) -> Result<FillCompletion> {
    let n = g.n();
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    let Verdict::Accept(trace) = reduce_tw3(g) else {
        return Err(Error::NotPartial3Tree);
    };
    let mut order = trace.elimination_order();
    order.reverse();

    // Chordal completion by the elimination game along the trace order.
    let mut h: Vec<BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for &v in order.iter().rev() {
        let back: Vec<usize> = h[v].iter().copied().filter(|&w| pos[w] < pos[v]).collect();
        for i in 0..back.len() {
            for j in i + 1..back.len() {
                h[back[i]].insert(back[j]);
                h[back[j]].insert(back[i]);
            }
        }
    }

    // Pad to a 3-tree: each vertex attaches to a triangle covering its
    // earlier neighbors.
    let mut base = Graph::empty(n);
    let (u0, u1, u2) = (order[0], order[1], order[2]);
    base.add_edge(u0, u1);
    base.add_edge(u0, u2);
    base.add_edge(u1, u2);
    let mut triangles: BTreeSet<[usize; 3]> = BTreeSet::from([sorted3(u0, u1, u2)]);
    for &v in &order[3..] {
        let back: Vec<usize> = h[v].iter().copied().filter(|&w| pos[w] < pos[v]).collect();
        debug_assert!(back.len() <= 3);
        let t = *triangles
            .iter()
            .find(|t| back.iter().all(|x| t.contains(x)))
            .expect("earlier neighbors lie in some triangle");
        for x in t {
            base.add_edge(v, x);
        }
        triangles.insert(sorted3(v, t[0], t[1]));
        triangles.insert(sorted3(v, t[0], t[2]));
        triangles.insert(sorted3(v, t[1], t[2]));
    }
    let fill = base.edge_set().difference(&g.edge_set()).copied().collect();
    Ok(FillCompletion {
        base,
        fill,
        pes: Pes::new(order, 3),
    })
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// Vertex limit of [`treewidth_oracle`].
pub const ORACLE_LIMIT: usize = 18;

/// Exact treewidth by dynamic programming over vertex subsets (elimination
/// orderings). Exponential; only for small graphs.
pub fn treewidth_oracle(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let full = (1u32 << n) - 1;
    // q(s, v): vertices outside s+v reachable from v through s
    let q = |s: u32, v: usize| -> u32 {
        let inside = s | 1 << v;
        let mut comp = 1u32 << v;
        loop {
            let mut nb = 0u32;
            let mut bits = comp;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                nb |= adj[x];
            }
            let next = comp | (nb & inside);
            if next == comp {
                return (nb & !inside).count_ones();
            }
            comp = next;
        }
    };
    let mut tw = vec![i8::MAX; 1usize << n];
    tw[0] = -1;
    for s in 1..=full {
        let mut best = i8::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let prev = tw[rest as usize];
            if prev >= best {
                continue;
            }
            let val = prev.max(q(rest, v) as i8);
            best = best.min(val);
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize].max(0) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktree::verify_pes;

    fn cube() -> Graph {
        let mut g = Graph::empty(8);
        for v in 0..8usize {
            for b in 0..3 {
                let w = v ^ (1 << b);
                if v < w {
                    g.add_edge(v, w);
                }
            }
        }
        g
    }

    fn octahedron() -> Graph {
        let mut g = Graph::complete(6);
        for (a, b) in [(0, 1), (2, 3), (4, 5)] {
            g.remove_edge(a, b);
        }
        g
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(treewidth_oracle(&Graph::empty(3)).unwrap(), 0);
        assert_eq!(treewidth_oracle(&Graph::path(5)).unwrap(), 1);
        assert_eq!(treewidth_oracle(&Graph::cycle(5)).unwrap(), 2);
        assert_eq!(treewidth_oracle(&Graph::complete(5)).unwrap(), 4);
        assert_eq!(treewidth_oracle(&cube()).unwrap(), 3);
        assert_eq!(treewidth_oracle(&octahedron()).unwrap(), 4);
        assert!(matches!(
            treewidth_oracle(&Graph::empty(19)),
            Err(Error::TooLarge { n: 19, limit: 18 })
        ));
    }

    #[test]
    fn cube_needs_cube_rule() {
        let Verdict::Accept(t) = reduce_tw3(&cube()) else {
            panic!("cube rejected")
        };
        assert_eq!(t.count(Rule::Cube), 1);
        assert_eq!(t.elimination_order().len(), 8);
    }

    #[test]
    fn rejects_with_remainder() {
        match reduce_tw3(&octahedron()) {
            Verdict::Reject { remainder, map } => {
                assert_eq!(remainder.n(), 6);
                assert_eq!(map, vec![0, 1, 2, 3, 4, 5]);
            }
            v => panic!("{v:?}"),
        }
        assert!(!is_partial_3tree(&Graph::complete(5)));
    }

    #[test]
    fn completion_of_cycle() {
        let g = Graph::cycle(5);
        let c = three_tree_completion(&g).unwrap();
        assert_eq!(c.base.m(), 9);
        assert!(verify_pes(&c.base, &c.pes, true).unwrap());
        assert!(g.edges().iter().all(|&(u, v)| c.base.has_edge(u, v)));
        assert_eq!(c.fill.len(), 4);
    }

    #[test]
    fn completion_of_3tree_is_identity() {
        let mut es = Graph::complete(4).edges();
        es.extend([(1, 4), (2, 4), (3, 4)]);
        let g = Graph::from_edges(5, &es).unwrap();
        let c = three_tree_completion(&g).unwrap();
        assert!(c.fill.is_empty());
        assert_eq!(c.base, g);
    }

    #[test]
    fn completion_errors() {
        assert_eq!(three_tree_completion(&Graph::path(2)), Err(Error::TooSmall(2)));
        assert_eq!(
            three_tree_completion(&Graph::complete(5)),
            Err(Error::NotPartial3Tree)
        );
    }
}
