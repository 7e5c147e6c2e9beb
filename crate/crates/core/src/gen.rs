//! Seeded generators. All randomness comes from ChaCha8 seeded with a `u64`
//! and ranges are drawn over `u64`, so output is identical on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::ktree::Pes;
use crate::plane::{self, delete_edges_plane, PlaneGraph};

pub type Seed = u64;

pub fn rng(seed: Seed) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick(rng: &mut ChaCha8Rng, len: usize) -> usize {
    rng.gen_range(0..len as u64) as usize
}

/// Stacked triangulation on `n` vertices: start from the triangle `0 1 2`
/// and insert vertex `i` into a uniformly chosen face (outer included).
/// The growth order is `0, 1, .., n-1`.
pub fn gen_plane_3tree(n: usize, seed: Seed) -> Result<(PlaneGraph, Pes)> {
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    let mut rng = rng(seed);
    let mut es = Graph::complete(3).edges();
    let mut rot: Vec<Vec<usize>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    let outer = 1;
    for v in 3..n {
        let fi = pick(&mut rng, faces.len());
        let t = faces[fi];
        rot.push(Vec::new());
        plane::stack_into(&mut rot, t, v);
        es.extend(t.iter().map(|&x| (x, v)));
        // slot `fi` keeps the dart t0 -> t1, so the outer slot stays outer
        faces[fi] = [t[0], t[1], v];
        faces.push([t[1], t[2], v]);
        faces.push([t[2], t[0], v]);
    }
    let g = Graph::from_edges(n, &es)?;
    let o = faces[outer];
    let p = PlaneGraph::connected(g, rot, (o[0], o[1]))?;
    Ok((p, Pes::new((0..n).collect(), 3)))
}

/// Keeps each edge independently with probability `keep` (edges visited in
/// sorted order). All vertices stay; the outer face is the one containing
/// the old outer region.
pub fn subsample_plane(p: &PlaneGraph, keep: f64, seed: Seed) -> PlaneGraph {
    let mut rng = rng(seed);
    let drop: std::collections::BTreeSet<Edge> = p
        .graph()
        .edges()
        .into_iter()
        .filter(|_| rng.gen::<f64>() >= keep)
        .collect();
    delete_edges_plane(p, &drop)
}

/// Largest `n` accepted by [`enum_graphs`].
pub const ENUM_LIMIT: usize = 7;

/// All simple graphs on `n` labeled vertices. Graph `k` contains the `i`-th
/// vertex pair (pairs in lexicographic order) iff bit `i` of `k` is set.
pub fn enum_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > ENUM_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ENUM_LIMIT,
        });
    }
    let pairs: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    Ok((0..total).map(move |mask| graph_from_mask(n, &pairs, mask)))
}

fn graph_from_mask(n: usize, pairs: &[Edge], mask: u64) -> Graph {
    let es: Vec<Edge> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::from_edges(n, &es).expect("pairs in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktree::{is_stacked_plane_3tree, verify_pes};
    use crate::plane::extends;

    #[test]
    fn small_stacks() {
        let (t, _) = gen_plane_3tree(3, 1).unwrap();
        assert_eq!((t.m(), t.faces().len()), (3, 2));
        let (k4, _) = gen_plane_3tree(4, 9).unwrap();
        assert_eq!(k4.graph(), &Graph::complete(4));
        assert_eq!(gen_plane_3tree(2, 0).unwrap_err(), Error::TooSmall(2));
    }

    #[test]
    fn ten_vertices() {
        for seed in 0..20 {
            let (p, pes) = gen_plane_3tree(10, seed).unwrap();
            assert_eq!((p.m(), p.faces().len()), (24, 16));
            assert!(p.is_triangulation());
            assert!(verify_pes(p.graph(), &pes, true).unwrap());
            assert!(is_stacked_plane_3tree(&p).is_some());
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(gen_plane_3tree(40, 7).unwrap(), gen_plane_3tree(40, 7).unwrap());
        assert_ne!(gen_plane_3tree(40, 7).unwrap().0, gen_plane_3tree(40, 8).unwrap().0);
    }

    #[test]
    fn subsample_extremes() {
        let (p, _) = gen_plane_3tree(12, 3).unwrap();
        assert_eq!(subsample_plane(&p, 1.0, 5), p);
        let e = subsample_plane(&p, 0.0, 5);
        assert_eq!((e.n(), e.m(), e.faces().len()), (12, 0, 1));
    }

    #[test]
    fn subsample_round_trip() {
        let (k4, _) = gen_plane_3tree(4, 0).unwrap();
        for seed in 0..30 {
            let s = subsample_plane(&k4, 0.5, seed);
            let dropped = k4.graph().edge_set().difference(&s.graph().edge_set()).copied().collect();
            assert!(extends(&k4, &s, &dropped).unwrap());
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enum_graphs(2).unwrap().count(), 2);
        assert_eq!(enum_graphs(3).unwrap().count(), 8);
        assert_eq!(enum_graphs(4).unwrap().count(), 64);
        let all: Vec<Graph> = enum_graphs(4).unwrap().collect();
        assert_eq!(all[0].m(), 0);
        assert_eq!(all[63], Graph::complete(4));
        assert!(matches!(enum_graphs(8), Err(Error::TooLarge { .. })));
    }
}
