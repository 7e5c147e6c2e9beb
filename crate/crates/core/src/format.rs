//! Text format for plane graphs, plus a plain edge-list import.
//!
//! ```text
//! p3tree-plane 1
//! n <n>
//! edges <m>
//! <u> <v>                  m lines, u < v, sorted
//! rotation
//! <v>: <w> <w> ...         n lines, v ascending, ccw, smallest neighbor first
//! faces <k>
//! <ref> <ref> ...          one line per face with two or more boundary walks
//! outer <ref> | outer none
//! ```
//!
//! A `<ref>` names a boundary walk: `u>v` for the walk through dart `(u, v)`
//! or `v` for an isolated vertex. A `faces` line lists walks that bound the
//! same face. Lines starting with `#` and blank lines are ignored. The
//! serialized form is canonical: parsing then serializing is the identity.
//!
//! The edge-list import reads `n <n>` followed by one `u v` pair per line and
//! computes a drawing with [`embed_planar`].

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::plane::{embed_planar, PlaneGraph, WalkRef};

const MAGIC: &str = "p3tree-plane 1";

fn write_ref(out: &mut String, r: WalkRef) {
    match r {
        WalkRef::Dart(u, v) => write!(out, "{u}>{v}"),
        WalkRef::Vertex(v) => write!(out, "{v}"),
    }
    .unwrap();
}

pub fn serialize(p: &PlaneGraph) -> String {
    let mut s = String::new();
    writeln!(s, "{MAGIC}").unwrap();
    writeln!(s, "n {}", p.n()).unwrap();
    let edges = p.graph().edges();
    writeln!(s, "edges {}", edges.len()).unwrap();
    for (u, v) in edges {
        writeln!(s, "{u} {v}").unwrap();
    }
    s.push_str("rotation\n");
    for (v, r) in p.rotations().iter().enumerate() {
        write!(s, "{v}:").unwrap();
        for w in r {
            write!(s, " {w}").unwrap();
        }
        s.push('\n');
    }
    let multi: Vec<_> = p.faces().iter().filter(|f| f.walks.len() > 1).collect();
    writeln!(s, "faces {}", multi.len()).unwrap();
    for f in multi {
        for (i, w) in f.walks.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            write_ref(&mut s, walk_key(w));
        }
        s.push('\n');
    }
    s.push_str("outer ");
    match p.outer_face().key() {
        Some(r) => write_ref(&mut s, r),
        None => s.push_str("none"),
    }
    s.push('\n');
    s
}

fn walk_key(w: &[usize]) -> WalkRef {
    if w.len() == 1 {
        WalkRef::Vertex(w[0])
    } else {
        WalkRef::Dart(w[0], w[1])
    }
}

struct Lines<'a> {
    inner: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: Box::new(
                text.lines()
                    .enumerate()
                    .map(|(i, l)| (i + 1, l.trim()))
                    .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
            ),
            last: 0,
        }
    }

    fn next(&mut self) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((i, l)) => {
                self.last = i;
                Ok((i, l))
            }
            None => Err(err(self.last + 1, "unexpected end of input")),
        }
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (i, l) = self.next()?;
        match l.strip_prefix(key) {
            Some(rest) if rest.is_empty() || rest.starts_with(' ') => Ok((i, rest.trim())),
            _ => Err(err(i, format!("expected `{key}`"))),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.inner.next() {
            Some((i, _)) => Err(err(i, "trailing content")),
            None => Ok(()),
        }
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn num(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| err(line, format!("`{tok}` is not a non-negative integer")))
}

fn nums(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace().map(|t| num(line, t)).collect()
}

fn parse_ref(line: usize, tok: &str) -> Result<WalkRef> {
    match tok.split_once('>') {
        Some((u, v)) => Ok(WalkRef::Dart(num(line, u)?, num(line, v)?)),
        None => Ok(WalkRef::Vertex(num(line, tok)?)),
    }
}

fn graph_at(line: usize, n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::from_edges(n, edges).map_err(|e| err(line, e.to_string()))
}

/// Parses the plane graph format. Structural problems are `Parse` errors;
/// a rotation system that is not a plane drawing keeps its own error.
pub fn parse(text: &str) -> Result<PlaneGraph> {
    let mut lines = Lines::new(text);
    let (i, l) = lines.next()?;
    if l != MAGIC {
        return Err(err(i, format!("expected `{MAGIC}`")));
    }
    let (i, rest) = lines.keyword("n")?;
    let n = num(i, rest)?;
    let (i, rest) = lines.keyword("edges")?;
    let m = num(i, rest)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (i, l) = lines.next()?;
        match nums(i, l)?[..] {
            [u, v] if u < v => {
                if edges.last().is_some_and(|&e| e >= (u, v)) {
                    return Err(err(i, "edges must be sorted and distinct"));
                }
                edges.push((u, v));
            }
            _ => return Err(err(i, "expected an edge `u v` with u < v")),
        }
    }
    let (i, _) = lines.keyword("rotation")?;
    let graph = graph_at(i, n, &edges)?;
    let mut rot = Vec::with_capacity(n);
    for v in 0..n {
        let (i, l) = lines.next()?;
        let (head, tail) = l.split_once(':').ok_or_else(|| err(i, "expected `v: ...`"))?;
        if num(i, head.trim())? != v {
            return Err(err(i, format!("expected rotation of vertex {v}")));
        }
        rot.push(nums(i, tail)?);
    }
    let (i, rest) = lines.keyword("faces")?;
    let k = num(i, rest)?;
    let mut joins = Vec::with_capacity(k);
    for _ in 0..k {
        let (i, l) = lines.next()?;
        let refs: Vec<WalkRef> = l.split_whitespace().map(|t| parse_ref(i, t)).collect::<Result<_>>()?;
        if refs.len() < 2 {
            return Err(err(i, "a faces line needs at least two walks"));
        }
        joins.push(refs);
    }
    let (i, rest) = lines.keyword("outer")?;
    lines.finish()?;
    if rest == "none" {
        return if n == 0 {
            Ok(PlaneGraph::null())
        } else {
            Err(err(i, "`outer none` is only valid for the empty graph"))
        };
    }
    let outer = parse_ref(i, rest)?;
    PlaneGraph::from_parts(graph, rot, &joins, outer)
}

/// Reads `n <n>` and `u v` lines into a graph.
pub fn parse_edge_list_graph(text: &str) -> Result<Graph> {
    let mut lines = Lines::new(text);
    let (i, rest) = lines.keyword("n")?;
    let n = num(i, rest)?;
    let mut edges = Vec::new();
    let mut last = i;
    for (i, l) in lines.inner.by_ref() {
        match nums(i, l)?[..] {
            [u, v] if u != v => edges.push((u, v)),
            _ => return Err(err(i, "expected an edge `u v`")),
        }
        last = i;
    }
    graph_at(last, n, &edges)
}

/// Reads an edge list and embeds the graph.
pub fn parse_edge_list(text: &str) -> Result<PlaneGraph> {
    embed_planar(&parse_edge_list_graph(text)?)
}

fn is_native(text: &str) -> bool {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    first == Some(MAGIC)
}

/// The graph of either format, without computing a drawing.
pub fn parse_graph_any(text: &str) -> Result<Graph> {
    if is_native(text) {
        Ok(parse(text)?.graph().clone())
    } else {
        parse_edge_list_graph(text)
    }
}

/// Parses either format, picking by the first line.
pub fn parse_any(text: &str) -> Result<PlaneGraph> {
    if is_native(text) {
        parse(text)
    } else {
        parse_edge_list(text)
    }
}
