//! Command-line front end. `run` does all the work so it can be driven from
//! tests; the binary only forwards its arguments and exit code.
//!
//! Exit codes: 0 success, 1 a check or claim failed, 2 the graph is not a
//! partial 3-tree, 3 the input could not be read, parsed or drawn (this
//! includes bad arguments).

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::completer::{check_invariants, complete, Anchor, Check, Completion};
use crate::error::Error;
use crate::format::{parse, parse_any, parse_graph_any, serialize};
use crate::gen::{gen_plane_3tree, subsample_plane};
use crate::graph::Edge;
use crate::ktree::{is_stacked_plane_3tree, verify_pes, Pes};
use crate::plane::{extends, PlaneGraph};
use crate::render::{crossing_audit, layout, render_svg, AUDIT_TOL};
use crate::tw3::{reduce_tw3, treewidth_oracle, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_NOT_PARTIAL_3TREE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "p3tree", version, about = "Complete plane partial 3-trees to plane 3-trees")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Complete a drawing to a plane 3-tree extending it.
    Complete {
        input: PathBuf,
        /// Where to write the completed drawing (default: standard output).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the completion report (default: standard error).
        #[arg(short, long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        anchor: AnchorArgs,
    },
    /// Verify claims about a drawing.
    Check {
        input: PathBuf,
        /// The drawing is a plane 3-tree.
        #[arg(long)]
        stacked: bool,
        /// Comma-separated order that must be a strict 3-tree elimination order.
        #[arg(long, value_delimiter = ',')]
        pes: Option<Vec<usize>>,
        /// The drawing extends this smaller drawing on the same vertices.
        #[arg(long, value_name = "FILE")]
        extends: Option<PathBuf>,
    },
    /// Decide treewidth at most 3 by reduction rules.
    Recognize {
        input: PathBuf,
        /// Print every reduction step.
        #[arg(long)]
        trace: bool,
    },
    /// Generate a random plane 3-tree, optionally thinned out.
    Generate {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long, default_value_t = 0)]
        seed: u64,
        /// Probability of keeping each edge.
        #[arg(short, long)]
        keep: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a triangulation as SVG.
    Render {
        input: PathBuf,
        /// Edges missing from this drawing are dashed.
        #[arg(long, value_name = "FILE")]
        base: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact treewidth by dynamic programming (small graphs only).
    Oracle { input: PathBuf },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct AnchorArgs {
    /// Vertex that must lie on the outer triangle.
    #[arg(long, value_name = "V")]
    anchor_vertex: Option<usize>,
    /// Edge that must lie on the outer triangle.
    #[arg(long, num_args = 2, value_names = ["U", "V"])]
    anchor_edge: Option<Vec<usize>>,
}

impl AnchorArgs {
    fn get(&self) -> Option<Anchor> {
        match (self.anchor_vertex, &self.anchor_edge) {
            (Some(v), _) => Some(Anchor::Vertex(v)),
            (_, Some(e)) => Some(Anchor::Edge(e[0], e[1])),
            _ => None,
        }
    }
}

/// Added edges, elimination order, invariant verdicts and face provenance
/// of one completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionReport {
    pub added: Vec<Edge>,
    pub pes: Vec<usize>,
    pub checks: Vec<Check>,
    /// Output face id and the input face id it lies in.
    pub provenance: Vec<(usize, usize)>,
}

impl CompletionReport {
    pub fn new(c: &Completion) -> Self {
        CompletionReport {
            added: c.added.iter().copied().collect(),
            pes: c.pes.order.clone(),
            checks: check_invariants(c),
            provenance: c.provenance.iter().copied().enumerate().collect(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for CompletionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "added {}", self.added.len())?;
        for (u, v) in &self.added {
            writeln!(f, "  {u} {v}")?;
        }
        let pes: Vec<String> = self.pes.iter().map(ToString::to_string).collect();
        writeln!(f, "pes {}", pes.join(" "))?;
        for c in &self.checks {
            writeln!(f, "check {:<26} {}", c.name, pass_fail(c.pass))?;
        }
        writeln!(f, "provenance {}", self.provenance.len())?;
        for (o, i) in &self.provenance {
            writeln!(f, "  face {o} in input face {i}")?;
        }
        writeln!(f, "status {}", pass_fail(self.all_pass()))
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPartial3Tree => EXIT_NOT_PARTIAL_3TREE,
        Error::Parse { .. }
        | Error::BadRotation(_)
        | Error::NotPlanarRotation
        | Error::Nonplanar(_)
        | Error::BadVertex { .. }
        | Error::TooSmall(_)
        | Error::TooLarge { .. }
        | Error::AnchorNotOnOuterFace
        | Error::NotTriangulation
        | Error::VertexMismatch(..) => EXIT_INPUT,
        _ => EXIT_CHECK,
    }
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            msg: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        msg: format!("{}: {e}", path.display()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, data: &str) -> Result<(), Failure> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    std::fs::write(&tmp, data)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| {
            let _ = std::fs::remove_file(&tmp);
            io_failure(path, e)
        })
}

fn emit(target: &Option<PathBuf>, data: &str, fallback: &mut dyn Write) -> Result<(), Failure> {
    match target {
        Some(p) => write_atomic(p, data),
        None => fallback.write_all(data.as_bytes()).map_err(|e| io_failure(Path::new("-"), e)),
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let w = |e: std::io::Error| io_failure(Path::new("-"), e);
    match cmd {
        Cmd::Complete {
            input,
            output,
            report,
            anchor,
        } => {
            let g = parse_any(&read(&input)?)?;
            let c = complete(&g, anchor.get())?;
            let rep = CompletionReport::new(&c);
            emit(&output, &serialize(&c.output), out)?;
            emit(&report, &rep.to_string(), err)?;
            Ok(if rep.all_pass() { EXIT_OK } else { EXIT_CHECK })
        }
        Cmd::Check {
            input,
            stacked,
            pes,
            extends: small,
        } => {
            let p = parse_any(&read(&input)?)?;
            let mut claims: Vec<(&str, bool)> = Vec::new();
            if stacked {
                claims.push(("stacked-3-tree", is_stacked_plane_3tree(&p).is_some()));
            }
            if let Some(order) = pes {
                let ok = verify_pes(p.graph(), &Pes::new(order, 3), true).unwrap_or(false);
                claims.push(("pes", ok));
            }
            if let Some(path) = small {
                let s = parse_any(&read(&path)?)?;
                claims.push(("extends", extends_inferred(&p, &s)?));
            }
            if claims.is_empty() {
                writeln!(err, "no claims given; see --help").map_err(w)?;
                return Ok(EXIT_INPUT);
            }
            for (name, ok) in &claims {
                writeln!(out, "claim {name}: {}", pass_fail(*ok)).map_err(w)?;
            }
            Ok(if claims.iter().all(|c| c.1) { EXIT_OK } else { EXIT_CHECK })
        }
        Cmd::Recognize { input, trace } => {
            let g = parse_graph_any(&read(&input)?)?;
            match reduce_tw3(&g) {
                Verdict::Accept(t) => {
                    writeln!(out, "accept: treewidth at most 3 ({} steps)", t.steps.len()).map_err(w)?;
                    if trace {
                        for s in &t.steps {
                            writeln!(out, "  {:?} removes {:?} fills {:?}", s.rule, s.removed, s.fill)
                                .map_err(w)?;
                        }
                    }
                    Ok(EXIT_OK)
                }
                Verdict::Reject { map, .. } => {
                    writeln!(out, "reject: irreducible remainder on vertices {map:?}").map_err(w)?;
                    Ok(EXIT_NOT_PARTIAL_3TREE)
                }
            }
        }
        Cmd::Generate {
            n,
            seed,
            keep,
            output,
        } => {
            let (mut p, _) = gen_plane_3tree(n, seed)?;
            if let Some(k) = keep {
                if !(0.0..=1.0).contains(&k) {
                    writeln!(err, "error: --keep must lie in [0, 1]").map_err(w)?;
                    return Ok(EXIT_INPUT);
                }
                p = subsample_plane(&p, k, seed);
            }
            emit(&output, &serialize(&p), out)?;
            Ok(EXIT_OK)
        }
        Cmd::Render {
            input,
            base,
            output,
        } => {
            let p = parse(&read(&input)?)?;
            let dashed: BTreeSet<Edge> = match base {
                Some(path) => {
                    let b = parse_graph_any(&read(&path)?)?;
                    p.graph().edge_set().difference(&b.edge_set()).copied().collect()
                }
                None => BTreeSet::new(),
            };
            let svg = render_svg(&p, &dashed)?;
            let defects = crossing_audit(&p, &layout(&p)?, AUDIT_TOL);
            emit(&output, &svg, out)?;
            if defects.is_empty() {
                Ok(EXIT_OK)
            } else {
                writeln!(err, "crossing audit failed: {defects:?}").map_err(w)?;
                Ok(EXIT_CHECK)
            }
        }
        Cmd::Oracle { input } => {
            let g = parse_graph_any(&read(&input)?)?;
            writeln!(out, "treewidth {}", treewidth_oracle(&g)?).map_err(w)?;
            Ok(EXIT_OK)
        }
    }
}

fn extends_inferred(big: &PlaneGraph, small: &PlaneGraph) -> Result<bool, Failure> {
    let added: BTreeSet<Edge> = big
        .graph()
        .edge_set()
        .difference(&small.graph().edge_set())
        .copied()
        .collect();
    Ok(extends(big, small, &added)?)
}
