//! Command-line driver: point-set and tree generation, embedding, oracle
//! verification suites, bounds and SVG rendering.

pub mod suites;
pub mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use geoforbid::embedder::{
    embed_avoiding_single, embed_convex_avoiding_two, embed_few_hull_edges, embed_recursive_default, Embedding,
};
use geoforbid::forbid::{r_edge_blanket, turan_lower_bound, upper_bound_value};
use geoforbid::generate::{convex_position, random_general_position, rng_for, DEFAULT_BOX};
use geoforbid::oracle::{exists_embedding, min_forbidden_set_size, Verdict, DEFAULT_BUDGET};
use geoforbid::trees::{all_trees, root_at, spider_tree, MAX_ENUMERATED_K};
use geoforbid::{EdgeSet, PointSet, Tree};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

pub const RNG_NAME: &str = "chacha8";

#[derive(Debug, Parser)]
#[command(name = "geoforbid", version, about = "Planar tree embeddings with forbidden edges")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a point set, or a tree with --tree.
    Gen(GenArgs),
    /// Embed a tree into a point set, avoiding the forbidden edges if given.
    Embed(EmbedArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Exact lower and upper bounds and the convex blanket size.
    Bounds(BoundsArgs),
    /// Smallest forbidding edge set on one point set.
    SearchMin(SearchMinArgs),
    /// Render an embedding as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Convex,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TreeKind {
    Spider,
    Path,
    Star,
    /// Uniformly random labelled tree from a random Prüfer sequence.
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "convex")]
    pub mode: Mode,
    /// Emit a tree on --n vertices instead of points.
    #[arg(long, value_enum)]
    pub tree: Option<TreeKind>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Pick by the number of forbidden edges.
    Auto,
    Recursive,
    Single,
    FewHull,
    Two,
    Oracle,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long)]
    pub tree: PathBuf,
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub forbidden: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub strategy: Strategy,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: suites::Suite,
    /// Point counts, `7` or `5..9` (inclusive).
    #[arg(long, value_parser = parse_range)]
    pub n: Option<(u64, u64)>,
    /// Tree sizes for the blanket suite.
    #[arg(long, value_parser = parse_range)]
    pub k: Option<(u64, u64)>,
    /// Seeds for the randomized suites.
    #[arg(long, value_parser = parse_range)]
    pub seed: Option<(u64, u64)>,
    /// Restrict randomized suites to one kind of point set.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchMinArgs {
    /// Point set file; generated from --mode, --n and --seed when absent.
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "random")]
    pub mode: Mode,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 3)]
    pub cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub tree: Option<PathBuf>,
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    #[arg(long)]
    pub forbidden: Option<PathBuf>,
    #[arg(long)]
    pub svg: PathBuf,
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Failure = 1,
    InputError = 2,
    Unknown = 3,
}

/// An error together with the status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub error: anyhow::Error,
}

impl Failure {
    fn input(error: anyhow::Error) -> Self {
        Failure { status: Status::InputError, error }
    }

    fn failed(error: anyhow::Error) -> Self {
        Failure { status: Status::Failure, error }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

pub type CmdResult = Result<Status, Failure>;

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: u64 = lo.trim().parse().map_err(|e| format!("bad range start in {s:?}: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("bad range end in {s:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::input)?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::input)
}

/// Writes pretty JSON to `out`, or to stdout.
pub fn emit(value: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    write_text(&(text + "\n"), out)
}

fn write_text(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::failed),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure::failed(e.into()))
        }
    }
}

pub fn generate_points(mode: Mode, n: usize, seed: u64) -> anyhow::Result<PointSet> {
    Ok(match mode {
        Mode::Convex => convex_position(n, seed)?,
        Mode::Random => random_general_position(n, seed, DEFAULT_BOX)?,
    })
}

fn random_tree(n: usize, seed: u64) -> anyhow::Result<Tree> {
    if n < 2 {
        bail!("a tree needs at least 2 vertices");
    }
    let mut rng = rng_for(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Ok(geoforbid::trees::from_pruefer(&seq)?)
}

pub fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Embed(a) => cmd_embed(a),
        Command::Verify(a) => suites::cmd_verify(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::SearchMin(a) => cmd_search_min(a),
        Command::Render(a) => cmd_render(a),
    }
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let value = match a.tree {
        Some(kind) => {
            let tree = match kind {
                TreeKind::Spider => spider_tree(a.n).map_err(anyhow::Error::from),
                TreeKind::Path => Tree::path(a.n).map_err(anyhow::Error::from),
                TreeKind::Star => Tree::star(a.n).map_err(anyhow::Error::from),
                TreeKind::Random => random_tree(a.n, a.seed),
            }
            .map_err(Failure::input)?;
            let mut v = serde_json::to_value(&tree).expect("trees serialize");
            if kind == TreeKind::Random {
                v["seed"] = json!(a.seed);
                v["rng"] = json!(RNG_NAME);
            }
            v
        }
        None => {
            let s = generate_points(a.mode, a.n, a.seed).map_err(Failure::input)?;
            let mut v = serde_json::to_value(&s).expect("point sets serialize");
            v["seed"] = json!(a.seed);
            v["mode"] = json!(a.mode);
            v["rng"] = json!(RNG_NAME);
            v
        }
    };
    emit(&value, a.out.as_deref())?;
    Ok(Status::Success)
}

fn choose_strategy(requested: Strategy, forbidden: &EdgeSet, s: &PointSet) -> Strategy {
    if requested != Strategy::Auto {
        return requested;
    }
    match forbidden.len() {
        0 => Strategy::Recursive,
        1 if s.len() >= 5 => Strategy::Single,
        2 if s.len() >= 5 && s.is_convex_position() => Strategy::Two,
        _ => Strategy::Oracle,
    }
}

fn cmd_embed(a: EmbedArgs) -> CmdResult {
    let tree: Tree = read_json(&a.tree)?;
    let s: PointSet = read_json(&a.points)?;
    let forbidden: EdgeSet = match &a.forbidden {
        Some(p) => read_json(p)?,
        None => EdgeSet::new(),
    };
    forbidden.validate(s.len()).map_err(|e| Failure::input(e.into()))?;
    if tree.len() != s.len() {
        return Err(Failure::input(anyhow!(
            "tree has {} vertices but the point set has {} points",
            tree.len(),
            s.len()
        )));
    }
    let strategy = choose_strategy(a.strategy, &forbidden, &s);
    let edges: Vec<_> = forbidden.iter().collect();
    let result: anyhow::Result<Embedding> = match strategy {
        Strategy::Recursive => root_at(&tree, 0)
            .map_err(Into::into)
            .and_then(|rt| embed_recursive_default(&rt, &s).map_err(Into::into)),
        Strategy::FewHull => embed_few_hull_edges(&tree, &s).map_err(Into::into),
        Strategy::Single => match edges.as_slice() {
            [e] => embed_avoiding_single(&tree, &s, *e).map_err(Into::into),
            _ => return Err(Failure::input(anyhow!("single strategy needs exactly one forbidden edge"))),
        },
        Strategy::Two => match edges.as_slice() {
            [e] => embed_convex_avoiding_two(&tree, &s, *e, *e).map_err(Into::into),
            [e, f] => embed_convex_avoiding_two(&tree, &s, *e, *f).map_err(Into::into),
            _ => return Err(Failure::input(anyhow!("two strategy needs one or two forbidden edges"))),
        },
        Strategy::Oracle => {
            let report = exists_embedding(&tree, &s, &forbidden, a.budget).map_err(|e| Failure::input(e.into()))?;
            match report.verdict {
                Verdict::Feasible => Ok(report.witness.expect("feasible reports carry a witness")),
                Verdict::Infeasible => Err(anyhow!("no embedding avoids the forbidden edges")),
                Verdict::Unknown => {
                    return Err(Failure {
                        status: Status::Unknown,
                        error: anyhow!("budget of {} nodes exhausted", a.budget),
                    })
                }
            }
        }
        Strategy::Auto => unreachable!("resolved above"),
    };
    let emb = result.map_err(Failure::failed)?;
    let mut v = serde_json::to_value(emb.record(Some(&forbidden))).expect("records serialize");
    v["strategy"] = json!(strategy);
    emit(&v, a.out.as_deref())?;
    if let Some(path) = &a.svg {
        let text = svg::render(&s, Some(&emb.image_edges()), &forbidden);
        write_text(&text, Some(path))?;
    }
    Ok(Status::Success)
}

fn cmd_bounds(a: BoundsArgs) -> CmdResult {
    let lower = turan_lower_bound(a.n, a.k).map_err(|e| Failure::input(e.into()))?;
    let upper = upper_bound_value(a.n, a.k).map_err(|e| Failure::input(e.into()))?;
    let mut v = json!({
        "n": a.n,
        "k": a.k,
        "lower": lower.to_string(),
        "upper": upper.to_string(),
    });
    if a.k <= a.n {
        let s = convex_position(a.n, a.seed).map_err(|e| Failure::input(e.into()))?;
        let blanket = r_edge_blanket(&s, a.k).map_err(|e| Failure::input(e.into()))?;
        v["blanket_size"] = json!(blanket.edges.len());
        v["r_threshold"] = json!(blanket.params.r_threshold);
        v["seed"] = json!(a.seed);
    }
    emit(&v, a.out.as_deref())?;
    Ok(Status::Success)
}

fn cmd_search_min(a: SearchMinArgs) -> CmdResult {
    let (s, origin) = match (&a.points, a.n) {
        (Some(path), _) => (read_json::<PointSet>(path)?, json!({ "file": path })),
        (None, Some(n)) => (
            generate_points(a.mode, n, a.seed).map_err(Failure::input)?,
            json!({ "mode": a.mode, "n": n, "seed": a.seed, "rng": RNG_NAME }),
        ),
        (None, None) => return Err(Failure::input(anyhow!("give --points or --n"))),
    };
    if a.k > MAX_ENUMERATED_K {
        return Err(Failure::input(anyhow!("k must be at most {MAX_ENUMERATED_K}")));
    }
    let report = match min_forbidden_set_size(&s, a.k, a.cap) {
        Ok(r) => r,
        Err(geoforbid::OracleError::BudgetExhausted(n)) => {
            return Err(Failure { status: Status::Unknown, error: anyhow!("budget exhausted after {n} nodes") })
        }
        Err(e) => return Err(Failure::input(e.into())),
    };
    let convex = s.is_convex_position();
    if let Some(found) = &report.result {
        if found.size == 2 && !convex && a.k == s.len() {
            eprintln!("NOTICE: a 2-edge set forbids a spanning tree on this non-convex point set");
        }
    }
    let v = json!({
        "source": origin,
        "k": a.k,
        "cap": a.cap,
        "convex": convex,
        "result": report.result,
        "stats": report.stats,
    });
    emit(&v, a.out.as_deref())?;
    Ok(Status::Success)
}

/// Embedding file as written by `embed`.
#[derive(serde::Deserialize)]
struct AssignmentFile {
    assignment: Vec<usize>,
}

fn cmd_render(a: RenderArgs) -> CmdResult {
    let s: PointSet = read_json(&a.points)?;
    let forbidden: EdgeSet = match &a.forbidden {
        Some(p) => read_json(p)?,
        None => EdgeSet::new(),
    };
    forbidden.validate(s.len()).map_err(|e| Failure::input(e.into()))?;
    let edges = match (&a.tree, &a.embedding) {
        (Some(t), Some(e)) => {
            let tree: Tree = read_json(t)?;
            let file: AssignmentFile = read_json(e)?;
            geoforbid::embedder::validate_embedding(&tree, &s, &file.assignment)
                .map_err(|e| Failure::input(e.into()))?;
            Some(
                tree.edges()
                    .into_iter()
                    .map(|(u, v)| geoforbid::Edge::new(file.assignment[u], file.assignment[v]))
                    .collect::<Vec<_>>(),
            )
        }
        (None, None) => None,
        _ => return Err(Failure::input(anyhow!("--tree and --embedding go together"))),
    };
    write_text(&svg::render(&s, edges.as_deref(), &forbidden), Some(&a.svg))?;
    Ok(Status::Success)
}

/// Every tree on `n` vertices, for suites that sweep over trees.
pub(crate) fn trees_on(n: usize) -> anyhow::Result<&'static [Tree]> {
    Ok(all_trees(n)?)
}
