//! The `lastree` command line.
//!
//! Exit status: 0 on success, 1 on domain errors (bad input, failed checks),
//! 2 on usage errors.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::graph::{parse_graph, Graph, GraphFile};
use crate::instances::{gen_3sat, gen_lower_bound, gen_random, LowerBoundSpec, SatFormula};
use crate::last::{evaluate, find_last_traced, TreeMetrics};
use crate::min_spt::min_weight_spt;
use crate::oracle::{is_last, min_beta_for_alpha};
use crate::output::{sweep_csv, tree_to_dot, MetricsJson, SweepRow, TreeFile, TreeJson};
use crate::parallel::parallel_last;
use crate::trees::{minimum_spanning_tree, shortest_path_tree, RootedTree};
use crate::weight::{Scalar, Weight};

#[derive(Debug, Parser)]
#[command(name = "lastree", version, about = "Light approximate shortest-path trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a LAST and report its metrics as JSON.
    Last(LastArgs),
    /// Minimum-weight shortest-path tree.
    MinSpt(TreeArgs),
    /// Minimum spanning tree.
    Mst(TreeArgs),
    /// Shortest-path tree.
    Spt(TreeArgs),
    /// Generate instances in the graph file format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Exhaustive checks on small exact graphs.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run the construction over several alphas and print CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    /// Root vertex; defaults to the file's `r` line, then 0.
    #[arg(long)]
    pub root: Option<usize>,
    /// Graph file, or `-` for stdin.
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct LastArgs {
    /// Stretch factor as `p/q`, integer or decimal; 1 computes a minimum-weight SPT.
    #[arg(long)]
    pub alpha: Scalar,
    #[arg(long)]
    pub root: Option<usize>,
    /// Use the emulation of the parallel construction.
    #[arg(long)]
    pub parallel_emulation: bool,
    /// With --parallel-emulation, also compute J by direct scan and report agreement.
    #[arg(long)]
    pub check_pipeline: bool,
    /// Log every relaxation and path addition to stderr.
    #[arg(long)]
    pub trace: bool,
    /// Write Graphviz DOT to FILE; `-` prints it in place of the JSON.
    #[arg(long, value_name = "FILE")]
    pub emit_dot: Option<PathBuf>,
    pub graph: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Graph on which no LAST beats the ratio bound of the family.
    LowerBound {
        #[arg(long)]
        alpha: Scalar,
        #[arg(long)]
        epsilon: Scalar,
        #[arg(long)]
        delta: Scalar,
        #[arg(long)]
        leaves: usize,
    },
    /// 3-SAT gadget graph from a DIMACS CNF file.
    Threesat {
        #[arg(long)]
        alpha: Scalar,
        /// CNF file, or `-` for stdin.
        cnf: PathBuf,
    },
    /// Connected random graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Exact minimum β over all spanning trees within stretch α.
    MinBeta {
        #[arg(long)]
        alpha: Scalar,
        #[arg(long)]
        root: Option<usize>,
        graph: PathBuf,
    },
    /// Check whether a tree (JSON with `root` and `parent`) is an (α, β)-LAST.
    Check {
        #[arg(long)]
        alpha: Scalar,
        #[arg(long)]
        beta: Scalar,
        #[arg(long)]
        root: Option<usize>,
        graph: PathBuf,
        tree: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated stretch factors, each at least 1.
    #[arg(long, value_delimiter = ',', required = true)]
    pub alphas: Vec<Scalar>,
    #[arg(long)]
    pub root: Option<usize>,
    #[arg(long)]
    pub parallel_emulation: bool,
    pub graph: PathBuf,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Check(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_input(path: &Path) -> CliResult<String> {
    let name = path.display().to_string();
    let wrap = |source| CliError::Io {
        path: name.clone(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(wrap)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(wrap)
    }
}

fn read_graph(path: &Path) -> CliResult<GraphFile> {
    let text = read_input(path)?;
    parse_graph(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        }
        .into(),
        other => other.into(),
    })
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let text = serde_json::to_string(value).map_err(|e| Error::Invariant(e.to_string()))?;
    writeln!(out, "{text}").map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn write_text(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

#[derive(Serialize)]
struct TreeReport<W> {
    #[serde(flatten)]
    tree: TreeJson<W>,
    #[serde(skip_serializing_if = "Option::is_none")]
    total_weight: Option<W>,
    #[serde(skip_serializing_if = "Option::is_none")]
    metrics: Option<MetricsJson<W>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pipeline_agrees: Option<bool>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Last(args) => match read_graph(&args.graph)? {
            GraphFile::Exact(g) => run_last(&g, &args, out, err),
            GraphFile::Float(g) => run_last(&g, &args, out, err),
        },
        Command::MinSpt(args) => {
            let file = read_graph(&args.graph)?;
            let g = file.exact()?;
            let root = pick_root(g, args.root)?;
            json_line(out, &min_spt_report(g, root)?)
        }
        Command::Mst(args) => match read_graph(&args.graph)? {
            GraphFile::Exact(g) => json_line(out, &base_tree_report(&g, args.root, true)?),
            GraphFile::Float(g) => json_line(out, &base_tree_report(&g, args.root, true)?),
        },
        Command::Spt(args) => match read_graph(&args.graph)? {
            GraphFile::Exact(g) => json_line(out, &base_tree_report(&g, args.root, false)?),
            GraphFile::Float(g) => json_line(out, &base_tree_report(&g, args.root, false)?),
        },
        Command::Gen(gen) => run_gen(gen, out),
        Command::Oracle(cmd) => run_oracle(cmd, out),
        Command::Sweep(args) => match read_graph(&args.graph)? {
            GraphFile::Exact(g) => run_sweep(&g, &args, out),
            GraphFile::Float(g) => run_sweep(&g, &args, out),
        },
    }
}

fn base_tree_report<W: Weight>(g: &Graph<W>, root: Option<usize>, mst: bool) -> CliResult<TreeReport<W>> {
    let root = pick_root(g, root)?;
    let t = if mst {
        minimum_spanning_tree(g, root)?
    } else {
        shortest_path_tree(g, root)?
    };
    let metrics = if g.is_directed() {
        None
    } else {
        let mst_weight = if mst {
            t.weight()
        } else {
            minimum_spanning_tree(g, root)?.weight()
        };
        Some(MetricsJson::new(&evaluate(g, &t, mst_weight, root)?, None))
    };
    Ok(TreeReport {
        tree: TreeJson::new(&t),
        total_weight: None,
        metrics,
        pipeline_agrees: None,
    })
}

fn min_spt_report(g: &Graph<u64>, root: usize) -> CliResult<TreeReport<u64>> {
    let b = min_weight_spt(g, root)?;
    let t = b.to_tree()?;
    let metrics = if g.is_directed() {
        None
    } else {
        let mst = minimum_spanning_tree(g, root)?.weight();
        Some(MetricsJson::new(&evaluate(g, &t, mst, root)?, Some(&Scalar::one())))
    };
    Ok(TreeReport {
        tree: TreeJson::new(&t),
        total_weight: Some(b.total_weight),
        metrics,
        pipeline_agrees: None,
    })
}

struct Built<W> {
    tree: RootedTree<W>,
    metrics: TreeMetrics<W>,
    relax_count: Option<usize>,
    pipeline_agrees: Option<bool>,
}

/// Builds the tree for one α; `trace` receives event lines.
fn build<W: Weight>(
    g: &Graph<W>,
    root: usize,
    alpha: &Scalar,
    parallel: bool,
    check_pipeline: bool,
    mut trace: Option<&mut dyn Write>,
) -> CliResult<Built<W>> {
    if g.is_directed() {
        return Err(Error::InvalidArgument("LAST construction needs an undirected graph".into()).into());
    }
    let t_m = minimum_spanning_tree(g, root)?;
    let t_s = shortest_path_tree(g, root)?;
    let (tree, paths, relax_count, pipeline_agrees) = if parallel {
        let run = parallel_last(&t_m, &t_s, root, alpha, check_pipeline)?;
        if let Some(w) = trace.as_deref_mut() {
            for (i, j) in run.selection.j.values().iter().enumerate() {
                if let Some(j) = j {
                    let _ = writeln!(w, "J({}) = {j}", i + 1);
                }
            }
            let _ = writeln!(w, "selected positions {:?}", run.selection.positions);
            let _ = writeln!(w, "shortest-path parents kept for {:?}", run.selection.s_star);
        }
        let paths = run.selection.positions.len().saturating_sub(1);
        (run.tree, paths, None, run.pipeline_agrees)
    } else {
        let run = find_last_traced(&t_m, &t_s, root, alpha, trace.is_some())?;
        if let Some(w) = trace {
            for event in &run.trace {
                let _ = writeln!(w, "{event}");
            }
        }
        let paths = run.paths_added();
        (run.tree, paths, Some(run.relax_count), None)
    };
    let metrics = evaluate(g, &tree, t_m.weight(), root)?.with_paths_added(paths);
    Ok(Built {
        tree,
        metrics,
        relax_count,
        pipeline_agrees,
    })
}

/// Refuses to report a tree that breaks its own guarantees.
fn self_check<W: Weight>(m: &TreeMetrics<W>, alpha: &Scalar) -> CliResult<()> {
    let bound = Scalar::weight_bound_for(alpha);
    let bad = m.stretch_violations(alpha);
    if !bad.is_empty() {
        return Err(CliError::Check(format!("stretch above {alpha} at vertices {bad:?}")));
    }
    if !m.weight_within(&bound) {
        return Err(CliError::Check(format!(
            "weight ratio {} above {bound}",
            m.weight_ratio
        )));
    }
    Ok(())
}

fn run_last<W: Weight>(g: &Graph<W>, args: &LastArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let root = pick_root(g, args.root)?;
    if is_one(&args.alpha) {
        let exact = as_exact_graph(g)?;
        let report = min_spt_report(&exact, root)?;
        return emit_last(&exact, &report, args, out);
    }
    if args.check_pipeline && !args.parallel_emulation {
        return Err(Error::InvalidArgument("--check-pipeline requires --parallel-emulation".into()).into());
    }
    let built = build(
        g,
        root,
        &args.alpha,
        args.parallel_emulation,
        args.check_pipeline,
        args.trace.then_some(err),
    )?;
    self_check(&built.metrics, &args.alpha)?;
    let mut metrics = MetricsJson::new(&built.metrics, Some(&args.alpha));
    metrics.relax_count = built.relax_count;
    let report = TreeReport {
        tree: TreeJson::new(&built.tree),
        total_weight: None,
        metrics: Some(metrics),
        pipeline_agrees: built.pipeline_agrees,
    };
    emit_last(g, &report, args, out)?;
    if built.pipeline_agrees == Some(false) {
        return Err(CliError::Check("pipeline J differs from the direct scan".into()));
    }
    Ok(())
}

fn is_one(alpha: &Scalar) -> bool {
    alpha.le(&Scalar::one()) && Scalar::one().le(alpha)
}

fn as_exact_graph<W: Weight>(g: &Graph<W>) -> CliResult<Graph<u64>> {
    let text = g.to_text();
    match parse_graph(&text)? {
        GraphFile::Exact(g) => Ok(g),
        GraphFile::Float(_) => Err(Error::InexactWeights.into()),
    }
}

fn emit_last<W: Weight>(g: &Graph<W>, report: &TreeReport<W>, args: &LastArgs, out: &mut dyn Write) -> CliResult<()> {
    let tree = TreeFile {
        root: report.tree.root,
        parent: report.tree.parent.clone(),
    }
    .to_tree(g)?;
    match &args.emit_dot {
        Some(path) if path == Path::new("-") => write_text(out, &tree_to_dot(g, &tree)),
        Some(path) => {
            std::fs::write(path, tree_to_dot(g, &tree)).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            json_line(out, report)
        }
        None => json_line(out, report),
    }
}

fn run_sweep<W: Weight>(g: &Graph<W>, args: &SweepArgs, out: &mut dyn Write) -> CliResult<()> {
    let root = pick_root(g, args.root)?;
    let mut rows = Vec::with_capacity(args.alphas.len());
    for alpha in &args.alphas {
        let metrics = if alpha.exceeds_one() {
            let built = build(g, root, alpha, args.parallel_emulation, false, None)?;
            self_check(&built.metrics, alpha)?;
            built.metrics
        } else if is_one(alpha) {
            let exact = as_exact_graph(g)?;
            let t = min_weight_spt(&exact, root)?.to_tree()?;
            let mst = minimum_spanning_tree(&exact, root)?.weight();
            let m = evaluate(&exact, &t, mst, root)?;
            rows.push(SweepRow {
                alpha: *alpha,
                max_stretch: m.max_stretch,
                weight_ratio: m.weight_ratio,
                paths_added: 0,
                tree_weight: parse_weight::<W>(m.tree_weight)?,
            });
            continue;
        } else {
            return Err(Error::InvalidArgument(format!("alpha must be at least 1, got {alpha}")).into());
        };
        rows.push(SweepRow {
            alpha: *alpha,
            max_stretch: metrics.max_stretch,
            weight_ratio: metrics.weight_ratio,
            paths_added: metrics.paths_added,
            tree_weight: metrics.tree_weight,
        });
    }
    write_text(out, &sweep_csv(&rows))
}

fn parse_weight<W: Weight>(w: u64) -> CliResult<W> {
    W::parse_token(&w.to_string())
        .or_else(|| W::parse_token(&format!("{w}.0")))
        .ok_or_else(|| Error::Invariant(format!("weight {w} not representable")).into())
}

fn run_gen(gen: GenCommand, out: &mut dyn Write) -> CliResult<()> {
    match gen {
        GenCommand::LowerBound {
            alpha,
            epsilon,
            delta,
            leaves,
        } => {
            let inst = gen_lower_bound(&LowerBoundSpec {
                alpha,
                epsilon,
                delta,
                leaves,
            })?;
            let header = format!(
                "# lower-bound family: alpha={alpha} epsilon={epsilon} delta={delta} leaves={leaves}\n\
                 # weights scaled by {}; predicted MST weight {}; predicted ratio bound {}\n",
                inst.scale,
                inst.predicted_mst_weight,
                Scalar::Exact(inst.predicted_ratio_bound),
            );
            write_text(out, &(header + &inst.graph.to_text()))
        }
        GenCommand::Threesat { alpha, cnf } => {
            let formula: SatFormula = read_input(&cnf)?.parse()?;
            let gadget = gen_3sat(&formula, &alpha)?;
            let [a, b, d, e, w] = gadget.weights;
            let header = format!(
                "# 3-SAT gadget for {formula}\n# alpha={alpha}, scale {}: A={a} B={b} D={d} E={e} W={w}\n",
                gadget.scale
            );
            write_text(out, &(header + &gadget.graph.to_text()))
        }
        GenCommand::Random { n, m, max_weight, seed } => {
            write_text(out, &gen_random(n, m, max_weight, seed)?.to_text())
        }
    }
}

#[derive(Serialize)]
struct MinBetaReport {
    alpha: String,
    min_beta: String,
    min_beta_value: f64,
    weight: u64,
    mst_weight: u64,
    tree: TreeJson<u64>,
}

#[derive(Serialize)]
struct CheckReport {
    alpha: String,
    beta: String,
    is_last: bool,
    max_stretch: f64,
    weight_ratio: f64,
}

fn run_oracle(cmd: OracleCommand, out: &mut dyn Write) -> CliResult<()> {
    match cmd {
        OracleCommand::MinBeta { alpha, root, graph } => {
            let file = read_graph(&graph)?;
            let g = file.exact()?;
            let root = pick_root(g, root)?;
            let s = min_beta_for_alpha(g, root, &alpha)?;
            let beta = Scalar::Exact(s.beta);
            json_line(
                out,
                &MinBetaReport {
                    alpha: alpha.to_string(),
                    min_beta: beta.to_string(),
                    min_beta_value: beta.to_f64(),
                    weight: s.weight,
                    mst_weight: s.mst_weight,
                    tree: TreeJson::new(&s.tree),
                },
            )
        }
        OracleCommand::Check {
            alpha,
            beta,
            root,
            graph,
            tree,
        } => {
            let file = read_graph(&graph)?;
            let g = file.exact()?;
            if !alpha.is_exact() || !beta.is_exact() {
                return Err(Error::InvalidArgument("the oracle only accepts exact alpha and beta".into()).into());
            }
            let t = TreeFile::parse(&read_input(&tree)?)?.to_tree(g)?;
            let root = pick_root(g, root.or(Some(t.root())))?;
            let mst = minimum_spanning_tree(g, root)?.weight();
            let m = evaluate(g, &t, mst, root)?;
            let ok = is_last(g, &t, root, &alpha, &beta, mst);
            json_line(
                out,
                &CheckReport {
                    alpha: alpha.to_string(),
                    beta: beta.to_string(),
                    is_last: ok,
                    max_stretch: m.max_stretch,
                    weight_ratio: m.weight_ratio,
                },
            )?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Check(format!("tree is not an ({alpha}, {beta})-LAST")))
            }
        }
    }
}

fn pick_root<W: Weight>(g: &Graph<W>, root: Option<usize>) -> CliResult<usize> {
    Ok(g.resolve_root(root.or(g.root()).or(Some(0)))?)
}
