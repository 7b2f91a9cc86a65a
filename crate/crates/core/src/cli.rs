//! The `hypercolor` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 infeasible precondition (1-intersection graph not bipartite or not
//! 4-colorable), 4 exact-solver cap exceeded, 70 internal invariant
//! violation in a colorer.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::color::{four_color, greedy_color, two_color, ColorError, RecoloringTrace};
use crate::exact::{
    bipartition, graph_chromatic_number, hypergraph_chromatic_number, ExactError, SolverCaps,
    DEFAULT_GRAPH_CAP, DEFAULT_HYPERGRAPH_CAP,
};
use crate::format::{parse_coloring, parse_hypergraph, write_coloring, write_hypergraph};
use crate::gen;
use crate::hypergraph::{check_proper, Hypergraph, IntersectionGraph, VertexColoring};
use crate::search::{run_search, Parity, Range, SearchConfig, SearchMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_CAP: i32 = 4;
/// A colorer broke one of its own invariants.
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Parser)]
#[command(name = "hypercolor", version, about = "Proper hypergraph colorings from the 1-intersection graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Two,
    Four,
    Greedy,
}

#[derive(Debug, Clone, Copy, Args)]
struct CapArgs {
    /// Largest hypergraph vertex count for the exact chromatic-number oracle.
    #[arg(long, default_value_t = DEFAULT_HYPERGRAPH_CAP)]
    cap_n: usize,
    /// Largest 1-intersection graph for the exact graph colorer.
    #[arg(long, default_value_t = DEFAULT_GRAPH_CAP)]
    cap_ig: usize,
}

impl CapArgs {
    fn caps(&self) -> SolverCaps {
        SolverCaps { max_graph_vertices: self.cap_ig, max_hypergraph_vertices: self.cap_n }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Summarise a hypergraph and its 1-intersection graph.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Color a hypergraph with one of the constructive colorers.
    Color {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Coloring output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the recoloring trace of `--method two` as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Check that a coloring leaves no edge monochromatic.
    Verify { hypergraph: PathBuf, coloring: PathBuf },
    /// Compute χ(H^[1]) and χ(H) exactly.
    Oracle {
        file: PathBuf,
        /// Witness coloring output file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Generate a hypergraph family.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Output file (stdout if absent).
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Randomized audit of χ(H) against χ(H^[1]).
    Search(SearchArgs),
}

#[derive(Debug, Subcommand)]
enum Family {
    /// The complete graph K_n.
    Complete { n: usize },
    /// K_n (n even) plus the 3-edge {0,1,2}.
    CompletePlusTriple { n: usize },
    /// m edges of the given size sharing only vertex 0.
    Universal { m: usize, size: usize },
    /// The Fano plane.
    Fano,
    /// Seeded random hypergraph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        min_size: usize,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Conjecture,
    Theorem3Uniform,
    TwoColorStress,
    FourColorStress,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
    Any,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Conjecture)]
    mode: ModeArg,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ParityArg::Any)]
    parity: ParityArg,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    m_min: usize,
    #[arg(long, default_value_t = 12)]
    m_max: usize,
    #[arg(long, default_value_t = 2)]
    size_min: usize,
    #[arg(long, default_value_t = 4)]
    size_max: usize,
    /// Only sample edges of at least this size.
    #[arg(long, default_value_t = 2)]
    min_edge_size: usize,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// JSON report output file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Directory receiving one hypergraph file per violation.
    #[arg(long)]
    violations_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(flatten)]
    caps: CapArgs,
}

/// A failure that ends the command with a specific exit code.
struct Exit {
    code: i32,
    message: String,
}

impl Exit {
    fn input(message: impl Into<String>) -> Self {
        Exit { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<ExactError> for Exit {
    fn from(e: ExactError) -> Self {
        Exit { code: EXIT_CAP, message: e.to_string() }
    }
}

impl From<ColorError> for Exit {
    fn from(e: ColorError) -> Self {
        let code = match &e {
            ColorError::NotBipartite1IG { .. } | ColorError::Not4Colorable1IG => EXIT_INFEASIBLE,
            ColorError::LimitExceeded(_) => EXIT_CAP,
            ColorError::InvalidClasses(_) => EXIT_INPUT,
            ColorError::InternalInvariantViolation(_) | ColorError::NoFreeColor { .. } => EXIT_INTERNAL,
        };
        Exit { code, message: e.to_string() }
    }
}

type CmdResult = Result<i32, Exit>;

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
            } else {
                let _ = write!(stdout, "{}", e.render());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze { file, format, caps } => cmd_analyze(&file, format, caps.caps(), stdout),
        Command::Color { file, method, out, trace, caps } => {
            cmd_color(&file, method, out.as_deref(), trace.as_deref(), caps.caps(), stdout)
        }
        Command::Verify { hypergraph, coloring } => cmd_verify(&hypergraph, &coloring, stdout),
        Command::Oracle { file, out, format, caps } => {
            cmd_oracle(&file, out.as_deref(), format, caps.caps(), stdout)
        }
        Command::Gen { family, out } => cmd_gen(family, out.as_deref(), stdout),
        Command::Search(args) => cmd_search(args, stdout),
    };
    match result {
        Ok(code) => code,
        Err(Exit { code, message }) => {
            let _ = writeln!(stderr, "error: {message}");
            code
        }
    }
}

fn read_file(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| Exit::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Exit> {
    fs::write(path, contents).map_err(|e| Exit::input(format!("{}: {e}", path.display())))
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph, Exit> {
    parse_hypergraph(&read_file(path)?).map_err(|e| Exit::input(format!("{}: {e}", path.display())))
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<(), Exit> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Exit::input(format!("stdout: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_analyze(path: &Path, format: OutputFormat, caps: SolverCaps, stdout: &mut dyn Write) -> CmdResult {
    let h = load_hypergraph(path)?;
    let g = IntersectionGraph::of(&h);
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for e in h.edges() {
        *sizes.entry(e.len()).or_default() += 1;
    }
    let bipartite = bipartition(&g).is_ok();
    let (chi_ig, note) = match graph_chromatic_number(&g, &caps) {
        Ok((k, _)) => (Some(k), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let text = match format {
        OutputFormat::Json => to_json(&json!({
            "schema": "hypercolor.analyze/1",
            "n": h.n(),
            "m": h.m(),
            "edge_size_histogram": sizes,
            "ig_edges": g.edge_count(),
            "bipartite": bipartite,
            "chi_ig": chi_ig,
            "chi_ig_note": note,
        })),
        OutputFormat::Text => {
            let hist: Vec<String> = sizes.iter().map(|(s, c)| format!("{s}:{c}")).collect();
            let chi = match (chi_ig, &note) {
                (Some(k), _) => k.to_string(),
                (None, Some(n)) => format!("unknown ({n})"),
                (None, None) => unreachable!(),
            };
            format!(
                "vertices     {}\nedges        {}\nedge sizes   {}\nH1 edges     {}\nbipartite    {}\nchi(H1)      {}\n",
                h.n(),
                h.m(),
                hist.join(" "),
                g.edge_count(),
                bipartite,
                chi
            )
        }
    };
    emit(stdout, &text)?;
    Ok(EXIT_OK)
}

fn cmd_color(
    path: &Path,
    method: Method,
    out: Option<&Path>,
    trace_path: Option<&Path>,
    caps: SolverCaps,
    stdout: &mut dyn Write,
) -> CmdResult {
    let h = load_hypergraph(path)?;
    let mut trace: Option<RecoloringTrace> = None;
    let coloring: VertexColoring = match method {
        Method::Two => {
            let (c, t) = two_color(&h)?;
            trace = Some(t);
            c
        }
        Method::Four => four_color(&h, &caps)?.coloring,
        Method::Greedy => {
            let (_, classes) = graph_chromatic_number(&IntersectionGraph::of(&h), &caps)?;
            greedy_color(&h, &classes)?
        }
    };
    if let Some(tp) = trace_path {
        match &trace {
            Some(t) => write_file(tp, &to_json(&json!({ "schema": "hypercolor.trace/1", "rounds": t.rounds })))?,
            None => return Err(Exit::input("--trace is only available with --method two")),
        }
    }
    let body = write_coloring(&coloring);
    match out {
        Some(p) => {
            write_file(p, &body)?;
            emit(
                stdout,
                &format!("colored {} vertices with {} colors\n", coloring.len(), coloring.distinct_colors()),
            )?;
        }
        None => emit(stdout, &body)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(hpath: &Path, cpath: &Path, stdout: &mut dyn Write) -> CmdResult {
    let h = load_hypergraph(hpath)?;
    let c = parse_coloring(&read_file(cpath)?)
        .map_err(|e| Exit::input(format!("{}: {e}", cpath.display())))?;
    if c.len() != h.n() {
        return Err(Exit::input(format!(
            "coloring covers {} vertices, hypergraph has {}",
            c.len(),
            h.n()
        )));
    }
    let check = check_proper(&h, &c);
    if check.is_proper() {
        emit(stdout, "proper\n")?;
        return Ok(EXIT_OK);
    }
    let mut text = format!("not proper: {} monochromatic edge(s)\n", check.monochromatic.len());
    for e in &check.monochromatic {
        let verts: Vec<String> = h.edge(*e).iter().map(|v| v.to_string()).collect();
        text.push_str(&format!("edge {e}: {}\n", verts.join(" ")));
    }
    emit(stdout, &text)?;
    Ok(EXIT_VERIFY_FAILED)
}

fn cmd_oracle(
    path: &Path,
    out: Option<&Path>,
    format: OutputFormat,
    caps: SolverCaps,
    stdout: &mut dyn Write,
) -> CmdResult {
    let h = load_hypergraph(path)?;
    let (chi_ig, _) = graph_chromatic_number(&IntersectionGraph::of(&h), &caps)?;
    let (chi_h, witness) = hypergraph_chromatic_number(&h, &caps)?;
    if let Some(p) = out {
        write_file(p, &write_coloring(&witness))?;
    }
    let text = match format {
        OutputFormat::Json => to_json(&json!({
            "schema": "hypercolor.oracle/1",
            "chi_ig": chi_ig,
            "chi_h": chi_h,
        })),
        OutputFormat::Text => format!("chi(H1) {chi_ig}\nchi(H)  {chi_h}\n"),
    };
    emit(stdout, &text)?;
    Ok(EXIT_OK)
}

fn cmd_gen(family: Family, out: Option<&Path>, stdout: &mut dyn Write) -> CmdResult {
    let h = match family {
        Family::Complete { n } => gen::complete_graph(n),
        Family::CompletePlusTriple { n } => gen::complete_plus_triple(n),
        Family::Universal { m, size } => gen::universal_vertex_family(m, size),
        Family::Fano => Ok(gen::fano_plane()),
        Family::Random { n, m, min_size, max_size, seed } => {
            gen::random_hypergraph(n, m, min_size, max_size, seed)
        }
    }
    .map_err(|e| Exit::input(e.to_string()))?;
    let body = write_hypergraph(&h);
    match out {
        Some(p) => write_file(p, &body)?,
        None => emit(stdout, &body)?,
    }
    Ok(EXIT_OK)
}

fn cmd_search(args: SearchArgs, stdout: &mut dyn Write) -> CmdResult {
    let cfg = SearchConfig {
        n_range: Range::new(args.n_min, args.n_max),
        m_range: Range::new(args.m_min, args.m_max),
        size_range: Range::new(args.size_min, args.size_max),
        trials: args.trials,
        base_seed: args.seed,
        parity_filter: match args.parity {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
            ParityArg::Any => Parity::Any,
        },
        min_edge_size_filter: args.min_edge_size,
        mode: match args.mode {
            ModeArg::Conjecture => SearchMode::ConjectureAudit,
            ModeArg::Theorem3Uniform => SearchMode::TheoremAudit3Uniform,
            ModeArg::TwoColorStress => SearchMode::TwoColorStress,
            ModeArg::FourColorStress => SearchMode::FourColorStress,
        },
        caps: args.caps.caps(),
    };
    let report = run_search(&cfg, args.jobs).map_err(|e| Exit::input(e.to_string()))?;
    let json = to_json(&report);
    if let Some(p) = &args.report {
        write_file(p, &json)?;
    }
    if let Some(dir) = &args.violations_dir {
        fs::create_dir_all(dir).map_err(|e| Exit::input(format!("{}: {e}", dir.display())))?;
        for v in &report.violations {
            let h = v.params.replay();
            let header = format!(
                "# trial {} seed {} n {} m {} sizes {}..={} chi(H1) {} chi(H) {}\n",
                v.trial, v.params.seed, v.params.n, v.params.m, v.params.min_size, v.params.max_size, v.chi_ig, v.chi_h
            );
            let name = dir.join(format!("violation-seed-{}.hg", v.params.seed));
            write_file(&name, &(header + &write_hypergraph(&h)))?;
        }
    }
    match args.format {
        OutputFormat::Json => emit(stdout, &json)?,
        OutputFormat::Text => emit(stdout, &report.render_text())?,
    }
    Ok(EXIT_OK)
}
