use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use rainbow_sat::constructions::{
    construct_acyclic_edge, construct_clique_random, construct_disconnected, construct_hkl,
    construct_k3_steiner, construct_rotated_even, construct_star_forest, construct_triangle_edge,
    ConstructionOutput,
};
use rainbow_sat::families::parse_pattern;
use rainbow_sat::saturation::{exact_sat, verify_saturated};
use rainbow_sat::structure::{classify, find_special_edge, SpecialEdge};
use rainbow_sat::{ColoredGraph, Pattern};

/// Construction, verification, and classification of rainbow-saturated
/// edge-coloured graphs.
#[derive(Parser)]
#[command(name = "rainbow-sat", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Txt,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionName {
    AcyclicEdge,
    TriangleEdge,
    Hkl,
    RotatedEven,
    CliqueRandom,
    K3Steiner,
    StarForest,
    Disconnected,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named construction and emit the graph plus a metadata sidecar.
    Construct {
        #[arg(value_enum)]
        name: ConstructionName,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Palette size, where the construction takes one.
        #[arg(long)]
        t: Option<u32>,
        /// Clique order for rotated-even / clique-random.
        #[arg(long)]
        r: Option<u32>,
        /// k parameter for hkl.
        #[arg(long)]
        k: Option<usize>,
        /// l parameter for hkl.
        #[arg(long)]
        l: Option<usize>,
        /// Pattern spec (family name such as K4, P4, C5, S3, H_4_2,
        /// rotated_K4, K3+K2) or a graph file path.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path for the graph (sidecar goes to <out>.meta); stdout
        /// when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
    },
    /// Verify that a graph file is rainbow-H-saturated; exit 0 iff it is.
    Verify {
        /// Graph file in the text format.
        graph: PathBuf,
        #[arg(long)]
        pattern: String,
        /// Cap on the number of unsaturated pairs listed.
        #[arg(long, default_value_t = 10)]
        max_report: usize,
    },
    /// Print the growth class of a pattern at palette size t.
    Classify {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        t: u32,
    },
    /// Exact minimum edge count of a rainbow-saturated graph (tiny
    /// instances only), with a witness.
    ExactSat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        pattern: String,
        /// Override the feasibility gate.
        #[arg(long)]
        force: bool,
        /// Where to write the witness graph.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the routed construction for a pattern at one or more sizes and
    /// print a machine-readable bound-comparison table.
    Report {
        #[arg(long)]
        pattern: String,
        /// Sizes to run, repeatable.
        #[arg(long, required = true)]
        n: Vec<usize>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const EXIT_UNSATURATED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn load_pattern(spec: &str) -> Result<Pattern, String> {
    if let Ok(p) = parse_pattern(spec) {
        return Ok(p);
    }
    if Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
        let g = ColoredGraph::from_text(&text).map_err(|e| format!("{spec}: {e}"))?;
        let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
        return Pattern::new(g.n(), &edges).map_err(|e| e.to_string());
    }
    Err(format!("`{spec}` is neither a known family nor a readable file"))
}

fn render(g: &ColoredGraph, format: Format) -> String {
    match format {
        Format::Txt => g.to_text(),
        Format::Dot => g.to_dot(),
    }
}

fn emit_construction(
    out: &ConstructionOutput,
    dest: &Option<PathBuf>,
    format: Format,
    elapsed_ms: u128,
) -> Result<(), String> {
    let body = render(&out.graph, format);
    let report = format!(
        "construction={} n={} t={} edges={} declared_bound={} seed={} retries={} wall_ms={}",
        out.name,
        out.graph.n(),
        out.graph.t(),
        out.graph.edge_count(),
        out.declared_bound,
        out.seed.map_or("-".into(), |s| s.to_string()),
        out.retries,
        elapsed_ms,
    );
    match dest {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))?;
            let meta = path.with_extension(format!(
                "{}meta",
                path.extension().map_or(String::new(), |e| format!(
                    "{}.",
                    e.to_string_lossy()
                ))
            ));
            std::fs::write(&meta, out.metadata_text())
                .map_err(|e| format!("{}: {e}", meta.display()))?;
            println!("{report}");
        }
        None => {
            print!("{body}");
            eprintln!("{report}");
        }
    }
    Ok(())
}

fn run_construction(
    name: ConstructionName,
    n: usize,
    t: Option<u32>,
    r: Option<u32>,
    k: Option<usize>,
    l: Option<usize>,
    pattern: &Option<String>,
    seed: u64,
) -> Result<ConstructionOutput, String> {
    let need_pattern = || -> Result<Pattern, String> {
        pattern
            .as_deref()
            .ok_or_else(|| "--pattern is required for this construction".to_string())
            .and_then(load_pattern)
    };
    let need = |flag: &str, v: Option<u32>| -> Result<u32, String> {
        v.ok_or_else(|| format!("--{flag} is required for this construction"))
    };
    let res = match name {
        ConstructionName::AcyclicEdge => construct_acyclic_edge(n, &need_pattern()?),
        ConstructionName::TriangleEdge => construct_triangle_edge(n, &need_pattern()?, seed),
        ConstructionName::Hkl => {
            let k = k.ok_or("--k is required for hkl")?;
            let l = l.ok_or("--l is required for hkl")?;
            construct_hkl(n, k, l, need("t", t)?)
        }
        ConstructionName::RotatedEven => construct_rotated_even(n, need("r", r)?),
        ConstructionName::CliqueRandom => {
            construct_clique_random(n, need("r", r)? as usize, need("t", t)?, seed)
        }
        ConstructionName::K3Steiner => construct_k3_steiner(n, need("t", t)?),
        ConstructionName::StarForest => construct_star_forest(n, &need_pattern()?),
        ConstructionName::Disconnected => {
            let h = need_pattern()?;
            let t = t.unwrap_or(h.edge_count() as u32);
            construct_disconnected(n, &h, t, seed)
        }
    };
    res.map_err(|e| e.to_string())
}

/// Routes a pattern to the construction its structure calls for.
fn auto_construct(
    n: usize,
    h: &Pattern,
    t: Option<u32>,
    seed: u64,
) -> Result<ConstructionOutput, String> {
    if !h.is_connected() {
        let t = t.unwrap_or(h.edge_count() as u32);
        return construct_disconnected(n, h, t, seed).map_err(|e| e.to_string());
    }
    match find_special_edge(h).map_err(|e| e.to_string())? {
        SpecialEdge::CycleNotTriangle(_) | SpecialEdge::NonPendantBridge(_) => {
            construct_acyclic_edge(n, h).map_err(|e| e.to_string())
        }
        SpecialEdge::TriangleEdge(_) => {
            construct_triangle_edge(n, h, seed).map_err(|e| e.to_string())
        }
        SpecialEdge::NoSpecialEdge => {
            Err("stars have no linear/log construction; quadratic growth".into())
        }
    }
}

fn cmd_verify(graph: &Path, pattern: &str, max_report: usize) -> Result<u8, String> {
    let text = std::fs::read_to_string(graph).map_err(|e| format!("{}: {e}", graph.display()))?;
    let g = ColoredGraph::from_text(&text).map_err(|e| format!("{}: {e}", graph.display()))?;
    let h = load_pattern(pattern)?;
    let start = Instant::now();
    let cert = verify_saturated(&g, &h).map_err(|e| e.to_string())?;
    let verdict = if cert.is_saturated() { "saturated" } else { "not-saturated" };
    println!(
        "verdict={} rainbow_free={} unsaturated_pairs={} edges={} wall_ms={}",
        verdict,
        cert.rainbow_free,
        cert.unsaturated.len(),
        cert.edge_count,
        start.elapsed().as_millis(),
    );
    for ((u, v), c) in cert.unsaturated.iter().take(max_report) {
        println!("unsaturated {u} {v} {c}");
    }
    if cert.unsaturated.len() > max_report {
        println!("... {} more", cert.unsaturated.len() - max_report);
    }
    Ok(if cert.is_saturated() { 0 } else { EXIT_UNSATURATED })
}

fn cmd_classify(pattern: &str, t: u32) -> Result<u8, String> {
    let h = load_pattern(pattern)?;
    let g = classify(&h, t).map_err(|e| e.to_string())?;
    let clauses: Vec<&str> = g.clauses.iter().map(|c| c.label()).collect();
    println!("growth={} clauses=[{}]", g.tag.label(), clauses.join("; "));
    if let Ok(se) = find_special_edge(&h) {
        if let Some((u, v)) = se.edge() {
            println!("special_edge={u},{v} kind={}", se.kind());
        }
    }
    Ok(0)
}

fn cmd_exact_sat(
    n: usize,
    t: u32,
    pattern: &str,
    force: bool,
    out: &Option<PathBuf>,
) -> Result<u8, String> {
    let h = load_pattern(pattern)?;
    let start = Instant::now();
    let (value, witness) = exact_sat(n, t, &h, force).map_err(|e| e.to_string())?;
    println!(
        "exact_sat={value} n={n} t={t} wall_ms={}",
        start.elapsed().as_millis()
    );
    if let Some(path) = out {
        std::fs::write(path, witness.to_text()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(0)
}

fn cmd_report(pattern: &str, sizes: &[usize], t: Option<u32>, seed: u64) -> Result<u8, String> {
    let h = load_pattern(pattern)?;
    println!("pattern n t construction edges declared_bound saturated retries wall_ms");
    let mut all_ok = true;
    for &n in sizes {
        let start = Instant::now();
        let out = auto_construct(n, &h, t, seed)?;
        let cert = verify_saturated(&out.graph, &h).map_err(|e| e.to_string())?;
        let ok = cert.is_saturated() && (out.graph.edge_count() as f64) <= out.declared_bound;
        all_ok &= ok;
        println!(
            "{pattern} {n} {} {} {} {} {} {} {}",
            out.graph.t(),
            out.name,
            out.graph.edge_count(),
            out.declared_bound,
            ok,
            out.retries,
            start.elapsed().as_millis(),
        );
    }
    Ok(if all_ok { 0 } else { EXIT_UNSATURATED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Construct {
            name,
            n,
            t,
            r,
            k,
            l,
            pattern,
            seed,
            out,
            format,
        } => {
            let start = Instant::now();
            run_construction(*name, *n, *t, *r, *k, *l, pattern, *seed).and_then(|res| {
                emit_construction(&res, out, *format, start.elapsed().as_millis()).map(|_| 0)
            })
        }
        Command::Verify {
            graph,
            pattern,
            max_report,
        } => cmd_verify(graph, pattern, *max_report),
        Command::Classify { pattern, t } => cmd_classify(pattern, *t),
        Command::ExactSat {
            n,
            t,
            pattern,
            force,
            out,
        } => cmd_exact_sat(*n, *t, pattern, *force, out),
        Command::Report {
            pattern,
            n,
            t,
            seed,
        } => cmd_report(pattern, n, *t, *seed),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
