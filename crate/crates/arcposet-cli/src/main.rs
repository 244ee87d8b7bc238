//! Command-line front end for the `arcposet` library: enumeration,
//! statistics, Hasse-diagram export, q-polynomials, interval summaries,
//! and the verification suite.
//!
//! Exit codes: 0 on success, 1 when the verification suite reports a
//! failing check, 2 on usage errors (malformed flags, unparsable input,
//! out-of-budget parameters).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use arcposet::arc_diagrams::{ArcDiagram, SetPartition};
use arcposet::poset::{BoundKind, DotOptions, FinitePoset, Grading, LatticeVerdict};
use arcposet::qstirling::{bracket_direct, bracket_recurrence, gr_stirling, staircase_rook_poly};
use arcposet::rook_monoid::{phi, phi_inv, Rook, Universe};
use arcposet::theorems::{
    diagram_poset, run_catalog, run_theorem, special_diagrams, stirling_poset, universe_poset,
    THEOREM_IDS,
};
use arcposet::ParseError;

/// Default size budgets. Bell-number growth is the only way a request
/// blows up, so anything larger needs `--unsafe-nmax`; hard library
/// limits still apply beyond these.
const ENUMERATE_BUDGET_N: usize = 8;
const DIAGRAM_POSET_BUDGET_N: usize = 7;
const ROOK_POSET_BUDGET_N: usize = 5;
const RECURRENCE_BUDGET_N: usize = 32;

#[derive(Parser)]
#[command(
    name = "arcposet",
    version,
    about = "Arc diagrams, rook placements, their Bruhat-style orders, and q-Stirling polynomials"
)]
struct Cli {
    /// Lift the default size budgets (library hard limits still apply).
    #[arg(long, global = true)]
    unsafe_nmax: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List arc diagrams on n vertices, optionally with a fixed arc count.
    Enumerate(EnumerateArgs),
    /// Report every statistic of one diagram or placement word.
    Stats(StatsArgs),
    /// Export a Hasse diagram as DOT or JSON.
    Hasse(HasseArgs),
    /// Print one q-polynomial.
    Qpoly(QpolyArgs),
    /// Summarize an interval of the diagram or placement order.
    Interval(IntervalArgs),
    /// Run the verification suite and emit a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Restrict to diagrams with exactly this many arcs.
    #[arg(long)]
    arcs: Option<usize>,
    #[arg(long, value_enum, default_value_t = ListFormat::Text)]
    format: ListFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ListFormat {
    Text,
    Json,
}

#[derive(Args)]
struct StatsArgs {
    /// Set partition: bar notation ("18|2569|37|4", dots between
    /// multi-digit labels) or a JSON array of blocks.
    #[arg(long, conflicts_with = "rook", required_unless_present = "rook")]
    partition: Option<String>,
    /// Placement word in one-line notation, e.g. "4,0,5,0,3,1".
    #[arg(long)]
    rook: Option<String>,
}

#[derive(Args)]
struct HasseArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertices (diagram families) or columns (rook family).
    #[arg(long)]
    n: usize,
    /// Arc count; stirling family only.
    #[arg(long)]
    k: Option<usize>,
    /// Lower endpoint; interval family only.
    #[arg(long)]
    x: Option<String>,
    /// Upper endpoint; interval family only.
    #[arg(long)]
    y: Option<String>,
    #[arg(long, value_enum)]
    format: GraphFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// All diagrams on n vertices.
    Full,
    /// Diagrams on n vertices with exactly k arcs.
    Stirling,
    /// All placements of n columns.
    Rook,
    /// An interval, located by its endpoints.
    Interval,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Args)]
struct QpolyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    method: Method,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Sum q^t over diagrams with k arcs.
    Direct,
    /// Two-term recurrence for the same polynomial.
    Recurrence,
    /// Classical q-Stirling number S[n][k].
    Gr,
    /// Rank-k staircase rook polynomial.
    Staircase,
}

#[derive(Args)]
struct IntervalArgs {
    /// Vertices (diagram endpoints) or columns (rook endpoints).
    #[arg(long)]
    n: usize,
    /// Lower endpoint: X, Y, Z, W, a partition, or a placement word.
    #[arg(long)]
    from: String,
    /// Upper endpoint, same forms as --from.
    #[arg(long)]
    to: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every theorem check.
    #[arg(long, conflicts_with = "theorem")]
    all: bool,
    /// Run a single theorem check by id.
    #[arg(long)]
    theorem: Option<String>,
    /// Upper bound on the instance size (each check also enforces its
    /// own internal cap).
    #[arg(long)]
    nmax: usize,
    /// Also write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// A command that could not complete.
#[derive(Debug)]
enum Failure {
    /// Malformed flags, unparsable input, or out-of-budget parameters.
    Usage(String),
    /// The verification suite ran and at least one check failed.
    Verification,
}

impl From<arcposet::Error> for Failure {
    fn from(e: arcposet::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_failure(context: &str, e: &ParseError) -> Failure {
    Failure::Usage(format!("{context}\n{}", e.caret_diagnostic()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Enumerate(args) => cmd_enumerate(args, cli.unsafe_nmax),
        Command::Stats(args) => cmd_stats(args),
        Command::Hasse(args) => cmd_hasse(args, cli.unsafe_nmax),
        Command::Qpoly(args) => cmd_qpoly(args, cli.unsafe_nmax),
        Command::Interval(args) => cmd_interval(args, cli.unsafe_nmax),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn check_budget(what: &str, n: usize, budget: usize, unsafe_nmax: bool) -> Result<(), Failure> {
    if n > budget && !unsafe_nmax {
        return Err(Failure::Usage(format!(
            "{what}: n must be at most {budget} by default; pass --unsafe-nmax to go further"
        )));
    }
    Ok(())
}

/// Parses a set partition given either in bar notation or as a JSON
/// array of blocks; the vertex count is the largest label.
fn parse_partition(token: &str) -> Result<ArcDiagram, Failure> {
    let trimmed = token.trim();
    if trimmed.starts_with('[') {
        let blocks: Vec<Vec<usize>> = serde_json::from_str(trimmed)
            .map_err(|e| Failure::Usage(format!("invalid JSON partition: {e}")))?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        let partition = SetPartition::new(n, blocks)?;
        Ok(ArcDiagram::from_set_partition(&partition))
    } else {
        ArcDiagram::parse(trimmed).map_err(|e| parse_failure("invalid partition", &e))
    }
}

/// Whether an endpoint token denotes a placement word rather than a
/// partition: words use parentheses or bare commas, while JSON
/// partitions start with a bracket.
fn is_rook_token(token: &str) -> bool {
    let trimmed = token.trim();
    !trimmed.starts_with('[') && (trimmed.contains('(') || trimmed.contains(','))
}

/// Resolves an endpoint of a diagram-order interval: one of the letters
/// X, Y, Z, W (even n only) or a partition.
fn resolve_diagram_endpoint(n: usize, token: &str) -> Result<ArcDiagram, Failure> {
    let trimmed = token.trim();
    let letter = match trimmed {
        "X" | "x" => Some('x'),
        "Y" | "y" => Some('y'),
        "Z" | "z" => Some('z'),
        "W" | "w" => Some('w'),
        _ => None,
    };
    let diagram = if let Some(letter) = letter {
        if n % 2 != 0 || n == 0 {
            return Err(Failure::Usage(format!(
                "endpoint {}: the special diagrams live on an even number of vertices",
                trimmed.to_uppercase()
            )));
        }
        let specials = special_diagrams(n / 2)?;
        match letter {
            'x' => specials.x,
            'y' => specials.y,
            'z' => specials.z,
            _ => specials.w,
        }
    } else {
        parse_partition(trimmed)?
    };
    if diagram.n() != n {
        return Err(Failure::Usage(format!(
            "endpoint {trimmed}: describes {} vertices, expected {n}",
            diagram.n()
        )));
    }
    Ok(diagram)
}

fn position_of(poset: &FinitePoset, label: &str) -> Result<usize, Failure> {
    poset
        .position_of_label(label)
        .ok_or_else(|| Failure::Usage(format!("element not in the poset: {label}")))
}

fn cmd_enumerate(args: &EnumerateArgs, unsafe_nmax: bool) -> Result<(), Failure> {
    check_budget("enumerate", args.n, ENUMERATE_BUDGET_N, unsafe_nmax)?;
    let mut diagrams = match args.arcs {
        Some(k) => ArcDiagram::enumerate_with_arcs(args.n, k)?,
        None => ArcDiagram::enumerate(args.n)?,
    };
    diagrams.sort_by_cached_key(|d| (d.t_index(), d.to_set_partition().to_string()));

    match args.format {
        ListFormat::Text => {
            let stdout = std::io::stdout();
            let mut out = std::io::BufWriter::new(stdout.lock());
            for d in &diagrams {
                let _ = writeln!(out, "{}", d.to_set_partition());
            }
        }
        ListFormat::Json => {
            let elements: Vec<serde_json::Value> = diagrams
                .iter()
                .map(|d| {
                    json!({
                        "partition": d.to_set_partition().to_string(),
                        "arcs": d.arcs().collect::<Vec<_>>(),
                        "t": d.t_index(),
                    })
                })
                .collect();
            let payload = json!({
                "schema": 1,
                "n": args.n,
                "arcs": args.arcs,
                "count": diagrams.len(),
                "elements": elements,
            });
            println!("{payload}");
        }
    }
    Ok(())
}

/// Chain vertices rendered like a partition block: fused digits while
/// every label is a single digit, dot separated beyond that.
fn chain_label(chain: &[usize], fused: bool) -> String {
    let parts: Vec<String> = chain.iter().map(|v| v.to_string()).collect();
    parts.join(if fused { "" } else { "." })
}

fn cmd_stats(args: &StatsArgs) -> Result<(), Failure> {
    if let Some(token) = &args.partition {
        let diagram = parse_partition(token)?;
        print_diagram_stats(&diagram);
        return Ok(());
    }
    let token = args.rook.as_ref().expect("clap enforces one input");
    let rook = Rook::parse(token).map_err(|e| parse_failure("invalid placement word", &e))?;
    print_rook_stats(&rook);
    Ok(())
}

fn print_diagram_stats(diagram: &ArcDiagram) {
    let n = diagram.n();
    let fused = n <= 9;
    let word = phi(diagram);

    println!("partition: {}", diagram.to_set_partition());
    println!("n: {n}");
    println!("arcs: {}", diagram.arc_count());
    println!("chains: {}", diagram.chains().len());
    println!("t: {}", diagram.t_index());
    println!("c: {}", diagram.c_index());
    println!("word: {word}");
    println!("length: {}", word.length());

    let depths: Vec<String> = (1..=n)
        .map(|v| {
            diagram
                .depth_vertex(v)
                .expect("vertices are in range")
                .to_string()
        })
        .collect();
    println!("vertex depths: {}", depths.join(" "));

    for arc in diagram.arcs() {
        let depth = diagram.depth_arc(arc).expect("arc is present");
        let cross = diagram.cross_arc(arc).expect("arc is present");
        println!("arc ({},{}): depth {depth}, cross {cross}", arc.0, arc.1);
    }
    for chain in diagram.chains() {
        let depth = diagram.depth_chain(&chain).expect("chain is maximal");
        println!("chain {}: depth {depth}", chain_label(&chain, fused));
    }
}

fn print_rook_stats(rook: &Rook) {
    let n = rook.n();
    let entry_sum: u64 = rook.entries().map(|a| a as u64).sum();
    let shifted_sum: u64 = rook
        .entries()
        .enumerate()
        .map(|(i, a)| {
            if a == 0 {
                0
            } else {
                a as u64 + (n - i - 1) as u64
            }
        })
        .sum();
    let length = rook.length();

    println!("word: {rook}");
    println!("n: {n}");
    println!("rank: {}", rook.rank());
    println!("length: {length}");
    println!("entry sum: {entry_sum}");
    println!("inversions: {}", length - entry_sum);
    println!("shifted entry sum: {shifted_sum}");
    println!("coinversions: {}", shifted_sum - length);

    let fixed = rook.fixed_points();
    if fixed.is_empty() {
        println!("fixed points: none");
    } else {
        let parts: Vec<String> = fixed.iter().map(|v| v.to_string()).collect();
        println!("fixed points: {}", parts.join(" "));
    }
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    println!("idempotent: {}", yes_no(rook.is_idempotent()));
    println!("upper triangular: {}", yes_no(rook.is_upper()));
    println!(
        "strictly upper triangular: {}",
        yes_no(rook.is_strictly_upper())
    );
    if rook.is_strictly_upper() {
        let diagram = phi_inv(rook).expect("strictly upper words correspond to diagrams");
        println!("partition: {}", diagram.to_set_partition());
    }
}

/// A built Hasse-export target: the poset plus its identifying fields.
struct BuiltFamily {
    poset: FinitePoset,
    graph_name: String,
    fields: Vec<(&'static str, serde_json::Value)>,
}

fn build_family(args: &HasseArgs, unsafe_nmax: bool) -> Result<BuiltFamily, Failure> {
    if args.k.is_some() && args.family != Family::Stirling {
        return Err(Failure::Usage(
            "--k applies to the stirling family only".into(),
        ));
    }
    if (args.x.is_some() || args.y.is_some()) && args.family != Family::Interval {
        return Err(Failure::Usage(
            "--x and --y apply to the interval family only".into(),
        ));
    }
    let n = args.n;
    match args.family {
        Family::Full => {
            check_budget("hasse --family full", n, DIAGRAM_POSET_BUDGET_N, unsafe_nmax)?;
            Ok(BuiltFamily {
                poset: diagram_poset(n)?,
                graph_name: format!("diagrams_{n}"),
                fields: vec![("family", json!("full")), ("n", json!(n))],
            })
        }
        Family::Stirling => {
            let k = args.k.ok_or_else(|| {
                Failure::Usage("the stirling family needs --k (the arc count)".into())
            })?;
            Ok(BuiltFamily {
                poset: stirling_poset(n, k)?,
                graph_name: format!("stirling_{n}_{k}"),
                fields: vec![("family", json!("stirling")), ("n", json!(n)), ("k", json!(k))],
            })
        }
        Family::Rook => {
            check_budget("hasse --family rook", n, ROOK_POSET_BUDGET_N, unsafe_nmax)?;
            Ok(BuiltFamily {
                poset: universe_poset(Universe::Full, n)?,
                graph_name: format!("rooks_{n}"),
                fields: vec![("family", json!("rook")), ("n", json!(n))],
            })
        }
        Family::Interval => {
            let x = args.x.as_ref().ok_or_else(|| {
                Failure::Usage("the interval family needs --x and --y endpoints".into())
            })?;
            let y = args.y.as_ref().ok_or_else(|| {
                Failure::Usage("the interval family needs --x and --y endpoints".into())
            })?;
            let (poset, from_label, to_label) = build_interval(n, x, y, unsafe_nmax)?;
            Ok(BuiltFamily {
                poset,
                graph_name: format!("interval_{n}"),
                fields: vec![
                    ("family", json!("interval")),
                    ("n", json!(n)),
                    ("x", json!(from_label)),
                    ("y", json!(to_label)),
                ],
            })
        }
    }
}

/// Extracts `[from, to]` out of the diagram order (partition or letter
/// endpoints) or the placement order (one-line-word endpoints).
fn build_interval(
    n: usize,
    from: &str,
    to: &str,
    unsafe_nmax: bool,
) -> Result<(FinitePoset, String, String), Failure> {
    if is_rook_token(from) || is_rook_token(to) {
        let parse = |token: &str| -> Result<Rook, Failure> {
            let rook =
                Rook::parse(token).map_err(|e| parse_failure("invalid placement word", &e))?;
            if rook.n() != n {
                return Err(Failure::Usage(format!(
                    "endpoint {token}: describes {} columns, expected {n}",
                    rook.n()
                )));
            }
            Ok(rook)
        };
        let lower = parse(from)?;
        let upper = parse(to)?;
        check_budget("interval in the placement order", n, ROOK_POSET_BUDGET_N, unsafe_nmax)?;
        let ambient = universe_poset(Universe::Full, n)?;
        let x = position_of(&ambient, &lower.to_string())?;
        let y = position_of(&ambient, &upper.to_string())?;
        Ok((
            ambient.interval(x, y)?,
            lower.to_string(),
            upper.to_string(),
        ))
    } else {
        let lower = resolve_diagram_endpoint(n, from)?;
        let upper = resolve_diagram_endpoint(n, to)?;
        check_budget("interval in the diagram order", n, DIAGRAM_POSET_BUDGET_N, unsafe_nmax)?;
        let ambient = diagram_poset(n)?;
        let x = position_of(&ambient, &lower.to_set_partition().to_string())?;
        let y = position_of(&ambient, &upper.to_set_partition().to_string())?;
        Ok((
            ambient.interval(x, y)?,
            lower.to_set_partition().to_string(),
            upper.to_set_partition().to_string(),
        ))
    }
}

fn cmd_hasse(args: &HasseArgs, unsafe_nmax: bool) -> Result<(), Failure> {
    let built = build_family(args, unsafe_nmax)?;
    match args.format {
        GraphFormat::Dot => {
            let options = DotOptions {
                graph_name: built.graph_name,
                align_ranks: true,
            };
            print!("{}", built.poset.to_dot(&options));
        }
        GraphFormat::Json => {
            let mut payload = serde_json::Map::new();
            payload.insert("schema".into(), json!(1));
            for (key, value) in built.fields {
                payload.insert(key.into(), value);
            }
            payload.insert("elements".into(), json!(built.poset.labels()));
            let covers: Vec<(usize, usize)> = built.poset.cover_pairs().collect();
            payload.insert("covers".into(), json!(covers));
            println!("{}", serde_json::Value::Object(payload));
        }
    }
    Ok(())
}

fn cmd_qpoly(args: &QpolyArgs, unsafe_nmax: bool) -> Result<(), Failure> {
    let poly = match args.method {
        Method::Direct => bracket_direct(args.n, args.k)?,
        Method::Staircase => staircase_rook_poly(args.n, args.k)?,
        Method::Recurrence => {
            check_budget("qpoly --method recurrence", args.n, RECURRENCE_BUDGET_N, unsafe_nmax)?;
            bracket_recurrence(args.n, args.k)
        }
        Method::Gr => {
            check_budget("qpoly --method gr", args.n, RECURRENCE_BUDGET_N, unsafe_nmax)?;
            gr_stirling(args.n, args.k)
        }
    };
    println!("{poly}");
    Ok(())
}

fn cmd_interval(args: &IntervalArgs, unsafe_nmax: bool) -> Result<(), Failure> {
    let rook_world = is_rook_token(&args.from) || is_rook_token(&args.to);
    let (interval, from_label, to_label) =
        build_interval(args.n, &args.from, &args.to, unsafe_nmax)?;

    if rook_world {
        println!("interval of the placement order on {} columns", args.n);
    } else {
        println!("interval of the diagram order on {} vertices", args.n);
    }
    println!("from: {from_label}");
    println!("to: {to_label}");
    println!("elements: {}", interval.len());
    if interval.is_empty() {
        return Ok(());
    }
    println!("cover edges: {}", interval.cover_count());

    match interval.grading() {
        Grading::Graded { ranks } => {
            let top = ranks.iter().copied().max().unwrap_or(0);
            println!("graded: yes (rank length {top})");
            match interval.is_lattice() {
                LatticeVerdict::Lattice => println!("lattice: yes"),
                LatticeVerdict::NotLattice { x, y, missing } => {
                    let kind = match missing {
                        BoundKind::Meet => "meet",
                        BoundKind::Join => "join",
                    };
                    println!(
                        "lattice: no ({} and {} have no {kind})",
                        interval.label(x),
                        interval.label(y)
                    );
                }
            }
            let mut layers: Vec<Vec<&str>> = vec![Vec::new(); top as usize + 1];
            for (i, &r) in ranks.iter().enumerate() {
                layers[r as usize].push(interval.label(i));
            }
            for (r, layer) in layers.iter_mut().enumerate() {
                layer.sort_unstable();
                println!("rank {r}: {}", layer.join(", "));
            }
        }
        Grading::NotGraded { lower, upper } => {
            println!(
                "graded: no (cover {} -> {} breaks every rank function)",
                interval.label(lower),
                interval.label(upper)
            );
            let mut members: Vec<&str> = (0..interval.len()).map(|i| interval.label(i)).collect();
            members.sort_unstable();
            println!("members: {}", members.join(", "));
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let reports = if args.all {
        run_catalog(args.nmax)?
    } else {
        let id = args.theorem.as_ref().ok_or_else(|| {
            Failure::Usage(format!(
                "pass --all or --theorem <ID>; known ids: {}",
                THEOREM_IDS.join(", ")
            ))
        })?;
        run_theorem(id, args.nmax)?
    };

    let pass = reports.iter().all(|r| r.passed());
    let payload = json!({
        "schema": 1,
        "nmax": args.nmax,
        "pass": pass,
        "reports": reports,
    });
    let text = serde_json::to_string_pretty(&payload).expect("reports serialize");
    println!("{text}");
    if let Some(path) = &args.report {
        std::fs::write(path, format!("{text}\n")).map_err(|e| {
            Failure::Usage(format!("cannot write report to {}: {e}", path.display()))
        })?;
    }

    if pass {
        Ok(())
    } else {
        let failed = reports.iter().filter(|r| !r.passed()).count();
        eprintln!(
            "verification failed: {failed} of {} checks did not pass",
            reports.len()
        );
        Err(Failure::Verification)
    }
}
