use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dyntrail::bijection::{self, AlternatingCycle};
use dyntrail::io::{self, DocumentError};
use dyntrail::local::{build_local_graph, detect_complete_multipartite, kotzig_condition, Multipartite};
use dyntrail::matching::perfect_matching_avoiding;
use dyntrail::oracle::{self, TrailKind};
use dyntrail::solver::{self, Route, SolveOutcome, TrailPartition};
use dyntrail::trail::{check_dynamic_h_trail, is_euler, DynamicHTrail, TrailVerdict};
use dyntrail::{build_aux, gen, Error, Instance, SearchCap};

#[derive(Parser)]
#[command(name = "dyntrail", version, about = "Closed Euler dynamic H-trails in H-colored multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest number of edges for exhaustive trail search.
    #[arg(long, global = true, default_value_t = 10)]
    cap_edges: usize,
    /// Largest auxiliary graph for Hamiltonian and matching search.
    #[arg(long, global = true, default_value_t = 30)]
    cap_vertices: usize,
    /// Time budget for a single search, in seconds.
    #[arg(long, global = true, default_value_t = 60)]
    cap_seconds: u64,
    /// Seed for `generate`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PartitionMode {
    Dynamic,
    HTrail,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleQuery {
    Trails,
    Hamiltonian,
    Matchings,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DotObject {
    G,
    H,
    Aux,
}

#[derive(Subcommand)]
enum Command {
    /// Check the instance and any trails it carries.
    Validate { file: PathBuf },
    /// Build the auxiliary graph L_n.
    BuildAux {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Search for a closed Euler dynamic trail.
    Solve { file: PathBuf },
    /// Partition the edges into closed trails.
    Partition {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = PartitionMode::Dynamic)]
        mode: PartitionMode,
    },
    /// Check the color-degree condition at every vertex.
    CheckKotzig { file: PathBuf },
    /// Recognize complete multipartite local graphs.
    CheckMultipartite { file: PathBuf },
    /// Convert between closed trails and alternating cycles of L_2.
    Bijection {
        file: PathBuf,
        /// Map the document's first trail to its cycle.
        #[arg(long, conflicts_with_all = ["to_trail", "verify"])]
        to_cycle: bool,
        /// Map the cycle given with --cycle to its trail.
        #[arg(long, requires = "cycle", conflicts_with = "verify")]
        to_trail: bool,
        /// Comma-separated vertex labels of L_2, starting with a joint edge.
        #[arg(long)]
        cycle: Option<String>,
        /// Compare both sides exhaustively.
        #[arg(long)]
        verify: bool,
    },
    /// Exhaustive reference searches.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum)]
        what: OracleQuery,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Render G, H or L_n as Graphviz.
    ExportDot {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DotObject::G)]
        object: DotObject,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Print a random instance.
    Generate {
        #[arg(long, default_value_t = 5)]
        vertices: usize,
        #[arg(long, default_value_t = 7)]
        edges: usize,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 2)]
        multiplicity: usize,
        /// Make every degree even by drawing one closed walk of --edges steps.
        #[arg(long)]
        closed_walk: bool,
    },
}

const AFFIRMATIVE: u8 = 0;
const NEGATIVE: u8 = 1;
const UNDECIDED: u8 = 2;
const INPUT_ERROR: u8 = 3;

struct Report {
    code: u8,
    text: String,
    value: Value,
}

impl Report {
    fn new(affirmative: bool, text: String, value: Value) -> Self {
        Report { code: if affirmative { AFFIRMATIVE } else { NEGATIVE }, text, value }
    }
}

enum Failure {
    Input(String),
    Undecided(String),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded(_) => Failure::Undecided(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = SearchCap {
        max_edges: cli.cap_edges,
        max_aux_vertices: cli.cap_vertices,
        time_budget: Duration::from_secs(cli.cap_seconds),
        ..SearchCap::default()
    };
    let (code, text, value) = match run(&cli, &cap) {
        Ok(r) => (r.code, r.text, r.value),
        Err(Failure::Undecided(msg)) => (UNDECIDED, format!("undecided: {msg}\n"), json!({ "verdict": "undecided", "reason": msg })),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(INPUT_ERROR);
        }
    };
    match cli.format {
        Format::Text => print!("{text}"),
        Format::Structured => println!("{}", serde_json::to_string_pretty(&value).expect("json value")),
    }
    ExitCode::from(code)
}

fn load(path: &PathBuf) -> Result<io::InstanceDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(io::parse_document(&text)?)
}

fn run(cli: &Cli, cap: &SearchCap) -> Result<Report, Failure> {
    match &cli.command {
        Command::Validate { file } => validate(&load(file)?),
        Command::BuildAux { file, n } => build_aux_cmd(&load(file)?.instance, *n),
        Command::Solve { file } => solve(&load(file)?.instance, cap),
        Command::Partition { file, mode } => partition(&load(file)?.instance, *mode),
        Command::CheckKotzig { file } => check_kotzig(&load(file)?.instance),
        Command::CheckMultipartite { file } => check_multipartite(&load(file)?.instance),
        Command::Bijection { file, to_cycle, to_trail, cycle, verify } => {
            let doc = load(file)?;
            if *verify {
                bijection_verify(&doc.instance, cap)
            } else if *to_trail {
                bijection_to_trail(&doc.instance, cycle.as_deref().unwrap_or_default())
            } else if *to_cycle {
                bijection_to_cycle(&doc)
            } else {
                Err(Failure::Input("one of --to-cycle, --to-trail or --verify is required".into()))
            }
        }
        Command::Oracle { file, what, n } => oracle_cmd(&load(file)?.instance, *what, *n, cap),
        Command::ExportDot { file, object, n } => export_dot(&load(file)?.instance, *object, *n),
        Command::Generate { vertices, edges, colors, density, multiplicity, closed_walk } => {
            if *colors == 0 || !(0.0..=1.0).contains(density) {
                return Err(Failure::Input("need at least one color and a density in [0, 1]".into()));
            }
            let mut rng = gen::rng(cli.seed);
            let inst = if *closed_walk {
                if *vertices < 2 || *edges < 2 {
                    return Err(Failure::Input("a closed walk needs two vertices and two edges".into()));
                }
                gen::random_closed_walk_instance(&mut rng, *vertices, *edges, *colors, *density)
            } else {
                let p = gen::GenParams {
                    vertices: *vertices,
                    edges: *edges,
                    colors: *colors,
                    density: *density,
                    max_multiplicity: *multiplicity,
                };
                gen::random_instance(&mut rng, &p)
            };
            let text = io::serialize_document(&inst, &[]);
            let value = serde_json::from_str(&text).expect("serialized document is json");
            Ok(Report { code: AFFIRMATIVE, text: text + "\n", value })
        }
    }
}

fn trail_text(inst: &Instance, w: &DynamicHTrail) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    for grp in &w.groups {
        let ids: Vec<&str> = grp.block.iter().map(|&e| g.edge(e).id.as_str()).collect();
        write!(out, "{} [{}] ", g.vertex_name(grp.anchor), ids.join(" ")).unwrap();
    }
    write!(out, "{} ({})", g.vertex_name(w.terminal), w.closure).unwrap();
    out
}

fn trail_value(inst: &Instance, w: &DynamicHTrail) -> Value {
    serde_json::to_value(io::trail_to_def(inst, w)).expect("trail serializes")
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Structure => "structure",
        Route::LocalMatching => "local-matching",
        Route::Hamiltonian => "hamiltonian",
    }
}

fn validate(doc: &io::InstanceDocument) -> Result<Report, Failure> {
    let inst = &doc.instance;
    let mut text = format!(
        "instance: {} colors, {} vertices, {} edges\n",
        inst.pattern.len(),
        inst.graph.vertex_count(),
        inst.graph.edge_count()
    );
    let mut all_valid = true;
    let mut trails = Vec::new();
    for (i, w) in doc.trails.iter().enumerate() {
        let verdict = match check_dynamic_h_trail(inst, w) {
            Ok(TrailVerdict::Valid) => None,
            Ok(TrailVerdict::Invalid(v)) => Some(v.to_string()),
            Err(e) => Some(e.to_string()),
        };
        let euler = is_euler(inst, w);
        let euler_ok = euler.covers_all && !euler.degenerate;
        all_valid &= verdict.is_none();
        match &verdict {
            None => writeln!(text, "trails[{i}]: valid, {}", if euler_ok { "euler" } else { "not euler" }).unwrap(),
            Some(v) => writeln!(text, "trails[{i}]: invalid: {v}").unwrap(),
        }
        trails.push(json!({ "valid": verdict.is_none(), "violation": verdict, "euler": euler_ok }));
    }
    let value = json!({ "valid": all_valid, "trails": trails });
    Ok(Report::new(all_valid, text, value))
}

fn build_aux_cmd(inst: &Instance, n: usize) -> Result<Report, Failure> {
    let aux = build_aux(inst, n)?;
    let labels: Vec<String> = (0..aux.vertex_count()).map(|i| aux.label(inst, i)).collect();
    let edges: Vec<(usize, usize)> = aux.graph().edges().collect();
    let text = format!("L_{n}: {} vertices, {} edges\n", aux.vertex_count(), edges.len());
    let edge_labels: Vec<[&str; 2]> = edges.iter().map(|&(a, b)| [labels[a].as_str(), labels[b].as_str()]).collect();
    let value = json!({ "n": n, "vertices": labels, "edges": edge_labels });
    Ok(Report::new(true, text, value))
}

fn solve(inst: &Instance, cap: &SearchCap) -> Result<Report, Failure> {
    match solver::find_closed_euler_dynamic_h_trail(inst, cap)? {
        SolveOutcome::Found { trail, route } => Ok(Report::new(
            true,
            format!("found: {}\n", trail_text(inst, &trail)),
            json!({ "verdict": "found", "route": route_name(route), "trail": trail_value(inst, &trail) }),
        )),
        SolveOutcome::None { route } => Ok(Report::new(
            false,
            "none\n".into(),
            json!({ "verdict": "none", "route": route_name(route) }),
        )),
        SolveOutcome::Undecided { reason } => Err(Failure::Undecided(reason)),
    }
}

fn partition_report(inst: &Instance, p: Option<TrailPartition>) -> Report {
    match p {
        None => Report::new(false, "none\n".into(), json!({ "verdict": "none" })),
        Some(p) => {
            let trails = p.dynamic(inst);
            let mut text = format!("found: {} trails\n", trails.len());
            for w in &trails {
                writeln!(text, "  {}", trail_text(inst, w)).unwrap();
            }
            let value: Vec<Value> = trails.iter().map(|w| trail_value(inst, w)).collect();
            Report::new(true, text, json!({ "verdict": "found", "trails": value }))
        }
    }
}

fn partition(inst: &Instance, mode: PartitionMode) -> Result<Report, Failure> {
    let p = match mode {
        PartitionMode::Dynamic => {
            let aux = build_aux(inst, 2)?;
            match perfect_matching_avoiding(&aux)? {
                Some(m) => Some(solver::partition_from_matching(inst, &aux, &m)?),
                None => None,
            }
        }
        PartitionMode::HTrail => solver::partition_into_closed_h_trails(inst)?,
    };
    Ok(partition_report(inst, p))
}

fn check_kotzig(inst: &Instance) -> Result<Report, Failure> {
    let g = &inst.graph;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for v in g.vertices() {
        let r = kotzig_condition(inst, v)?;
        all &= r.holds;
        let degrees: Vec<String> = r.degrees.iter().map(|&(c, d)| format!("{}={d}", inst.pattern.name(c))).collect();
        writeln!(text, "{}: {} ({})", g.vertex_name(v), if r.holds { "holds" } else { "fails" }, degrees.join(", ")).unwrap();
        let map: serde_json::Map<String, Value> =
            r.degrees.iter().map(|&(c, d)| (inst.pattern.name(c).to_string(), json!(d))).collect();
        rows.push(json!({ "vertex": g.vertex_name(v), "holds": r.holds, "degrees": map }));
    }
    Ok(Report::new(all, text, json!({ "holds": all, "vertices": rows })))
}

fn check_multipartite(inst: &Instance) -> Result<Report, Failure> {
    let g = &inst.graph;
    let id = |e: dyntrail::EdgeId| g.edge(e).id.clone();
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for v in g.vertices() {
        let name = g.vertex_name(v);
        match detect_complete_multipartite(&build_local_graph(inst, v)?) {
            Multipartite::Complete(w) => {
                let parts: Vec<Vec<String>> = w.parts.iter().map(|p| p.iter().map(|&e| id(e)).collect()).collect();
                let shown: Vec<String> = parts.iter().map(|p| format!("{{{}}}", p.join(" "))).collect();
                writeln!(text, "{name}: complete multipartite, {} parts {}", parts.len(), shown.join(" ")).unwrap();
                rows.push(json!({ "vertex": name, "complete": true, "parts": parts }));
            }
            Multipartite::Refused { a, b, c } => {
                all = false;
                writeln!(text, "{name}: refused ({} ~ {}, both apart from {})", id(a), id(c), id(b)).unwrap();
                rows.push(json!({ "vertex": name, "complete": false, "witness": [id(a), id(b), id(c)] }));
            }
        }
    }
    Ok(Report::new(all, text, json!({ "complete": all, "vertices": rows })))
}

fn bijection_to_cycle(doc: &io::InstanceDocument) -> Result<Report, Failure> {
    let inst = &doc.instance;
    let w = doc.trails.first().ok_or_else(|| Failure::Input("the document carries no trail".into()))?;
    let aux = build_aux(inst, 2)?;
    let c = bijection::trail_to_cycle(inst, &aux, w)?;
    let labels: Vec<String> = c.vertices().iter().map(|&i| aux.label(inst, i)).collect();
    Ok(Report::new(true, labels.join(",") + "\n", json!({ "cycle": labels })))
}

fn bijection_to_trail(inst: &Instance, cycle: &str) -> Result<Report, Failure> {
    let aux = build_aux(inst, 2)?;
    let labels: Vec<String> = (0..aux.vertex_count()).map(|i| aux.label(inst, i)).collect();
    let mut vertices = Vec::new();
    // labels contain commas themselves, so split on the closing parenthesis
    for raw in cycle.split_inclusive(')') {
        let label = raw.trim_start_matches(',').trim();
        if label.is_empty() {
            continue;
        }
        let i = labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Failure::Input(format!("unknown vertex label '{label}'")))?;
        vertices.push(i);
    }
    let c = AlternatingCycle::new(&aux, vertices)?;
    let w = bijection::cycle_to_trail(inst, &aux, &c)?;
    Ok(Report::new(true, trail_text(inst, &w) + "\n", json!({ "trail": trail_value(inst, &w) })))
}

fn bijection_verify(inst: &Instance, cap: &SearchCap) -> Result<Report, Failure> {
    let r = bijection::verify_bijection(inst, cap)?;
    let text = format!(
        "{} trails, {} cycles: {}\n",
        r.trails,
        r.cycles,
        if r.holds() { "bijection holds" } else { "bijection fails" }
    );
    let value = json!({
        "trails": r.trails,
        "cycles": r.cycles,
        "injective": r.injective,
        "surjective": r.surjective,
        "well_defined": r.well_defined,
        "round_trips": r.round_trips,
        "holds": r.holds(),
    });
    Ok(Report::new(r.holds(), text, value))
}

fn oracle_cmd(inst: &Instance, what: OracleQuery, n: usize, cap: &SearchCap) -> Result<Report, Failure> {
    let g = &inst.graph;
    match what {
        OracleQuery::Trails => {
            let trails = oracle::enumerate_closed_trails(inst, cap, TrailKind::Dynamic)?;
            let euler: Vec<Vec<&str>> = trails
                .iter()
                .filter(|t| t.euler)
                .map(|t| t.edges().map(|e| g.edge(e).id.as_str()).collect())
                .collect();
            let mut text = format!("{} closed trails, {} euler\n", trails.len(), euler.len());
            for t in &euler {
                writeln!(text, "  {}", t.join(" ")).unwrap();
            }
            Ok(Report::new(!euler.is_empty(), text, json!({ "trails": trails.len(), "euler": euler })))
        }
        OracleQuery::Hamiltonian => {
            let aux = build_aux(inst, n)?;
            match oracle::hamiltonian_cycle(aux.graph(), cap)? {
                Some(c) => {
                    let labels: Vec<String> = c.iter().map(|&i| aux.label(inst, i)).collect();
                    let text = format!("L_{n} ({} vertices) is hamiltonian: {}\n", aux.vertex_count(), labels.join(" "));
                    Ok(Report::new(true, text, json!({ "n": n, "vertices": aux.vertex_count(), "hamiltonian": true, "cycle": labels })))
                }
                None => {
                    let text = format!("L_{n} ({} vertices) is not hamiltonian\n", aux.vertex_count());
                    Ok(Report::new(false, text, json!({ "n": n, "vertices": aux.vertex_count(), "hamiltonian": false })))
                }
            }
        }
        OracleQuery::Matchings => {
            let aux = build_aux(inst, 2)?;
            let ms = oracle::all_perfect_matchings(&aux.without_joint_matching()?, cap)?;
            let text = format!("{} perfect matchings avoiding the joint edges\n", ms.len());
            Ok(Report::new(!ms.is_empty(), text, json!({ "perfect_matchings": ms.len() })))
        }
    }
}

fn export_dot(inst: &Instance, object: DotObject, n: usize) -> Result<Report, Failure> {
    let text = match object {
        DotObject::G => io::graph_to_dot(inst),
        DotObject::H => io::pattern_to_dot(inst),
        DotObject::Aux => io::aux_to_dot(inst, &build_aux(inst, n)?),
    };
    let value = json!({ "dot": text });
    Ok(Report::new(true, text, value))
}
