use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use o1p_core::catalog::{availability_consistency_check, builtin_catalog, Claim, GadgetSpec};
use o1p_core::coloring::{
    brute_force_chromatic_index, check_coloring, verify_below_xy_lemma, verify_conditional_gadget,
    verify_gadget, verify_gadget_plan, verify_kite_lemma, verify_triangle_lemma, EdgeColoring,
    ListAssignment, Mode, VerificationReport,
};
use o1p_core::drawing::{DrawingError, OuterDrawing};
use o1p_core::factory::{
    enumerate_drawings, for_each_drawing, random_instance, random_lists, DrawingFilters,
    GeneratorConfig,
};
use o1p_core::solver::{audit_structure, color_outer1planar, verify_trace, SolveError};

macro_rules! out {
    ($($t:tt)*) => { out_raw!("{}\n", format_args!($($t)*)) };
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        use std::io::Write;
        if let Err(e) = write!(std::io::stdout().lock(), $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

/// Exit codes: 0 success, 1 I/O or schema error, 2 precondition or invalid
/// input, 3 counterexample or failed reduction.
#[derive(Parser)]
#[command(name = "o1p", version, about = "List edge coloring of outer-1-plane drawings")]
struct Cli {
    /// Worker threads for audits and gadget verification.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color a drawing from 4-lists and print the result with its trace.
    Color(ColorArgs),
    /// Check a coloring for properness and list membership.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        lists: Option<PathBuf>,
    },
    /// Verify gadget colorability claims.
    VerifyGadgets {
        #[arg(long)]
        gadget: Option<String>,
        /// Palette cap; without it the shipped plan runs.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::ExhaustiveCanonical)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the triangle, kite and below-xy extension lemmas.
    VerifyLemmas {
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Run the matcher on every small drawing of minimum degree 2.
    Audit {
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long)]
        two_connected: bool,
        /// Allow n_max above 8.
        #[arg(long)]
        force: bool,
    },
    /// Generate a random drawing.
    Gen(GenArgs),
    /// List all drawings on n vertices up to rotation and reflection, as JSON lines.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        filters: FilterArgs,
        #[arg(long)]
        force: bool,
    },
    /// Chromatic index by exhaustive search.
    ChiPrime {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Crossing distance of the drawing.
    Theta {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Graphviz rendering with vertices on a circle.
    ExportDot {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Inspect the configuration catalog.
    Catalog {
        #[arg(long)]
        dump: bool,
        /// Print the available-color bounds of every configuration.
        #[arg(long)]
        availability: bool,
    },
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, conflicts_with = "random_lists")]
    lists: Option<PathBuf>,
    #[arg(long)]
    random_lists: bool,
    #[arg(long, default_value_t = 4)]
    palette: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where witness files go when a reduction fails.
    #[arg(long, default_value = "o1p-witness")]
    witness_dir: PathBuf,
    /// Replay the trace before printing.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    min_crossings: usize,
    #[arg(long, default_value_t = 0)]
    max_crossings: usize,
    #[arg(long, default_value_t = 1.0)]
    boundary_density: f64,
    #[arg(long, default_value_t = 0.5)]
    chord_density: f64,
    #[arg(long)]
    two_connected: bool,
    #[arg(long)]
    min_degree_two: bool,
    #[arg(long)]
    theta3: bool,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    #[arg(long, default_value_t = 10_000)]
    retries: usize,
}

#[derive(Args)]
struct FilterArgs {
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    #[arg(long)]
    min_degree_two: bool,
    #[arg(long)]
    theta3: bool,
    #[arg(long)]
    two_connected: bool,
    #[arg(long, default_value_t = 0)]
    min_crossings: usize,
}

impl FilterArgs {
    fn filters(&self) -> DrawingFilters {
        DrawingFilters {
            max_degree: self.max_degree,
            min_degree_two: self.min_degree_two,
            theta_at_least_three: self.theta3,
            two_connected: self.two_connected,
            min_crossings: self.min_crossings,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    ExhaustiveCanonical,
    BoundedPalette,
    Randomized,
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    extra: serde_json::Value,
}

impl Failure {
    fn new(code: u8, kind: &'static str, message: impl ToString) -> Self {
        Failure {
            code,
            kind,
            message: message.to_string(),
            extra: serde_json::Value::Null,
        }
    }

    fn io(message: impl ToString) -> Self {
        Failure::new(1, "io", message)
    }

    fn schema(message: impl ToString) -> Self {
        Failure::new(1, "schema", message)
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<OuterDrawing, Failure> {
    OuterDrawing::from_json(&read(path)?).map_err(|e| Failure::schema(format!("{}: {e}", path.display())))
}

fn load_lists(path: &Path) -> Result<ListAssignment, Failure> {
    ListAssignment::from_json(&read(path)?).map_err(|e| Failure::schema(format!("{}: {e}", path.display())))
}

fn load_coloring(path: &Path) -> Result<EdgeColoring, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::schema(format!("{}: {e}", path.display())))
}

fn print_json<T: serde::Serialize>(value: &T) {
    out!("{}", serde_json::to_string(value).expect("output serializes"));
}

fn color(a: &ColorArgs) -> Outcome {
    let d = load_graph(&a.graph)?;
    let lists = match (&a.lists, a.random_lists) {
        (Some(p), _) => load_lists(p)?,
        (None, true) => random_lists(&d, 4, a.palette, a.seed).map_err(|e| Failure::new(2, "precondition", e))?,
        (None, false) => return Err(Failure::new(2, "usage", "give --lists or --random-lists")),
    };
    let catalog = builtin_catalog();
    match color_outer1planar(&d, &lists, catalog) {
        Ok(result) => {
            if a.verify {
                verify_trace(&d, &lists, catalog, &result)
                    .map_err(|v| Failure::new(3, "trace", v))?;
            }
            out!("{}", result.to_json());
            Ok(0)
        }
        Err(SolveError::PreconditionViolated(p)) => {
            let mut f = Failure::new(2, "precondition", &p);
            f.extra = serde_json::to_value(&p).expect("precondition serializes");
            Err(f)
        }
        Err(e @ (SolveError::NoConfigurationFound(_) | SolveError::ExtensionFailed(_))) => {
            let (SolveError::NoConfigurationFound(w) | SolveError::ExtensionFailed(w)) = &e else {
                unreachable!()
            };
            let stem = format!("{}-{}", w.kind, std::process::id());
            let (path, cmd) = w
                .write_to(&a.witness_dir, &stem)
                .map_err(|err| Failure::io(format!("writing witness: {err}")))?;
            let mut f = Failure::new(3, "witness", &e);
            f.extra = json!({ "witness": path.display().to_string(), "reproduce": cmd });
            Err(f)
        }
    }
}

fn check(graph: &Path, coloring: &Path, lists: Option<&Path>) -> Outcome {
    let d = load_graph(graph)?;
    let c = load_coloring(coloring)?;
    let l = lists.map(load_lists).transpose()?;
    match check_coloring(&d, l.as_ref(), &c) {
        Ok(()) => {
            print_json(&json!({ "ok": true }));
            Ok(0)
        }
        Err(v) => {
            print_json(&json!({ "ok": false, "violations": v }));
            Ok(2)
        }
    }
}

fn gadget_runs(g: &GadgetSpec, cap: Option<usize>, mode: Mode, seed: u64) -> Result<Vec<VerificationReport>, String> {
    let Some(cap) = cap else {
        return verify_gadget_plan(g, seed).map_err(|e| e.to_string());
    };
    match &g.condition {
        None => Ok(vec![verify_gadget(g, cap, mode).map_err(|e| e.to_string())?]),
        Some(c) => c
            .alternatives()
            .into_iter()
            .map(|alt| verify_conditional_gadget(g, alt, cap, mode).map_err(|e| e.to_string()))
            .collect(),
    }
}

fn verify_gadgets(id: Option<&str>, cap: Option<usize>, mode: ModeArg, samples: u64, seed: u64) -> Outcome {
    let catalog = builtin_catalog();
    let gadgets: Vec<&GadgetSpec> = match id {
        Some(id) => vec![catalog.gadget(id).map_err(|e| Failure::new(2, "unknown-gadget", e))?],
        None => catalog.gadgets.iter().filter(|g| g.claim != Claim::NoClaim).collect(),
    };
    let mode = match mode {
        ModeArg::ExhaustiveCanonical => Mode::ExhaustiveCanonical,
        ModeArg::BoundedPalette => Mode::BoundedPalette,
        ModeArg::Randomized => Mode::Randomized { samples, seed },
    };
    let results: Vec<Result<Vec<VerificationReport>, String>> =
        gadgets.par_iter().map(|g| gadget_runs(g, cap, mode, seed)).collect();
    let mut code = 0;
    for (g, r) in gadgets.iter().zip(results) {
        let reports = r.map_err(|e| Failure::new(2, "verification", format!("{}: {e}", g.id)))?;
        for rep in reports {
            if !rep.verified() && g.claim != Claim::NoClaim {
                code = 3;
            }
            print_json(&rep);
        }
    }
    Ok(code)
}

fn verify_lemmas(cap: Option<usize>) -> Outcome {
    let runs = [
        verify_triangle_lemma(cap.unwrap_or(8)),
        verify_kite_lemma(cap.unwrap_or(10)),
        verify_below_xy_lemma(cap.unwrap_or(8)),
    ];
    let mut code = 0;
    for r in runs {
        let r = r.map_err(|e| Failure::new(2, "verification", e))?;
        if !r.holds() {
            code = 3;
        }
        print_json(&r);
    }
    Ok(code)
}

fn audit(n_max: usize, two_connected: bool, force: bool) -> Outcome {
    let filters = DrawingFilters {
        min_degree_two: true,
        theta_at_least_three: true,
        two_connected,
        ..Default::default()
    };
    let report = audit_structure(n_max, &filters, builtin_catalog(), force)
        .map_err(|e| Failure::new(2, "precondition", e))?;
    print_json(&report);
    Ok(if report.passed() { 0 } else { 3 })
}

fn gen(a: &GenArgs) -> Outcome {
    let cfg = GeneratorConfig {
        n: a.n,
        seed: a.seed,
        min_crossings: a.min_crossings,
        max_crossings: a.max_crossings,
        boundary_density: a.boundary_density,
        chord_density: a.chord_density,
        require_two_connected: a.two_connected,
        require_min_degree_two: a.min_degree_two,
        require_theta_at_least_three: a.theta3,
        max_degree: a.max_degree,
        retry_budget: a.retries,
    };
    let d = random_instance(&cfg).map_err(|e| Failure::new(2, "generation", e))?;
    out!("{}", d.to_json());
    Ok(0)
}

fn enumerate(n: usize, filters: &FilterArgs, force: bool) -> Outcome {
    let f = filters.filters();
    let result = if force {
        for_each_drawing(n, &f, true, |d| out!("{}", d.to_json()))
    } else {
        enumerate_drawings(n, &f).map(|all| all.iter().for_each(|d| out!("{}", d.to_json())))
    };
    result.map_err(|e| Failure::new(2, "precondition", e))?;
    Ok(0)
}

fn drawing_failure(e: DrawingError) -> Failure {
    Failure::new(2, "precondition", e)
}

fn run(cli: Cli) -> Outcome {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::new(2, "usage", e))?;
    }
    match cli.command {
        Command::Color(a) => color(&a),
        Command::Check { graph, coloring, lists } => check(&graph, &coloring, lists.as_deref()),
        Command::VerifyGadgets {
            gadget,
            cap,
            mode,
            samples,
            seed,
        } => verify_gadgets(gadget.as_deref(), cap, mode, samples, seed),
        Command::VerifyLemmas { cap } => verify_lemmas(cap),
        Command::Audit {
            n_max,
            two_connected,
            force,
        } => audit(n_max, two_connected, force),
        Command::Gen(a) => gen(&a),
        Command::Enumerate { n, filters, force } => enumerate(n, &filters, force),
        Command::ChiPrime { graph } => {
            let d = load_graph(&graph)?;
            let k = brute_force_chromatic_index(&d).map_err(|e| Failure::new(2, "too-large", e))?;
            out!("{k}");
            Ok(0)
        }
        Command::Theta { graph } => {
            let d = load_graph(&graph)?;
            out!("{}", d.crossing_distance().map_err(drawing_failure)?);
            Ok(0)
        }
        Command::ExportDot { graph, coloring } => {
            let d = load_graph(&graph)?;
            let c = coloring.as_deref().map(load_coloring).transpose()?;
            out_raw!("{}", d.to_dot(c.as_ref()));
            Ok(0)
        }
        Command::Catalog { dump, availability } => {
            let catalog = builtin_catalog();
            if dump {
                out!("{}", catalog.to_json());
            } else if availability {
                for cfg in catalog.solver_configurations() {
                    let gadget = cfg
                        .reduction
                        .as_ref()
                        .and_then(|r| r.gadget_id())
                        .expect("solver configurations reduce");
                    let g = catalog.gadget(gadget).expect("validated");
                    let report = availability_consistency_check(cfg, g).map_err(Failure::schema)?;
                    print_json(&report);
                }
            } else {
                for cfg in &catalog.configurations {
                    let target = cfg.reduction.as_ref().and_then(|r| r.gadget_id()).unwrap_or("-");
                    out!("{:4} -> {}", cfg.id, target);
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let mut body = json!({ "error": f.kind, "message": f.message });
            if let serde_json::Value::Object(extra) = f.extra {
                body.as_object_mut().expect("object").extend(extra);
            } else if !f.extra.is_null() {
                body["detail"] = f.extra;
            }
            eprintln!("{body}");
            ExitCode::from(f.code)
        }
    }
}
