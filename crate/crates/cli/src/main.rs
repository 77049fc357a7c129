use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ehk_core::document::{ModelDocument, Provenance};
use ehk_core::graph::{parse_dimacs, Graph};
use ehk_core::invariants::ellipticity::{is_elliptic, Method};
use ehk_core::invariants::{
    graph_report_with, model_ellipticity, model_report, summarize, InvariantReport, ReportOptions,
};
use ehk_core::model::SullivanModel;
use ehk_core::reduction::{build_v, build_w, constants};
use ehk_core::verify::{self, VerifyConfig};
use ehk_core::{Caps, Error};

mod render;

const EXIT_ELLIPTIC: u8 = 0;
const EXIT_NOT_ELLIPTIC: u8 = 10;
const EXIT_CAPACITY: u8 = 20;
const EXIT_ERROR: u8 = 1;

#[derive(Parser)]
#[command(name = "ehk", version, about = "Graph colouring instances as pure Sullivan algebras")]
struct Cli {
    #[command(flatten)]
    caps: CapFlags,
    #[command(subcommand)]
    command: Command,
}

/// Override the `EHK_*` environment variables.
#[derive(Args)]
struct CapFlags {
    /// Largest degree slice, in monomials [env: EHK_MAX_SLICE_DIM]
    #[arg(long, global = true)]
    max_slice_dim: Option<usize>,
    /// Largest degree a slice is enumerated in [env: EHK_MAX_DEGREE]
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Largest dense elimination matrix, in cells [env: EHK_MAX_DENSE_CELLS]
    #[arg(long, global = true)]
    max_dense_cells: Option<usize>,
    /// Largest even slice for the solver-based ΛW power check [env: EHK_W_SOLVER_MAX_DIM]
    #[arg(long, global = true)]
    w_solver_max_dim: Option<usize>,
}

impl CapFlags {
    fn resolve(&self) -> Result<Caps, Error> {
        let mut caps = Caps::from_env()?;
        if let Some(v) = self.max_slice_dim {
            caps.max_slice_dim = v;
        }
        if let Some(v) = self.max_degree {
            caps.max_degree = v;
        }
        if let Some(v) = self.max_dense_cells {
            caps.max_dense_cells = v;
        }
        if let Some(v) = self.w_solver_max_dim {
            caps.w_solver_max_dim = v;
        }
        Ok(caps)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    V,
    W,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Nilpotence,
    Coloring,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Nilpotence => Method::Nilpotence,
            MethodArg::Coloring => Method::Coloring,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// DIMACS .col graph
    #[arg(long)]
    graph: Option<PathBuf>,
    /// ModelDocument JSON of a pure Sullivan algebra
    #[arg(long)]
    model: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build ΛV_{G,k} or ΛW_{G,k} and write it as a ModelDocument.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value = "v", ignore_case = true)]
        target: Target,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide ellipticity. Exit 0 = elliptic, 10 = not elliptic.
    Decide {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        k: i64,
        /// Default: both for graphs, nilpotence for models
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Print the witness polynomials
        #[arg(long)]
        full: bool,
        #[arg(long)]
        json: bool,
    },
    /// Formal dimension, cohomology, cup-length, e0, cat0 and the ΛW answers.
    Invariants {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        k: i64,
        /// Include Betti representatives and full witnesses
        #[arg(long)]
        full: bool,
        /// Add wall-clock timings (makes the output non-deterministic)
        #[arg(long)]
        timings: bool,
        /// Replace the ΛV cohomology by certified bounds above this slice size
        #[arg(long)]
        cohomology_max_slice: Option<u128>,
        #[arg(long)]
        json: bool,
    },
    /// Run the equivalence suite over all graphs of the given orders.
    Verify {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Smallest order (default: nmax)
        #[arg(long)]
        nmin: Option<usize>,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        k: i64,
        /// Sample this many connected graphs of order nmax instead of enumerating
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest accepted nmax [env: EHK_VERIFY_NMAX_CAP, default 5]
        #[arg(long)]
        nmax_cap: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        cohomology_max_slice: u128,
        #[arg(long)]
        json: bool,
        /// Also write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Loaded {
    Graph(Graph),
    Model(SullivanModel),
}

fn read(path: &Path) -> Result<Vec<u8>, Error> {
    std::fs::read(path).map_err(|e| Error::Validation(format!("{}: {e}", path.display())))
}

fn load(input: &Input) -> Result<Loaded, Error> {
    match (&input.graph, &input.model) {
        (Some(p), _) => Ok(Loaded::Graph(parse_dimacs(&read(p)?)?)),
        (None, Some(p)) => Ok(Loaded::Model(ModelDocument::parse(&read(p)?)?.to_model()?)),
        (None, None) => unreachable!("clap requires one input"),
    }
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Validation(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Timings {
    ellipticity_ms: f64,
    invariants_ms: f64,
}

#[derive(Serialize)]
struct InvariantsOutput<'a> {
    #[serde(flatten)]
    report: &'a InvariantReport,
    caps: &'a Caps,
    #[serde(skip_serializing_if = "Option::is_none")]
    cohomology_max_slice: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Timings>,
}

fn run(cli: Cli) -> Result<u8, Error> {
    let caps = cli.caps.resolve()?;
    match cli.command {
        Command::Reduce { graph, k, target, out } => {
            let g = parse_dimacs(&read(&graph)?)?;
            let c = constants(&g, k)?;
            let (model, construction) = match target {
                Target::V => (build_v(&g, k)?, "V"),
                Target::W => (build_w(&g, k)?, "W"),
            };
            let doc = ModelDocument::from_model(
                &model,
                Some(Provenance {
                    construction: construction.into(),
                    graph: Some(g),
                    k: Some(k),
                    constants: Some(c),
                }),
            );
            write_out(out.as_deref(), &doc.to_json())?;
            Ok(0)
        }
        Command::Decide {
            input,
            k,
            method,
            full,
            json: as_json,
        } => {
            let (model, verdict) = match load(&input)? {
                Loaded::Graph(g) => {
                    let v = is_elliptic(&g, k, method.map_or(Method::Both, Method::from), &caps)?;
                    (build_v(&g, k)?, v)
                }
                Loaded::Model(m) => {
                    if matches!(method, Some(MethodArg::Coloring | MethodArg::Both)) {
                        return Err(Error::Unsupported("the colouring method needs a graph".into()));
                    }
                    let v = model_ellipticity(&m, &caps)?;
                    (m, v)
                }
            };
            let summary = summarize(&model, &verdict, full);
            if as_json {
                print!("{}", json(&summary));
            } else {
                print!("{}", render::verdict_text(&summary));
            }
            Ok(if verdict.elliptic { EXIT_ELLIPTIC } else { EXIT_NOT_ELLIPTIC })
        }
        Command::Invariants {
            input,
            k,
            full,
            timings,
            cohomology_max_slice,
            json: as_json,
        } => {
            let opts = ReportOptions {
                method: Method::Both,
                full,
                caps: caps.clone(),
                cohomology_max_slice,
            };
            let start = Instant::now();
            let (report, split) = match load(&input)? {
                Loaded::Graph(g) => {
                    let verdict = is_elliptic(&g, k, Method::Both, &caps)?;
                    let split = start.elapsed();
                    (graph_report_with(&g, k, verdict, &opts)?, split)
                }
                Loaded::Model(m) => (model_report(&m, &opts)?, start.elapsed()),
            };
            let total = start.elapsed();
            let timings = timings.then(|| Timings {
                ellipticity_ms: split.as_secs_f64() * 1e3,
                invariants_ms: (total - split).as_secs_f64() * 1e3,
            });
            if as_json {
                print!(
                    "{}",
                    json(&InvariantsOutput {
                        report: &report,
                        caps: &caps,
                        cohomology_max_slice,
                        timings,
                    })
                );
            } else {
                print!("{}", render::report_text(&report));
                if let Some(t) = timings {
                    println!("time: ellipticity {:.1} ms, invariants {:.1} ms", t.ellipticity_ms, t.invariants_ms);
                }
            }
            Ok(0)
        }
        Command::Verify {
            nmax,
            nmin,
            k,
            sample,
            seed,
            nmax_cap,
            cohomology_max_slice,
            json: as_json,
            out,
        } => {
            let order_cap = match nmax_cap {
                Some(c) => c,
                None => match std::env::var("EHK_VERIFY_NMAX_CAP") {
                    Ok(v) => v
                        .trim()
                        .parse()
                        .map_err(|_| Error::Validation(format!("EHK_VERIFY_NMAX_CAP: bad value {v:?}")))?,
                    Err(_) => VerifyConfig::default().order_cap,
                },
            };
            let config = VerifyConfig {
                n_min: nmin.unwrap_or(nmax),
                n_max: nmax,
                k,
                sample,
                seed,
                order_cap,
                caps,
                cohomology_max_slice,
            };
            let report = verify::run(&config)?;
            if let Some(p) = &out {
                write_out(Some(p), &report.to_json())?;
            }
            if as_json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.all_passed { 0 } else { EXIT_ERROR })
        }
    }
}

fn main() -> ExitCode {
    // Usage errors exit 1 like every other error; help and version exit 0.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_capacity() { EXIT_CAPACITY } else { EXIT_ERROR })
        }
    }
}
