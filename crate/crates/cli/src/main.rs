use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adiabatic_mco::adiabatic::{
    evolve, initial_ground_state, measure, write_histogram_csv, DEFAULT_STEPS,
};
use adiabatic_mco::bench::builtin_instance;
use adiabatic_mco::hamiltonian::{
    build_final, build_initial, Interpolation, ScheduleGrid, DEFAULT_INITIAL_SCALE,
};
use adiabatic_mco::mco::io::{read_instance, sidecar_path, write_instance_csv, InstanceMeta};
use adiabatic_mco::mco::supported::DEFAULT_GRID_DIVISIONS;
use adiabatic_mco::mco::{classify, validate, SupportMethod};
use adiabatic_mco::resolver::resolve;
use adiabatic_mco::spectral::{
    delta_max, end_gap_diagnostics, gap_scan, runtime_estimate, smallest_two,
    DEFAULT_DEGENERACY_TOL, DEFAULT_GRID_POINTS,
};
use adiabatic_mco::{Error, Instance, Weights};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

const EXIT_IO: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_UNRESOLVABLE: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "adiabatic-mco",
    version,
    about = "Multiobjective optimization on a simulated adiabatic quantum computer"
)]
struct Cli {
    /// Degeneracy tolerance for ties in the final Hamiltonian.
    #[arg(long, global = true, env = "ADIABATIC_MCO_TOL", default_value_t = DEFAULT_DEGENERACY_TOL)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check well-formedness, normality and collision-freeness.
    Validate {
        #[command(flatten)]
        source: Source,
        /// `all-pairs` is the definition; `adjacent` only compares x and x+1.
        #[arg(long, value_enum, default_value_t = CollisionMode::AllPairs)]
        collision: CollisionMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pareto-optimal, trivial, supported and non-supported solutions.
    Front {
        #[command(flatten)]
        source: Source,
        /// Weight grid resolution for three or more objectives.
        #[arg(long, default_value_t = DEFAULT_GRID_DIVISIONS)]
        divisions: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two smallest eigenvalues of H(s) over a uniform schedule grid.
    GapScan {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, default_value_t = DEFAULT_INITIAL_SCALE)]
        initial_scale: f64,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        grid: usize,
        /// Accuracy parameter for the runtime bound.
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Gap curve as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perturb w inside the admissible L1 ball until the minimum is unique.
    Resolve {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the adiabatic evolution and sample the final state.
    Evolve {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, default_value_t = DEFAULT_INITIAL_SCALE)]
        initial_scale: f64,
        /// Total time; defaults to 10 * deltaMax / gMin^2 from a gap scan.
        #[arg(long)]
        time: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        /// Grid used to measure gMin when --time is omitted.
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        shots: u64,
        /// Measurement histogram as CSV.
        #[arg(long)]
        histogram: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Benchmark utilities.
    Bench {
        #[command(subcommand)]
        action: BenchAction,
    },
    /// Write H0, Hw or H(s) as CSV.
    DumpOperator {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, default_value_t = DEFAULT_INITIAL_SCALE)]
        initial_scale: f64,
        /// Schedule point; 0 gives H0 and 1 gives Hw.
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BenchAction {
    /// Write the built-in seven-qubit instance as CSV plus JSON sidecar.
    Export {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// Instance CSV (`x,f1,...,fd`); a `.json` sidecar next to it is read if present.
    instance: Option<PathBuf>,
    /// Use the built-in seven-qubit Two-Parabolas instance.
    #[arg(long, conflicts_with = "instance")]
    builtin: bool,
    /// Gap vector, comma-separated; overrides the sidecar.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<f64>>,
}

#[derive(Args)]
struct WeightArgs {
    /// Weights, comma-separated or repeated; with two objectives a single
    /// value w expands to (w, 1 - w).
    #[arg(long = "w", value_delimiter = ',', required = true)]
    w: Vec<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CollisionMode {
    AllPairs,
    Adjacent,
}

struct Failure {
    code: u8,
    message: String,
    report: Option<serde_json::Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unresolvable(..) | Error::ResolutionFailed { .. } => EXIT_UNRESOLVABLE,
            Error::NoConvergence { .. }
            | Error::DegenerateGap(_)
            | Error::NotHermitian(_)
            | Error::NotNormalized(_)
            | Error::Generation(_) => EXIT_NUMERICAL,
            _ => EXIT_IO,
        };
        let report = match &e {
            Error::Unresolvable(x, y) => {
                Some(json!({ "error": "unresolvable", "equivalent": [x, y] }))
            }
            Error::ResolutionFailed { tried } => {
                Some(json!({ "error": "resolutionFailed", "candidatesTried": tried.len() }))
            }
            _ => None,
        };
        Failure {
            code,
            message: e.to_string(),
            report,
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_IO)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(r) = f.report {
                println!("{}", serde_json::to_string_pretty(&r).unwrap());
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        return Err(
            Error::InvalidArgument(format!("tolerance must be >= 0, got {}", cli.tol)).into(),
        );
    }
    match cli.command {
        Command::Validate {
            source,
            collision,
            out,
        } => cmd_validate(&source, collision, out.as_deref()),
        Command::Front {
            source,
            divisions,
            out,
        } => cmd_front(&source, divisions, out.as_deref()),
        Command::GapScan {
            source,
            weights,
            initial_scale,
            grid,
            delta,
            csv,
            out,
        } => cmd_gap_scan(
            &source,
            &weights,
            initial_scale,
            grid,
            delta,
            csv.as_deref(),
            out.as_deref(),
        ),
        Command::Resolve {
            source,
            weights,
            out,
        } => cmd_resolve(&source, &weights, cli.tol, out.as_deref()),
        Command::Evolve {
            source,
            weights,
            initial_scale,
            time,
            steps,
            grid,
            seed,
            shots,
            histogram,
            out,
        } => {
            let opts = EvolveOpts {
                initial_scale,
                time,
                steps,
                grid,
                seed,
                shots,
            };
            cmd_evolve(
                &source,
                &weights,
                &opts,
                histogram.as_deref(),
                out.as_deref(),
            )
        }
        Command::Bench {
            action: BenchAction::Export { out },
        } => cmd_bench_export(out.as_deref()),
        Command::DumpOperator {
            source,
            weights,
            initial_scale,
            s,
            out,
        } => cmd_dump_operator(&source, &weights, initial_scale, s, out.as_deref()),
    }
}

fn load(source: &Source) -> Result<Instance, Error> {
    let inst = match (&source.instance, source.builtin) {
        (_, true) => builtin_instance(),
        (Some(path), false) => read_instance(path)?,
        (None, false) => {
            return Err(Error::InvalidArgument(
                "give an instance path or --builtin".into(),
            ));
        }
    };
    match &source.lambda {
        Some(l) => inst.with_lambda(l.clone()),
        None => Ok(inst),
    }
}

fn weights_for(inst: &Instance, args: &WeightArgs) -> Result<Weights, Error> {
    match args.w.as_slice() {
        [w1] if inst.d() == 2 => Weights::pair(*w1),
        ws => {
            let w = Weights::new(ws.to_vec())?;
            w.check_dim(inst.d())?;
            Ok(w)
        }
    }
}

fn instance_json(inst: &Instance, source: &Source) -> serde_json::Value {
    let origin = match &source.instance {
        Some(p) if !source.builtin => p.display().to_string(),
        _ => "builtin".to_string(),
    };
    json!({
        "source": origin,
        "n": inst.n(),
        "d": inst.d(),
        "lambda": inst.lambda(),
        "labelOffset": inst.label_offset(),
    })
}

fn labels(inst: &Instance, xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|&x| inst.label(x)).collect()
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Error> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| Error::Io(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let io_err = |e: io::Error| Error::Io(format!("{}: {e}", path.display()));
    fs::write(&tmp, bytes).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_err(e)
    })
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

fn emit_bytes(bytes: &[u8], out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(p) => write_atomic(p, bytes),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| Error::Io(e.to_string())),
    }
}

fn cmd_validate(source: &Source, mode: CollisionMode, out: Option<&Path>) -> CmdResult {
    let inst = load(source)?;
    let report = validate(&inst);
    let collision_ok = match mode {
        CollisionMode::AllPairs => report.collision_free.ok,
        CollisionMode::Adjacent => report.collision_free.adjacent_ok,
    };
    let passed = report.well_formed.ok && report.normal.ok && collision_ok != Some(false);
    let witness_labels =
        |c: Option<adiabatic_mco::mco::Collision>| c.map(|c| [inst.label(c.x), inst.label(c.y)]);
    let doc = json!({
        "instance": instance_json(&inst, source),
        "collisionWitnessLabels": witness_labels(report.collision_free.witness),
        "adjacentWitnessLabels": witness_labels(report.collision_free.adjacent_witness),
        "collisionMode": match mode {
            CollisionMode::AllPairs => "all-pairs",
            CollisionMode::Adjacent => "adjacent",
        },
        "passed": passed,
        "report": report,
    });
    emit_json(&doc, out)?;
    if passed {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VALIDATION,
            message: report.messages.join("; "),
            report: None,
        })
    }
}

fn cmd_front(source: &Source, divisions: usize, out: Option<&Path>) -> CmdResult {
    let inst = load(source)?;
    let method = if inst.d() == 2 {
        SupportMethod::Hull
    } else {
        if divisions == 0 {
            return Err(Error::InvalidArgument("divisions must be positive".into()).into());
        }
        SupportMethod::Grid { divisions }
    };
    let c = classify(&inst, method);
    let doc = json!({
        "instance": instance_json(&inst, source),
        "pareto": c.pareto,
        "trivial": c.trivial,
        "supported": c.supported,
        "nonsupported": c.nonsupported,
        "method": c.method,
        "labels": {
            "pareto": labels(&inst, &c.pareto),
            "trivial": labels(&inst, &c.trivial),
            "supported": labels(&inst, &c.supported),
            "nonsupported": labels(&inst, &c.nonsupported),
        },
    });
    emit_json(&doc, out)?;
    Ok(())
}

fn cmd_gap_scan(
    source: &Source,
    weights: &WeightArgs,
    initial_scale: f64,
    grid: usize,
    delta: f64,
    csv: Option<&Path>,
    out: Option<&Path>,
) -> CmdResult {
    let inst = load(source)?;
    let w = weights_for(&inst, weights)?;
    let hw = build_final(&inst, &w)?;
    let h0 = build_initial(inst.n(), initial_scale, None)?;
    let curve = gap_scan(&h0, &hw, &ScheduleGrid::uniform(grid)?)?;
    let dmax = delta_max(&h0, &hw)?;
    let runtime = runtime_estimate(curve.g_min, dmax, delta, curve.g_min)?;
    let end = Interpolation::new(&h0, &hw)?.at(1.0)?;
    let (ground, _) = smallest_two(&end)?;
    let (gx, amp) = ground
        .vector
        .iter()
        .enumerate()
        .map(|(x, z)| (x, z.norm()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty state");
    let diagnostics = match inst.lambda() {
        Some(l) => Some(end_gap_diagnostics(&inst, &w, l, Some(curve.g_min))?),
        None => None,
    };
    if let Some(p) = csv {
        let mut buf = Vec::new();
        curve.write_csv(&mut buf)?;
        write_atomic(p, &buf)?;
    }
    let doc = json!({
        "instance": instance_json(&inst, source),
        "w": w,
        "initialScale": initial_scale,
        "grid": grid,
        "gapAt0": curve.first().gap,
        "gapAt1": curve.last().gap,
        "gMin": curve.g_min,
        "argminS": curve.argmin_s,
        "deltaMax": dmax,
        "runtime": runtime,
        "groundState": { "index": gx, "label": inst.label(gx), "magnitude": amp },
        "endGap": diagnostics,
    });
    emit_json(&doc, out)?;
    Ok(())
}

fn cmd_resolve(source: &Source, weights: &WeightArgs, tol: f64, out: Option<&Path>) -> CmdResult {
    let inst = load(source)?;
    let w = weights_for(&inst, weights)?;
    let cert = resolve(&inst, &w, tol)?;
    let doc = json!({
        "instance": instance_json(&inst, source),
        "identity": cert.is_identity(),
        "chosenLabel": inst.label(cert.chosen_index),
        "tiedLabels": labels(&inst, &cert.tied_indices),
        "certificate": cert,
    });
    emit_json(&doc, out)?;
    Ok(())
}

struct EvolveOpts {
    initial_scale: f64,
    time: Option<f64>,
    steps: usize,
    grid: usize,
    seed: u64,
    shots: u64,
}

fn cmd_evolve(
    source: &Source,
    weights: &WeightArgs,
    opts: &EvolveOpts,
    histogram: Option<&Path>,
    out: Option<&Path>,
) -> CmdResult {
    let inst = load(source)?;
    let w = weights_for(&inst, weights)?;
    let hw = build_final(&inst, &w)?;
    let h0 = build_initial(inst.n(), opts.initial_scale, None)?;
    let (total_time, recommended) = match opts.time {
        Some(t) => (t, None),
        None => {
            let curve = gap_scan(&h0, &hw, &ScheduleGrid::uniform(opts.grid)?)?;
            let g = curve.g_min;
            if g.is_nan() || g <= 0.0 {
                return Err(Error::DegenerateGap(g).into());
            }
            let dmax = delta_max(&h0, &hw)?;
            let t = 10.0 * dmax / (g * g);
            (t, Some(json!({ "gMin": g, "deltaMax": dmax, "time": t })))
        }
    };
    let psi0 = initial_ground_state(inst.n())?;
    let result = evolve(&h0, &hw, total_time, opts.steps, &psi0)?;
    let counts = if opts.shots > 0 {
        Some(measure(&result.final_state, opts.shots, opts.seed)?)
    } else {
        None
    };
    if let Some(p) = histogram {
        let zeros;
        let c = match &counts {
            Some(c) => c,
            None => {
                zeros = vec![0u64; result.final_state.dim()];
                &zeros
            }
        };
        let mut buf = Vec::new();
        write_histogram_csv(&result.final_state, c, &mut buf)?;
        write_atomic(p, &buf)?;
    }
    let doc = json!({
        "instance": instance_json(&inst, source),
        "w": w,
        "initialScale": opts.initial_scale,
        "recommended": recommended,
        "targetLabel": result.target_index.map(|x| inst.label(x)),
        "seed": opts.seed,
        "shots": opts.shots,
        "counts": counts,
        "result": result,
    });
    emit_json(&doc, out)?;
    Ok(())
}

fn cmd_bench_export(out: Option<&Path>) -> CmdResult {
    let inst = builtin_instance();
    let mut buf = Vec::new();
    write_instance_csv(&inst, &mut buf)?;
    emit_bytes(&buf, out)?;
    if let Some(p) = out {
        let meta = serde_json::to_string_pretty(&InstanceMeta::of(&inst))
            .map_err(|e| Error::Io(e.to_string()))?;
        write_atomic(&sidecar_path(p), meta.as_bytes())?;
    }
    Ok(())
}

fn cmd_dump_operator(
    source: &Source,
    weights: &WeightArgs,
    initial_scale: f64,
    s: f64,
    out: Option<&Path>,
) -> CmdResult {
    let inst = load(source)?;
    let w = weights_for(&inst, weights)?;
    let hw = build_final(&inst, &w)?;
    let h0 = build_initial(inst.n(), initial_scale, None)?;
    let op = Interpolation::new(&h0, &hw)?.at(s)?;
    let mut buf = Vec::new();
    op.write_csv(&mut buf)?;
    emit_bytes(&buf, out)?;
    Ok(())
}
