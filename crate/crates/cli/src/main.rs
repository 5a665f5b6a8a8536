use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gwpeel::experiments::{self, ExperimentError};
use gwpeel::sampler::SamplerError;
use gwpeel::tree::read_tree_lines;
use gwpeel::{
    leafheight_distribution, peel_distribution, root_limit_law, solve_q, solve_qs,
    DistributionTable, OffspringDistribution, RandomStream,
};
use serde_json::json;

/// Seed used when `--seed` is not given, so bare runs are reproducible.
const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(
    name = "gwpeel",
    version,
    about = "Peel numbers, leaf-heights and vertex covers of random trees"
)]
struct Cli {
    /// Worker threads for Monte Carlo runs (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve q = f(1 - q), and the cover fixed point q_s if --s is given.
    Solve {
        #[arg(long)]
        family: String,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a root law table with its tail mass.
    Dist {
        #[arg(long)]
        family: String,
        #[arg(long, value_enum)]
        kind: DistKind,
        #[arg(long, default_value_t = 20)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Sample conditioned trees as comma-separated preorder degree lines.
    Sample {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Report tree parameters for each line of a degree file ("-" for stdin).
    Analyze {
        input: PathBuf,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a Monte Carlo experiment.
    Experiment {
        #[arg(value_enum)]
        name: ExperimentName,
        #[arg(long)]
        family: String,
        /// Tree sizes, comma-separated.
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Path orders for `spvc`, comma-separated.
        #[arg(long, value_delimiter = ',')]
        s: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest layer index for `layers`.
        #[arg(long, default_value_t = 10)]
        i_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write per-trial values as CSV to this path.
        #[arg(long)]
        dump_trials: Option<PathBuf>,
    },
    /// Exact constants and estimates for the seven standard families.
    Table1 {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 10_001)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistKind {
    Peel,
    Leafheight,
    Rootlaw,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentName {
    Independence,
    Peel,
    Leafheight,
    Layers,
    Rootlaw,
    Spvc,
}

enum Failure {
    /// Bad arguments or unreadable input: exit code 1.
    Usage(String),
    /// Sampling or solver failure: exit code 2.
    Runtime(String),
}

type Outcome<T> = Result<T, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: impl ToString) -> Failure {
    Failure::Runtime(e.to_string())
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::InvalidConfig(m) => Failure::Usage(m),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome<()> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(runtime)?;
    }
    match cli.command {
        Command::Solve { family, s, format } => solve(&family, s, format),
        Command::Dist {
            family,
            kind,
            terms,
            format,
        } => dist(&family, kind, terms, format),
        Command::Sample {
            family,
            n,
            count,
            seed,
            output,
        } => sample(&family, n, count, seed, output),
        Command::Analyze { input, s, format } => analyze(&input, s, format),
        Command::Experiment {
            name,
            family,
            n,
            s,
            trials,
            seed,
            i_max,
            format,
            output,
            dump_trials,
        } => {
            let d = parse_family(&family)?;
            let (body, trials_csv) = experiment(name, &d, n, s, trials, seed, i_max, format)?;
            if let Some(path) = dump_trials {
                fs::write(&path, trials_csv)
                    .map_err(|e| runtime(format!("{}: {e}", path.display())))?;
            }
            emit(&body, output)
        }
        Command::Table1 {
            trials,
            n,
            seed,
            format,
            output,
        } => {
            let r = experiments::table1(trials, n, seed)?;
            let body = match format {
                Format::Json => r.to_json() + "\n",
                _ => r.to_text(),
            };
            emit(&body, output)
        }
    }
}

fn parse_family(spec: &str) -> Outcome<OffspringDistribution> {
    spec.parse()
        .map_err(|e| usage(format!("family '{spec}': {e}")))
}

fn emit(body: &str, output: Option<PathBuf>) -> Outcome<()> {
    match output {
        Some(path) => {
            fs::write(&path, body).map_err(|e| runtime(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(runtime)
        }
    }
}

fn solve(family: &str, s: Option<usize>, format: Format) -> Outcome<()> {
    let d = parse_family(family)?;
    let q = solve_q(&d);
    let qs = match s {
        Some(s) => Some((s, solve_qs(&d, s).map_err(usage)?)),
        None => None,
    };
    let body = match format {
        Format::Json => {
            let mut v = json!({ "family": d.label(), "q": q });
            if let Some((s, r)) = qs {
                v["s"] = json!(s);
                v["q_s"] = json!(r);
            }
            serde_json::to_string_pretty(&v).map_err(runtime)? + "\n"
        }
        _ => {
            let mut out = format!(
                "q = {:.15} (iterations {}, residual {:.1e})\n",
                q.value, q.iterations, q.residual
            );
            if let Some((s, r)) = qs {
                let _ = writeln!(
                    out,
                    "q_{s} = {:.15} (iterations {}, residual {:.1e})",
                    r.value, r.iterations, r.residual
                );
            }
            out
        }
    };
    emit(&body, None)
}

fn dist(family: &str, kind: DistKind, terms: usize, format: Format) -> Outcome<()> {
    let d = parse_family(family)?;
    let table = match kind {
        DistKind::Peel => peel_distribution(&d, terms),
        DistKind::Leafheight => leafheight_distribution(&d, terms),
        DistKind::Rootlaw => root_limit_law(&d, terms),
    }
    .map_err(usage)?;
    let body = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json() + "\n",
        Format::Text => table_text(&table),
    };
    emit(&body, None)
}

fn table_text(t: &DistributionTable) -> String {
    let mut out = String::new();
    for (i, v) in t.values.iter().enumerate() {
        let _ = writeln!(out, "{i:>5}  {v:.12e}");
    }
    let _ = writeln!(out, "{:>5}  {:.12e}", "tail", t.tail_mass);
    out
}

fn sample(family: &str, n: usize, count: usize, seed: u64, output: Option<PathBuf>) -> Outcome<()> {
    let d = parse_family(family)?;
    if n == 0 {
        return Err(usage("--n must be positive"));
    }
    let mut body = String::new();
    for i in 0..count {
        let mut rng = RandomStream::new(seed, i as u64);
        let tree = gwpeel::sample_conditioned(&d, n, &mut rng).map_err(|e| match e {
            SamplerError::UnattainableSize { .. } => runtime(format!(
                "{e}; nearest attainable size is {}",
                d.nearest_attainable_size(n as u64)
            )),
            other => runtime(other),
        })?;
        body.push_str(&tree.to_degree_line());
        body.push('\n');
    }
    emit(&body, output)
}

fn analyze(input: &PathBuf, s: Option<usize>, format: Format) -> Outcome<()> {
    if s.is_some_and(|s| s < 2) {
        return Err(usage("--s must be at least 2"));
    }
    let text = if input.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map_err(usage)?;
        buf
    } else {
        fs::read_to_string(input).map_err(|e| usage(format!("{}: {e}", input.display())))?
    };
    let mut rows = Vec::new();
    let mut invalid = 0;
    for (line, parsed) in read_tree_lines(&text) {
        match parsed {
            Ok(t) => {
                let peel = t.peel_numbers();
                let i = peel.iter().filter(|&&p| p % 2 == 0).count();
                let mut row = json!({
                    "line": line,
                    "n": t.len(),
                    "independence": i,
                    "vertex_cover": t.len() - i,
                    "max_peel": peel.iter().max(),
                    "max_leaf_height": t.max_leaf_height(),
                    "root_peel": peel[0],
                    "layers": t.layer_counts(),
                });
                if let Some(s) = s {
                    row["s"] = json!(s);
                    row["path_cover"] = json!(t.spvc_number(s));
                }
                rows.push(row);
            }
            Err(e) => {
                invalid += 1;
                eprintln!("line {line}: invalid tree: {e}");
            }
        }
    }
    if rows.is_empty() {
        return Err(usage(if invalid > 0 {
            "no valid trees in input"
        } else {
            "input holds no trees"
        }));
    }
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&rows).map_err(runtime)? + "\n",
        _ => {
            let mut out = String::new();
            for r in &rows {
                let _ = write!(
                    out,
                    "line {}: n={} I={} V={} m={} lambda={} rho={} layers={}",
                    r["line"],
                    r["n"],
                    r["independence"],
                    r["vertex_cover"],
                    r["max_peel"],
                    r["max_leaf_height"],
                    r["root_peel"],
                    r["layers"]
                );
                if let Some(s) = s {
                    let _ = write!(out, " V_{s}={}", r["path_cover"]);
                }
                out.push('\n');
            }
            out
        }
    };
    emit(&body, None)
}

fn single_size(n: &[usize], default: usize) -> Outcome<usize> {
    match n {
        [] => Ok(default),
        [one] => Ok(*one),
        _ => Err(usage("this experiment takes a single --n")),
    }
}

#[allow(clippy::too_many_arguments)]
fn experiment(
    name: ExperimentName,
    d: &OffspringDistribution,
    n: Vec<usize>,
    s: Vec<usize>,
    trials: usize,
    seed: u64,
    i_max: usize,
    format: Format,
) -> Outcome<(String, String)> {
    let sizes = if n.is_empty() {
        vec![1_001, 10_001, 100_001]
    } else {
        n.clone()
    };
    let render = |json: String, text: String| match format {
        Format::Json => json + "\n",
        _ => text,
    };
    Ok(match name {
        ExperimentName::Independence | ExperimentName::Peel | ExperimentName::Leafheight => {
            let r = match name {
                ExperimentName::Independence => {
                    experiments::run_independence(d, &sizes, trials, seed)
                }
                ExperimentName::Peel => experiments::run_peel(d, &sizes, trials, seed),
                _ => experiments::run_leafheight(d, &sizes, trials, seed),
            }?;
            (render(r.to_json(), r.to_text()), r.trials_csv())
        }
        ExperimentName::Spvc => {
            let s = if s.is_empty() { vec![2, 3, 4] } else { s };
            let reports = experiments::run_spvc(d, &s, &sizes, trials, seed)?;
            let json = serde_json::to_string_pretty(&reports).map_err(runtime)?;
            let text: String = reports.iter().map(|r| r.to_text()).collect();
            let csv: String = reports
                .iter()
                .zip(&s)
                .map(|(r, s)| {
                    r.trials_csv()
                        .lines()
                        .skip(1)
                        .map(|l| format!("{s},{l}\n"))
                        .collect::<String>()
                })
                .collect();
            (render(json, text), format!("s,n,trial,value\n{csv}"))
        }
        ExperimentName::Layers => {
            let n = single_size(&n, 10_001)?;
            let r = experiments::run_layers(d, n, trials, i_max, seed)?;
            (render(r.to_json(), r.to_text()), r.trials_csv())
        }
        ExperimentName::Rootlaw => {
            let n = single_size(&n, 2_000)?;
            let r = experiments::run_root_leafheight(d, n, trials, seed)?;
            (render(r.to_json(), r.to_text()), r.trials_csv())
        }
    })
}
