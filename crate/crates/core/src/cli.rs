//! The `causord` command line.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::budget::{Budget, DEFAULT_MAX_BRUTEFORCE, MAX_BRUTEFORCE_ENV};
use crate::error::{Error, Result};
use crate::export::{analysis_json, dependency_dot, ordering_dot};
use crate::nayak::{analyze, closure_oracle, CausalAnalysis};
use crate::simon::{coa_analysis, csdp, minimal_substructures, rtcm, CsdpMode};
use crate::structure::{
    adversarial_structure, parse_structure, random_complete_structure, InputFormat, ParseOptions,
    Structure,
};

#[derive(Debug, Parser)]
#[command(
    name = "causord",
    version,
    about = "Causal ordering of self-contained equation systems"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Lift the size guard on exponential algorithms.
    #[arg(long, global = true)]
    force_exponential: bool,

    /// Wall-clock limit in seconds for exponential algorithms.
    #[arg(long, global = true, value_name = "SECS")]
    timeout: Option<f64>,

    /// Accept input with no equations.
    #[arg(long, global = true)]
    allow_empty: bool,

    /// Output file, `-` for stdout.
    #[arg(short, long, global = true, default_value = "-")]
    output: String,

    /// Input syntax; `auto` picks JSON for `.json` files and `{`-prefixed stdin.
    #[arg(long, global = true, value_enum, default_value_t = InputSyntax::Auto)]
    input_format: InputSyntax,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputSyntax {
    Auto,
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the structure and completeness conditions.
    Validate(InputArg),
    /// Print a total causal mapping.
    Map {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = Algo::Nayak)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = MapFormat::Text)]
        format: MapFormat,
    },
    /// Print the causal ordering.
    Order {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = Algo::Nayak)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = ClosureAlgo::Dfs)]
        closure: ClosureAlgo,
        #[arg(long, value_enum, default_value_t = OrderFormat::Dot)]
        format: OrderFormat,
    },
    /// Print the strongly coupled clusters in causal order.
    Clusters {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Decide whether a complete substructure of a given size exists.
    Csdp {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_name = "L")]
        size: usize,
        #[arg(long, value_enum, default_value_t = Via::Bruteforce)]
        via: Via,
    },
    /// List the minimal complete substructures.
    Minimal {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Generate a random complete structure.
    Gen {
        #[arg(long, value_name = "N")]
        equations: usize,
        /// Extra variable appearances per equation; fractional parts are
        /// drawn per equation.
        #[arg(long, default_value_t = 1.0)]
        extra: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the instance on which subset enumeration cannot prune.
        #[arg(long)]
        adversarial: bool,
        #[arg(long, value_enum, default_value_t = GenFormat::Text)]
        format: GenFormat,
    },
    /// Time algorithms on generated instances and print CSV.
    Bench {
        /// Comma-separated subset of nayak,simon.
        #[arg(long, default_value = "nayak,simon")]
        algos: String,
        /// Comma-separated instance sizes.
        #[arg(long, default_value = "10,100,1000")]
        sizes: String,
        #[arg(long, default_value_t = 1.0)]
        extra: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct InputArg {
    /// Structure file, `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Nayak,
    Simon,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MapFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ListFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClosureAlgo {
    Dfs,
    Floyd,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Via {
    Bruteforce,
    Biclique,
}

const DEFAULT_BENCH_TIMEOUT: f64 = 10.0;

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 when the input is well formed but the request cannot be met, 2 on
/// usage or parse errors.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    let result = execute(&cli, stdin).and_then(|out| {
        write_output(&cli.global.output, &out, stdout).map_err(|e| Failure::Run(Error::Io(e)))
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "causord: {msg}");
            2
        }
        Err(Failure::Run(e)) => {
            let _ = writeln!(stderr, "causord: {e}");
            if e.is_domain() {
                1
            } else {
                2
            }
        }
    }
}

fn write_output(path: &str, out: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    if path == "-" {
        stdout.write_all(out.as_bytes())?;
        stdout.flush()
    } else {
        std::fs::write(path, out)
    }
}

fn read_input(g: &GlobalOpts, input: &InputArg, stdin: &mut dyn Read) -> Result<Structure> {
    let text = if input.input == "-" {
        let mut buf = String::new();
        stdin.read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(&input.input)?
    };
    let format = match g.input_format {
        InputSyntax::Text => InputFormat::Text,
        InputSyntax::Json => InputFormat::Json,
        InputSyntax::Auto if input.input == "-" => {
            if text.trim_start().starts_with('{') {
                InputFormat::Json
            } else {
                InputFormat::Text
            }
        }
        InputSyntax::Auto => InputFormat::from_path(Path::new(&input.input)),
    };
    parse_structure(
        &text,
        format,
        ParseOptions {
            allow_empty: g.allow_empty,
        },
    )
}

fn timeout_of(secs: Option<f64>) -> std::result::Result<Option<Duration>, Failure> {
    match secs {
        None => Ok(None),
        Some(s) => Duration::try_from_secs_f64(s)
            .map(Some)
            .map_err(|_| Failure::Usage(format!("invalid timeout `{s}`"))),
    }
}

fn budget(g: &GlobalOpts) -> std::result::Result<Budget, Failure> {
    let max_size = if g.force_exponential {
        None
    } else {
        match std::env::var(MAX_BRUTEFORCE_ENV) {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
                Failure::Usage(format!(
                    "{MAX_BRUTEFORCE_ENV} must be a non-negative integer, got `{v}`"
                ))
            })?),
            Err(_) => Some(DEFAULT_MAX_BRUTEFORCE),
        }
    };
    Ok(Budget::new(max_size, timeout_of(g.timeout)?))
}

fn analysis(s: &Structure, algo: Algo, budget: &Budget) -> Result<CausalAnalysis> {
    match algo {
        Algo::Nayak => analyze(s),
        Algo::Simon => coa_analysis(s, budget),
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> std::result::Result<String, Failure> {
    let g = &cli.global;
    let mut out = String::new();
    match &cli.command {
        Command::Validate(input) => {
            let s = read_input(g, input, stdin)?;
            let report = s.validate();
            if !report.is_complete {
                return Err(Error::NotComplete(report).into());
            }
            let _ = writeln!(out, "{report}");
        }
        Command::Map {
            input,
            algo,
            format,
        } => {
            let s = read_input(g, input, stdin)?;
            let budget = budget(g)?;
            match format {
                MapFormat::Dot => out = dependency_dot(&analysis(&s, *algo, &budget)?.direct),
                MapFormat::Text | MapFormat::Json => {
                    let mapping = match algo {
                        Algo::Nayak => crate::nayak::tcm(&s)?,
                        Algo::Simon => rtcm(&s, &budget)?,
                    };
                    if let MapFormat::Json = format {
                        out = serde_json::to_string(&mapping.to_map(&s))
                            .expect("plain data serializes");
                        out.push('\n');
                    } else {
                        for (f, x) in mapping.named(&s) {
                            let _ = writeln!(out, "{f} -> {x}");
                        }
                    }
                }
            }
        }
        Command::Order {
            input,
            algo,
            closure,
            format,
        } => {
            let s = read_input(g, input, stdin)?;
            let budget = budget(g)?;
            let mut a = analysis(&s, *algo, &budget)?;
            if let ClosureAlgo::Floyd = closure {
                a.ordering = closure_oracle(&a.direct);
            }
            out = match format {
                OrderFormat::Dot => ordering_dot(&a.ordering),
                OrderFormat::Json => analysis_json(&s, &a),
            };
        }
        Command::Clusters { input, format } => {
            let s = read_input(g, input, stdin)?;
            let ordering = analyze(&s)?.ordering;
            let clusters = ordering.cluster_names();
            out = list_output(&clusters, *format);
        }
        Command::Csdp { input, size, via } => {
            let s = read_input(g, input, stdin)?;
            let mode = match via {
                Via::Bruteforce => CsdpMode::BruteForce,
                Via::Biclique => CsdpMode::Biclique,
            };
            match csdp(&s, *size, mode, &budget(g)?)? {
                None => out.push_str("no\n"),
                Some(w) => {
                    let eqs: Vec<&str> = w.equations.iter().map(|&i| s.equation_name(i)).collect();
                    let vars: Vec<&str> = w.variables.iter().map(|&j| s.variable_name(j)).collect();
                    let _ = writeln!(
                        out,
                        "yes\nequations: {}\nvariables: {}",
                        eqs.join(" "),
                        vars.join(" ")
                    );
                    if let Some(b) = w.biclique {
                        let _ = writeln!(
                            out,
                            "biclique: {{{}}} x {{{}}}",
                            b.left.join(","),
                            b.right.join(",")
                        );
                    }
                }
            }
        }
        Command::Minimal { input, format } => {
            let s = read_input(g, input, stdin)?;
            let set = minimal_substructures(&s, &budget(g)?)?;
            out = list_output(&set.named(&s), *format);
        }
        Command::Gen {
            equations,
            extra,
            seed,
            adversarial,
            format,
        } => {
            let s = if *adversarial {
                adversarial_structure(*equations)?
            } else {
                random_complete_structure(*equations, *extra, *seed)?
            };
            out = match format {
                GenFormat::Text => s.to_text(),
                GenFormat::Json => s.to_json(),
            };
        }
        Command::Bench {
            algos,
            sizes,
            extra,
            seed,
        } => {
            out = bench(
                algos,
                sizes,
                *extra,
                *seed,
                g.timeout.unwrap_or(DEFAULT_BENCH_TIMEOUT),
            )?
        }
    }
    Ok(out)
}

fn list_output(lists: &[Vec<&str>], format: ListFormat) -> String {
    match format {
        ListFormat::Text => lists.iter().map(|l| format!("{}\n", l.join(" "))).collect(),
        ListFormat::Json => {
            let mut out = serde_json::to_string(lists).expect("plain data serializes");
            out.push('\n');
            out
        }
    }
}

fn parse_list<T: std::str::FromStr>(
    what: &str,
    text: &str,
) -> std::result::Result<Vec<T>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Failure::Usage(format!("invalid {what} `{t}`")))
        })
        .collect()
}

/// CSV `algo,size,density,seed,millis,status`. The exponential algorithm
/// runs without the size guard; the timeout alone bounds it.
fn bench(
    algos: &str,
    sizes: &str,
    extra: f64,
    seed: u64,
    timeout: f64,
) -> std::result::Result<String, Failure> {
    let algos: Vec<Algo> = algos
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            Algo::from_str(t, true).map_err(|_| Failure::Usage(format!("unknown algorithm `{t}`")))
        })
        .collect::<std::result::Result<_, _>>()?;
    let sizes: Vec<usize> = parse_list("size", sizes)?;
    if sizes.contains(&0) {
        return Err(Failure::Usage("sizes must be at least 1".into()));
    }
    let timeout = timeout_of(Some(timeout))?;

    let mut out = String::from("algo,size,density,seed,millis,status\n");
    for &algo in &algos {
        for &n in &sizes {
            let s = random_complete_structure(n, extra, seed)?;
            let started = Instant::now();
            let status = match algo {
                Algo::Nayak => analyze(&s).map(drop),
                Algo::Simon => coa_analysis(&s, &Budget::new(None, timeout)).map(drop),
            };
            let millis = started.elapsed().as_secs_f64() * 1000.0;
            let status = match status {
                Ok(()) => "ok",
                Err(Error::Timeout(_)) => "TIMEOUT",
                Err(e) => return Err(e.into()),
            };
            let name = match algo {
                Algo::Nayak => "nayak",
                Algo::Simon => "simon",
            };
            let _ = writeln!(
                out,
                "{name},{n},{},{seed},{millis:.3},{status}",
                s.density()
            );
        }
    }
    Ok(out)
}
