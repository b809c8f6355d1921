//! Command-line surface. Exit codes: 0 success, 1 a checker reported a violation, 2 usage or
//! input error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::census::{self, CensusConfig, CensusReport};
use crate::fixtures::basic_family;
use crate::graph::Graph;
use crate::io::{parse_graphs_auto, to_graph6};
use crate::oracle::{self, Class, OracleConfig};
use crate::overfull;

#[derive(Debug, Parser)]
#[command(name = "chroma", version, about = "Edge-coloring toolkit and critical-graph census")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sampled colorings of G - e per critical edge.
    #[arg(long, global = true, visible_alias = "max-samples", default_value_t = 100)]
    pub samples: usize,
    /// Budget per oracle decision, in milliseconds.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub timeout_ms: u64,
    /// Output format; plain text when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub witness_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print an optimal edge coloring.
    Color { file: PathBuf },
    /// Print the chromatic index and class.
    Chi { file: PathBuf },
    /// Decide Δ-criticality.
    Critical { file: PathBuf },
    /// Overfullness and the minimum-degree hypothesis.
    Overfull { file: PathBuf },
    /// Run every checker over a graph6 corpus.
    Census { corpus: PathBuf },
    /// Run every checker on the graphs of one file and print the tallies.
    VerifyLemmas { file: PathBuf },
    /// Emit the fixture family as graph6.
    GenBasic,
}

/// Failure with an exit code and a message for stderr.
#[derive(Debug)]
pub struct Exit(pub u8, pub String);

fn input_error(e: impl std::fmt::Display) -> Exit {
    Exit(2, format!("error: {e}"))
}

fn read(path: &PathBuf) -> Result<String, Exit> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(input_error)
    } else {
        std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
    }
}

fn graphs(path: &PathBuf) -> Result<Vec<Graph>, Exit> {
    let gs = parse_graphs_auto(&read(path)?).map_err(input_error)?;
    if gs.is_empty() {
        return Err(input_error(format!("{}: no graphs", path.display())));
    }
    Ok(gs)
}

fn class_name(c: Class) -> &'static str {
    match c {
        Class::One => "class1",
        Class::Two => "class2",
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            let _ = stdout.flush();
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}

/// Executes a parsed command, writing results to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, Exit> {
    let o = &cli.opts;
    if o.timeout_ms == 0 {
        return Err(Exit(2, "error: --timeout-ms must be positive".into()));
    }
    let ocfg = OracleConfig::with_timeout(Duration::from_millis(o.timeout_ms));
    let mut text = String::new();
    let json = o.format == Some(Format::Json);
    let oracle_err = |e: oracle::OracleError| Exit(2, format!("error: {e}"));
    match &cli.command {
        Command::Color { file } => {
            for g in graphs(file)? {
                let chi = oracle::chromatic_index(&g, &ocfg).map_err(oracle_err)?;
                if json {
                    writeln!(text, "{}", serde_json::to_string(&chi.witness.to_json()).expect("json")).unwrap();
                } else {
                    writeln!(text, "chi_prime={}", chi.chi_prime).unwrap();
                    for (id, e) in g.edges().iter().enumerate() {
                        writeln!(text, "{} {} {}", e.0, e.1, chi.witness.color(id).unwrap_or(0)).unwrap();
                    }
                }
            }
        }
        Command::Chi { file } => {
            for g in graphs(file)? {
                let chi = oracle::chromatic_index(&g, &ocfg).map_err(oracle_err)?;
                if json {
                    let v = serde_json::json!({ "chi_prime": chi.chi_prime, "class": chi.class, "max_degree": g.max_degree() });
                    writeln!(text, "{v}").unwrap();
                } else {
                    writeln!(text, "chi_prime={} class={}", chi.chi_prime, class_name(chi.class)).unwrap();
                }
            }
        }
        Command::Critical { file } => {
            for g in graphs(file)? {
                let cert = oracle::certify(&g, &ocfg).map_err(oracle_err)?;
                let critical = cert.is_delta_critical();
                if json {
                    let v = serde_json::json!({
                        "critical": critical,
                        "class": cert.chi.class,
                        "connected": cert.connected,
                        "critical_edges": cert.critical_edge_count(),
                        "edges": g.edge_count(),
                    });
                    writeln!(text, "{v}").unwrap();
                } else {
                    writeln!(text, "critical={critical} class={}", class_name(cert.chi.class)).unwrap();
                }
            }
        }
        Command::Overfull { file } => {
            for g in graphs(file)? {
                let v = overfull::is_overfull(&g).map_err(input_error)?;
                if json {
                    writeln!(text, "{}", serde_json::to_string(&v).expect("json")).unwrap();
                } else {
                    let word = if v.is_overfull { "overfull" } else { "not-overfull" };
                    writeln!(text, "{word} excess={}", v.excess).unwrap();
                }
            }
        }
        Command::Census { corpus } => {
            let report = census_report(&read(corpus)?, o)?;
            emit_report(&report, o.format, out)?;
            return Ok(exit_for(&report));
        }
        Command::VerifyLemmas { file } => {
            let corpus: String = graphs(file)?
                .iter()
                .map(|g| to_graph6(g).map(|s| s + "\n"))
                .collect::<Result<_, _>>()
                .map_err(input_error)?;
            let report = census_report(&corpus, o)?;
            if o.format.is_some() {
                emit_report(&report, o.format, out)?;
            } else {
                for r in &report.records {
                    writeln!(text, "{} critical={} theorem1={}", r.graph6, r.is_critical.map_or("undecided".into(), |c| c.to_string()), r.theorem1.label()).unwrap();
                }
                for (name, t) in &report.summary.lemmas {
                    writeln!(
                        text,
                        "{name}: checked={} ok={} inapplicable={} violations={}",
                        t.checked, t.ok, t.inapplicable, t.violations
                    )
                    .unwrap();
                }
                writeln!(text, "violations={} dead_ends={}", report.summary.violations, report.summary.dead_ends).unwrap();
                out.write_all(text.as_bytes()).map_err(input_error)?;
            }
            return Ok(exit_for(&report));
        }
        Command::GenBasic => {
            for (_, g) in basic_family() {
                writeln!(text, "{}", to_graph6(&g).expect("fixtures fit graph6")).unwrap();
            }
        }
    }
    out.write_all(text.as_bytes()).map_err(input_error)?;
    Ok(0)
}

fn census_report(corpus: &str, o: &Options) -> Result<CensusReport, Exit> {
    let cfg = CensusConfig {
        seed: o.seed,
        samples: o.samples,
        timeout: Duration::from_millis(o.timeout_ms),
        witness_dir: o.witness_dir.clone(),
    };
    census::run_census(corpus, &cfg).map_err(|e| match e {
        census::CensusError::Io(_) => Exit(1, format!("error: {e}")),
        _ => input_error(e),
    })
}

fn emit_report(report: &CensusReport, format: Option<Format>, out: &mut dyn Write) -> Result<(), Exit> {
    let res = match format {
        Some(Format::Csv) => report.write_csv(out).map_err(|e| e.to_string()),
        _ => report.write_jsonl(out).map_err(|e| e.to_string()),
    };
    res.map_err(|e| Exit(2, format!("error: {e}")))
}

fn exit_for(report: &CensusReport) -> u8 {
    u8::from(report.summary.violations > 0)
}
