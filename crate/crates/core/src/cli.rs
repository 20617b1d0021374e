//! Command-line front end.
//!
//! Single-case commands print one JSON object; `sweep` prints JSON lines.
//! Exit codes: 0 all consistent, 1 a VIOLATION verdict was produced,
//! 2 invalid configuration or usage.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cayley::{CayleyGraph, GraphKind, Strategy, DEFAULT_CLIQUE_NUMBER_CAP, DEFAULT_EXACT_BUDGET};
use crate::charsum;
use crate::error::Error;
use crate::ff::{self, Element, FieldTable};
use crate::verify::{self, CaseParams, KindTag, SweepConfig, TheoremReport, Verdict, VerifyOptions};

pub const CAP_ENV: &str = "CAYLEY_CLIQUE_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "cayley-cliques",
    version,
    about = "Subfield cliques in generalized Paley and Peisert graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Field-size cap (elements); overrides CAYLEY_CLIQUE_CAP.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add a generation timestamp to JSON output.
    #[arg(long, global = true)]
    pub timestamp: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Paley,
    Peisert,
    Residue,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Greedy,
    Exact,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    #[arg(long)]
    pub p: u64,
    /// Base field exponent: the base field is GF(p^s).
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    /// Extension degree: the graph lives on GF(p^(s n)).
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u64,
    #[arg(long, value_enum, default_value_t = KindArg::Paley)]
    pub kind: KindArg,
    /// Residue classes J for `--kind residue`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub classes: Vec<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build GF(p^(s n)) and print its descriptor.
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Describe a graph and the clique status of every subfield.
    GraphInfo {
        #[command(flatten)]
        graph: GraphArgs,
        /// Also compute the exact clique number (small fields only).
        #[arg(long)]
        clique_number: bool,
    },
    /// Decide whether the base subfield GF(p^s) is a maximal clique.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
        exact_budget: usize,
    },
    /// The conjecture instance for GP(p^s, d).
    Conjecture {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        d: u64,
    },
    /// Verify every admissible case up to a field order.
    Sweep {
        #[arg(long, default_value_t = 4096)]
        max_order: u64,
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        #[arg(long, default_value_t = 2)]
        d_min: u64,
        #[arg(long)]
        d_max: Option<u64>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "paley")]
        kind: Vec<KindTagArg>,
        /// Keep only base fields of order at most this.
        #[arg(long)]
        max_base: Option<u64>,
        /// Keep only q <= (n-1)^2.
        #[arg(long)]
        below_threshold: bool,
        /// Report only counterexamples and violations.
        #[arg(long)]
        counterexamples: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Also write the CSV summary here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Check the Katz bound over GF(p^s) inside GF(p^(s n)).
    Katz {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        n: u32,
        /// Character order; every nontrivial order when omitted.
        #[arg(long)]
        d: Option<u64>,
    },
    /// Lower-boundedness constant of a root-of-unity set.
    Epsilon {
        #[arg(long)]
        d: u64,
        /// Classes J; the half circle 0..d/2 when omitted.
        #[arg(long, value_delimiter = ',')]
        classes: Vec<u64>,
    },
    /// Extend a clique (default: the base subfield) to a maximal clique.
    CliqueExtend {
        #[command(flatten)]
        graph: GraphArgs,
        /// Clique as comma-separated element codes.
        #[arg(long, value_delimiter = ',')]
        clique: Vec<u32>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exact)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
        exact_budget: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindTagArg {
    Paley,
    Peisert,
}

/// Error type for the CLI layer: a diagnostic plus its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let flag = match &e {
            Error::EvenP(_) | Error::NonPrimeP(_) => Some("--p"),
            Error::OddD(_) | Error::DegenerateModulus { .. } | Error::InvalidCharacterOrder { .. } => Some("--d"),
            Error::EmptyJ => Some("--classes"),
            Error::CapExceeded { .. } => Some("--cap"),
            Error::NotAClique => Some("--clique"),
            _ => None,
        };
        let message = match flag {
            Some(f) => format!("invalid value for {f}: {e}"),
            None => e.to_string(),
        };
        Failure { code: 2, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 2,
            message: format!("i/o error: {e}"),
        }
    }
}

struct Output {
    body: String,
    code: i32,
}

fn resolve_cap(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure {
            code: 2,
            message: format!("invalid value for {CAP_ENV}: {v:?}"),
        }),
        Err(_) => Ok(ff::DEFAULT_FIELD_CAP),
    }
}

fn to_json<T: Serialize>(value: &T, timestamp: bool) -> Value {
    let mut v = serde_json::to_value(value).expect("report types serialize");
    if timestamp {
        if let Value::Object(map) = &mut v {
            let secs = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            map.insert("generated_at".into(), json!(secs));
        }
    }
    v
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn graph_kind(args: &GraphArgs) -> Result<GraphKind, Failure> {
    Ok(match args.kind {
        KindArg::Paley => GraphKind::GeneralizedPaley { d: args.d },
        KindArg::Peisert => GraphKind::GeneralizedPeisert { d: args.d },
        KindArg::Residue => {
            if args.classes.is_empty() {
                return Err(Failure {
                    code: 2,
                    message: "invalid value for --classes: --kind residue needs --classes".into(),
                });
            }
            GraphKind::ResidueClass {
                d: args.d,
                classes: args.classes.clone(),
            }
        }
    })
}

fn build_graph(args: &GraphArgs, cap: u64) -> Result<CayleyGraph, Failure> {
    if args.s == 0 || args.n == 0 {
        return Err(Failure {
            code: 2,
            message: "invalid value for --s/--n: must be at least 1".into(),
        });
    }
    let table = Arc::new(ff::build_field_with_cap(args.p, args.s * args.n, cap)?);
    Ok(CayleyGraph::new(table, graph_kind(args)?)?)
}

fn report_text(r: &TheoremReport) -> String {
    let mut s = format!(
        "case: {}\nregime: {}\nsubfield clique: {}\nmaximal subfield clique: {}\nmaximal clique: {}\nwitnesses: {}\n",
        r.case,
        r.hypothesis_regime.token(),
        r.subfield_clique,
        r.maximal_subfield_clique,
        r.maximal_clique,
        r.witnesses.len()
    );
    if let Some(size) = r.extended_clique_size {
        s.push_str(&format!("extended clique size: {size}\n"));
    }
    s.push_str(&format!("verdict: {}\n", r.verdict));
    s
}

fn single_report(r: &TheoremReport, cli: &Cli) -> Output {
    let body = match cli.format {
        Format::Json => pretty(&to_json(r, cli.timestamp)),
        Format::Csv => format!("{}\n{}\n", TheoremReport::csv_header(), r.csv_row()),
        Format::Text => report_text(r),
    };
    let code = if r.verdict == Verdict::Violation { 1 } else { 0 };
    Output { body, code }
}

fn json_only(v: Value, cli: &Cli, command: &str) -> Result<Output, Failure> {
    match cli.format {
        Format::Csv => Err(Failure {
            code: 2,
            message: format!("invalid value for --format: csv is not supported by {command}"),
        }),
        Format::Json | Format::Text => Ok(Output {
            body: pretty(&v),
            code: 0,
        }),
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let cap = resolve_cap(cli.cap)?;
    match &cli.command {
        Command::Field { p, s, n } => {
            let t = ff::build_field_with_cap(*p, s * n, cap)?;
            json_only(to_json(&t.descriptor(), cli.timestamp), cli, "field")
        }
        Command::GraphInfo { graph, clique_number } => {
            let g = build_graph(graph, cap)?;
            let e = g.table().degree();
            let subfields: Vec<Value> = (1..=e)
                .filter(|r| e % r == 0)
                .map(|r| -> Result<Value, Failure> {
                    let is = g.subfield_is_clique(r)?;
                    let maximal = is && g.is_maximal_subfield_clique(r)?;
                    Ok(json!({"r": r, "is_clique": is, "maximal_subfield_clique": maximal}))
                })
                .collect::<Result<_, _>>()?;
            let mut v = json!({
                "graph": g.descriptor(),
                "connection_set_size": g.connection_set().len(),
                "subfields": subfields,
            });
            if *clique_number {
                v["clique_number"] = json!(g.clique_number(DEFAULT_CLIQUE_NUMBER_CAP)?);
            }
            json_only(to_json(&v, cli.timestamp), cli, "graph-info")
        }
        Command::Verify { graph, exact_budget } => {
            let case = CaseParams::new(graph.p, graph.s, graph.n, graph_kind(graph)?);
            let opts = VerifyOptions {
                cap,
                exact_budget: *exact_budget,
            };
            let r = verify::verify_case_with(&case, &opts)?;
            Ok(single_report(&r, cli))
        }
        Command::Conjecture { p, s, d } => {
            let opts = VerifyOptions {
                cap,
                ..VerifyOptions::default()
            };
            let r = verify::verify_conjecture_case_with(*p, *s, *d, &opts)?;
            Ok(single_report(&r, cli))
        }
        Command::Sweep {
            max_order,
            n_min,
            n_max,
            d_min,
            d_max,
            kind,
            max_base,
            below_threshold,
            counterexamples,
            workers,
            summary,
        } => {
            let mut kinds: Vec<KindTag> = kind
                .iter()
                .map(|k| match k {
                    KindTagArg::Paley => KindTag::Paley,
                    KindTagArg::Peisert => KindTag::Peisert,
                })
                .collect();
            kinds.sort();
            kinds.dedup();
            if *workers == 0 {
                return Err(Failure {
                    code: 2,
                    message: "invalid value for --workers: must be at least 1".into(),
                });
            }
            if max_order > &cap {
                return Err(Failure {
                    code: 2,
                    message: format!("invalid value for --max-order: {max_order} exceeds the field cap {cap}"),
                });
            }
            let config = SweepConfig {
                max_order: *max_order,
                n_range: (*n_min, *n_max),
                d_range: (*d_min, d_max.unwrap_or(u64::MAX)),
                kinds,
                max_base: *max_base,
                below_paley_threshold: *below_threshold,
                workers: *workers,
                cap,
                exact_budget: DEFAULT_EXACT_BUDGET,
            };
            let mut reports = verify::sweep(&config)?;
            let violated = reports.iter().any(|r| r.verdict == Verdict::Violation);
            if *counterexamples {
                reports.retain(|r| matches!(r.verdict, Verdict::Violation | Verdict::CounterexampleBelowThreshold));
            }
            let csv = std::iter::once(TheoremReport::csv_header().to_string())
                .chain(reports.iter().map(|r| r.csv_row()))
                .fold(String::new(), |mut acc, line| {
                    acc.push_str(&line);
                    acc.push('\n');
                    acc
                });
            if let Some(path) = summary {
                std::fs::write(path, &csv)?;
            }
            let body = match cli.format {
                Format::Json => reports.iter().fold(String::new(), |mut acc, r| {
                    acc.push_str(&serde_json::to_string(&to_json(r, cli.timestamp)).expect("serializes"));
                    acc.push('\n');
                    acc
                }),
                Format::Csv => csv,
                Format::Text => reports.iter().fold(String::new(), |mut acc, r| {
                    acc.push_str(&format!("{}: {}\n", r.case, r.verdict));
                    acc
                }),
            };
            Ok(Output {
                body,
                code: if violated { 1 } else { 0 },
            })
        }
        Command::Katz { p, s, n, d } => {
            let table: Arc<FieldTable> = Arc::new(ff::build_field_with_cap(*p, s * n, cap)?);
            let orders = match d {
                Some(d) => vec![*d],
                None => charsum::nontrivial_orders(table.order()),
            };
            let reports: Vec<charsum::KatzReport> = orders
                .iter()
                .map(|&d| charsum::katz_bound_check(&table, *s, d))
                .collect::<Result<_, _>>()?;
            let violated = reports.iter().any(|r| !r.holds());
            let body = match cli.format {
                Format::Csv => {
                    reports
                        .iter()
                        .fold(String::from("p,E,r,d,max_ratio,worst_theta,bound\n"), |mut acc, r| {
                            acc.push_str(&format!(
                                "{},{},{},{},{},{},{}\n",
                                r.p, r.e, r.r, r.d, r.max_ratio, r.worst_theta, r.bound
                            ));
                            acc
                        })
                }
                _ if reports.len() == 1 => pretty(&to_json(&reports[0], cli.timestamp)),
                _ => pretty(&to_json(&reports, false)),
            };
            Ok(Output {
                body,
                code: if violated { 1 } else { 0 },
            })
        }
        Command::Epsilon { d, classes } => {
            let v = if classes.is_empty() {
                let lemma = charsum::verify_lemma_bound(*d)?;
                let classes: Vec<u64> = (0..d / 2).collect();
                json!({
                    "d": d,
                    "J": classes,
                    "epsilon_star": lemma.epsilon_star,
                    "weights": lemma.weights,
                    "paper_bound": lemma.lower_bound,
                    "analytic": lemma.analytic,
                    "holds": lemma.holds,
                })
            } else {
                serde_json::to_value(charsum::epsilon_star(*d, classes)?).expect("serializes")
            };
            match cli.format {
                Format::Csv => Ok(Output {
                    body: format!("d,epsilon_star\n{},{}\n", d, v["epsilon_star"]),
                    code: 0,
                }),
                _ => Ok(Output {
                    body: pretty(&to_json(&v, cli.timestamp)),
                    code: 0,
                }),
            }
        }
        Command::CliqueExtend {
            graph,
            clique,
            strategy,
            exact_budget,
        } => {
            let g = build_graph(graph, cap)?;
            let base: Vec<Element> = if clique.is_empty() {
                g.table().subfield_elements(graph.s)?
            } else {
                if let Some(bad) = clique.iter().find(|&&c| !g.table().contains(Element(c))) {
                    return Err(Failure {
                        code: 2,
                        message: format!("invalid value for --clique: code {bad} is not a field element"),
                    });
                }
                clique.iter().map(|&c| Element(c)).collect()
            };
            let strategy = match strategy {
                StrategyArg::Greedy => Strategy::Greedy,
                StrategyArg::Exact => Strategy::Exact,
            };
            let r = g.extend_to_maximal_clique(&base, strategy, *exact_budget)?;
            json_only(to_json(&r, cli.timestamp), cli, "clique-extend")
        }
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, out.body.as_bytes()),
                None => std::io::stdout().write_all(out.body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: i/o error: {e}");
                return 2;
            }
            out.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
