//! `hyperforman`: Euler characteristic and Forman curvature of hypernetworks.
//!
//! Exit codes: 0 success, 2 invalid input or arguments, 3 I/O failure,
//! 4 chain cap exceeded, 5 Gauss–Bonnet balance violated.

mod input;
mod pipeline;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperforman::curvature::{curvature_filtration, gauss_bonnet, CurvatureReport};
use hyperforman::hypernet::HypernetError;
use hyperforman::poset::{ChainCapExceeded, DEFAULT_CHAIN_CAP};
use hyperforman::{DegreeMode, DirectedConfig, FVector, HalfInteger, TriangleMode};
use serde::Serialize;
use thiserror::Error;

use input::{Input, InputFormat};
use pipeline::{ChiMethod, Model, Settings};

const R2_NOTE: &str = "R2(t) = 1 + 6*3 - 3^2 = 10 for every triangle; the variant 1 + 6*3 + 3^2 = 24 does not balance the Gauss-Bonnet identity";
const CLOSED_FORM_NOTE: &str = "closed-form Ricci is 3*T + 4 - deg(u) - deg(v); the variant 9*T + 4 + deg(u) + deg(v) disagrees with the definition";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Parse(#[from] HypernetError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    ChainCap(#[from] ChainCapExceeded),
    #[error("Gauss-Bonnet residual is {0}, expected 0")]
    GaussBonnet(HalfInteger),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Parse(_) => 2,
            CliError::Io { .. } => 3,
            CliError::ChainCap(_) => 4,
            CliError::GaussBonnet(_) => 5,
        }
    }
}

#[derive(Parser)]
#[command(name = "hyperforman", version, about = "Euler characteristic and Forman curvature of hypernetworks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an input file.
    Validate(Common),
    /// Euler characteristic by one or all methods.
    Chi {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = ChiMethod::All)]
        chi_method: ChiMethod,
        #[arg(long, value_enum, default_value_t = Output::Human)]
        output: Output,
    },
    /// Per-edge Forman Ricci curvature, vertex and triangle terms.
    Curvature {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        directed: DirectedArgs,
        #[arg(long, value_enum, default_value_t = Output::Human)]
        output: Output,
    },
    /// Check Σ R0 − Σ Ric + Σ R2 = χ exactly.
    GaussBonnet {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Output::Human)]
        output: Output,
    },
    /// χ-profile of the curvature sublevel filtration.
    Filtrate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Output::Human)]
        output: Output,
    },
    /// Everything above as one JSON document.
    Report {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        directed: DirectedArgs,
        #[arg(long, value_enum, default_value_t = ChiMethod::All)]
        chi_method: ChiMethod,
    },
}

#[derive(Args)]
struct Common {
    /// Input file (.json or .hnet).
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
    /// Leave ground nodes out of the poset.
    #[arg(long)]
    no_singletons: bool,
    /// Order-complex dimension cap: a number or `full`.
    #[arg(long, default_value = "full")]
    skeleton: Skeleton,
    /// Complex built from a hypernetwork.
    #[arg(long, value_enum, default_value_t = Model::Poset)]
    model: Model,
    #[arg(long, env = "HYPERFORMAN_CHAIN_CAP", default_value_t = DEFAULT_CHAIN_CAP)]
    chain_cap: u64,
}

impl Common {
    fn settings(&self) -> Settings {
        Settings {
            singletons: !self.no_singletons,
            skeleton: self.skeleton.0,
            model: self.model,
            chain_cap: self.chain_cap,
        }
    }
}

#[derive(Args)]
struct DirectedArgs {
    /// Directed variant over hypervertices and directed hyperedges.
    #[arg(long)]
    directed: bool,
    #[arg(long, value_enum, requires = "directed")]
    degree: Option<DegreeArg>,
    #[arg(long, value_enum, requires = "directed")]
    triangles: Option<TriangleArg>,
}

impl DirectedArgs {
    fn config(&self) -> Option<DirectedConfig> {
        self.directed.then(|| DirectedConfig {
            degree_mode: match self.degree.unwrap_or(DegreeArg::Out) {
                DegreeArg::In => DegreeMode::In,
                DegreeArg::Out => DegreeMode::Out,
            },
            triangle_mode: match self.triangles.unwrap_or(TriangleArg::Transitive) {
                TriangleArg::Transitive => TriangleMode::Transitive,
                TriangleArg::Cyclic => TriangleMode::Cyclic,
            },
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DegreeArg {
    In,
    Out,
}

#[derive(Clone, Copy, ValueEnum)]
enum TriangleArg {
    Transitive,
    Cyclic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Human,
}

#[derive(Clone, Copy, Debug)]
struct Skeleton(Option<usize>);

impl FromStr for Skeleton {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "full" {
            return Ok(Skeleton(None));
        }
        s.parse()
            .map(|d| Skeleton(Some(d)))
            .map_err(|_| format!("expected a dimension or `full`, got {s:?}"))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err((err, partial)) => {
            if let Some(text) = partial {
                print!("{text}");
            }
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

type RunResult = Result<String, (CliError, Option<String>)>;

fn run(command: Command) -> RunResult {
    let plain = |e: CliError| (e, None);
    match command {
        Command::Validate(common) => {
            let input = input::load(&common.input, common.format).map_err(plain)?;
            Ok(format!("{}\n", input.summary()))
        }
        Command::Chi {
            common,
            chi_method,
            output,
        } => {
            let input = input::load(&common.input, common.format).map_err(plain)?;
            let entries = pipeline::chi_entries(&input, &common.settings(), chi_method).map_err(plain)?;
            Ok(render_chi(&entries, output))
        }
        Command::Curvature {
            common,
            directed,
            output,
        } => {
            let input = input::load(&common.input, common.format).map_err(plain)?;
            let settings = common.settings();
            let k = pipeline::working_complex(&input, &settings, Some(2)).map_err(plain)?;
            let report = gauss_bonnet(&k);
            let directed = directed
                .config()
                .map(|cfg| pipeline::directed_report(&input, cfg))
                .transpose()
                .map_err(plain)?;
            Ok(render_curvature(&settings, &input, &report, directed.as_ref(), output))
        }
        Command::GaussBonnet { common, output } => {
            let input = input::load(&common.input, common.format).map_err(plain)?;
            let k = pipeline::working_complex(&input, &common.settings(), Some(2)).map_err(plain)?;
            let report = gauss_bonnet(&k);
            let text = render_gauss_bonnet(&report, output);
            if report.holds() {
                Ok(text)
            } else {
                Err((CliError::GaussBonnet(report.gb_residual), Some(text)))
            }
        }
        Command::Filtrate { common, output } => {
            let input = input::load(&common.input, common.format).map_err(plain)?;
            let k = pipeline::working_complex(&input, &common.settings(), Some(2)).map_err(plain)?;
            let rows: Vec<pipeline::FiltrationRow> = curvature_filtration(&k).iter().map(Into::into).collect();
            Ok(render_filtration(&rows, output))
        }
        Command::Report {
            common,
            directed,
            chi_method,
        } => {
            let input = input::load(&common.input, common.format).map_err(plain)?;
            full_report(&input, &common.settings(), directed.config(), chi_method).map_err(plain)
        }
    }
}

#[derive(Serialize)]
struct ComplexSummary {
    model: &'static str,
    f_vector: FVector,
    chi: i64,
}

fn model_name(input: &Input, settings: &Settings) -> &'static str {
    match (input, settings.model) {
        (Input::Complex(_), _) => "input complex",
        (Input::Network(_), Model::Geometric) => "geometric model",
        _ => "order complex",
    }
}

#[derive(Serialize)]
struct FullReport<'a> {
    input: InputSummary,
    settings: &'a Settings,
    poset: pipeline::PosetReport,
    chi: Vec<pipeline::ChiEntry>,
    complex: ComplexSummary,
    curvature: CurvatureReport,
    gauss_bonnet_holds: bool,
    filtration: Vec<pipeline::FiltrationRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    directed: Option<pipeline::DirectedReport>,
    notes: [&'static str; 2],
}

#[derive(Serialize)]
struct InputSummary {
    kind: &'static str,
    summary: String,
}

fn full_report(
    input: &Input,
    settings: &Settings,
    directed: Option<DirectedConfig>,
    chi_method: ChiMethod,
) -> Result<String, CliError> {
    let poset = pipeline::poset_of(input, settings.singletons);
    let k = pipeline::working_complex(input, settings, Some(2))?;
    let curvature = gauss_bonnet(&k);
    let report = FullReport {
        input: InputSummary {
            kind: input.kind(),
            summary: input.summary(),
        },
        settings,
        poset: pipeline::poset_report(&poset),
        chi: pipeline::chi_entries(input, settings, chi_method)?,
        complex: ComplexSummary {
            model: model_name(input, settings),
            f_vector: k.f_vector(),
            chi: k.euler_characteristic(),
        },
        gauss_bonnet_holds: curvature.holds(),
        filtration: curvature_filtration(&k).iter().map(Into::into).collect(),
        curvature,
        directed: directed.map(|cfg| pipeline::directed_report(input, cfg)).transpose()?,
        notes: [R2_NOTE, CLOSED_FORM_NOTE],
    };
    Ok(to_json(&report))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("flat rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

fn render_chi(entries: &[pipeline::ChiEntry], output: Output) -> String {
    match output {
        Output::Json => to_json(&entries),
        Output::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                method: &'a str,
                value: Option<i64>,
                status: &'a str,
                source: &'a str,
            }
            to_csv(
                &entries
                    .iter()
                    .map(|e| Row {
                        method: e.method,
                        value: e.value,
                        status: e.status,
                        source: e.source,
                    })
                    .collect::<Vec<_>>(),
            )
        }
        Output::Human => {
            let mut out = String::new();
            for e in entries {
                let value = match (e.value, &e.detail) {
                    (Some(v), _) => v.to_string(),
                    (None, Some(d)) => format!("{} ({d})", e.status.replace('_', " ")),
                    (None, None) => e.status.replace('_', " "),
                };
                let _ = writeln!(out, "{}: {value}  [{}]", e.method, e.source);
            }
            out
        }
    }
}

fn render_curvature(
    settings: &Settings,
    input: &Input,
    report: &CurvatureReport,
    directed: Option<&pipeline::DirectedReport>,
    output: Output,
) -> String {
    match output {
        Output::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                model: &'static str,
                curvature: &'a CurvatureReport,
                #[serde(skip_serializing_if = "Option::is_none")]
                directed: Option<&'a pipeline::DirectedReport>,
                notes: [&'static str; 2],
            }
            to_json(&Doc {
                model: model_name(input, settings),
                curvature: report,
                directed,
                notes: [R2_NOTE, CLOSED_FORM_NOTE],
            })
        }
        Output::Csv => {
            #[derive(Serialize)]
            struct Row {
                edge: String,
                triangles: usize,
                parallels: usize,
                ricci: i64,
                ricci_closed: i64,
                agree: bool,
            }
            to_csv(
                &report
                    .edges
                    .iter()
                    .map(|e| Row {
                        edge: e.labels.join("|"),
                        triangles: e.triangles,
                        parallels: e.parallels,
                        ricci: e.ricci,
                        ricci_closed: e.ricci_closed,
                        agree: e.forms_agree(),
                    })
                    .collect::<Vec<_>>(),
            )
        }
        Output::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "model: {}", model_name(input, settings));
            let width = report
                .edges
                .iter()
                .map(|e| e.labels.join(" -- ").len())
                .chain([4])
                .max()
                .unwrap_or(4);
            let _ = writeln!(out, "{:<width$}  {:>3} {:>3} {:>4} {:>6}  agree", "edge", "T", "P", "Ric", "closed");
            for e in &report.edges {
                let _ = writeln!(
                    out,
                    "{:<width$}  {:>3} {:>3} {:>4} {:>6}  {}",
                    e.labels.join(" -- "),
                    e.triangles,
                    e.parallels,
                    e.ricci,
                    e.ricci_closed,
                    if e.forms_agree() { "yes" } else { "NO" }
                );
            }
            let _ = writeln!(out);
            for v in &report.vertices {
                let _ = writeln!(out, "R0({}) = {}  [deg {}]", v.label, v.r0.to_decimal_string(), v.degree);
            }
            for t in &report.triangles {
                let _ = writeln!(out, "R2({}) = {}", t.labels.join(" "), t.r2);
            }
            let _ = writeln!(
                out,
                "\nsum R0 = {}, sum Ric = {}, sum R2 = {}, chi = {}",
                report.sum_r0.to_decimal_string(),
                report.sum_ricci,
                report.sum_r2,
                report.chi
            );
            if let Some(d) = directed {
                let _ = writeln!(
                    out,
                    "\ndirected ({:?} degrees, {:?} triangles)",
                    d.config.degree_mode, d.config.triangle_mode
                );
                for v in &d.vertices {
                    let _ = writeln!(out, "{}: in {}, out {}", v.vertex, v.in_degree, v.out_degree);
                }
                let _ = writeln!(out, "oriented triangles: {}", d.triangles.len());
                let _ = writeln!(out, "chi_directed_paper = {}", d.chi_directed_paper.to_decimal_string());
                let _ = writeln!(out, "chi_directed_count = {}", d.chi_directed_count);
            }
            out
        }
    }
}

fn render_gauss_bonnet(report: &CurvatureReport, output: Output) -> String {
    #[derive(Serialize)]
    struct Row {
        sum_r0: HalfInteger,
        sum_ricci: i64,
        sum_r2: i64,
        chi: i64,
        residual: HalfInteger,
    }
    let row = Row {
        sum_r0: report.sum_r0,
        sum_ricci: report.sum_ricci,
        sum_r2: report.sum_r2,
        chi: report.chi,
        residual: report.gb_residual,
    };
    match output {
        Output::Json => to_json(&row),
        Output::Csv => to_csv(&[row]),
        Output::Human => {
            let lhs = report.sum_r0 - report.sum_ricci + report.sum_r2;
            let balance = if report.holds() {
                format!("{} = χ", report.chi)
            } else {
                format!("{} != {} = χ", lhs.to_decimal_string(), report.chi)
            };
            format!(
                "{} - {} + {} = {balance}\nresidual: {}\n",
                report.sum_r0.to_decimal_string(),
                report.sum_ricci,
                report.sum_r2,
                report.gb_residual.to_decimal_string()
            )
        }
    }
}

fn render_filtration(rows: &[pipeline::FiltrationRow], output: Output) -> String {
    match output {
        Output::Json => to_json(&rows),
        Output::Csv => to_csv(rows),
        Output::Human => {
            let mut out = format!("{:>9} {:>6} {:>6} {:>6} {:>6}\n", "threshold", "f0", "f1", "f2", "chi");
            for r in rows {
                let _ = writeln!(out, "{:>9} {:>6} {:>6} {:>6} {:>6}", r.threshold, r.f0, r.f1, r.f2, r.chi);
            }
            out
        }
    }
}
