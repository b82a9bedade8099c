//! Command-line front end. [`run`] never touches the process: it returns the
//! exit status and the bytes destined for stdout and stderr.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use curvecraft_core::enhanced::BasisSpec;
use curvecraft_core::interp::MonotoneDataset;
use curvecraft_core::io::figures::{figure, FIGURE_IDS};
use curvecraft_core::io::problem::{
    interp_from_document, parse_curve_problem, InterpDocument, Mode, Reference, Strategy,
};
use curvecraft_core::io::table::{export_table, polyline_header};
use curvecraft_core::io::{export_csv, export_svg, parse_dataset_csv};
use curvecraft_core::report::uniform_grid;
use curvecraft_core::{AuxKind, AuxiliaryFunction, Error, Family};
use serde::Serialize;

use crate::compute::{self, classify, to_json};
use crate::shorthand::{parse_aux, parse_system};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub status: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: Vec<u8>) -> Self {
        CommandResult {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CommandResult {
            status: EXIT_USAGE,
            stdout: Vec::new(),
            stderr: message.into(),
        }
    }

    fn domain(err: &Error) -> Self {
        let (_, body) = classify(err);
        let mut stderr = format!("error: {}\n", body.message);
        if let Some(field) = &body.field {
            stderr.push_str(&format!("field: {field}\n"));
        }
        if let Some(bound) = body.bound {
            stderr.push_str(&format!("bound: {bound}\n"));
        }
        CommandResult {
            status: EXIT_DOMAIN,
            stdout: Vec::new(),
            stderr,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "curvecraft",
    version,
    about = "Shape-parameterized curves and monotone interpolation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate every basis function on a uniform grid.
    EvalBasis(EvalBasisArgs),
    /// Sample a curve problem, or render it with an optional σ sweep.
    Curve(CurveArgs),
    /// Monotone C¹ or C² interpolation of x,f data.
    Interp(InterpArgs),
    /// Check the defining properties of an auxiliary function.
    ValidateAux(ValidateAuxArgs),
    /// Regenerate the figure scenarios as SVG files.
    Figures(FiguresArgs),
    /// Run the HTTP JSON service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SceneFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Args)]
struct EvalBasisArgs {
    /// bernstein:N, p_bezier:G, lambda_mu:L,M, yan:L, or a JSON descriptor.
    #[arg(long, value_parser = parse_system)]
    system: Family,
    /// cubic, quintic, bernstein_tail:N, trig:K, expo_rational, pseudo_psi, or JSON.
    #[arg(long, value_parser = parse_aux, default_value = "cubic")]
    aux: AuxKind,
    #[arg(long, allow_negative_numbers = true)]
    sigma: f64,
    #[arg(long, default_value_t = 11)]
    samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    out: TableFormat,
}

#[derive(Debug, Args)]
struct CurveArgs {
    /// JSON curve problem: {"basis": …, "polygon": …, "samples"?: …, "sigmas"?: […]}.
    #[arg(long)]
    problem: PathBuf,
    /// Overrides the document's sample count.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    out: SceneFormat,
    /// Replace the σ list by k evenly spaced values from 0 to 1.
    #[arg(long, value_name = "K", value_parser = clap::value_parser!(u16).range(2..))]
    sigma_sweep: Option<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    C1,
    C2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Sol1,
    AppendixC,
    Remark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReferenceArg {
    Logistic,
}

#[derive(Debug, Args)]
struct InterpArgs {
    /// CSV with header `x,f`, or a JSON array of [x, f] pairs.
    #[arg(long)]
    data: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Defaults to sol1 for c1 and appendix-c for c2.
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    zeta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    sigma: f64,
    /// Defaults to cubic for c1 and quintic for c2.
    #[arg(long, value_parser = parse_aux)]
    aux: Option<AuxKind>,
    /// Samples per segment.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    out: SceneFormat,
    /// Also write the JSON report (constraint check, continuity, slopes, error) to this file.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Reference function for the error profile.
    #[arg(long, value_enum)]
    reference: Option<ReferenceArg>,
}

#[derive(Debug, Args)]
struct ValidateAuxArgs {
    #[arg(long, value_parser = parse_aux)]
    aux: AuxKind,
    #[arg(long, default_value_t = 1001)]
    grid: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Debug, Args)]
struct FiguresArgs {
    /// Figure id; all figures when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
    which: Option<u8>,
    #[arg(long, default_value = "figures")]
    outdir: PathBuf,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long, env = "CURVECRAFT_PORT", default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
}

/// Parse `args` (program name first) and execute the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandResult::ok(text.into_bytes())
                }
                _ => CommandResult::usage(text),
            };
        }
    };
    match cli.command {
        Command::EvalBasis(a) => eval_basis(a),
        Command::Curve(a) => curve(a),
        Command::Interp(a) => interp(a),
        Command::ValidateAux(a) => validate_aux(a),
        Command::Figures(a) => figures(a),
        Command::Serve(a) => serve(a),
    }
}

fn finish(outcome: Result<Vec<u8>, Error>) -> CommandResult {
    match outcome {
        Ok(bytes) => CommandResult::ok(bytes),
        Err(e) => CommandResult::domain(&e),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Error> {
    std::fs::read(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

#[derive(Serialize)]
struct BasisTable {
    basis: BasisSpec,
    t: Vec<f64>,
    values: Vec<Vec<f64>>,
}

fn eval_basis(a: EvalBasisArgs) -> CommandResult {
    if a.samples < 2 {
        return CommandResult::usage("error: --samples must be at least 2\n");
    }
    finish((|| {
        compute::check_limits(&a.system)?;
        let basis = BasisSpec {
            system: a.system,
            aux: a.aux,
            sigma: a.sigma,
        }
        .build()?;
        let t: Vec<f64> = uniform_grid(a.samples).collect();
        let values = t
            .iter()
            .map(|&t| basis.evaluate_all(t))
            .collect::<Result<Vec<_>, _>>()?;
        match a.out {
            TableFormat::Json => Ok(to_json(&BasisTable {
                basis: basis.into(),
                t,
                values,
            })),
            TableFormat::Csv => {
                let mut header = vec!["t".to_string()];
                header.extend((0..values[0].len()).map(|i| format!("T{i}")));
                let rows: Vec<Vec<f64>> = t
                    .iter()
                    .zip(values)
                    .map(|(t, v)| std::iter::once(*t).chain(v).collect())
                    .collect();
                export_table(&header, &rows)
            }
        }
    })())
}

fn curve(a: CurveArgs) -> CommandResult {
    finish((|| {
        let mut problem = parse_curve_problem(&read(&a.problem)?)?;
        if let Some(samples) = a.samples {
            if samples < 2 {
                return Err(Error::InvalidParameter {
                    name: "samples",
                    value: samples as f64,
                    reason: "must be at least 2".into(),
                });
            }
            problem.samples = samples;
        }
        if let Some(k) = a.sigma_sweep {
            problem.sigmas = Some(compute::sweep_sigmas(k as usize));
        }
        let response = compute::curve_polylines(&problem)?;
        match a.out {
            SceneFormat::Json => Ok(to_json(&response)),
            SceneFormat::Svg => export_svg(&compute::curve_scene(&response)),
            SceneFormat::Csv if problem.sigmas.is_none() => {
                let line = &response.polylines[0];
                export_csv(&curvecraft_core::Polyline {
                    params: line.params.clone(),
                    points: line.points.clone(),
                })
            }
            SceneFormat::Csv => {
                let dim = response.polygon[0].len();
                let mut header = vec!["sigma".to_string()];
                header.extend(polyline_header(dim));
                let rows: Vec<Vec<f64>> = response
                    .polylines
                    .iter()
                    .flat_map(|line| {
                        line.params
                            .iter()
                            .zip(&line.points)
                            .map(move |(t, p)| [line.sigma, *t].into_iter().chain(p.iter().copied()).collect())
                    })
                    .collect();
                export_table(&header, &rows)
            }
        }
    })())
}

fn load_dataset(path: &Path) -> Result<MonotoneDataset, Error> {
    let bytes = read(path)?;
    let first = bytes.iter().find(|b| !b.is_ascii_whitespace());
    if first == Some(&b'[') {
        let pairs: Vec<[f64; 2]> = serde_json::from_slice(&bytes).map_err(|e| Error::Schema {
            field: "dataset".into(),
            message: e.to_string(),
        })?;
        MonotoneDataset::try_from(pairs)
    } else {
        parse_dataset_csv(&bytes)
    }
}

fn interp(a: InterpArgs) -> CommandResult {
    let (mode, default_strategy) = match a.mode {
        ModeArg::C1 => (Mode::C1, StrategyArg::Sol1),
        ModeArg::C2 => (Mode::C2, StrategyArg::AppendixC),
    };
    let strategy = a.strategy.unwrap_or(default_strategy);
    let needed: &[(&str, Option<f64>)] = match (a.mode, strategy) {
        (ModeArg::C1, StrategyArg::Sol1) | (ModeArg::C2, StrategyArg::AppendixC) => &[("--s", a.s)],
        (ModeArg::C2, StrategyArg::Remark) => &[("--zeta", a.zeta), ("--eta", a.eta)],
        _ => {
            return CommandResult::usage(format!(
                "error: strategy {strategy:?} does not apply to mode {:?}\n",
                a.mode
            ))
        }
    };
    for (flag, value) in needed {
        if value.is_none() {
            return CommandResult::usage(format!("error: {flag} is required by the chosen strategy\n"));
        }
    }
    let strategy = match strategy {
        StrategyArg::Sol1 => Strategy::Sol1,
        StrategyArg::AppendixC => Strategy::AppendixC,
        StrategyArg::Remark => Strategy::Remark,
    };
    finish((|| {
        let data = load_dataset(&a.data)?;
        let doc = InterpDocument {
            dataset: data.into(),
            mode,
            solution_strategy: Some(strategy),
            s: a.s,
            zeta: a.zeta,
            eta: a.eta,
            sigma: a.sigma,
            aux: a.aux,
            samples: a.samples,
            reference: a.reference.map(|_| Reference::Logistic),
        };
        let problem = interp_from_document(&doc)?;
        let result = compute::interpolate(&problem)?;
        if let Some(path) = &a.report {
            std::fs::write(path, to_json(&result.response.report))
                .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
        }
        match a.out {
            SceneFormat::Json => Ok(to_json(&result.response)),
            SceneFormat::Csv => export_csv(&result.response.samples),
            SceneFormat::Svg => export_svg(&compute::interp_scene(&problem, &result.response)),
        }
    })())
}

#[derive(Serialize)]
struct AuxValidation {
    aux: AuxKind,
    increasing: bool,
    c2_compatible: bool,
    strict_partition: bool,
    all_passed: bool,
    report: curvecraft_core::PropertyReport,
}

fn validate_aux(a: ValidateAuxArgs) -> CommandResult {
    if a.grid < 2 {
        return CommandResult::usage("error: --grid must be at least 2\n");
    }
    finish((|| {
        let aux = AuxiliaryFunction::from_kind(a.aux)?;
        let report = aux.validate(a.grid, a.tol)?;
        Ok(to_json(&AuxValidation {
            aux: aux.kind(),
            increasing: aux.increasing(),
            c2_compatible: aux.c2_compatible(),
            strict_partition: aux.strict_partition(),
            all_passed: report.all_passed(),
            report,
        }))
    })())
}

fn figures(a: FiguresArgs) -> CommandResult {
    let ids: Vec<u8> = match a.which {
        Some(id) => vec![id],
        None => FIGURE_IDS.collect(),
    };
    finish((|| {
        std::fs::create_dir_all(&a.outdir)
            .map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", a.outdir.display())))?;
        let mut listing = String::new();
        for id in ids {
            for file in figure(id)? {
                let path = a.outdir.join(&file.name);
                std::fs::write(&path, export_svg(&file.scene)?)
                    .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
                listing.push_str(&path.display().to_string());
                listing.push('\n');
            }
        }
        Ok(listing.into_bytes())
    })())
}

fn serve(a: ServeArgs) -> CommandResult {
    match crate::service::serve_blocking(&a.host, a.port) {
        Ok(()) => CommandResult::ok(Vec::new()),
        Err(e) => CommandResult {
            status: EXIT_DOMAIN,
            stdout: Vec::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
