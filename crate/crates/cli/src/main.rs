use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mvm_core::canonical::{canonize, complete, equivalent_by_completion};
use mvm_core::dynamics::{async_ts, equivalent_by_ts, sync_ts};
use mvm_core::io::{export_ts, parse_model_with_limits, serialize_model, TsFormat};
use mvm_core::minimization::{equivalent_by_minimization, minimize};
use mvm_core::normalization::{mtv, normalize, observability_report};
use mvm_core::oracle::{mtv_oracle, ts_observable_oracle, ts_observable_oracle_mtv};
use mvm_core::{Error, Limits, Model, StateSpace};

#[derive(Parser)]
#[command(
    name = "mvm",
    version,
    about = "Equivalence and reduction of multi-valued regulatory network models"
)]
struct Cli {
    /// Largest state space that may be enumerated.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_MAX_STATES)]
    max_states: usize,
    /// Largest number of regulatory contexts per component.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_MAX_CONTEXTS)]
    max_contexts: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file; exits 1 and lists the problems if it is not valid.
    Validate { file: PathBuf },
    /// Write the transition system of a model.
    Ts {
        file: PathBuf,
        /// Synchronous instead of asynchronous updates.
        #[arg(long)]
        sync: bool,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Clamp parameters into their canonical range.
    Canonize(Transform),
    /// Add every missing edge.
    Complete(Transform),
    /// Replace every parameter by its monotone target value.
    Normalize(Transform),
    /// Normalize and remove every non-observable edge.
    Minimize(Transform),
    /// Report, per edge, whether it is observable in the parameters and in the dynamics.
    Observability {
        file: PathBuf,
        /// One `edge <u> <n> <v> param=<bool> ts=<bool>` line per edge.
        #[arg(long)]
        machine: bool,
    },
    /// Decide whether two models have the same transition system. Exits 0 if so, 1 if not.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Minimize)]
        method: Method,
    },
    /// Compare the fast procedures against brute-force state enumeration.
    #[command(hide = true)]
    Oracle { file: PathBuf },
}

#[derive(clap::Args)]
struct Transform {
    file: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edges,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Minimize,
    Complete,
    Ts,
}

enum Failure {
    /// Reported with exit code 1.
    Rejected(String),
    /// Reported with exit code 2.
    Fatal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Fatal(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        max_states: cli.max_states,
        max_contexts: cli.max_contexts,
    };
    match run(cli.command, limits) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Rejected(message)) => {
            eprintln!("{message}");
            ExitCode::from(1)
        }
        Err(Failure::Fatal(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Fatal(format!("{}: {e}", path.display())))
}

fn load(path: &Path, limits: Limits) -> Result<Model, Failure> {
    let text = read(path)?;
    parse_model_with_limits(&text, limits).map_err(|e| match e {
        Error::Parse(p) => Failure::Fatal(format!("{}:{p}", path.display())),
        other => Failure::Fatal(format!("{}: {other}", path.display())),
    })
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    let result = match output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    result.map_err(|e| Failure::Fatal(format!("cannot write output: {e}")))
}

fn run(command: Command, limits: Limits) -> Result<u8, Failure> {
    match command {
        Command::Validate { file } => {
            let text = read(&file)?;
            match parse_model_with_limits(&text, limits) {
                Ok(_) => Ok(0),
                Err(Error::Parse(p)) => Err(Failure::Rejected(format!("{}:{p}", file.display()))),
                Err(e @ (Error::Invalid(_) | Error::UnknownComponent(_))) => {
                    Err(Failure::Rejected(format!("{}: {e}", file.display())))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Ts {
            file,
            sync,
            format,
            output,
        } => {
            let model = load(&file, limits)?;
            let ts = if sync {
                sync_ts(&model)?
            } else {
                async_ts(&model)?
            };
            let format = match format {
                Format::Edges => TsFormat::Edges,
                Format::Dot => TsFormat::Dot,
            };
            emit(output.as_deref(), &export_ts(&ts, format))?;
            Ok(0)
        }
        Command::Canonize(t) => transform(t, limits, |m| Ok(canonize(m))),
        Command::Complete(t) => transform(t, limits, complete),
        Command::Normalize(t) => transform(t, limits, |m| Ok(normalize(m))),
        Command::Minimize(t) => transform(t, limits, |m| Ok(minimize(m))),
        Command::Observability { file, machine } => {
            let model = load(&file, limits)?;
            emit(None, &render_observability(&model, machine))?;
            Ok(0)
        }
        Command::Equiv {
            first,
            second,
            method,
        } => {
            let a = load(&first, limits)?;
            let b = load(&second, limits)?;
            let equal = match method {
                Method::Minimize => equivalent_by_minimization(&a, &b)?,
                Method::Complete => equivalent_by_completion(&a, &b)?,
                Method::Ts => equivalent_by_ts(&a, &b)?,
            };
            println!(
                "{}",
                if equal {
                    "equivalent"
                } else {
                    "not equivalent"
                }
            );
            Ok(if equal { 0 } else { 1 })
        }
        Command::Oracle { file } => {
            let model = load(&file, limits)?;
            let (report, disagreements) = oracle_report(&model)?;
            emit(None, &report)?;
            Ok(if disagreements == 0 { 0 } else { 1 })
        }
    }
}

fn transform(
    t: Transform,
    limits: Limits,
    f: impl FnOnce(&Model) -> mvm_core::Result<Model>,
) -> Result<u8, Failure> {
    let model = load(&t.file, limits)?;
    emit(t.output.as_deref(), &serialize_model(&f(&model)?))?;
    Ok(0)
}

fn render_observability(model: &Model, machine: bool) -> String {
    let graph = model.graph();
    let report = observability_report(model);
    let mut out = String::new();
    if machine {
        for e in &report.entries {
            out.push_str(&format!(
                "edge {} {} {} param={} ts={}\n",
                graph.name(e.edge.source),
                e.edge.threshold,
                graph.name(e.edge.target),
                e.in_param,
                e.in_ts
            ));
        }
        return out;
    }
    let labels: Vec<String> = report
        .entries
        .iter()
        .map(|e| graph.edge_label(&e.edge))
        .collect();
    let width = labels
        .iter()
        .map(|l| l.len())
        .max()
        .unwrap_or(0)
        .max("edge".len());
    out.push_str(&format!("{:<width$}  {:<5}  ts\n", "edge", "param"));
    for (label, e) in labels.iter().zip(&report.entries) {
        out.push_str(&format!(
            "{label:<width$}  {:<5}  {}\n",
            e.in_param, e.in_ts
        ));
    }
    out
}

fn oracle_report(model: &Model) -> Result<(String, usize), Failure> {
    let graph = model.graph();
    let mut out = String::new();
    let mut disagreements = 0;
    for v in graph.component_ids() {
        let space = model.space(v);
        for ctx in 0..space.len() {
            let fast = mtv(model, v, ctx);
            let context = space.context(ctx);
            let mut slow = Vec::new();
            for state in StateSpace::new(graph, model.limits())?.iter() {
                if context.contains(&state) {
                    let value = mtv_oracle(model, v, &state)?;
                    if !slow.contains(&value) {
                        slow.push(value);
                    }
                }
            }
            let ok = slow == [fast];
            disagreements += usize::from(!ok);
            out.push_str(&format!(
                "mtv {} {context} fast={fast} oracle={slow:?}{}\n",
                graph.name(v),
                if ok { "" } else { " MISMATCH" }
            ));
        }
    }
    for entry in observability_report(model).entries {
        let (e, fast) = (&entry.edge, entry.in_ts);
        let eq5 = ts_observable_oracle(model, e)?;
        let eq9 = ts_observable_oracle_mtv(model, e)?;
        let ok = fast == eq5 && eq5 == eq9;
        disagreements += usize::from(!ok);
        out.push_str(&format!(
            "edge {} fast={fast} transitions={eq5} targets={eq9}{}\n",
            graph.edge_label(e),
            if ok { "" } else { " MISMATCH" }
        ));
    }
    Ok((out, disagreements))
}
