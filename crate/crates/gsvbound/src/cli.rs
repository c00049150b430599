//! Argument parsing and dispatch. Exit codes: 0 all checks pass, 1 a
//! mathematical check failed, 2 input error.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use gsvbound_core::blowup::{Chart, DEFAULT_MAX_STEPS};
use serde_json::Value;

use crate::corpus;
use crate::input::CliError;
use crate::render;
use crate::report::{self, Outcome};

#[derive(Debug, Parser)]
#[command(name = "gsvbound", version, about = "Local invariants of plane foliation germs along a separatrix")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChartArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

impl From<ChartArg> for Chart {
    fn from(c: ChartArg) -> Chart {
        match c {
            ChartArg::One => Chart::Chart1,
            ChartArg::Two => Chart::Chart2,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct PairArgs {
    /// 1-form `P dx + Q dy`
    #[arg(long, allow_hyphen_values = true)]
    pub form: String,
    /// Branch equation `f(x, y)`
    #[arg(long, allow_hyphen_values = true)]
    pub curve: String,
    /// Accept a curve the irreducibility check could not certify
    #[arg(long)]
    pub assume_irreducible: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariant report for a foliation and a branch
    Inv(PairArgs),
    /// Check GSV <= 4 tau - 3 mu with PASS/FAIL
    Theorem(PairArgs),
    /// Check the divisor inequality for a divisor of separatrices
    Corollary {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        /// Divisor such as `[x] + [y^2 - x^3]`
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long)]
        assume_irreducible: bool,
        #[arg(long)]
        json: bool,
    },
    /// One blow-up of the foliation, or of the pair when a curve is given
    Blowup {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        curve: Option<String>,
        #[arg(long, value_enum, conflicts_with = "curve")]
        chart: Option<ChartArg>,
        #[arg(long)]
        json: bool,
    },
    /// Blow up along the branch until its strict transform is smooth
    Resolve {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: u32,
        #[arg(long)]
        json: bool,
        /// Emit the trace as a Graphviz digraph
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Irreducibility certificate and Newton polygon of a curve
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long)]
        json: bool,
    },
    /// Check a truncated parametrization `t -> (x(t), y(t))` of a curve
    Param {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Truncation order; defaults to 4 * ord(f) * deg(f)
        #[arg(long)]
        order: Option<u32>,
        /// Also compute the multiplicity of this form along the parametrization
        #[arg(long, allow_hyphen_values = true)]
        form: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Replay the golden corpus and diff against expected values
    Examples {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
        /// Corpus file; the built-in corpus when omitted
        #[arg(long)]
        corpus: Option<std::path::PathBuf>,
    },
}

fn emit(out: &mut dyn Write, value: &Value, json: bool, headline: Option<String>) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(value).expect("json"))
    } else {
        if let Some(h) = headline {
            writeln!(out, "{h}")?;
        }
        write!(out, "{}", render::text(value))
    }
}

fn code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn headline(o: &Outcome, what: &str) -> Option<String> {
    o.value.get("verdict").and_then(Value::as_str).map(|v| format!("{v}: {what}"))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match cmd {
        Command::Inv(a) => {
            let o = report::invariants(&a.form, &a.curve, a.assume_irreducible)?;
            emit(out, &o.value, a.json, None).map_err(io)?;
            Ok(code(o.ok))
        }
        Command::Theorem(a) => {
            let o = report::theorem(&a.form, &a.curve, a.assume_irreducible)?;
            let slack = o.value["slack"].clone();
            emit(out, &o.value, a.json, headline(&o, &format!("GSV <= 4 tau - 3 mu (slack {slack})")))
                .map_err(io)?;
            Ok(code(o.ok))
        }
        Command::Corollary { form, divisor, assume_irreducible, json } => {
            let o = report::corollary(&form, &divisor, assume_irreducible)?;
            emit(out, &o.value, json, headline(&o, "GSV(D) < 4 T - 3 mu(D)")).map_err(io)?;
            Ok(code(o.ok))
        }
        Command::Blowup { form, curve, chart, json } => {
            let o = report::blowup(&form, curve.as_deref(), chart.map(Chart::from))?;
            emit(out, &o.value, json, None).map_err(io)?;
            Ok(0)
        }
        Command::Resolve { form, curve, max_steps, json, dot } => {
            let (trace, o) = report::resolution(&form, &curve, max_steps)?;
            if dot {
                write!(out, "{}", render::trace_dot(&trace)).map_err(io)?;
            } else {
                emit(out, &o.value, json, headline(&o, "resolution laws")).map_err(io)?;
            }
            Ok(code(o.ok))
        }
        Command::Certify { curve, json } => {
            let o = report::certify(&curve)?;
            emit(out, &o.value, json, None).map_err(io)?;
            Ok(0)
        }
        Command::Param { curve, x, y, order, form, json } => {
            let o = report::parametrization(&curve, &x, &y, order, form.as_deref())?;
            emit(out, &o.value, json, None).map_err(io)?;
            Ok(code(o.ok))
        }
        Command::Examples { filter, json, corpus: path } => {
            let text = match path {
                Some(p) => std::fs::read_to_string(&p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
                None => corpus::DEFAULT_CORPUS.to_string(),
            };
            let c = corpus::parse(&text)?;
            let summary = corpus::replay(&c, filter.as_deref());
            if json {
                let v = serde_json::to_value(&summary).expect("json");
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
            } else {
                for r in &summary.entries {
                    let tag = match r.status {
                        "ok" => "ok   ",
                        "diff" => "DIFF ",
                        _ => "ERROR",
                    };
                    writeln!(out, "{tag} {} ({} checked)", r.name, r.checked).map_err(io)?;
                    for d in &r.diffs {
                        let actual = d.actual.as_ref().map_or("<missing>".to_string(), Value::to_string);
                        writeln!(out, "      {}: expected {}, got {actual}", d.path, d.expected).map_err(io)?;
                    }
                    if let Some(e) = &r.error {
                        writeln!(out, "      {e}").map_err(io)?;
                    }
                }
                writeln!(out, "{} of {} entries passed, {} diffs", summary.passed, summary.total, summary.diffs)
                    .map_err(io)?;
            }
            Ok(code(summary.passed == summary.total))
        }
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match dispatch(args.command, out) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error [{}]: {e}", e.class());
            e.exit_code()
        }
    }
}
