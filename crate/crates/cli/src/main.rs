//! `adw`: synthesis and unbounded-delay analysis of dual-rail circuits.
//!
//! Exit codes: 0 clean, 1 findings, 2 usage or input error, 3 exploration
//! limit reached with no findings.

mod reproduce;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adw_core::analysis::{self, Checks, EnvSpec, Execution, ExploreOptions, Limits};
use adw_core::boolean::{
    dual_rail_encode, factor_single_kernel, is_dsop, minimize_cover, parse_expression, sop_to_dsop, BooleanFunction,
    DsopVerdict, EncodeMode, Notation, Polarity, SopExpression,
};
use adw_core::netlist::{has_errors, parse_netlist, serialize_netlist, validate};
use adw_core::synthesis::{self, cd_fan_in, drcl_translate, gate_summary, CdVariant, Decompose, Method, SynthesisOptions};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_CLEAN: u8 = 0;
pub const EXIT_FINDINGS: u8 = 1;
pub const EXIT_ERROR: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "adw", version, about = "Dual-rail self-timed logic synthesis and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the ON and OFF covers, the factored ON cover and both rail encodings.
    Minimize {
        /// Function file (`vars`, `names`, `on`, `dc` lines).
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check or convert a disjoint sum-of-products.
    Dsop {
        #[arg(value_enum)]
        mode: DsopMode,
        /// Expression such as `c(a+b) + dc'` or `a(0)c(1) + c(0)d(1)`.
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generate a dual-rail netlist.
    Synth(SynthArgs),
    /// Explore a netlist under every interleaving and report findings.
    Analyze(AnalyzeArgs),
    /// Run one canned example end to end.
    Reproduce {
        #[arg(value_enum)]
        case: reproduce::Case,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DsopMode {
    Check,
    Convert,
}

#[derive(Clone, Copy, ValueEnum)]
enum CdArg {
    Or,
    Nor,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeArg {
    None,
    Naive,
}

#[derive(Args)]
struct SynthArgs {
    /// Function file; omit when `--expr` is given.
    #[arg(required_unless_present = "expr")]
    spec: Option<PathBuf>,
    /// Sum-of-products instead of a function file. With `--method drcl` it
    /// is translated gate by gate as written.
    #[arg(long, conflicts_with = "spec")]
    expr: Option<String>,
    #[arg(long, value_parser = parse_method)]
    method: Method,
    /// Completion detection; defaults to `or` for method1 and dsop, none otherwise.
    #[arg(long, value_enum)]
    cd: Option<CdArg>,
    #[arg(long)]
    max_fanin: Option<usize>,
    #[arg(long, value_enum, default_value_t = DecomposeArg::None)]
    decompose: DecomposeArg,
    /// Name of the dual-rail output port.
    #[arg(long, default_value = synthesis::DEFAULT_OUTPUT)]
    output_name: String,
    /// Netlist destination; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    netlist: PathBuf,
    /// Comma-separated subset of deadlock, orphans, mcc, classify, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_checks)]
    checks: Checks,
    /// Per-scenario state budget.
    #[arg(long, env = "ADW_LIMIT_STATES", default_value_t = Limits::default().max_states)]
    limit_states: usize,
    #[arg(long, default_value_t = Limits::default().max_depth)]
    limit_depth: usize,
    /// `all`, or comma-separated bit strings with the first input port first.
    #[arg(long, default_value = "all")]
    codewords: String,
    /// Explore scenarios one after another instead of on the thread pool.
    #[arg(long)]
    sequential: bool,
    /// Generator name recorded in the report.
    #[arg(long)]
    method: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_checks(s: &str) -> Result<Checks, String> {
    Checks::parse(s)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_function(path: &Path) -> Result<BooleanFunction> {
    BooleanFunction::parse_spec(&read(path)?).with_context(|| format!("{}", path.display()))
}

pub fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct MinimizeOutput {
    vars: Vec<String>,
    on_cover: String,
    on_terms: usize,
    off_cover: String,
    off_terms: usize,
    factored: String,
    factored_literals: usize,
    rails_on_off: [String; 2],
    rails_drcl: [String; 2],
    overlapping_dont_cares: Vec<u64>,
}

fn cmd_minimize(spec: &Path, format: Format) -> Result<u8> {
    let f = read_function(spec)?;
    let on = minimize_cover(&f, Polarity::On);
    let off = minimize_cover(&f, Polarity::Off);
    let factored = factor_single_kernel(&on);
    let on_off = dual_rail_encode(&f, EncodeMode::OnOff);
    let drcl = dual_rail_encode(&f, EncodeMode::Drcl);
    let out = MinimizeOutput {
        vars: f.var_names().to_vec(),
        on_cover: on.to_string(),
        on_terms: on.terms().len(),
        off_cover: off.to_string(),
        off_terms: off.terms().len(),
        factored: factored.to_string(),
        factored_literals: factored.literal_count(),
        rails_on_off: [on_off.true_rail.to_parenthesized_rails(), on_off.false_rail.to_parenthesized_rails()],
        rails_drcl: [drcl.true_rail.to_parenthesized_rails(), drcl.false_rail.to_parenthesized_rails()],
        overlapping_dont_cares: on_off.overlapping_dont_cares,
    };
    match format {
        Format::Json => print_json(&out)?,
        Format::Text => {
            println!("ON  ({} terms): {}", out.on_terms, out.on_cover);
            println!("OFF ({} terms): {}", out.off_terms, out.off_cover);
            println!("factored ({} literals): {}", out.factored_literals, out.factored);
            println!("F(1) = {}", out.rails_on_off[0]);
            println!("F(0) = {}", out.rails_on_off[1]);
            println!("F(0) as De Morgan dual = {}", out.rails_drcl[1]);
            if !out.overlapping_dont_cares.is_empty() {
                println!("don't cares asserting both rails: {:?}", out.overlapping_dont_cares);
            }
        }
    }
    Ok(EXIT_CLEAN)
}

#[derive(Serialize)]
pub struct DsopOutput {
    pub expression: String,
    pub dsop: bool,
    pub witness: Option<[String; 2]>,
}

/// Rail expressions in `a(0)` spelling, others as written.
pub fn show(e: &SopExpression) -> String {
    match e.notation() {
        Notation::Rail => e.to_parenthesized_rails(),
        Notation::Literal => e.to_string(),
    }
}

pub fn dsop_check(e: &SopExpression) -> DsopOutput {
    let witness = match is_dsop(e) {
        DsopVerdict::Disjoint => None,
        DsopVerdict::Overlap { first, second, .. } => {
            Some([first, second].map(|t| show(&SopExpression::from_terms(e.vars().to_vec(), [t]).with_notation(e.notation()))))
        }
    };
    DsopOutput {
        expression: show(e),
        dsop: witness.is_none(),
        witness,
    }
}

fn cmd_dsop(mode: DsopMode, expr: &str, format: Format) -> Result<u8> {
    let e = parse_expression(expr).context("expression")?;
    match mode {
        DsopMode::Check => {
            let out = dsop_check(&e);
            match format {
                Format::Json => print_json(&out)?,
                Format::Text => match &out.witness {
                    None => println!("DSOP: {}", out.expression),
                    Some([a, b]) => println!("NOT-DSOP: {}\n  witness ({a}, {b}): the products overlap", out.expression),
                },
            }
            Ok(if out.dsop { EXIT_CLEAN } else { EXIT_FINDINGS })
        }
        DsopMode::Convert => {
            let d = sop_to_dsop(&e);
            match format {
                Format::Json => print_json(&serde_json::json!({ "expression": show(&e), "dsop": show(&d) }))?,
                Format::Text => println!("{}", show(&d)),
            }
            Ok(EXIT_CLEAN)
        }
    }
}

fn cmd_synth(a: &SynthArgs) -> Result<u8> {
    let opts = SynthesisOptions {
        method: a.method,
        cd_variant: a.cd.map(|c| match c {
            CdArg::Or => Some(CdVariant::Or),
            CdArg::Nor => Some(CdVariant::Nor),
            CdArg::None => None,
        }),
        max_fanin: a.max_fanin,
        decompose: match a.decompose {
            DecomposeArg::None => Decompose::None,
            DecomposeArg::Naive => Decompose::Naive,
        },
        output_name: a.output_name.clone(),
    };
    opts.check()?;
    let n = match (&a.spec, &a.expr) {
        (Some(path), _) => synthesis::synthesize(&read_function(path)?, &opts)?,
        (None, Some(text)) => {
            let e = parse_expression(text).context("expression")?;
            if a.method == Method::Drcl {
                let mut n = drcl_translate(&e, &a.output_name)?;
                if let Some(v) = opts.effective_cd() {
                    n = synthesis::build_completion_detector(&n, &[], v)?;
                }
                if let (Decompose::Naive, Some(k)) = (opts.decompose, opts.max_fanin) {
                    synthesis::decompose_netlist(&mut n, k)?;
                }
                n
            } else {
                let vars = e.vars().to_vec();
                let on = (0..1u64 << vars.len()).filter(|&m| e.eval_minterm(m));
                let f = BooleanFunction::with_names(vars, on, [])?;
                synthesis::synthesize(&f, &opts)?
            }
        }
        (None, None) => bail!("give a function file or --expr"),
    };
    let text = serialize_netlist(&n);
    let mut summary = gate_summary(&n);
    if let Some(k) = cd_fan_in(&n) {
        summary.push_str(&format!("; completion C-element fan-in {k}"));
    }
    match &a.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(EXIT_CLEAN)
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<u8> {
    let n = parse_netlist(&read(&a.netlist)?).with_context(|| format!("{}", a.netlist.display()))?;
    let diags = validate(&n);
    if has_errors(&diags) {
        let lines: Vec<String> = diags.iter().map(ToString::to_string).collect();
        bail!("{}: invalid netlist\n  {}", a.netlist.display(), lines.join("\n  "));
    }
    let env = match a.codewords.trim() {
        "all" => EnvSpec::all_codewords(&n)?,
        list => EnvSpec::codewords(&n, analysis::parse_codewords(list, n.inputs().len())?),
    };
    let opts = ExploreOptions {
        limits: Limits {
            max_states: a.limit_states,
            max_depth: a.limit_depth,
        },
        execution: if a.sequential { Execution::Sequential } else { Execution::Parallel },
        checks: a.checks,
    };
    let r = analysis::explore_with(&n, &env, &opts)?;
    let rep = analysis::report(&r, a.checks, a.method.as_deref());
    match a.format {
        Format::Json => println!("{}", rep.to_json()),
        Format::Text => print!("{}", rep.to_text()),
    }
    Ok(if rep.has_findings() {
        EXIT_FINDINGS
    } else if rep.stats.limit_exceeded.is_some() {
        EXIT_LIMIT
    } else {
        EXIT_CLEAN
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Minimize { spec, format } => cmd_minimize(&spec, format),
        Command::Dsop { mode, expr, format } => cmd_dsop(mode, &expr, format),
        Command::Synth(a) => cmd_synth(&a),
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Reproduce { case, format } => reproduce::run(case, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_CLEAN });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
