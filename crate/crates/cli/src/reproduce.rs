//! Canned end-to-end examples. Each case prints a walkthrough and succeeds
//! only if the expected finding is produced.

use adw_core::analysis::{
    self, AnalysisReport, Checks, CircuitState, EnvSpec, ExploreOptions, MccKind, OrphanKind, Phase, Scenario,
};
use adw_core::boolean::{equivalent, minimize_cover, parse_expression, Polarity};
use adw_core::fixtures;
use adw_core::netlist::Netlist;
use adw_core::synthesis::{synthesize_dsop, CdVariant};
use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

use crate::{dsop_check, print_json, Format, EXIT_CLEAN, EXIT_FINDINGS};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Case {
    /// DRCL Z = ab + cd, b(0) and d(0) late: wire orphans.
    #[value(name = "fig5-wire")]
    Fig5Wire,
    /// DRCL Z = ab + cd, c(1) and d(1) late: gate orphan on Y(1).
    #[value(name = "fig5-gate")]
    Fig5Gate,
    /// Factored NAND-NAND F with OR internal detectors: RTZ deadlock.
    #[value(name = "fig6-or")]
    Fig6Or,
    /// Same with NOR internal detectors.
    #[value(name = "fig6-nor")]
    Fig6Nor,
    /// NAND5 split at fan-in 4, t falls first: gate orphan on net2.
    #[value(name = "fig7")]
    Fig7,
    /// The corrected disjoint true rails of F and a clean DSOP circuit.
    #[value(name = "dsop-f")]
    DsopF,
    /// The factored kernel is not disjoint and its join violates the cover.
    #[value(name = "dsop-kernel")]
    DsopKernel,
}

#[derive(Serialize)]
struct Outcome {
    case: String,
    expected: String,
    reproduced: bool,
    notes: Vec<String>,
    report: Option<AnalysisReport>,
}

impl Outcome {
    fn new(case: Case, expected: &str) -> Self {
        Outcome {
            case: case.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
            expected: expected.to_string(),
            reproduced: false,
            notes: Vec::new(),
            report: None,
        }
    }
}

fn explore_report(n: &Netlist, env: &EnvSpec, checks: Checks, method: &str) -> Result<AnalysisReport> {
    let r = analysis::explore_with(n, env, &ExploreOptions { checks, ..ExploreOptions::default() })?;
    Ok(analysis::report(&r, checks, Some(method)))
}

fn orphan_case(case: Case, scenario: Scenario, want: &[(OrphanKind, &str)], expected: &str) -> Result<Outcome> {
    let n = fixtures::drcl_ab_cd();
    let mut o = Outcome::new(case, expected);
    o.notes.push(format!("scenario: {}", scenario.label));
    let rep = explore_report(&n, &EnvSpec::single(scenario), Checks::parse("orphans").map_err(anyhow::Error::msg)?, "drcl")?;
    let got: Vec<(OrphanKind, &str)> = rep.orphans.iter().map(|x| (x.kind, x.net.as_str())).collect();
    o.reproduced = got == want;
    o.report = Some(rep);
    Ok(o)
}

fn bits(values: &[u8]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn method1_deadlock(case: Case, variant: CdVariant) -> Result<Outcome> {
    let n = fixtures::method1_f(variant);
    let want: [u8; 6] = match variant {
        CdVariant::Or => [0, 0, 0, 0, 0, 1],
        CdVariant::Nor => [0, 0, 0, 0, 1, 0],
    };
    let mut o = Outcome::new(case, &format!("RTZ deadlock with C inputs {{{}}} and D held at 1", bits(&want)));
    let idle = CircuitState::spacer(&n)?;
    let internal: Vec<String> = n
        .net_ids()
        .filter(|&x| n.net_name(x).starts_with("int"))
        .map(|x| format!("{} = {}", n.net_name(x), u8::from(idle.values[x.index()])))
        .collect();
    o.notes.push(format!("spacer idle state: {}", internal.join(", ")));
    if let Some(d) = n.cd_output().and_then(|d| n.driver(d)) {
        let ins: Vec<String> = d
            .inputs
            .iter()
            .map(|&x| format!("{} = {}", n.net_name(x), u8::from(idle.values[x.index()])))
            .collect();
        o.notes.push(format!("completion C-element {} inputs at idle: {}", d.id, ins.join(", ")));
    }
    let env = EnvSpec::codewords(&n, [0b0101]);
    let rep = explore_report(&n, &env, Checks::parse("deadlock").map_err(anyhow::Error::msg)?, "method1")?;
    o.reproduced = rep.deadlocks.iter().any(|d| {
        d.phase == Phase::Rtz
            && d.cd_inputs.iter().map(|v| v.value).eq(want)
            && d.cd_output.as_ref().is_some_and(|v| v.value == 1)
    });
    o.report = Some(rep);
    Ok(o)
}

fn nand5_orphan() -> Result<Outcome> {
    let n = fixtures::nand5_decomposed();
    let mut o = Outcome::new(Case::Fig7, "exactly one gate orphan, on net2");
    let gates: Vec<String> = n.gates().iter().map(|g| format!("{} {}", g.id, g.kind)).collect();
    o.notes.push(format!("decomposition: {}", gates.join(", ")));
    let scenario = fixtures::nand5_t_first_scenario();
    let rep = explore_report(&n, &EnvSpec::single(scenario), Checks::parse("orphans").map_err(anyhow::Error::msg)?, "naive")?;
    let gate: Vec<&str> = rep
        .orphans
        .iter()
        .filter(|x| x.kind == OrphanKind::Gate)
        .map(|x| x.net.as_str())
        .collect();
    o.reproduced = gate == ["net2"];
    o.report = Some(rep);
    Ok(o)
}

fn dsop_f() -> Result<Outcome> {
    let mut o = Outcome::new(Case::DsopF, "both corrected true rails are disjoint and equal F; dsop(F) is live with no overlapping join");
    let on = minimize_cover(&fixtures::function_f(), Polarity::On);
    let mut ok = true;
    for text in fixtures::F_TRUE_DSOPS {
        let e = parse_expression(text).context("canned expression")?;
        let disjoint = dsop_check(&e).dsop;
        let same = equivalent(&e, &on)?;
        ok &= disjoint && same;
        o.notes.push(format!(
            "{}: {}, {} F = {}",
            e.to_parenthesized_rails(),
            if disjoint { "DSOP" } else { "NOT-DSOP" },
            if same { "equivalent to" } else { "differs from" },
            on
        ));
    }
    let n = synthesize_dsop(&fixtures::function_f(), true, "F")?;
    let rep = explore_report(&n, &EnvSpec::all_codewords(&n)?, Checks::parse("deadlock,mcc").map_err(anyhow::Error::msg)?, "dsop")?;
    ok &= rep.deadlocks.is_empty() && rep.mcc.iter().all(|m| m.kind != MccKind::NonDisjoint);
    o.reproduced = ok;
    o.report = Some(rep);
    Ok(o)
}

fn dsop_kernel() -> Result<Outcome> {
    let mut o = Outcome::new(Case::DsopKernel, "kernel [a(0) + b(0)] overlaps; the method1 kernel join has both inputs asserted for a = b = 0");
    let e = parse_expression(fixtures::F_TRUE_FACTORED).context("canned expression")?;
    let check = dsop_check(&e);
    o.notes.push(match &check.witness {
        Some([a, b]) => format!("{}: NOT-DSOP, witness ({a}, {b})", e.to_parenthesized_rails()),
        None => format!("{}: DSOP", e.to_parenthesized_rails()),
    });
    for fixed in ["[a(0) + a(1)b(0)]c(1) + c(0)d(1)", "[a(0)b(1) + b(0)]c(1) + c(0)d(1)"] {
        let f = parse_expression(fixed).context("canned expression")?;
        o.notes.push(format!("{}: {}", f.to_parenthesized_rails(), if dsop_check(&f).dsop { "DSOP" } else { "NOT-DSOP" }));
    }
    let n = fixtures::method1_f(CdVariant::Or);
    let kernel = n
        .find_net("kernel1")
        .and_then(|x| n.driver(x))
        .map(|g| g.id.clone())
        .context("method1 netlist has no kernel join")?;
    o.notes.push(format!("kernel join: gate {kernel} driving kernel1"));
    let rep = explore_report(&n, &EnvSpec::codewords(&n, [0b0000]), Checks::parse("mcc").map_err(anyhow::Error::msg)?, "method1")?;
    o.reproduced = !check.dsop
        && rep
            .mcc
            .iter()
            .any(|m| m.kind == MccKind::NonDisjoint && m.gate.as_deref() == Some(kernel.as_str()));
    o.report = Some(rep);
    Ok(o)
}

pub fn run(case: Case, format: Format) -> Result<u8> {
    let o = match case {
        Case::Fig5Wire => orphan_case(
            case,
            fixtures::drcl_late_zero_scenario(),
            &[(OrphanKind::Wire, "b.0"), (OrphanKind::Wire, "d.0")],
            "wire orphans on b(0) and d(0)",
        )?,
        Case::Fig5Gate => orphan_case(case, fixtures::drcl_late_one_scenario(), &[(OrphanKind::Gate, "Y.1")], "gate orphan on Y(1)")?,
        Case::Fig6Or => method1_deadlock(case, CdVariant::Or)?,
        Case::Fig6Nor => method1_deadlock(case, CdVariant::Nor)?,
        Case::Fig7 => nand5_orphan()?,
        Case::DsopF => dsop_f()?,
        Case::DsopKernel => dsop_kernel()?,
    };
    match format {
        Format::Json => print_json(&o)?,
        Format::Text => {
            println!("case {}: expecting {}", o.case, o.expected);
            for note in &o.notes {
                println!("  {note}");
            }
            if let Some(rep) = &o.report {
                println!();
                print!("{}", rep.to_text());
            }
            println!();
            println!("{}: {}", o.case, if o.reproduced { "REPRODUCED" } else { "NOT REPRODUCED" });
        }
    }
    Ok(if o.reproduced { EXIT_CLEAN } else { EXIT_FINDINGS })
}

