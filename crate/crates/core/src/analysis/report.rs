//! Findings, traces and the serialized report.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::netlist::rail_notation;

use super::env::Phase;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEvent {
    pub seq: usize,
    pub net: String,
    pub value: u8,
    /// `env` or the id of the firing gate.
    pub source: String,
    pub phase: Phase,
}

/// Events from the spacer steady state of the named scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub scenario: String,
    pub events: Vec<TraceEvent>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct NetValue {
    pub net: String,
    pub value: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deadlock {
    pub scenario: String,
    pub phase: Phase,
    pub phase_index: usize,
    /// Inputs of the gate driving the completion output, in gate order.
    pub cd_inputs: Vec<NetValue>,
    pub cd_output: Option<NetValue>,
    /// Every net, in declaration order.
    pub snapshot: Vec<NetValue>,
    pub trace: Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrphanKind {
    Wire,
    Gate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orphan {
    pub kind: OrphanKind,
    pub net: String,
    pub scenario: String,
    pub phase: Phase,
    pub phase_index: usize,
    /// Ends in the state where the phase completed.
    pub trace: Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MccKind {
    /// Two or more alternatives of a join asserted at once.
    NonDisjoint,
    /// A net switched more than once in one phase.
    NonMonotone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MccFinding {
    pub kind: MccKind,
    /// The join gate, or the driver of the switching net.
    pub gate: Option<String>,
    pub net: String,
    /// Asserted join inputs; empty for `NonMonotone`.
    pub asserted_inputs: Vec<String>,
    pub scenario: String,
    pub phase: Phase,
    pub phase_index: usize,
    pub trace: Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndicationClass {
    Strong,
    Weak,
    EarlyOutput,
    NotSelfTimed,
}

impl fmt::Display for IndicationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndicationClass::Strong => "strong",
            IndicationClass::Weak => "weak",
            IndicationClass::EarlyOutput => "early_output",
            IndicationClass::NotSelfTimed => "not_self_timed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    States,
    Depth,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub scenarios: usize,
    pub states: usize,
    pub edges: usize,
    pub max_depth: usize,
    /// Complete interleavings (root-to-terminal paths), saturating.
    pub interleavings: u64,
    pub limit_exceeded: Option<LimitKind>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checks {
    pub deadlock: bool,
    pub orphans: bool,
    pub mcc: bool,
    pub classify: bool,
}

impl Checks {
    pub const ALL: Checks = Checks {
        deadlock: true,
        orphans: true,
        mcc: true,
        classify: true,
    };

    pub const NONE: Checks = Checks {
        deadlock: false,
        orphans: false,
        mcc: false,
        classify: false,
    };

    /// Parses `deadlock,orphans,mcc,classify` (any subset, or `all`).
    pub fn parse(text: &str) -> Result<Checks, String> {
        let mut c = Checks::NONE;
        for word in text.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            match word {
                "all" => c = Checks::ALL,
                "deadlock" => c.deadlock = true,
                "orphans" => c.orphans = true,
                "mcc" => c.mcc = true,
                "classify" => c.classify = true,
                other => return Err(format!("unknown check `{other}` (expected deadlock, orphans, mcc, classify)")),
            }
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub circuit: String,
    pub method: Option<String>,
    pub deadlocks: Vec<Deadlock>,
    pub orphans: Vec<Orphan>,
    pub mcc: Vec<MccFinding>,
    pub classification: Option<IndicationClass>,
    pub stats: Stats,
}

impl AnalysisReport {
    pub fn has_findings(&self) -> bool {
        !self.deadlocks.is_empty() || !self.orphans.is_empty() || !self.mcc.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report types serialize")
    }

    /// Narrative in rail notation (`a(0)`).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "circuit {}", self.circuit);
        if let Some(m) = &self.method {
            let _ = write!(out, " ({m})");
        }
        out.push('\n');
        let s = &self.stats;
        let _ = writeln!(
            out,
            "explored {} states, {} edges, depth {}, {} interleavings over {} scenario(s)",
            s.states, s.edges, s.max_depth, s.interleavings, s.scenarios
        );
        if let Some(l) = s.limit_exceeded {
            let _ = writeln!(out, "exploration stopped early: {} limit reached; results are partial", match l {
                LimitKind::States => "state",
                LimitKind::Depth => "depth",
            });
        }
        for d in &self.deadlocks {
            let _ = writeln!(out, "\nDEADLOCK in {} phase of {}", d.phase, d.scenario);
            write_trace(&mut out, &d.trace);
            if !d.cd_inputs.is_empty() {
                let _ = writeln!(out, "  completion inputs: {}", values(&d.cd_inputs));
            }
            if let Some(o) = &d.cd_output {
                let _ = writeln!(out, "  {} held at {}; no transition is enabled", rail_notation(&o.net), o.value);
            }
        }
        for o in &self.orphans {
            let kind = match o.kind {
                OrphanKind::Wire => "wire",
                OrphanKind::Gate => "gate",
            };
            let _ = writeln!(
                out,
                "\n{kind} orphan on {} in {} phase of {}",
                rail_notation(&o.net),
                o.phase,
                o.scenario
            );
            write_trace(&mut out, &o.trace);
            let _ = writeln!(out, "  the transition on {} is not acknowledged before the phase completes", rail_notation(&o.net));
        }
        for m in &self.mcc {
            match m.kind {
                MccKind::NonDisjoint => {
                    let ins: Vec<String> = m.asserted_inputs.iter().map(|s| rail_notation(s)).collect();
                    let _ = writeln!(
                        out,
                        "\nMCC (a) at {} -> {} in {} phase of {}: inputs {} asserted together",
                        m.gate.as_deref().unwrap_or("?"),
                        rail_notation(&m.net),
                        m.phase,
                        m.scenario,
                        ins.join(", ")
                    );
                }
                MccKind::NonMonotone => {
                    let _ = writeln!(
                        out,
                        "\nMCC (b) on {} in {} phase of {}: switched more than once",
                        rail_notation(&m.net),
                        m.phase,
                        m.scenario
                    );
                }
            }
            write_trace(&mut out, &m.trace);
        }
        if let Some(c) = self.classification {
            let _ = writeln!(out, "\nindication: {c}");
        }
        if !self.has_findings() {
            let _ = writeln!(out, "\nno findings");
        }
        out
    }
}

fn values(vs: &[NetValue]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| format!("{} = {}", rail_notation(&v.net), v.value)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn write_trace(out: &mut String, t: &Trace) {
    let mut phase = None;
    for e in &t.events {
        if phase != Some(e.phase) {
            let _ = writeln!(out, "  [{} phase]", e.phase);
            phase = Some(e.phase);
        }
        let edge = if e.value == 1 { "rises" } else { "falls" };
        let by = if e.source == "env" {
            "environment".to_string()
        } else {
            format!("gate {}", e.source)
        };
        let _ = writeln!(out, "  {:>3}. {} {edge} ({by})", e.seq, rail_notation(&e.net));
    }
}
