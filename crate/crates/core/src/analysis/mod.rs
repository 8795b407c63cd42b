//! Unbounded-delay exploration of 4-phase return-to-zero handshakes.
//!
//! Any excited gate may fire at any time and any enabled input event may be
//! delivered at any time, so every interleaving is reachable. A phase
//! completes when all its input events are delivered and either the
//! completion output `D` has its phase value with outputs in phase state,
//! or, without `D`, the circuit is quiescent with outputs in phase state.
//! The last phase of a scenario additionally requires quiescence.
//!
//! A transition on a net is acknowledged once every gate reading the net
//! fires after it within the phase. On an isochronic net one firing reader
//! acknowledges all branches. Unacknowledged transitions at phase
//! completion are orphans: wire orphans on primary inputs, gate orphans on
//! internal nets. Primary outputs and `D` are acknowledged by the
//! environment and never reported.

mod compiled;
mod env;
mod explore;
mod report;

use std::collections::BTreeSet;

use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::netlist::{Diagnostic, NetId, Netlist};

use compiled::Compiled;
use explore::{Explorer, ScenarioPlan, ScenarioRun, Tracking};

pub use env::{codeword_label, parse_codewords, EnvSpec, Phase, PhasePlan, Scenario, MAX_ENUMERATED_INPUTS};
pub use explore::ObservedOutputs;
pub use report::{
    AnalysisReport, Checks, Deadlock, IndicationClass, LimitKind, MccFinding, MccKind, NetValue, Orphan, OrphanKind,
    Stats, Trace, TraceEvent,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("netlist is not valid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("schedule names unknown input port `{0}`")]
    UnknownPort(String),
    #[error("`{text}` is not a codeword for {inputs} input(s)")]
    BadCodeword { text: String, inputs: usize },
    #[error("{got} input ports are too many to enumerate every codeword (max {max}); pass explicit codewords")]
    TooManyInputs { got: usize, max: usize },
    #[error("exploration stopped at the {0:?} limit before the verdict was settled")]
    LimitExceeded(LimitKind),
    #[error("replay step {seq}: {message}")]
    Replay { seq: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Per scenario.
    pub max_states: usize,
    /// Steps from the initial state, phase advances included.
    pub max_depth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 1_000_000,
            max_depth: 10_000,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Scenarios on the rayon pool; sequential without the `parallel` feature.
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioSummary {
    pub label: String,
    pub states: usize,
    pub edges: usize,
    pub max_depth: usize,
    pub interleavings: u64,
    pub limit: Option<LimitKind>,
    pub observed: Vec<ObservedOutputs>,
}

/// Merged results of all scenarios, findings in scenario order and then
/// by phase, kind and net.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationResult {
    pub circuit: String,
    pub scenarios: Vec<ScenarioSummary>,
    deadlocks: Vec<Deadlock>,
    orphans: Vec<Orphan>,
    mcc: Vec<MccFinding>,
    strong_violation: bool,
    weak_violation: bool,
}

impl ExplorationResult {
    pub fn stats(&self) -> Stats {
        let mut s = Stats {
            scenarios: self.scenarios.len(),
            ..Stats::default()
        };
        for sc in &self.scenarios {
            s.states += sc.states;
            s.edges += sc.edges;
            s.max_depth = s.max_depth.max(sc.max_depth);
            s.interleavings = s.interleavings.saturating_add(sc.interleavings);
            if s.limit_exceeded.is_none() {
                s.limit_exceeded = sc.limit;
            }
        }
        s
    }

    pub fn limit_exceeded(&self) -> Option<LimitKind> {
        self.scenarios.iter().find_map(|s| s.limit)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreOptions {
    pub limits: Limits,
    pub execution: Execution,
    /// Findings of unselected checks are left empty. Orphans need per-fanout
    /// acknowledgment bits and mcc/classify need per-phase toggle bits in
    /// the state, so deselecting them shrinks the state space.
    pub checks: Checks,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            limits: Limits::default(),
            execution: Execution::Parallel,
            checks: Checks::ALL,
        }
    }
}

/// Explores every scenario of `env` on the rayon pool with every check.
pub fn explore(n: &Netlist, env: &EnvSpec, limits: Limits) -> Result<ExplorationResult, AnalysisError> {
    explore_with(n, env, &ExploreOptions { limits, ..ExploreOptions::default() })
}

pub fn explore_with(n: &Netlist, env: &EnvSpec, opts: &ExploreOptions) -> Result<ExplorationResult, AnalysisError> {
    let c = Compiled::new(n)?;
    let plans = env
        .scenarios
        .iter()
        .map(|sc| {
            let phases = sc
                .phases
                .iter()
                .map(|p| env::compile_phase(n, p))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ScenarioPlan::new(sc.label.clone(), phases))
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    let tracking = Tracking {
        acks: opts.checks.orphans,
        toggles: opts.checks.mcc || opts.checks.classify,
    };
    let run = |p: &ScenarioPlan| Explorer::new(&c, p, opts.limits, tracking).run();
    let runs: Vec<ScenarioRun> = match opts.execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => plans.par_iter().map(run).collect(),
        _ => plans.iter().map(run).collect(),
    };
    let mut result = ExplorationResult {
        circuit: c.name.clone(),
        scenarios: Vec::with_capacity(runs.len()),
        deadlocks: Vec::new(),
        orphans: Vec::new(),
        mcc: Vec::new(),
        strong_violation: false,
        weak_violation: false,
    };
    for r in runs {
        result.scenarios.push(ScenarioSummary {
            label: r.label,
            states: r.states,
            edges: r.edges,
            max_depth: r.max_depth,
            interleavings: r.interleavings,
            limit: r.limit,
            observed: r.observed,
        });
        result.deadlocks.extend(r.deadlocks);
        result.orphans.extend(r.orphans);
        result.mcc.extend(r.mcc);
        result.strong_violation |= r.strong_violation;
        result.weak_violation |= r.weak_violation;
    }
    Ok(result)
}

/// Quiescent states that fail the phase-completion predicate.
pub fn detect_deadlock(r: &ExplorationResult) -> Vec<Deadlock> {
    r.deadlocks.clone()
}

pub fn detect_orphans(r: &ExplorationResult) -> Vec<Orphan> {
    r.orphans.clone()
}

/// Finding (a): a join with two or more alternatives asserted. Finding
/// (b): a net switching more than once within a phase.
pub fn check_monotonic_cover(r: &ExplorationResult) -> Vec<MccFinding> {
    r.mcc.clone()
}

/// Strong: no output reaches its phase state before every input has.
/// Weak: outputs may, but never all of them. Otherwise early output.
/// Any deadlock makes the circuit not self-timed.
pub fn classify(r: &ExplorationResult) -> IndicationClass {
    if !r.deadlocks.is_empty() {
        return IndicationClass::NotSelfTimed;
    }
    debug_assert!(r.strong_violation || !r.weak_violation, "strong implies weak");
    if !r.strong_violation {
        IndicationClass::Strong
    } else if !r.weak_violation {
        IndicationClass::Weak
    } else {
        IndicationClass::EarlyOutput
    }
}

/// Explores one handshake per codeword and classifies.
pub fn classify_indication(n: &Netlist, limits: Limits) -> Result<IndicationClass, AnalysisError> {
    let r = explore(n, &EnvSpec::all_codewords(n)?, limits)?;
    if let Some(l) = r.limit_exceeded() {
        return Err(AnalysisError::LimitExceeded(l));
    }
    Ok(classify(&r))
}

/// Builds a report with the selected checks.
pub fn report(r: &ExplorationResult, checks: Checks, method: Option<&str>) -> AnalysisReport {
    AnalysisReport {
        circuit: r.circuit.clone(),
        method: method.map(str::to_string),
        deadlocks: if checks.deadlock { detect_deadlock(r) } else { Vec::new() },
        orphans: if checks.orphans { detect_orphans(r) } else { Vec::new() },
        mcc: if checks.mcc { check_monotonic_cover(r) } else { Vec::new() },
        classification: checks.classify.then(|| classify(r)),
        stats: r.stats(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitState {
    pub values: Vec<bool>,
    pub phase: Phase,
    /// Undelivered input events: each net moves to the other value.
    pub pending: BTreeSet<NetId>,
}

impl CircuitState {
    /// Spacer steady state with nothing pending.
    pub fn spacer(n: &Netlist) -> Result<Self, AnalysisError> {
        let c = Compiled::new(n)?;
        Ok(CircuitState {
            values: c.initial,
            phase: Phase::Valid,
            pending: BTreeSet::new(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TransitionSource {
    Env,
    Gate(String),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Transition {
    pub net: NetId,
    pub value: bool,
    pub source: TransitionSource,
}

/// Pending input events followed by excited gates in netlist order. A
/// C-element is excited only when all its inputs differ from its output.
pub fn enabled_transitions(n: &Netlist, s: &CircuitState) -> Result<Vec<Transition>, AnalysisError> {
    let c = Compiled::new(n)?;
    let mut out: Vec<Transition> = s
        .pending
        .iter()
        .map(|&net| Transition {
            net,
            value: !s.values[net.index()],
            source: TransitionSource::Env,
        })
        .collect();
    for (i, g) in c.gates.iter().enumerate() {
        let cur = s.values[g.output as usize];
        let t = g.kind.eval(g.inputs.iter().map(|&x| s.values[x as usize]), cur);
        if t != cur {
            out.push(Transition {
                net: NetId(g.output),
                value: t,
                source: TransitionSource::Gate(c.gate_ids[i].clone()),
            });
        }
    }
    Ok(out)
}

/// Replays a trace from the spacer steady state, checking that every event
/// is a legal transition, and returns the final net values.
pub fn replay(n: &Netlist, trace: &Trace) -> Result<Vec<bool>, AnalysisError> {
    let c = Compiled::new(n)?;
    let mut values = c.initial.clone();
    for e in &trace.events {
        let fail = |message: String| AnalysisError::Replay { seq: e.seq, message };
        let net = n.find_net(&e.net).ok_or_else(|| fail(format!("unknown net `{}`", e.net)))?;
        let value = e.value == 1;
        if values[net.index()] == value {
            return Err(fail(format!("`{}` is already {}", e.net, e.value)));
        }
        if e.source == "env" {
            if c.input_pos[net.index()].is_none() {
                return Err(fail(format!("`{}` is not a primary input", e.net)));
            }
        } else {
            let gi = c
                .gate_ids
                .iter()
                .position(|id| *id == e.source)
                .ok_or_else(|| fail(format!("unknown gate `{}`", e.source)))?;
            let g = &c.gates[gi];
            if g.output as usize != net.index() {
                return Err(fail(format!("gate `{}` does not drive `{}`", e.source, e.net)));
            }
            let t = g.kind.eval(g.inputs.iter().map(|&x| values[x as usize]), values[net.index()]);
            if t != value {
                return Err(fail(format!("gate `{}` is not excited towards {}", e.source, e.value)));
            }
        }
        values[net.index()] = value;
    }
    Ok(values)
}

#[cfg(test)]
mod tests;
