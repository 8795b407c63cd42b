//! Environment model: which codewords are applied, in which phases, and
//! in which arrival groups.

use std::fmt;

use serde::Serialize;

use crate::netlist::{Netlist, PortNets};

use super::AnalysisError;

/// Codewords are enumerated exhaustively only up to this many input ports.
pub const MAX_ENUMERATED_INPUTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Valid,
    Rtz,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Valid => "valid",
            Phase::Rtz => "rtz",
        })
    }
}

/// One handshake phase. In a valid phase, bit `i` of `codeword` (first
/// input port is the most significant) selects rail 1 of port `i`, or sets
/// a wire input high. An RTZ phase lowers every high input net.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasePlan {
    pub phase: Phase,
    pub codeword: u64,
    /// Arrival groups of input port names. Group `k + 1` opens once group
    /// `k` is fully delivered and no gate is excited. Ports not listed form
    /// a final group. `None` delivers everything in any order.
    pub schedule: Option<Vec<Vec<String>>>,
}

impl PhasePlan {
    pub fn valid(codeword: u64) -> Self {
        PhasePlan {
            phase: Phase::Valid,
            codeword,
            schedule: None,
        }
    }

    pub fn rtz() -> Self {
        PhasePlan {
            phase: Phase::Rtz,
            codeword: 0,
            schedule: None,
        }
    }

    pub fn with_schedule<I, G, S>(mut self, groups: I) -> Self
    where
        I: IntoIterator<Item = G>,
        G: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.schedule = Some(groups.into_iter().map(|g| g.into_iter().map(Into::into).collect()).collect());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub label: String,
    pub phases: Vec<PhasePlan>,
}

impl Scenario {
    /// A valid phase for `codeword` followed by RTZ.
    pub fn handshake(codeword: u64, input_count: usize) -> Self {
        Scenario {
            label: codeword_label(codeword, input_count),
            phases: vec![PhasePlan::valid(codeword), PhasePlan::rtz()],
        }
    }
}

/// Scenarios are explored independently, each from the spacer state.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnvSpec {
    pub scenarios: Vec<Scenario>,
}

impl EnvSpec {
    /// One handshake per codeword over the input ports of `n`.
    pub fn all_codewords(n: &Netlist) -> Result<Self, AnalysisError> {
        let k = n.inputs().len();
        if k > MAX_ENUMERATED_INPUTS {
            return Err(AnalysisError::TooManyInputs { got: k, max: MAX_ENUMERATED_INPUTS });
        }
        Ok(Self::codewords(n, 0..1u64 << k))
    }

    pub fn codewords<I: IntoIterator<Item = u64>>(n: &Netlist, codewords: I) -> Self {
        let k = n.inputs().len();
        EnvSpec {
            scenarios: codewords.into_iter().map(|c| Scenario::handshake(c, k)).collect(),
        }
    }

    pub fn single(scenario: Scenario) -> Self {
        EnvSpec { scenarios: vec![scenario] }
    }
}

/// `0110`-style label, first input first.
pub fn codeword_label(codeword: u64, input_count: usize) -> String {
    if input_count == 0 {
        return "codeword -".into();
    }
    let bits: String = (0..input_count)
        .map(|i| if codeword >> (input_count - 1 - i) & 1 == 1 { '1' } else { '0' })
        .collect();
    format!("codeword {bits}")
}

/// Parses a comma-separated list of bit strings, first input first.
pub fn parse_codewords(text: &str, input_count: usize) -> Result<Vec<u64>, AnalysisError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            if s.len() != input_count || !s.chars().all(|c| c == '0' || c == '1') {
                return Err(AnalysisError::BadCodeword {
                    text: s.to_string(),
                    inputs: input_count,
                });
            }
            Ok(s.chars().fold(0u64, |acc, c| acc << 1 | u64::from(c == '1')))
        })
        .collect()
}

/// Per-phase net targets and schedule groups as input-net index lists.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPhase {
    pub phase: Phase,
    /// Target value of every input net, indexed like `Compiled::input_nets`.
    pub targets: Vec<bool>,
    /// Schedule groups over input-net positions; empty means one group.
    pub groups: Vec<Vec<usize>>,
}

pub(crate) fn compile_phase(n: &Netlist, plan: &PhasePlan) -> Result<CompiledPhase, AnalysisError> {
    let k = n.inputs().len();
    if plan.phase == Phase::Valid && k < 64 && plan.codeword >> k != 0 {
        return Err(AnalysisError::BadCodeword {
            text: plan.codeword.to_string(),
            inputs: k,
        });
    }
    let mut targets = Vec::new();
    let mut port_nets: Vec<Vec<usize>> = Vec::with_capacity(k);
    for (i, p) in n.inputs().iter().enumerate() {
        let bit = plan.codeword >> (k - 1 - i) & 1 == 1;
        let valid = plan.phase == Phase::Valid;
        let mut idx = Vec::new();
        match p.nets {
            PortNets::DualRail { .. } => {
                idx.push(targets.len());
                targets.push(valid && !bit);
                idx.push(targets.len());
                targets.push(valid && bit);
            }
            PortNets::Wire(_) => {
                idx.push(targets.len());
                targets.push(valid && bit);
            }
        }
        port_nets.push(idx);
    }
    let mut groups = Vec::new();
    if let Some(schedule) = &plan.schedule {
        let mut listed = vec![false; k];
        for group in schedule {
            let mut g = Vec::new();
            for name in group {
                let pos = n
                    .inputs()
                    .iter()
                    .position(|p| &p.name == name)
                    .ok_or_else(|| AnalysisError::UnknownPort(name.clone()))?;
                listed[pos] = true;
                g.extend_from_slice(&port_nets[pos]);
            }
            groups.push(g);
        }
        let rest: Vec<usize> = (0..k).filter(|&i| !listed[i]).flat_map(|i| port_nets[i].clone()).collect();
        if !rest.is_empty() {
            groups.push(rest);
        }
    }
    Ok(CompiledPhase {
        phase: plan.phase,
        targets,
        groups,
    })
}
