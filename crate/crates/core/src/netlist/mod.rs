//! Gate-level netlist IR.
//!
//! Nets are interned names; a dual-rail port `a` owns the nets `a.0` and
//! `a.1`. State lives only in C-elements, so wiring must be acyclic.

mod text;
mod validate;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use text::{parse_netlist, serialize_netlist};
pub use validate::{has_errors, validate, Diagnostic, Rule, Severity};
pub(crate) use validate::topological_order;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetlistError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown net `{0}`")]
    UnknownNet(String),
    #[error("duplicate gate id `{0}`")]
    DuplicateGate(String),
    #[error("duplicate port `{0}`")]
    DuplicatePort(String),
}

/// Index of a net inside its [`Netlist`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NetId(pub u32);

impl NetId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    And,
    Or,
    Nand,
    Nor,
    Inv,
    Buf,
    /// Muller C-element.
    C,
}

impl GateKind {
    pub const ALL: [GateKind; 7] = [
        GateKind::And,
        GateKind::Or,
        GateKind::Nand,
        GateKind::Nor,
        GateKind::Inv,
        GateKind::Buf,
        GateKind::C,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Nand => "NAND",
            GateKind::Nor => "NOR",
            GateKind::Inv => "INV",
            GateKind::Buf => "BUF",
            GateKind::C => "C",
        }
    }

    pub fn from_name(s: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    pub fn is_unary(self) -> bool {
        matches!(self, GateKind::Inv | GateKind::Buf)
    }

    /// Output for the given inputs; `held` is the current output, used only
    /// by the C-element when its inputs disagree.
    pub fn eval<I: IntoIterator<Item = bool>>(self, inputs: I, held: bool) -> bool {
        let mut it = inputs.into_iter();
        match self {
            GateKind::And => it.all(|b| b),
            GateKind::Or => it.any(|b| b),
            GateKind::Nand => !it.all(|b| b),
            GateKind::Nor => !it.any(|b| b),
            GateKind::Inv => !it.next().unwrap_or(false),
            GateKind::Buf => it.next().unwrap_or(false),
            GateKind::C => {
                let (mut ones, mut zeros) = (false, false);
                for b in it {
                    if b {
                        ones = true;
                    } else {
                        zeros = true;
                    }
                }
                match (ones, zeros) {
                    (true, false) => true,
                    (false, true) => false,
                    _ => held,
                }
            }
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub id: String,
    pub kind: GateKind,
    pub inputs: Vec<NetId>,
    pub output: NetId,
    /// Reset value; only meaningful for C-elements.
    pub init: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PortNets {
    DualRail { rail0: NetId, rail1: NetId },
    Wire(NetId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Port {
    pub name: String,
    pub nets: PortNets,
}

impl Port {
    pub fn net_ids(&self) -> Vec<NetId> {
        match self.nets {
            PortNets::DualRail { rail0, rail1 } => vec![rail0, rail1],
            PortNets::Wire(n) => vec![n],
        }
    }

    pub fn is_dual_rail(&self) -> bool {
        matches!(self.nets, PortNets::DualRail { .. })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Netlist {
    name: String,
    nets: Vec<String>,
    net_index: HashMap<String, NetId>,
    gates: Vec<Gate>,
    gate_index: HashMap<String, usize>,
    inputs: Vec<Port>,
    outputs: Vec<Port>,
    cd_output: Option<NetId>,
    isochronic: BTreeSet<NetId>,
}

/// Name of rail `rail` of dual-rail port `port`.
pub fn rail_net_name(port: &str, rail: bool) -> String {
    format!("{port}.{}", u8::from(rail))
}

/// Renders `a.1` as `a(1)`; other names pass through.
pub fn rail_notation(net: &str) -> String {
    match net.rsplit_once('.') {
        Some((base, r @ ("0" | "1"))) if !base.is_empty() => format!("{base}({r})"),
        _ => net.to_string(),
    }
}

impl Netlist {
    pub fn new(name: impl Into<String>) -> Self {
        Netlist {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Interns a net name.
    pub fn net(&mut self, name: &str) -> NetId {
        if let Some(&id) = self.net_index.get(name) {
            return id;
        }
        let id = NetId(self.nets.len() as u32);
        self.nets.push(name.to_string());
        self.net_index.insert(name.to_string(), id);
        id
    }

    pub fn find_net(&self, name: &str) -> Option<NetId> {
        self.net_index.get(name).copied()
    }

    pub fn net_name(&self, id: NetId) -> &str {
        &self.nets[id.index()]
    }

    pub fn net_count(&self) -> usize {
        self.nets.len()
    }

    pub fn net_ids(&self) -> impl Iterator<Item = NetId> {
        (0..self.nets.len() as u32).map(NetId)
    }

    /// A name not yet used by any net.
    pub fn fresh_net_name(&self, base: &str) -> String {
        if !self.net_index.contains_key(base) {
            return base.to_string();
        }
        (1..).map(|i| format!("{base}_{i}")).find(|n| !self.net_index.contains_key(n)).unwrap()
    }

    pub fn fresh_gate_id(&self, base: &str) -> String {
        if !self.gate_index.contains_key(base) {
            return base.to_string();
        }
        (1..).map(|i| format!("{base}_{i}")).find(|n| !self.gate_index.contains_key(n)).unwrap()
    }

    pub fn add_input_dual_rail(&mut self, name: &str) -> Result<(NetId, NetId), NetlistError> {
        self.check_port_name(name)?;
        let rail0 = self.net(&rail_net_name(name, false));
        let rail1 = self.net(&rail_net_name(name, true));
        self.inputs.push(Port {
            name: name.into(),
            nets: PortNets::DualRail { rail0, rail1 },
        });
        Ok((rail0, rail1))
    }

    pub fn add_input_wire(&mut self, name: &str) -> Result<NetId, NetlistError> {
        self.check_port_name(name)?;
        let id = self.net(name);
        self.inputs.push(Port {
            name: name.into(),
            nets: PortNets::Wire(id),
        });
        Ok(id)
    }

    pub fn add_output_dual_rail(&mut self, name: &str) -> Result<(NetId, NetId), NetlistError> {
        self.check_port_name(name)?;
        let rail0 = self.net(&rail_net_name(name, false));
        let rail1 = self.net(&rail_net_name(name, true));
        self.outputs.push(Port {
            name: name.into(),
            nets: PortNets::DualRail { rail0, rail1 },
        });
        Ok((rail0, rail1))
    }

    pub fn add_output_wire(&mut self, name: &str) -> Result<NetId, NetlistError> {
        self.check_port_name(name)?;
        let id = self.net(name);
        self.outputs.push(Port {
            name: name.into(),
            nets: PortNets::Wire(id),
        });
        Ok(id)
    }

    fn check_port_name(&self, name: &str) -> Result<(), NetlistError> {
        if self.inputs.iter().chain(&self.outputs).any(|p| p.name == name) {
            return Err(NetlistError::DuplicatePort(name.into()));
        }
        Ok(())
    }

    pub fn add_gate(
        &mut self,
        id: &str,
        kind: GateKind,
        inputs: &[NetId],
        output: NetId,
    ) -> Result<usize, NetlistError> {
        self.add_gate_with_init(id, kind, inputs, output, false)
    }

    pub fn add_gate_with_init(
        &mut self,
        id: &str,
        kind: GateKind,
        inputs: &[NetId],
        output: NetId,
        init: bool,
    ) -> Result<usize, NetlistError> {
        if self.gate_index.contains_key(id) {
            return Err(NetlistError::DuplicateGate(id.into()));
        }
        let idx = self.gates.len();
        self.gates.push(Gate {
            id: id.into(),
            kind,
            inputs: inputs.to_vec(),
            output,
            init,
        });
        self.gate_index.insert(id.into(), idx);
        Ok(idx)
    }

    /// Convenience: gate by net names, interning as needed.
    pub fn add_gate_named(&mut self, id: &str, kind: GateKind, inputs: &[&str], output: &str) -> Result<usize, NetlistError> {
        let ins: Vec<NetId> = inputs.iter().map(|n| self.net(n)).collect();
        let out = self.net(output);
        self.add_gate(id, kind, &ins, out)
    }

    /// Removes a gate, keeping the relative order of the rest.
    pub fn remove_gate(&mut self, id: &str) -> Option<Gate> {
        let idx = self.gate_index.remove(id)?;
        let g = self.gates.remove(idx);
        for v in self.gate_index.values_mut() {
            if *v > idx {
                *v -= 1;
            }
        }
        Some(g)
    }

    /// Inserts gates at a position, used when a gate is replaced in place.
    pub fn insert_gates(&mut self, at: usize, gates: Vec<Gate>) -> Result<(), NetlistError> {
        for g in &gates {
            if self.gate_index.contains_key(&g.id) {
                return Err(NetlistError::DuplicateGate(g.id.clone()));
            }
        }
        let n = gates.len();
        self.gates.splice(at..at, gates);
        self.gate_index = self.gates.iter().enumerate().map(|(i, g)| (g.id.clone(), i)).collect();
        debug_assert_eq!(self.gate_index.len(), self.gates.len(), "inserted {n}");
        Ok(())
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: &str) -> Option<&Gate> {
        self.gate_index.get(id).map(|&i| &self.gates[i])
    }

    pub fn gate_position(&self, id: &str) -> Option<usize> {
        self.gate_index.get(id).copied()
    }

    /// Sets the reset value of a C-element. Returns false if no such gate.
    pub fn set_gate_init(&mut self, id: &str, init: bool) -> bool {
        match self.gate_index.get(id) {
            Some(&i) => {
                self.gates[i].init = init;
                true
            }
            None => false,
        }
    }

    pub fn inputs(&self) -> &[Port] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Port] {
        &self.outputs
    }

    pub fn input_nets(&self) -> Vec<NetId> {
        self.inputs.iter().flat_map(Port::net_ids).collect()
    }

    pub fn output_nets(&self) -> Vec<NetId> {
        self.outputs.iter().flat_map(Port::net_ids).collect()
    }

    pub fn cd_output(&self) -> Option<NetId> {
        self.cd_output
    }

    pub fn set_cd_output(&mut self, net: Option<NetId>) {
        self.cd_output = net;
    }

    pub fn isochronic(&self) -> &BTreeSet<NetId> {
        &self.isochronic
    }

    pub fn mark_isochronic(&mut self, net: NetId) {
        self.isochronic.insert(net);
    }

    pub fn clear_isochronic(&mut self) {
        self.isochronic.clear();
    }

    /// Marks every primary-input net as an isochronic fork source.
    pub fn mark_inputs_isochronic(&mut self) {
        for n in self.input_nets() {
            self.isochronic.insert(n);
        }
    }

    /// Gate driving a net, if any (first one if the netlist is invalid).
    pub fn driver(&self, net: NetId) -> Option<&Gate> {
        self.gates.iter().find(|g| g.output == net)
    }

    /// Ids of gates reading the net; two or more means a fork.
    pub fn fanout(&self, net: &str) -> Result<BTreeSet<String>, NetlistError> {
        let id = self.find_net(net).ok_or_else(|| NetlistError::UnknownNet(net.into()))?;
        Ok(self.fanout_of(id).map(|g| g.id.clone()).collect())
    }

    pub fn fanout_of(&self, net: NetId) -> impl Iterator<Item = &Gate> {
        self.gates.iter().filter(move |g| g.inputs.contains(&net))
    }

    pub fn gate_count_by_kind(&self) -> Vec<(GateKind, usize)> {
        GateKind::ALL
            .into_iter()
            .map(|k| (k, self.gates.iter().filter(|g| g.kind == k).count()))
            .filter(|(_, c)| *c > 0)
            .collect()
    }

    /// Name-based view used for structural comparison.
    fn canonical(&self) -> CanonicalNetlist<'_> {
        fn port<'a>(n: &'a Netlist, p: &'a Port) -> (&'a str, bool) {
            match p.nets {
                PortNets::DualRail { .. } => (p.name.as_str(), true),
                PortNets::Wire(id) => (n.net_name(id), false),
            }
        }
        CanonicalNetlist {
            name: &self.name,
            inputs: self.inputs.iter().map(|p| port(self, p)).collect(),
            outputs: self.outputs.iter().map(|p| port(self, p)).collect(),
            gates: self
                .gates
                .iter()
                .map(|g| {
                    (
                        g.id.as_str(),
                        g.kind,
                        g.inputs.iter().map(|&n| self.net_name(n)).collect(),
                        self.net_name(g.output),
                        g.kind == GateKind::C && g.init,
                    )
                })
                .collect(),
            cd_output: self.cd_output.map(|n| self.net_name(n)),
            isochronic: self.isochronic.iter().map(|&n| self.net_name(n)).collect(),
        }
    }
}

type CanonicalGate<'a> = (&'a str, GateKind, Vec<&'a str>, &'a str, bool);

#[derive(PartialEq, Eq, Debug)]
struct CanonicalNetlist<'a> {
    name: &'a str,
    inputs: Vec<(&'a str, bool)>,
    outputs: Vec<(&'a str, bool)>,
    gates: Vec<CanonicalGate<'a>>,
    cd_output: Option<&'a str>,
    isochronic: BTreeSet<&'a str>,
}

/// Structural equality by names: ports, gates in order, CD output and
/// isochronic set. Net numbering and unused nets do not matter.
impl PartialEq for Netlist {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for Netlist {}
