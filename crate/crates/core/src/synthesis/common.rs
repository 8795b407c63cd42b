//! Shared construction helpers for the generators.

use crate::boolean::{Literal, ProductTerm};
use crate::netlist::{GateKind, NetId, Netlist};

use super::SynthError;

/// A netlist under construction with dual-rail inputs and one dual-rail
/// output.
pub(crate) struct RailBuilder {
    pub n: Netlist,
    /// `(rail0, rail1)` per variable.
    pub inputs: Vec<(NetId, NetId)>,
    pub out0: NetId,
    pub out1: NetId,
    counter: usize,
    prefix: &'static str,
}

impl RailBuilder {
    pub fn new(name: &str, vars: &[String], output: &str, gate_prefix: &'static str) -> Result<Self, SynthError> {
        let mut n = Netlist::new(name);
        let inputs = vars
            .iter()
            .map(|v| n.add_input_dual_rail(v))
            .collect::<Result<Vec<_>, _>>()?;
        let (out0, out1) = n.add_output_dual_rail(output)?;
        Ok(RailBuilder {
            n,
            inputs,
            out0,
            out1,
            counter: 0,
            prefix: gate_prefix,
        })
    }

    pub fn rail(&self, lit: Literal) -> NetId {
        let (r0, r1) = self.inputs[lit.var];
        if lit.positive {
            r1
        } else {
            r0
        }
    }

    pub fn rails(&self, t: &ProductTerm) -> Vec<NetId> {
        t.literals().map(|l| self.rail(l)).collect()
    }

    pub fn next_gate_id(&mut self) -> String {
        loop {
            self.counter += 1;
            let id = format!("{}{}", self.prefix, self.counter);
            if self.n.gate(&id).is_none() {
                return id;
            }
        }
    }

    pub fn gate(&mut self, kind: GateKind, inputs: &[NetId], output: NetId) -> Result<(), SynthError> {
        let id = self.next_gate_id();
        self.n.add_gate(&id, kind, inputs, output)?;
        Ok(())
    }

    pub fn named_gate(&mut self, id: &str, kind: GateKind, inputs: &[NetId], output: NetId) -> Result<(), SynthError> {
        let id = self.n.fresh_gate_id(id);
        self.n.add_gate(&id, kind, inputs, output)?;
        Ok(())
    }

    /// Drives `output` with a rail that can never rise under a legal
    /// codeword: the AND of both rails of the first input.
    pub fn tie_low(&mut self, output: NetId) -> Result<(), SynthError> {
        let (r0, r1) = self.inputs[0];
        self.named_gate("tie0", GateKind::And, &[r0, r1], output)
    }

    /// Drives `output` with a rail that rises once every input has arrived
    /// and falls once every input has reset: a C-element over per-input
    /// rail ORs (a single OR for one input).
    pub fn tie_high(&mut self, output: NetId) -> Result<(), SynthError> {
        let inputs = self.inputs.clone();
        if let [(r0, r1)] = inputs.as_slice() {
            return self.named_gate("tie1", GateKind::Or, &[*r0, *r1], output);
        }
        let mut arrivals = Vec::with_capacity(inputs.len());
        for (i, (r0, r1)) in inputs.iter().enumerate() {
            let net_name = self.n.fresh_net_name(&format!("arr{}", i + 1));
            let net = self.n.net(&net_name);
            self.named_gate(&net_name, GateKind::Or, &[*r0, *r1], net)?;
            arrivals.push(net);
        }
        self.named_gate("tie1", GateKind::C, &arrivals, output)
    }

    /// Drives `output` from one or more nets: BUF for one, OR for several.
    pub fn or_join(&mut self, id: &str, nets: &[NetId], output: NetId) -> Result<(), SynthError> {
        match nets {
            [] => self.tie_low(output),
            [single] => self.named_gate(id, GateKind::Buf, &[*single], output),
            _ => self.named_gate(id, GateKind::Or, nets, output),
        }
    }

    pub fn finish(self) -> Netlist {
        self.n
    }
}

/// Intermediate signal names that do not clash with existing ones.
pub(crate) fn intermediate_names(count: usize, taken: &[&str]) -> Vec<String> {
    let mut pool = ["X", "Y", "W", "V", "U"]
        .iter()
        .map(|s| s.to_string())
        .chain((1..).map(|i| format!("T{i}")))
        .filter(|s| !taken.contains(&s.as_str()));
    (0..count).map(|_| pool.next().unwrap()).collect()
}
