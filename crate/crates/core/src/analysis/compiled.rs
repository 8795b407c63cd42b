//! Index-based view of a validated netlist plus the packed state layout.

use std::collections::BTreeMap;

use crate::netlist::{has_errors, topological_order, validate, GateKind, Netlist, PortNets};

use super::AnalysisError;

#[derive(Clone, Debug)]
pub(crate) struct CGate {
    pub kind: GateKind,
    pub inputs: Vec<u32>,
    pub output: u32,
    pub init: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum CPort {
    Dual(u32, u32),
    Wire(u32),
}

/// A gate whose inputs are alternative products: an OR/NOR, or a NAND fed
/// only by inverting gates (a NAND-NAND or INV-NAND sum). `active_high`
/// tells which input level means "product asserted".
#[derive(Clone, Debug)]
pub(crate) struct Join {
    pub gate: u32,
    pub active_high: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    pub name: String,
    pub net_names: Vec<String>,
    pub gate_ids: Vec<String>,
    pub gates: Vec<CGate>,
    pub driver: Vec<Option<u32>>,
    pub outputs: Vec<CPort>,
    /// Input nets in port order, rail 0 before rail 1.
    pub input_nets: Vec<u32>,
    pub input_pos: Vec<Option<usize>>,
    pub cd: Option<u32>,
    pub iso: Vec<bool>,
    /// Acknowledgment slots of each net, one per distinct reading gate.
    /// Empty for nets that are never reported (outputs, the CD output).
    pub net_slots: Vec<Vec<u32>>,
    /// `(input net, slot)` pairs a gate clears when it fires.
    pub gate_slots: Vec<Vec<(u32, u32)>>,
    pub joins: Vec<Join>,
    /// Spacer steady state.
    pub initial: Vec<bool>,
    pub layout: Layout,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Layout {
    pub values: usize,
    pub acks: usize,
    pub toggles: usize,
    pub pending: usize,
    pub meta: usize,
    pub words: usize,
}

impl Layout {
    fn new(nets: usize, slots: usize, inputs: usize) -> Self {
        let w = |bits: usize| bits.div_ceil(64);
        let values = 0;
        let acks = values + w(nets);
        let toggles = acks + w(slots);
        let pending = toggles + w(nets);
        let meta = pending + w(inputs);
        Layout {
            values,
            acks,
            toggles,
            pending,
            meta,
            words: meta + 1,
        }
    }
}

#[inline]
pub(crate) fn bit(words: &[u64], base: usize, i: usize) -> bool {
    words[base + i / 64] >> (i % 64) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], base: usize, i: usize, v: bool) {
    let w = &mut words[base + i / 64];
    if v {
        *w |= 1 << (i % 64);
    } else {
        *w &= !(1 << (i % 64));
    }
}

impl Compiled {
    pub fn new(n: &Netlist) -> Result<Self, AnalysisError> {
        let diags = validate(n);
        if has_errors(&diags) {
            return Err(AnalysisError::Invalid(diags));
        }
        let order = topological_order(n).expect("validated netlists are acyclic");
        let nets = n.net_count();
        let gates: Vec<CGate> = n
            .gates()
            .iter()
            .map(|g| CGate {
                kind: g.kind,
                inputs: g.inputs.iter().map(|x| x.0).collect(),
                output: g.output.0,
                init: g.init,
            })
            .collect();
        let mut driver = vec![None; nets];
        for (i, g) in gates.iter().enumerate() {
            driver[g.output as usize] = Some(i as u32);
        }
        let port = |p: &crate::netlist::Port| match p.nets {
            PortNets::DualRail { rail0, rail1 } => CPort::Dual(rail0.0, rail1.0),
            PortNets::Wire(w) => CPort::Wire(w.0),
        };
        let outputs: Vec<CPort> = n.outputs().iter().map(port).collect();
        let input_nets: Vec<u32> = n.input_nets().iter().map(|x| x.0).collect();
        let mut input_pos = vec![None; nets];
        for (i, &x) in input_nets.iter().enumerate() {
            input_pos[x as usize] = Some(i);
        }
        let cd = n.cd_output().map(|x| x.0);
        let mut iso = vec![false; nets];
        for x in n.isochronic() {
            iso[x.index()] = true;
        }

        let mut reported = vec![true; nets];
        for x in n.output_nets() {
            reported[x.index()] = false;
        }
        if let Some(d) = cd {
            reported[d as usize] = false;
        }
        let mut net_slots = vec![Vec::new(); nets];
        let mut gate_slots = vec![Vec::new(); gates.len()];
        let mut slot_of: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for (gi, g) in gates.iter().enumerate() {
            for &x in &g.inputs {
                if !reported[x as usize] || slot_of.contains_key(&(x, gi as u32)) {
                    continue;
                }
                let s = slot_of.len() as u32;
                slot_of.insert((x, gi as u32), s);
                net_slots[x as usize].push(s);
                gate_slots[gi].push((x, s));
            }
        }
        let slot_count = slot_of.len();

        let inverting = |x: u32| {
            driver[x as usize].is_some_and(|d| {
                matches!(gates[d as usize].kind, GateKind::Inv | GateKind::Nand | GateKind::Nor)
            })
        };
        let joins = gates
            .iter()
            .enumerate()
            .filter_map(|(i, g)| {
                let active_high = match g.kind {
                    GateKind::Or | GateKind::Nor if g.inputs.len() >= 2 => true,
                    GateKind::Nand if g.inputs.len() >= 2 && g.inputs.iter().all(|&x| inverting(x)) => false,
                    _ => return None,
                };
                Some(Join {
                    gate: i as u32,
                    active_high,
                })
            })
            .collect();

        let mut initial = vec![false; nets];
        for g in &gates {
            initial[g.output as usize] = g.init;
        }
        for &i in &order {
            let g = &gates[i];
            initial[g.output as usize] = g.kind.eval(g.inputs.iter().map(|&x| initial[x as usize]), initial[g.output as usize]);
        }

        Ok(Compiled {
            name: n.name().to_string(),
            net_names: n.net_ids().map(|x| n.net_name(x).to_string()).collect(),
            gate_ids: n.gates().iter().map(|g| g.id.clone()).collect(),
            gates,
            driver,
            layout: Layout::new(nets, slot_count, input_nets.len()),
            outputs,
            input_nets,
            input_pos,
            cd,
            iso,
            net_slots,
            gate_slots,
            joins,
            initial,
        })
    }

    pub fn net_count(&self) -> usize {
        self.net_names.len()
    }

    /// Value the gate would drive now, given its current output.
    #[inline]
    pub fn gate_target(&self, words: &[u64], g: usize) -> bool {
        let gate = &self.gates[g];
        let base = self.layout.values;
        gate.kind.eval(
            gate.inputs.iter().map(|&x| bit(words, base, x as usize)),
            bit(words, base, gate.output as usize),
        )
    }

    #[inline]
    pub fn value(&self, words: &[u64], net: u32) -> bool {
        bit(words, self.layout.values, net as usize)
    }


    /// Value of a dual-rail port: `Some(bit)` when exactly one rail is high.
    pub fn port_value(&self, words: &[u64], p: CPort) -> Option<bool> {
        match p {
            CPort::Dual(r0, r1) => match (self.value(words, r0), self.value(words, r1)) {
                (true, false) => Some(false),
                (false, true) => Some(true),
                _ => None,
            },
            CPort::Wire(w) => Some(self.value(words, w)),
        }
    }
}
