//! Steady-state evaluation oracle for generator tests.

use crate::boolean::minterm_var;
use crate::netlist::{topological_order, Netlist, PortNets};

/// Settles `n` from spacer, applies the codeword `minterm` (first input is
/// the MSB) and settles again. Returns the first dual-rail output's value,
/// or `None` if it is not a valid codeword.
pub(crate) fn eval_codeword(n: &Netlist, minterm: u64, var_count: usize) -> Option<bool> {
    let order = topological_order(n).expect("generators emit acyclic netlists");
    let mut values = vec![false; n.net_count()];
    for g in n.gates() {
        values[g.output.index()] = g.init;
    }
    let settle = |values: &mut Vec<bool>| {
        for &i in &order {
            let g = &n.gates()[i];
            let out = g.kind.eval(g.inputs.iter().map(|x| values[x.index()]), values[g.output.index()]);
            values[g.output.index()] = out;
        }
    };
    settle(&mut values);
    for (i, p) in n.inputs().iter().enumerate() {
        let bit = minterm_var(minterm, i, var_count);
        match p.nets {
            PortNets::DualRail { rail0, rail1 } => values[if bit { rail1 } else { rail0 }.index()] = true,
            PortNets::Wire(w) => values[w.index()] = bit,
        }
    }
    settle(&mut values);
    let out = n.outputs().iter().find_map(|p| match p.nets {
        PortNets::DualRail { rail0, rail1 } => Some((rail0, rail1)),
        PortNets::Wire(_) => None,
    })?;
    match (values[out.0.index()], values[out.1.index()]) {
        (false, true) => Some(true),
        (true, false) => Some(false),
        _ => None,
    }
}
