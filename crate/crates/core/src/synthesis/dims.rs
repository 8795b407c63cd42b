//! Delay-insensitive minterm synthesis: one C-element per care minterm,
//! OR-ed per rail.

use crate::boolean::{minterm_var, BooleanFunction};
use crate::netlist::{GateKind, Netlist};

use super::common::RailBuilder;
use super::SynthError;

/// Keeps the per-codeword state space small enough to explore.
pub const MAX_DIMS_VARS: usize = 6;

/// Minterm `m` is `C(rails...) -> m{m}`; a one-input C-element is a BUF.
/// A rail with a single minterm is driven by its C-element directly.
pub fn dims_synthesize(f: &BooleanFunction, output: &str) -> Result<Netlist, SynthError> {
    let n = f.var_count();
    if n > MAX_DIMS_VARS {
        return Err(SynthError::TooManyVars { got: n, max: MAX_DIMS_VARS });
    }
    let mut b = RailBuilder::new("dims", f.var_names(), output, "c")?;
    let (out0, out1) = (b.out0, b.out1);
    let kind = if n == 1 { GateKind::Buf } else { GateKind::C };
    for (value, out, join) in [(true, out1, "join1"), (false, out0, "join0")] {
        let minterms: Vec<u64> = f.care_minterms().filter(|&m| f.value(m) == Some(value)).collect();
        if minterms.is_empty() {
            b.tie_low(out)?;
            continue;
        }
        let mut nets = Vec::with_capacity(minterms.len());
        for &m in &minterms {
            let rails: Vec<_> = (0..n)
                .map(|v| {
                    let (r0, r1) = b.inputs[v];
                    if minterm_var(m, v, n) {
                        r1
                    } else {
                        r0
                    }
                })
                .collect();
            let net = if minterms.len() == 1 {
                out
            } else {
                let name = b.n.fresh_net_name(&format!("m{m}"));
                b.n.net(&name)
            };
            b.named_gate(&format!("c{m}"), kind, &rails, net)?;
            nets.push(net);
        }
        if nets.len() > 1 {
            b.named_gate(join, GateKind::Or, &nets, out)?;
        }
    }
    Ok(b.finish())
}
