//! Reconstruction of the factored multi-level flow with a NAND-NAND
//! function block and a completion detector tapping two internal nets.
//!
//! Under spacer every `int*` net idles at 1 and every `kernel*` net at 0.

use crate::boolean::{factor_single_kernel, minimize_cover, BooleanFunction, Polarity, ProductTerm, SopNode};
use crate::netlist::{GateKind, NetId, Netlist};

use super::common::RailBuilder;
use super::completion::{build_completion_detector, CdVariant};
use super::SynthError;

enum Node {
    Product(Vec<NetId>),
    Factored { common: Vec<NetId>, kernel: Vec<Vec<NetId>> },
}

fn plan(b: &RailBuilder, nodes: &[SopNode]) -> Vec<Node> {
    nodes
        .iter()
        .map(|node| match node {
            SopNode::Term(t) => Node::Product(b.rails(t)),
            SopNode::Factored { common, kernel } => Node::Factored {
                common: b.rails(common),
                kernel: kernel.iter().map(|t| b.rails(t)).collect(),
            },
        })
        .collect()
}

/// NAND for several signals, INV for one.
fn invert_product(b: &mut RailBuilder, signals: &[NetId], out: NetId) -> Result<(), SynthError> {
    let kind = if signals.len() == 1 { GateKind::Inv } else { GateKind::Nand };
    b.gate(kind, signals, out)
}

fn is_constant(nodes: &[SopNode]) -> bool {
    nodes.is_empty() || nodes.iter().any(|n| matches!(n, SopNode::Term(t) if *t == ProductTerm::TAUTOLOGY))
}

/// Builds the function block and, unless `cd` is `None`, the completion
/// detector `C(cd1..cdk, or1, or2) -> D`. With [`CdVariant::Nor`] the
/// C-element resets to 1.
pub fn synthesize_method1(f: &BooleanFunction, cd: Option<CdVariant>, output: &str) -> Result<Netlist, SynthError> {
    let on = factor_single_kernel(&minimize_cover(f, Polarity::On));
    let off = factor_single_kernel(&minimize_cover(f, Polarity::Off));
    let mut b = RailBuilder::new("method1", f.var_names(), output, "k")?;
    let (out0, out1) = (b.out0, b.out1);

    let mut taps = Vec::new();
    if is_constant(on.nodes()) || is_constant(off.nodes()) {
        let value = !on.nodes().is_empty() && is_constant(on.nodes());
        let (hi, lo) = if value { (out1, out0) } else { (out0, out1) };
        b.tie_high(hi)?;
        b.tie_low(lo)?;
    } else {
        let t_nodes = plan(&b, on.nodes());
        let f_nodes = plan(&b, off.nodes());

        // Idle-1 net names: the first node of each rail, then the rest of
        // the nodes alternating, then kernel-term nets.
        let mut order: Vec<(bool, usize)> = Vec::new();
        for i in 0..t_nodes.len().max(f_nodes.len()) {
            if i < t_nodes.len() {
                order.push((true, i));
            }
            if i < f_nodes.len() {
                order.push((false, i));
            }
        }
        let mut counter = 0;
        let mut fresh = |b: &mut RailBuilder, base: &str| {
            counter += 1;
            let name = b.n.fresh_net_name(&format!("{base}{counter}"));
            b.n.net(&name)
        };
        let mut node_net: [Vec<NetId>; 2] = [vec![NetId(0); f_nodes.len()], vec![NetId(0); t_nodes.len()]];
        for &(rail, i) in &order {
            node_net[usize::from(rail)][i] = fresh(&mut b, "int");
        }
        let mut kernel_count = 0;
        for &(rail, i) in &order {
            let node = if rail { &t_nodes[i] } else { &f_nodes[i] };
            let out = node_net[usize::from(rail)][i];
            match node {
                Node::Product(sig) => invert_product(&mut b, sig, out)?,
                Node::Factored { common, kernel } => {
                    let mut term_nets = Vec::with_capacity(kernel.len());
                    for sig in kernel {
                        let net = fresh(&mut b, "int");
                        invert_product(&mut b, sig, net)?;
                        term_nets.push(net);
                    }
                    kernel_count += 1;
                    let kname = b.n.fresh_net_name(&format!("kernel{kernel_count}"));
                    let knet = b.n.net(&kname);
                    invert_product(&mut b, &term_nets, knet)?;
                    let mut ins = common.clone();
                    ins.push(knet);
                    invert_product(&mut b, &ins, out)?;
                }
            }
        }
        invert_product(&mut b, &node_net[1].clone(), out1)?;
        invert_product(&mut b, &node_net[0].clone(), out0)?;
        taps = vec![node_net[1][0], node_net[0][0]];
    }

    let n = b.finish();
    let Some(variant) = cd else {
        return Ok(n);
    };
    let tap_names: Vec<String> = taps.iter().map(|&t| n.net_name(t).to_string()).collect();
    let tap_refs: Vec<&str> = tap_names.iter().map(String::as_str).collect();
    let mut n = build_completion_detector(&n, &tap_refs, variant)?;
    if variant == CdVariant::Nor {
        let c = n.driver(n.cd_output().expect("detector sets D")).expect("D is driven").id.clone();
        n.set_gate_init(&c, true);
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthesis::cd_fan_in;
    use crate::synthesis::steady::eval_codeword;

    fn f() -> BooleanFunction {
        BooleanFunction::from_spec(4, [1, 2, 3, 5, 6, 7, 9, 10, 11, 13], []).unwrap()
    }

    fn net_inputs(n: &Netlist, net: &str) -> (GateKind, Vec<String>) {
        let g = n.driver(n.find_net(net).unwrap()).unwrap();
        (g.kind, g.inputs.iter().map(|&i| n.net_name(i).to_string()).collect())
    }

    #[test]
    fn function_block_shape() {
        let n = synthesize_method1(&f(), None, "F").unwrap();
        assert_eq!(net_inputs(&n, "int5"), (GateKind::Inv, vec!["a.0".into()]));
        assert_eq!(net_inputs(&n, "int6"), (GateKind::Inv, vec!["b.0".into()]));
        assert_eq!(net_inputs(&n, "kernel1"), (GateKind::Nand, vec!["int5".into(), "int6".into()]));
        assert_eq!(net_inputs(&n, "int1"), (GateKind::Nand, vec!["c.1".into(), "kernel1".into()]));
        assert_eq!(net_inputs(&n, "int2"), (GateKind::Nand, vec!["a.1".into(), "b.1".into(), "c.1".into()]));
        assert_eq!(net_inputs(&n, "int3"), (GateKind::Nand, vec!["c.0".into(), "d.1".into()]));
        assert_eq!(net_inputs(&n, "int4"), (GateKind::Nand, vec!["c.0".into(), "d.0".into()]));
        assert_eq!(net_inputs(&n, "F.1"), (GateKind::Nand, vec!["int1".into(), "int3".into()]));
        assert_eq!(net_inputs(&n, "F.0"), (GateKind::Nand, vec!["int2".into(), "int4".into()]));
        assert!(n.cd_output().is_none());
    }

    #[test]
    fn completion_detector_has_six_inputs() {
        let n = synthesize_method1(&f(), Some(CdVariant::Or), "F").unwrap();
        assert_eq!(cd_fan_in(&n), Some(6));
        assert_eq!(net_inputs(&n, "or1"), (GateKind::Or, vec!["int1".into(), "int2".into()]));
        assert_eq!(net_inputs(&n, "or2"), (GateKind::Or, vec!["F.0".into(), "F.1".into()]));
        let d = n.driver(n.cd_output().unwrap()).unwrap();
        assert!(!d.init);
        let nor = synthesize_method1(&f(), Some(CdVariant::Nor), "F").unwrap();
        assert_eq!(net_inputs(&nor, "nor1").0, GateKind::Nor);
        assert!(nor.driver(nor.cd_output().unwrap()).unwrap().init);
    }

    #[test]
    fn truth_table() {
        let n = synthesize_method1(&f(), Some(CdVariant::Or), "F").unwrap();
        for m in 0..16 {
            assert_eq!(eval_codeword(&n, m, 4), f().value(m), "{m}");
        }
    }

    #[test]
    fn identity_function() {
        let f = BooleanFunction::from_spec(1, [1], []).unwrap();
        let n = synthesize_method1(&f, Some(CdVariant::Or), "F").unwrap();
        assert_eq!(cd_fan_in(&n), Some(3));
        assert_eq!(eval_codeword(&n, 0, 1), Some(false));
        assert_eq!(eval_codeword(&n, 1, 1), Some(true));
    }

    #[test]
    fn random_functions_and_constants() {
        for seed in 0u64..256 {
            let on: Vec<u64> = (0..8).filter(|m| seed >> m & 1 == 1).collect();
            let f = BooleanFunction::from_spec(3, on, []).unwrap();
            let n = synthesize_method1(&f, Some(CdVariant::Or), "F").unwrap();
            for m in 0..8 {
                assert_eq!(eval_codeword(&n, m, 3), f.value(m), "seed {seed} minterm {m}");
            }
        }
    }
}
