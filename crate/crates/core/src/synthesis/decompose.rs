//! Naive NAND fan-in reduction. Each stage re-inverts a partial NAND so
//! the next stage can AND it with more inputs; the intermediate nets are
//! left unacknowledged when a late input masks them.

use crate::netlist::{Gate, GateKind, Netlist};

use super::SynthError;

/// Replaces NAND gate `gate_id` by a chain of NAND/INV stages whose NANDs
/// have at most `max_fanin` inputs. New gates are `{prefix}m1, {prefix}inv1,
/// {prefix}m2, ...` and new nets `{prefix}net1, {prefix}net2, ...`.
/// Returns the ids of the gates now standing in for the original, which is
/// itself if its fan-in already fits.
pub fn nand_decompose_naive(n: &mut Netlist, gate_id: &str, max_fanin: usize, prefix: &str) -> Result<Vec<String>, SynthError> {
    if max_fanin < 2 {
        return Err(SynthError::MaxFaninTooSmall(max_fanin));
    }
    let g = n.gate(gate_id).ok_or_else(|| SynthError::UnknownGate(gate_id.into()))?.clone();
    if g.kind != GateKind::Nand {
        return Err(SynthError::NotNand(gate_id.into()));
    }
    if g.inputs.len() <= max_fanin {
        return Ok(vec![g.id]);
    }
    let pos = n.gate_position(gate_id).expect("gate exists");
    n.remove_gate(gate_id);

    let mut new_gates = Vec::new();
    let mut net_no = 0;
    let mut stage = 0;
    let mut fresh_net = |n: &mut Netlist| {
        net_no += 1;
        let name = n.fresh_net_name(&format!("{prefix}net{net_no}"));
        n.net(&name)
    };
    let mut rest: &[_] = &g.inputs;
    let mut carry = None;
    loop {
        stage += 1;
        let room = max_fanin - usize::from(carry.is_some());
        let take = room.min(rest.len());
        let mut ins: Vec<_> = carry.into_iter().collect();
        ins.extend_from_slice(&rest[..take]);
        rest = &rest[take..];
        let nand_id = format!("{prefix}m{stage}");
        if rest.is_empty() {
            new_gates.push(Gate { id: nand_id, kind: GateKind::Nand, inputs: ins, output: g.output, init: false });
            break;
        }
        let partial = fresh_net(n);
        let restored = fresh_net(n);
        new_gates.push(Gate { id: nand_id, kind: GateKind::Nand, inputs: ins, output: partial, init: false });
        new_gates.push(Gate {
            id: format!("{prefix}inv{stage}"),
            kind: GateKind::Inv,
            inputs: vec![partial],
            output: restored,
            init: false,
        });
        carry = Some(restored);
    }
    let ids = new_gates.iter().map(|g| g.id.clone()).collect();
    n.insert_gates(pos, new_gates)?;
    Ok(ids)
}

/// Decomposes every NAND wider than `max_fanin`, prefixing new names with
/// the original gate id.
pub fn decompose_netlist(n: &mut Netlist, max_fanin: usize) -> Result<(), SynthError> {
    if max_fanin < 2 {
        return Err(SynthError::MaxFaninTooSmall(max_fanin));
    }
    let wide: Vec<String> = n
        .gates()
        .iter()
        .filter(|g| g.kind == GateKind::Nand && g.inputs.len() > max_fanin)
        .map(|g| g.id.clone())
        .collect();
    for id in wide {
        nand_decompose_naive(n, &id, max_fanin, &format!("{id}_"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::{parse_netlist, topological_order, validate};

    fn nand(k: usize) -> Netlist {
        let mut text = String::from("circuit wide\n");
        for i in 0..k {
            text.push_str(&format!("input i{i}:wire\n"));
        }
        text.push_str("output N:wire\ngate g NAND");
        for i in 0..k {
            text.push_str(&format!(" i{i}"));
        }
        text.push_str(" -> N\n");
        parse_netlist(&text).unwrap()
    }

    fn steady(n: &Netlist, bits: u64) -> bool {
        let mut v = vec![false; n.net_count()];
        for (i, net) in n.input_nets().into_iter().enumerate() {
            v[net.index()] = bits >> i & 1 == 1;
        }
        for i in topological_order(n).unwrap() {
            let g = &n.gates()[i];
            v[g.output.index()] = g.kind.eval(g.inputs.iter().map(|x| v[x.index()]), false);
        }
        v[n.find_net("N").unwrap().index()]
    }

    #[test]
    fn nand5_into_four_plus_two() {
        let mut n = nand(5);
        let ids = nand_decompose_naive(&mut n, "g", 4, "").unwrap();
        assert_eq!(ids, ["m1", "inv1", "m2"]);
        let m1 = n.gate("m1").unwrap();
        assert_eq!(m1.inputs.len(), 4);
        assert_eq!(n.net_name(m1.output), "net1");
        assert_eq!(n.net_name(n.gate("inv1").unwrap().output), "net2");
        let m2 = n.gate("m2").unwrap();
        let ins: Vec<&str> = m2.inputs.iter().map(|&i| n.net_name(i)).collect();
        assert_eq!(ins, ["net2", "i4"]);
        assert_eq!(n.net_name(m2.output), "N");
    }

    #[test]
    fn nand8_three_stages_matches_undivided() {
        let orig = nand(8);
        let mut n = orig.clone();
        nand_decompose_naive(&mut n, "g", 3, "").unwrap();
        assert_eq!(n.gates().iter().filter(|g| g.kind == GateKind::Inv).count(), 3);
        assert_eq!(n.gates().iter().filter(|g| g.kind == GateKind::Nand).count(), 4);
        assert!(n.gates().iter().all(|g| g.inputs.len() <= 3));
        assert!(validate(&n).is_empty(), "{:?}", validate(&n));
        for bits in 0..256 {
            assert_eq!(steady(&n, bits), steady(&orig, bits), "{bits:08b}");
        }
    }

    #[test]
    fn narrow_gate_is_unchanged() {
        let mut n = nand(2);
        assert_eq!(nand_decompose_naive(&mut n, "g", 4, "").unwrap(), ["g"]);
        assert_eq!(n, nand(2));
    }

    #[test]
    fn errors() {
        let mut n = nand(3);
        assert_eq!(nand_decompose_naive(&mut n, "g", 1, ""), Err(SynthError::MaxFaninTooSmall(1)));
        assert_eq!(nand_decompose_naive(&mut n, "h", 2, ""), Err(SynthError::UnknownGate("h".into())));
        let mut and = parse_netlist("input a:wire\ninput b:wire\ninput c:wire\noutput y:wire\ngate g AND a b c -> y\n").unwrap();
        assert_eq!(nand_decompose_naive(&mut and, "g", 2, ""), Err(SynthError::NotNand("g".into())));
    }

    #[test]
    fn netlist_pass_prefixes_names() {
        let mut n = nand(6);
        decompose_netlist(&mut n, 4).unwrap();
        assert!(n.gate("g_m1").is_some() && n.gate("g_m2").is_some());
        assert!(n.find_net("g_net2").is_some());
    }
}
