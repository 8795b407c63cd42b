use std::fmt;
use std::str::FromStr;

use crate::netlist::{GateKind, NetId, Netlist, PortNets};

use super::{SynthError, CD_NET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CdVariant {
    Or,
    Nor,
}

impl CdVariant {
    fn detector(self, arity: usize) -> (GateKind, &'static str) {
        match (self, arity) {
            (CdVariant::Or, 1) => (GateKind::Buf, "or"),
            (CdVariant::Or, _) => (GateKind::Or, "or"),
            (CdVariant::Nor, 1) => (GateKind::Inv, "nor"),
            (CdVariant::Nor, _) => (GateKind::Nor, "nor"),
        }
    }
}

impl fmt::Display for CdVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CdVariant::Or => "or",
            CdVariant::Nor => "nor",
        })
    }
}

impl FromStr for CdVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "or" => Ok(CdVariant::Or),
            "nor" => Ok(CdVariant::Nor),
            other => Err(format!("unknown completion variant `{other}` (expected or, nor or none)")),
        }
    }
}

/// Adds `cd{i} = OR(x.0, x.1)` per dual-rail input, a detector over the
/// internal taps (`or1`/`nor1`), one detector per dual-rail output
/// (`or2`, `or3`, ...) and a C-element joining them into `D`.
pub fn build_completion_detector(n: &Netlist, taps: &[&str], variant: CdVariant) -> Result<Netlist, SynthError> {
    if n.cd_output().is_some() {
        return Err(SynthError::CdExists);
    }
    let rails = |ports: &[crate::netlist::Port]| -> Vec<(NetId, NetId)> {
        ports
            .iter()
            .filter_map(|p| match p.nets {
                PortNets::DualRail { rail0, rail1 } => Some((rail0, rail1)),
                PortNets::Wire(_) => None,
            })
            .collect()
    };
    let ins = rails(n.inputs());
    let outs = rails(n.outputs());
    if ins.is_empty() || outs.is_empty() {
        return Err(SynthError::NoDualRailPorts);
    }
    let tap_ids = taps
        .iter()
        .map(|t| n.find_net(t).ok_or_else(|| SynthError::UnknownTap(t.to_string())))
        .collect::<Result<Vec<_>, _>>()?;

    let mut n = n.clone();
    let add = |n: &mut Netlist, base: &str, kind: GateKind, inputs: &[NetId]| -> Result<NetId, SynthError> {
        let name = n.fresh_net_name(base);
        let id = n.fresh_gate_id(&name);
        let net = n.net(&name);
        n.add_gate(&id, kind, inputs, net)?;
        Ok(net)
    };
    let mut joins = Vec::new();
    for (i, (r0, r1)) in ins.iter().enumerate() {
        joins.push(add(&mut n, &format!("cd{}", i + 1), GateKind::Or, &[*r0, *r1])?);
    }
    let tap_join = match tap_ids.is_empty() {
        true => None,
        false => {
            let (kind, base) = variant.detector(tap_ids.len());
            Some(add(&mut n, &format!("{base}1"), kind, &tap_ids)?)
        }
    };
    for (j, (r0, r1)) in outs.iter().enumerate() {
        let (kind, base) = variant.detector(2);
        joins.push(add(&mut n, &format!("{base}{}", j + 2), kind, &[*r0, *r1])?);
    }
    // C inputs: input joins, output joins, then the tap join.
    joins.extend(tap_join);
    let d = n.fresh_net_name(CD_NET);
    let id = n.fresh_gate_id(&format!("c{}", joins.len()));
    let d = n.net(&d);
    if joins.len() == 1 {
        n.add_gate(&id, GateKind::Buf, &joins, d)?;
    } else {
        n.add_gate(&id, GateKind::C, &joins, d)?;
    }
    n.set_cd_output(Some(d));
    Ok(n)
}
