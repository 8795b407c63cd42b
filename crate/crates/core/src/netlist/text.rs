//! Line-oriented netlist text format.
//!
//! ```text
//! circuit nand5
//! input p:wire
//! input a:dualrail          # nets a.0 and a.1
//! output N:wire
//! cdout D
//! gate m1 NAND p q r s -> net1
//! cgate c1 C x y -> D init=0
//! isochronic a.1
//! ```

use std::fmt::Write as _;

use super::{GateKind, NetlistError, Netlist, PortNets};

pub fn parse_netlist(text: &str) -> Result<Netlist, NetlistError> {
    let mut n = Netlist::new("unnamed");
    let mut cd: Option<String> = None;
    let mut iso: Vec<(String, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let syntax = |message: String| NetlistError::Syntax { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "circuit" => {
                let [_, name] = words.as_slice() else {
                    return Err(syntax("`circuit` takes one name".into()));
                };
                n.set_name(*name);
            }
            "input" | "output" => {
                if words.len() != 2 {
                    return Err(syntax(format!("`{}` takes one `name:kind` declaration", words[0])));
                }
                let (name, kind) = words[1]
                    .split_once(':')
                    .ok_or_else(|| syntax(format!("expected `name:dualrail` or `name:wire`, found `{}`", words[1])))?;
                if name.is_empty() {
                    return Err(syntax("empty port name".into()));
                }
                let res = match (words[0], kind) {
                    ("input", "dualrail") => n.add_input_dual_rail(name).map(|_| ()),
                    ("input", "wire") => n.add_input_wire(name).map(|_| ()),
                    ("output", "dualrail") => n.add_output_dual_rail(name).map(|_| ()),
                    ("output", "wire") => n.add_output_wire(name).map(|_| ()),
                    _ => return Err(syntax(format!("unknown port kind `{kind}`"))),
                };
                res.map_err(|e| syntax(e.to_string()))?;
            }
            "cdout" => {
                let [_, net] = words.as_slice() else {
                    return Err(syntax("`cdout` takes one net".into()));
                };
                if cd.is_some() {
                    return Err(syntax("duplicate `cdout`".into()));
                }
                cd = Some(net.to_string());
            }
            "isochronic" => {
                if words.len() < 2 {
                    return Err(syntax("`isochronic` takes at least one net".into()));
                }
                iso.extend(words[1..].iter().map(|w| (w.to_string(), line_no)));
            }
            kw @ ("gate" | "cgate") => {
                let arrow = words
                    .iter()
                    .position(|w| *w == "->")
                    .ok_or_else(|| syntax("missing `->`".into()))?;
                if arrow < 3 {
                    return Err(syntax("expected `gate <id> <KIND> <inputs...> -> <output>`".into()));
                }
                let id = words[1];
                let kind = GateKind::from_name(words[2]).ok_or_else(|| syntax(format!("unknown gate kind `{}`", words[2])))?;
                if kw == "cgate" && kind != GateKind::C {
                    return Err(syntax("`cgate` declares C-elements only".into()));
                }
                let inputs = &words[3..arrow];
                let tail = &words[arrow + 1..];
                let (output, attrs) = match tail {
                    [out, rest @ ..] => (*out, rest),
                    [] => return Err(syntax("missing output net".into())),
                };
                let mut init = false;
                for attr in attrs {
                    match *attr {
                        "init=0" => init = false,
                        "init=1" => init = true,
                        other => return Err(syntax(format!("unknown attribute `{other}`"))),
                    }
                }
                if init && kind != GateKind::C {
                    return Err(syntax("`init=` applies to C-elements only".into()));
                }
                let ins: Vec<_> = inputs.iter().map(|s| n.net(s)).collect();
                let out = n.net(output);
                n.add_gate_with_init(id, kind, &ins, out, init)
                    .map_err(|e| syntax(e.to_string()))?;
            }
            other => return Err(syntax(format!("unknown statement `{other}`"))),
        }
    }
    if let Some(cd) = cd {
        let id = n.net(&cd);
        n.set_cd_output(Some(id));
    }
    for (name, line) in iso {
        if let Some(id) = n.find_net(&name) {
            n.mark_isochronic(id);
            continue;
        }
        let port = n.inputs().iter().find(|p| p.name == name).map(|p| p.nets);
        match port {
            Some(PortNets::DualRail { rail0, rail1 }) => {
                n.mark_isochronic(rail0);
                n.mark_isochronic(rail1);
            }
            _ => {
                return Err(NetlistError::Syntax {
                    line,
                    message: format!("isochronic net `{name}` is not declared"),
                })
            }
        }
    }
    Ok(n)
}

pub fn serialize_netlist(n: &Netlist) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "circuit {}", n.name());
    for (kw, ports) in [("input", n.inputs()), ("output", n.outputs())] {
        for p in ports {
            let kind = if p.is_dual_rail() { "dualrail" } else { "wire" };
            let _ = writeln!(out, "{kw} {}:{kind}", p.name);
        }
    }
    if let Some(cd) = n.cd_output() {
        let _ = writeln!(out, "cdout {}", n.net_name(cd));
    }
    for g in n.gates() {
        let ins: Vec<&str> = g.inputs.iter().map(|&i| n.net_name(i)).collect();
        if g.kind == GateKind::C {
            let _ = writeln!(
                out,
                "cgate {} C {} -> {} init={}",
                g.id,
                ins.join(" "),
                n.net_name(g.output),
                u8::from(g.init)
            );
        } else {
            let _ = writeln!(out, "gate {} {} {} -> {}", g.id, g.kind, ins.join(" "), n.net_name(g.output));
        }
    }
    for &net in n.isochronic() {
        let _ = writeln!(out, "isochronic {}", n.net_name(net));
    }
    out
}
