use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{GateKind, NetId, Netlist};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Rule {
    MultipleDrivers,
    DrivenInput,
    Undriven,
    FanIn,
    Cycle,
    CdOutput,
    Dangling,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub rule: Rule,
    /// Net or gate the diagnostic is about.
    pub subject: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}: {:?} `{}`: {}", self.rule, self.subject, self.message)
    }
}

/// Checks the structural invariants. Errors make a netlist unfit for
/// analysis; warnings (dangling nets) do not.
pub fn validate(n: &Netlist) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut push = |severity, rule, subject: &str, message: String| {
        out.push(Diagnostic {
            severity,
            rule,
            subject: subject.to_string(),
            message,
        })
    };

    let mut drivers: Vec<Vec<usize>> = vec![Vec::new(); n.net_count()];
    let mut readers: Vec<usize> = vec![0; n.net_count()];
    for (i, g) in n.gates().iter().enumerate() {
        drivers[g.output.index()].push(i);
        for &inp in &g.inputs {
            readers[inp.index()] += 1;
        }
        let arity_ok = if g.kind.is_unary() {
            g.inputs.len() == 1
        } else {
            g.inputs.len() >= 2
        };
        if !arity_ok {
            push(
                Severity::Error,
                Rule::FanIn,
                &g.id,
                format!("{} gate has {} inputs", g.kind, g.inputs.len()),
            );
        }
    }

    let inputs: BTreeSet<NetId> = n.input_nets().into_iter().collect();
    let outputs: BTreeSet<NetId> = n.output_nets().into_iter().collect();
    for net in n.net_ids() {
        let name = n.net_name(net);
        let d = &drivers[net.index()];
        if d.len() > 1 {
            let ids: Vec<&str> = d.iter().map(|&i| n.gates()[i].id.as_str()).collect();
            push(
                Severity::Error,
                Rule::MultipleDrivers,
                name,
                format!("driven by {}", ids.join(", ")),
            );
        }
        if inputs.contains(&net) && !d.is_empty() {
            push(Severity::Error, Rule::DrivenInput, name, "primary input has a driver".into());
        }
        let needed = readers[net.index()] > 0 || outputs.contains(&net) || n.cd_output() == Some(net);
        if needed && d.is_empty() && !inputs.contains(&net) {
            push(Severity::Error, Rule::Undriven, name, "net is read but never driven".into());
        }
        let connected = !d.is_empty() || inputs.contains(&net);
        if connected && readers[net.index()] == 0 && !outputs.contains(&net) && n.cd_output() != Some(net) {
            push(Severity::Warning, Rule::Dangling, name, "net has no fanout".into());
        }
    }

    if let Some(cd) = n.cd_output() {
        let ok = drivers[cd.index()]
            .first()
            .is_some_and(|&i| n.gates()[i].kind == GateKind::C);
        if !ok {
            push(
                Severity::Error,
                Rule::CdOutput,
                n.net_name(cd),
                "completion output must be driven by a C-element".into(),
            );
        }
    }

    if let Err(cycle) = topological_order(n) {
        let ids: Vec<&str> = cycle.iter().map(|&i| n.gates()[i].id.as_str()).collect();
        push(
            Severity::Error,
            Rule::Cycle,
            ids[0],
            format!("combinational cycle through {}", ids.join(" -> ")),
        );
    }
    out
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(|d| d.severity == Severity::Error)
}

/// Gate indices in dependency order, or the gates of one cycle.
pub(crate) fn topological_order(n: &Netlist) -> Result<Vec<usize>, Vec<usize>> {
    let gates = n.gates();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); gates.len()];
    let mut indeg = vec![0usize; gates.len()];
    let mut by_output: Vec<Vec<usize>> = vec![Vec::new(); n.net_count()];
    for (i, g) in gates.iter().enumerate() {
        by_output[g.output.index()].push(i);
    }
    for (j, g) in gates.iter().enumerate() {
        for inp in &g.inputs {
            for &i in &by_output[inp.index()] {
                succ[i].push(j);
                indeg[j] += 1;
            }
        }
    }
    let mut queue: VecDeque<usize> = (0..gates.len()).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(gates.len());
    while let Some(i) = queue.pop_front() {
        order.push(i);
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                queue.push_back(j);
            }
        }
    }
    if order.len() == gates.len() {
        return Ok(order);
    }
    // Walk forward inside the residual graph until a gate repeats.
    let residual: BTreeSet<usize> = (0..gates.len()).filter(|&i| indeg[i] > 0).collect();
    let mut path = Vec::new();
    let mut seen = vec![usize::MAX; gates.len()];
    let mut cur = *residual.iter().next().unwrap();
    loop {
        if seen[cur] != usize::MAX {
            return Err(path[seen[cur]..].to_vec());
        }
        seen[cur] = path.len();
        path.push(cur);
        cur = *succ[cur].iter().find(|j| residual.contains(j)).expect("residual gates lie on cycles");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::parse_netlist;

    #[test]
    fn clean_netlist_has_no_diagnostics() {
        let n = parse_netlist(
            "circuit nand5\ninput p:wire\ninput q:wire\ninput r:wire\ninput s:wire\ninput t:wire\noutput N:wire\n\
             gate m1 NAND p q r s -> net1\ngate i1 INV net1 -> net2\ngate m2 NAND net2 t -> N\n",
        )
        .unwrap();
        assert!(validate(&n).is_empty(), "{:?}", validate(&n));
    }

    #[test]
    fn two_drivers() {
        let n = parse_netlist("input a:wire\ninput b:wire\noutput y:wire\ngate g1 BUF a -> y\ngate g2 BUF b -> y\n").unwrap();
        let d = validate(&n);
        assert_eq!(d.len(), 1, "{d:?}");
        assert_eq!(d[0].rule, Rule::MultipleDrivers);
        assert_eq!(d[0].subject, "y");
    }

    #[test]
    fn cycle_is_listed() {
        let n = parse_netlist(
            "input a:wire\noutput y:wire\ngate g1 AND a z -> x\ngate g2 BUF x -> z\ngate g3 BUF x -> y\n",
        )
        .unwrap();
        let d = validate(&n);
        let cyc: Vec<_> = d.iter().filter(|d| d.rule == Rule::Cycle).collect();
        assert_eq!(cyc.len(), 1);
        assert!(cyc[0].message.contains("g1") && cyc[0].message.contains("g2"), "{}", cyc[0].message);
    }

    #[test]
    fn fan_in_cd_and_dangling() {
        let n = parse_netlist(
            "input a:dualrail\noutput y:wire\ncdout y\ngate g1 AND a.1 -> y\ngate g2 INV a.0 -> w\n",
        )
        .unwrap();
        let d = validate(&n);
        let rules: Vec<Rule> = d.iter().map(|d| d.rule).collect();
        assert!(rules.contains(&Rule::FanIn));
        assert!(rules.contains(&Rule::CdOutput));
        assert!(d.iter().any(|d| d.rule == Rule::Dangling && d.subject == "w" && d.severity == Severity::Warning));
        assert!(has_errors(&d));
    }

    #[test]
    fn undriven_and_driven_input() {
        let n = parse_netlist("input a:wire\noutput y:wire\ngate g1 AND a q -> y\ngate g2 BUF y -> a\n").unwrap();
        let rules: Vec<Rule> = validate(&n).iter().map(|d| d.rule).collect();
        assert!(rules.contains(&Rule::Undriven));
        assert!(rules.contains(&Rule::DrivenInput));
    }
}
