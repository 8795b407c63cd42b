//! Dual-rail combinational logic: each gate of a two-level SOP circuit is
//! replaced by a true-rail copy and a De Morgan mirror on the false rail.

use crate::boolean::{minimize_cover, BooleanFunction, Polarity, ProductTerm, SopExpression};
use crate::netlist::{GateKind, NetId, Netlist};

use super::common::{intermediate_names, RailBuilder};
use super::SynthError;

/// Translates a flat cover gate by gate. Factored nodes are expanded first.
///
/// Term `k` with two or more literals becomes `g{k}1` (AND on true rails)
/// and `g{k}0` (OR on the complementary false rails); the output join is
/// `g{m}1`/`g{m}0` with `m` one past the last term.
pub fn drcl_translate(cover: &SopExpression, output: &str) -> Result<Netlist, SynthError> {
    let vars = cover.vars().to_vec();
    let terms = cover.terms();
    let mut b = RailBuilder::new("drcl", &vars, output, "g")?;
    let (out0, out1) = (b.out0, b.out1);

    if terms.is_empty() {
        b.tie_low(out1)?;
        b.tie_high(out0)?;
        return Ok(b.finish());
    }
    if terms.iter().any(ProductTerm::is_tautology) {
        b.tie_high(out1)?;
        b.tie_low(out0)?;
        return Ok(b.finish());
    }

    let taken: Vec<&str> = vars.iter().map(String::as_str).chain([output]).collect();
    let wide = terms.iter().filter(|t| t.len() >= 2).count();
    let mut names = intermediate_names(wide, &taken).into_iter();
    let single = terms.len() == 1;

    let mut true_nets: Vec<NetId> = Vec::with_capacity(terms.len());
    let mut false_nets: Vec<NetId> = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        let k = k + 1;
        let lits: Vec<_> = t.literals().collect();
        let t_rails: Vec<NetId> = lits.iter().map(|&l| b.rail(l)).collect();
        let f_rails: Vec<NetId> = lits.iter().map(|&l| b.rail(l.negated())).collect();
        if lits.len() == 1 {
            if single {
                b.n.add_gate(&format!("g{k}1"), GateKind::Buf, &t_rails, out1)?;
                b.n.add_gate(&format!("g{k}0"), GateKind::Buf, &f_rails, out0)?;
            }
            true_nets.push(t_rails[0]);
            false_nets.push(f_rails[0]);
            continue;
        }
        let (t_out, f_out) = if single {
            (out1, out0)
        } else {
            let name = names.next().expect("one name per wide term");
            (b.n.net(&format!("{name}.1")), b.n.net(&format!("{name}.0")))
        };
        b.n.add_gate(&format!("g{k}1"), GateKind::And, &t_rails, t_out)?;
        b.n.add_gate(&format!("g{k}0"), GateKind::Or, &f_rails, f_out)?;
        true_nets.push(t_out);
        false_nets.push(f_out);
    }
    if !single {
        let m = terms.len() + 1;
        b.n.add_gate(&format!("g{m}1"), GateKind::Or, &true_nets, out1)?;
        b.n.add_gate(&format!("g{m}0"), GateKind::And, &false_nets, out0)?;
    }
    Ok(b.finish())
}

/// Minimizes the ON-set and translates the cover.
pub fn drcl_from_function(f: &BooleanFunction, output: &str) -> Result<Netlist, SynthError> {
    drcl_translate(&minimize_cover(f, Polarity::On), output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::parse_expression;
    use crate::synthesis::steady::eval_codeword;

    fn kinds(n: &Netlist, id: &str) -> (GateKind, Vec<String>, String) {
        let g = n.gate(id).unwrap();
        (
            g.kind,
            g.inputs.iter().map(|&i| n.net_name(i).to_string()).collect(),
            n.net_name(g.output).to_string(),
        )
    }

    #[test]
    fn two_products_give_six_gates() {
        let n = drcl_translate(&parse_expression("ab + cd").unwrap(), "Z").unwrap();
        assert_eq!(n.gates().len(), 6);
        assert_eq!(kinds(&n, "g11"), (GateKind::And, vec!["a.1".into(), "b.1".into()], "X.1".into()));
        assert_eq!(kinds(&n, "g21"), (GateKind::And, vec!["c.1".into(), "d.1".into()], "Y.1".into()));
        assert_eq!(kinds(&n, "g31"), (GateKind::Or, vec!["X.1".into(), "Y.1".into()], "Z.1".into()));
        assert_eq!(kinds(&n, "g10"), (GateKind::Or, vec!["a.0".into(), "b.0".into()], "X.0".into()));
        assert_eq!(kinds(&n, "g20"), (GateKind::Or, vec!["c.0".into(), "d.0".into()], "Y.0".into()));
        assert_eq!(kinds(&n, "g30"), (GateKind::And, vec!["X.0".into(), "Y.0".into()], "Z.0".into()));
        for m in 0..16u64 {
            let want = (m >> 3 & 1 == 1 && m >> 2 & 1 == 1) || (m >> 1 & 1 == 1 && m & 1 == 1);
            assert_eq!(eval_codeword(&n, m, 4), Some(want), "{m}");
        }
    }

    #[test]
    fn single_variable_is_two_buffers() {
        let n = drcl_translate(&parse_expression("a").unwrap(), "Z").unwrap();
        assert_eq!(n.gates().len(), 2);
        assert!(n.gates().iter().all(|g| g.kind == GateKind::Buf));
        assert_eq!(eval_codeword(&n, 0, 1), Some(false));
        assert_eq!(eval_codeword(&n, 1, 1), Some(true));
    }

    #[test]
    fn names_avoid_variables() {
        let e = parse_expression("xy + zw + {X}{Y}").unwrap();
        let n = drcl_translate(&e, "Z").unwrap();
        assert!(n.find_net("W.1").is_some());
        assert!(n.find_net("X.1").is_none() || n.inputs().iter().any(|p| p.name == "X"));
    }

    #[test]
    fn constants() {
        let zero = BooleanFunction::from_spec(2, [], []).unwrap();
        let one = BooleanFunction::from_spec(2, [0, 1, 2, 3], []).unwrap();
        for (f, want) in [(zero, false), (one, true)] {
            let n = drcl_from_function(&f, "Z").unwrap();
            for m in 0..4 {
                assert_eq!(eval_codeword(&n, m, 2), Some(want));
            }
        }
    }

    #[test]
    fn matches_random_three_variable_functions() {
        for seed in 0u64..256 {
            let on: Vec<u64> = (0..8).filter(|m| seed >> m & 1 == 1).collect();
            let f = BooleanFunction::from_spec(3, on, []).unwrap();
            let n = drcl_from_function(&f, "Z").unwrap();
            for m in 0..8 {
                assert_eq!(eval_codeword(&n, m, 3), f.value(m), "seed {seed} minterm {m}");
            }
        }
    }
}
