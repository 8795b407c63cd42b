//! Two-level AND-OR dual-rail logic over disjoint covers. At most one
//! product per rail is high for any codeword, so every OR-join sees at most
//! one rising input.

use crate::boolean::{minimize_cover, sop_to_dsop, BooleanFunction, Polarity, ProductTerm};
use crate::netlist::{GateKind, NetId, Netlist};

use super::common::RailBuilder;
use super::completion::{build_completion_detector, CdVariant};
use super::SynthError;

fn rail_network(b: &mut RailBuilder, terms: &[ProductTerm], prefix: &str, join: &str, out: NetId) -> Result<(), SynthError> {
    if terms.is_empty() {
        return b.tie_low(out);
    }
    if terms.iter().any(ProductTerm::is_tautology) {
        return b.tie_high(out);
    }
    let mut products = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let rails = b.rails(t);
        if rails.len() == 1 {
            products.push(rails[0]);
            continue;
        }
        let name = b.n.fresh_net_name(&format!("{prefix}{}", i + 1));
        let net = b.n.net(&name);
        b.named_gate(&name, GateKind::And, &rails, net)?;
        products.push(net);
    }
    b.or_join(join, &products, out)
}

/// Builds the rail networks from disjoint ON and OFF covers and, with
/// `with_cd`, the detector `C(cd1..cdk, or2) -> D`.
///
/// A constant rail that must rise is a C-element over per-input arrival
/// ORs, so it still waits for every input.
pub fn synthesize_dsop(f: &BooleanFunction, with_cd: bool, output: &str) -> Result<Netlist, SynthError> {
    let on = sop_to_dsop(&minimize_cover(f, Polarity::On)).terms();
    let off = sop_to_dsop(&minimize_cover(f, Polarity::Off)).terms();
    let mut b = RailBuilder::new("dsop", f.var_names(), output, "d")?;
    let (out0, out1) = (b.out0, b.out1);
    rail_network(&mut b, &on, "t", "join1", out1)?;
    rail_network(&mut b, &off, "f", "join0", out0)?;
    let n = b.finish();
    if with_cd {
        build_completion_detector(&n, &[], CdVariant::Or)
    } else {
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::{terms_disjoint, SopExpression};
    use crate::synthesis::cd_fan_in;
    use crate::synthesis::steady::eval_codeword;

    fn f() -> BooleanFunction {
        BooleanFunction::from_spec(4, [1, 2, 3, 5, 6, 7, 9, 10, 11, 13], []).unwrap()
    }

    /// Product term realized by a net: its AND inputs, or the single rail.
    fn product_of(n: &Netlist, net: NetId) -> ProductTerm {
        let vars: Vec<String> = n.inputs().iter().map(|p| p.name.clone()).collect();
        let lit = |id: NetId| {
            let name = n.net_name(id);
            let (v, r) = name.rsplit_once('.').unwrap();
            crate::boolean::Literal::new(vars.iter().position(|x| x == v).unwrap(), r == "1")
        };
        match n.driver(net) {
            Some(g) if g.kind == GateKind::And => ProductTerm::from_literals(g.inputs.iter().map(|&i| lit(i))).unwrap(),
            _ => ProductTerm::from_literal(lit(net)),
        }
    }

    #[test]
    fn joins_have_disjoint_products() {
        let n = synthesize_dsop(&f(), true, "F").unwrap();
        let mut joins = 0;
        for g in n.gates().iter().filter(|g| g.id.starts_with("join")) {
            joins += 1;
            let terms: Vec<ProductTerm> = g.inputs.iter().map(|&i| product_of(&n, i)).collect();
            for i in 0..terms.len() {
                for j in i + 1..terms.len() {
                    assert!(terms_disjoint(&terms[i], &terms[j]), "{}: {i} {j}", g.id);
                }
            }
        }
        assert_eq!(joins, 2);
        assert_eq!(cd_fan_in(&n), Some(5));
    }

    #[test]
    fn true_rail_is_equivalent_to_f() {
        let n = synthesize_dsop(&f(), false, "F").unwrap();
        let join = n.driver(n.find_net("F.1").unwrap()).unwrap();
        let terms: Vec<ProductTerm> = join.inputs.iter().map(|&i| product_of(&n, i)).collect();
        let expr = SopExpression::from_terms(f().var_names().to_vec(), terms);
        for m in 0..16 {
            assert_eq!(expr.eval_minterm(m), f().value(m).unwrap());
        }
    }

    #[test]
    fn truth_tables_and_constants() {
        for seed in 0u64..256 {
            let on: Vec<u64> = (0..8).filter(|m| seed >> m & 1 == 1).collect();
            let f = BooleanFunction::from_spec(3, on, []).unwrap();
            let n = synthesize_dsop(&f, true, "F").unwrap();
            for m in 0..8 {
                assert_eq!(eval_codeword(&n, m, 3), f.value(m), "seed {seed} minterm {m}");
            }
        }
    }
}
