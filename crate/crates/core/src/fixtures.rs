//! Canned circuits and arrival orders used by `adw reproduce` and the
//! acceptance suite.

use crate::analysis::{PhasePlan, Scenario};
use crate::boolean::{parse_expression, BooleanFunction};
use crate::netlist::{GateKind, Netlist};
use crate::synthesis::{build_completion_detector, drcl_translate, nand_decompose_naive, synthesize_method1, CdVariant};

/// F(a,b,c,d) = Σ(1,2,3,5,6,7,9,10,11,13).
pub fn function_f() -> BooleanFunction {
    BooleanFunction::from_spec(4, [1, 2, 3, 5, 6, 7, 9, 10, 11, 13], []).expect("valid minterms")
}

/// Two-input AND, the smallest strongly indicating DIMS example.
pub fn and2() -> BooleanFunction {
    BooleanFunction::from_spec(2, [3], []).expect("valid minterms")
}

/// Z = ab + cd translated gate by gate; no completion detection.
pub fn drcl_ab_cd() -> Netlist {
    let mut n = drcl_translate(&parse_expression("ab + cd").expect("constant expression"), "Z").expect("translation succeeds");
    n.set_name("drcl_ab_cd");
    n
}

/// [`drcl_ab_cd`] with input and output completion detection.
pub fn drcl_ab_cd_with_cd() -> Netlist {
    build_completion_detector(&drcl_ab_cd(), &[], CdVariant::Or).expect("drcl netlist has dual-rail ports")
}

/// F through the factored NAND-NAND flow with its completion detector.
pub fn method1_f(variant: CdVariant) -> Netlist {
    synthesize_method1(&function_f(), Some(variant), "F").expect("synthesis succeeds")
}

/// NAND5(p,q,r,s,t) -> N split at fan-in 4.
pub fn nand5_decomposed() -> Netlist {
    let mut n = Netlist::new("nand5");
    let ins: Vec<_> = ["p", "q", "r", "s", "t"]
        .iter()
        .map(|p| n.add_input_wire(p).expect("distinct ports"))
        .collect();
    let out = n.add_output_wire("N").expect("distinct ports");
    n.add_gate("nand5", GateKind::Nand, &ins, out).expect("fresh gate");
    nand_decompose_naive(&mut n, "nand5", 4, "").expect("NAND wider than 4");
    n
}

/// Single C-element joining two wires.
pub fn c_element_joint() -> Netlist {
    let mut n = Netlist::new("c_joint");
    let a = n.add_input_wire("a").expect("distinct ports");
    let b = n.add_input_wire("b").expect("distinct ports");
    let y = n.add_output_wire("y").expect("distinct ports");
    n.add_gate("c1", GateKind::C, &[a, b], y).expect("fresh gate");
    n
}

/// All-zero codeword; a(0), c(0) arrive first and b(0), d(0) only after
/// the false rail has settled.
pub fn drcl_late_zero_scenario() -> Scenario {
    Scenario {
        label: "a(0), c(0) first; b(0), d(0) late".into(),
        phases: vec![PhasePlan::valid(0b0000).with_schedule([["a", "c"], ["b", "d"]])],
    }
}

/// All-ones codeword; a(1), b(1) arrive first and c(1), d(1) only after Z
/// has settled.
pub fn drcl_late_one_scenario() -> Scenario {
    Scenario {
        label: "a(1), b(1) first; c(1), d(1) late".into(),
        phases: vec![PhasePlan::valid(0b1111).with_schedule([["a", "b"], ["c", "d"]])],
    }
}

/// All inputs rise, then t falls first and p, q, r, s after N has settled.
pub fn nand5_t_first_scenario() -> Scenario {
    Scenario {
        label: "all high, then t low first".into(),
        phases: vec![
            PhasePlan::valid(0b11111),
            PhasePlan::rtz().with_schedule([vec!["t"], vec!["p", "q", "r", "s"]]),
        ],
    }
}

/// The two disjoint forms accepted for the true rail of F.
pub const F_TRUE_DSOPS: [&str; 2] = ["a(0)b(1)c(1) + b(0)c(1) + c(0)d(1)", "a(0)c(1) + a(1)b(0)c(1) + c(0)d(1)"];

/// The factored true rail of F whose kernel is not disjoint.
pub const F_TRUE_FACTORED: &str = "[a(0) + b(0)]c(1) + c(0)d(1)";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::validate;

    #[test]
    fn fixtures_validate() {
        for n in [
            drcl_ab_cd(),
            drcl_ab_cd_with_cd(),
            method1_f(CdVariant::Or),
            method1_f(CdVariant::Nor),
            nand5_decomposed(),
            c_element_joint(),
        ] {
            assert!(validate(&n).is_empty(), "{}: {:?}", n.name(), validate(&n));
        }
    }

    #[test]
    fn nand5_shape() {
        let n = nand5_decomposed();
        let names: Vec<&str> = n.gates().iter().map(|g| g.id.as_str()).collect();
        assert_eq!(names, ["m1", "inv1", "m2"]);
    }
}
