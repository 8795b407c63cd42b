//! Generators from Boolean functions to dual-rail netlists.
//!
//! | method    | function block                           | default CD |
//! |-----------|------------------------------------------|------------|
//! | `drcl`    | gate-by-gate De Morgan pair of the cover | none       |
//! | `method1` | factored NAND-NAND, both rails           | or         |
//! | `dsop`    | two-level AND-OR over disjoint covers    | or         |
//! | `dims`    | one C-element per care minterm           | none       |

mod common;
mod completion;
mod decompose;
mod dims;
mod drcl;
mod dsop;
mod method1;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::boolean::{BoolError, BooleanFunction};
use crate::netlist::{GateKind, Netlist, NetlistError};

pub use completion::{build_completion_detector, CdVariant};
pub use decompose::{decompose_netlist, nand_decompose_naive};
pub use dims::{dims_synthesize, MAX_DIMS_VARS};
pub use drcl::{drcl_from_function, drcl_translate};
pub use dsop::synthesize_dsop;
pub use method1::synthesize_method1;

/// Net name of the completion-detection output.
pub const CD_NET: &str = "D";
/// Default dual-rail output port name.
pub const DEFAULT_OUTPUT: &str = "F";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SynthError {
    #[error(transparent)]
    Netlist(#[from] NetlistError),
    #[error(transparent)]
    Bool(#[from] BoolError),
    #[error("`--cd nor` is only available with `--method method1`")]
    NorWithoutMethod1,
    #[error("dims supports at most {max} variables, got {got}")]
    TooManyVars { got: usize, max: usize },
    #[error("gate `{0}` is not a NAND")]
    NotNand(String),
    #[error("max fan-in must be at least 2, got {0}")]
    MaxFaninTooSmall(usize),
    #[error("`--decompose naive` needs `--max-fanin`")]
    DecomposeWithoutFanin,
    #[error("no gate `{0}`")]
    UnknownGate(String),
    #[error("tap net `{0}` is not in the netlist")]
    UnknownTap(String),
    #[error("netlist already has a completion output")]
    CdExists,
    #[error("completion detection needs at least one dual-rail input and one dual-rail output")]
    NoDualRailPorts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Drcl,
    Method1,
    Dsop,
    Dims,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Drcl, Method::Method1, Method::Dsop, Method::Dims];

    pub fn name(self) -> &'static str {
        match self {
            Method::Drcl => "drcl",
            Method::Method1 => "method1",
            Method::Dsop => "dsop",
            Method::Dims => "dims",
        }
    }

    pub fn default_cd(self) -> Option<CdVariant> {
        match self {
            Method::Method1 | Method::Dsop => Some(CdVariant::Or),
            Method::Drcl | Method::Dims => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}` (expected drcl, method1, dsop or dims)"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Decompose {
    #[default]
    None,
    Naive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisOptions {
    pub method: Method,
    /// `None` picks [`Method::default_cd`]; `Some(None)` disables CD.
    pub cd_variant: Option<Option<CdVariant>>,
    /// `None` is unlimited.
    pub max_fanin: Option<usize>,
    pub decompose: Decompose,
    pub output_name: String,
}

impl SynthesisOptions {
    pub fn new(method: Method) -> Self {
        SynthesisOptions {
            method,
            cd_variant: None,
            max_fanin: None,
            decompose: Decompose::None,
            output_name: DEFAULT_OUTPUT.to_string(),
        }
    }

    pub fn with_cd(mut self, cd: Option<CdVariant>) -> Self {
        self.cd_variant = Some(cd);
        self
    }

    pub fn effective_cd(&self) -> Option<CdVariant> {
        self.cd_variant.unwrap_or_else(|| self.method.default_cd())
    }

    pub fn check(&self) -> Result<(), SynthError> {
        if self.effective_cd() == Some(CdVariant::Nor) && self.method != Method::Method1 {
            return Err(SynthError::NorWithoutMethod1);
        }
        if let Some(k) = self.max_fanin {
            if k < 2 {
                return Err(SynthError::MaxFaninTooSmall(k));
            }
        }
        if self.decompose == Decompose::Naive && self.max_fanin.is_none() {
            return Err(SynthError::DecomposeWithoutFanin);
        }
        Ok(())
    }
}

/// Runs the selected generator, adds completion detection and applies
/// decomposition.
pub fn synthesize(f: &BooleanFunction, opts: &SynthesisOptions) -> Result<Netlist, SynthError> {
    opts.check()?;
    let cd = opts.effective_cd();
    let out = opts.output_name.as_str();
    let mut n = match opts.method {
        Method::Method1 => synthesize_method1(f, cd, out)?,
        Method::Dsop => synthesize_dsop(f, cd.is_some(), out)?,
        Method::Drcl => {
            let n = drcl_from_function(f, out)?;
            match cd {
                Some(v) => build_completion_detector(&n, &[], v)?,
                None => n,
            }
        }
        Method::Dims => {
            let n = dims_synthesize(f, out)?;
            match cd {
                Some(v) => build_completion_detector(&n, &[], v)?,
                None => n,
            }
        }
    };
    if let (Decompose::Naive, Some(k)) = (opts.decompose, opts.max_fanin) {
        decompose_netlist(&mut n, k)?;
    }
    Ok(n)
}

/// One line per gate kind, e.g. `AND 2, OR 1`.
pub fn gate_summary(n: &Netlist) -> String {
    let parts: Vec<String> = n
        .gate_count_by_kind()
        .into_iter()
        .map(|(k, c)| format!("{k} {c}"))
        .collect();
    format!("{} gates ({})", n.gates().len(), parts.join(", "))
}

/// Fan-in of the C-element driving the completion output, if present.
pub fn cd_fan_in(n: &Netlist) -> Option<usize> {
    let d = n.cd_output()?;
    n.driver(d).filter(|g| g.kind == GateKind::C).map(|g| g.inputs.len())
}

#[cfg(test)]
mod steady;

#[cfg(test)]
mod tests {
    use super::steady::eval_codeword;
    use super::*;
    use crate::netlist::validate;

    fn f() -> BooleanFunction {
        BooleanFunction::from_spec(4, [1, 2, 3, 5, 6, 7, 9, 10, 11, 13], []).unwrap()
    }

    #[test]
    fn every_method_matches_truth_table() {
        for m in Method::ALL {
            let n = synthesize(&f(), &SynthesisOptions::new(m)).unwrap();
            assert!(validate(&n).iter().all(|d| d.severity != crate::netlist::Severity::Error), "{m}: {:?}", validate(&n));
            for mt in 0..16 {
                assert_eq!(eval_codeword(&n, mt, 4), Some(f().value(mt).unwrap()), "{m} minterm {mt}");
            }
        }
    }

    #[test]
    fn nor_needs_method1() {
        let opts = SynthesisOptions::new(Method::Dsop).with_cd(Some(CdVariant::Nor));
        assert_eq!(synthesize(&f(), &opts), Err(SynthError::NorWithoutMethod1));
    }

    #[test]
    fn decompose_options() {
        let mut opts = SynthesisOptions::new(Method::Method1);
        opts.decompose = Decompose::Naive;
        assert_eq!(synthesize(&f(), &opts), Err(SynthError::DecomposeWithoutFanin));
        opts.max_fanin = Some(2);
        let n = synthesize(&f(), &opts).unwrap();
        assert!(n.gates().iter().filter(|g| g.kind == GateKind::Nand).all(|g| g.inputs.len() <= 2));
        for mt in 0..16 {
            assert_eq!(eval_codeword(&n, mt, 4), f().value(mt));
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("espresso".parse::<Method>().is_err());
    }

    #[test]
    fn dims_of_f_has_sixteen_c_elements() {
        let n = synthesize(&f(), &SynthesisOptions::new(Method::Dims)).unwrap();
        assert_eq!(n.gates().iter().filter(|g| g.kind == GateKind::C).count(), 16);
    }
}
