//! Boolean functions, two-level covers, single-kernel factoring and
//! disjoint sum-of-products algebra.

mod dsop;
mod dual_rail;
mod factor;
mod function;
mod minimize;
mod parse;
mod sop;
mod term;

use thiserror::Error;

pub use dsop::{is_dsop, sop_to_dsop, terms_disjoint, DsopVerdict};
pub use dual_rail::{de_morgan_dual, dual_rail_encode, DualRailExpression, EncodeMode};
pub use factor::factor_single_kernel;
pub use function::{default_names, minterm_to_assignment, minterm_var, BooleanFunction, MAX_FUNCTION_VARS};
pub use minimize::{minimize_cover, Polarity};
pub use parse::{parse_expression, parse_expression_in};
pub use sop::{Notation, SopExpression, SopNode, MAX_EQUIVALENCE_VARS};
pub use term::{Literal, ProductTerm, MAX_TERM_VARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoolError {
    #[error("variable count {0} is outside 1..={max}", max = MAX_FUNCTION_VARS)]
    VarCount(usize),
    #[error("minterm {minterm} is out of range (limit {limit})")]
    MintermOutOfRange { minterm: u64, limit: u64 },
    #[error("minterm {0} is in both the ON-set and the don't-care set")]
    OverlappingSets(u64),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable universes differ: {left:?} vs {right:?}")]
    UniverseMismatch { left: Vec<String>, right: Vec<String> },
    #[error("{0} variables is too many for exhaustive comparison")]
    TooManyVars(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("column {column}: {message}")]
    Expression { column: usize, message: String },
    #[error("expression mixes single-rail and dual-rail literals")]
    MixedNotation,
}

/// Exhaustive comparison of two expressions over the same universe.
pub fn equivalent(e1: &SopExpression, e2: &SopExpression) -> Result<bool, BoolError> {
    e1.equivalent(e2)
}
