use super::function::BooleanFunction;
use super::minimize::{minimize_cover, Polarity};
use super::sop::{Notation, SopExpression};
use super::term::ProductTerm;

/// How the false rail is derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EncodeMode {
    /// True rail from the ON-set cover, false rail from the OFF-set cover.
    OnOff,
    /// False rail is the De Morgan dual of the true rail, multiplied out.
    Drcl,
}

/// Pair of rail covers over dual-rail literals `x1` / `x0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualRailExpression {
    pub true_rail: SopExpression,
    pub false_rail: SopExpression,
    /// Don't-care minterms on which both rails evaluate to 1.
    pub overlapping_dont_cares: Vec<u64>,
}

impl DualRailExpression {
    /// Rail values for a complete codeword.
    pub fn eval_minterm(&self, minterm: u64) -> (bool, bool) {
        (self.true_rail.eval_minterm(minterm), self.false_rail.eval_minterm(minterm))
    }
}

pub fn dual_rail_encode(f: &BooleanFunction, mode: EncodeMode) -> DualRailExpression {
    let true_rail = minimize_cover(f, Polarity::On);
    let false_rail = match mode {
        EncodeMode::OnOff => minimize_cover(f, Polarity::Off),
        EncodeMode::Drcl => de_morgan_dual(&true_rail),
    };
    let true_rail = true_rail.with_notation(Notation::Rail);
    let false_rail = false_rail.with_notation(Notation::Rail);
    let overlapping_dont_cares = f
        .dc_set()
        .iter()
        .copied()
        .filter(|&m| true_rail.eval_minterm(m) && false_rail.eval_minterm(m))
        .collect();
    DualRailExpression {
        true_rail,
        false_rail,
        overlapping_dont_cares,
    }
}

/// Complement of a sum of products as a sum of products: the product of
/// complemented-literal sums, multiplied out with null terms, duplicates
/// and absorbed terms removed.
pub fn de_morgan_dual(expr: &SopExpression) -> SopExpression {
    let mut acc = vec![ProductTerm::TAUTOLOGY];
    for t in expr.terms() {
        let sum: Vec<ProductTerm> = t.literals().map(|l| ProductTerm::from_literal(l.negated())).collect();
        let mut next: Vec<ProductTerm> = Vec::new();
        for a in &acc {
            for s in &sum {
                if let Some(p) = a.and(*s) {
                    if !next.contains(&p) {
                        next.push(p);
                    }
                }
            }
        }
        acc = absorb(next);
    }
    SopExpression::from_terms(expr.vars().to_vec(), acc).with_notation(expr.notation())
}

fn absorb(terms: Vec<ProductTerm>) -> Vec<ProductTerm> {
    terms
        .iter()
        .enumerate()
        .filter(|&(i, t)| {
            !terms
                .iter()
                .enumerate()
                .any(|(j, u)| j != i && u.subsumes(t) && (u != t || j < i))
        })
        .map(|(_, t)| *t)
        .collect()
}
