//! Disjoint sum-of-products checking and conversion.

use super::sop::SopExpression;
use super::term::{Literal, ProductTerm};

/// Outcome of a disjointness check on the expanded terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DsopVerdict {
    Disjoint,
    /// First overlapping pair in lexicographic index order.
    Overlap {
        first: ProductTerm,
        second: ProductTerm,
        indices: (usize, usize),
    },
}

impl DsopVerdict {
    pub fn is_dsop(&self) -> bool {
        matches!(self, DsopVerdict::Disjoint)
    }
}

/// True iff `t1 ∧ t2` is the null term.
pub fn terms_disjoint(t1: &ProductTerm, t2: &ProductTerm) -> bool {
    t1.is_disjoint(t2)
}

/// Checks pairwise disjointness. Factored nodes are expanded first, so a
/// kernel that overlaps with itself is caught.
pub fn is_dsop(expr: &SopExpression) -> DsopVerdict {
    let terms = expr.terms();
    first_overlap(&terms)
        .map(|(i, j)| DsopVerdict::Overlap {
            first: terms[i],
            second: terms[j],
            indices: (i, j),
        })
        .unwrap_or(DsopVerdict::Disjoint)
}

fn first_overlap(terms: &[ProductTerm]) -> Option<(usize, usize)> {
    (0..terms.len())
        .flat_map(|i| (i + 1..terms.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !terms[i].is_disjoint(&terms[j]))
}

/// Rewrites the expression into a DSOP with the same truth table.
///
/// Pairs are scanned in lexicographic order; the later term of the first
/// overlapping pair is replaced by its disjoint sharp against the earlier
/// one (`ac + bc` becomes `ac + a'bc`). A term contained in an earlier one
/// disappears.
pub fn sop_to_dsop(expr: &SopExpression) -> SopExpression {
    let mut terms = expr.terms();
    while let Some((i, j)) = first_overlap(&terms) {
        let pieces = disjoint_sharp(&terms[j], &terms[i]);
        terms.splice(j..=j, pieces);
    }
    SopExpression::from_terms(expr.vars().to_vec(), terms).with_notation(expr.notation())
}

/// `t # u` as a list of pairwise disjoint terms, each disjoint from `u`.
/// Assumes `t` and `u` overlap.
fn disjoint_sharp(t: &ProductTerm, u: &ProductTerm) -> Vec<ProductTerm> {
    let missing: Vec<Literal> = u.without(t).literals().collect();
    let mut out = Vec::with_capacity(missing.len());
    let mut prefix = *t;
    for lit in missing {
        if let Some(piece) = prefix.and(ProductTerm::from_literal(lit.negated())) {
            out.push(piece);
        }
        prefix = prefix
            .and(ProductTerm::from_literal(lit))
            .expect("literal absent from an overlapping term");
    }
    out
}
