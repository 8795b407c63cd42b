//! Product terms (cubes) over up to 64 variables.

use std::cmp::Ordering;
use std::fmt;

/// Maximum number of variables a [`ProductTerm`] can mention.
pub const MAX_TERM_VARS: usize = 64;

/// A single literal: variable index plus polarity.
///
/// In rail notation a positive literal `x` is the true rail `x(1)` and a
/// negative literal `x'` is the false rail `x(0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn new(var: usize, positive: bool) -> Self {
        assert!(var < MAX_TERM_VARS, "variable index {var} out of range");
        Literal { var, positive }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }
}

/// A conjunction of literals. No variable appears with both polarities;
/// the null conjunction is represented by `None` wherever it can arise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ProductTerm {
    pos: u64,
    neg: u64,
}

impl ProductTerm {
    /// The empty conjunction (constant 1).
    pub const TAUTOLOGY: ProductTerm = ProductTerm { pos: 0, neg: 0 };

    pub fn from_literal(lit: Literal) -> Self {
        let bit = 1u64 << lit.var;
        if lit.positive {
            ProductTerm { pos: bit, neg: 0 }
        } else {
            ProductTerm { pos: 0, neg: bit }
        }
    }

    /// Builds a term from literals; `None` if the literals contradict.
    pub fn from_literals<I: IntoIterator<Item = Literal>>(lits: I) -> Option<Self> {
        lits.into_iter()
            .try_fold(Self::TAUTOLOGY, |t, l| t.and(Self::from_literal(l)))
    }

    pub(crate) fn from_masks(pos: u64, neg: u64) -> Option<Self> {
        (pos & neg == 0).then_some(ProductTerm { pos, neg })
    }

    pub fn positive_mask(&self) -> u64 {
        self.pos
    }

    pub fn negative_mask(&self) -> u64 {
        self.neg
    }

    /// Variables mentioned by the term.
    pub fn support(&self) -> u64 {
        self.pos | self.neg
    }

    /// Conjunction; `None` is the null term.
    pub fn and(self, other: ProductTerm) -> Option<ProductTerm> {
        Self::from_masks(self.pos | other.pos, self.neg | other.neg)
    }

    /// True iff the conjunction of the two terms is null.
    pub fn is_disjoint(&self, other: &ProductTerm) -> bool {
        (self.pos & other.neg) | (self.neg & other.pos) != 0
    }

    pub fn len(&self) -> usize {
        self.support().count_ones() as usize
    }

    /// No literals; same as [`ProductTerm::is_tautology`].
    pub fn is_empty(&self) -> bool {
        self.is_tautology()
    }

    pub fn is_tautology(&self) -> bool {
        self.support() == 0
    }

    pub fn contains(&self, lit: Literal) -> bool {
        let bit = 1u64 << lit.var;
        if lit.positive {
            self.pos & bit != 0
        } else {
            self.neg & bit != 0
        }
    }

    /// True iff every minterm of `other` is a minterm of `self`.
    pub fn subsumes(&self, other: &ProductTerm) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }

    /// Literals shared by both terms.
    pub fn intersect_literals(&self, other: &ProductTerm) -> ProductTerm {
        ProductTerm {
            pos: self.pos & other.pos,
            neg: self.neg & other.neg,
        }
    }

    /// Literals of `self` not present in `other`.
    pub fn without(&self, other: &ProductTerm) -> ProductTerm {
        ProductTerm {
            pos: self.pos & !other.pos,
            neg: self.neg & !other.neg,
        }
    }

    /// Literals in ascending variable order.
    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        let support = self.support();
        (0..MAX_TERM_VARS)
            .filter(move |v| support >> v & 1 == 1)
            .map(move |v| Literal {
                var: v,
                positive: self.pos >> v & 1 == 1,
            })
    }

    /// Evaluates under an assignment whose bit `i` is the value of variable `i`.
    pub fn eval(&self, assignment: u64) -> bool {
        assignment & self.pos == self.pos && assignment & self.neg == 0
    }

    /// Canonical presentation order: per variable, positive literal before
    /// negative literal before absence.
    pub fn presentation_cmp(&self, other: &ProductTerm) -> Ordering {
        let rank = |t: &ProductTerm, v: usize| -> u8 {
            if t.pos >> v & 1 == 1 {
                0
            } else if t.neg >> v & 1 == 1 {
                1
            } else {
                2
            }
        };
        let highest = 64 - (self.support() | other.support()).leading_zeros() as usize;
        (0..highest)
            .map(|v| rank(self, v).cmp(&rank(other, v)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for ProductTerm {
    /// Debug-style rendering with numeric variable names; expressions carry
    /// their own names and render through `SopExpression`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_tautology() {
            return write!(f, "1");
        }
        for l in self.literals() {
            write!(f, "x{}{}", l.var, if l.positive { "" } else { "'" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(lits: &[(usize, bool)]) -> ProductTerm {
        ProductTerm::from_literals(lits.iter().map(|&(v, p)| Literal::new(v, p))).unwrap()
    }

    #[test]
    fn contradiction_is_null() {
        assert!(ProductTerm::from_literals([Literal::new(0, true), Literal::new(0, false)]).is_none());
        assert!(t(&[(0, true)]).and(t(&[(0, false)])).is_none());
    }

    #[test]
    fn disjointness() {
        // a=0 b=1 c=2
        let ac = t(&[(0, true), (2, true)]);
        let bc = t(&[(1, true), (2, true)]);
        let a_bc = t(&[(0, false), (1, true), (2, true)]);
        assert!(!ac.is_disjoint(&bc));
        assert!(ac.is_disjoint(&a_bc));
        assert!(!ac.is_disjoint(&ac));
    }

    #[test]
    fn subsumption_and_eval() {
        let a = t(&[(0, true)]);
        let ab = t(&[(0, true), (1, true)]);
        assert!(a.subsumes(&ab));
        assert!(!ab.subsumes(&a));
        assert!(ProductTerm::TAUTOLOGY.subsumes(&ab));
        assert!(ab.eval(0b11));
        assert!(!ab.eval(0b01));
        assert_eq!(ab.len(), 2);
    }
}
