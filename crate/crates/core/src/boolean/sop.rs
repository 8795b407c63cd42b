use std::fmt;

use super::function::minterm_to_assignment;
use super::term::{Literal, ProductTerm, MAX_TERM_VARS};
use super::BoolError;

/// Largest universe for exhaustive equivalence checks.
pub const MAX_EQUIVALENCE_VARS: usize = 24;

/// How literals are written.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Notation {
    /// `a`, `a'`
    #[default]
    Literal,
    /// Dual-rail literals `a1`, `a0`; the true rail corresponds to `a`,
    /// the false rail to `a'`.
    Rail,
}

/// One summand of a sum-of-products.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SopNode {
    Term(ProductTerm),
    /// `(k1 + k2 + ...) common`
    Factored {
        common: ProductTerm,
        kernel: Vec<ProductTerm>,
    },
}

impl SopNode {
    fn expand_into(&self, out: &mut Vec<ProductTerm>) {
        match self {
            SopNode::Term(t) => out.push(*t),
            SopNode::Factored { common, kernel } => {
                out.extend(kernel.iter().filter_map(|k| common.and(*k)));
            }
        }
    }

    pub fn literal_count(&self) -> usize {
        match self {
            SopNode::Term(t) => t.len(),
            SopNode::Factored { common, kernel } => common.len() + kernel.iter().map(|k| k.len()).sum::<usize>(),
        }
    }
}

/// A sum of products over a named variable universe, possibly with
/// single-kernel factored summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SopExpression {
    vars: Vec<String>,
    nodes: Vec<SopNode>,
    notation: Notation,
}

impl SopExpression {
    pub fn new(vars: Vec<String>, nodes: Vec<SopNode>) -> Self {
        assert!(vars.len() <= MAX_TERM_VARS, "too many variables");
        SopExpression {
            vars,
            nodes,
            notation: Notation::Literal,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = ProductTerm>>(vars: Vec<String>, terms: I) -> Self {
        Self::new(vars, terms.into_iter().map(SopNode::Term).collect())
    }

    /// The constant-0 expression (no terms).
    pub fn zero(vars: Vec<String>) -> Self {
        Self::new(vars, Vec::new())
    }

    pub fn with_notation(mut self, notation: Notation) -> Self {
        self.notation = notation;
        self
    }

    pub fn notation(&self) -> Notation {
        self.notation
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nodes(&self) -> &[SopNode] {
        &self.nodes
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_flat(&self) -> bool {
        self.nodes.iter().all(|n| matches!(n, SopNode::Term(_)))
    }

    /// Flattened product terms, null conjunctions dropped.
    pub fn terms(&self) -> Vec<ProductTerm> {
        let mut out = Vec::new();
        for n in &self.nodes {
            n.expand_into(&mut out);
        }
        out
    }

    /// Multiplies out every factored node.
    pub fn expand_factored(&self) -> SopExpression {
        SopExpression::from_terms(self.vars.clone(), self.terms()).with_notation(self.notation)
    }

    pub fn literal_count(&self) -> usize {
        self.nodes.iter().map(SopNode::literal_count).sum()
    }

    pub fn eval(&self, assignment: u64) -> bool {
        self.nodes.iter().any(|n| match n {
            SopNode::Term(t) => t.eval(assignment),
            SopNode::Factored { common, kernel } => common.eval(assignment) && kernel.iter().any(|k| k.eval(assignment)),
        })
    }

    /// Evaluates at an MSB-first minterm index of this expression's universe.
    pub fn eval_minterm(&self, minterm: u64) -> bool {
        self.eval(minterm_to_assignment(minterm, self.vars.len()))
    }

    /// Evaluates a rail expression on per-variable rail states where a
    /// variable may still be a spacer (both rails low). `Some(true)` is the
    /// `x(1)` rail high, `Some(false)` the `x(0)` rail high.
    pub fn eval_rails(&self, rails: &[Option<bool>]) -> bool {
        let lit_high = |l: Literal| rails.get(l.var).copied().flatten() == Some(l.positive);
        let term_high = |t: &ProductTerm| t.literals().all(lit_high);
        self.nodes.iter().any(|n| match n {
            SopNode::Term(t) => term_high(t),
            SopNode::Factored { common, kernel } => term_high(common) && kernel.iter().any(term_high),
        })
    }

    /// Exhaustive truth-table comparison.
    pub fn equivalent(&self, other: &SopExpression) -> Result<bool, BoolError> {
        if self.vars != other.vars {
            return Err(BoolError::UniverseMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        let n = self.vars.len();
        if n > MAX_EQUIVALENCE_VARS {
            return Err(BoolError::TooManyVars(n));
        }
        Ok((0..1u64 << n).all(|a| self.eval(a) == other.eval(a)))
    }

    /// Re-expresses the terms over a larger universe that contains every
    /// current variable.
    pub fn widen(&self, vars: &[String]) -> Result<SopExpression, BoolError> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter().position(|w| w == v).ok_or_else(|| BoolError::UniverseMismatch {
                    left: self.vars.clone(),
                    right: vars.to_vec(),
                })
            })
            .collect::<Result<_, _>>()?;
        let remap = |t: &ProductTerm| {
            ProductTerm::from_literals(t.literals().map(|l| Literal::new(map[l.var], l.positive)))
                .expect("remapping preserves consistency")
        };
        let nodes = self
            .nodes
            .iter()
            .map(|n| match n {
                SopNode::Term(t) => SopNode::Term(remap(t)),
                SopNode::Factored { common, kernel } => SopNode::Factored {
                    common: remap(common),
                    kernel: kernel.iter().map(remap).collect(),
                },
            })
            .collect();
        Ok(SopExpression::new(vars.to_vec(), nodes).with_notation(self.notation))
    }

    /// Renders a single term with this expression's names and notation.
    pub fn term_to_string(&self, t: &ProductTerm) -> String {
        let mut s = String::new();
        write_term(&mut s, &self.vars, self.notation, t, RailStyle::Compact);
        s
    }

    /// Renders rails as `a(1)` / `a(0)` instead of `a1` / `a0`.
    pub fn to_parenthesized_rails(&self) -> String {
        self.render(RailStyle::Parenthesized)
    }

    fn render(&self, style: RailStyle) -> String {
        if self.nodes.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            match n {
                SopNode::Term(t) => write_term(&mut s, &self.vars, self.notation, t, style),
                SopNode::Factored { common, kernel } => {
                    let (open, close) = match style {
                        RailStyle::Compact => ('(', ')'),
                        RailStyle::Parenthesized => ('[', ']'),
                    };
                    s.push(open);
                    for (j, k) in kernel.iter().enumerate() {
                        if j > 0 {
                            s.push_str(" + ");
                        }
                        write_term(&mut s, &self.vars, self.notation, k, style);
                    }
                    s.push(close);
                    if !common.is_tautology() {
                        write_term(&mut s, &self.vars, self.notation, common, style);
                    }
                }
            }
        }
        s
    }
}

#[derive(Clone, Copy)]
enum RailStyle {
    Compact,
    Parenthesized,
}

fn write_term(s: &mut String, vars: &[String], notation: Notation, t: &ProductTerm, style: RailStyle) {
    if t.is_tautology() {
        s.push('1');
        return;
    }
    for l in t.literals() {
        let name = &vars[l.var];
        if name.len() == 1 {
            s.push_str(name);
        } else {
            s.push('{');
            s.push_str(name);
            s.push('}');
        }
        match (notation, style) {
            (Notation::Literal, _) => {
                if !l.positive {
                    s.push('\'');
                }
            }
            (Notation::Rail, RailStyle::Compact) => s.push(if l.positive { '1' } else { '0' }),
            (Notation::Rail, RailStyle::Parenthesized) => s.push_str(if l.positive { "(1)" } else { "(0)" }),
        }
    }
}

impl fmt::Display for SopExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RailStyle::Compact))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::parse_expression;

    #[test]
    fn renders_both_notations() {
        let e = parse_expression("(a' + b')c + c'd").unwrap();
        assert_eq!(e.to_string(), "(a' + b')c + c'd");
        let r = e.clone().with_notation(Notation::Rail);
        assert_eq!(r.to_string(), "(a0 + b0)c1 + c0d1");
        assert_eq!(r.to_parenthesized_rails(), "[a(0) + b(0)]c(1) + c(0)d(1)");
        assert_eq!(e.literal_count(), 5);
    }

    #[test]
    fn expansion_matches_truth_table() {
        let e = parse_expression("c(a+b) + dc'").unwrap();
        let flat = e.expand_factored();
        assert_eq!(flat.to_string(), "ac + bc + c'd");
        assert!(e.equivalent(&flat).unwrap());
        assert_eq!(flat.expand_factored(), flat);
    }

    #[test]
    fn equivalence_rejects_mismatched_universe() {
        let a = parse_expression("a").unwrap();
        let na = parse_expression("a'").unwrap();
        assert!(!a.equivalent(&na).unwrap());
        let b = parse_expression("b").unwrap();
        assert!(matches!(a.equivalent(&b), Err(BoolError::UniverseMismatch { .. })));
    }

    #[test]
    fn rail_evaluation_with_spacers() {
        let e = parse_expression("a1b1 + c1d1").unwrap();
        // a, b valid 1; c, d still spacer
        assert!(e.eval_rails(&[Some(true), Some(true), None, None]));
        assert!(!e.eval_rails(&[Some(true), None, None, Some(true)]));
    }

    #[test]
    fn constant_rendering() {
        let z = SopExpression::zero(vec!["a".into()]);
        assert_eq!(z.to_string(), "0");
        let one = SopExpression::from_terms(vec!["a".into()], [ProductTerm::TAUTOLOGY]);
        assert_eq!(one.to_string(), "1");
    }
}
