//! Expression syntax.
//!
//! ```text
//! sum     := product ('+' product)*
//! product := factor+                      (juxtaposition, optional '*')
//! factor  := literal | '(' sum ')' | '[' sum ']' | '0' | '1'
//! literal := name ( "'" | '0' | '1' | "(0)" | "(1)" )?
//! name    := letter | '{' identifier '}'
//! ```
//!
//! Single letters juxtapose (`ab'c`); longer names need braces
//! (`{req}{ack}'`). A product with exactly one parenthesized sum of plain
//! products becomes a factored node; anything deeper is multiplied out.

use super::sop::{Notation, SopExpression, SopNode};
use super::term::{Literal, ProductTerm};
use super::BoolError;

#[derive(Debug)]
enum Factor {
    Lit { name: String, positive: bool, rail: bool },
    Group(Vec<Vec<Factor>>),
    Const(bool),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> BoolError {
        BoolError::Expression {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Vec<Vec<Factor>>, BoolError> {
        let mut products = vec![self.product()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            products.push(self.product()?);
        }
        Ok(products)
    }

    fn product(&mut self) -> Result<Vec<Factor>, BoolError> {
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some(b'*') if !factors.is_empty() => {
                    self.pos += 1;
                    continue;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'{' || c == b'(' || c == b'[' || c == b'0' || c == b'1' => {
                    factors.push(self.factor()?)
                }
                _ => break,
            }
        }
        if factors.is_empty() {
            return Err(self.err("expected a product term"));
        }
        Ok(factors)
    }

    fn factor(&mut self) -> Result<Factor, BoolError> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end of expression"))?;
        match c {
            b'(' | b'[' => {
                let close = if c == b'(' { b')' } else { b']' };
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(close) {
                    return Err(self.err(format!("expected `{}`", close as char)));
                }
                self.pos += 1;
                Ok(Factor::Group(inner))
            }
            b'0' | b'1' => {
                self.pos += 1;
                Ok(Factor::Const(c == b'1'))
            }
            _ => self.literal(),
        }
    }

    fn literal(&mut self) -> Result<Factor, BoolError> {
        let name = if self.src[self.pos] == b'{' {
            let start = self.pos + 1;
            let end = self.src[start..]
                .iter()
                .position(|&b| b == b'}')
                .map(|p| start + p)
                .ok_or_else(|| self.err("unterminated `{`"))?;
            let name = std::str::from_utf8(&self.src[start..end]).unwrap_or_default().to_string();
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(self.err(format!("invalid variable name `{name}`")));
            }
            self.pos = end + 1;
            name
        } else {
            let ch = self.src[self.pos] as char;
            self.pos += 1;
            ch.to_string()
        };
        // Suffix binds tightly: no whitespace allowed.
        let rest = &self.src[self.pos..];
        let (positive, rail, used) = match rest {
            [b'(', d @ (b'0' | b'1'), b')', ..] => (*d == b'1', true, 3),
            [d @ (b'0' | b'1'), ..] => (*d == b'1', true, 1),
            [b'\'', ..] => (false, false, 1),
            _ => (true, false, 0),
        };
        self.pos += used;
        if self.src.get(self.pos) == Some(&b'\'') {
            return Err(self.err("repeated or misplaced complement"));
        }
        Ok(Factor::Lit { name, positive, rail })
    }
}

/// Parses an expression; the universe is the set of mentioned variables in
/// alphabetical order.
pub fn parse_expression(text: &str) -> Result<SopExpression, BoolError> {
    let ast = parse_ast(text)?;
    let mut names = Vec::new();
    collect_names(&ast, &mut names);
    names.sort();
    names.dedup();
    build(ast, names)
}

/// Parses an expression over a fixed universe.
pub fn parse_expression_in(text: &str, vars: &[String]) -> Result<SopExpression, BoolError> {
    let ast = parse_ast(text)?;
    let mut names = Vec::new();
    collect_names(&ast, &mut names);
    if let Some(unknown) = names.iter().find(|n| !vars.contains(n)) {
        return Err(BoolError::UnknownVariable(unknown.clone()));
    }
    build(ast, vars.to_vec())
}

fn parse_ast(text: &str) -> Result<Vec<Vec<Factor>>, BoolError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let sum = p.sum()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(sum)
}

fn collect_names(sum: &[Vec<Factor>], out: &mut Vec<String>) {
    for product in sum {
        for f in product {
            match f {
                Factor::Lit { name, .. } => out.push(name.clone()),
                Factor::Group(inner) => collect_names(inner, out),
                Factor::Const(_) => {}
            }
        }
    }
}

fn notation_of(sum: &[Vec<Factor>], seen: &mut Option<bool>) -> Result<(), BoolError> {
    for product in sum {
        for f in product {
            match f {
                Factor::Lit { rail, .. } => match seen {
                    Some(r) if r != rail => return Err(BoolError::MixedNotation),
                    _ => *seen = Some(*rail),
                },
                Factor::Group(inner) => notation_of(inner, seen)?,
                Factor::Const(_) => {}
            }
        }
    }
    Ok(())
}

fn build(ast: Vec<Vec<Factor>>, vars: Vec<String>) -> Result<SopExpression, BoolError> {
    let mut rail = None;
    notation_of(&ast, &mut rail)?;
    let index = |name: &str| vars.iter().position(|v| v == name).expect("collected");
    let mut nodes = Vec::new();
    for product in &ast {
        nodes.extend(product_nodes(product, &index));
    }
    let notation = if rail == Some(true) {
        Notation::Rail
    } else {
        Notation::Literal
    };
    Ok(SopExpression::new(vars, nodes).with_notation(notation))
}

fn product_nodes(product: &[Factor], index: &dyn Fn(&str) -> usize) -> Vec<SopNode> {
    let mut common = Some(ProductTerm::TAUTOLOGY);
    let mut groups = Vec::new();
    for f in product {
        match f {
            Factor::Lit { name, positive, .. } => {
                common = common.and_then(|c| c.and(ProductTerm::from_literal(Literal::new(index(name), *positive))));
            }
            Factor::Const(false) => common = None,
            Factor::Const(true) => {}
            Factor::Group(inner) => groups.push(inner),
        }
    }
    let Some(common) = common else {
        return Vec::new();
    };
    let flat_group = |g: &Vec<Vec<Factor>>| g.iter().all(|p| p.iter().all(|f| !matches!(f, Factor::Group(_))));
    match groups.as_slice() {
        [] => vec![SopNode::Term(common)],
        [g] if flat_group(g) => {
            let kernel = sum_terms(g, index);
            match kernel.len() {
                0 => Vec::new(),
                1 => common.and(kernel[0]).map(SopNode::Term).into_iter().collect(),
                _ => vec![SopNode::Factored { common, kernel }],
            }
        }
        _ => {
            let mut terms = vec![common];
            for g in groups {
                let g_terms = sum_terms(g, index);
                terms = terms
                    .iter()
                    .flat_map(|t| g_terms.iter().filter_map(move |u| t.and(*u)))
                    .collect();
            }
            terms.into_iter().map(SopNode::Term).collect()
        }
    }
}

fn sum_terms(sum: &[Vec<Factor>], index: &dyn Fn(&str) -> usize) -> Vec<ProductTerm> {
    let mut out = Vec::new();
    for product in sum {
        for node in product_nodes(product, index) {
            match node {
                SopNode::Term(t) => out.push(t),
                SopNode::Factored { common, kernel } => out.extend(kernel.iter().filter_map(|k| common.and(*k))),
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factored_and_flat_forms() {
        let e = parse_expression("c(a+b)+dc'").unwrap();
        assert_eq!(e.vars(), ["a", "b", "c", "d"]);
        assert_eq!(e.nodes().len(), 2);
        assert!(matches!(e.nodes()[0], SopNode::Factored { .. }));
        assert_eq!(e.to_string(), "(a + b)c + c'd");
    }

    #[test]
    fn rail_literals_in_both_spellings() {
        let a = parse_expression("[a(0)+b(0)]c(1) + c(0)d(1)").unwrap();
        let b = parse_expression("(a0 + b0)c1 + c0d1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.notation(), Notation::Rail);
    }

    #[test]
    fn product_of_sums_is_multiplied_out() {
        let e = parse_expression("(a + c')(b + c')(c + d')").unwrap();
        assert!(e.is_flat());
        let reference = parse_expression("abc + c'd'").unwrap();
        assert!(e.equivalent(&reference).unwrap());
    }

    #[test]
    fn braces_and_constants() {
        let e = parse_expression("{req}{ack}' + 0").unwrap();
        assert_eq!(e.vars(), ["ack", "req"]);
        assert_eq!(e.to_string(), "{ack}'{req}");
        let one = parse_expression("1").unwrap();
        assert_eq!(one.terms(), vec![ProductTerm::TAUTOLOGY]);
        assert_eq!(parse_expression("aa'").unwrap().terms(), vec![]);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expression("a + "), Err(BoolError::Expression { .. })));
        assert!(matches!(parse_expression("(a + b"), Err(BoolError::Expression { .. })));
        assert!(matches!(parse_expression("a1 + b'"), Err(BoolError::MixedNotation)));
        assert!(matches!(parse_expression("a''"), Err(BoolError::Expression { .. })));
        assert!(matches!(
            parse_expression_in("a + z", &["a".to_string()]),
            Err(BoolError::UnknownVariable(_))
        ));
    }
}
