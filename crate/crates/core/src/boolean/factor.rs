use super::sop::{SopExpression, SopNode};
use super::term::{Literal, ProductTerm, MAX_TERM_VARS};

/// Extracts the single common-literal kernel with the largest literal
/// saving. Expressions that are already factored, or have no saving, come
/// back unchanged.
pub fn factor_single_kernel(expr: &SopExpression) -> SopExpression {
    if !expr.is_flat() {
        return expr.clone();
    }
    let terms = expr.terms();
    // (saving, group indices, common cube)
    let mut best: Option<(usize, Vec<usize>, ProductTerm)> = None;
    for var in 0..MAX_TERM_VARS.min(expr.vars().len()) {
        for positive in [true, false] {
            let lit = Literal::new(var, positive);
            let group: Vec<usize> = (0..terms.len()).filter(|&i| terms[i].contains(lit)).collect();
            if group.len() < 2 {
                continue;
            }
            let common = group
                .iter()
                .skip(1)
                .fold(terms[group[0]], |acc, &i| acc.intersect_literals(&terms[i]));
            // A term equal to the common cube would leave an empty kernel entry.
            if group.iter().any(|&i| terms[i] == common) {
                continue;
            }
            let saving = (group.len() - 1) * common.len();
            if best.as_ref().is_none_or(|(s, _, _)| saving > *s) {
                best = Some((saving, group, common));
            }
        }
    }
    let Some((_, group, common)) = best else {
        return expr.clone();
    };
    let kernel: Vec<ProductTerm> = group.iter().map(|&i| terms[i].without(&common)).collect();
    let mut nodes = Vec::with_capacity(terms.len() - group.len() + 1);
    for (i, t) in terms.iter().enumerate() {
        if i == group[0] {
            nodes.push(SopNode::Factored {
                common,
                kernel: kernel.clone(),
            });
        } else if !group.contains(&i) {
            nodes.push(SopNode::Term(*t));
        }
    }
    SopExpression::new(expr.vars().to_vec(), nodes).with_notation(expr.notation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::parse_expression;

    #[test]
    fn extracts_common_literal() {
        let e = parse_expression("a'c + b'c + c'd").unwrap();
        let f = factor_single_kernel(&e);
        assert_eq!(f.to_string(), "(a' + b')c + c'd");
        assert_eq!(f.literal_count(), 5);
        assert!(f.equivalent(&e).unwrap());
        assert_eq!(f.expand_factored().to_string(), e.to_string());
    }

    #[test]
    fn leaves_unfactorable_input() {
        let e = parse_expression("abc + c'd'").unwrap();
        assert_eq!(factor_single_kernel(&e), e);
        let single = parse_expression("ab").unwrap();
        assert_eq!(factor_single_kernel(&single), single);
    }

    #[test]
    fn prefers_larger_saving() {
        // abx + aby + c: common cube ab saves 2 literals
        let e = parse_expression("abc + abd + e").unwrap();
        let f = factor_single_kernel(&e);
        assert_eq!(f.to_string(), "(c + d)ab + e");
        assert!(f.equivalent(&e).unwrap());
    }

    #[test]
    fn skips_absorbing_groups() {
        let e = parse_expression("a + ab").unwrap();
        assert_eq!(factor_single_kernel(&e), e);
    }
}
