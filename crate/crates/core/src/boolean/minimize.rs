//! Two-level minimization: Quine-McCluskey prime generation followed by an
//! exact minimum cover (fewest terms, then fewest literals).

use std::collections::BTreeSet;

use super::function::BooleanFunction;
use super::sop::SopExpression;
use super::term::ProductTerm;

/// Which set of the function a cover describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    On,
    Off,
}

/// Implicant in MSB-first minterm space: `mask` bits are eliminated variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Implicant {
    value: u64,
    mask: u64,
}

impl Implicant {
    fn covers(&self, minterm: u64) -> bool {
        minterm & !self.mask == self.value
    }

    fn to_term(self, n: usize) -> ProductTerm {
        let mut pos = 0u64;
        let mut neg = 0u64;
        for var in 0..n {
            let bit = 1u64 << (n - 1 - var);
            if self.mask & bit == 0 {
                if self.value & bit != 0 {
                    pos |= 1 << var;
                } else {
                    neg |= 1 << var;
                }
            }
        }
        ProductTerm::from_masks(pos, neg).expect("implicant literals are consistent")
    }
}

/// Minimum prime cover of the ON-set or the OFF-set; don't-cares may be
/// used by either. Terms come back in presentation order.
pub fn minimize_cover(f: &BooleanFunction, polarity: Polarity) -> SopExpression {
    let n = f.var_count();
    let target: Vec<u64> = match polarity {
        Polarity::On => f.on_set().iter().copied().collect(),
        Polarity::Off => f.off_set().into_iter().collect(),
    };
    let vars = f.var_names().to_vec();
    if target.is_empty() {
        return SopExpression::zero(vars);
    }
    let allowed: BTreeSet<u64> = target.iter().chain(f.dc_set().iter()).copied().collect();
    let primes = prime_implicants(&allowed);
    let chosen = exact_cover(&primes, &target, n);
    let mut terms: Vec<ProductTerm> = chosen.into_iter().map(|p| p.to_term(n)).collect();
    terms.sort_by(|a, b| a.presentation_cmp(b));
    SopExpression::from_terms(vars, terms)
}

fn prime_implicants(minterms: &BTreeSet<u64>) -> Vec<Implicant> {
    let mut current: BTreeSet<Implicant> = minterms.iter().map(|&m| Implicant { value: m, mask: 0 }).collect();
    let mut primes = BTreeSet::new();
    while !current.is_empty() {
        let list: Vec<Implicant> = current.iter().copied().collect();
        let mut merged = vec![false; list.len()];
        let mut next = BTreeSet::new();
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let (a, b) = (list[i], list[j]);
                if a.mask != b.mask {
                    continue;
                }
                let diff = a.value ^ b.value;
                if diff.count_ones() == 1 {
                    merged[i] = true;
                    merged[j] = true;
                    next.insert(Implicant {
                        value: a.value & !diff,
                        mask: a.mask | diff,
                    });
                }
            }
        }
        primes.extend(list.iter().zip(&merged).filter(|(_, &m)| !m).map(|(p, _)| *p));
        current = next;
    }
    primes.into_iter().collect()
}

/// Cost ordering: term count first, literal count second.
type Cost = (usize, usize);

fn exact_cover(primes: &[Implicant], target: &[u64], n: usize) -> Vec<Implicant> {
    let literals = |p: &Implicant| n - p.mask.count_ones() as usize;
    // rows: which primes cover each target minterm
    let rows: Vec<Vec<usize>> = target
        .iter()
        .map(|&m| (0..primes.len()).filter(|&i| primes[i].covers(m)).collect())
        .collect();
    let prime_lits: Vec<usize> = primes.iter().map(literals).collect();

    let mut best: Option<(Cost, Vec<usize>)> = None;
    let mut chosen = Vec::new();
    let covered = vec![false; target.len()];
    search(&rows, &prime_lits, covered, &mut chosen, (0, 0), &mut best);
    let (_, picks) = best.expect("every minterm is covered by some prime");
    picks.into_iter().map(|i| primes[i]).collect()
}

fn search(
    rows: &[Vec<usize>],
    prime_lits: &[usize],
    covered: Vec<bool>,
    chosen: &mut Vec<usize>,
    cost: Cost,
    best: &mut Option<(Cost, Vec<usize>)>,
) {
    if let Some((b, _)) = best {
        if cost >= *b {
            return;
        }
    }
    // Most constrained uncovered minterm.
    let pick = rows
        .iter()
        .enumerate()
        .filter(|(i, _)| !covered[*i])
        .min_by_key(|(_, r)| r.len());
    let Some((_, candidates)) = pick else {
        *best = Some((cost, chosen.clone()));
        return;
    };
    // Lower bound: one more term is unavoidable.
    if let Some((b, _)) = best {
        if (cost.0 + 1, cost.1) >= *b {
            return;
        }
    }
    let mut order = candidates.clone();
    // Prefer primes covering more uncovered minterms, then fewer literals.
    let gain = |p: usize| rows.iter().enumerate().filter(|(i, r)| !covered[*i] && r.contains(&p)).count();
    order.sort_by_key(|&p| (std::cmp::Reverse(gain(p)), prime_lits[p], p));
    for p in order {
        let mut next = covered.clone();
        for (i, r) in rows.iter().enumerate() {
            if r.contains(&p) {
                next[i] = true;
            }
        }
        chosen.push(p);
        search(rows, prime_lits, next, chosen, (cost.0 + 1, cost.1 + prime_lits[p]), best);
        chosen.pop();
    }
}
