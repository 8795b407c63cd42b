use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::BoolError;

/// Largest variable count accepted for a truth-table function.
pub const MAX_FUNCTION_VARS: usize = 24;

/// A completely or incompletely specified single-output Boolean function.
///
/// Minterm indices are MSB-first: the first variable is the most significant
/// bit, so for `(a, b, c, d)` minterm 13 is `a b c' d`. The OFF-set is
/// never stored; it is whatever is neither ON nor don't-care.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFunction {
    var_names: Vec<String>,
    on_set: BTreeSet<u64>,
    dc_set: BTreeSet<u64>,
}

impl BooleanFunction {
    /// Builds a function with default variable names `a`, `b`, `c`, ...
    pub fn from_spec<I, J>(var_count: usize, on_set: I, dc_set: J) -> Result<Self, BoolError>
    where
        I: IntoIterator<Item = u64>,
        J: IntoIterator<Item = u64>,
    {
        Self::with_names(default_names(var_count), on_set, dc_set)
    }

    pub fn with_names<I, J>(var_names: Vec<String>, on_set: I, dc_set: J) -> Result<Self, BoolError>
    where
        I: IntoIterator<Item = u64>,
        J: IntoIterator<Item = u64>,
    {
        let n = var_names.len();
        if n == 0 || n > MAX_FUNCTION_VARS {
            return Err(BoolError::VarCount(n));
        }
        check_names(&var_names)?;
        let limit = 1u64 << n;
        let on_set: BTreeSet<u64> = on_set.into_iter().collect();
        let dc_set: BTreeSet<u64> = dc_set.into_iter().collect();
        if let Some(&m) = on_set.iter().chain(dc_set.iter()).find(|&&m| m >= limit) {
            return Err(BoolError::MintermOutOfRange { minterm: m, limit });
        }
        if let Some(&m) = on_set.intersection(&dc_set).next() {
            return Err(BoolError::OverlappingSets(m));
        }
        Ok(BooleanFunction {
            var_names,
            on_set,
            dc_set,
        })
    }

    pub fn var_count(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn on_set(&self) -> &BTreeSet<u64> {
        &self.on_set
    }

    pub fn dc_set(&self) -> &BTreeSet<u64> {
        &self.dc_set
    }

    pub fn off_set(&self) -> BTreeSet<u64> {
        (0..self.minterm_count())
            .filter(|m| !self.on_set.contains(m) && !self.dc_set.contains(m))
            .collect()
    }

    pub fn minterm_count(&self) -> u64 {
        1u64 << self.var_count()
    }

    /// `Some(value)` on care minterms, `None` on don't-cares.
    pub fn value(&self, minterm: u64) -> Option<bool> {
        if self.dc_set.contains(&minterm) {
            None
        } else {
            Some(self.on_set.contains(&minterm))
        }
    }

    pub fn care_minterms(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.minterm_count()).filter(|m| !self.dc_set.contains(m))
    }

    /// The complementary function (ON and OFF swapped, don't-cares kept).
    pub fn complement(&self) -> BooleanFunction {
        BooleanFunction {
            var_names: self.var_names.clone(),
            on_set: self.off_set(),
            dc_set: self.dc_set.clone(),
        }
    }

    /// Value of variable `var` inside `minterm`.
    pub fn var_value(&self, minterm: u64, var: usize) -> bool {
        minterm_var(minterm, var, self.var_count())
    }

    /// Parses the line-oriented function file:
    ///
    /// ```text
    /// vars 4
    /// names a b c d
    /// on 1 2 3 5 6 7 9 10 11 13
    /// dc
    /// ```
    pub fn parse_spec(text: &str) -> Result<Self, BoolError> {
        let mut vars: Option<(usize, usize)> = None;
        let mut names: Option<(Vec<String>, usize)> = None;
        let mut on: Option<Vec<u64>> = None;
        let mut dc: Vec<u64> = Vec::new();
        let err = |line: usize, message: String| BoolError::Parse { line, message };

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let keyword = words.next().unwrap_or_default();
            let rest: Vec<&str> = words.collect();
            let numbers = |rest: &[&str]| -> Result<Vec<u64>, BoolError> {
                rest.iter()
                    .map(|w| {
                        w.parse::<u64>()
                            .map_err(|_| err(line_no, format!("expected a minterm index, found `{w}`")))
                    })
                    .collect()
            };
            match keyword {
                "vars" => {
                    if vars.is_some() {
                        return Err(err(line_no, "duplicate `vars` line".into()));
                    }
                    let [count] = rest.as_slice() else {
                        return Err(err(line_no, "`vars` takes exactly one count".into()));
                    };
                    let n = count
                        .parse::<usize>()
                        .map_err(|_| err(line_no, format!("invalid variable count `{count}`")))?;
                    vars = Some((n, line_no));
                }
                "names" => {
                    if names.is_some() {
                        return Err(err(line_no, "duplicate `names` line".into()));
                    }
                    names = Some((rest.iter().map(|s| s.to_string()).collect(), line_no));
                }
                "on" => {
                    if on.is_some() {
                        return Err(err(line_no, "duplicate `on` line".into()));
                    }
                    on = Some(numbers(&rest)?);
                }
                "dc" => dc.extend(numbers(&rest)?),
                other => return Err(err(line_no, format!("unknown keyword `{other}`"))),
            }
        }

        let last = text.lines().count().max(1);
        let (n, vars_line) = vars.ok_or_else(|| err(last, "missing `vars` line".into()))?;
        let on = on.ok_or_else(|| err(last, "missing `on` line".into()))?;
        let var_names = match names {
            Some((names, line)) => {
                if names.len() != n {
                    return Err(err(
                        line,
                        format!("`names` lists {} names but `vars` is {n}", names.len()),
                    ));
                }
                names
            }
            None => default_names(n),
        };
        BooleanFunction::with_names(var_names, on, dc).map_err(|e| match e {
            BoolError::Parse { .. } => e,
            other => err(vars_line, other.to_string()),
        })
    }

    pub fn to_spec_text(&self) -> String {
        let join = |s: &BTreeSet<u64>| s.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "vars {}", self.var_count());
        let _ = writeln!(out, "names {}", self.var_names.join(" "));
        let _ = writeln!(out, "on {}", join(&self.on_set));
        if !self.dc_set.is_empty() {
            let _ = writeln!(out, "dc {}", join(&self.dc_set));
        }
        out
    }
}

/// Value of variable `var` (MSB-first) in `minterm` over `n` variables.
pub fn minterm_var(minterm: u64, var: usize, n: usize) -> bool {
    minterm >> (n - 1 - var) & 1 == 1
}

/// Converts an MSB-first minterm into a variable-indexed assignment mask.
pub fn minterm_to_assignment(minterm: u64, n: usize) -> u64 {
    (0..n).fold(0, |acc, v| acc | (u64::from(minterm_var(minterm, v, n)) << v))
}

pub fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("x{i}")).collect()
    }
}

fn check_names(names: &[String]) -> Result<(), BoolError> {
    let mut seen = BTreeSet::new();
    for name in names {
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(BoolError::InvalidName(name.clone()));
        }
        if !seen.insert(name.as_str()) {
            return Err(BoolError::DuplicateName(name.clone()));
        }
    }
    Ok(())
}
