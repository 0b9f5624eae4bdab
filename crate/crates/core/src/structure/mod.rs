//! Incidence structures: equations over the variables that appear in them.
//!
//! A [`Structure`] records only which variables appear in which equation.
//! Names are interned to dense indices in order of first appearance; every
//! public output goes back through the symbolic names.

mod generate;
mod parse;

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::bipartite::hopcroft_karp;
use crate::error::{Error, Result};

pub use generate::{adversarial_structure, random_complete_structure};
pub use parse::{parse_json, parse_structure, parse_text, InputFormat, ParseOptions};

/// `[A-Za-z_][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    equations: Vec<String>,
    variables: Vec<String>,
    /// Sorted variable indices of each equation.
    incidence: Vec<Vec<usize>>,
    equation_index: HashMap<String, usize>,
    variable_index: HashMap<String, usize>,
}

/// Incrementally assembles a [`Structure`], interning variables in order of
/// first appearance.
#[derive(Debug, Default)]
pub struct StructureBuilder {
    inner: Structure,
}

impl Default for Structure {
    fn default() -> Self {
        Structure::empty()
    }
}

impl StructureBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one equation. Repeated variable names collapse to one appearance.
    pub fn equation<S: AsRef<str>>(&mut self, id: &str, vars: &[S]) -> Result<&mut Self> {
        let s = &mut self.inner;
        if !is_identifier(id) {
            return Err(Error::InvalidIdentifier(id.to_string()));
        }
        if s.equation_index.contains_key(id) {
            return Err(Error::DuplicateEquation {
                id: id.to_string(),
                line: 0,
            });
        }
        if vars.is_empty() {
            return Err(Error::EmptyEquation { id: id.to_string() });
        }
        let mut row = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if !is_identifier(v) {
                return Err(Error::InvalidIdentifier(v.to_string()));
            }
            let idx = match s.variable_index.get(v) {
                Some(&j) => j,
                None => {
                    let j = s.variables.len();
                    s.variables.push(v.to_string());
                    s.variable_index.insert(v.to_string(), j);
                    j
                }
            };
            row.push(idx);
        }
        row.sort_unstable();
        row.dedup();
        s.equation_index.insert(id.to_string(), s.equations.len());
        s.equations.push(id.to_string());
        s.incidence.push(row);
        Ok(self)
    }

    pub fn build(self) -> Structure {
        self.inner
    }
}

impl Structure {
    /// The structure with no equations. Only reachable on purpose: parsing
    /// rejects empty input unless explicitly allowed.
    pub fn empty() -> Self {
        Structure {
            equations: Vec::new(),
            variables: Vec::new(),
            incidence: Vec::new(),
            equation_index: HashMap::new(),
            variable_index: HashMap::new(),
        }
    }

    pub fn builder() -> StructureBuilder {
        StructureBuilder::new()
    }

    /// Builds a non-empty structure from `(equation, variables)` pairs.
    pub fn from_equations<E, V, I, S>(equations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, V)>,
        E: AsRef<str>,
        V: AsRef<[S]>,
        S: AsRef<str>,
    {
        let mut b = StructureBuilder::new();
        for (id, vars) in equations {
            b.equation(id.as_ref(), vars.as_ref())?;
        }
        let s = b.build();
        if s.is_empty() {
            return Err(Error::EmptyStructure);
        }
        Ok(s)
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn equation_count(&self) -> usize {
        self.equations.len()
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    /// Total number of variable appearances, |S|.
    pub fn density(&self) -> usize {
        self.incidence.iter().map(Vec::len).sum()
    }

    pub fn equation_names(&self) -> &[String] {
        &self.equations
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variables
    }

    pub fn equation_name(&self, i: usize) -> &str {
        &self.equations[i]
    }

    pub fn variable_name(&self, j: usize) -> &str {
        &self.variables[j]
    }

    pub fn equation_index(&self, name: &str) -> Option<usize> {
        self.equation_index.get(name).copied()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variable_index.get(name).copied()
    }

    /// Sorted variable indices appearing in equation `i`.
    pub fn vars_of(&self, i: usize) -> &[usize] {
        &self.incidence[i]
    }

    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn contains(&self, equation: usize, variable: usize) -> bool {
        self.incidence[equation].binary_search(&variable).is_ok()
    }

    /// Iterates `(equation name, variable names)` in equation order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, Vec<&str>)> + '_ {
        self.equations.iter().zip(&self.incidence).map(|(e, row)| {
            (
                e.as_str(),
                row.iter().map(|&j| self.variables[j].as_str()).collect(),
            )
        })
    }

    /// Union of the variables of the given equations, as a bitset over
    /// variable indices.
    pub fn variables_of_set(&self, equations: &[usize]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.variable_count());
        for &i in equations {
            for &j in &self.incidence[i] {
                set.insert(j);
            }
        }
        set
    }

    /// Checks the subset-cardinality condition through a maximum matching and
    /// compares equation and variable counts.
    pub fn validate(&self) -> ValidationReport {
        let n_eq = self.equation_count();
        let n_var = self.variable_count();
        let (left, right) = hopcroft_karp(&self.incidence, n_var);
        let matched = left.iter().filter(|m| m.is_some()).count();

        if matched < n_eq {
            // Equations reachable by alternating paths from unmatched ones
            // have only matched variables as neighbors, all matched back into
            // the set, so the set outnumbers its variables.
            let mut in_set = vec![false; n_eq];
            let mut var_seen = vec![false; n_var];
            let mut stack: Vec<usize> = (0..n_eq).filter(|&i| left[i].is_none()).collect();
            for &i in &stack {
                in_set[i] = true;
            }
            while let Some(i) = stack.pop() {
                for &j in &self.incidence[i] {
                    if var_seen[j] {
                        continue;
                    }
                    var_seen[j] = true;
                    if let Some(k) = right[j] {
                        if !in_set[k] {
                            in_set[k] = true;
                            stack.push(k);
                        }
                    }
                }
            }
            let equations = (0..n_eq)
                .filter(|&i| in_set[i])
                .map(|i| self.equations[i].clone())
                .collect();
            let variables = (0..n_var)
                .filter(|&j| var_seen[j])
                .map(|j| self.variables[j].clone())
                .collect();
            return ValidationReport {
                equations: n_eq,
                variables: n_var,
                is_structural: false,
                is_complete: false,
                witness: Some(Witness::HallViolation {
                    equations,
                    variables,
                }),
            };
        }

        let is_complete = n_eq == n_var;
        ValidationReport {
            equations: n_eq,
            variables: n_var,
            is_structural: true,
            is_complete,
            witness: (!is_complete).then_some(Witness::CardinalityMismatch {
                equations: n_eq,
                variables: n_var,
            }),
        }
    }

    /// The substructure induced by the given equation indices, re-interned.
    pub fn substructure(&self, equations: &[usize]) -> Structure {
        let mut sorted = equations.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut b = StructureBuilder::new();
        for i in sorted {
            let vars: Vec<&str> = self.incidence[i]
                .iter()
                .map(|&j| self.variables[j].as_str())
                .collect();
            b.equation(&self.equations[i], &vars)
                .expect("names already validated");
        }
        b.build()
    }

    /// `self ÷ sub`: drops the equations of `sub` and eliminates every
    /// variable appearing in `sub` from the remaining equations.
    pub fn subtract(&self, sub: &Structure) -> Result<Structure> {
        let mut removed = Vec::with_capacity(sub.equation_count());
        for (name, vars) in sub.iter() {
            let i = self
                .equation_index(name)
                .ok_or_else(|| Error::UnknownEquation(name.to_string()))?;
            let mine: Vec<&str> = self.incidence[i]
                .iter()
                .map(|&j| self.variables[j].as_str())
                .collect();
            let mut theirs = vars;
            let mut mine_sorted = mine;
            theirs.sort_unstable();
            mine_sorted.sort_unstable();
            if theirs != mine_sorted {
                return Err(Error::InvalidArgument(format!(
                    "equation `{name}` has different variables in the substructure"
                )));
            }
            removed.push(i);
        }
        self.eliminate(&removed)
    }

    /// `self ÷ S'` where `S'` is induced by the given equation indices.
    pub fn eliminate(&self, equations: &[usize]) -> Result<Structure> {
        let mut drop_eq = vec![false; self.equation_count()];
        for &i in equations {
            drop_eq[i] = true;
        }
        let drop_var = self.variables_of_set(equations);
        let mut b = StructureBuilder::new();
        for (i, &dropped) in drop_eq.iter().enumerate() {
            if dropped {
                continue;
            }
            let vars: Vec<&str> = self.incidence[i]
                .iter()
                .filter(|&&j| !drop_var.contains(j))
                .map(|&j| self.variables[j].as_str())
                .collect();
            if vars.is_empty() {
                return Err(Error::EliminationEmptiesEquation(self.equations[i].clone()));
            }
            b.equation(&self.equations[i], &vars)?;
        }
        Ok(b.build())
    }

    pub fn to_matrix(&self) -> StructureMatrix {
        let cols = self.variable_count();
        let entries = self
            .incidence
            .iter()
            .map(|row| {
                let mut r = vec![false; cols];
                for &j in row {
                    r[j] = true;
                }
                r
            })
            .collect();
        StructureMatrix {
            rows: self.equations.clone(),
            cols: self.variables.clone(),
            entries,
        }
    }

    /// Text form: one `id: var var ...` line per equation.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.density() * 4);
        for (name, vars) in self.iter() {
            out.push_str(name);
            out.push(':');
            for v in vars {
                out.push(' ');
                out.push_str(v);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let file = parse::StructureFile {
            equations: self
                .iter()
                .map(|(id, vars)| parse::EquationEntry {
                    id: id.to_string(),
                    vars: vars.into_iter().map(str::to_string).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Boolean equation × variable incidence matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<bool>>,
}

impl StructureMatrix {
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.entries[row][col]
    }

    pub fn row_sum(&self, row: usize) -> usize {
        self.entries[row].iter().filter(|&&b| b).count()
    }

    pub fn total(&self) -> usize {
        (0..self.rows.len()).map(|i| self.row_sum(i)).sum()
    }

    /// Rows as 0/1 vectors.
    pub fn to_bits(&self) -> Vec<Vec<u8>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&b| u8::from(b)).collect())
            .collect()
    }
}

impl fmt::Display for StructureMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.rows.iter().map(String::len).max().unwrap_or(0);
        write!(f, "{:w$}", "")?;
        for c in &self.cols {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        for (name, row) in self.rows.iter().zip(&self.entries) {
            write!(f, "{name:w$}")?;
            for (c, &b) in self.cols.iter().zip(row) {
                write!(f, " {:>width$}", u8::from(b), width = c.len())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A set of equations touching fewer variables than its size.
    HallViolation {
        equations: Vec<String>,
        variables: Vec<String>,
    },
    /// Structural, but the counts differ.
    CardinalityMismatch { equations: usize, variables: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub equations: usize,
    pub variables: usize,
    pub is_structural: bool,
    pub is_complete: bool,
    pub witness: Option<Witness>,
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(
                f,
                "complete: {}, {}",
                plural(self.equations, "equation"),
                plural(self.variables, "variable")
            ),
            Some(Witness::CardinalityMismatch {
                equations,
                variables,
            }) => write!(
                f,
                "not complete: {}, {}",
                plural(*equations, "equation"),
                plural(*variables, "variable")
            ),
            Some(Witness::HallViolation {
                equations,
                variables,
            }) => write!(
                f,
                "not structural: {} ({}) touch only {} ({})",
                plural(equations.len(), "equation"),
                equations.join(", "),
                plural(variables.len(), "variable"),
                variables.join(", ")
            ),
        }
    }
}
