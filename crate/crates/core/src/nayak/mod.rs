//! Polynomial-time causal ordering: a total causal mapping from a complete
//! matching, the direct dependencies it induces, and their transitive
//! closure.

mod closure;
mod enumerate;

use std::collections::BTreeMap;

use crate::bipartite::hopcroft_karp;
use crate::error::{Error, Result};
use crate::structure::Structure;

pub use closure::{closure_oracle, transitive_closure, CausalOrdering};
pub use enumerate::{enumerate_tcms, DEFAULT_ENUMERATION_LIMIT};

/// Bijection from equations to variables with every equation mapped to one of
/// its own variables. Indices refer to the structure it was built for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TotalCausalMapping {
    targets: Vec<usize>,
}

impl TotalCausalMapping {
    /// Wraps `targets[i] = variable of equation i`, checking it against `s`.
    pub fn new(s: &Structure, targets: Vec<usize>) -> Result<Self> {
        let m = Self { targets };
        m.check(s)?;
        Ok(m)
    }

    /// Builds a mapping from `(equation, variable)` names.
    pub fn from_named<A: AsRef<str>, B: AsRef<str>>(
        s: &Structure,
        pairs: &[(A, B)],
    ) -> Result<Self> {
        let mut targets = vec![usize::MAX; s.equation_count()];
        for (e, v) in pairs {
            let i = s
                .equation_index(e.as_ref())
                .ok_or_else(|| Error::UnknownEquation(e.as_ref().to_string()))?;
            let j = s
                .variable_index(v.as_ref())
                .ok_or_else(|| Error::UnknownVariable(v.as_ref().to_string()))?;
            targets[i] = j;
        }
        Self::new(s, targets)
    }

    pub(crate) fn from_targets_unchecked(targets: Vec<usize>) -> Self {
        Self { targets }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn variable_of(&self, equation: usize) -> usize {
        self.targets[equation]
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Verifies bijectivity and membership against `s`.
    pub fn check(&self, s: &Structure) -> Result<()> {
        if self.targets.len() != s.equation_count() {
            return Err(Error::InconsistentMapping(format!(
                "mapping covers {} equations, structure has {}",
                self.targets.len(),
                s.equation_count()
            )));
        }
        if s.equation_count() != s.variable_count() {
            return Err(Error::InconsistentMapping(format!(
                "structure has {} equations but {} variables",
                s.equation_count(),
                s.variable_count()
            )));
        }
        let mut hit = vec![false; s.variable_count()];
        for (i, &j) in self.targets.iter().enumerate() {
            if j >= s.variable_count() {
                return Err(Error::InconsistentMapping(format!(
                    "equation `{}` is unmapped",
                    s.equation_name(i)
                )));
            }
            if !s.contains(i, j) {
                return Err(Error::InconsistentMapping(format!(
                    "`{}` does not appear in equation `{}`",
                    s.variable_name(j),
                    s.equation_name(i)
                )));
            }
            if std::mem::replace(&mut hit[j], true) {
                return Err(Error::InconsistentMapping(format!(
                    "variable `{}` is the image of two equations",
                    s.variable_name(j)
                )));
            }
        }
        Ok(())
    }

    /// `(equation, variable)` names in equation order.
    pub fn named<'a>(&self, s: &'a Structure) -> Vec<(&'a str, &'a str)> {
        self.targets
            .iter()
            .enumerate()
            .map(|(i, &j)| (s.equation_name(i), s.variable_name(j)))
            .collect()
    }

    /// Equation name → variable name, ordered by equation name.
    pub fn to_map<'a>(&self, s: &'a Structure) -> BTreeMap<&'a str, &'a str> {
        self.named(s).into_iter().collect()
    }
}

/// Total causal mapping read off a complete matching of the structure's
/// bipartite graph. Fails with the validation report when `s` is not
/// complete.
pub fn tcm(s: &Structure) -> Result<TotalCausalMapping> {
    if s.equation_count() == s.variable_count() {
        let (left, _) = hopcroft_karp(s.incidence(), s.variable_count());
        if let Some(targets) = left.into_iter().collect::<Option<Vec<_>>>() {
            return Ok(TotalCausalMapping::from_targets_unchecked(targets));
        }
    }
    Err(Error::NotComplete(s.validate()))
}

/// Directed graph over variables without self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    names: Vec<String>,
    succ: Vec<Vec<usize>>,
}

impl DependencyGraph {
    pub fn new<I>(names: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = names.len();
        let mut succ = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a}, {b}) references an unknown vertex"
                )));
            }
            if a == b {
                return Err(Error::InvalidArgument(format!(
                    "self-loop on `{}`",
                    names[a]
                )));
            }
            succ[a].push(b);
        }
        for row in &mut succ {
            row.sort_unstable();
            row.dedup();
        }
        Ok(Self { names, succ })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].binary_search(&b).is_ok()
    }

    /// Edges in `(source, target)` index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |&b| (a, b)))
    }
}

/// `(x_a, x_b)` whenever `x_a` appears in the equation mapped to `x_b`.
pub fn direct_dependencies(s: &Structure, mapping: &TotalCausalMapping) -> Result<DependencyGraph> {
    mapping.check(s)?;
    let mut succ = vec![Vec::new(); s.variable_count()];
    for (i, &target) in mapping.targets().iter().enumerate() {
        for &a in s.vars_of(i) {
            if a != target {
                succ[a].push(target);
            }
        }
    }
    for row in &mut succ {
        row.sort_unstable();
        row.dedup();
    }
    Ok(DependencyGraph {
        names: s.variable_names().to_vec(),
        succ,
    })
}

/// Everything computed on the way to an ordering.
#[derive(Debug, Clone)]
pub struct CausalAnalysis {
    pub mapping: TotalCausalMapping,
    pub direct: DependencyGraph,
    pub ordering: CausalOrdering,
}

impl CausalAnalysis {
    /// Runs dependencies and closure for an already computed mapping.
    pub fn from_mapping(s: &Structure, mapping: TotalCausalMapping) -> Result<Self> {
        let direct = direct_dependencies(s, &mapping)?;
        let ordering = transitive_closure(&direct);
        Ok(Self {
            mapping,
            direct,
            ordering,
        })
    }
}

/// Matching-based mapping, direct dependencies and their closure.
pub fn analyze(s: &Structure) -> Result<CausalAnalysis> {
    CausalAnalysis::from_mapping(s, tcm(s)?)
}

pub fn causal_ordering(s: &Structure) -> Result<CausalOrdering> {
    Ok(analyze(s)?.ordering)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{coupled, triangle};
    use crate::structure::{parse_text, ParseOptions};

    fn named_edges(g: &DependencyGraph) -> Vec<(String, String)> {
        let mut e: Vec<_> = g
            .edges()
            .map(|(a, b)| (g.names()[a].clone(), g.names()[b].clone()))
            .collect();
        e.sort();
        e
    }

    fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        let mut v: Vec<_> = list
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn tcm_coupled_is_identity() {
        let s = coupled();
        let m = tcm(&s).unwrap();
        let expected: Vec<(String, String)> = (1..=7)
            .map(|i| (format!("f{i}"), format!("x{i}")))
            .collect();
        let got: Vec<(String, String)> = m
            .named(&s)
            .into_iter()
            .map(|(a, b)| (a.into(), b.into()))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn tcm_rejects_incomplete() {
        let s = parse_text("f1: x1 x2", ParseOptions::default()).unwrap();
        match tcm(&s) {
            Err(Error::NotComplete(r)) => {
                assert!(r.is_structural && !r.is_complete);
            }
            other => panic!("{other:?}"),
        }
        let s = parse_text("f1: x1\nf2: x1\nf3: x2 x3", ParseOptions::default()).unwrap();
        match tcm(&s) {
            Err(Error::NotComplete(r)) => assert!(!r.is_structural),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tcm_triangle_forces_f4() {
        let s = triangle();
        let m = tcm(&s).unwrap();
        m.check(&s).unwrap();
        assert_eq!(s.variable_name(m.variable_of(3)), "x4");
    }

    #[test]
    fn direct_dependencies_coupled_identity() {
        let s = coupled();
        let m = tcm(&s).unwrap();
        let g = direct_dependencies(&s, &m).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.edge_count(), s.density() - s.variable_count());
        assert_eq!(
            named_edges(&g),
            pairs(&[
                ("x1", "x4"),
                ("x2", "x4"),
                ("x3", "x4"),
                ("x5", "x4"),
                ("x1", "x5"),
                ("x3", "x5"),
                ("x4", "x5"),
                ("x4", "x6"),
                ("x5", "x7"),
            ])
        );
    }

    #[test]
    fn direct_dependencies_triangle() {
        let s = triangle();
        let m = TotalCausalMapping::from_named(
            &s,
            &[("f1", "x3"), ("f2", "x1"), ("f3", "x2"), ("f4", "x4")],
        )
        .unwrap();
        let g = direct_dependencies(&s, &m).unwrap();
        assert_eq!(
            named_edges(&g),
            pairs(&[
                ("x1", "x3"),
                ("x2", "x1"),
                ("x3", "x2"),
                ("x1", "x4"),
                ("x2", "x4"),
                ("x3", "x4"),
            ])
        );
    }

    #[test]
    fn direct_dependencies_single() {
        let s = parse_text("f1: x1", ParseOptions::default()).unwrap();
        let m = tcm(&s).unwrap();
        assert_eq!(direct_dependencies(&s, &m).unwrap().edge_count(), 0);
    }

    #[test]
    fn edge_count_is_density_minus_variables() {
        // Pairs induced by different equations have different targets, so
        // nothing collapses.
        let s = parse_text("f1: x1\nf2: x1 x2\nf3: x1 x2 x3", ParseOptions::default()).unwrap();
        let m = tcm(&s).unwrap();
        let g = direct_dependencies(&s, &m).unwrap();
        assert_eq!(g.edge_count(), s.density() - s.variable_count());
    }

    #[test]
    fn inconsistent_mappings_rejected() {
        let s = triangle();
        let x = |n: &str| s.variable_index(n).unwrap();
        // x2 does not appear in f1.
        let bad =
            TotalCausalMapping::from_targets_unchecked(vec![x("x2"), x("x1"), x("x3"), x("x4")]);
        assert!(matches!(
            direct_dependencies(&s, &bad),
            Err(Error::InconsistentMapping(_))
        ));
        // x1 hit twice.
        let bad =
            TotalCausalMapping::from_targets_unchecked(vec![x("x1"), x("x1"), x("x2"), x("x4")]);
        assert!(bad.check(&s).is_err());
        let short = TotalCausalMapping::from_targets_unchecked(vec![0]);
        assert!(short.check(&s).is_err());
        assert!(TotalCausalMapping::from_named(&s, &[("f9", "x1")]).is_err());
    }

    #[test]
    fn dependency_graph_rejects_self_loops() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(DependencyGraph::new(names.clone(), [(0, 0)]).is_err());
        assert!(DependencyGraph::new(names.clone(), [(0, 2)]).is_err());
        let g = DependencyGraph::new(names, [(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }
}
