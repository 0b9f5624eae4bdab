//! Simon's recursive causal ordering and the exponential problems behind it.
//!
//! Each recursion step lists the minimal complete substructures by subset
//! enumeration, maps their equations onto their own variables, removes them
//! and eliminates their variables from the rest. Listing minimal
//! substructures is NP-hard in general; every operation here runs under a
//! [`Budget`].

mod subsets;

use std::ops::ControlFlow;

use crate::bipartite::BipartiteGraph;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::nayak::{CausalAnalysis, CausalOrdering, TotalCausalMapping};
use crate::structure::Structure;

use subsets::for_each_complete_subset;

/// The complete substructures of smallest size, as sorted equation-index
/// sets in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalSubstructureSet {
    pub size: usize,
    pub members: Vec<Vec<usize>>,
}

impl MinimalSubstructureSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn named<'a>(&self, s: &'a Structure) -> Vec<Vec<&'a str>> {
        self.members
            .iter()
            .map(|m| m.iter().map(|&i| s.equation_name(i)).collect())
            .collect()
    }
}

fn require_complete(s: &Structure) -> Result<()> {
    let report = s.validate();
    if report.is_complete {
        Ok(())
    } else {
        Err(Error::NotComplete(report))
    }
}

/// Lists every complete substructure of the smallest size admitting one.
///
/// A complete subset of that size cannot contain a smaller complete subset,
/// so each member is minimal. Members are checked to be pairwise
/// variable-disjoint.
pub fn minimal_substructures(s: &Structure, budget: &Budget) -> Result<MinimalSubstructureSet> {
    budget.check_size(s.equation_count())?;
    require_complete(s)?;
    smallest_layer(s, budget)
}

fn smallest_layer(s: &Structure, budget: &Budget) -> Result<MinimalSubstructureSet> {
    let m = s.equation_count();
    for size in 1..=m {
        let mut members = Vec::new();
        let mut unions = Vec::new();
        for_each_complete_subset(s, size, budget, |eqs, vars| {
            members.push(eqs.to_vec());
            unions.push(vars.clone());
            ControlFlow::Continue(())
        })?;
        if members.is_empty() {
            continue;
        }
        for (a, ua) in unions.iter().enumerate() {
            for ub in &unions[a + 1..] {
                assert!(
                    ua.is_disjoint(ub),
                    "distinct minimal substructures share a variable"
                );
            }
        }
        return Ok(MinimalSubstructureSet { size, members });
    }
    Ok(MinimalSubstructureSet {
        size: 0,
        members: Vec::new(),
    })
}

/// Maps the equations of one minimal substructure onto its variables: each
/// equation, in index order, takes its lowest-index variable not yet taken.
/// If none is left, an alternating path re-routes earlier choices.
fn assign_within(s: &Structure, equations: &[usize]) -> Vec<(usize, usize)> {
    let mut owner: Vec<Option<usize>> = vec![None; s.variable_count()];
    let mut target: Vec<Option<usize>> = vec![None; s.equation_count()];
    for &f in equations {
        if let Some(&x) = s.vars_of(f).iter().find(|&&x| owner[x].is_none()) {
            owner[x] = Some(f);
            target[f] = Some(x);
            continue;
        }
        let mut visited = vec![false; s.variable_count()];
        let ok = augment(s, f, &mut owner, &mut target, &mut visited);
        assert!(ok, "a minimal substructure always has a complete matching");
    }
    equations
        .iter()
        .map(|&f| (f, target[f].expect("every equation assigned")))
        .collect()
}

fn augment(
    s: &Structure,
    f: usize,
    owner: &mut [Option<usize>],
    target: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &x in s.vars_of(f) {
        if visited[x] {
            continue;
        }
        visited[x] = true;
        let free = match owner[x] {
            None => true,
            Some(g) => augment(s, g, owner, target, visited),
        };
        if free {
            owner[x] = Some(f);
            target[f] = Some(x);
            return true;
        }
    }
    false
}

/// Total causal mapping by Simon's recursion. Every level handles all
/// minimal substructures found before eliminating their variables.
pub fn rtcm(s: &Structure, budget: &Budget) -> Result<TotalCausalMapping> {
    budget.check_size(s.equation_count())?;
    require_complete(s)?;

    let mut targets = vec![usize::MAX; s.equation_count()];
    let mut current = s.clone();
    while !current.is_empty() {
        let layer = smallest_layer(&current, budget)?;
        let mut removed = Vec::new();
        for member in &layer.members {
            for (f, x) in assign_within(&current, member) {
                let i = s
                    .equation_index(current.equation_name(f))
                    .expect("equations of the remainder come from s");
                let j = s
                    .variable_index(current.variable_name(x))
                    .expect("variables of the remainder come from s");
                targets[i] = j;
            }
            removed.extend_from_slice(member);
        }
        current = current.eliminate(&removed)?;
    }
    TotalCausalMapping::new(s, targets)
}

/// Simon's mapping followed by the shared dependency and closure steps.
pub fn coa_analysis(s: &Structure, budget: &Budget) -> Result<CausalAnalysis> {
    CausalAnalysis::from_mapping(s, rtcm(s, budget)?)
}

pub fn coa(s: &Structure, budget: &Budget) -> Result<CausalOrdering> {
    Ok(coa_analysis(s, budget)?.ordering)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsdpMode {
    /// Enumerate equation subsets of the requested size.
    BruteForce,
    /// Look for `K_{ℓ, m-ℓ}` in the bipartite complement.
    Biclique,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsdpWitness {
    /// Sorted equation indices of the complete substructure.
    pub equations: Vec<usize>,
    /// Sorted indices of the variables those equations touch.
    pub variables: Vec<usize>,
    /// Set in biclique mode: the biclique found in the complement.
    pub biclique: Option<crate::bipartite::BicliqueWitness>,
}

/// Decides whether `s` has a complete substructure with `size` equations.
pub fn csdp(
    s: &Structure,
    size: usize,
    mode: CsdpMode,
    budget: &Budget,
) -> Result<Option<CsdpWitness>> {
    let m = s.equation_count();
    budget.check_size(m)?;
    require_complete(s)?;
    if size == 0 || size >= m {
        return Err(Error::InvalidArgument(format!(
            "substructure size must satisfy 1 <= size < {m}, got {size}"
        )));
    }

    let witness = match mode {
        CsdpMode::BruteForce => {
            let mut hit = None;
            for_each_complete_subset(s, size, budget, |eqs, vars| {
                hit = Some(CsdpWitness {
                    equations: eqs.to_vec(),
                    variables: vars.ones().collect(),
                    biclique: None,
                });
                ControlFlow::Break(())
            })?;
            hit
        }
        CsdpMode::Biclique => {
            // No edge from the chosen equations to the m - size variables on
            // the other side, so the equations touch at most `size`
            // variables, and at least `size` since s is a structure.
            let complement = BipartiteGraph::from_structure(s).complement();
            complement.find_biclique(size, m - size, budget)?.map(|b| {
                let equations = b.left_indices.clone();
                let variables = s.variables_of_set(&equations).ones().collect();
                CsdpWitness {
                    equations,
                    variables,
                    biclique: Some(b),
                }
            })
        }
    };

    if let Some(w) = &witness {
        assert_eq!(w.equations.len(), size);
        assert_eq!(
            w.variables.len(),
            size,
            "witness equations must touch exactly as many variables"
        );
    }
    Ok(witness)
}
