use crate::budget::{Budget, Ticker};
use crate::error::{Error, Result};
use crate::structure::Structure;

use super::TotalCausalMapping;

pub const DEFAULT_ENUMERATION_LIMIT: usize = 10_000;

/// Every total causal mapping of `s` (equivalently, every complete matching
/// of its bipartite graph), up to `limit`. Equations are assigned in index
/// order and candidate variables tried in ascending index order, so the
/// output order is fixed.
pub fn enumerate_tcms(
    s: &Structure,
    limit: usize,
    budget: &Budget,
) -> Result<Vec<TotalCausalMapping>> {
    budget.check_size(s.equation_count())?;
    let report = s.validate();
    if !report.is_complete {
        return Err(Error::NotComplete(report));
    }
    let mut state = Enumeration {
        s,
        limit,
        used: vec![false; s.variable_count()],
        current: Vec::with_capacity(s.equation_count()),
        out: Vec::new(),
        ticker: budget.ticker(),
    };
    state.extend()?;
    Ok(state.out)
}

struct Enumeration<'a> {
    s: &'a Structure,
    limit: usize,
    used: Vec<bool>,
    current: Vec<usize>,
    out: Vec<TotalCausalMapping>,
    ticker: Ticker<'a>,
}

impl Enumeration<'_> {
    fn extend(&mut self) -> Result<()> {
        if self.out.len() >= self.limit {
            return Ok(());
        }
        let i = self.current.len();
        if i == self.s.equation_count() {
            self.out.push(TotalCausalMapping::from_targets_unchecked(
                self.current.clone(),
            ));
            return Ok(());
        }
        for &j in self.s.vars_of(i) {
            self.ticker.tick()?;
            if self.used[j] {
                continue;
            }
            self.used[j] = true;
            self.current.push(j);
            let r = self.extend();
            self.current.pop();
            self.used[j] = false;
            r?;
            if self.out.len() >= self.limit {
                break;
            }
        }
        Ok(())
    }
}
