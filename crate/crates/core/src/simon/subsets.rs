use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use crate::budget::{Budget, Ticker};
use crate::error::Result;
use crate::structure::Structure;

/// Visits, in lexicographic order, every `size`-subset of equations whose
/// variables number exactly `size`. In a structure no subset touches fewer
/// variables than it has equations, so a branch is cut as soon as its union
/// exceeds `size`. Stops early when `visit` breaks.
pub(crate) fn for_each_complete_subset<F>(
    s: &Structure,
    size: usize,
    budget: &Budget,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[usize], &FixedBitSet) -> ControlFlow<()>,
{
    let n_var = s.variable_count();
    let rows: Vec<FixedBitSet> = (0..s.equation_count())
        .map(|i| {
            let mut b = FixedBitSet::with_capacity(n_var);
            b.extend(s.vars_of(i).iter().copied());
            b
        })
        .collect();
    let mut walk = Walk {
        rows: &rows,
        size,
        chosen: Vec::with_capacity(size),
        unions: vec![FixedBitSet::with_capacity(n_var); size + 1],
        ticker: budget.ticker(),
    };
    walk.descend(0, &mut visit).map(drop)
}

struct Walk<'a> {
    rows: &'a [FixedBitSet],
    size: usize,
    chosen: Vec<usize>,
    unions: Vec<FixedBitSet>,
    ticker: Ticker<'a>,
}

impl Walk<'_> {
    fn descend<F>(&mut self, start: usize, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[usize], &FixedBitSet) -> ControlFlow<()>,
    {
        let depth = self.chosen.len();
        if depth == self.size {
            return Ok(visit(&self.chosen, &self.unions[depth]));
        }
        let n = self.rows.len();
        if n < self.size {
            return Ok(ControlFlow::Continue(()));
        }
        for i in start..=n - (self.size - depth) {
            self.ticker.tick()?;
            let (done, rest) = self.unions.split_at_mut(depth + 1);
            let next = &mut rest[0];
            next.clone_from(&done[depth]);
            next.union_with(&self.rows[i]);
            if next.count_ones(..) > self.size {
                continue;
            }
            self.chosen.push(i);
            let flow = self.descend(i + 1, visit)?;
            self.chosen.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}
