use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Structure, StructureBuilder};
use crate::error::{Error, Result};

/// Random complete structure over equations `f1..fn` and variables `x1..xn`.
///
/// Equation `f_i` always contains `x_π(i)` for a random permutation `π`, so a
/// complete matching exists. On top of that each equation receives
/// `floor(extra)` further distinct variables, plus one more with probability
/// `fract(extra)`, capped at `n - 1`.
pub fn random_complete_structure(n: usize, extra: f64, seed: u64) -> Result<Structure> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "equation count must be at least 1".into(),
        ));
    }
    if !extra.is_finite() || extra < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "extra appearances must be a non-negative number, got {extra}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);

    let whole = extra.floor();
    let frac = extra - whole;
    let names: Vec<String> = (1..=n).map(|j| format!("x{j}")).collect();

    let mut b = StructureBuilder::new();
    let mut vars: Vec<&str> = Vec::new();
    for (i, &own) in perm.iter().enumerate() {
        let mut k = whole as usize;
        if frac > 0.0 && rng.gen::<f64>() < frac {
            k += 1;
        }
        let k = k.min(n - 1);
        vars.clear();
        vars.push(&names[own]);
        if k > 0 {
            // Sample from the other n - 1 variables, skipping `own`.
            for j in index::sample(&mut rng, n - 1, k) {
                let j = if j >= own { j + 1 } else { j };
                vars.push(&names[j]);
            }
        }
        b.equation(&format!("f{}", i + 1), &vars)?;
    }
    Ok(b.build())
}

/// Complete structure of `m` equations on which subset enumeration cannot
/// prune: `f_i = {x_i, x_m}` for `i < m` and `f_m` touches every variable.
///
/// Any `k < m` equations touch exactly `k + 1` variables (or all `m`), so the
/// only complete substructure is the whole structure.
pub fn adversarial_structure(m: usize) -> Result<Structure> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "equation count must be at least 1".into(),
        ));
    }
    let names: Vec<String> = (1..=m).map(|j| format!("x{j}")).collect();
    let mut b = StructureBuilder::new();
    for i in 0..m - 1 {
        b.equation(&format!("f{}", i + 1), &[&names[i], &names[m - 1]])?;
    }
    b.equation(&format!("f{m}"), &names)?;
    Ok(b.build())
}
