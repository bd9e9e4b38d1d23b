//! Coset-action realisation of the intermediate covers `S/H → S/G`.
//!
//! A generating vector determines the monodromy of `S → S/G`; the cover
//! `S/H → S/G` has monodromy given by the action of the same elements on the
//! left cosets `gH` (by `gH ↦ xgH`). Counting cycles of the images of the
//! `c_j` gives ramification directly, independent of the closed formulas in
//! [`crate::covers`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Perm, Subgroup};
use crate::signature::GeneratingVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetAction {
    pub subgroup: Subgroup,
    /// Least element of each coset, in increasing order; coset `i` is
    /// `cosets[i]·H`.
    pub cosets: Vec<Elem>,
    pub a: Vec<Perm>,
    pub b: Vec<Perm>,
    pub c: Vec<Perm>,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.cosets.len()
    }
}

pub fn coset_action(g: &Group, h: &Subgroup, v: &GeneratingVector) -> Result<CosetAction> {
    let cosets = g.left_transversal(h)?;
    let labels = g.left_coset_labels(h)?;
    let act = |x: Elem| -> Result<Perm> {
        Perm::from_images(cosets.iter().map(|&t| labels[g.mul(x, t)]).collect())
    };
    let images = |xs: &[Elem]| xs.iter().map(|&x| act(x)).collect::<Result<Vec<_>>>();
    Ok(CosetAction {
        subgroup: h.clone(),
        a: images(&v.a)?,
        b: images(&v.b)?,
        c: images(&v.c)?,
        cosets,
    })
}

/// Cycle lengths of each `c_j` on the cosets, sorted descending.
pub fn oracle_cycle_structure(action: &CosetAction) -> Vec<Vec<usize>> {
    action
        .c
        .iter()
        .map(|p| {
            let mut lens = p.cycle_type();
            lens.sort_unstable_by(|a, b| b.cmp(a));
            lens
        })
        .collect()
}

/// Genus of `S/H` from Riemann–Hurwitz applied to the coset action.
pub fn oracle_genus(action: &CosetAction, gamma: u64) -> Result<u64> {
    let d = action.degree() as i64;
    let ramification: i64 = oracle_cycle_structure(action)
        .iter()
        .flatten()
        .map(|&l| l as i64 - 1)
        .sum();
    // 2g' - 2 = d(2γ - 2) + ramification
    let twice = d * (2 * gamma as i64 - 2) + ramification + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::NotIntegral(format!("{twice}/2")));
    }
    Ok((twice / 2) as u64)
}

/// `(mark, count)` pairs per branch value, marks ascending. A cycle of
/// length `ℓ` over a branch value of order `m` is a point with mark `m/ℓ`.
pub fn oracle_marked_points(
    action: &CosetAction,
    orders: &[usize],
) -> Result<Vec<Vec<(usize, usize)>>> {
    oracle_cycle_structure(action)
        .iter()
        .zip(orders)
        .map(|(lens, &m)| {
            let mut marks: BTreeMap<usize, usize> = BTreeMap::new();
            for &l in lens {
                if m % l != 0 {
                    return Err(Error::defect(format!(
                        "cycle length {l} does not divide {m}"
                    )));
                }
                *marks.entry(m / l).or_default() += 1;
            }
            Ok(marks.into_iter().collect())
        })
        .collect()
}

/// Oracle recomputation attached to a cover report in cross-check mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub genus: u64,
    pub cycle_structures: Vec<Vec<usize>>,
    pub agrees: bool,
}
