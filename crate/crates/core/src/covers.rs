//! Intermediate covers `S → S/H → S/G`: genus of `S/H`, the points of `S/H`
//! over each branch value of `S → S/G`, and the ramification of
//! `S/H → S/G` there.
//!
//! For a branch value `q_j` with stabilizer `G_j`, let `N = N_G(G_j)` and
//! `Ω` a left transversal of `N`. The stabilizers of the points in the fibre
//! are the conjugates `l G_j l⁻¹` for `l ∈ Ω`, each shared by `[N : G_j]`
//! points. What `H` sees of a point is the intersection `l G_j l⁻¹ ∩ H`,
//! whose order is the point's *mark*.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::monodromy::{self, OracleCheck};
use crate::signature::{GeneratingVector, GeometricSignature};
use crate::Rational;

/// The transversal `Ω` of `N_G(G_j)` grouped by mark.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalPartition {
    pub branch_index: usize,
    /// Sets `L_k`, in order of first appearance along the transversal.
    pub sets: Vec<Vec<Elem>>,
    /// Common value of `|l G_j l⁻¹ ∩ H|` on each set.
    pub marks: Vec<usize>,
}

impl TransversalPartition {
    pub fn nu(&self) -> usize {
        self.sets.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPointSet {
    pub mark: usize,
    pub count: usize,
    /// `true` when `mark > 1`, i.e. the point is a branch value of
    /// `S → S/H`.
    pub branched: bool,
}

fn int(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

fn to_count(q: Rational, what: &str) -> Result<usize> {
    if !q.is_integer() || q < Rational::zero() {
        return Err(Error::NotIntegral(format!("{what} = {q}")));
    }
    usize::try_from(q.to_integer()).map_err(|_| Error::NotIntegral(format!("{what} = {q}")))
}

pub fn transversal_partition(
    g: &Group,
    sig: &GeometricSignature,
    h: &Subgroup,
    j: usize,
) -> Result<TransversalPartition> {
    let gj = &sig.entries[j].stabilizer;
    let n = g.normalizer(gj)?;
    let mut sets: Vec<Vec<Elem>> = Vec::new();
    let mut marks: Vec<usize> = Vec::new();
    for l in g.left_transversal(&n)? {
        let mark = g.conjugate_intersection(gj, l, h);
        match marks.iter().position(|&m| m == mark) {
            Some(k) => sets[k].push(l),
            None => {
                marks.push(mark);
                sets.push(vec![l]);
            }
        }
    }
    Ok(TransversalPartition {
        branch_index: j,
        sets,
        marks,
    })
}

/// Points of `S/H` over branch value `j`, grouped by mark.
pub fn marked_points_at(
    g: &Group,
    sig: &GeometricSignature,
    h: &Subgroup,
    j: usize,
) -> Result<Vec<MarkedPointSet>> {
    let part = transversal_partition(g, sig, h, j)?;
    let gj = &sig.entries[j].stabilizer;
    let n_over_gj = g.normalizer(gj)?.order() / gj.order();
    part.sets
        .iter()
        .zip(&part.marks)
        .map(|(set, &mark)| {
            let count = int(set.len() * n_over_gj * mark) / int(h.order());
            Ok(MarkedPointSet {
                mark,
                count: to_count(count, "marked point count")?,
                branched: mark > 1,
            })
        })
        .collect()
}

pub fn marked_points(
    g: &Group,
    sig: &GeometricSignature,
    h: &Subgroup,
) -> Result<Vec<Vec<MarkedPointSet>>> {
    (0..sig.entries.len())
        .map(|j| marked_points_at(g, sig, h, j))
        .collect()
}

/// Ramification indices of `S/H → S/G` over each branch value, each entry
/// `|G_j| / mark` repeated by its count, sorted descending.
pub fn cycle_structure(
    g: &Group,
    sig: &GeometricSignature,
    h: &Subgroup,
) -> Result<Vec<Vec<usize>>> {
    let index = g.order() / h.order();
    marked_points(g, sig, h)?
        .iter()
        .zip(&sig.entries)
        .map(|(sets, e)| {
            let mut entries = Vec::new();
            for s in sets {
                entries.extend(std::iter::repeat_n(e.order / s.mark, s.count));
            }
            entries.sort_unstable_by(|a, b| b.cmp(a));
            if entries.iter().sum::<usize>() != index {
                return Err(Error::defect(format!(
                    "ramification over a branch value sums to {}, index is {index}",
                    entries.iter().sum::<usize>()
                )));
            }
            Ok(entries)
        })
        .collect()
}

/// The genus of `S/H` by both closed forms, before integrality checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusRoutes {
    /// From stabilizer intersections over the transversals.
    pub by_stabilizers: Rational,
    /// From the double coset counts `|H\G/G_j|`.
    pub by_double_cosets: Rational,
}

pub fn genus_routes(g: &Group, sig: &GeometricSignature, h: &Subgroup) -> Result<GenusRoutes> {
    let index = int(g.order() / h.order());
    let base = &index * (Rational::from_integer((sig.genus as i64 - 1).into())) + Rational::one();
    let half = Rational::new(1.into(), 2.into());
    let mut stab = Rational::zero();
    let mut dc = Rational::zero();
    for e in &sig.entries {
        let gj = &e.stabilizer;
        let n = g.normalizer(gj)?;
        let ratio = int(n.order()) / int(h.order());
        for l in g.left_transversal(&n)? {
            let mark = g.conjugate_intersection(gj, l, h);
            stab += &ratio * (Rational::one() - int(mark) / int(gj.order()));
        }
        dc += &index - int(g.double_coset_count(h, gj)?);
    }
    Ok(GenusRoutes {
        by_stabilizers: &base + &half * stab,
        by_double_cosets: &base + &half * dc,
    })
}

/// Genus of `S/H`. Both closed forms are evaluated and must agree.
pub fn quotient_genus(g: &Group, sig: &GeometricSignature, h: &Subgroup) -> Result<u64> {
    let r = genus_routes(g, sig, h)?;
    if r.by_stabilizers != r.by_double_cosets {
        return Err(Error::defect(format!(
            "quotient genus formulas disagree: {} vs {}",
            r.by_stabilizers, r.by_double_cosets
        )));
    }
    let v = to_count(r.by_stabilizers, "quotient genus")?;
    Ok(v as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupInfo {
    pub label: String,
    pub order: usize,
    pub generators: Vec<String>,
    /// Index of its class among the cyclic subgroup classes, if cyclic.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cyclic_class: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchValueReport {
    pub index: usize,
    pub type_rep: String,
    pub marked_points: Vec<MarkedPointSet>,
    pub cycle_structure: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub subgroup: SubgroupInfo,
    pub degree: usize,
    pub genus: u64,
    pub branch_values: Vec<BranchValueReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleCheck>,
}

pub fn cover_report(
    g: &Group,
    sig: &GeometricSignature,
    label: &str,
    h: &Subgroup,
) -> Result<CoverReport> {
    let genus = quotient_genus(g, sig, h)?;
    let points = marked_points(g, sig, h)?;
    let cycles = cycle_structure(g, sig, h)?;
    let branch_values = sig
        .entries
        .iter()
        .zip(points.into_iter().zip(cycles))
        .enumerate()
        .map(
            |(index, (e, (marked_points, cycle_structure)))| BranchValueReport {
                index,
                type_rep: e.label.clone(),
                marked_points,
                cycle_structure,
            },
        )
        .collect();
    Ok(CoverReport {
        subgroup: SubgroupInfo {
            label: label.to_string(),
            order: h.order(),
            generators: h.generators().iter().map(|&x| g.word(x)).collect(),
            cyclic_class: g.cyclic_class_of_subgroup(h),
        },
        degree: g.order() / h.order(),
        genus,
        branch_values,
        oracle: None,
    })
}

/// One report per class of cyclic subgroups (canonical representatives, in
/// class order) followed by one per listed subgroup.
pub fn lattice_report(
    g: &Group,
    sig: &GeometricSignature,
    subgroups: &[(String, Subgroup)],
) -> Result<Vec<CoverReport>> {
    let mut out = Vec::new();
    for c in g.cyclic_subgroup_classes() {
        let label = format!("<{}>", g.word(c.generator));
        out.push(cover_report(g, sig, &label, &c.representative)?);
    }
    for (label, h) in subgroups {
        out.push(cover_report(g, sig, label, h)?);
    }
    Ok(out)
}

/// Recomputes genus and cycle structures of `S/H → S/G` from the coset
/// action of a generating vector and compares them with `report`.
pub fn oracle_check(
    g: &Group,
    sig: &GeometricSignature,
    h: &Subgroup,
    v: &GeneratingVector,
    report: &CoverReport,
) -> Result<OracleCheck> {
    let action = monodromy::coset_action(g, h, v)?;
    let genus = monodromy::oracle_genus(&action, sig.genus)?;
    let cycle_structures = monodromy::oracle_cycle_structure(&action);
    let marks = monodromy::oracle_marked_points(&action, &sig.orders())?;
    let marks_agree = report.branch_values.iter().zip(&marks).all(|(bv, m)| {
        let mut ours: Vec<(usize, usize)> =
            bv.marked_points.iter().map(|p| (p.mark, p.count)).collect();
        ours.sort_unstable();
        &ours == m
    });
    let agrees = genus == report.genus
        && marks_agree
        && report
            .branch_values
            .iter()
            .map(|bv| &bv.cycle_structure)
            .eq(cycle_structures.iter());
    Ok(OracleCheck {
        genus,
        cycle_structures,
        agrees,
    })
}

/// [`lattice_report`] with an [`OracleCheck`] attached to every row.
pub fn lattice_report_checked(
    g: &Group,
    sig: &GeometricSignature,
    subgroups: &[(String, Subgroup)],
    v: &GeneratingVector,
) -> Result<Vec<CoverReport>> {
    let mut reports = lattice_report(g, sig, subgroups)?;
    let hs = g
        .cyclic_subgroup_classes()
        .iter()
        .map(|c| &c.representative)
        .chain(subgroups.iter().map(|(_, h)| h));
    for (r, h) in reports.iter_mut().zip(hs) {
        r.oracle = Some(oracle_check(g, sig, h, v, r)?);
    }
    Ok(reports)
}
