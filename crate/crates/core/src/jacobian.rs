//! Isotypical decomposition of the action on `H₁(S, Q)` and the isogeny
//! decomposition of the Jacobian it induces.
//!
//! Multiplicities come from a closed formula in the branch data. They are
//! cross-checked by solving the linear system relating them to the genera of
//! the quotients `S/H` by cyclic subgroups.

use serde::{Deserialize, Serialize};

use crate::char_table::{CharacterTable, SchurSource};
use crate::covers;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::scalar::solve;
use crate::signature::{GeometricSignature, SignatureSpec};
use crate::Rational;

/// Complex multiplicity of every irreducible character in `H₁(S, C)`.
pub fn complex_multiplicities(t: &CharacterTable, sig: &GeometricSignature) -> Result<Vec<u64>> {
    let gamma = sig.genus as i64;
    let mut out = Vec::with_capacity(t.characters().len());
    for c in t.characters() {
        if t.is_trivial(c.index) {
            out.push(2 * sig.genus);
            continue;
        }
        let d = c.degree as i64;
        let mut n = 2 * d * (gamma - 1);
        for e in &sig.entries {
            n += d - t.fixed_dim(c.index, &e.stabilizer)? as i64;
        }
        if n < 0 {
            return Err(Error::defect(format!(
                "negative multiplicity {n} for character {}",
                c.index
            )));
        }
        out.push(n as u64);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaSystem {
    /// `matrix[j][i]`: summed fixed dimension of Galois class `i` under the
    /// representative of cyclic class `j`.
    pub matrix: Vec<Vec<u64>>,
    /// `2·g(S/H_j)`.
    pub rhs: Vec<u64>,
    /// Multiplicity per Galois class.
    pub solution: Vec<u64>,
}

pub fn omega_matrix(g: &Group, t: &CharacterTable) -> Result<Vec<Vec<u64>>> {
    g.cyclic_subgroup_classes()
        .iter()
        .map(|c| {
            t.galois_classes()
                .iter()
                .map(|gc| {
                    gc.members
                        .iter()
                        .map(|&m| t.fixed_dim(m, &c.representative))
                        .sum::<Result<u64>>()
                })
                .collect()
        })
        .collect()
}

/// Solves for the Galois-class multiplicities given the genus of `S/H_j` for
/// every cyclic class representative `H_j`, in class order.
pub fn solve_omega_system(g: &Group, t: &CharacterTable, genera: &[u64]) -> Result<OmegaSystem> {
    let matrix = omega_matrix(g, t)?;
    if genera.len() != matrix.len() {
        return Err(Error::defect(format!(
            "{} genera for {} cyclic classes",
            genera.len(),
            matrix.len()
        )));
    }
    let q = |v: u64| Rational::from_integer(v.into());
    let a: Vec<Vec<Rational>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| q(x)).collect())
        .collect();
    let rhs: Vec<u64> = genera.iter().map(|&x| 2 * x).collect();
    let b: Vec<Rational> = rhs.iter().map(|&x| q(x)).collect();
    let x = solve(&a, &b).ok_or_else(|| Error::defect("the multiplicity system is singular"))?;
    let solution = x
        .iter()
        .map(|v| {
            if v.is_integer() && *v >= Rational::from_integer(0.into()) {
                u64::try_from(v.to_integer()).map_err(|_| Error::NotIntegral(v.to_string()))
            } else {
                Err(Error::NotIntegral(v.to_string()))
            }
        })
        .collect::<Result<_>>()?;
    Ok(OmegaSystem {
        matrix,
        rhs,
        solution,
    })
}

/// Builds the system from the quotient genera and checks it against the
/// closed-form multiplicities.
pub fn omega_cross_check(
    g: &Group,
    t: &CharacterTable,
    sig: &GeometricSignature,
) -> Result<OmegaSystem> {
    let genera = g
        .cyclic_subgroup_classes()
        .iter()
        .map(|c| covers::quotient_genus(g, sig, &c.representative))
        .collect::<Result<Vec<_>>>()?;
    let system = solve_omega_system(g, t, &genera)?;
    let closed = complex_multiplicities(t, sig)?;
    for (gc, &n) in t.galois_classes().iter().zip(&system.solution) {
        if gc.members.iter().any(|&m| closed[m] != n) {
            return Err(Error::defect(format!(
                "linear system gives {n} for Galois class of character {}, closed form gives {}",
                gc.representative(),
                closed[gc.representative()]
            )));
        }
    }
    Ok(system)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRecord {
    pub galois_class: usize,
    pub characters: Vec<usize>,
    pub degree: u64,
    pub field_degree: usize,
    pub schur_index: u64,
    pub schur_source: SchurSource,
    /// Complex multiplicity of each member.
    pub n: u64,
    /// Multiplicity of the rational irreducible, `n / schur_index`.
    pub e: u64,
    pub k: u64,
    #[serde(rename = "dim_B")]
    pub dim_b: u64,
    pub exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub group: Option<String>,
    pub group_hash: String,
    pub signature: SignatureSpec,
    pub total_genus: u64,
    pub quotient_genus: u64,
    pub records: Vec<MultiplicityRecord>,
    pub omega: OmegaSystem,
    pub summary: String,
    #[serde(default)]
    pub warnings: Vec<String>,
}

pub fn factor_dimensions(
    g: &Group,
    t: &CharacterTable,
    sig: &GeometricSignature,
) -> Result<DecompositionReport> {
    let total_genus = sig.surface_genus(g)?;
    let n = complex_multiplicities(t, sig)?;
    let omega = omega_cross_check(g, t, sig)?;
    let mut warnings = Vec::new();
    let mut records = Vec::new();
    for (i, gc) in t.galois_classes().iter().enumerate() {
        let rep = gc.representative();
        let degree = t.characters()[rep].degree;
        let s = gc.schur_index;
        let ni = n[rep];
        let k = s * gc.field_degree as u64;
        if ni % s != 0 || !degree.is_multiple_of(s) {
            return Err(Error::NotIntegral(format!(
                "Schur index {s} does not divide multiplicity {ni} and degree {degree} of character {rep}"
            )));
        }
        let dim_b = if t.is_trivial(rep) {
            sig.genus
        } else {
            if !(k * ni).is_multiple_of(2) {
                return Err(Error::NotIntegral(format!(
                    "dim B = {}/2 for character {rep}",
                    k * ni
                )));
            }
            k * ni / 2
        };
        if gc.schur_index_source == SchurSource::ComputedUpperBound && !t.schur_verified() && s > 1
        {
            warnings.push(format!(
                "Schur index {s} of character {rep} is a computed upper bound for a group outside the verified list"
            ));
        }
        records.push(MultiplicityRecord {
            galois_class: i,
            characters: gc.members.clone(),
            degree,
            field_degree: gc.field_degree,
            schur_index: s,
            schur_source: gc.schur_index_source,
            n: ni,
            e: ni / s,
            k,
            dim_b,
            exponent: degree / s,
        });
    }
    let accounted: u64 = records.iter().map(|r| r.dim_b * r.exponent).sum();
    if accounted != total_genus {
        return Err(Error::defect(format!(
            "factor dimensions account for {accounted}, genus is {total_genus}"
        )));
    }
    warnings.extend(t.warnings().iter().cloned());
    Ok(DecompositionReport {
        group: t.group_name().map(str::to_string),
        group_hash: t.group_hash().to_string(),
        signature: sig.to_spec(),
        total_genus,
        quotient_genus: sig.genus,
        summary: summary(&records),
        records,
        omega,
        warnings,
    })
}

fn superscript(n: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

/// `JS ∼ E³`, `JS ∼ E₀ × B₂`: one factor per nonzero record, elliptic
/// factors written `E`, subscripted by Galois class when there are several.
fn summary(records: &[MultiplicityRecord]) -> String {
    let nonzero: Vec<&MultiplicityRecord> = records.iter().filter(|r| r.dim_b > 0).collect();
    if nonzero.is_empty() {
        return "JS = 0".to_string();
    }
    let elliptic = nonzero.iter().filter(|r| r.dim_b == 1).count();
    let factors: Vec<String> = nonzero
        .iter()
        .map(|r| {
            let base = if r.dim_b == 1 {
                if elliptic > 1 {
                    format!("E{}", subscript(r.galois_class))
                } else {
                    "E".to_string()
                }
            } else {
                format!("B{}", subscript(r.galois_class))
            };
            if r.exponent > 1 {
                format!("{base}{}", superscript(r.exponent))
            } else {
                base
            }
        })
        .collect();
    format!("JS ∼ {}", factors.join(" × "))
}

/// The four conditions characterising `dim B = 0` when the quotient genus
/// is one, for a nontrivial Galois class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gamma1Row {
    pub galois_class: usize,
    pub dim_zero: bool,
    pub stabilizers_in_kernel: bool,
    pub kernel_cover_unramified: bool,
    pub kernel_quotient_genus_one: bool,
    pub degree: u64,
}

impl Gamma1Row {
    pub fn consistent(&self) -> bool {
        let all = [
            self.dim_zero,
            self.stabilizers_in_kernel,
            self.kernel_cover_unramified,
            self.kernel_quotient_genus_one,
        ];
        all.iter().all(|&b| b == all[0]) && (!self.dim_zero || self.degree == 1)
    }
}

pub fn gamma1_analysis(
    g: &Group,
    t: &CharacterTable,
    sig: &GeometricSignature,
) -> Result<Vec<Gamma1Row>> {
    if sig.genus != 1 {
        return Err(Error::InvalidSignature(format!(
            "quotient genus is {}, expected 1",
            sig.genus
        )));
    }
    let report = factor_dimensions(g, t, sig)?;
    let mut rows = Vec::new();
    for rec in report.records.iter().skip(1) {
        let rep = rec.characters[0];
        let kernel = g.subgroup_from_members(&t.kernel(rep))?;
        let cycles = covers::cycle_structure(g, sig, &kernel)?;
        let row = Gamma1Row {
            galois_class: rec.galois_class,
            dim_zero: rec.dim_b == 0,
            stabilizers_in_kernel: sig.entries.iter().all(|e| kernel.contains(e.generator)),
            kernel_cover_unramified: cycles.iter().flatten().all(|&x| x == 1),
            kernel_quotient_genus_one: covers::quotient_genus(g, sig, &kernel)? == 1,
            degree: rec.degree,
        };
        if !row.consistent() {
            return Err(Error::defect(format!(
                "genus-one conditions disagree: {row:?}"
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn cyclic4_example() {
        let g = catalog("cyclic(4)").unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let sig = GeometricSignature::from_words(&g, 1, &[(2, "x^2"), (2, "x^2")]).unwrap();
        let report = factor_dimensions(&g, &t, &sig).unwrap();
        assert_eq!(report.total_genus, 3);
        assert_eq!(report.omega.solution, vec![2, 0, 2]);
        let dims: Vec<u64> = report.records.iter().map(|r| r.dim_b).collect();
        assert_eq!(dims, vec![1, 0, 2]);
        assert_eq!(report.records[2].k, 2);
        assert_eq!(report.summary, "JS ∼ E × B₂");
        let rows = gamma1_analysis(&g, &t, &sig).unwrap();
        assert!(rows[0].dim_zero && rows[0].stabilizers_in_kernel && rows[0].degree == 1);
        assert!(!rows[1].dim_zero && !rows[1].kernel_quotient_genus_one);
    }

    #[test]
    fn wc3_three_elliptic_curves() {
        let g = catalog("wc3").unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let mut carriers = Vec::new();
        for branches in [
            [(6, "xa^2"), (4, "xyab"), (2, "xyzb")],
            [(6, "xa^2"), (4, "zab"), (2, "b")],
        ] {
            let sig = GeometricSignature::from_words(&g, 0, &branches).unwrap();
            let r = factor_dimensions(&g, &t, &sig).unwrap();
            assert_eq!(r.summary, "JS ∼ E³");
            let n = complex_multiplicities(&t, &sig).unwrap();
            let nonzero: Vec<usize> = (1..n.len()).filter(|&i| n[i] > 0).collect();
            assert_eq!(nonzero.len(), 1);
            assert_eq!(n[nonzero[0]], 2);
            carriers.push(nonzero[0]);
        }
        assert_ne!(carriers[0], carriers[1]);
    }

    #[test]
    fn unbranched_higher_genus() {
        let g = catalog("symmetric(3)").unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let sig = GeometricSignature {
            genus: 3,
            entries: vec![],
        };
        let r = factor_dimensions(&g, &t, &sig).unwrap();
        assert!(r.records.iter().all(|x| x.dim_b > 0));
        let unbranched_g1 = GeometricSignature {
            genus: 1,
            entries: vec![],
        };
        let h = catalog("cyclic(3)").unwrap();
        let th = CharacterTable::compute(&h).unwrap();
        for row in gamma1_analysis(&h, &th, &unbranched_g1).unwrap() {
            assert!(row.dim_zero && row.kernel_cover_unramified);
        }
    }

    #[test]
    fn trivial_group_system() {
        let g = catalog("cyclic(1)").unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let s = solve_omega_system(&g, &t, &[2]).unwrap();
        assert_eq!(s.solution, vec![4]);
    }
}
