//! Serializable reports and their plain-text rendering.
//!
//! Every report carries the group name and hash and the signature it was
//! computed for, so a saved JSON file is self-describing.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::char_table::{CharacterTable, SchurSource};
use crate::covers::{self, CoverReport};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::jacobian::DecompositionReport;
use crate::signature::{self, GeneratingVector, GeometricSignature, SignatureSpec};
use crate::Cyclotomic;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub label: String,
    pub representative: String,
    pub word: String,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub index: usize,
    pub degree: u64,
    pub values: Vec<Cyclotomic>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisClassRow {
    pub members: Vec<usize>,
    pub field_degree: usize,
    pub schur_index: u64,
    pub schur_source: SchurSource,
    pub frobenius_schur: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTableReport {
    pub group: Option<String>,
    pub group_hash: String,
    pub order: usize,
    pub conductor: u32,
    pub schur_verified: bool,
    pub classes: Vec<ClassRow>,
    pub characters: Vec<CharacterRow>,
    pub galois_classes: Vec<GaloisClassRow>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

/// GAP-style class names: element order followed by a letter.
fn class_labels(t: &CharacterTable) -> Vec<String> {
    let mut seen = std::collections::HashMap::new();
    t.classes()
        .iter()
        .map(|c| {
            let k = seen.entry(c.element_order).or_insert(0u32);
            let mut suffix = String::new();
            let mut n = *k;
            loop {
                suffix.insert(0, (b'a' + (n % 26) as u8) as char);
                if n < 26 {
                    break;
                }
                n = n / 26 - 1;
            }
            *k += 1;
            format!("{}{}", c.element_order, suffix)
        })
        .collect()
}

pub fn chartab_report(g: &Group, t: &CharacterTable) -> CharTableReport {
    let labels = class_labels(t);
    CharTableReport {
        group: t.group_name().map(str::to_string),
        group_hash: t.group_hash().to_string(),
        order: t.order(),
        conductor: t.conductor(),
        schur_verified: t.schur_verified(),
        classes: t
            .classes()
            .iter()
            .zip(labels)
            .map(|(c, label)| ClassRow {
                label,
                representative: g.perm(c.representative).to_string(),
                word: g.word(c.representative),
                size: c.size,
                element_order: c.element_order,
            })
            .collect(),
        characters: t
            .characters()
            .iter()
            .map(|c| CharacterRow {
                index: c.index,
                degree: c.degree,
                values: c.values.clone(),
            })
            .collect(),
        galois_classes: t
            .galois_classes()
            .iter()
            .map(|gc| GaloisClassRow {
                members: gc.members.clone(),
                field_degree: gc.field_degree,
                schur_index: gc.schur_index,
                schur_source: gc.schur_index_source,
                frobenius_schur: gc.frobenius_schur,
            })
            .collect(),
        warnings: t.warnings().to_vec(),
    }
}

fn source_name(s: SchurSource) -> &'static str {
    match s {
        SchurSource::ComputedUpperBound => "computed-upper-bound",
        SchurSource::UserOverride => "user-override",
    }
}

fn header(out: &mut String, group: &Option<String>, hash: &str) {
    let name = group.as_deref().unwrap_or("(unnamed)");
    let _ = writeln!(out, "group {name}  hash {}", &hash[..hash.len().min(16)]);
}

/// Left-pads every column of `rows` to a common width.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{}{s}", " ".repeat(w - s.chars().count())))
            .collect();
        let _ = writeln!(out, "  {}", line.join("  ").trim_end());
    }
    out
}

pub fn render_chartab(r: &CharTableReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.group, &r.group_hash);
    let _ = writeln!(out, "order {}  values in Q(E({}))", r.order, r.conductor);
    let _ = writeln!(out, "classes:");
    let mut rows = vec![vec![
        "".into(),
        "size".into(),
        "word".into(),
        "representative".into(),
    ]];
    for c in &r.classes {
        rows.push(vec![
            c.label.clone(),
            c.size.to_string(),
            c.word.clone(),
            c.representative.clone(),
        ]);
    }
    out += &aligned(&rows);
    let _ = writeln!(out, "characters:");
    let mut rows = vec![std::iter::once(String::new())
        .chain(r.classes.iter().map(|c| c.label.clone()))
        .collect()];
    for c in &r.characters {
        let mut row = vec![format!("X.{}", c.index)];
        row.extend(c.values.iter().map(|v| v.to_string()));
        rows.push(row);
    }
    out += &aligned(&rows);
    let _ = writeln!(out, "galois classes:");
    let mut rows = vec![vec![
        "".into(),
        "members".into(),
        "field".into(),
        "schur".into(),
        "source".into(),
        "FS".into(),
    ]];
    for (i, gc) in r.galois_classes.iter().enumerate() {
        let members: Vec<String> = gc.members.iter().map(|m| format!("X.{m}")).collect();
        rows.push(vec![
            format!("{i}"),
            members.join(","),
            gc.field_degree.to_string(),
            gc.schur_index.to_string(),
            source_name(gc.schur_source).into(),
            format!("{:+}", gc.frobenius_schur),
        ]);
    }
    out += &aligned(&rows);
    let _ = writeln!(
        out,
        "schur indices: {}",
        if r.schur_verified {
            "bound known exact for this family"
        } else {
            "upper bounds"
        }
    );
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exists,
    NotExists,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
}

impl Witness {
    pub fn new(g: &Group, v: &GeneratingVector) -> Witness {
        let w = |xs: &[usize]| xs.iter().map(|&x| g.word(x)).collect();
        Witness {
            a: w(&v.a),
            b: w(&v.b),
            c: w(&v.c),
        }
    }
}

/// Outcome for one geometric refinement of the input signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementOutcome {
    pub signature: SignatureSpec,
    pub verdict: Verdict,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistsReport {
    pub group: Option<String>,
    pub group_hash: String,
    pub signature: SignatureSpec,
    pub verdict: Verdict,
    /// Genus of `S`, when the Riemann–Hurwitz condition holds.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub genus: Option<u64>,
    /// First condition that rules the action out, when known.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failed_condition: Option<String>,
    pub refinements: Vec<RefinementOutcome>,
}

/// Decides existence for every geometric refinement of `spec`.
pub fn exists_report(g: &Group, spec: &SignatureSpec, budget: u64) -> Result<ExistsReport> {
    let orders: Vec<usize> = spec.branches.iter().map(|b| b.order).collect();
    let sigs = spec.refinements(g)?;
    let mut report = ExistsReport {
        group: g.name().map(str::to_string),
        group_hash: g.hash().to_string(),
        signature: spec.clone(),
        verdict: Verdict::NotExists,
        genus: None,
        failed_condition: None,
        refinements: Vec::new(),
    };
    match signature::riemann_hurwitz_genus(g.order(), spec.genus, &orders) {
        Ok(genus) => report.genus = Some(genus),
        Err(Error::RiemannHurwitz { value }) => {
            report.failed_condition = Some(format!("riemann-hurwitz: genus would be {value}"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    }
    if sigs.is_empty() {
        report.failed_condition = Some("orders: no cyclic subgroup of a required order".into());
    }
    let mut exhausted = false;
    for sig in &sigs {
        let outcome = match signature::find_generating_vector(g, sig, budget) {
            Ok(o) => RefinementOutcome {
                signature: sig.to_spec(),
                verdict: if o.vector.is_some() {
                    Verdict::Exists
                } else {
                    Verdict::NotExists
                },
                nodes: o.nodes,
                witness: o.vector.as_ref().map(|v| Witness::new(g, v)),
            },
            Err(Error::BudgetExceeded { budget }) => {
                exhausted = true;
                RefinementOutcome {
                    signature: sig.to_spec(),
                    verdict: Verdict::BudgetExhausted,
                    nodes: budget,
                    witness: None,
                }
            }
            Err(e) => return Err(e),
        };
        report.refinements.push(outcome);
    }
    if report
        .refinements
        .iter()
        .any(|r| r.verdict == Verdict::Exists)
    {
        report.verdict = Verdict::Exists;
    } else if exhausted {
        report.verdict = Verdict::BudgetExhausted;
    } else if !sigs.is_empty() {
        report.failed_condition = Some("generation: no generating vector of this type".into());
    }
    Ok(report)
}

fn spec_text(s: &SignatureSpec) -> String {
    let branches: Vec<String> = s
        .branches
        .iter()
        .map(|b| match &b.class_rep {
            Some(rep) => format!("[{}, <{rep}>]", b.order),
            None => b.order.to_string(),
        })
        .collect();
    if branches.is_empty() {
        format!("({})", s.genus)
    } else {
        format!("({}; {})", s.genus, branches.join(", "))
    }
}

pub fn render_exists(r: &ExistsReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.group, &r.group_hash);
    let _ = writeln!(out, "signature {}", spec_text(&r.signature));
    if let Some(g) = r.genus {
        let _ = writeln!(out, "surface genus {g}");
    }
    for o in &r.refinements {
        let verdict = match o.verdict {
            Verdict::Exists => "exists",
            Verdict::NotExists => "no generating vector",
            Verdict::BudgetExhausted => "budget exhausted",
        };
        let _ = writeln!(
            out,
            "  {}: {verdict} ({} nodes)",
            spec_text(&o.signature),
            o.nodes
        );
        if let Some(w) = &o.witness {
            let mut parts = Vec::new();
            if !w.a.is_empty() {
                parts.push(format!("a = ({})", w.a.join(", ")));
                parts.push(format!("b = ({})", w.b.join(", ")));
            }
            parts.push(format!("c = ({})", w.c.join(", ")));
            let _ = writeln!(out, "    witness {}", parts.join("; "));
        }
    }
    let verdict = match r.verdict {
        Verdict::Exists => "EXISTS",
        Verdict::NotExists => "DOES NOT EXIST",
        Verdict::BudgetExhausted => "UNDECIDED (budget exhausted)",
    };
    let _ = writeln!(out, "verdict: {verdict}");
    if let Some(f) = &r.failed_condition {
        let _ = writeln!(out, "failed condition: {f}");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub group: Option<String>,
    pub group_hash: String,
    pub signature: SignatureSpec,
    pub genus: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub covers: Vec<CoverReport>,
}

/// Covers for all cyclic classes and `subgroups`. With a generating vector
/// each row also carries the coset-action recomputation.
pub fn lattice(
    g: &Group,
    sig: &GeometricSignature,
    subgroups: &[(String, Subgroup)],
    vector: Option<&GeneratingVector>,
) -> Result<LatticeReport> {
    let covers = match vector {
        Some(v) => covers::lattice_report_checked(g, sig, subgroups, v)?,
        None => covers::lattice_report(g, sig, subgroups)?,
    };
    Ok(LatticeReport {
        group: g.name().map(str::to_string),
        group_hash: g.hash().to_string(),
        signature: sig.to_spec(),
        genus: sig.surface_genus(g)?,
        witness: vector.map(|v| Witness::new(g, v)),
        covers,
    })
}

pub fn render_lattice(r: &LatticeReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.group, &r.group_hash);
    let _ = writeln!(
        out,
        "signature {}  surface genus {}",
        spec_text(&r.signature),
        r.genus
    );
    let mut rows = vec![vec![
        "subgroup".to_string(),
        "order".into(),
        "index".into(),
        "genus".into(),
        "marked points".into(),
        "cycle structure".into(),
        "oracle".into(),
    ]];
    for c in &r.covers {
        let marks: Vec<String> = c
            .branch_values
            .iter()
            .map(|bv| {
                let sets: Vec<String> = bv
                    .marked_points
                    .iter()
                    .map(|m| format!("{}x{}", m.count, m.mark))
                    .collect();
                sets.join("+")
            })
            .collect();
        let cycles: Vec<String> = c
            .branch_values
            .iter()
            .map(|bv| {
                let e: Vec<String> = bv.cycle_structure.iter().map(usize::to_string).collect();
                format!("({})", e.join(","))
            })
            .collect();
        let oracle = match &c.oracle {
            Some(o) if o.agrees => "ok".to_string(),
            Some(o) => format!("MISMATCH genus {}", o.genus),
            None => "-".to_string(),
        };
        rows.push(vec![
            c.subgroup.label.clone(),
            c.subgroup.order.to_string(),
            c.degree.to_string(),
            c.genus.to_string(),
            if marks.is_empty() {
                "-".into()
            } else {
                marks.join(" | ")
            },
            if cycles.is_empty() {
                "-".into()
            } else {
                cycles.join(" ")
            },
            oracle,
        ]);
    }
    out += &aligned(&rows);
    out
}

pub fn render_decomposition(r: &DecompositionReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.group, &r.group_hash);
    let _ = writeln!(
        out,
        "signature {}  surface genus {}  quotient genus {}",
        spec_text(&r.signature),
        r.total_genus,
        r.quotient_genus
    );
    let mut rows = vec![[
        "class",
        "characters",
        "degree",
        "field",
        "schur",
        "source",
        "n",
        "e",
        "k",
        "dim B",
        "exponent",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect::<Vec<_>>()];
    for rec in &r.records {
        let chars: Vec<String> = rec.characters.iter().map(|c| format!("X.{c}")).collect();
        rows.push(vec![
            rec.galois_class.to_string(),
            chars.join(","),
            rec.degree.to_string(),
            rec.field_degree.to_string(),
            rec.schur_index.to_string(),
            source_name(rec.schur_source).into(),
            rec.n.to_string(),
            rec.e.to_string(),
            rec.k.to_string(),
            rec.dim_b.to_string(),
            rec.exponent.to_string(),
        ]);
    }
    out += &aligned(&rows);
    let _ = writeln!(out, "{}", r.summary);
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;
    use crate::jacobian::factor_dimensions;

    #[test]
    fn chartab_json_round_trip() {
        let g = catalog("cyclic(4)").unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let r = chartab_report(&g, &t);
        let json = serde_json::to_string_pretty(&r).unwrap();
        let back: CharTableReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
        let labels: Vec<&str> = r.classes.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["1a", "2a", "4a", "4b"]);
        let text = render_chartab(&r);
        assert!(text.contains("E(4)"), "{text}");
    }

    #[test]
    fn exists_verdicts() {
        let g = catalog("dihedral(4)").unwrap();
        let spec = |s: &str| serde_json::from_str::<SignatureSpec>(s).unwrap();
        let yes = exists_report(
            &g,
            &spec(r#"{"genus":0,"branches":[{"order":4,"class_rep":"x"},{"order":2,"class_rep":"y"},{"order":2,"class_rep":"xy"}]}"#),
            1000,
        )
        .unwrap();
        assert_eq!(yes.verdict, Verdict::Exists);
        assert_eq!(yes.genus, Some(0));
        let no = exists_report(
            &g,
            &spec(r#"{"genus":0,"branches":[{"order":2},{"order":2}]}"#),
            1000,
        )
        .unwrap();
        assert_eq!(no.verdict, Verdict::NotExists);
        assert!(no.failed_condition.unwrap().starts_with("riemann-hurwitz"));
        let plain = exists_report(
            &g,
            &spec(r#"{"genus":0,"branches":[{"order":2},{"order":2},{"order":4}]}"#),
            1000,
        )
        .unwrap();
        assert_eq!(plain.verdict, Verdict::Exists);
        assert!(plain
            .refinements
            .iter()
            .any(|r| r.verdict == Verdict::NotExists));
        let json = serde_json::to_string(&plain).unwrap();
        assert_eq!(serde_json::from_str::<ExistsReport>(&json).unwrap(), plain);
    }

    #[test]
    fn decomposition_text_and_round_trip() {
        let g = catalog("wc3").unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let sig = GeometricSignature::from_words(&g, 0, &[(6, "xa^2"), (4, "xyab"), (2, "xyzb")])
            .unwrap();
        let r = factor_dimensions(&g, &t, &sig).unwrap();
        assert!(render_decomposition(&r).contains("JS ∼ E³"));
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"dim_B\""));
        assert_eq!(
            serde_json::from_str::<DecompositionReport>(&json).unwrap(),
            r
        );

        let v = signature::find_generating_vector(&g, &sig, 1_000_000)
            .unwrap()
            .vector
            .unwrap();
        let lat = lattice(&g, &sig, &[], Some(&v)).unwrap();
        assert!(lat.covers.iter().all(|c| c.oracle.as_ref().unwrap().agrees));
        let json = serde_json::to_string(&lat).unwrap();
        assert_eq!(serde_json::from_str::<LatticeReport>(&json).unwrap(), lat);
        assert!(render_lattice(&lat).contains("ok"));
    }
}
