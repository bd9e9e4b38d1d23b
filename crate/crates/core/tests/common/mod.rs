//! Shared fixtures: a corpus of realizable signatures on small catalog
//! groups, each with a witness and a list of named subgroups.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use geomsig::char_table::CharacterTable;
use geomsig::group::{catalog, Elem, Group, Subgroup};
use geomsig::signature::{
    find_generating_vector, search, GeneratingVector, GeometricSignature, SignatureSpec,
};
use geomsig::Error;

pub struct Case {
    pub label: String,
    pub group: Arc<Group>,
    pub table: Arc<CharacterTable>,
    pub sig: GeometricSignature,
    pub vector: GeneratingVector,
    pub named: Vec<(String, Subgroup)>,
}

/// `(group, signature)`; branches without a class expand to every
/// realizable refinement.
pub const CORPUS: &[(&str, &str)] = &[
    (
        "dihedral(4)",
        r#"{"genus":0,"branches":[{"order":4,"class_rep":"x"},{"order":2,"class_rep":"y"},{"order":2,"class_rep":"xy"}]}"#,
    ),
    (
        "wc3",
        r#"{"genus":0,"branches":[{"order":6,"class_rep":"xa^2"},{"order":4,"class_rep":"xyab"},{"order":2,"class_rep":"xyzb"}]}"#,
    ),
    (
        "wc3",
        r#"{"genus":0,"branches":[{"order":6,"class_rep":"xa^2"},{"order":4,"class_rep":"zab"},{"order":2,"class_rep":"b"}]}"#,
    ),
    (
        "wc3",
        r#"{"genus":0,"branches":[{"order":2},{"order":2},{"order":2},{"order":3}]}"#,
    ),
    (
        "cyclic(4)",
        r#"{"genus":1,"branches":[{"order":2,"class_rep":"x^2"},{"order":2,"class_rep":"x^2"}]}"#,
    ),
    (
        "symmetric(3)",
        r#"{"genus":0,"branches":[{"order":3},{"order":2},{"order":2}]}"#,
    ),
    (
        "symmetric(4)",
        r#"{"genus":0,"branches":[{"order":4},{"order":3},{"order":2}]}"#,
    ),
    (
        "alternating(4)",
        r#"{"genus":0,"branches":[{"order":3},{"order":3},{"order":2}]}"#,
    ),
    (
        "alternating(4)",
        r#"{"genus":0,"branches":[{"order":3},{"order":3},{"order":3},{"order":3}]}"#,
    ),
    (
        "quaternion8",
        r#"{"genus":0,"branches":[{"order":4},{"order":4},{"order":4}]}"#,
    ),
    (
        "cyclic(6)",
        r#"{"genus":0,"branches":[{"order":2},{"order":3},{"order":6}]}"#,
    ),
    (
        "dihedral(6)",
        r#"{"genus":0,"branches":[{"order":2},{"order":2},{"order":2},{"order":3}]}"#,
    ),
    (
        "dihedral(5)",
        r#"{"genus":0,"branches":[{"order":2},{"order":2},{"order":5}]}"#,
    ),
    (
        "cyclic(5)",
        r#"{"genus":0,"branches":[{"order":5},{"order":5},{"order":5}]}"#,
    ),
    (
        "cyclic(3)",
        r#"{"genus":1,"branches":[{"order":3},{"order":3}]}"#,
    ),
    ("symmetric(3)", r#"{"genus":1,"branches":[{"order":3}]}"#),
    ("dihedral(4)", r#"{"genus":1,"branches":[{"order":2}]}"#),
    ("quaternion8", r#"{"genus":1,"branches":[{"order":2}]}"#),
    (
        "cyclic(2)",
        r#"{"genus":1,"branches":[{"order":2},{"order":2}]}"#,
    ),
    ("alternating(4)", r#"{"genus":1,"branches":[{"order":2}]}"#),
    ("cyclic(2)", r#"{"genus":2}"#),
    ("symmetric(3)", r#"{"genus":2}"#),
    (
        "cyclic(3)",
        r#"{"genus":2,"branches":[{"order":3},{"order":3}]}"#,
    ),
    (
        "symmetric(3)",
        r#"{"genus":2,"branches":[{"order":2},{"order":2}]}"#,
    ),
    ("quaternion8", r#"{"genus":2}"#),
    (
        "dihedral(4)",
        r#"{"genus":2,"branches":[{"order":2,"class_rep":"x^2"}]}"#,
    ),
    (
        "symmetric(4)",
        r#"{"genus":2,"branches":[{"order":2,"class_rep":"x^2"}]}"#,
    ),
];

pub const BUDGET: u64 = 50_000_000;

/// Catalog groups of order at most 48.
pub const SMALL_GROUPS: &[&str] = &[
    "cyclic(1)",
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(4)",
    "cyclic(5)",
    "cyclic(6)",
    "cyclic(8)",
    "cyclic(9)",
    "cyclic(12)",
    "dihedral(3)",
    "dihedral(4)",
    "dihedral(5)",
    "dihedral(6)",
    "dihedral(8)",
    "dihedral(12)",
    "symmetric(3)",
    "symmetric(4)",
    "alternating(4)",
    "quaternion8",
    "wc3",
];

type Entry = (Arc<Group>, Arc<CharacterTable>);

/// Group and character table, computed once per name per test binary.
pub fn cached(name: &str) -> Entry {
    static CACHE: OnceLock<Mutex<HashMap<String, Entry>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    cache
        .entry(name.to_string())
        .or_insert_with(|| {
            let g = group(name);
            let t = Arc::new(CharacterTable::compute(&g).unwrap());
            (g, t)
        })
        .clone()
}

pub fn group(name: &str) -> Arc<Group> {
    Arc::new(catalog(name).unwrap())
}

pub fn subgroup(g: &Group, words: &[&str]) -> Subgroup {
    let gens: Vec<Elem> = words.iter().map(|w| g.parse_element(w).unwrap()).collect();
    g.subgroup(&gens)
}

/// Subgroups generated by each named generator and each pair of them, plus
/// the two index-6 subgroups `H1`, `H2` of `wc3`.
pub fn named_subgroups(g: &Group) -> Vec<(String, Subgroup)> {
    let names: Vec<String> = g
        .named_generators()
        .iter()
        .map(|(n, _)| n.clone())
        .collect();
    let mut out: Vec<(String, Subgroup)> = Vec::new();
    let mut push = |label: String, h: Subgroup| {
        if !out.iter().any(|(_, k)| *k == h) {
            out.push((label, h));
        }
    };
    for (i, a) in names.iter().enumerate() {
        push(format!("<{a}>"), subgroup(g, &[a]));
        for b in &names[i + 1..] {
            push(format!("<{a},{b}>"), subgroup(g, &[a, b]));
        }
    }
    if g.name() == Some("wc3") {
        push("H1".into(), subgroup(g, &["y", "z", "xyzab"]));
        push("H2".into(), subgroup(g, &["y", "z", "ab"]));
    }
    out
}

pub fn corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for &(name, spec) in CORPUS {
        let (g, t) = cached(name);
        let spec: SignatureSpec = serde_json::from_str(spec).unwrap();
        for sig in spec.refinements(&g).unwrap() {
            if let Some(vector) = find_generating_vector(&g, &sig, BUDGET).unwrap().vector {
                out.push(Case {
                    label: format!("{name} {}", serde_json::to_string(&sig.to_spec()).unwrap()),
                    named: named_subgroups(&g),
                    group: g.clone(),
                    table: t.clone(),
                    sig,
                    vector,
                });
            }
        }
    }
    out
}

/// Every cyclic class representative followed by the named subgroups.
pub fn test_subgroups(case: &Case) -> Vec<(String, Subgroup)> {
    let g = &case.group;
    g.cyclic_subgroup_classes()
        .iter()
        .map(|c| {
            (
                format!("<{}>", g.word(c.generator)),
                c.representative.clone(),
            )
        })
        .chain(case.named.iter().cloned())
        .collect()
}

/// Realizable refinements of a plain signature, `None` if the search budget
/// runs out.
pub fn realizable(g: &Group, spec: &SignatureSpec) -> Option<Vec<GeometricSignature>> {
    let mut out = Vec::new();
    for sig in spec.refinements(g).ok()? {
        let mut found = false;
        match search(g, &sig, 200_000, &mut |_| {
            found = true;
            true
        }) {
            Ok(_) if found => out.push(sig),
            Ok(_) => {}
            Err(Error::RiemannHurwitz { .. }) => return Some(Vec::new()),
            Err(_) => return None,
        }
    }
    Some(out)
}

/// Every multiset of at most three branch orders with γ ≤ 1 on groups of
/// order at most 24; returns how many plain signatures had two or more
/// realizable refinements.
pub fn separation_sweep(
    check: impl Fn(&Group, &[GeometricSignature]) -> Result<(), String>,
) -> usize {
    let mut multi = 0;
    for name in SMALL_GROUPS {
        let (g, _) = cached(name);
        if g.order() > 24 {
            continue;
        }
        let mut orders: Vec<usize> = (0..g.order())
            .map(|x| g.element_order(x))
            .filter(|&m| m > 1)
            .collect();
        orders.sort_unstable();
        orders.dedup();
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        let mut plains = layer.clone();
        for _ in 0..3 {
            layer = layer
                .iter()
                .flat_map(|p| {
                    orders
                        .iter()
                        .filter(|&&m| p.last().is_none_or(|&l| l <= m))
                        .map(|&m| {
                            let mut q = p.clone();
                            q.push(m);
                            q
                        })
                })
                .collect();
            plains.extend(layer.iter().cloned());
        }
        for genus in 0..=1 {
            for p in &plains {
                let branches: Vec<String> =
                    p.iter().map(|m| format!("{{\"order\":{m}}}")).collect();
                let spec: SignatureSpec = serde_json::from_str(&format!(
                    "{{\"genus\":{genus},\"branches\":[{}]}}",
                    branches.join(",")
                ))
                .unwrap();
                if let Some(sigs) = realizable(&g, &spec) {
                    if sigs.len() > 1 {
                        multi += 1;
                        check(&g, &sigs).unwrap();
                    }
                }
            }
        }
    }
    multi
}
