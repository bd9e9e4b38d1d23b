//! Intermediate-cover invariants over the realizable corpus, plus
//! separation of geometric signatures by quotient genera.

mod common;

use std::collections::BTreeMap;

use common::{cached, corpus, realizable, separation_sweep, subgroup, test_subgroups, Case};
use geomsig::covers::{cycle_structure, marked_points, quotient_genus, transversal_partition};
use geomsig::group::Group;
use geomsig::monodromy::{coset_action, oracle_cycle_structure, oracle_genus};
use geomsig::signature::{search, GeometricSignature, SignatureSpec};
use proptest::prelude::*;

fn cases() -> &'static [Case] {
    static CORPUS: std::sync::OnceLock<Vec<Case>> = std::sync::OnceLock::new();
    CORPUS.get_or_init(corpus)
}

#[test]
fn fibre_accounting_and_riemann_hurwitz() {
    for case in cases() {
        let (g, sig) = (&case.group, &case.sig);
        let genus = sig.surface_genus(g).unwrap() as i64;
        for (label, h) in test_subgroups(case) {
            let index = g.order() / h.order();
            let gh = quotient_genus(g, sig, &h).unwrap() as i64;
            let mp = marked_points(g, sig, &h).unwrap();
            let cs = cycle_structure(g, sig, &h).unwrap();
            let mut ram_down = 0i64;
            // 2g − 2 = |H|·(2g_H − 2 + Σ count·(1 − 1/mark)), kept integral
            let mut ram_up = 0i64;
            for (j, (sets, e)) in mp.iter().zip(&sig.entries).enumerate() {
                let weighted: usize = sets.iter().map(|s| s.count * (e.order / s.mark)).sum();
                assert_eq!(weighted, index, "{} {label}", case.label);
                for s in sets {
                    assert_eq!(e.order % s.mark, 0);
                    assert!(s.count > 0);
                    assert_eq!(s.branched, s.mark > 1);
                    ram_up += (s.count * (h.order() - h.order() / s.mark)) as i64;
                }
                ram_down += cs[j].iter().map(|&l| l as i64 - 1).sum::<i64>();
                let part = transversal_partition(g, sig, &h, j).unwrap();
                let total: usize = part.sets.iter().map(Vec::len).sum();
                assert_eq!(
                    total,
                    g.order() / g.normalizer(&e.stabilizer).unwrap().order()
                );
                for (set, &mark) in part.sets.iter().zip(&part.marks) {
                    assert!(set
                        .iter()
                        .all(|&l| g.conjugate_intersection(&e.stabilizer, l, &h) == mark));
                }
            }
            let gamma = sig.genus as i64;
            assert_eq!(
                2 * gh - 2,
                index as i64 * (2 * gamma - 2) + ram_down,
                "{} {label}",
                case.label
            );
            assert_eq!(
                2 * genus - 2,
                h.order() as i64 * (2 * gh - 2) + ram_up,
                "{} {label}",
                case.label
            );
        }
    }
}

#[test]
fn genus_decreases_up_the_lattice() {
    for case in cases() {
        let subs = test_subgroups(case);
        for (_, h) in &subs {
            for (_, k) in &subs {
                if h.members().iter().all(|&x| k.contains(x)) {
                    let (gh, gk) = (
                        quotient_genus(&case.group, &case.sig, h).unwrap(),
                        quotient_genus(&case.group, &case.sig, k).unwrap(),
                    );
                    assert!(gh >= gk, "{}", case.label);
                }
            }
        }
        let g = &case.group;
        assert_eq!(
            quotient_genus(g, &case.sig, &g.whole()).unwrap(),
            case.sig.genus
        );
        assert_eq!(
            quotient_genus(g, &case.sig, &g.trivial()).unwrap(),
            case.sig.surface_genus(g).unwrap()
        );
    }
}

/// Every generating vector of the signature gives the same coset-action
/// data as the closed forms.
#[test]
fn oracle_is_independent_of_the_vector() {
    let mut vectors = 0;
    for case in cases()
        .iter()
        .filter(|c| c.group.order() <= 24 && c.sig.genus == 0)
    {
        let (g, sig) = (&case.group, &case.sig);
        let subs = test_subgroups(case);
        let expected: Vec<_> = subs
            .iter()
            .map(|(_, h)| {
                (
                    quotient_genus(g, sig, h).unwrap(),
                    cycle_structure(g, sig, h).unwrap(),
                )
            })
            .collect();
        search(g, sig, u64::MAX, &mut |v| {
            for ((_, h), want) in subs.iter().zip(&expected) {
                let act = coset_action(g, h, v).unwrap();
                assert_eq!(
                    oracle_genus(&act, sig.genus).unwrap(),
                    want.0,
                    "{}",
                    case.label
                );
                assert_eq!(&oracle_cycle_structure(&act), &want.1, "{}", case.label);
            }
            vectors += 1;
            false
        })
        .unwrap();
    }
    assert!(vectors > 100, "only {vectors} vectors examined");
}

fn genus_profile(g: &Group, sig: &GeometricSignature) -> Vec<u64> {
    g.cyclic_subgroup_classes()
        .iter()
        .map(|c| quotient_genus(g, sig, &c.representative).unwrap())
        .collect()
}

fn assert_separated(g: &Group, sigs: &[GeometricSignature]) -> Result<(), String> {
    let mut seen: BTreeMap<Vec<u64>, &GeometricSignature> = BTreeMap::new();
    for sig in sigs {
        if let Some(other) = seen.insert(genus_profile(g, sig), sig) {
            return Err(format!(
                "{:?} and {:?} share all cyclic quotient genera",
                other.to_spec(),
                sig.to_spec()
            ));
        }
    }
    Ok(())
}

#[test]
fn wc3_pair_is_separated() {
    let (g, _) = cached("wc3");
    let s1 =
        GeometricSignature::from_words(&g, 0, &[(6, "xa^2"), (4, "xyab"), (2, "xyzb")]).unwrap();
    let s2 = GeometricSignature::from_words(&g, 0, &[(6, "xa^2"), (4, "zab"), (2, "b")]).unwrap();
    assert_separated(&g, &[s1.clone(), s2.clone()]).unwrap();
    let (h1, h2) = (
        subgroup(&g, &["y", "z", "xyzab"]),
        subgroup(&g, &["y", "z", "ab"]),
    );
    assert_ne!(
        quotient_genus(&g, &s1, &h1).unwrap(),
        quotient_genus(&g, &s2, &h1).unwrap()
    );
    assert_ne!(
        quotient_genus(&g, &s1, &h2).unwrap(),
        quotient_genus(&g, &s2, &h2).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distinct_refinements_are_separated(
        name in prop::sample::select(common::SMALL_GROUPS),
        genus in 0u64..=1,
        picks in prop::collection::vec(any::<usize>(), 1..=4),
    ) {
        let (g, _) = cached(name);
        let orders: Vec<usize> = {
            let mut o: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).filter(|&m| m > 1).collect();
            o.dedup();
            o.sort_unstable();
            o.dedup();
            o
        };
        prop_assume!(!orders.is_empty());
        let branches: Vec<String> = picks.iter().map(|p| format!("{{\"order\":{}}}", orders[p % orders.len()])).collect();
        let spec: SignatureSpec =
            serde_json::from_str(&format!("{{\"genus\":{genus},\"branches\":[{}]}}", branches.join(","))).unwrap();
        if let Some(sigs) = realizable(&g, &spec) {
            prop_assert!(assert_separated(&g, &sigs).is_ok(), "{}", assert_separated(&g, &sigs).unwrap_err());
        }
    }
}

#[test]
fn separation_sweep_over_small_groups() {
    let multi = separation_sweep(assert_separated);
    assert!(
        multi >= 10,
        "only {multi} signatures with several refinements"
    );
}
