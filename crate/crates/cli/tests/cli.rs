use std::io::Write;
use std::process::{Command, Output};

fn geomsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geomsig"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const D4_YES: &str = r#"{"genus":0,"branches":[{"order":4,"class_rep":"x"},{"order":2,"class_rep":"y"},{"order":2,"class_rep":"xy"}]}"#;
const D4_NO: &str = r#"{"genus":0,"branches":[{"order":4,"class_rep":"x"},{"order":2,"class_rep":"x^2"},{"order":2,"class_rep":"x^2"}]}"#;
const WC3_FIRST: &str = r#"{"genus":0,"branches":[{"order":6,"class_rep":"xa^2"},{"order":4,"class_rep":"xyab"},{"order":2,"class_rep":"xyzb"}]}"#;
const WC3_SECOND: &str = r#"{"genus":0,"branches":[{"order":6,"class_rep":"xa^2"},{"order":4,"class_rep":"zab"},{"order":2,"class_rep":"b"}]}"#;
const C4: &str =
    r#"{"genus":1,"branches":[{"order":2,"class_rep":"x^2"},{"order":2,"class_rep":"x^2"}]}"#;

#[test]
fn exists_exit_codes() {
    let yes = geomsig(&["exists", "--group", "dihedral(4)", "--signature", D4_YES]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("witness"));
    let no = geomsig(&["exists", "--group", "dihedral(4)", "--signature", D4_NO]);
    assert_eq!(no.status.code(), Some(1));
    let rh = geomsig(&[
        "exists",
        "--group",
        "dihedral(4)",
        "--signature",
        r#"{"genus":0,"branches":[{"order":2}]}"#,
    ]);
    assert_eq!(rh.status.code(), Some(1));
    let budget = geomsig(&[
        "exists",
        "--group",
        "symmetric(4)",
        "--budget",
        "5",
        "--signature",
        r#"{"genus":1,"branches":[{"order":2}]}"#,
    ]);
    assert_eq!(budget.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_64() {
    let cases: [&[&str]; 5] = [
        &["exists", "--group", "nonsense", "--signature", D4_YES],
        &[
            "exists",
            "--group",
            "dihedral(4)",
            "--signature",
            "{not json",
        ],
        &[
            "exists",
            "--group",
            "dihedral(4)",
            "--signature",
            r#"{"genus":0,"branches":[{"order":4,"class_rep":"q"}]}"#,
        ],
        &[
            "exists",
            "--group",
            "dihedral(4)",
            "--signature",
            "/nonexistent/sig.json",
        ],
        &["chartab", "--group", "cyclic(3)", "--schur-override", "x"],
    ];
    for args in cases {
        assert_eq!(geomsig(args).status.code(), Some(64), "{args:?}");
    }
    assert_eq!(geomsig(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn lattice_wc3_with_named_subgroups() {
    for (sig, genera) in [(WC3_FIRST, [0, 1]), (WC3_SECOND, [1, 0])] {
        let out = geomsig(&[
            "lattice",
            "--group",
            "wc3",
            "--signature",
            sig,
            "--subgroups",
            "H1=y,z,xyzab; H2=y,z,ab",
            "--cross-check",
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        let covers = v[0]["covers"].as_array().unwrap();
        let genus = |label: &str| {
            covers
                .iter()
                .find(|c| c["subgroup"]["label"] == label)
                .unwrap()["genus"]
                .clone()
        };
        assert_eq!(genus("H1"), genera[0]);
        assert_eq!(genus("H2"), genera[1]);
        assert!(covers.iter().all(|c| c["oracle"]["agrees"] == true));
    }
}

#[test]
fn lattice_refuses_unrealizable() {
    let out = geomsig(&["lattice", "--group", "dihedral(4)", "--signature", D4_NO]);
    assert_eq!(out.status.code(), Some(1));
    let forced = geomsig(&[
        "lattice",
        "--group",
        "dihedral(4)",
        "--signature",
        D4_NO,
        "--assume-realizable",
    ]);
    assert_eq!(forced.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&forced.stderr).contains("not realizable"));
}

#[test]
fn trivial_group_lattice() {
    let out = geomsig(&[
        "lattice",
        "--group",
        "cyclic(1)",
        "--signature",
        r#"{"genus":2}"#,
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let covers = v[0]["covers"].as_array().unwrap();
    assert_eq!(covers.len(), 1);
    assert_eq!(covers[0]["genus"], 2);
}

#[test]
fn decompose_reports() {
    let out = geomsig(&["decompose", "--group", "wc3", "--signature", WC3_FIRST]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("JS ∼ E³"));

    let out = geomsig(&[
        "decompose",
        "--group",
        "cyclic(4)",
        "--signature",
        C4,
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let dims: Vec<u64> = v[0]["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["dim_B"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [1, 0, 2]);
    assert_eq!(v[0]["gamma1"][0]["dim_zero"], true);

    let out = geomsig(&[
        "decompose",
        "--group",
        "symmetric(3)",
        "--signature",
        r#"{"genus":3}"#,
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v[0]["records"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["dim_B"].as_u64().unwrap() > 0));
}

#[test]
fn chartab_and_overrides() {
    let out = geomsig(&["chartab", "--group", "quaternion8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let last = v["galois_classes"]
        .as_array()
        .unwrap()
        .last()
        .unwrap()
        .clone();
    assert_eq!(last["schur_index"], 2);
    assert_eq!(last["schur_source"], "computed-upper-bound");

    let out = geomsig(&[
        "chartab",
        "--group",
        "quaternion8",
        "--schur-override",
        "4=1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let last = v["galois_classes"]
        .as_array()
        .unwrap()
        .last()
        .unwrap()
        .clone();
    assert_eq!(last["schur_source"], "user-override");

    let text = stdout(&geomsig(&["chartab", "--group", "cyclic(4)"]));
    assert!(text.contains("E(4)"));
}

#[test]
fn json_output_is_stable() {
    let args = [
        "lattice",
        "--group",
        "dihedral(4)",
        "--signature",
        D4_YES,
        "--cross-check",
        "--format",
        "json",
    ];
    let a = stdout(&geomsig(&args));
    let b = stdout(&geomsig(&args));
    assert_eq!(a, b);
}

#[test]
fn group_and_signature_files() {
    let dir = tempfile::tempdir().unwrap();
    let group = dir.path().join("s3.json");
    std::fs::File::create(&group)
        .unwrap()
        .write_all(br#"{"name":"my-s3","degree":3,"generators":{"r":"(1,2,3)","s":"(1,2)"}}"#)
        .unwrap();
    let sig = dir.path().join("sig.json");
    std::fs::write(&sig, r#"{"genus":0,"branches":[{"order":3,"class_rep":"r"},{"order":2,"class_rep":"s"},{"order":2,"class_rep":"(1,3)"}]}"#)
        .unwrap();
    let out = geomsig(&[
        "exists",
        "--group",
        group.to_str().unwrap(),
        "--signature",
        sig.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["group"], "my-s3");
    assert_eq!(v["verdict"], "exists");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"degree":3,"generators":{"r":"(1,4)"}}"#).unwrap();
    let out = geomsig(&["chartab", "--group", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
}
