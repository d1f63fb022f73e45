use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_corner-mixvol");

const DELTA2: &str = r#"{"dim":2,"vertices":[["0","0"],["1","0"],["0","1"]]}"#;
const SQUARE: &str = r#"{"dim":2,"vertices":[["0","0"],["1","0"],["0","1"],["1","1"]]}"#;
const DELTA3: &str = r#"{"dim":3,"vertices":[["0","0","0"],["1","0","0"],["0","1","0"],["0","0","1"]]}"#;
const NEG_DELTA3: &str = r#"{"dim":3,"vertices":[["0","0","0"],["-1","0","0"],["0","-1","0"],["0","0","-1"]]}"#;

fn file(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("CORNER_MIXVOL_MAX_DIM")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn mixvol_examples() {
    let d2 = file("mv_d2.json", DELTA2);
    let sq = file("mv_sq.json", SQUARE);
    let o = run(&["mixvol", path(&d2), path(&d2), "--j", "1"]);
    assert_eq!((code(&o), stdout(&o)), (0, "1/2\n".into()));
    let o = run(&["mixvol", path(&sq), path(&d2), "--j", "1", "--method", "polarization"]);
    assert_eq!(stdout(&o), "1\n");

    let d3 = file("mv_d3.json", DELTA3);
    let n3 = file("mv_n3.json", NEG_DELTA3);
    for (j, expected) in ["1/6", "1/2", "1/2", "1/6"].iter().enumerate() {
        let o = run(&[
            "mixvol",
            path(&d3),
            path(&n3),
            "--j",
            &j.to_string(),
            "--cross-check",
            "--format",
            "json",
        ]);
        assert_eq!(code(&o), 0);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["value"], *expected);
        assert_eq!(
            v["methods"].as_object().unwrap().len(),
            3,
            "closed form needs a common orthant"
        );
    }
}

#[test]
fn exit_codes() {
    let d2 = file("ec_d2.json", DELTA2);
    let sq = file("ec_sq.json", SQUARE);
    let bad = file("ec_bad.json", r#"{"dim":2,"vertices":[["1","x"]]}"#);
    assert_eq!(code(&run(&["mixvol", path(&bad), path(&d2), "--j", "1"])), 2);
    assert_eq!(code(&run(&["mixvol", "/nonexistent.json", path(&d2), "--j", "1"])), 2);
    assert_eq!(code(&run(&["mixvol", path(&d2), path(&d2), "--j", "3"])), 2);
    assert_eq!(
        code(&run(&[
            "mixvol",
            path(&sq),
            path(&d2),
            "--j",
            "1",
            "--method",
            "closed-form"
        ])),
        3
    );
    assert_eq!(
        code(&run(&[
            "mixvol",
            path(&d2),
            path(&d2),
            "--j",
            "1",
            "--method",
            "decomposition"
        ])),
        3
    );
    assert_eq!(code(&run(&["godbersen", "--dim", "5"])), 2);
    assert_eq!(code(&run(&["godbersen", "--format", "xml"])), 2);
}

#[test]
fn dimension_cap_override() {
    let o = Command::new(BIN)
        .args(["simplex", "--dim", "5", "--trials", "1", "--format", "csv"])
        .env("CORNER_MIXVOL_MAX_DIM", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1 + 2 * 6);
}

#[test]
fn gen_examples() {
    let o = run(&["gen", "--family", "equality-2", "--alphas", "1,1", "--beta", "1"]);
    assert_eq!(
        stdout(&o),
        concat!(
            r#"{"dim":2,"pieces":{"++":{"dim":2,"vertices":[["0","0"],["0","1"],["1","0"]],"kind":"anti-blocking"},"#,
            r#""+-":{"dim":2,"vertices":[["0","0"],["1","0"]],"kind":"anti-blocking"},"#,
            r#""-+":{"dim":2,"vertices":[["0","0"],["0","1"],["1","0"]],"kind":"anti-blocking"},"#,
            r#""--":{"dim":2,"vertices":[["0","0"],["1","0"]],"kind":"anti-blocking"}}}"#,
            "\n"
        )
    );
    let a = run(&["gen", "--style", "unconditional", "--seed", "1"]);
    let b = run(&["gen", "--style", "unconditional", "--seed", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(
        a.stdout,
        run(&["gen", "--style", "unconditional", "--seed", "2"]).stdout
    );
}

#[test]
fn gen_then_audit() {
    for style in ["unconditional", "glued"] {
        let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("round_trip_{style}.json"));
        let o = run(&[
            "gen",
            "--style",
            style,
            "--dim",
            "3",
            "--seed",
            "4",
            "--out",
            path(&out),
        ]);
        assert_eq!((code(&o), o.stdout.len()), (0, 0));
        let o = run(&["audit", path(&out)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let reports: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(reports.as_array().unwrap().len(), 4);
    }
    let o = run(&["gen", "--family", "equality-1", "--alphas", "2,1,3"]);
    let f = file("eq1.json", &stdout(&o));
    let o = run(&["audit", path(&f), "--j", "1"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["ratio"], "1");
}

#[test]
fn audit_rejects_inconsistent_pieces_with_a_witness() {
    let f = file(
        "inconsistent.json",
        r#"{"dim":2,"pieces":{
            "++":{"dim":2,"vertices":[["0","0"],["2","0"],["0","1"],["2","1"]]},
            "-+":{"dim":2,"vertices":[["0","0"],["1","0"],["0","1"]]},
            "+-":{"dim":2,"vertices":[["0","0"],["1","0"],["0","1"]]},
            "--":{"dim":2,"vertices":[["0","0"],["1","0"],["0","1"]]}}}"#,
    );
    let o = run(&["audit", path(&f)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("++") && err.contains("+-"), "{err}");
}

#[test]
fn godbersen_families() {
    let o = run(&[
        "godbersen",
        "--family",
        "equality-1",
        "--dim",
        "3",
        "--trials",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    for line in stdout(&o).lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let expected = if cols[3] == "0" || cols[3] == "3" {
            "trivial"
        } else {
            "equality"
        };
        assert_eq!(cols[7], expected, "{line}");
    }
    let o = run(&[
        "godbersen",
        "--family",
        "cube",
        "--dim",
        "2",
        "--trials",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "trial,instance,check,j,lhs,rhs,ratio,verdict\n\
         0,cube:n=2:seed=0:trial=0,godbersen,0,4,4,1,trivial\n\
         0,cube:n=2:seed=0:trial=0,godbersen,1,4,8,1/2,holds\n\
         0,cube:n=2:seed=0:trial=0,godbersen,2,4,4,1,trivial\n"
    );
}

#[test]
fn reports_attach_equality_instances() {
    let o = run(&["godbersen", "--family", "equality-2", "--dim", "2", "--trials", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 3);
    assert!(records[0].get("body").is_none());
    assert_eq!(records[1]["verdict"], "equality");
    assert_eq!(records[1]["body"]["dim"], 2);
}

#[test]
fn sweep_output_has_no_decimals_without_approx() {
    let o = run(&["godbersen", "--dim", "2", "--trials", "3", "--format", "csv"]);
    assert!(!stdout(&o).contains('.'));
    let o = run(&[
        "godbersen",
        "--dim",
        "2",
        "--trials",
        "3",
        "--format",
        "csv",
        "--approx",
    ]);
    assert!(stdout(&o).lines().next().unwrap().ends_with(",approx_ratio"));
}

#[test]
fn simplex_and_decompose_single() {
    let o = run(&["simplex", "--alphas", "3,2,1", "--j", "2", "--cross-check"]);
    assert_eq!((code(&o), stdout(&o)), (0, "1\n".into()));
    let o = run(&[
        "simplex",
        "--alphas",
        "1,2",
        "--betas",
        "0,1",
        "--j",
        "1",
        "--cross-check",
    ]);
    assert_eq!(stdout(&o), "1/2\n");

    let k = file(
        "dk.json",
        r#"{"dim":2,"kind":"anti-blocking","generators":[["2","1"]]}"#,
    );
    let kp = file(
        "dkp.json",
        r#"{"dim":2,"kind":"anti-blocking","vertices":[["0","0"],["1","0"],["0","1"]]}"#,
    );
    let o = run(&["decompose", path(&k), path(&kp), "--cross-check"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["mixed"][1]["value"], "3/2");
    assert_eq!(v["mixed"][1]["terms"].as_array().unwrap().len(), 2);
    assert_eq!(v["join_volume"], v["join_volume_direct"]);
    assert_eq!(code(&run(&["decompose", path(&k)])), 2);
}
