use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn relface(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relface"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_then_check_lbt() {
    let dir = tempfile::tempdir().unwrap();
    let o = relface(&["gen", "stacked-sphere", "3", "8", "--seed", "7", "-o", "s.cplx"], dir.path());
    assert!(o.status.success(), "{o:?}");
    let o = relface(&["check", "lbt_closed", "s.cplx"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    assert!(stdout(&o).contains("0 >= 0 holds"));
}

#[test]
fn missing_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = relface(&["check", "main1", "missing.cplx"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.cplx"), "1 2 x\n").unwrap();
    assert_eq!(relface(&["fvec", "bad.cplx"], dir.path()).status.code(), Some(2));
    assert_eq!(relface(&["check", "no_such_check", "bad.cplx"], dir.path()).status.code(), Some(2));
    assert_eq!(relface(&["homology", "bad.cplx", "--field", "f4"], dir.path()).status.code(), Some(2));
}

#[test]
fn check_json_report() {
    let dir = tempfile::tempdir().unwrap();
    relface(&["gen", "remove_facet(bd_simplex(4))", "-o", "b.cplx"], dir.path());
    let o = relface(&["check", "main1", "b.cplx", "--json"], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["check"], "main1");
    assert_eq!(v["holds"], true);
    assert_eq!(v["lhs"], serde_json::json!({"num": "0", "den": "1"}));
    assert!(v["witnesses"].as_array().unwrap().iter().any(|w| w == "property_L=holds"));
}

#[test]
fn corpus_writes_json_array() {
    let dir = tempfile::tempdir().unwrap();
    let o = relface(
        &["corpus", "balls-small", "--json", "out.json", "--checks", "duality_sigma,main1,prop61"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("out.json")).unwrap()).unwrap();
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    for key in ["check", "input", "seed", "field", "lhs", "rhs", "relation", "holds", "skipped_reason", "witnesses"] {
        assert!(reports[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn empty_corpus_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let o = relface(&["corpus", "empty", "--json", "e.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(dir.path().join("e.json")).unwrap().trim(), "[]");
}

#[test]
fn betti_table_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.cplx"), "1 2\n2 3\n3 4\n1 4\n").unwrap();
    let o = relface(&["betti", "c.cplx", "--oracle"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("beta_1,2 = 2"));
    assert!(stdout(&o).contains("oracle: agrees"));
}

#[test]
fn info_fvec_homology_sigma_mu() {
    let dir = tempfile::tempdir().unwrap();
    relface(&["gen", "cross-polytope", "3", "-o", "o.cplx"], dir.path());
    fs::write(dir.path().join("tri.cplx"), "1 2 3\n").unwrap();
    let info = stdout(&relface(&["info", "o.cplx"], dir.path()));
    assert!(info.contains("vertices: 6") && info.contains("Sphere"), "{info}");
    let fvec = stdout(&relface(&["fvec", "o.cplx"], dir.path()));
    assert!(fvec.contains("f: 1 6 12 8") && fvec.contains("h: 1 3 3 1"), "{fvec}");
    let rel = stdout(&relface(&["fvec", "o.cplx", "--sub", "tri.cplx"], dir.path()));
    assert!(rel.starts_with("f: 0 3 9 7"), "{rel}");
    let hom = stdout(&relface(&["homology", "o.cplx", "--field", "f2"], dir.path()));
    assert!(hom.contains("0 0 0 1"), "{hom}");
    let sigma = stdout(&relface(&["sigma", "o.cplx", "-i", "-1"], dir.path()));
    assert!(sigma.starts_with("sigma_-1 = "), "{sigma}");
    let mu = stdout(&relface(&["mu", "o.cplx"], dir.path()));
    assert!(mu.contains("mu_0 = ") && mu.contains("mu_2 = "), "{mu}");
}

#[test]
fn wlp_and_reduce() {
    let dir = tempfile::tempdir().unwrap();
    relface(&["gen", "boundary-of-simplex", "3", "-o", "s.cplx"], dir.path());
    let o = relface(&["wlp", "s.cplx", "--prime", "101", "--trials", "3", "--seed", "1"], dir.path());
    assert!(stdout(&o).contains("\"passes\""), "{o:?}");
    let o = relface(&["reduce", "s.cplx", "--seed", "2"], dir.path());
    assert!(stdout(&o).contains("dims: 1 1 1 1 0"), "{o:?}");
}
