use std::path::PathBuf;
use std::process::{Command, Output};

fn preprim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_preprim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn catalog(degree: usize) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(format!("../../data/catalogs/deg{degree}.cat"))
        .to_string_lossy()
        .into_owned()
}

#[test]
fn classify_regular_q8() {
    let o = preprim(&["classify", "--expr", "reg(q8)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("preprimitive=1"));
}

#[test]
fn witness_feeds_back_into_check_partition() {
    let o = preprim(&["classify", "--expr", "reg(s3)"]);
    let out = stdout(&o);
    assert!(out.contains("preprimitive=0"));
    let witness = out.lines().find_map(|l| l.strip_prefix("witness: ")).unwrap();
    let o = preprim(&["classify", "--expr", "reg(s3)", "--check-partition", witness]);
    assert!(stdout(&o).contains("invariant=1 kernel_orbits=0"));
}

#[test]
fn sync_klein_group() {
    let o = preprim(&["sync", "--expr", "reg(v4)"]);
    assert!(stdout(&o).contains("synchronizing=0 presynchronizing=1"));
    let o = preprim(&["sync", "--expr", "cyc(4)"]);
    assert!(stdout(&o).contains("synchronizing=0 presynchronizing=0"));
}

#[test]
fn survey_degree_ten() {
    let o = preprim(&["survey", "--catalog", &catalog(10), "--csv"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "degree,T,P,PP,QP,cov,phi,independence_gap\n10,45,9,42,9,0.0133,0.1336,27\n"
    );
    let o = preprim(&["survey", "--catalog", &catalog(10), "--tsv"]);
    assert!(stdout(&o).starts_with("degree\tT\tP"));
}

#[test]
fn survey_flags_degree_twelve_sign() {
    let o = preprim(&["survey", "--catalog", &catalog(12)]);
    assert!(stdout(&o).contains("12,301,6,276,7,-0.0014,"));
    assert!(stderr(&o).contains("sign discrepancy"));
}

#[test]
fn survey_writes_out_file() {
    let path = std::env::temp_dir().join(format!("preprim-survey-{}.csv", std::process::id()));
    let o = preprim(&["survey", "--catalog", &catalog(11), "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.contains("11,8,8,8,8,0.0000,0.0000,0"));
}

#[test]
fn catalog_entry_by_name() {
    let o = preprim(&["classify", "--catalog", &catalog(15), "--name", "T15_1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = preprim(&["classify", "--catalog", &catalog(15), "--name", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let o = preprim(&["classify", "--expr", "dp(cyc(2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("offset 10"));
    assert_eq!(preprim(&["classify"]).status.code(), Some(2));
    assert_eq!(preprim(&["enumerate", "--transitive", "9"]).status.code(), Some(2));
    assert_eq!(
        preprim(&["survey", "--catalog", "/nonexistent.cat"]).status.code(),
        Some(2)
    );
    // search budget exceeded is a computation error
    assert_eq!(preprim(&["sync", "--expr", "sym(13)"]).status.code(), Some(1));
    assert_eq!(
        preprim(&["sync", "--expr", "cyc(6)", "--max-degree", "5"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn construct_round_trips() {
    for text in [
        "wri(reg(q8), cyc(2))",
        "diag(a4,2)",
        "coset(alt(5),\"(1,2)(3,4);(1,3)(2,4)\")",
    ] {
        let first = stdout(&preprim(&["construct", "--expr", text]));
        let canonical = first.lines().next().unwrap().strip_prefix("expr: ").unwrap();
        let second = stdout(&preprim(&["construct", "--expr", canonical]));
        assert_eq!(first, second);
    }
}

#[test]
fn exported_catalog_reloads() {
    let line = stdout(&preprim(&[
        "construct",
        "--expr",
        "wri(reg(q8),cyc(2))",
        "--export-catalog",
    ]));
    let path = std::env::temp_dir().join(format!("preprim-export-{}.cat", std::process::id()));
    std::fs::write(&path, &line).unwrap();
    let o = preprim(&["classify", "--catalog", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert!(stdout(&o).contains(",16,128,1,0,0,1,"));
}

#[test]
fn enumerate_outputs() {
    let o = preprim(&["enumerate", "--transitive", "6", "--export-catalog"]);
    let text = stdout(&o);
    assert!(text.starts_with("#complete degree=6\n"));
    assert_eq!(text.lines().count(), 17);
    let o = preprim(&["enumerate", "--order", "8"]);
    assert_eq!(stdout(&o).matches("abelian=1").count(), 3);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["survey", "--catalog", &catalog(14)];
    assert_eq!(preprim(&args).stdout, preprim(&args).stdout);
    let args = ["enumerate", "--transitive", "5"];
    assert_eq!(preprim(&args).stdout, preprim(&args).stdout);
}
