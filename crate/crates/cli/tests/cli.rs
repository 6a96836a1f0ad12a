use qheight_cli::run;

fn qheight(args: &[&str]) -> qheight_cli::Outcome {
    run(std::iter::once("qheight").chain(args.iter().copied()))
}

#[test]
fn qmark_json_record() {
    let out = qheight(&["qmark", "1/3"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "{\"value\":\"1/4\",\"is_dyadic\":true,\"source_kind\":\"rational\",\"digits_used\":1,\"input\":\"1/3\"}\n"
    );
    assert!(out.stderr.is_empty());
}

#[test]
fn csv_census() {
    let out = qheight(&["count", "--case", "1", "--n", "1", "--grid", "1:4", "--format", "csv"]);
    assert_eq!(out.code, 0);
    let counts: Vec<&str> = out.stdout.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(counts, ["1", "3", "7", "15"]);
}

#[test]
fn exit_codes() {
    assert_eq!(qheight(&["qmark", "1/x"]).code, 2);
    assert_eq!(qheight(&["frobnicate"]).code, 2);
    let over = qheight(&["count", "--case", "1", "--n", "1", "--grid", "25"]);
    assert_eq!(over.code, 1);
    assert!(over.stderr.starts_with("error: over_guard:"));
    assert_eq!(qheight(&["qmark", "4/3"]).code, 1);
    assert_eq!(qheight(&["--help"]).code, 0);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = qheight(&["classify", "--genus", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "{\"case\":\"III\",\"asymptotic\":\"Const\",\"finite\":true,\"rank_bound\":4}\n"
    );
}

#[test]
fn runs_are_deterministic() {
    let args = ["probe", "scan", "--bound", "2"];
    assert_eq!(qheight(&args), qheight(&args));
}
