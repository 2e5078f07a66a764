use superfock_cli::run;

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("superfock").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn suite_path() -> String {
    format!("{}/../../suites/smoke.toml", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn virasoro_jacobi_passes_for_any_c() {
    for c in ["7/3", "0", "-26"] {
        let (code, out) = call(&["jacobi", "--spec", "virasoro", "--c", c]);
        assert_eq!(code, 0, "{out}");
    }
}

#[test]
fn temporal_central_charge_of_one_boson() {
    let (code, out) = call(&["fock", "central-charge", "--dim", "1,0", "--aux", "trivial", "--format", "records"]);
    assert_eq!(code, 0);
    assert!(out.contains(r#""c":"2""#), "{out}");
}

#[test]
fn extension_example_passes() {
    let (code, out) = call(&[
        "fock", "ext", "--xi", "exp(i*1*t)*d1", "--eta", "exp(-i*1*t)*x1*d1", "--window", "3,2", "--margin", "2,2",
    ]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn small_margin_exits_with_three() {
    let (code, out) = call(&["fock", "ext", "--xi", "exp(i*2*t)*d1", "--eta", "x1*d1", "--margin", "1,1"]);
    assert_eq!(code, 3, "{out}");
}

#[test]
fn syntax_errors_exit_with_two_and_locate_the_column() {
    let (code, out) = call(&["fock", "generator", "--xi", "x1*"]);
    assert_eq!(code, 2);
    assert!(out.contains("1:4"), "{out}");
    assert_eq!(call(&["nonsense"]).0, 2);
    assert_eq!(call(&["jacobi", "--spec", "nope"]).0, 2);
}

#[test]
fn violated_constraint_exits_with_one() {
    let (code, out) = call(&["jacobi", "--spec", "xsc", "--param", "alpha=1"]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn odd_field_parity_is_enforced() {
    let (code, _) = call(&["fock", "generator", "--dim", "1,1", "--xi", "exp(i*2*t)*th1*d0"]);
    assert_eq!(code, 0);
    let (code, _) = call(&["fock", "generator", "--dim", "1,1", "--xi", "th1*d0 + d1"]);
    assert_eq!(code, 2);
}

#[test]
fn superconformal_requires_one_fermion() {
    assert_eq!(call(&["fock", "superconformal", "--dim", "1,0"]).0, 2);
}

#[test]
fn non_abelian_currents_are_refused() {
    assert_eq!(call(&["gauge", "cocycle", "--algebra", "gl11", "--x", "x1;0;0;0", "--y", "x1;0;0;0"]).0, 2);
}

#[test]
fn suite_runs_and_is_byte_deterministic() {
    let a = call(&["suite", "run", &suite_path(), "--format", "records"]);
    let b = call(&["suite", "run", &suite_path(), "--format", "records"]);
    assert_eq!(a.0, 0, "{}", a.1);
    assert_eq!(a, b);
    let ids: Vec<&str> = a.1.lines().skip(1).filter_map(|l| l.split('"').nth(3)).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(a.1.contains(r#""status":"xfail""#));
}

#[test]
fn malformed_suite_reports_location() {
    let dir = std::env::temp_dir().join(format!("superfock-suite-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.toml");
    std::fs::write(&path, "[[job]]\nid = \"a\"\nargs = [\"jacobi\"\n").unwrap();
    let (code, out) = call(&["suite", "run", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{out}");
    std::fs::write(&path, "[[job]]\nid = \"a\"\nargs = []\n[[job]]\nid = \"a\"\nargs = []\n").unwrap();
    let (code, out) = call(&["suite", "run", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("duplicate"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}
