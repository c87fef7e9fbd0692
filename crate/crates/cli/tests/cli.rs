use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str], fixture_dir: Option<&PathBuf>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_k3arith"));
    c.args(args).env_remove("K3ARITH_FIXTURE_DIR");
    if let Some(d) = fixture_dir {
        c.env("K3ARITH_FIXTURE_DIR", d);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("k3arith-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn weil_reports_picard_bound() {
    let o = run(
        &["weil", "--surface", "drell-yan", "--primes", "31,71"],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert_eq!(last, r#"{"kind":"picard-bound","picard_bound":"19"}"#);
    assert!(text.contains(r#""square_class":"3""#) && text.contains(r#""square_class":"35""#));
}

#[test]
fn missing_fixture_exits_3() {
    let empty = scratch("empty");
    let o = run(
        &["lattice", "--fixture", "lambda24", "--op", "disc-group"],
        Some(&empty),
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains(r#""kind":"error""#));
}

#[test]
fn supplied_fixture_is_used() {
    let dir = scratch("d4");
    let text = "# provenance: derived\n# swap: b c\nlabels a b c d\n-2 1 1 1\n1 -2 0 0\n1 0 -2 0\n1 0 0 -2\n";
    std::fs::write(dir.join("lambda24.gram"), text).unwrap();
    let o = run(
        &["lattice", "--fixture", "lambda24", "--op", "disc-group"],
        Some(&dir),
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains(r#""disc_group":"2,2""#), "{out}");
    assert!(out.contains(r#""provenance":"derived""#));
    let o = run(
        &["lattice", "--fixture", "lambda24", "--op", "index2"],
        Some(&dir),
    );
    assert!(stdout(&o).contains(r#""candidates":"0""#));
}

#[test]
fn count_matches_prediction() {
    let c = stdout(&run(
        &["count", "--surface", "drell-yan", "-p", "31", "-n", "1"],
        None,
    ));
    let s = stdout(&run(&["si-verify", "-p", "31", "--ext", "1"], None));
    assert!(c.contains(r#""direct":"1536","fibration":"1536""#), "{c}");
    assert!(s.contains(r#""prediction":"1536""#), "{s}");
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(run(&["nonsense"], None).status.code(), Some(2));
    assert_eq!(run(&["count", "-p", "33"], None).status.code(), Some(2));
    assert_eq!(run(&["count", "-p", "5"], None).status.code(), Some(2));
    assert_eq!(run(&["si-verify"], None).status.code(), Some(2));
}

#[test]
fn lattice_ops_on_builtin_generators() {
    let out = |op: &str| {
        stdout(&run(
            &["lattice", "--fixture", "fibration_generators", "--op", op],
            None,
        ))
    };
    assert!(out("rank-det").contains(r#""rank":"19""#));
    assert!(out("cohomology").contains(r#""h0":"Z^18","h1":"0","h2":"(Z/2)^17""#));
    let split = out("split");
    assert!(
        split.contains(r#""orthogonal":{"det":"-24","rank":"17"}"#),
        "{split}"
    );
    assert!(out("radical").contains(r#""relations":[["1","2","3","4","5","4","3","2","1","#));
}

#[test]
fn scan_csv_and_determinism() {
    let args = ["ss-scan", "--from", "7", "--to", "400", "--format", "csv"];
    let a = stdout(&run(&args, None));
    assert_eq!(
        a,
        stdout(&run(&[&args[..], &["--threads", "1"]].concat(), None))
    );
    let ss: Vec<&str> = a
        .lines()
        .filter(|l| l.contains(",supersingular,"))
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ss, ["13", "29", "41", "113", "337"]);
    assert!(a.lines().any(|l| l.starts_with("# ramified")));
}

#[test]
fn tate_and_height_checks_pass() {
    let t = run(&["tate"], None);
    assert_eq!(t.status.code(), Some(0));
    assert_eq!(stdout(&t).matches(r#""passed":true"#).count(), 3);
    let h = stdout(&run(&["height"], None));
    assert!(h.contains(r#""height_p":"3/20""#) && h.contains(r#""disc_ns":"24""#));
}

#[test]
fn system_check_passes() {
    let o = run(&["si-verify", "--system"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains(r#""kind":"failure""#));
}

#[test]
fn output_file_and_kodaira() {
    let dir = scratch("out");
    let path = dir.join("k.jsonl");
    let o = run(
        &[
            "kodaira",
            "--fixture",
            "fibres_b",
            "--out",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.contains(r#""fibrations":"1""#));
    assert!(text.contains(r#""I10":"1""#));
}
