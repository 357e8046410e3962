use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvegerm")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn invariants_table_and_json() {
    let o = run(&["invariants", "--char", "3", "--poly", "x^3+x*y+y^3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.split_whitespace().eq(["mu", "1"])));
    assert!(text.lines().any(|l| l.split_whitespace().eq(["innd", "true"])));

    let o = run(&["invariants", "--char", "3", "--poly", "x*(x-y)^2+y^7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mu"], 8);
    assert_eq!(v["delta"], 5);
    assert_eq!(v["r"], 3);
}

#[test]
fn reads_the_polynomial_from_a_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "x^2 + y^5").unwrap();
    let path = file.path().to_str().unwrap();
    let o = run(&["classify", "--char", "7", "--input", path, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["whnnd"], true);
}

#[test]
fn diagram_grid_and_svg() {
    let o = run(&["diagram", "--char", "3", "--poly", "x^3+x*y+y^3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("vertices: (0,3) (1,1) (3,0)"));
    assert!(text.contains("  1 | . O . ."));

    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("d.svg");
    let o = run(&["diagram", "--char", "3", "--poly", "x^3+x*y+y^3", "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let body = std::fs::read_to_string(svg).unwrap();
    assert!(body.contains("<svg") && body.trim_end().ends_with("</svg>"));
}

#[test]
fn resolve_prints_the_tree() {
    let o = run(&["resolve", "--char", "3", "--poly", "x*(x-y)^2+y^7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("mult 3 special true"));
    assert!(text.contains("delta 5 nu 3 r 3 superisolated false"));
}

#[test]
fn exit_codes() {
    let bad_char = run(&["invariants", "--char", "4", "--poly", "x"]);
    assert_eq!(bad_char.status.code(), Some(1));
    assert!(stderr(&bad_char).starts_with("error:"));
    assert_eq!(run(&["invariants", "--char", "3", "--poly", "x+*"]).status.code(), Some(1));
    assert_eq!(run(&["invariants", "--char", "3"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["invariants", "--char", "3", "--poly", "1+x"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--char", "3", "--poly", "x-x"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn batch_keeps_order_and_reports_bad_lines() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "x^2+y^3\nx+*\ny^2-x^3\n").unwrap();
    let path = file.path().to_str().unwrap();

    let o = run(&["batch", "--char", "5", "--input", path, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2:"));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap().len(), 17);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(&rows[0][2], "2");
    assert_eq!(&rows[1][2], "");
    assert_eq!(&rows[2][0], "y^2-x^3");

    let o = run(&["batch", "--char", "5", "--input", path]);
    let lines: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].get("error").is_some());
    assert_eq!(lines[2]["line"], 3);
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--chars", "2,3", "--samples", "40", "--seed", "9", "--json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}
