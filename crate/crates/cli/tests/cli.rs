use std::path::PathBuf;
use std::process::{Command, Output};

use sextic_index::report::AnalysisReport;
use sextic_index::scan::ScanRow;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sextic-index"));
    cmd.env_remove("ORE_INDEX_JOBS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_text() {
    let o = run(&["analyze", "--poly", "x^6+9x^2+18x+26"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("splitting (e,f): {(1,1),(1,1),(2,1),(2,1)}"), "{s}");
    assert!(s.contains("v3(i(K)): 1"), "{s}");
    assert!(s.contains("monogenity: non-monogenic"), "{s}");
}

#[test]
fn analyze_json_round_trips() {
    let o = run(&[
        "analyze",
        "--poly",
        "x^6+9x^2+18x+26",
        "--prime",
        "3",
        "--prime",
        "2",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: AnalysisReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.primes.iter().map(|r| r.p).collect::<Vec<_>>(), vec![2, 3]);
    assert_eq!(report.monogenic, "non-monogenic");
    assert_eq!(report.certificates, vec![(3, 1)]);
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again.trim_end(), stdout(&o).trim_end());
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["analyze", "--poly", "x^6+("], 3),
        (&["analyze", "--poly", ""], 3),
        (&["analyze", "--poly", "x^2+4", "--prime", "2"], 4),
        (&["analyze", "--poly", "x^6+9x^2+9x+8"], 6),
        (&["analyze", "--poly", "2x^6+1"], 6),
        (&["analyze", "--poly", "7"], 6),
        (&["analyze", "--poly", "x^6+1", "--prime", "4"], 2),
        (&["analyze"], 2),
        (&["frobnicate"], 2),
        (&["scan", "--m", "7", "--a", "1", "--b", "1", "--c", "1"], 6),
        (&["scan", "--m", "2", "--a", "0:0:1:2", "--b", "1", "--c", "1"], 6),
        (&["scan", "--m", "2", "--a", "x:1", "--b", "1", "--c", "1"], 2),
        (&["scan", "--spec", "/nonexistent/spec.toml"], 6),
        (&["table"], 0),
    ];
    for (args, code) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn reducible_report_is_still_printed() {
    let o = run(&["analyze", "--poly", "x^6+9x^2+9x+8", "--json"]);
    assert_eq!(o.status.code(), Some(6));
    let report: AnalysisReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.is_reducible());
    assert!(stderr(&o).contains("reducible"));
}

const SCAN: &[&str] = &[
    "scan",
    "--m",
    "2",
    "--a",
    "1:8:-40:40",
    "--b",
    "0:16:-48:48",
    "--c",
    "-2:8:-30:30",
];

fn scan_json(extra: &[&str]) -> (Vec<ScanRow>, String) {
    let mut args = SCAN.to_vec();
    args.extend_from_slice(extra);
    args.push("--json");
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    (rows, stdout(&o))
}

#[test]
fn scan_is_deterministic_across_jobs() {
    let (rows, one) = scan_json(&["--jobs", "1"]);
    let (_, four) = scan_json(&["--jobs", "4"]);
    assert_eq!(one, four);
    assert_eq!(rows.len(), 10 * 7 * 8);
    // enumeration order: a outermost, c innermost
    assert_eq!(
        (rows[0].a.to_string(), rows[0].b.to_string(), rows[0].c.to_string()),
        ("-39".into(), "-48".into(), "-26".into())
    );
    assert_eq!(rows[1].c.to_string(), "-18");
    let env = bin()
        .args(SCAN)
        .arg("--json")
        .env("ORE_INDEX_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&env), one);
}

#[test]
fn scan_reports_total_first() {
    let mut args = SCAN.to_vec();
    args.extend(["--limit", "5"]);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).starts_with("scanning 5 instances"), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn scan_sample_is_seeded() {
    let (a, _) = scan_json(&["--sample", "12", "--seed", "9"]);
    let (b, _) = scan_json(&["--sample", "12", "--seed", "9"]);
    let (c, _) = scan_json(&["--sample", "12", "--seed", "10"]);
    assert_eq!(a.len(), 12);
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn scan_csv() {
    let mut args = SCAN.to_vec();
    args.extend(["--csv", "--limit", "20", "--prime", "3", "--prime", "2"]);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header[0], "a");
    assert_eq!(&header[5], "splitting_2");
    assert_eq!(&header[8], "splitting_3");
    let records: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 20);
    assert!(records.iter().all(|r| r.len() == header.len()));
}

#[test]
fn scan_csv_keeps_columns_for_reducible_rows() {
    // x^6 + 9x^2 + 9x + 8 is divisible by x^2 + x + 1
    let o = run(&["scan", "--m", "2", "--a", "9", "--b", "9", "--c", "6:1:7:9", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let width = rdr.headers().unwrap().len();
    let records: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 3);
    assert!(records.iter().all(|r| r.len() == width));
    assert_eq!(&records[1][4], "reducible");
}

#[test]
fn scan_spec_file() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("scan_spec_file.toml");
    std::fs::write(
        &path,
        r#"
m = 2
primes = [2, 3]
a = { residue = 1, modulus = 8, min = -40, max = 40 }
b = { residue = 0, modulus = 16, min = -48, max = 48 }
c = { residue = -2, modulus = 8, min = -30, max = 30 }
"#,
    )
    .unwrap();
    let o = run(&["scan", "--spec", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), scan_json(&[]).1);

    let bad = dir.join("scan_spec_bad.toml");
    std::fs::write(&bad, "m = 2\nbogus = 1\n").unwrap();
    assert_eq!(run(&["scan", "--spec", bad.to_str().unwrap()]).status.code(), Some(6));
}

#[test]
fn empty_scan_warns() {
    let o = run(&["scan", "--m", "3", "--a", "5:8:0:4", "--b", "0", "--c", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn table_matches_library() {
    let o = run(&["table"]);
    assert_eq!(stdout(&o), sextic_index::engstrom::table_text());
}

fn index_of(row: &ScanRow, p: u64) -> Option<u32> {
    row.primes.iter().find(|sp| sp.p == p)?.index.as_ref()?.known()
}

#[test]
fn scan_divisibility_family_has_v2_two() {
    let o = run(&[
        "scan",
        "--m",
        "2",
        "--a",
        "8:16:0:400",
        "--b",
        "8:16:-40:40",
        "--c",
        "7:16:-40:40",
        "--limit",
        "100",
        "--prime",
        "2",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<ScanRow> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 100);
    let irreducible: Vec<_> = rows.iter().filter(|r| r.irreducibility == "irreducible").collect();
    assert!(irreducible.len() >= 90);
    for r in irreducible {
        assert_eq!(index_of(r, 2), Some(2), "{r:?}");
        assert_eq!(r.monogenic, "non-monogenic");
    }
}

#[test]
fn scan_both_primes_family() {
    let o = run(&[
        "scan",
        "--m",
        "3",
        "--a",
        "1:72:-1000:1000",
        "--b",
        "216",
        "--c",
        "7776:93312:-200000:200000",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<ScanRow> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let mut seen = 0;
    for r in rows.iter().filter(|r| r.irreducibility == "irreducible") {
        assert_eq!((index_of(r, 2), index_of(r, 3)), (Some(1), Some(1)), "{r:?}");
        seen += 1;
    }
    assert!(seen > 100);
}

#[test]
fn slope_family_member_gets_note() {
    let o = run(&["analyze", "--poly", "x^6+105x^2+56x+896", "--prime", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: AnalysisReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.prime(2).unwrap().splitting.is_some());
    assert!(report.notes.iter().any(|n| n.contains("(mod 112)")));
}

#[test]
fn verify_paper_json() {
    let o = run(&["verify-paper", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["criteria"].as_array().unwrap().len(), 10);
}
