//! End-to-end tests driving the compiled `boundent` binary.

use std::path::Path;
use std::process::{Command, Output};

fn boundent() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_boundent"));
    cmd.env_remove("BOUNDENT_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    boundent().args(args).output().expect("spawn boundent")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

/// One named column of a CSV table, as raw cells.
fn column(table: &str, name: &str) -> Vec<String> {
    let mut lines = table.lines();
    let header: Vec<&str> = lines.next().expect("header line").split(',').collect();
    let idx = header
        .iter()
        .position(|h| *h == name)
        .unwrap_or_else(|| panic!("no column {name} in {header:?}"));
    lines
        .map(|l| l.split(',').nth(idx).expect("short row").to_string())
        .collect()
}

fn reals(table: &str, name: &str) -> Vec<f64> {
    column(table, name)
        .iter()
        .map(|cell| cell.parse().expect("numeric cell"))
        .collect()
}

/// The table with the trailing per-row timing column removed, for
/// determinism comparisons.
fn without_elapsed(table: &str) -> String {
    table
        .lines()
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            cells[..cells.len() - 1].join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn pins_a_single_alternating_grid_point() {
    let table = run_ok(&["logneg", "--n", "8", "--c", "0.3", "--T", "0.1"]);
    let mut lines = table.lines();
    assert_eq!(
        lines.next(),
        Some("n,c,T,partition,e_n,ppt,version,elapsed_ms")
    );
    let row: Vec<&str> = lines.next().expect("one data row").split(',').collect();
    assert!(lines.next().is_none(), "expected exactly one row");
    assert_eq!(
        &row[..6],
        &["8", "0.3", "0.1", "even-odd", "2.29859676957", "false"]
    );
}

#[test]
fn decoupled_sites_report_zero_negativity() {
    let table = run_ok(&[
        "logneg",
        "--n",
        "4",
        "--c",
        "0",
        "--T-range",
        "0:1:0.5",
        "--partition",
        "half-half",
    ]);
    assert_eq!(column(&table, "e_n"), vec!["0"; 3]);
    assert_eq!(column(&table, "ppt"), vec!["true"; 3]);
}

#[test]
fn block_negativity_saturates_with_chain_length() {
    let table = run_ok(&[
        "logneg",
        "--n",
        "200",
        "--n",
        "400",
        "--c",
        "0.3",
        "--T",
        "0.05",
        "--partition",
        "half-half",
    ]);
    let e = reals(&table, "e_n");
    assert_eq!(e.len(), 2);
    assert!(
        (e[1] - e[0]).abs() < 0.01 * e[0],
        "block negativity kept growing: {e:?}"
    );
}

#[test]
fn repeated_and_reparallelised_runs_emit_identical_tables() {
    let base = [
        "logneg",
        "--n",
        "4",
        "--n",
        "8",
        "--c-range",
        "0.1:0.3:0.1",
        "--T-range",
        "0.1:0.5:0.2",
        "--partition",
        "even-odd",
        "--partition",
        "half-half",
    ];
    let mut serial = base.to_vec();
    serial.extend(["--threads", "1"]);
    let mut wide = base.to_vec();
    wide.extend(["--threads", "3"]);
    let first = without_elapsed(&run_ok(&serial));
    let second = without_elapsed(&run_ok(&serial));
    let parallel = without_elapsed(&run_ok(&wide));
    assert_eq!(first, second, "same request, different tables");
    assert_eq!(first, parallel, "thread count changed the table");
}

#[test]
fn rejects_a_backwards_range() {
    let out = run(&["logneg", "--n", "8", "--c-range", "0.5:0.1:0.1", "--T", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--c-range"));
    assert!(out.stdout.is_empty(), "usage errors must not emit rows");
}

#[test]
fn rejects_an_unknown_partition_name() {
    let out = run(&[
        "logneg", "--n", "8", "--c", "0.3", "--T", "0.1", "--partition", "diagonal",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("partition"));
}

#[test]
fn rejects_a_custom_pattern_of_the_wrong_length() {
    let out = run(&[
        "logneg",
        "--n",
        "6",
        "--c",
        "0.3",
        "--T",
        "0.1",
        "--partition",
        "custom:+-",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("6"), "message should name the size: {msg}");
}

#[test]
fn names_the_grid_point_when_a_search_fails() {
    // An all-plus "bipartition" leaves nothing to transpose, so the
    // threshold bracket can never straddle a sign change.
    let out = run(&[
        "threshold",
        "--n",
        "8",
        "--c",
        "0.3",
        "--partition",
        "custom:++++++++",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(
        msg.contains("n=8 c=0.3"),
        "failure must name its grid point: {msg}"
    );
}

#[test]
fn open_chain_spin_window_shows_bound_entanglement() {
    let table = run_ok(&[
        "spin",
        "--n",
        "4",
        "--n",
        "6",
        "--n",
        "8",
        "--B",
        "1.9",
        "--T",
        "2.6",
        "--boundary",
        "open",
        "--format",
        "jsonl",
    ]);
    let (mut half_half, mut even_odd) = (0, 0);
    for line in table.lines() {
        let row: serde_json::Value = serde_json::from_str(line).expect("valid json row");
        assert_eq!(row["boundary"], "open");
        let neg = row["negativity"].as_f64().expect("negativity value");
        match row["partition"].as_str().expect("partition cell") {
            "half-half" => {
                assert!(neg <= 1e-10, "half cut should be positive: {row}");
                assert_eq!(row["ppt"], serde_json::Value::Bool(true));
                half_half += 1;
            }
            "even-odd" => {
                assert!(neg > 1e-6, "alternating cut should stay negative: {row}");
                assert_eq!(row["ppt"], serde_json::Value::Bool(false));
                even_odd += 1;
            }
            other => panic!("unexpected partition {other}"),
        }
    }
    assert_eq!((half_half, even_odd), (3, 3));
}

#[test]
fn custom_spin_pattern_reproduces_the_alternating_cut() {
    let table = run_ok(&[
        "spin",
        "--n",
        "4",
        "--T",
        "1",
        "--partition",
        "even-odd",
        "--partition",
        "custom:+-+-",
    ]);
    let neg = reals(&table, "negativity");
    assert_eq!(neg.len(), 2);
    assert!(
        (neg[0] - neg[1]).abs() <= 1e-9 * neg[0].max(1.0),
        "same cut, different answers: {neg:?}"
    );
}

#[test]
fn sharper_certificates_never_lose_ground() {
    let coarse = reals(
        &run_ok(&["macro-bound", "--c", "0.2", "--m", "5", "--s", "2"]),
        "T_bound",
    )[0];
    let sharp = reals(
        &run_ok(&["macro-bound", "--c", "0.2", "--m", "20", "--s", "4"]),
        "T_bound",
    )[0];
    assert!(
        sharp <= coarse + 1e-6,
        "sharper parameters pushed the bound up: {sharp} vs {coarse}"
    );
}

#[test]
fn phase_boundaries_come_out_ordered() {
    let table = run_ok(&[
        "phase-diagram",
        "--c",
        "0.3",
        "--n",
        "128",
        "--tol",
        "0.0001",
    ]);
    let hh = reals(&table, "T_hh")[0];
    let bound = reals(&table, "T_macro_bound")[0];
    let eo = reals(&table, "T_eo")[0];
    assert!(
        hh <= bound && bound <= eo,
        "expected T_hh <= T_macro_bound <= T_eo, got {hh}, {bound}, {eo}"
    );
    let threshold = reals(
        &run_ok(&[
            "threshold",
            "--n",
            "128",
            "--c",
            "0.3",
            "--partition",
            "half-half",
            "--tol",
            "0.0001",
        ]),
        "threshold_T",
    )[0];
    assert!(
        (threshold - hh).abs() <= 2e-4,
        "threshold command disagrees with the diagram: {threshold} vs {hh}"
    );
}

#[test]
fn streams_and_files_carry_the_same_rows() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("rows.jsonl");
    let base = [
        "logneg", "--n", "8", "--c", "0.3", "--T-range", "0:0.4:0.2", "--format", "jsonl",
    ];
    let streamed = run_ok(&base);

    let out = boundent()
        .args(base)
        .arg("--out")
        .arg(&path)
        .output()
        .expect("spawn boundent");
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "--out must silence stdout");
    let written = std::fs::read_to_string(&path).expect("output file");

    let strip_timing = |text: &str| -> Vec<serde_json::Value> {
        text.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).expect("json row");
                v.as_object_mut().expect("object row").remove("elapsed_ms");
                v
            })
            .collect()
    };
    assert_eq!(strip_timing(&streamed), strip_timing(&written));
}

#[test]
fn environment_variable_sets_the_default_thread_count() {
    let base = ["logneg", "--n", "8", "--c", "0.3", "--T-range", "0.1:0.3:0.1"];
    let mut flagged_args = base.to_vec();
    flagged_args.extend(["--threads", "2"]);
    let flagged = without_elapsed(&run_ok(&flagged_args));

    let out = boundent()
        .args(base)
        .env("BOUNDENT_THREADS", "2")
        .output()
        .expect("spawn boundent");
    assert!(out.status.success());
    let via_env = without_elapsed(&String::from_utf8(out.stdout).expect("utf-8 output"));
    assert_eq!(via_env, flagged);

    let bad = boundent()
        .args(base)
        .env("BOUNDENT_THREADS", "many")
        .output()
        .expect("spawn boundent");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn help_mentions_every_subcommand() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).expect("utf-8 help");
    for name in ["logneg", "threshold", "phase-diagram", "macro-bound", "spin"] {
        assert!(text.contains(name), "help omits {name}");
    }
}

#[test]
fn out_files_land_where_asked() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path: &Path = &dir.path().join("table.csv");
    let out = boundent()
        .args(["spin", "--n", "4", "--T", "2"])
        .arg("--out")
        .arg(path)
        .output()
        .expect("spawn boundent");
    assert!(out.status.success());
    let table = std::fs::read_to_string(path).expect("csv file");
    assert!(table.starts_with("n,B,T,boundary,partition,negativity,ppt"));
    assert_eq!(table.lines().count(), 3, "header plus two partitions");
}
