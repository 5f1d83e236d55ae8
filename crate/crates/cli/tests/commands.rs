use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gallai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gallai"))
        .args(args)
        .env_remove("GALLAI_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = gallai(&full);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: stdout {:?} stderr {:?}",
            String::from_utf8_lossy(&o.stdout),
            String::from_utf8_lossy(&o.stderr)
        )
    });
    (code(&o), v)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn mono_file(order: usize, k: usize, c: usize) -> String {
    let mut s = format!("gallai-coloring v1\norder {order} colors {k}\n");
    for i in 0..order - 1 {
        let row: Vec<String> = (i + 1..order).map(|_| c.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[test]
fn construct_equal_writes_order_ten() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eq.txt");
    let (c, v) = json(&["construct", "equal", "--n", "3", "--k", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["order"], 10);
    assert_eq!(v["verified"], true);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("gallai-coloring v1\norder 10 colors 3\n"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn construct_equal_even_n_reports_parity() {
    let o = gallai(&["construct", "equal", "--n", "4", "--k", "3"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("odd degree sum"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn construct_small_m_order_55_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sm.txt");
    let path = out.to_str().unwrap();
    let (c, v) = json(&["construct", "small-m", "--n", "23", "--m", "3", "--k", "3", "--out", path]);
    assert_eq!((c, v["order"].as_u64()), (0, Some(55)));
    let (c, v) = json(&["verify", path, "--n", "23", "--m", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["holds"], true);
    assert_eq!(v["star_union"], Value::Null);
}

#[test]
fn construct_without_out_streams_the_file() {
    let o = gallai(&["construct", "small-m", "--n", "9", "--m", "1", "--k", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("gallai-coloring v1\norder 20 colors 3\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verified"));
}

#[test]
fn failing_construction_exits_one_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    let (c, v) = json(&[
        "construct",
        "general",
        "--n",
        "9",
        "--m",
        "6",
        "--k",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(c, 1);
    assert_eq!(v["verified"], false);
    assert!(v["failure"]["star_union"]["centers"].is_array());
}

#[test]
fn construct_missing_flags_are_input_errors() {
    assert_eq!(code(&gallai(&["construct", "small-m", "--n", "9"])), 2);
    assert_eq!(code(&gallai(&["construct", "pentagon", "--n", "9", "--m", "2"])), 2);
    assert_eq!(
        code(&gallai(&["construct", "pentagon", "--n", "9", "--m", "2", "--sizes", "1,2,3"])),
        2
    );
    assert_eq!(code(&gallai(&["construct", "equal", "--n", "3", "--k", "2"])), 2);
    assert_eq!(code(&gallai(&["construct", "bogus", "--n", "3"])), 2);
}

#[test]
fn verify_monochromatic_k7_is_refuted() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "k7.txt", &mono_file(7, 1, 1));
    let (c, v) = json(&["verify", &p, "--n", "3", "--m", "2"]);
    assert_eq!(c, 1);
    assert_eq!(v["holds"], false);
    let e = &v["star_union"];
    assert_eq!(e["color"], 1);
    assert_eq!(e["leaves_a"].as_array().unwrap().len(), 3);
    assert_eq!(e["leaves_b"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_reports_rainbow_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "rb.txt", "gallai-coloring v1\norder 3 colors 3\n1 2\n3\n");
    let (c, v) = json(&["verify", &p, "--n", "1", "--m", "1"]);
    assert_eq!(c, 1);
    assert_eq!(v["rainbow_triangle"], serde_json::json!([0, 1, 2]));
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let full = mono_file(5, 2, 1);
    let truncated: String = full.lines().take(4).map(|l| format!("{l}\n")).collect();
    let p = write(dir.path(), "trunc.txt", &truncated);
    for args in [
        vec!["verify", p.as_str(), "--n", "2", "--m", "1"],
        vec!["partition", p.as_str()],
        vec!["stability", p.as_str(), "--n", "22", "--r", "4"],
    ] {
        let o = gallai(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("expected 4 edge lines"));
    }
    let bad = write(dir.path(), "bad.txt", "gallai-coloring v1\norder 3 colors 2\n1 5\n2\n");
    assert_eq!(code(&gallai(&["verify", &bad, "--n", "1", "--m", "1"])), 2);
    assert_eq!(code(&gallai(&["verify", "/nonexistent/file", "--n", "1", "--m", "1"])), 2);
}

#[test]
fn partition_of_pentagon_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.txt");
    let path = out.to_str().unwrap();
    let (c, _) = json(&[
        "construct",
        "pentagon",
        "--n",
        "9",
        "--m",
        "2",
        "--k",
        "3",
        "--sizes",
        "4,4,4,4,4",
        "--out",
        path,
    ]);
    assert_eq!(c, 0);
    let (c, v) = json(&["partition", path]);
    assert_eq!(c, 0);
    assert_eq!(v["num_parts"], 5);
    assert_eq!(v["palette"], serde_json::json!([2, 3]));
    assert_eq!(v["valid"], true);
}

#[test]
fn partition_of_rainbow_coloring_is_refuted() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "rb.txt", "gallai-coloring v1\norder 3 colors 3\n1 2\n3\n");
    let (c, v) = json(&["partition", &p]);
    assert_eq!(c, 1);
    assert_eq!(v["found"], false);
}

#[test]
fn formula_values() {
    let (c, v) = json(&["formula", "gr-equal", "--n", "7", "--k", "4"]);
    assert_eq!((c, v["value"].as_i64()), (0, Some(24)));
    let (_, v) = json(&["formula", "ramsey", "--n", "4", "--m", "2"]);
    assert_eq!(v["value"], 9);
    let (_, v) = json(&["formula", "gr-small-m", "--n", "38", "--m", "5", "--k", "3"]);
    assert_eq!(v["value"], 92);
    let (_, v) = json(&["formula", "gr-star", "--m", "5", "--k", "2"]);
    assert_eq!(v["value"], 11);
    let (c, v) = json(&["formula", "gr-general", "--n", "9", "--m", "2", "--k", "3"]);
    assert_eq!(c, 0);
    assert_eq!((v["lower"].as_i64(), v["upper"].as_i64()), (Some(21), Some(34)));
    assert_eq!(v["value"], Value::Null);
    let (c, v) = json(&["formula", "gr-small-m", "--n", "23", "--m", "3", "--k", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["guards_satisfied"], false);
    assert_eq!(code(&gallai(&["formula", "ramsey", "--n", "3", "--m", "0"])), 2);
    assert_eq!(code(&gallai(&["formula", "gr-equal", "--n", "3"])), 2);
}

#[test]
fn search_threshold_ramsey_single_edges() {
    let (c, v) = json(&[
        "search",
        "threshold",
        "--k",
        "2",
        "--pattern",
        "1,1",
        "--mode",
        "ramsey",
        "--max",
        "6",
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["threshold"], 5);
}

#[test]
fn search_threshold_absent_below_max() {
    let (c, v) = json(&[
        "search",
        "threshold",
        "--k",
        "2",
        "--pattern",
        "1,1",
        "--mode",
        "ramsey",
        "--max",
        "4",
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["threshold"], Value::Null);
}

#[test]
fn search_budget_exhaustion_exits_three() {
    let (c, v) = json(&["search", "decide", "--k", "3", "--pattern", "2,2", "--order", "8", "--budget", "50"]);
    assert_eq!(c, 3);
    assert_eq!(v["verdict"], "inconclusive");
    let (c, _) = json(&[
        "search",
        "threshold",
        "--k",
        "3",
        "--pattern",
        "2,2",
        "--max",
        "9",
        "--budget",
        "50",
    ]);
    assert_eq!(c, 3);
}

#[test]
fn search_input_errors_exit_two() {
    for args in [
        vec![
            "search",
            "decide",
            "--k",
            "3",
            "--pattern",
            "1,1",
            "--mode",
            "ramsey",
            "--order",
            "5",
        ],
        vec!["search", "decide", "--k", "2", "--pattern", "1", "--order", "5"],
        vec!["search", "decide", "--k", "2", "--pattern", "1,1", "--order", "5", "--budget", "0"],
        vec!["search", "decide", "--k", "2", "--pattern", "1,1", "--order", "0"],
        vec!["search", "threshold", "--k", "2", "--pattern", "1,1", "--max", "1"],
        vec!["search", "decide", "--k", "2", "--pattern", "1,1", "--order", "5", "--threads", "0"],
    ] {
        assert_eq!(code(&gallai(&args)), 2, "{args:?}");
    }
}

#[test]
fn search_checkpoint_resume_matches_direct_run() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("s.ckpt");
    let ck = ck.to_str().unwrap();
    let base = [
        "search",
        "decide",
        "--k",
        "3",
        "--pattern",
        "2,2",
        "--order",
        "8",
        "--shard-depth",
        "6",
    ];
    let (c, direct) = json(&base);
    assert_eq!(c, 0);
    assert_eq!(direct["verdict"], "exhausted");

    let mut first = base.to_vec();
    first.extend(["--checkpoint", ck, "--stop-after-shards", "1"]);
    let (c, part) = json(&first);
    assert_eq!(c, 3);
    assert!(part["remaining_shards"].as_u64().unwrap() > 0);

    let mut rest = base.to_vec();
    rest.extend(["--resume", ck, "--checkpoint", ck]);
    let (c, resumed) = json(&rest);
    assert_eq!(c, 0);
    assert_eq!(resumed["verdict"], direct["verdict"]);
    assert_eq!(resumed["nodes_explored"], direct["nodes_explored"]);

    // a completed checkpoint answers from cache
    let (c, cached) = json(&rest);
    assert_eq!(c, 0);
    assert_eq!(cached["nodes_explored"], direct["nodes_explored"]);

    let wrong = ["search", "decide", "--k", "4", "--pattern", "2,2", "--order", "8", "--resume", ck];
    let o = gallai(&wrong);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("different problem"));
}

#[test]
fn search_witness_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    let w = w.to_str().unwrap();
    let (c, v) = json(&[
        "search",
        "decide",
        "--k",
        "3",
        "--pattern",
        "2,2",
        "--order",
        "7",
        "--witness-out",
        w,
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["verdict"], "avoider_found");
    let (c, v) = json(&["verify", w, "--n", "2", "--m", "2"]);
    assert_eq!(c, 0);
    assert_eq!(v["holds"], true);
}

#[test]
fn search_output_is_thread_independent() {
    let args = [
        "search",
        "decide",
        "--k",
        "3",
        "--pattern",
        "2,2",
        "--order",
        "8",
        "--shard-depth",
        "6",
    ];
    let mut one = vec!["--json"];
    one.extend(args);
    one.extend(["--threads", "1"]);
    let mut eight = vec!["--json"];
    eight.extend(args);
    eight.extend(["--threads", "8"]);
    let a = gallai(&one);
    let b = gallai(&eight);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn threads_fall_back_to_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gallai"))
        .args(["search", "decide", "--k", "2", "--pattern", "1,1", "--order", "5"])
        .env("GALLAI_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_gallai"))
        .args(["search", "decide", "--k", "2", "--pattern", "1,1", "--order", "5"])
        .env("GALLAI_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn stability_on_pentagon_blowup() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.txt");
    let path = out.to_str().unwrap();
    let o = gallai(&[
        "construct",
        "pentagon",
        "--n",
        "36",
        "--m",
        "1",
        "--k",
        "3",
        "--sizes",
        "17,17,17,17,18",
        "--out",
        path,
    ]);
    assert!(o.status.success() || code(&o) == 1);
    let (c, v) = json(&["stability", path, "--n", "36", "--r", "8"]);
    assert_eq!(c, 0);
    let r = &v["report"];
    assert_eq!(r["holds_hypothesis"], true);
    assert_eq!(r["conclusion_holds"], true);
    assert_eq!(r["num_parts"], 5);
    assert_eq!(r["min_part_size"], 17);
    assert_eq!(r["min_between_degree_per_color"], 34);
}

#[test]
fn generate_is_seeded() {
    let a = gallai(&["generate", "--order", "12", "--k", "4", "--seed", "7"]);
    let b = gallai(&["generate", "--order", "12", "--k", "4", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "g.txt", &String::from_utf8(a.stdout).unwrap());
    let (c, v) = json(&["partition", &p]);
    assert_eq!(c, 0);
    assert_eq!(v["valid"], true);
}

#[test]
fn human_output_is_a_table() {
    let o = gallai(&["formula", "gr-equal", "--n", "7", "--k", "4"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("formula\n"));
    assert!(s.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["value", "24"]));
}
