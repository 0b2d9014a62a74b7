//! End-to-end tests against the compiled binary: exit codes, stream
//! discipline, determinism.

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

const BIN: &str = env!("CARGO_BIN_EXE_sdtool");

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn sdtool(args: &[&str], stdin: Option<&str>) -> Run {
    let mut cmd = Command::new(BIN);
    cmd.args(args)
        .stdin(if stdin.is_some() {
            Stdio::piped()
        } else {
            Stdio::null()
        })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn sdtool");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    let out = child.wait_with_output().expect("wait for sdtool");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn doc(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).expect("stdout is one JSON document")
}

#[test]
fn exit_0_polarize_diag_pair() {
    let r = sdtool(&["polarize", "-i", &fixture("diag_pair.json")], None);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_eq!(r.stderr, "");
    let b = doc(&r);
    assert_eq!(b["n"], 2);
    assert_eq!(b["d"], 2);
    assert_eq!(
        b["forms"][0]["terms"],
        json!([{"exp": [1, 0], "coef": "3"}, {"exp": [0, 1], "coef": "7"}])
    );
    assert_eq!(
        b["forms"][1]["terms"],
        json!([
            {"exp": [2, 0], "coef": "2"},
            {"exp": [1, 1], "coef": "10"},
            {"exp": [0, 2], "coef": "12"}
        ])
    );
}

#[test]
fn exit_1_member_rank_certificate() {
    let r = sdtool(&["member", "-i", &fixture("base_0_minus_st.json")], None);
    assert_eq!(r.code, 1);
    let v = doc(&r);
    assert_eq!(v["verdict"], "not-member");
    assert_eq!(v["certificate"], "rank(c1^2-4c2) = 2");
}

#[test]
fn exit_2_member_indeterminate() {
    let r = sdtool(&["member", "-i", &fixture("base_nonsplit.json")], None);
    assert_eq!(r.code, 2);
    let v = doc(&r);
    assert_eq!(v["verdict"], "indeterminate");
    assert_eq!(v["direction"], 1);
}

#[test]
fn exit_3_malformed_json_keeps_stdout_clean() {
    let r = sdtool(&["polarize", "-i", &fixture("malformed.json")], None);
    assert_eq!(r.code, 3);
    assert_eq!(r.stdout, "");
    assert!(r.stderr.contains("sdtool:"));
}

#[test]
fn exit_3_usage_errors() {
    let r = sdtool(&["polarize", "--no-such-flag"], None);
    assert_eq!(r.code, 3);
    assert_eq!(r.stdout, "");
    let r = sdtool(&["not-a-command"], Some(""));
    assert_eq!(r.code, 3);
}

#[test]
fn spectral_data_non_commuting_witness() {
    let r = sdtool(&["spectral-data", "-i", &fixture("e12_e21.json")], None);
    assert_eq!(r.code, 1);
    let v = doc(&r);
    assert_eq!(v["error"], "not-commuting");
    assert_eq!(v["witness"]["i"], 1);
    assert_eq!(v["witness"]["j"], 2);
}

#[test]
fn fiber_length_fat_point_exact_bytes() {
    let r = sdtool(&["fiber-length", "-i", &fixture("fat_point.json")], None);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "{\"flat\":false,\"length\":3}\n");
}

#[test]
fn stdin_is_the_default_input() {
    let fat = std::fs::read_to_string(fixture("fat_point.json")).unwrap();
    let r = sdtool(&["fiber-length"], Some(&fat));
    assert_eq!(r.code, 0);
    assert_eq!(doc(&r), json!({"length": 3, "flat": false}));
}

#[test]
fn pretty_output_is_equivalent_json() {
    let r = sdtool(&["polarize", "-i", &fixture("diag_pair.json")], None);
    let p = sdtool(
        &["polarize", "--pretty", "-i", &fixture("diag_pair.json")],
        None,
    );
    assert_eq!(p.code, 0);
    assert!(p.stdout.lines().count() > 1);
    assert_eq!(doc(&r), doc(&p));
}

#[test]
fn batch_runs_are_byte_identical_and_ordered() {
    let args = ["polarize", "--batch", "-i", &fixture("batch.ndjson")];
    let a = sdtool(&args, None);
    let b = sdtool(&args, None);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<&str> = a.stdout.lines().collect();
    assert_eq!(lines.len(), 3);
    let first: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["forms"][0]["terms"][0]["coef"], "3");
    let second: Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(second["n"], 1);
}

#[test]
fn batch_keeps_going_after_a_bad_line() {
    let ndjson = "\
{\"d\": 2, \"points\": [{\"coords\": [\"0\", \"0\"], \"mult\": 1}]}\n\
{ broken\n\
\n\
{\"d\": 2, \"points\": [{\"coords\": [\"1\", \"2\"], \"mult\": 2}]}\n";
    let r = sdtool(&["fiber-length", "--batch"], Some(ndjson));
    assert_eq!(r.code, 3);
    let lines: Vec<Value> = r
        .stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], json!({"length": 1, "flat": true}));
    assert_eq!(lines[1]["error"], "input");
    assert_eq!(lines[2], json!({"length": 3, "flat": false}));
    assert!(r.stderr.contains("line 2"));
}

#[test]
fn batch_exit_code_is_the_worst_verdict() {
    let tuples = format!(
        "{}\n{}\n",
        std::fs::read_to_string(fixture("diag_pair.json"))
            .unwrap()
            .trim(),
        std::fs::read_to_string(fixture("e12_e21.json"))
            .unwrap()
            .trim()
    );
    let r = sdtool(&["check-commute", "--batch"], Some(&tuples));
    assert_eq!(r.code, 1);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "{\"commute\":true}");
}

#[test]
fn gen_pipes_into_check_commute_and_sd_check() {
    let g = sdtool(
        &[
            "gen",
            "--seed",
            "11",
            "--profile",
            "polynomial",
            "--size",
            "3,2",
        ],
        None,
    );
    assert_eq!(g.code, 0, "stderr: {}", g.stderr);
    let c = sdtool(&["check-commute"], Some(&g.stdout));
    assert_eq!(c.code, 0);
    assert_eq!(doc(&c), json!({"commute": true}));
    let s = sdtool(&["sd-check"], Some(&g.stdout));
    assert_eq!(s.code, 0, "stderr: {}", s.stderr);
    assert_eq!(doc(&s)["equal"], json!(true));
}

#[test]
fn gen_rejects_batch_and_bad_sizes() {
    let r = sdtool(&["gen", "--batch"], None);
    assert_eq!(r.code, 3);
    let r = sdtool(&["gen", "--size", "9,9"], None);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("bound"));
    let r = sdtool(&["gen", "--size", "2"], None);
    assert_eq!(r.code, 3);
}

#[test]
fn trace_and_fv_round_through_stdin() {
    let input = json!({
        "tuple": {"n": 2, "d": 2, "matrices": [[[1, 0], [0, 2]], [[3, 0], [0, 4]]]},
        "a": [1, 1]
    });
    let r = sdtool(&["trace"], Some(&input.to_string()));
    assert_eq!(r.code, 0);
    assert_eq!(doc(&r), json!({"trace": "11"}));

    let input = json!({
        "cycle": {"d": 2, "points": [{"coords": ["1", "2"], "mult": 2}]},
        "v": ["1", "0"]
    });
    let r = sdtool(&["fv"], Some(&input.to_string()));
    assert_eq!(r.code, 0);
    let p = doc(&r);
    assert_eq!(p["vars"], 2);
    assert_eq!(
        p["terms"],
        json!([
            {"exp": [2, 0], "coef": "1"},
            {"exp": [1, 0], "coef": "-2"},
            {"exp": [0, 0], "coef": "1"}
        ])
    );
}

#[test]
fn attach_matches_chow_of_extended_cycle() {
    let base = sdtool(
        &["chow"],
        Some(&json!({"d": 2, "points": [{"coords": ["1", "1"], "mult": 1}]}).to_string()),
    );
    assert_eq!(base.code, 0);
    let attach_in = json!({"base": doc(&base), "x": ["-1", "2"]});
    let attached = sdtool(&["attach"], Some(&attach_in.to_string()));
    assert_eq!(attached.code, 0);
    let direct = sdtool(
        &["chow"],
        Some(
            &json!({"d": 2, "points": [
                {"coords": ["1", "1"], "mult": 1},
                {"coords": ["-1", "2"], "mult": 1}
            ]})
            .to_string(),
        ),
    );
    assert_eq!(doc(&attached), doc(&direct));
}
