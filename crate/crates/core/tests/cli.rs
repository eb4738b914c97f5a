//! End-to-end tests of the `erdosum` binary: exit-code contract, output
//! formats, and the text/JSON number-equality invariant.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_erdosum"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn erdosum")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("valid json on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn verify_small_threshold_exits_one() {
    let out = run(&["verify", "--threshold", "3"]);
    assert_eq!(code(&out), 1, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("certified             false"));
}

#[test]
fn verify_json_shape_and_values() {
    let out = run(&["verify", "--threshold", "3", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["certified"], Value::Bool(false));
    assert_eq!(v["threshold"], 3);
    assert_eq!(v["pair_enumeration"], "ordered-pairs");
    assert_eq!(v["includes_prime_squares"], Value::Bool(true));
    assert!(v["margin"].as_f64().unwrap() < 0.0);
    assert_eq!(v["erdos_bound"].as_f64().unwrap(), 1.84);
    assert_eq!(v["clark_bound"].as_f64().unwrap(), 1.7811);
    assert_eq!(v["semiprime_sum"]["term_count"], 3);
    assert_eq!(v["prime_sum"]["term_count"], 2);
    assert!(v["tool_version"].is_string());
    assert!(v["elapsed_seconds"].is_number());
    // top-level key order is the declared schema order
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
    assert_eq!(
        keys,
        vec![
            "threshold",
            "pair_enumeration",
            "includes_prime_squares",
            "semiprime_sum",
            "prime_sum",
            "margin",
            "certified",
            "erdos_bound",
            "clark_bound",
            "notes",
            "tool_version",
            "elapsed_seconds",
        ]
    );
}

#[test]
fn sum_primes_small() {
    let out = run(&["sum-primes", "--limit", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let value = v["value"].as_f64().unwrap();
    assert!((value - 1.024_760_595_986_760_8).abs() < 1e-12);
    assert!(v["error_bound"].as_f64().unwrap() > 0.0);
    assert_eq!(v["term_count"], 2);
}

#[test]
fn text_numbers_appear_bitwise_in_json() {
    let text_out = run(&["sum-primes", "--limit", "1000"]);
    let json_out = run(&["sum-primes", "--limit", "1000", "--format", "json"]);
    assert_eq!(code(&text_out), 0);
    let json_str = stdout(&json_out);
    let text = stdout(&text_out);
    let mut checked = 0;
    for line in text.lines() {
        let mut parts = line.split_whitespace();
        let (Some(_), Some(num)) = (parts.next(), parts.next_back()) else { continue };
        if num.contains('.') || num.contains('e') {
            assert!(
                json_str.contains(num),
                "text number {num} not present in json: {json_str}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 2, "expected at least value and error bound; got {checked}");

    // same invariant for verify
    let text_out = run(&["verify", "--threshold", "100"]);
    let json_out = run(&["verify", "--threshold", "100", "--format", "json"]);
    let json_str = stdout(&json_out);
    for line in stdout(&text_out).lines() {
        if line.starts_with("note:") {
            continue;
        }
        let Some(num) = line.split_whitespace().next_back() else { continue };
        if (num.contains('.') || num.contains('e')) && num.parse::<f64>().is_ok() {
            assert!(json_str.contains(num), "verify text number {num} missing from json");
        }
    }
}

#[test]
fn sum_semiprimes_enumeration_flags() {
    let ordered = json(&run(&["sum-semiprimes", "--limit", "3", "--format", "json"]));
    assert_eq!(ordered["pair_enumeration"], "ordered-pairs");
    assert!((ordered["value"].as_f64().unwrap() - 0.416_942_601_551_916_03).abs() < 1e-12);

    let distinct = json(&run(&[
        "sum-semiprimes",
        "--limit",
        "3",
        "--enumeration",
        "distinct",
        "--format",
        "json",
    ]));
    assert_eq!(distinct["pair_enumeration"], "distinct-products");
    assert!((distinct["value"].as_f64().unwrap() - 0.323_924_163_793_374_82).abs() < 1e-12);

    let no_squares = json(&run(&[
        "sum-semiprimes",
        "--limit",
        "3",
        "--include-prime-squares",
        "false",
        "--format",
        "json",
    ]));
    assert_eq!(no_squares["includes_prime_squares"], Value::Bool(false));
    assert_eq!(no_squares["term_count"], 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["sum-primes"])), 2); // missing --limit
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["sum-primes", "--limit", "not-a-number"])), 2);
    assert_eq!(code(&run(&["verify", "--threshold", "1"])), 2); // domain error
    assert_eq!(code(&run(&["crossover", "--scan-limit", "50", "--stride", "0"])), 2);
}

#[test]
fn check_primitive_file_flow() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    std::fs::write(&good, "# pairwise non-dividing\n6\n10\n15\n").unwrap();
    let out = run(&["check-primitive", "--input", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("primitive: 3 elements"));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2\n4\n").unwrap();
    let out = run(&["check-primitive", "--input", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["primitive"], Value::Bool(false));
    assert_eq!(v["witness"], serde_json::json!([2, 4]));

    let with_one = dir.path().join("one.txt");
    std::fs::write(&with_one, "1\n2\n").unwrap();
    assert_eq!(code(&run(&["check-primitive", "--input", with_one.to_str().unwrap()])), 2);

    let garbled = dir.path().join("garbled.txt");
    std::fs::write(&garbled, "6\nxyz\n").unwrap();
    assert_eq!(code(&run(&["check-primitive", "--input", garbled.to_str().unwrap()])), 2);
}

#[test]
fn sum_file_flow() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.txt");
    std::fs::write(&path, "6\n10\n15\n").unwrap();
    let out = run(&["sum-file", "--input", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 0.161_065_844_153_456_73).abs() < 1e-12);
    assert_eq!(v["term_count"], 3);

    // a non-primitive input is a domain error for sum-file
    std::fs::write(&path, "2\n4\n").unwrap();
    assert_eq!(code(&run(&["sum-file", "--input", path.to_str().unwrap()])), 2);
}

#[test]
fn crossover_csv_and_exit() {
    let out = run(&["crossover", "--scan-limit", "60", "--stride", "4", "--format", "csv"]);
    assert_eq!(code(&out), 1); // no crossover this low
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "prime,margin,certified");
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3);
        fields[0].parse::<u64>().unwrap();
        assert!(fields[1].parse::<f64>().unwrap() < 0.0);
        assert_eq!(fields[2], "false");
    }

    // history file + json agree
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("h.csv");
    let out = run(&[
        "crossover",
        "--scan-limit",
        "60",
        "--stride",
        "4",
        "--history-out",
        hist.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["found"], Value::Bool(false));
    assert!(v["final_margin"].as_f64().unwrap() < 0.0);
    let csv = std::fs::read_to_string(&hist).unwrap();
    assert_eq!(csv.lines().count(), v["history"].as_array().unwrap().len() + 1);
}

#[test]
fn sieve_save_and_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("primes.ptab");
    let out = run(&["sieve", "--limit", "100000", "--save", cache.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("prime count    9592"));
    assert!(Path::new(&cache).exists());

    let from_cache = json(&run(&[
        "sum-primes",
        "--limit",
        "100000",
        "--table",
        cache.to_str().unwrap(),
        "--format",
        "json",
    ]));
    let sieved = json(&run(&["sum-primes", "--limit", "100000", "--format", "json"]));
    assert_eq!(from_cache["value"], sieved["value"]);
    assert_eq!(from_cache["error_bound"], sieved["error_bound"]);

    // a cache that does not cover the requested limit is refused
    let out = run(&["sum-primes", "--limit", "200000", "--table", cache.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    // corrupt cache is refused
    std::fs::write(&cache, b"PTAB1garbage").unwrap();
    let out = run(&["sum-primes", "--limit", "10", "--table", cache.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn thread_flag_and_env_do_not_change_results() {
    let base = run(&["sum-semiprimes", "--limit", "5000", "--threads", "1", "--format", "json"]);
    let threaded = run(&["sum-semiprimes", "--limit", "5000", "--threads", "3", "--format", "json"]);
    let via_env = bin()
        .args(["sum-semiprimes", "--limit", "5000", "--format", "json"])
        .env("ERDOSUM_THREADS", "2")
        .output()
        .unwrap();
    let strip = |out: &Output| {
        let mut v = json(out);
        v.as_object_mut().unwrap().remove("elapsed_seconds");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(&base), strip(&threaded));
    assert_eq!(strip(&base), strip(&via_env));
}
