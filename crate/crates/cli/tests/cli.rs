//! End-to-end tests of the `bellbox` binary: golden outputs, exit codes and
//! format equivalence.
//!
//! Regenerate goldens with `BELLBOX_BLESS=1 cargo test -p bellbox-cli --test cli`.

#![allow(clippy::approx_constant)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bellbox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bellbox"))
        .args(args)
        .output()
        .expect("spawn bellbox")
}

fn stdout(args: &[&str]) -> String {
    let out = bellbox(args);
    assert!(
        out.status.success(),
        "bellbox {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&full)).unwrap()
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn check_golden(name: &str, args: &[&str]) {
    let got = stdout(args);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("BELLBOX_BLESS").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "golden mismatch for {name}");
}

#[test]
fn golden_outputs() {
    let mix = data_dir().join("mixture_two.json");
    let mix = mix.to_str().unwrap();
    let cases: &[(&str, &[&str])] = &[
        (
            "qm_pi4_pi4.json",
            &[
                "qm", "--alpha", "pi/4", "--beta", "pi/4", "--format", "json",
            ],
        ),
        (
            "qm_0_pi8.json",
            &["qm", "--alpha", "0", "--beta", "pi/8", "--format", "json"],
        ),
        (
            "classical_pi4_pi8.json",
            &[
                "classical",
                "--alpha",
                "pi/4",
                "--beta",
                "pi/8",
                "--format",
                "json",
            ],
        ),
        (
            "chsh_qm.json",
            &["chsh", "--model", "qm", "--format", "json"],
        ),
        (
            "chsh_classical.json",
            &["chsh", "--model", "classical", "--format", "json"],
        ),
        (
            "chsh_zero.json",
            &[
                "chsh",
                "--model",
                "qm",
                "--configs",
                "0,0,0,0,0,0,0,0",
                "--format",
                "json",
            ],
        ),
        (
            "operator_pi8_0.json",
            &[
                "operator", "--alpha", "pi/8", "--beta", "0", "--format", "json",
            ],
        ),
        (
            "operator_pi4_pi4.json",
            &[
                "operator", "--alpha", "pi/4", "--beta", "pi/4", "--format", "json",
            ],
        ),
        (
            "operator_classical.json",
            &[
                "operator",
                "--alpha",
                "pi/8",
                "--beta",
                "pi/8",
                "--model",
                "classical",
                "--format",
                "json",
            ],
        ),
        (
            "marbles_200_42.json",
            &[
                "marbles", "--alpha", "0", "--beta", "pi/8", "--trials", "200", "--seed", "42",
                "--format", "json",
            ],
        ),
        (
            "marbles_quantized.csv",
            &[
                "marbles",
                "--mode",
                "quantized",
                "--box-size",
                "20",
                "--alpha",
                "0",
                "--beta",
                "pi/8",
                "--trials",
                "100000",
                "--seed",
                "7",
                "--format",
                "csv",
            ],
        ),
        ("mixture_two.json", &["mixture", mix, "--format", "json"]),
        (
            "discriminate_quantum.txt",
            &["discriminate", "--probs", "0,0.5,0.5,0", "--tol", "0.01"],
        ),
    ];
    for (name, args) in cases {
        check_golden(name, args);
    }
}

#[test]
fn qm_examples() {
    let v = json(&["qm", "--alpha", "pi/4", "--beta", "pi/4"]);
    assert_eq!(v["w_yy"], 0.0);
    assert_eq!(v["w_yn"], 0.5);
    let v = json(&["qm", "--alpha", "0", "--beta", "pi/8"]);
    assert_eq!(v["correlation"].as_f64().unwrap(), -0.7071067812);
}

#[test]
fn chsh_examples() {
    let v = json(&["chsh", "--model", "qm"]);
    assert_eq!(v["lhs"].as_f64().unwrap(), 0.8284271247);
    assert_eq!(v["violated"], true);
    let v = json(&["chsh", "--model", "classical"]);
    assert_eq!(v["lhs"].as_f64().unwrap(), -0.5857864376);
    assert_eq!(v["violated"], false);
    let v = json(&["chsh", "--model", "qm", "--configs", "0,0,0,0,0,0,0,0"]);
    assert_eq!(v["lhs"].as_f64().unwrap(), 0.0);
    assert_eq!(v["violated"], false);
}

#[test]
fn operator_examples() {
    let v = json(&["operator", "--alpha", "pi/8", "--beta", "0"]);
    let w = v["weights"].as_array().unwrap();
    assert_eq!((w[2].as_f64(), w[3].as_f64()), (Some(0.0), Some(0.0)));
    assert_eq!(v["interference_c"], 0.0);
    // the true Gram determinant sin²(α+β)cos²(α−β) at (π/8, 0)
    assert_eq!(v["gram_det"].as_f64().unwrap(), 0.125);

    let v = json(&["operator", "--alpha", "pi/4", "--beta", "pi/4"]);
    assert_eq!(v["weights"][3].as_f64().unwrap(), -0.5);

    let v = json(&[
        "operator",
        "--alpha",
        "pi/8",
        "--beta",
        "pi/8",
        "--model",
        "classical",
    ]);
    assert_eq!(v["weights"].as_array().unwrap().len(), 2);
}

#[test]
fn marbles_examples() {
    let v = json(&[
        "marbles", "--alpha", "0", "--beta", "pi/8", "--trials", "200", "--seed", "42",
    ]);
    let total: u64 = ["yy", "yn", "ny", "nn"]
        .iter()
        .map(|k| v["counts"][k].as_u64().unwrap())
        .sum();
    assert_eq!(total, 200);

    let v = json(&[
        "marbles", "--alpha", "0", "--beta", "pi/8", "--trials", "100000", "--seed", "7", "--mode",
        "exact",
    ]);
    let p = v["w_yy"].as_f64().unwrap();
    assert!((p - 0.073_223_304_7).abs() < 5.0 * v["stderr"]["yy"].as_f64().unwrap().max(0.000_82));

    let v = json(&[
        "marbles",
        "--mode",
        "quantized",
        "--box-size",
        "20",
        "--alpha",
        "0",
        "--beta",
        "pi/8",
        "--trials",
        "100000",
        "--seed",
        "7",
    ]);
    assert_eq!(v["reference"]["w_yy"], 0.075);
}

#[test]
fn mixture_examples() {
    let one = json(&[
        "mixture",
        data_dir().join("mixture_single.json").to_str().unwrap(),
    ]);
    let qm = json(&["qm", "--alpha", "0", "--beta", "pi/8"]);
    for k in ["w_yy", "w_yn", "w_ny", "w_nn", "correlation"] {
        assert_eq!(one[k], qm[k], "{k}");
    }
    let two = json(&[
        "mixture",
        data_dir().join("mixture_two.json").to_str().unwrap(),
    ]);
    assert_eq!(two["w_yy"], 0.25);
}

#[test]
fn discriminate_examples() {
    for (probs, verdict) in [
        ("0,0.5,0.5,0", "Quantum"),
        ("0.25,0.25,0.25,0.25", "Classical"),
        ("0.1,0.4,0.4,0.1", "Inconclusive"),
    ] {
        let v = json(&["discriminate", "--probs", probs, "--tol", "0.01"]);
        assert_eq!(v["verdict"], verdict, "{probs}");
    }
}

#[test]
fn exit_codes() {
    let bad_weights = data_dir().join("mixture_bad_sum.json");
    let bad_schema = data_dir().join("mixture_bad_schema.json");
    let cases: &[(&[&str], i32)] = &[
        (&["qm", "--alpha", "0", "--beta", "pi/8"], 0),
        (&["qm", "--alpha", "0", "--beta", "bogus"], 2),
        (&["qm", "--alpha", "0"], 2),
        (&["chsh", "--model", "qm", "--configs", "0,0,0"], 2),
        (&["chsh", "--model", "quantum"], 2),
        (&["operator", "--alpha", "pi/", "--beta", "0"], 2),
        (
            &[
                "marbles", "--alpha", "0", "--beta", "0", "--trials", "0", "--seed", "1",
            ],
            3,
        ),
        (
            &["marbles", "--alpha", "0", "--beta", "0", "--trials", "10"],
            2,
        ),
        (
            &[
                "marbles",
                "--alpha",
                "0",
                "--beta",
                "0",
                "--trials",
                "10",
                "--seed",
                "1",
                "--mode",
                "quantized",
                "--box-size",
                "0",
            ],
            3,
        ),
        (&["mixture", bad_weights.to_str().unwrap()], 3),
        (&["mixture", bad_schema.to_str().unwrap()], 2),
        (&["mixture", "/nonexistent/mixture.json"], 2),
        (&["discriminate", "--probs", "0.5,0.5,0.5,0"], 2),
        (&["discriminate", "--probs", "0.5,0.5"], 2),
        (&["discriminate", "--probs", "a,b,c,d"], 2),
        (&["--format", "xml", "qm", "--alpha", "0", "--beta", "0"], 2),
        (&["--help"], 0),
    ];
    for (args, code) in cases {
        let out = bellbox(args);
        assert_eq!(
            out.status.code(),
            Some(*code),
            "bellbox {args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        if *code != 0 {
            assert!(out.stdout.is_empty(), "no report on failure for {args:?}");
            assert!(!out.stderr.is_empty());
        }
    }
}

#[test]
fn negative_angles_parse() {
    let v = json(&["qm", "--alpha", "-pi/8", "--beta", "0"]);
    assert_eq!(v["alpha_rad"].as_f64().unwrap(), -0.3926990817);
}

fn flatten(prefix: &str, v: &Value, out: &mut BTreeMap<String, String>) {
    match v {
        Value::Object(m) => m
            .iter()
            .for_each(|(k, c)| flatten(&format!("{prefix}{k}."), c, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, c)| flatten(&format!("{prefix}{i}."), c, out)),
        Value::Null => {
            out.insert(prefix.trim_end_matches('.').to_string(), String::new());
        }
        Value::String(s) => {
            out.insert(prefix.trim_end_matches('.').to_string(), s.clone());
        }
        other => {
            out.insert(prefix.trim_end_matches('.').to_string(), other.to_string());
        }
    }
}

#[test]
fn csv_and_json_carry_identical_values() {
    let mix = data_dir().join("mixture_two.json");
    let commands: &[&[&str]] = &[
        &["qm", "--alpha", "0.3", "--beta", "1.2"],
        &["chsh", "--model", "classical"],
        &["operator", "--alpha", "pi/8", "--beta", "3pi/8"],
        &[
            "marbles",
            "--alpha",
            "pi/4",
            "--beta",
            "pi/8",
            "--trials",
            "5000",
            "--seed",
            "3",
            "--mode",
            "quantized",
        ],
        &["mixture", mix.to_str().unwrap()],
        &["discriminate", "--probs", "0.1,0.4,0.4,0.1"],
    ];
    for args in commands {
        let mut from_json = BTreeMap::new();
        flatten("", &json(args), &mut from_json);

        let mut csv_args = args.to_vec();
        csv_args.extend(["--format", "csv"]);
        let text = stdout(&csv_args);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("key,value"));
        let from_csv: BTreeMap<String, String> = lines
            .map(|l| {
                let (k, v) = l.split_once(',').unwrap();
                (k.to_string(), v.to_string())
            })
            .collect();
        assert_eq!(from_json, from_csv, "{args:?}");

        // table shows the same values too
        let table = stdout(args);
        for (k, v) in &from_csv {
            assert!(
                table
                    .lines()
                    .any(|l| l.starts_with(k.as_str()) && l.trim_end().ends_with(v.as_str())),
                "{k} missing from table"
            );
        }
    }
}

#[test]
fn json_numbers_have_at_most_ten_significant_digits() {
    fn check(v: &Value) {
        match v {
            Value::Number(n) if n.is_f64() => {
                let x = n.as_f64().unwrap();
                let reparsed: f64 = format!("{x:.9e}").parse().unwrap();
                assert_eq!(x, reparsed, "{x} has more than 10 significant digits");
            }
            Value::Array(a) => a.iter().for_each(check),
            Value::Object(m) => m.values().for_each(check),
            _ => {}
        }
    }
    check(&json(&[
        "operator",
        "--alpha",
        "0.123456789123",
        "--beta",
        "2.3456789",
    ]));
    check(&json(&[
        "marbles", "--alpha", "0.3", "--beta", "1.1", "--trials", "777", "--seed", "11",
    ]));
}

#[test]
fn marbles_output_is_byte_stable() {
    let args = [
        "marbles", "--alpha", "pi/4", "--beta", "3pi/8", "--trials", "50000", "--seed", "99",
        "--format", "json",
    ];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let mut serial = args.to_vec();
    serial.push("--serial");
    assert_eq!(first, stdout(&serial));
}
