use std::path::Path;
use std::process::{Command, Output};

fn threepi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threepi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// `quantity,value` rows of `measure`.
fn quantities(out: &Output) -> Vec<(String, f64)> {
    let text = stdout(out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("quantity,value"));
    lines
        .map(|l| {
            let (q, v) = l.split_once(',').unwrap();
            (q.to_string(), v.parse().unwrap())
        })
        .collect()
}

fn get(rows: &[(String, f64)], name: &str) -> f64 {
    rows.iter()
        .find(|(q, _)| q == name)
        .unwrap_or_else(|| panic!("no {name}"))
        .1
}

fn w_three_pi() -> f64 {
    4.0 / 9.0 * (5f64.sqrt() - 1.0)
}

#[test]
fn measure_named_states() {
    let out = threepi(&["measure", "--state", "w"]);
    assert_eq!(code(&out), 0);
    let rows = quantities(&out);
    assert!((get(&rows, "pi_abc") - w_three_pi()).abs() < 1e-12);
    assert!((get(&rows, "n_a(bc)") - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);
    assert!(get(&rows, "tau_abc").abs() < 1e-12);

    let rows = quantities(&threepi(&["measure", "--state", "ghz"]));
    assert!((get(&rows, "pi_abc") - 1.0).abs() < 1e-12);
    assert!((get(&rows, "tau_abc") - 1.0).abs() < 1e-12);
    for pair in ["n_ab", "n_ac", "n_bc"] {
        assert!(get(&rows, pair).abs() < 1e-12);
    }

    let rows = quantities(&threepi(&["measure", "--state", "bell"]));
    assert_eq!(rows.len(), 1);
    assert!((get(&rows, "n_a(b)") - 1.0).abs() < 1e-12);
}

#[test]
fn measure_product_ket_is_all_zero() {
    let out = threepi(&["measure", "--expr", "|000>"]);
    assert_eq!(code(&out), 0);
    let rows = quantities(&out);
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|(_, v)| *v == 0.0));
}

#[test]
fn measure_json_lines() {
    let out = threepi(&["measure", "--state", "ghz", "--format", "json-lines"]);
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(v["quantity"], "tau_abc");
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn measure_four_qubits_reports_per_focus_residuals() {
    let rows = quantities(&threepi(&[
        "measure",
        "--expr",
        "|0000> + |1111>",
        "--normalize",
    ]));
    for q in ["a", "b", "c", "d"] {
        assert!((get(&rows, &format!("residual_{q}")) - 1.0).abs() < 1e-9);
    }
    assert!(rows.iter().all(|(q, _)| !q.starts_with("pi_")));
}

#[test]
fn classify_examples() {
    let label = |args: &[&str]| {
        let out = threepi(args);
        assert_eq!(code(&out), 0, "{args:?}");
        stdout(&out).trim().to_string()
    };
    assert_eq!(label(&["classify", "--state", "ghz"]), "GHZ");
    assert_eq!(label(&["classify", "--state", "w"]), "W");
    assert_eq!(label(&["classify", "--expr", "|010>"]), "A-B-C");
    assert_eq!(
        label(&["classify", "--expr", "0.70710678|000> + 0.70710678|011>"]),
        "A-BC"
    );
    assert_eq!(
        label(&["classify", "--expr", "|000> + |101>", "--normalize"]),
        "B-AC"
    );
    let out = threepi(&["classify", "--state", "ghz", "--format", "json-lines"]);
    assert_eq!(stdout(&out).trim(), r#"{"class":"GHZ"}"#);
}

#[test]
fn exit_codes() {
    // parse errors
    assert_eq!(code(&threepi(&["measure", "--expr", "|0a>"])), 2);
    assert_eq!(code(&threepi(&["measure", "--expr", "|0> + |1>"])), 2);
    assert_eq!(
        code(&threepi(&["measure", "--expr", "|0> - |0>", "--normalize"])),
        2
    );
    let out = threepi(&["measure", "--expr", "0.5|00> +"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 9"));
    // dimension errors
    assert_eq!(
        code(&threepi(&[
            "measure",
            "--expr",
            "|00> + |1>",
            "--normalize"
        ])),
        3
    );
    assert_eq!(code(&threepi(&["measure", "--expr", "|1>"])), 3);
    assert_eq!(code(&threepi(&["classify", "--state", "bell"])), 3);
    // usage errors
    assert_eq!(code(&threepi(&["sweep-w", "--resolution", "1"])), 4);
    assert_eq!(code(&threepi(&["sweep-ghzw", "--sign", "x"])), 4);
    assert_eq!(
        code(&threepi(&["sweep-ghzw", "--sign", "-", "--p-steps", "0"])),
        4
    );
    assert_eq!(code(&threepi(&["verify", "--samples", "0"])), 4);
    assert_eq!(code(&threepi(&["verify", "--checks", "bogus"])), 4);
    assert_eq!(
        code(&threepi(&["classify", "--state", "ghz", "--tol", "-1"])),
        4
    );
    assert_eq!(code(&threepi(&["measure"])), 4);
    assert_eq!(
        code(&threepi(&["measure", "--state", "w", "--expr", "|0>"])),
        4
    );
    assert_eq!(code(&threepi(&["frobnicate"])), 4);
    assert_eq!(code(&threepi(&[])), 4);
    // help is not an error
    assert_eq!(code(&threepi(&["--help"])), 0);
    assert_eq!(code(&threepi(&["--version"])), 0);
}

#[test]
fn verify_is_deterministic() {
    let a = threepi(&["verify", "--samples", "1", "--seed", "7"]);
    let b = threepi(&["verify", "--samples", "1", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(
        text.lines().next(),
        Some("samples,seed,checks,min_slack,violations,max_pi_minus_tau")
    );
}

#[test]
fn verify_monogamy_and_domination() {
    let out = threepi(&[
        "verify",
        "--samples",
        "10000",
        "--seed",
        "7",
        "--checks",
        "monogamy",
        "--format",
        "json-lines",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["violations"], 0);
    assert!(v["max_pi_minus_tau"].is_null());

    let out = threepi(&[
        "verify",
        "--samples",
        "10000",
        "--checks",
        "domination",
        "--format",
        "json-lines",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["violations"], 0);
    assert!(v["max_pi_minus_tau"].as_f64().unwrap() >= 0.0);
}

/// Seed 4 with 500 POVM samples contains one trial where the average
/// three-pi rises; the exit code must report it.
#[test]
fn verify_reports_violations_with_exit_one() {
    let out = threepi(&[
        "verify",
        "--samples",
        "500",
        "--seed",
        "4",
        "--checks",
        "povm",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let violations: usize = row.split(',').nth(4).unwrap().parse().unwrap();
    assert_eq!(violations, 1);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    let out = threepi(&[
        "sweep-w",
        "--resolution",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("beta,gamma,pi_abc\n"));
    assert!(!text.contains('\r'));
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn sweep_w_matches_golden_and_closed_form() {
    let out = threepi(&["sweep-w", "--resolution", "101"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text, golden("sweep_w_101.csv"));
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["beta", "gamma", "pi_abc"]);
    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for r in &rows {
        let (b, g, pi) = (r[0], r[1], r[2]);
        assert!(b * b + g * g <= 1.0);
        let a = (1.0 - b * b - g * g).max(0.0).sqrt();
        let closed = 4.0 / 3.0
            * (a * a * (a.powi(4) + 4.0 * b * b * g * g).sqrt()
                + b * b * (b.powi(4) + 4.0 * a * a * g * g).sqrt()
                + g * g * (g.powi(4) + 4.0 * a * a * b * b).sqrt()
                - a.powi(4)
                - b.powi(4)
                - g.powi(4));
        assert!((pi - closed).abs() < 1e-9, "beta={b} gamma={g}");
        if pi > best.2 {
            best = (b, g, pi);
        }
    }
    let corner = rows.iter().find(|r| r[0] == 1.0 && r[1] == 0.0).unwrap();
    assert!(corner[2].abs() < 1e-12);
    let target = 1.0 / 3f64.sqrt();
    assert!((best.0 - target).abs() <= 0.01 && (best.1 - target).abs() <= 0.01);
}

#[test]
fn sweep_ghzw_matches_golden_and_landmarks() {
    for (sign, file) in [
        ("-", "sweep_ghzw_minus_101.csv"),
        ("+", "sweep_ghzw_plus_101.csv"),
    ] {
        let out = threepi(&["sweep-ghzw", "--sign", sign, "--p-steps", "101"]);
        assert_eq!(code(&out), 0);
        let text = stdout(&out);
        assert_eq!(text, golden(file), "sign {sign}");
        let (header, rows) = parse_csv(&text);
        assert_eq!(
            header,
            [
                "p",
                "pi_abc",
                "tau_abc",
                "n_sq_abc",
                "tau_closed_form",
                "pi_minus_tau"
            ]
        );
        assert_eq!(rows.len(), 101);
        let last = &rows[100];
        assert!((last[1] - 1.0).abs() < 1e-9 && (last[2] - 1.0).abs() < 1e-9);
        let first = &rows[0];
        assert!((first[1] - w_three_pi()).abs() < 1e-9 && first[2].abs() < 1e-9);
        for r in &rows {
            assert!((r[2] - r[4]).abs() < 1e-9);
            assert!(r[5] >= -1e-9);
        }
        if sign == "+" {
            // pi+ and tau+ coincide on [0.4, 1]
            assert!(rows[40..].iter().all(|r| r[5].abs() < 1e-9));
        } else {
            let min = rows.iter().min_by(|a, b| a[1].total_cmp(&b[1])).unwrap();
            assert!((0.55..=0.61).contains(&min[0]) && (0.48..=0.52).contains(&min[1]));
        }
    }
}

#[test]
fn floats_round_trip_with_full_precision() {
    for args in [
        vec!["sweep-ghzw", "--sign", "-", "--p-steps", "7"],
        vec![
            "sweep-ghzw",
            "--sign",
            "-",
            "--p-steps",
            "7",
            "--format",
            "json-lines",
        ],
    ] {
        let text = stdout(&threepi(&args));
        let p_values: Vec<f64> = if args.contains(&"json-lines") {
            text.lines()
                .map(|l| {
                    serde_json::from_str::<serde_json::Value>(l).unwrap()["p"]
                        .as_f64()
                        .unwrap()
                })
                .collect()
        } else {
            parse_csv(&text).1.iter().map(|r| r[0]).collect()
        };
        for (k, p) in p_values.iter().enumerate() {
            // exact equality: no digits lost on the way out
            assert_eq!(*p, k as f64 / 6.0);
        }
    }
    let rows = quantities(&threepi(&["measure", "--state", "w"]));
    assert_eq!(get(&rows, "pi_abc").to_bits(), {
        let psi = threepi::PureState::w();
        threepi::measures::three_pi(&psi).unwrap().to_bits()
    });
}
