use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galois-inertia"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn map_neutral_and_closed_form() {
    let o = bin(&["map", "-t", "1,2,4", "-x", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1,2,4\n");

    let o = bin(&["map", "-t", "1,2,4", "-x", "2"]);
    assert_eq!(stdout(&o), "1.4384471871911697,4,5.561552812808831\n");
    assert!(stderr(&o).is_empty());
}

#[test]
fn validation_errors_exit_one_with_code() {
    let o = bin(&["map", "-t", "2,2,4", "-x", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
    let line = stderr(&o);
    assert!(line.starts_with("DEGENERATE: "), "{line}");
    assert_eq!(line.lines().count(), 1);

    for (args, code) in [
        (
            &["map", "-t", "1,2,4", "-x", "-1"][..],
            "NEGATIVE_PARAMETER",
        ),
        (&["map", "-t", "4,2,1", "-x", "1"][..], "DISORDERED"),
        (&["map", "-t", "0,2,4", "-x", "1"][..], "NON_POSITIVE"),
        (
            &["orbit", "-t", "1,2,4", "--x0", "3", "--x1", "1"][..],
            "INVALID_ARGUMENT",
        ),
        (
            &["extended", "--inverse", "2,3"][..],
            "NO_INVERSE_IN_SEMIGROUP",
        ),
        (&["verify", "--samples", "0"][..], "INVALID_ARGUMENT"),
    ] {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(
            stderr(&o).starts_with(&format!("{code}: ")),
            "{args:?}: {}",
            stderr(&o)
        );
    }
}

#[test]
fn usage_errors_exit_one_help_exits_zero() {
    assert_eq!(bin(&["map", "-t", "1,2,4"]).status.code(), Some(1));
    assert_eq!(bin(&["map", "-t", "1,2", "-x", "1"]).status.code(), Some(1));
    assert_eq!(bin(&["nonsense"]).status.code(), Some(1));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    assert_eq!(bin(&["map", "--help"]).status.code(), Some(0));
}

#[test]
fn csv_rows_round_trip_through_map() {
    let o = bin(&[
        "orbit",
        "-t",
        "0.3,1.7,9.1",
        "--x0",
        "0.5",
        "--x1",
        "7.25",
        "--steps",
        "9",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    for row in rows {
        let (x, lambdas) = row.split_once(',').unwrap();
        let again = bin(&["map", "-t", "0.3,1.7,9.1", "-x", x]);
        assert_eq!(stdout(&again).trim_end(), lambdas);

        let l: Vec<&str> = lambdas.split(',').collect();
        let image = bin(&["map", "-t", lambdas, "-x", "0"]);
        assert_eq!(stdout(&image).trim_end().split(',').collect::<Vec<_>>(), l);
    }
}

#[test]
fn json_output_and_output_file() {
    let dir = std::env::temp_dir().join(format!("galois-inertia-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("map.json");
    let o = bin(&[
        "map",
        "-t",
        "1,2,4",
        "--distance",
        "2",
        "--mass",
        "0.5",
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["x"], 2.0);
    assert_eq!(v["lambda2"], 4.0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn complex_map_and_group_elements() {
    let o = bin(&["map", "-t", "1,2,4", "-x", "-2", "--complex"]);
    assert!(o.status.success());
    let z: Vec<num_complex::Complex64> = stdout(&o)
        .trim()
        .split(',')
        .map(|p| p.parse().unwrap())
        .collect();
    assert_eq!(z[1], num_complex::Complex64::new(0.0, 0.0));
    assert!((z[0] + z[2] - 3.0).norm() < 1e-15);
    assert!((z[0] * z[2]).norm() < 1e-15);

    let o = bin(&["extended", "--group", "--mul", "1+1i,0", "1-1i,2"]);
    assert_eq!(stdout(&o), "2+0i,2+2i\n");
}

#[test]
fn falsify_rules_and_reproducibility() {
    let args = [
        "falsify",
        "--rules",
        "galois-",
        "fixed:1,0,1",
        "--samples",
        "64",
        "--seed",
        "3",
    ];
    let a = bin(&args);
    let b = bin(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let rules = v["rules"].as_array().unwrap();
    assert_eq!(rules.len(), 2);
    assert_eq!(rules[0]["rule"], "galois-");
    assert!(rules[0]["max_residual"].as_f64().unwrap() <= 1e-10);
    assert_ne!(
        bin(&["falsify", "--samples", "64", "--seed", "4"]).stdout,
        bin(&["falsify", "--samples", "64", "--seed", "3"]).stdout
    );
}

#[test]
fn verify_report_shape() {
    let o = bin(&["verify", "-t", "1,2,4", "--samples", "1000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let props = v["properties"].as_array().unwrap();
    assert!(props.len() >= 15);
    for p in props {
        assert_eq!(p["pass"], true, "{p}");
        assert!(p["samples"].as_u64().unwrap() > 900);
    }
}
