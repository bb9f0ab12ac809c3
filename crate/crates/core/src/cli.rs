//! Command-line front end. [`run`] turns parsed arguments into the text to
//! print and an exit status; `main` only does the I/O.
//!
//! Exit status: 0 success, 1 usage or validation error, 2 a verification
//! property failed.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::complex_maps::jbar_map;
use crate::error::{Error, Result};
use crate::extension::{ext_apply, ext_apply_real, ext_inverse, ext_mul, Context, ExtendedElement};
use crate::geometry::{
    circular_section_residual, falsify_search, galois_axes, maccullagh_residual, AxisRule,
};
use crate::real_maps::j_map;
use crate::triple::{validate_triple, ComplexTriple, InertiaTriple};
use crate::verify::verify_suite;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_VERIFY_FAILED: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "galois-inertia",
    version,
    about = "Inertia maps along the Galois axis of a rigid body"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply j(x) (or the complex map with --complex) to a triple.
    Map(MapArgs),
    /// Emit the eigenvalue flow x -> j(x)(A, B, C) as CSV.
    Orbit(OrbitArgs),
    /// Print both Galois axes and their circular-section residuals.
    Axes(AxesArgs),
    /// Run every property suite on seeded samples; JSON report.
    Verify(VerifyArgs),
    /// Multiply, apply or invert extended elements E(a, b).
    Extended(ExtendedArgs),
    /// Seeded additivity search over axis rules; JSON report.
    Falsify(FalsifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("param").required(true).args(["x", "distance"]))]
pub struct MapArgs {
    /// Principal moments A,B,C with 0 < A < B < C.
    #[arg(short, long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub triple: [f64; 3],
    /// Steiner parameter x = m d^2 (complex, e.g. 1+2i, with --complex).
    #[arg(short, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Distance d along the axis; x := mass * d^2.
    #[arg(long, allow_hyphen_values = true)]
    pub distance: Option<f64>,
    /// Mass folded into x with --distance.
    #[arg(long, default_value_t = 1.0, requires = "distance")]
    pub mass: f64,
    /// Use the two-valued complex map.
    #[arg(long)]
    pub complex: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(short, long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub triple: [f64; 3],
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x1: f64,
    /// Number of intervals; the curve has steps + 1 rows.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AxesArgs {
    #[arg(short, long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub triple: [f64; 3],
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Fix the triple; by default triples are sampled too.
    #[arg(short, long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub triple: Option<[f64; 3]>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("op").required(true).args(["mul", "apply", "inverse"]))]
pub struct ExtendedArgs {
    /// Product of two elements a1,b1 a2,b2 (the right one acts first).
    #[arg(long, num_args = 2, value_names = ["A1,B1", "A2,B2"], allow_hyphen_values = true)]
    pub mul: Option<Vec<String>>,
    /// Apply the element a,b to the triple given with -t.
    #[arg(
        long,
        value_name = "A,B",
        requires = "triple",
        allow_hyphen_values = true
    )]
    pub apply: Option<String>,
    /// Inverse of the element a,b.
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    pub inverse: Option<String>,
    #[arg(short, long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub triple: Option<[f64; 3]>,
    /// Work in the complex group instead of the real semigroup (a > 0, b >= 0).
    #[arg(long)]
    pub group: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FalsifyArgs {
    /// Axis rules: galois+, galois-, principal1..3, fixed:n1,n2,n3.
    #[arg(long, num_args = 1.., value_parser = parse_rule, default_values = DEFAULT_RULES)]
    pub rules: Vec<AxisRule>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

const DEFAULT_RULES: [&str; 6] = [
    "galois+",
    "galois-",
    "principal1",
    "principal2",
    "principal3",
    "fixed:1,1,1",
];

fn parse_triple(s: &str) -> std::result::Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected A,B,C, got `{s}`"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
    }
    Ok(out)
}

fn parse_rule(s: &str) -> std::result::Result<AxisRule, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_real(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("`{s}` is not a real number")))
}

fn parse_complex(s: &str) -> Result<Complex64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("`{s}` is not a complex number")))
}

/// Shortest decimal that reads back to the same double; exponent notation
/// outside `[1e-5, 1e16)`.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// `re+imi`, readable by `Complex64::from_str`.
pub fn fmt_complex(z: Complex64) -> String {
    let im = fmt_f64(z.im);
    if im.starts_with('-') {
        format!("{}{}i", fmt_f64(z.re), im)
    } else {
        format!("{}+{}i", fmt_f64(z.re), im)
    }
}

fn csv_row<I: IntoIterator<Item = String>>(fields: I) -> String {
    let mut line = fields.into_iter().collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn triple(t: [f64; 3]) -> Result<InertiaTriple> {
    validate_triple(t[0], t[1], t[2])
}

/// What to print and how to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub output: Option<PathBuf>,
    pub status: u8,
}

impl Outcome {
    fn ok(text: String, output: &OutputArgs) -> Self {
        Outcome {
            text,
            output: output.output.clone(),
            status: EXIT_OK,
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Map(a) => cmd_map(&a),
        Command::Orbit(a) => cmd_orbit(&a),
        Command::Axes(a) => cmd_axes(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Extended(a) => cmd_extended(&a),
        Command::Falsify(a) => cmd_falsify(&a),
    }
}

pub fn cmd_map(args: &MapArgs) -> Result<Outcome> {
    let t = triple(args.triple)?;
    if args.complex {
        let x = match (&args.x, args.distance) {
            (Some(x), _) => parse_complex(x)?,
            (None, Some(d)) => Complex64::new(args.mass * d * d, 0.0),
            (None, None) => unreachable!("clap requires -x or --distance"),
        };
        let r = jbar_map(&t.to_complex(), x)?;
        let l = [r.lambda1, r.lambda2, r.lambda3];
        let text = match args.format {
            Format::Csv => csv_row(l.map(fmt_complex)),
            Format::Json => to_json(&json!({
                "triple": t.to_array(),
                "x": [x.re, x.im],
                "lambda1": [l[0].re, l[0].im],
                "lambda2": [l[1].re, l[1].im],
                "lambda3": [l[2].re, l[2].im],
            })),
        };
        return Ok(Outcome::ok(text, &args.out));
    }
    let x = match (&args.x, args.distance) {
        (Some(x), _) => parse_real(x)?,
        (None, Some(d)) => {
            if !(args.mass > 0.0 && args.mass.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "mass must be positive, got {}",
                    args.mass
                )));
            }
            args.mass * d * d
        }
        (None, None) => unreachable!("clap requires -x or --distance"),
    };
    let l = j_map(&t, x)?.to_array();
    let text = match args.format {
        Format::Csv => csv_row(l.map(fmt_f64)),
        Format::Json => to_json(&json!({
            "triple": t.to_array(),
            "x": x,
            "lambda1": l[0],
            "lambda2": l[1],
            "lambda3": l[2],
        })),
    };
    Ok(Outcome::ok(text, &args.out))
}

pub fn cmd_orbit(args: &OrbitArgs) -> Result<Outcome> {
    let t = triple(args.triple)?;
    let (x0, x1) = (args.x0, args.x1);
    if !(x0.is_finite() && x1.is_finite()) {
        return Err(Error::InvalidArgument("range must be finite".into()));
    }
    if x0 < 0.0 {
        return Err(Error::NegativeParameter(x0));
    }
    if x1 <= x0 {
        return Err(Error::InvalidArgument(format!(
            "range needs x0 < x1, got [{x0}, {x1}]"
        )));
    }
    if args.steps < 2 {
        return Err(Error::InvalidArgument("steps must be at least 2".into()));
    }
    let n = args.steps;
    let mut text = String::from("x,lambda1,lambda2,lambda3\n");
    for k in 0..=n {
        let x = if k == n {
            x1
        } else {
            x0 + (x1 - x0) * (k as f64 / n as f64)
        };
        let l = j_map(&t, x)?.to_array();
        text.push_str(&csv_row([x, l[0], l[1], l[2]].map(fmt_f64)));
    }
    Ok(Outcome::ok(text, &args.out))
}

pub fn cmd_axes(args: &AxesArgs) -> Result<Outcome> {
    let t = triple(args.triple)?;
    let (plus, minus) = galois_axes(&t);
    let rows = [("+", plus), ("-", minus)].map(|(sheet, n)| {
        (
            sheet,
            n.components(),
            circular_section_residual(&t, &n),
            maccullagh_residual(&t, &n),
        )
    });
    let text = match args.format {
        Format::Csv => {
            let mut s = String::from("sheet,n1,n2,n3,circular_residual,maccullagh_residual\n");
            for (sheet, n, circ, mac) in rows {
                let mut fields = vec![sheet.to_string()];
                fields.extend(n.map(fmt_f64));
                fields.push(fmt_f64(circ));
                fields.push(fmt_f64(mac));
                s.push_str(&csv_row(fields));
            }
            s
        }
        Format::Json => to_json(
            &rows
                .iter()
                .map(|(sheet, n, circ, mac)| {
                    json!({
                        "sheet": sheet,
                        "axis": n,
                        "circular_residual": circ,
                        "maccullagh_residual": mac,
                    })
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome::ok(text, &args.out))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let t = args.triple.map(triple).transpose()?;
    let report = verify_suite(t.as_ref(), args.samples, args.seed)?;
    let mut out = Outcome::ok(to_json(&report), &args.out);
    if !report.pass {
        out.status = EXIT_VERIFY_FAILED;
    }
    Ok(out)
}

fn parse_element(s: &str, group: bool) -> Result<ExtendedElement> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::InvalidArgument(format!("expected a,b, got `{s}`")))?;
    if group {
        ExtendedElement::group(parse_complex(a)?, parse_complex(b)?)
    } else {
        ExtendedElement::semigroup(parse_real(a)?, parse_real(b)?)
    }
}

fn fmt_element(e: &ExtendedElement) -> String {
    match e.context() {
        Context::Semigroup => csv_row([e.scale().re, e.shift().re].map(fmt_f64)),
        Context::Group => csv_row([e.scale(), e.shift()].map(fmt_complex)),
    }
}

pub fn cmd_extended(args: &ExtendedArgs) -> Result<Outcome> {
    let text = if let Some(pair) = &args.mul {
        let e1 = parse_element(&pair[0], args.group)?;
        let e2 = parse_element(&pair[1], args.group)?;
        fmt_element(&ext_mul(&e1, &e2)?)
    } else if let Some(s) = &args.inverse {
        fmt_element(&ext_inverse(&parse_element(s, args.group)?)?)
    } else if let Some(s) = &args.apply {
        let e = parse_element(s, args.group)?;
        let t = triple(args.triple.expect("clap requires -t with --apply"))?;
        if args.group {
            let img: ComplexTriple = ext_apply(&e, &t.to_complex())?;
            csv_row(img.to_array().map(fmt_complex))
        } else {
            csv_row(ext_apply_real(&e, &t)?.to_array().map(fmt_f64))
        }
    } else {
        unreachable!("clap requires one of --mul, --apply, --inverse")
    };
    Ok(Outcome::ok(text, &args.out))
}

pub fn cmd_falsify(args: &FalsifyArgs) -> Result<Outcome> {
    let report = falsify_search(&args.rules, args.samples, args.seed)?;
    Ok(Outcome::ok(to_json(&report), &args.out))
}

/// One line for standard error: `CODE: message`.
pub fn error_line(e: &Error) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}: {}", e.code(), e);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        let mut full = vec!["galois-inertia"];
        full.extend_from_slice(args);
        run(Cli::try_parse_from(full).expect("arguments parse"))
    }

    #[test]
    fn number_formatting_round_trips() {
        for v in [
            1.0,
            4.0,
            0.1,
            1.4384471871911697,
            1e-7,
            123456.789,
            3e20,
            -2.5e-300,
        ] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(4.0), "4");
        assert_eq!(fmt_f64(1e-7), "1e-7");
        let z = Complex64::new(1.5, -0.25);
        assert_eq!(fmt_complex(z), "1.5-0.25i");
        assert_eq!(fmt_complex(z).parse::<Complex64>().unwrap(), z);
    }

    #[test]
    fn map_examples() {
        let out = run_args(&["map", "-t", "1,2,4", "-x", "0"]).unwrap();
        assert_eq!(out.text, "1,2,4\n");
        let out = run_args(&["map", "-t", "1,2,4", "-x", "2"]).unwrap();
        let v: Vec<f64> = out
            .text
            .trim()
            .split(',')
            .map(|p| p.parse().unwrap())
            .collect();
        let r = 17f64.sqrt();
        assert_eq!(v[1], 4.0);
        assert!((v[0] - (7.0 - r) / 2.0).abs() <= 4.0 * f64::EPSILON);
        assert!((v[2] - (7.0 + r) / 2.0).abs() <= 8.0 * f64::EPSILON);
        let err = run_args(&["map", "-t", "2,2,4", "-x", "1"]).unwrap_err();
        assert_eq!(err.code(), "DEGENERATE");
        let err = run_args(&["map", "-t", "1,2,4", "-x", "-1"]).unwrap_err();
        assert_eq!(err.code(), "NEGATIVE_PARAMETER");
    }

    #[test]
    fn distance_and_mass_fold_into_x() {
        let direct = run_args(&["map", "-t", "1,2,4", "-x", "8"]).unwrap();
        let folded = run_args(&["map", "-t", "1,2,4", "--distance", "2", "--mass", "2"]).unwrap();
        assert_eq!(direct.text, folded.text);
    }

    #[test]
    fn complex_map_row() {
        let out = run_args(&["map", "-t", "1,2,4", "-x", "1i", "--complex"]).unwrap();
        let z: Vec<Complex64> = out
            .text
            .trim()
            .split(',')
            .map(|p| p.parse().unwrap())
            .collect();
        assert_eq!(z[1], Complex64::new(2.0, 1.0));
        assert!((z[0] + z[2] - Complex64::new(5.0, 1.0)).norm() < 1e-14);
        assert!((z[0] * z[2] - Complex64::new(4.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn orbit_rows_match_map() {
        let out = run_args(&[
            "orbit", "-t", "1,2,4", "--x0", "0", "--x1", "2", "--steps", "2",
        ])
        .unwrap();
        let lines: Vec<&str> = out.text.lines().collect();
        assert_eq!(lines[0], "x,lambda1,lambda2,lambda3");
        assert_eq!(lines.len(), 4);
        for (line, x) in lines[1..].iter().zip(["0", "1", "2"]) {
            let map = run_args(&["map", "-t", "1,2,4", "-x", x]).unwrap();
            assert_eq!(format!("{x},{}", map.text.trim()), *line);
        }
        assert!(run_args(&["orbit", "-t", "1,2,4", "--x0", "2", "--x1", "1"]).is_err());
        assert!(run_args(&["orbit", "-t", "1,2,4", "--x0", "-1", "--x1", "1"]).is_err());
        assert!(run_args(&["orbit", "-t", "1,2,4", "--x1", "1", "--steps", "1"]).is_err());
    }

    #[test]
    fn extended_examples() {
        assert_eq!(
            run_args(&["extended", "--mul", "2,3", "5,7"]).unwrap().text,
            "10,17\n"
        );
        assert_eq!(
            run_args(&["extended", "--inverse", "2,0"]).unwrap().text,
            "0.5,0\n"
        );
        assert_eq!(
            run_args(&["extended", "--inverse", "2,3"])
                .unwrap_err()
                .code(),
            "NO_INVERSE_IN_SEMIGROUP"
        );
        assert_eq!(
            run_args(&["extended", "--group", "--inverse", "2,3"])
                .unwrap()
                .text,
            "0.5+0i,-1.5+0i\n"
        );
        let applied = run_args(&["extended", "--apply", "1,2", "-t", "1,2,4"]).unwrap();
        let mapped = run_args(&["map", "-t", "1,2,4", "-x", "2"]).unwrap();
        assert_eq!(applied.text, mapped.text);
    }

    #[test]
    fn axes_csv() {
        let out = run_args(&["axes", "-t", "1,2,4"]).unwrap();
        let lines: Vec<&str> = out.text.lines().collect();
        assert_eq!(lines.len(), 3);
        let plus: Vec<f64> = lines[1]
            .split(',')
            .skip(1)
            .map(|p| p.parse().unwrap())
            .collect();
        assert!((plus[0] - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((plus[2] - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(plus[3] <= 1e-12 && plus[4] <= 1e-12);
    }

    #[test]
    fn verify_status() {
        let out = run_args(&["verify", "-t", "1,2,4", "--samples", "50", "--seed", "7"]).unwrap();
        assert_eq!(out.status, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["pass"], true);
        for p in v["properties"].as_array().unwrap() {
            for key in ["property", "samples", "worst_residual", "pass"] {
                assert!(p.get(key).is_some());
            }
        }
    }

    #[test]
    fn error_line_has_code() {
        let e = Error::Degenerate(2.0, 2.0, 4.0);
        assert!(error_line(&e).starts_with("DEGENERATE: "));
    }
}
