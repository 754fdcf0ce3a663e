//! Golden files, the exit-code matrix and JSON round-trips for the
//! `zetakit` binary. Set ZETAKIT_BLESS=1 to rewrite the golden files.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use zetakit::numeric::c;
use zetakit::Execution;
use zetakit_cli::record::OutputRecord;
use zetakit_cli::{run, EXIT_MATH, EXIT_NONCONVERGENCE, EXIT_OK, EXIT_USAGE};

const GOLDEN_TOL: f64 = 1e-9;

fn zetakit(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zetakit"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("ZETAKIT_THREADS", t),
        None => cmd.env_remove("ZETAKIT_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = zetakit(args, None);
    assert_eq!(
        out.status.code(),
        Some(EXIT_OK),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= GOLDEN_TOL * b.abs().max(1.0)
}

fn csv_fields_match(got: &str, want: &str) -> bool {
    match (got.parse::<f64>(), want.parse::<f64>()) {
        (Ok(a), Ok(b)) => close(a, b),
        _ => got == want,
    }
}

fn json_match(got: &Value, want: &Value, path: &str) -> Result<(), String> {
    match (got, want) {
        (Value::Number(a), Value::Number(b)) => {
            let (a, b) = (a.as_f64().unwrap(), b.as_f64().unwrap());
            close(a, b).then_some(()).ok_or(format!("{path}: {a} vs {b}"))
        }
        (Value::Object(a), Value::Object(b)) => {
            let ka: Vec<_> = a.keys().collect();
            let kb: Vec<_> = b.keys().collect();
            if ka != kb {
                return Err(format!("{path}: keys {ka:?} vs {kb:?}"));
            }
            a.iter().try_for_each(|(k, v)| json_match(v, &b[k], &format!("{path}.{k}")))
        }
        (Value::Array(a), Value::Array(b)) => {
            if a.len() != b.len() {
                return Err(format!("{path}: length {} vs {}", a.len(), b.len()));
            }
            a.iter()
                .zip(b)
                .enumerate()
                .try_for_each(|(i, (x, y))| json_match(x, y, &format!("{path}[{i}]")))
        }
        _ => (got == want).then_some(()).ok_or(format!("{path}: {got} vs {want}")),
    }
}

fn check_golden(name: &str, args: &[&str]) {
    let got = stdout_of(args);
    let path = golden_path(name);
    if std::env::var_os("ZETAKIT_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    if name.ends_with(".json") {
        let g: Value = serde_json::from_str(&got).unwrap();
        let w: Value = serde_json::from_str(&want).unwrap();
        if let Err(m) = json_match(&g, &w, "$") {
            panic!("{name}: {m}");
        }
    } else {
        let gl: Vec<&str> = got.lines().collect();
        let wl: Vec<&str> = want.lines().collect();
        assert_eq!(gl.len(), wl.len(), "{name}: line count");
        for (i, (g, w)) in gl.iter().zip(&wl).enumerate() {
            let gf: Vec<&str> = g.split(',').collect();
            let wf: Vec<&str> = w.split(',').collect();
            assert_eq!(gf.len(), wf.len(), "{name} line {}", i + 1);
            for (a, b) in gf.iter().zip(&wf) {
                assert!(csv_fields_match(a, b), "{name} line {}: {a} vs {b}", i + 1);
            }
        }
    }
}

macro_rules! golden {
    ($test:ident, $stem:literal, [$($arg:literal),*]) => {
        #[test]
        fn $test() {
            let args = [$($arg),*];
            check_golden(concat!($stem, ".csv"), &args);
            let mut json = args.to_vec();
            json.extend(["--format", "json"]);
            check_golden(concat!($stem, ".json"), &json);
        }
    };
}

golden!(golden_zeta_two, "zeta_two", ["zeta", "--s", "2+0i", "--series", "this_paper"]);
golden!(golden_zeta_trace_knopp, "zeta_trace_knopp", ["zeta", "--s", "3+0i", "--series", "knopp", "--terms", "12", "--trace"]);
golden!(golden_zeta_first_zero_hasse, "zeta_zero_hasse", ["zeta", "--s", "0.5+14.134725i", "--series", "hasse", "--tol", "1e-6"]);
golden!(golden_polylog_minus_one, "polylog_minus_one", ["polylog", "--s", "2+0i", "--x", "-1+0i"]);
golden!(golden_polylog_half, "polylog_half", ["polylog", "--s", "1+0i", "--x", "0.5+0i"]);
golden!(golden_zee_grid, "zee_grid", ["zee", "--s", "0+0i", "--x-grid", "0:0.9:4"]);
golden!(golden_zee_integral, "zee_integral", ["zee", "--s", "2+0i", "--x", "1.0", "--method", "integral"]);
golden!(golden_ratio_scan, "ratio_scan", ["ratio-scan", "--s0", "0.5+14.134725i", "--k-range", "2:4"]);
golden!(golden_compare, "compare", ["compare", "--s", "2+0i", "--terms", "8"]);

fn first_row(args: &[&str]) -> serde_json::Map<String, Value> {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let rec: OutputRecord = serde_json::from_str(&stdout_of(&a)).unwrap();
    rec.rows[0].clone()
}

fn complex_of(v: &Value) -> (f64, f64) {
    (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

#[test]
fn documented_examples() {
    let pi2 = std::f64::consts::PI.powi(2);
    let (re, im) = complex_of(&first_row(&["zeta", "--s", "2+0i", "--series", "this_paper"])["value"]);
    assert!((re - pi2 / 6.0).abs() < 1e-10 && im == 0.0);

    let (re, im) = complex_of(&first_row(&["zeta", "--s", "0.5+14.134725i", "--series", "hasse", "--tol", "1e-6"])["value"]);
    assert!(re.hypot(im) < 1e-4);

    let (re, _) = complex_of(&first_row(&["polylog", "--s", "2+0i", "--x", "-1+0i"])["value"]);
    assert!((re + pi2 / 12.0).abs() < 1e-12);
    let (re, _) = complex_of(&first_row(&["polylog", "--s", "1+0i", "--x", "0.5+0i"])["value"]);
    assert!((re - 2f64.ln()).abs() < 1e-15);

    let (re, _) = complex_of(&first_row(&["zee", "--s", "0+0i", "--x", "0.5"])["z"]);
    assert!((re - 0.125).abs() < 1e-15);
    let (re, im) = complex_of(&first_row(&["zee", "--s", "-2+0i", "--x", "1.0"])["z"]);
    assert!(re.abs() < 1e-15 && im.abs() < 1e-15);
    let (re, _) = complex_of(&first_row(&["zee", "--s", "2+0i", "--x", "1.0", "--method", "integral"])["z"]);
    assert!((re - pi2 / 6.0).abs() < 1e-10);
}

#[test]
fn ratio_scan_example_has_seven_unit_ratios() {
    let out = stdout_of(&["ratio-scan", "--s0", "0.5+14.134725i", "--k-range", "2:8", "--format", "json"]);
    let rec: OutputRecord = serde_json::from_str(&out).unwrap();
    assert_eq!(rec.rows.len(), 7);
    for row in &rec.rows {
        assert!((row["ratio"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn compare_shows_knopp_geometric_and_others_algebraic() {
    let out = stdout_of(&["compare", "--s", "2+0i", "--terms", "4096", "--format", "json"]);
    let recs: Vec<OutputRecord> = serde_json::from_str(&out).unwrap();
    assert_eq!(recs.len(), 5);
    let term_abs = |rec: &OutputRecord, i: usize| {
        let (re, im) = complex_of(&rec.rows[i]["term"]);
        re.hypot(im)
    };
    for rec in &recs {
        let series = rec.inputs["series"].as_str().unwrap();
        if series == "knopp" {
            let r = term_abs(rec, 41) / term_abs(rec, 40);
            assert!((r - 0.5).abs() < 0.05, "knopp ratio {r}");
        } else {
            // |u_2n| / |u_n| stays near 1/4 (algebraic, ~ 1/n^2) rather than collapsing
            let r = term_abs(rec, 4095) / term_abs(rec, 2047);
            assert!(r > 0.2 && r < 0.35, "{series}: {r}");
        }
    }
}

#[test]
fn compare_this_paper_ratio_column_at_tail() {
    let out = stdout_of(&["compare", "--s", "0.5+3i", "--terms", "1024", "--term-mode", "integral", "--format", "json"]);
    let recs: Vec<OutputRecord> = serde_json::from_str(&out).unwrap();
    let this = &recs[0];
    assert_eq!(this.inputs["series"], "this_paper");
    assert_eq!(this.inputs["term_mode"], "integral");
    for row in &this.rows[this.rows.len() - 20..] {
        let r = row["ratio"].as_f64().unwrap();
        assert!((0.5..=2.0).contains(&r), "ratio {r}");
    }
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["--help"], EXIT_OK),
        (&["zeta", "--s", "3"], EXIT_OK),
        (&[], EXIT_USAGE),
        (&["frobnicate"], EXIT_USAGE),
        (&["zeta"], EXIT_USAGE),
        (&["zeta", "--s", "2+"], EXIT_USAGE),
        (&["zeta", "--s", "2", "--series", "euler"], EXIT_USAGE),
        (&["zeta", "--s", "2", "--terms", "0"], EXIT_USAGE),
        (&["zeta", "--s", "2", "--tol", "-1"], EXIT_USAGE),
        (&["zeta", "--s", "2", "--format", "xml"], EXIT_USAGE),
        (&["zee", "--s", "1", "--x", "0.5", "--x-grid", "0:1:3"], EXIT_USAGE),
        (&["zee", "--s", "1", "--x-grid", "0:1"], EXIT_USAGE),
        (&["ratio-scan", "--s0", "0.5+14.134725i", "--k-range", "2:20"], EXIT_USAGE),
        (&["ratio-scan", "--s0", "0.5+14.134725i", "--k-range", "5:3"], EXIT_USAGE),
        (&["zeta", "--s", "1+0i"], EXIT_MATH),
        (&["compare", "--s", "1+0i"], EXIT_MATH),
        (&["polylog", "--s", "0.7+0i", "--x", "2+0i"], EXIT_MATH),
        (&["polylog", "--s", "1", "--x", "1"], EXIT_MATH),
        (&["polylog", "--s", "-100000", "--x", "5i"], EXIT_MATH),
        (&["ratio-scan", "--s0", "1.5+3i"], EXIT_MATH),
        (&["zee", "--s", "3", "--x", "2"], EXIT_MATH),
        (&["zee", "--s", "0.5", "--x", "1.5", "--method", "series"], EXIT_MATH),
        (&["zeta", "--s", "0.5+30i"], EXIT_NONCONVERGENCE),
        (&["polylog", "--s", "1e10", "--x", "0.99"], EXIT_NONCONVERGENCE),
    ];
    for (args, code) in cases {
        let out = zetakit(args, None);
        assert_eq!(out.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        if *code != EXIT_OK {
            assert!(out.stdout.is_empty(), "{args:?} wrote to stdout on failure");
            assert!(!out.stderr.is_empty(), "{args:?} gave no diagnostic");
        }
    }
}

#[test]
fn threads_env_is_validated_and_deterministic() {
    let args = ["zee", "--s", "0.5+2i", "--x-grid", "0.1:0.95:6"];
    let one = zetakit(&args, Some("1"));
    let four = zetakit(&args, Some("4"));
    let default = zetakit(&args, None);
    assert_eq!(one.status.code(), Some(EXIT_OK));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, default.stdout);
    for bad in ["0", "many", "-2"] {
        assert_eq!(zetakit(&args, Some(bad)).status.code(), Some(EXIT_USAGE), "{bad}");
    }
}

#[test]
fn config_presets_apply_and_flags_win() {
    let dir = std::env::temp_dir().join(format!("zetakit-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("preset.cfg");
    std::fs::write(&cfg, "# presets\nseries = knopp\nterms = 10\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let rec: OutputRecord = serde_json::from_str(&stdout_of(&["--config", cfg, "zeta", "--s", "3"])).unwrap();
    assert_eq!(rec.inputs["series"], "knopp");
    assert_eq!(rec.inputs["terms"], "10");

    let rec: OutputRecord =
        serde_json::from_str(&stdout_of(&["zeta", "--s", "3", "--series", "ser", "--config", cfg])).unwrap();
    assert_eq!(rec.inputs["series"], "ser");

    let csv = stdout_of(&["--config", cfg, "zeta", "--s", "3", "--format", "csv"]);
    assert!(csv.starts_with("s_re,s_im,series"));

    let bad = dir.join("bad.cfg");
    std::fs::write(&bad, "terms = lots\n").unwrap();
    let out = zetakit(&["--config", bad.to_str().unwrap(), "zeta", "--s", "3"], None);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let out = zetakit(&["--config", dir.join("missing.cfg").to_str().unwrap(), "zeta", "--s", "3"], None);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}

#[test]
fn json_round_trip_is_exact() {
    let text = stdout_of(&["zeta", "--s", "0.5+3i", "--terms", "40", "--trace", "--format", "json"]);
    let rec: OutputRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(rec.schema_version, "1");
    assert_eq!(rec.command, "zeta");
    let again = serde_json::to_string_pretty(&rec).unwrap() + "\n";
    assert_eq!(again, text);

    // partial sums re-summed from the term column, bit for bit
    let mut acc = c(0.0, 0.0);
    for row in &rec.rows {
        let (re, im) = complex_of(&row["term"]);
        acc += c(re, im);
        let (pr, pi) = complex_of(&row["partial"]);
        assert_eq!((acc.re.to_bits(), acc.im.to_bits()), (pr.to_bits(), pi.to_bits()), "n = {}", row["n"]);
    }
    let summary = rec.summary.as_ref().unwrap();
    assert_eq!(summary["terms_used"].as_u64().unwrap() as usize, rec.rows.len());
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let args = ["compare", "--s", "1.5+2i", "--terms", "6"];
    let csv = stdout_of(&args);
    let mut j = args.to_vec();
    j.extend(["--format", "json"]);
    let recs: Vec<OutputRecord> = serde_json::from_str(&stdout_of(&j)).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(
        header,
        ["series", "n", "term_re", "term_im", "partial_re", "partial_im", "predicted_term_magnitude", "ratio"]
    );
    let json_rows = recs.iter().flat_map(|r| r.rows.iter());
    let mut count = 0;
    for (line, row) in lines.zip(json_rows) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[0], row["series"]);
        assert_eq!(f[1].parse::<u64>().unwrap(), row["n"].as_u64().unwrap());
        let (tr, ti) = complex_of(&row["term"]);
        let (pr, pi) = complex_of(&row["partial"]);
        let parsed: Vec<f64> = f[2..6].iter().map(|t| t.parse().unwrap()).collect();
        assert_eq!(parsed.iter().map(|x| x.to_bits()).collect::<Vec<_>>(), [tr, ti, pr, pi].map(f64::to_bits));
        assert_eq!(f[6].parse::<f64>().unwrap().to_bits(), row["predicted_term_magnitude"].as_f64().unwrap().to_bits());
        match row["ratio"].as_f64() {
            Some(r) => assert_eq!(f[7].parse::<f64>().unwrap().to_bits(), r.to_bits()),
            None => assert_eq!(f[7], ""),
        }
        count += 1;
    }
    assert_eq!(count, 30);
}

#[test]
fn trace_csv_has_summary_then_rows() {
    let csv = stdout_of(&["zeta", "--s", "2", "--terms", "5", "--trace"]);
    let blocks: Vec<&str> = csv.split("\n\n").collect();
    assert_eq!(blocks.len(), 2);
    assert!(blocks[0].starts_with("s_re,s_im,series,value_re"));
    assert!(blocks[1].starts_with("n,term_re,term_im,partial_re"));
    assert_eq!(blocks[1].lines().count(), 6);
}

#[test]
fn in_process_run_matches_binary() {
    let args = ["zetakit", "polylog", "--s", "0.3+1i", "--x", "-3+0i"];
    let o = run(args, Execution::Sequential);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.as_bytes(), zetakit(&args[1..], None).stdout.as_slice());
}

mod no_panics {
    use super::*;
    use proptest::prelude::*;

    fn literal() -> impl Strategy<Value = String> {
        (-60.0f64..60.0, -60.0f64..60.0, 0usize..4).prop_map(|(re, im, kind)| match kind {
            0 => format!("{re}{im:+}i"),
            1 => format!("{}", re.round()),
            2 => format!("{re:e}{im:+e}i"),
            _ => format!("{}{:+}i", re * 1e3, im * 1e3),
        })
    }

    fn small_literal() -> impl Strategy<Value = String> {
        (-8.0f64..8.0, -8.0f64..8.0).prop_map(|(re, im)| format!("{re}{im:+}i"))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn polylog_never_panics(s in literal(), x in literal()) {
            let o = run(["zetakit", "polylog", "--s", &s, "--x", &x], Execution::Sequential);
            prop_assert!([EXIT_OK, EXIT_MATH, EXIT_NONCONVERGENCE].contains(&o.code), "{s} {x}: {}", o.stderr);
        }

        #[test]
        fn zee_never_panics(s in small_literal(), x in small_literal()) {
            let o = run(["zetakit", "zee", "--s", &s, "--x", &x], Execution::Sequential);
            prop_assert!([EXIT_OK, EXIT_MATH, EXIT_NONCONVERGENCE].contains(&o.code), "{s} {x}: {}", o.stderr);
        }

        #[test]
        fn zeta_never_panics(s in literal()) {
            let o = run(["zetakit", "zeta", "--s", &s, "--terms", "16"], Execution::Sequential);
            prop_assert!([EXIT_OK, EXIT_MATH, EXIT_NONCONVERGENCE].contains(&o.code), "{s}: {}", o.stderr);
        }

        #[test]
        fn garbage_literals_are_usage_errors(t in "[a-hj-z#@!]{1,6}") {
            let o = run(["zetakit", "zeta", "--s", &t], Execution::Sequential);
            prop_assert_eq!(o.code, EXIT_USAGE);
        }
    }
}
