use std::path::Path;
use std::process::{Command, Output};

use hybrid_chaos::{generate, load_preset, Preset};
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hybrid-chaos"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Strict CSV read: header plus rows of equal width, every field non-empty.
fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rdr = csv::ReaderBuilder::new().flexible(false).from_path(path).unwrap();
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows: Vec<Vec<String>> =
        rdr.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    assert!(rows.iter().flatten().all(|f| !f.is_empty()), "empty field in {}", path.display());
    (header, rows)
}

fn reals(row: &[String]) -> Vec<f64> {
    row.iter().map(|f| f.parse().unwrap()).collect()
}

fn write_config(dir: &Path, name: &str, g_x: &str, f_x: &str) -> String {
    let part = |g: &str, f: &str| {
        format!(
            r#"{{"alpha": [1, 1], "beta": [0, 0], "base": ["logistic", "logistic"],
                "f": ["{f}", "p"], "g": ["{g}", "0"], "h": ["0", "0"]}}"#
        )
    };
    let json = format!(
        r#"{{"r": 0.9, "burn_in": 10, "coupling": "current",
            "parts": {{"x": {}, "y": {p}, "z": {p}, "w": {p}}}}}"#,
        part(g_x, f_x),
        p = part("0", "p")
    );
    std::fs::write(dir.join(name), json).unwrap();
    name.to_string()
}

#[test]
fn generate_matches_library() {
    let tmp = TempDir::new().unwrap();
    let out = run(tmp.path(), &["generate", "--preset", "case_i", "--n", "25", "--out", "t.csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let (header, rows) = read_csv(&tmp.path().join("t.csv"));
    assert_eq!(header, ["i", "x", "y", "z", "w"]);
    assert_eq!(rows.len(), 25);
    let lib = generate(&load_preset(Preset::CaseI), 25).unwrap();
    for (i, (row, s)) in rows.iter().zip(&lib.states).enumerate() {
        assert_eq!(row[0], i.to_string());
        let v = reals(&row[1..]);
        assert_eq!(v, s.to_array(), "row {i} must round-trip exactly");
        assert!(v.iter().all(|c| (0.0..1.0).contains(c)));
    }
    assert!(tmp.path().join("t.manifest.json").exists());
}

#[test]
fn lyapunov_rows() {
    let tmp = TempDir::new().unwrap();
    let out = run(
        tmp.path(),
        &["lyapunov", "--preset", "case_i", "--r", "0.3,0.6", "--n", "2000", "--out", "l.csv"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = read_csv(&tmp.path().join("l.csv"));
    assert_eq!(header, ["r", "lambda1", "lambda2", "lambda3", "lambda4", "class"]);
    assert_eq!(rows.len(), 2);
    for row in &rows {
        let l = reals(&row[1..5]);
        assert!(l.windows(2).all(|w| w[0] >= w[1]), "sorted descending: {l:?}");
        assert_eq!(row[5], "chaotic");
    }
    assert_eq!(reals(&rows[0][..1]), [0.3]);
}

#[test]
fn bifurcation_and_sidecar() {
    let tmp = TempDir::new().unwrap();
    let out = run(
        tmp.path(),
        &[
            "bifurcation",
            "--preset",
            "case_ii",
            "--r-range",
            "0:1.2:5",
            "--keep",
            "3",
            "--coord",
            "z",
            "--out",
            "b.csv",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = read_csv(&tmp.path().join("b.csv"));
    assert_eq!(header, ["r", "value"]);
    assert_eq!(rows.len(), 15);
    let rs: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(rs.iter().all(|&r| r > 0.0 && r <= 1.2));
    assert_eq!(*rs.last().unwrap(), 1.2);
    let (skip_header, _) = read_csv(&tmp.path().join("b.skipped.csv"));
    assert_eq!(skip_header, ["r", "iteration", "coord", "branch", "value"]);
}

#[test]
fn histogram_cobweb_scatter() {
    let tmp = TempDir::new().unwrap();
    let p = tmp.path();
    let out = run(p, &["histogram", "--preset", "case_i", "--n", "5000", "--bins", "20", "--out", "h.csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("chi"), "{}", stderr(&out));
    let (header, rows) = read_csv(&p.join("h.csv"));
    assert_eq!(header, ["bin_lo", "bin_hi", "count"]);
    assert_eq!(rows.len(), 20);
    assert_eq!(rows.iter().map(|r| r[2].parse::<u64>().unwrap()).sum::<u64>(), 5000);

    let out = run(p, &["cobweb", "--preset", "case_i", "--n", "4", "--coord", "w", "--out", "c.csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = read_csv(&p.join("c.csv"));
    assert_eq!(header, ["u", "v"]);
    assert_eq!(rows.len(), 9);

    let out =
        run(p, &["scatter", "--preset", "case_ii", "--n", "100", "--a", "z", "--b", "w", "--out", "s.csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = read_csv(&p.join("s.csv"));
    assert_eq!(header, ["z", "w"]);
    assert_eq!(rows.len(), 100);
}

#[test]
fn replay_is_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let p = tmp.path();
    let out = run(
        p,
        &["bifurcation", "--preset", "case_i", "--r-range", "0.1:1:4", "--keep", "20", "--out", "a.csv"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(p, &["replay", "a.manifest.json", "--out", "again.csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(std::fs::read(p.join("a.csv")).unwrap(), std::fs::read(p.join("again.csv")).unwrap());
}

#[test]
fn config_file_runs() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "ok.json", "0.1*sin(w)", "p");
    let out = run(tmp.path(), &["generate", "--config", &cfg, "--n", "5", "--out", "g.csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(read_csv(&tmp.path().join("g.csv")).1.len(), 5);
}

#[test]
fn usage_errors_exit_2() {
    let tmp = TempDir::new().unwrap();
    let p = tmp.path();
    let cases: &[&[&str]] = &[
        &["generate"],
        &["generate", "--preset", "case_i", "--r", "1.5"],
        &["generate", "--preset", "case_i", "--r", "-0.1"],
        &["generate", "--preset", "case_i", "--seed-state", "0.1,0.2"],
        &["lyapunov", "--preset", "case_i", "--r", ""],
        &["lyapunov", "--preset", "case_i", "--n", "10"],
        &["bifurcation", "--preset", "case_i", "--r-range", "1:0.5:10"],
        &["scatter", "--preset", "case_i", "--a", "x", "--b", "x"],
        &["generate", "--config", "missing.json"],
        &["replay", "missing.manifest.json"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = run(p, args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn bad_configs_exit_2_naming_the_slot() {
    let tmp = TempDir::new().unwrap();
    let p = tmp.path();
    let syntax = write_config(p, "syntax.json", "sin(2*", "p");
    let out = run(p, &["generate", "--config", &syntax]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("parts.x.g[0]"), "{}", stderr(&out));

    let var = write_config(p, "var.json", "0", "p+x");
    let out = run(p, &["generate", "--config", &var]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("parts.x.f[0]"), "{}", stderr(&out));

    let next = write_config(p, "next.json", "yn", "p");
    assert_eq!(code(&run(p, &["generate", "--config", &next])), 2);

    std::fs::write(p.join("junk.json"), "{ not json").unwrap();
    assert_eq!(code(&run(p, &["generate", "--config", "junk.json"])), 2);
}

#[test]
fn non_finite_exits_3() {
    let tmp = TempDir::new().unwrap();
    let p = tmp.path();
    let cfg = write_config(p, "nan.json", "log(x-x)", "p");
    let out = run(p, &["generate", "--config", &cfg, "--out", "g.csv"]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    assert!(stderr(&out).contains("part x"), "{}", stderr(&out));
    let out = run(p, &["bifurcation", "--config", &cfg, "--r-range", "0:1:3", "--out", "b.csv"]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}

#[test]
fn unwritable_output_exits_1() {
    let tmp = TempDir::new().unwrap();
    std::fs::write(tmp.path().join("file"), "").unwrap();
    let out = run(tmp.path(), &["generate", "--preset", "case_i", "--n", "5", "--out", "file/t.csv"]);
    assert_eq!(code(&out), 1, "{}", stderr(&out));
}
