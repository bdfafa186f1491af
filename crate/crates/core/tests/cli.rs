use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn cbpp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbpp"))
        .args(args)
        .current_dir(dir)
        .env_remove("CBPP_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(path: impl AsRef<Path>) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write_json(path: impl AsRef<Path>, v: &Value) {
    std::fs::write(path, serde_json::to_string_pretty(v).unwrap()).unwrap();
}

/// Eight circles of radius L/4 in bins of side 8.
fn corner_fixture(dir: &Path) -> PathBuf {
    let circles: Vec<Value> = (0..8)
        .map(|id| serde_json::json!({ "id": id, "radius": 2.0 }))
        .collect();
    let path = dir.join("corners.json");
    write_json(
        &path,
        &serde_json::json!({ "bin_side": 8.0, "circles": circles }),
    );
    path
}

fn solved(dir: &TempDir) -> PathBuf {
    let inst = corner_fixture(dir.path());
    let out = dir.path().join("sol.json");
    let o = cbpp(
        &[
            "solve",
            "--alg",
            "gacoa",
            "-i",
            inst.to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    out
}

#[test]
fn generate_forty_circles_for_both_laws() {
    let dir = TempDir::new().unwrap();
    for (law, side) in [("linear", "20"), ("sqrt", "6")] {
        let out = dir.path().join(format!("{law}.json"));
        let o = cbpp(
            &[
                "generate",
                "--law",
                law,
                "--n0",
                "8",
                "--mode",
                "fixed",
                "--bin-side",
                side,
                "-o",
            ],
            dir.path(),
        );
        assert_eq!(
            o.status.code(),
            Some(2),
            "missing -o value is a usage error"
        );
        let o = cbpp(
            &[
                "generate",
                "--law",
                law,
                "--n0",
                "8",
                "--mode",
                "fixed",
                "--bin-side",
                side,
                "-o",
                out.to_str().unwrap(),
            ],
            dir.path(),
        );
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let v = read_json(&out);
        assert_eq!(v["circles"].as_array().unwrap().len(), 40);
    }
}

#[test]
fn generate_reads_seed_from_environment() {
    let dir = TempDir::new().unwrap();
    let mut outputs = Vec::new();
    for (name, seed) in [("a", "3"), ("b", "3"), ("c", "4")] {
        let out = dir.path().join(format!("{name}.json"));
        let o = Command::new(env!("CARGO_BIN_EXE_cbpp"))
            .args([
                "generate",
                "--law",
                "sqrt",
                "--n0",
                "12",
                "--mode",
                "random",
                "--bin-side",
                "10",
                "-o",
            ])
            .arg(&out)
            .env("CBPP_SEED", seed)
            .output()
            .unwrap();
        assert!(o.status.success());
        outputs.push(std::fs::read(out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_ne!(outputs[0], outputs[2]);
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["solve", "--bogus"][..],
        &["solve", "-i", "x.json", "--alg", "simplex"],
        &[
            "generate",
            "--law",
            "cubic",
            "--n0",
            "3",
            "--mode",
            "fixed",
            "--bin-side",
            "9",
            "-o",
            "x",
        ],
        &[
            "generate",
            "--n0",
            "3",
            "--mode",
            "fixed",
            "--bin-side",
            "9",
            "-o",
            "x.json",
        ],
        &["frobnicate"],
    ] {
        let o = cbpp(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    let inst = corner_fixture(dir.path());
    let o = cbpp(
        &["solve", "-i", inst.to_str().unwrap(), "--iters", "0"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let o = cbpp(&["solve", "-i", "missing.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));

    let bad = dir.path().join("bad.json");
    write_json(
        &bad,
        &serde_json::json!({ "bin_side": 4.0, "circles": [{ "id": 0, "radius": 3.0 }] }),
    );
    let o = cbpp(
        &["solve", "-i", bad.to_str().unwrap(), "--alg", "gacoa"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid instance"), "{}", stderr(&o));

    let o = cbpp(
        &[
            "generate",
            "--law",
            "linear",
            "--n0",
            "8",
            "--mode",
            "fixed",
            "--bin-side",
            "10",
            "-o",
            "x.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn greedy_fills_two_bins_on_corner_fixture() {
    let dir = TempDir::new().unwrap();
    let sol = read_json(solved(&dir));
    assert_eq!(sol["bins_used"], 2);
    let placements = sol["placements"].as_array().unwrap();
    assert_eq!(placements.len(), 8);
    for p in placements {
        let (x, y) = (p["x"].as_f64().unwrap(), p["y"].as_f64().unwrap());
        assert!([2.0, 6.0].contains(&x) && [2.0, 6.0].contains(&y), "{p}");
    }
}

#[test]
fn validate_accepts_a_solver_output() {
    let dir = TempDir::new().unwrap();
    let sol = solved(&dir);
    let o = cbpp(&["validate", "-i", sol.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "OK");
}

#[test]
fn validate_names_the_overlapping_pair() {
    let dir = TempDir::new().unwrap();
    let sol = solved(&dir);
    let mut v = read_json(&sol);
    let placements = v["placements"].as_array_mut().unwrap();
    let (bin, x, y) = (
        placements[0]["bin"].clone(),
        placements[0]["x"].clone(),
        placements[0]["y"].clone(),
    );
    let other = placements
        .iter()
        .position(|p| p["bin"] == bin && p["id"] != 0)
        .unwrap();
    let other_id = placements[other]["id"].as_u64().unwrap();
    placements[other]["x"] = serde_json::json!(x.as_f64().unwrap() + 1.0);
    placements[other]["y"] = y;
    let corrupted = dir.path().join("overlap.json");
    write_json(&corrupted, &v);

    let o = cbpp(&["validate", "-i", corrupted.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let pair = format!("circles 0 and {other_id} overlap");
    assert!(stdout(&o).contains(&pair), "{}", stdout(&o));
}

#[test]
fn validate_names_the_broken_bound() {
    let dir = TempDir::new().unwrap();
    let sol = solved(&dir);
    let mut v = read_json(&sol);
    let p = &mut v["placements"][3];
    p["x"] = serde_json::json!(7.5);
    let corrupted = dir.path().join("outside.json");
    write_json(&corrupted, &v);

    let o = cbpp(&["validate", "-i", corrupted.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("circle 3"), "{}", stdout(&o));
    assert!(stdout(&o).contains("x + r <= L"), "{}", stdout(&o));
}

#[test]
fn validate_rejects_a_mismatched_instance() {
    let dir = TempDir::new().unwrap();
    let sol = solved(&dir);
    let other = dir.path().join("other.json");
    write_json(
        &other,
        &serde_json::json!({ "bin_side": 8.0, "circles": [{ "id": 0, "radius": 1.0 }] }),
    );
    let o = cbpp(
        &[
            "validate",
            "-i",
            sol.to_str().unwrap(),
            "--instance",
            other.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn render_writes_one_rect_per_bin_and_one_circle_per_placement() {
    let dir = TempDir::new().unwrap();
    let sol = solved(&dir);
    let svg = dir.path().join("out.svg");
    let o = cbpp(
        &[
            "render",
            "-i",
            sol.to_str().unwrap(),
            "-o",
            svg.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(svg).unwrap();
    assert!(text.contains("<svg "));
    assert_eq!(text.matches("<rect").count(), 2);
    assert_eq!(text.matches("<circle").count(), 8);
    assert!(text.contains("bin 1: 0.7854"));
}

#[test]
fn search_never_loses_to_greedy() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("inst.json");
    let o = cbpp(
        &[
            "generate",
            "--law",
            "sqrt",
            "--n0",
            "9",
            "--mode",
            "random",
            "--bin-side",
            "7",
            "--seed",
            "2",
            "-o",
            inst.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let objective = |alg: &str| {
        let o = cbpp(
            &[
                "solve",
                "-i",
                inst.to_str().unwrap(),
                "--alg",
                alg,
                "--iters",
                "300",
            ],
            dir.path(),
        );
        assert!(o.status.success(), "{}", stderr(&o));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["objective"].as_f64().unwrap()
    };
    let greedy = objective("gacoa");
    assert!(objective("alns") >= greedy);
    assert!(objective("lns") >= greedy);
}

#[test]
fn compare_emits_a_row_per_run_and_a_summary() {
    let dir = TempDir::new().unwrap();
    let suite = dir.path().join("suite");
    std::fs::create_dir(&suite).unwrap();
    for (name, n0, side) in [("a", "4", "9"), ("b", "5", "11")] {
        let out = suite.join(format!("{name}.json"));
        let o = cbpp(
            &[
                "generate",
                "--law",
                "linear",
                "--n0",
                n0,
                "--mode",
                "fixed",
                "--bin-side",
                side,
                "-o",
                out.to_str().unwrap(),
            ],
            dir.path(),
        );
        assert!(o.status.success());
    }
    let csv = dir.path().join("cmp.csv");
    let o = cbpp(
        &[
            "compare",
            "--dir",
            suite.to_str().unwrap(),
            "--algs",
            "gacoa,alns",
            "--iters",
            "200",
            "-o",
            csv.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(csv).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "instance");
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    let gain = headers.iter().position(|h| h == "f_a_minus_f_g").unwrap();
    for row in &rows {
        if &row[1] == "alns" {
            assert!(row[gain].parse::<f64>().unwrap() >= 0.0);
        }
    }
    assert!(
        stdout(&o).contains("mean f_alns - f_gacoa: "),
        "{}",
        stdout(&o)
    );
}
