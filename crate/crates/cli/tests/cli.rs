//! End-to-end runs of the binary: file round trips, the build/verify/prism
//! flow, the replay harness, and the exit-code contract
//! (0 all-pass, 1 verification failure, 2 input error).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rockforge::formats::SystemFile;
use rockforge::report::{replay, Report};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rockforge"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn report_of(output: &Output) -> Report {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "report must parse: {e}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&output.stdout),
            String::from_utf8_lossy(&output.stderr)
        )
    })
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rockforge-test-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

fn write_square(dir: &Path) -> PathBuf {
    let path = dir.join("square.json");
    std::fs::write(
        &path,
        r#"{"d":2,"m":4,"A":[["1","0"],["-1","0"],["0","1"],["0","-1"]],"b":["1","1","1","1"]}"#,
    )
    .expect("write fixture");
    path
}

#[test]
fn check_exit_codes_follow_the_contract() {
    let dir = temp_dir("check");
    let square = write_square(&dir);
    let ok = run(&["check", square.to_str().unwrap(), "--which", "nondeg"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(report_of(&ok).all_ok());

    // The square has parallel rows: totally non-degenerate fails -> exit 1.
    let fail = run(&["check", square.to_str().unwrap(), "--which", "totnondeg"]);
    assert_eq!(fail.status.code(), Some(1));
    let report = report_of(&fail);
    assert!(!report.all_ok());
    assert!(!report.checks[0].witnesses.is_empty());

    // Unparseable input -> exit 2.
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    let err = run(&["check", bad.to_str().unwrap(), "--which", "nondeg"]);
    assert_eq!(err.status.code(), Some(2));
}

#[test]
fn rock_verify_prism_export_flow() {
    let dir = temp_dir("flow");
    let square = write_square(&dir);
    let q = dir.join("q.json");

    let rock = run(&[
        "rock",
        square.to_str().unwrap(),
        "--mode",
        "practical",
        "--out",
        q.to_str().unwrap(),
    ]);
    assert_eq!(rock.status.code(), Some(0), "{}", String::from_utf8_lossy(&rock.stderr));
    let rock_report = report_of(&rock);
    assert!(rock_report.all_ok());
    replay(&rock_report).expect("rock report replays from its own evidence");
    let params = rock_report.params.expect("parameter trace present");
    assert_eq!(params.coefficients.len(), 5);
    assert_eq!(params.mu_schedule.len(), 2);

    // The written extension parses and has the announced shape.
    let q_file: SystemFile =
        serde_json::from_str(&std::fs::read_to_string(&q).unwrap()).unwrap();
    assert_eq!((q_file.m, q_file.d), (6, 3));

    let verify = run(&["verify", q.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));
    replay(&report_of(&verify)).expect("verify report replays");

    let qhat = dir.join("qhat.json");
    let prism = run(&[
        "prism",
        q.to_str().unwrap(),
        "--objective",
        "1,0",
        "--out",
        qhat.to_str().unwrap(),
    ]);
    assert_eq!(prism.status.code(), Some(0), "{}", String::from_utf8_lossy(&prism.stderr));
    let prism_report = report_of(&prism);
    assert!(prism_report.all_ok());
    replay(&prism_report).expect("prism report replays");
    let qhat_file: SystemFile =
        serde_json::from_str(&std::fs::read_to_string(&qhat).unwrap()).unwrap();
    assert_eq!((qhat_file.m, qhat_file.d), (8, 4));

    let off = dir.join("q.off");
    let export = run(&["export", q.to_str().unwrap(), "--out", off.to_str().unwrap()]);
    assert_eq!(export.status.code(), Some(0));
    let text = std::fs::read_to_string(&off).unwrap();
    assert!(text.starts_with("OFF\n"));
    assert!(text.contains("# exact:"));

    // The prism is four-dimensional: export must refuse it.
    let too_high = run(&[
        "export",
        qhat.to_str().unwrap(),
        "--out",
        dir.join("qhat.off").to_str().unwrap(),
    ]);
    assert_eq!(too_high.status.code(), Some(2));
}

#[test]
fn tampered_extension_fails_verification() {
    let dir = temp_dir("tamper");
    let square = write_square(&dir);
    let q = dir.join("q.json");
    let rock = run(&[
        "rock",
        square.to_str().unwrap(),
        "--out",
        q.to_str().unwrap(),
    ]);
    assert_eq!(rock.status.code(), Some(0));

    // Negate one tilt coefficient: the adopted file is no longer an
    // extension, which the verifier reports as an input error.
    let mut file: SystemFile =
        serde_json::from_str(&std::fs::read_to_string(&q).unwrap()).unwrap();
    let a_col = file.d - 1;
    file.a[1][a_col] = format!("-{}", file.a[1][a_col]);
    std::fs::write(&q, serde_json::to_string(&file).unwrap()).unwrap();
    let verify = run(&["verify", q.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&verify.stderr).contains("not positive"));
}

#[test]
fn oversized_concentration_radius_is_reported() {
    let dir = temp_dir("radius");
    let square = write_square(&dir);
    let q = dir.join("q.json");
    run(&["rock", square.to_str().unwrap(), "--out", q.to_str().unwrap()]);
    let verify = run(&["verify", q.to_str().unwrap(), "--eps", "10"]);
    assert_eq!(verify.status.code(), Some(1));
    let report = report_of(&verify);
    let concentration = report
        .checks
        .iter()
        .find(|c| c.name == "concentration")
        .expect("concentration entry");
    assert!(!concentration.ok);
    assert!(!concentration.witnesses.is_empty());
}

#[test]
fn certified_mode_is_gated_by_size() {
    let dir = temp_dir("gate");
    let octagon = dir.join("octagon.json");
    std::fs::write(
        &octagon,
        r#"{"d":2,"m":8,"A":[["1","0"],["1","1"],["0","1"],["-1","1"],["-1","0"],["-1","-1"],["0","-1"],["1","-1"]],"b":["4","6","4","6","4","6","4","6"]}"#,
    )
    .unwrap();
    let gated = run(&["rock", octagon.to_str().unwrap(), "--mode", "certified"]);
    assert_eq!(gated.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&gated.stderr).contains("m + d <= 8"));
}

#[test]
fn batched_hexagon_build_passes() {
    let dir = temp_dir("batched");
    let hexagon = dir.join("hexagon.json");
    std::fs::write(
        &hexagon,
        r#"{"d":2,"m":6,"A":[["1","0"],["1","2"],["-1","2"],["-1","0"],["-1","-2"],["1","-2"]],"b":["4","9","9","4","9","9"]}"#,
    )
    .unwrap();
    let out = dir.join("hexq.json");
    let rock = run(&[
        "rock",
        hexagon.to_str().unwrap(),
        "--batched",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(rock.status.code(), Some(0), "{}", String::from_utf8_lossy(&rock.stderr));
    let report = report_of(&rock);
    assert!(report.all_ok());
    replay(&report).unwrap();
    let params = report.params.expect("trace");
    assert!(!params.batch_sizes.is_empty());
}

#[test]
fn solve_reports_all_three_statuses() {
    let dir = temp_dir("solve");
    let lp = dir.join("lp.json");
    std::fs::write(
        &lp,
        r#"{"d":2,"m":2,"A":[["1","0"],["0","1"]],"b":["1","1"]}"#,
    )
    .unwrap();
    let optimal = run(&[
        "solve",
        lp.to_str().unwrap(),
        "--objective",
        "-1,-1",
        "--oracle",
    ]);
    assert_eq!(optimal.status.code(), Some(0));
    let report = report_of(&optimal);
    assert!(report.notes.iter().any(|n| n == "objective -2"));
    assert!(report.all_ok());

    let unbounded = dir.join("unb.json");
    std::fs::write(&unbounded, r#"{"d":2,"m":1,"A":[["1","-1"]],"b":["0"]}"#).unwrap();
    let out = run(&[
        "solve",
        unbounded.to_str().unwrap(),
        "--objective",
        "-1,0",
        "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report_of(&out).notes.iter().any(|n| n.starts_with("ray")));

    let infeasible = dir.join("inf.json");
    std::fs::write(&infeasible, r#"{"d":1,"m":1,"A":[["1"]],"b":["-1"]}"#).unwrap();
    let out = run(&[
        "solve",
        infeasible.to_str().unwrap(),
        "--objective",
        "1",
        "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report_of(&out).notes.iter().any(|n| n == "status infeasible"));
}

#[test]
fn degenerate_rock_input_names_a_witness() {
    let dir = temp_dir("degen");
    let cut = dir.join("cut.json");
    std::fs::write(
        &cut,
        r#"{"d":2,"m":5,"A":[["1","0"],["-1","0"],["0","1"],["0","-1"],["1","1"]],"b":["1","1","1","1","2"]}"#,
    )
    .unwrap();
    let rock = run(&["rock", cut.to_str().unwrap()]);
    assert_eq!(rock.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&rock.stderr);
    assert!(stderr.contains("degenerate"), "{stderr}");
    assert!(stderr.contains("(1, 1)"), "{stderr}");
}
