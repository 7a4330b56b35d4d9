use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dubins_intercept_core::{metric, Configuration, ControlSchedule, TurnSign};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dubins-intercept"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_on(cmd: &str, name: &str, extra: &[&str]) -> Output {
    let path = scenario(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn solve_straight_ahead() {
    let o = run_on("solve", "straight_ahead.json", &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("T* = 4.000000, family CSC(+1,+1), tau1=0, tau2=4"), "{text}");
    let statuses = text.lines().skip_while(|l| *l != "candidates:").skip(1).count();
    assert_eq!(statuses, 10);
}

#[test]
fn solve_start_is_time_zero() {
    let o = run_on("solve", "start.json", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("T* = 0.000000"));
}

#[test]
fn receding_target_is_infeasible() {
    for cmd in ["solve", "trace", "verify"] {
        let o = run_on(cmd, "receding.json", &[]);
        assert_eq!(o.status.code(), Some(2), "{cmd}");
    }
}

#[test]
fn every_corpus_scenario_solves() {
    for entry in fs::read_dir(scenario("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let o = run(&["solve", path.to_str().unwrap()]);
            let want = if path.ends_with("receding.json") { 2 } else { 0 };
            assert_eq!(o.status.code(), Some(want), "{}: {}", path.display(), stderr(&o));
        }
    }
}

#[test]
fn solve_output_round_trips_through_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["behind.json", "circular.json", "loop_then_turn.json", "track.json"] {
        let out = dir.path().join("result.json");
        let o = run_on("solve", name, &["--output", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
        let f = |k: &str| v[k].as_f64().unwrap();
        let s = TurnSign::of(f("s")).unwrap();
        let sched = match v["kind"].as_str().unwrap() {
            "CSC" => ControlSchedule::csc(s, TurnSign::of(f("sigma")).unwrap(), f("tau1"), f("tau2")),
            _ => ControlSchedule::ccc(s, f("tau1"), f("tau2")),
        }
        .unwrap();
        let i = &v["interception"];
        let reported = Configuration::new(i["x"].as_f64().unwrap(), i["y"].as_f64().unwrap(), i["phi"].as_f64().unwrap());
        assert!(metric(&sched.config_at(f("t_star")), &reported) <= 1e-9, "{name}");

        // The printed switch times are exact too.
        let line = stdout(&o).lines().find(|l| l.starts_with("T* = ")).unwrap().to_string();
        let tau2 = line.rsplit_once("tau2=").unwrap().1;
        assert_eq!(num(tau2), f("tau2"));
    }
}

/// `(line, column)` from an `error: file:line:column: message` report.
fn anchor(err: &str) -> (usize, usize) {
    let rest = err.split_once(".json:").unwrap().1;
    let mut parts = rest.splitn(3, ':');
    (parts.next().unwrap().parse().unwrap(), parts.next().unwrap().parse().unwrap())
}

#[test]
fn malformed_scenario_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\n  \"target\": {\"kind\": \"static\", \"x\": 1,\n    \"y\": 2}\n}\n").unwrap();
    let o = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("phi"), "{err}");
    assert!(anchor(&err).0 >= 3, "{err}");

    fs::write(&path, "{\"horizon\": 10,\n \"target\": {\"kind\": \"spiral\"}}").unwrap();
    let o = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(anchor(&stderr(&o)).0, 2);

    fs::write(&path, "{\"horizon\": -3,\n \"target\": {\"kind\": \"static\", \"x\": 0, \"y\": 0, \"phi\": 0}}").unwrap();
    let o = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(anchor(&stderr(&o)).0, 1);

    let o = run(&["solve", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_track_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.csv"), "t,x,y,phi\n0,0,5,0\n1,1,5,0\n1,2,5,0\n").unwrap();
    let path = dir.path().join("s.json");
    fs::write(&path, r#"{"target": {"kind": "track", "path": "t.csv"}}"#).unwrap();
    let o = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("t.csv:4:"), "{}", stderr(&o));
}

#[test]
fn bad_flags_are_input_errors() {
    let path = scenario("straight_ahead.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["solve", p, "--horizon", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["solve", p, "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["trace", p, "--samples", "1"]).status.code(), Some(1));
    assert_eq!(run(&["solve"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn residuals_straight_ahead() {
    let o = run_on("residuals", "straight_ahead.json", &["--grid", "0.5", "--to", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("t,family,F\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 17 * 10);
    let families: std::collections::BTreeSet<_> = rows.iter().map(|r| r[1].clone()).collect();
    assert_eq!(families.len(), 10);
    for r in rows.iter().filter(|r| r[1] == "CSC(+1,+1)") {
        assert!((num(&r[2]) - (4.0 - num(&r[0]))).abs() < 1e-8, "{r:?}");
    }
    for r in rows.iter().filter(|r| r[1] == "SC" || r[1] == "CC") {
        assert_eq!(r[2] == "nan", num(&r[0]) < 2.0 * std::f64::consts::PI, "{r:?}");
    }
}

#[test]
fn residuals_mark_undefined_mixed_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("side.json");
    fs::write(&path, format!(r#"{{"target": {{"kind": "static", "x": 1, "y": 0, "phi": {FRAC_PI_2}}}}}"#)).unwrap();
    let o = run(&["residuals", path.to_str().unwrap(), "--grid", "1", "--to", "3"]);
    let rows = csv_rows(&stdout(&o));
    let mixed: Vec<_> = rows.iter().filter(|r| r[1] == "CSC(-1,+1)").collect();
    assert_eq!(mixed.len(), 4);
    assert!(mixed.iter().all(|r| r[2] == "nan"));
}

#[test]
fn csv_output_is_deterministic() {
    let a = run_on("residuals", "circular.json", &["--grid", "0.05"]);
    let b = run_on("residuals", "circular.json", &["--grid", "0.05"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run_on("trace", "wind_gusty.json", &["--samples", "50"]);
    let b = run_on("trace", "wind_gusty.json", &["--samples", "50"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn trace_straight_ahead() {
    let o = run_on("trace", "straight_ahead.json", &["--samples", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("t,x,y,phi,u,xe,ye,phie\n"));
    let ys: Vec<f64> = csv_rows(&text).iter().map(|r| num(&r[2])).collect();
    assert_eq!(ys, [0.0, 1.0, 2.0, 3.0, 4.0]);
}

#[test]
fn trace_ends_on_target() {
    for name in ["circular.json", "loop_then_turn.json", "rotating_point.json"] {
        let o = run_on("trace", name, &["--samples", "40"]);
        let rows = csv_rows(&stdout(&o));
        assert_eq!(rows.len(), 40);
        for r in &rows {
            assert!(["-1", "0", "1"].contains(&r[4].as_str()), "{r:?}");
        }
        let last: Vec<f64> = rows.last().unwrap().iter().map(|v| num(v)).collect();
        let car = Configuration::new(last[1], last[2], last[3]);
        let target = Configuration::new(last[5], last[6], last[7]);
        // Nine significant digits bound the printed precision.
        assert!(metric(&car, &target) <= 1e-6, "{name}: {last:?}");
    }
}

#[test]
fn verify_exit_codes() {
    for name in ["straight_ahead.json", "behind.json", "start.json"] {
        let o = run_on("verify", name, &[]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(stdout(&o).contains("PASS"));
    }
    let o = run_on("verify", "straight_ahead.json", &["--corrupt-tau2", "0.1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));
    let o = run_on("verify", "behind.json", &["--corrupt-tau2", "0.1"]);
    assert_eq!(o.status.code(), Some(3));
}

fn translate(node: roxmltree::Node<'_, '_>) -> (f64, f64) {
    let t = node.attribute("transform").unwrap();
    let inner = t.strip_prefix("translate(").unwrap();
    let (xy, _) = inner.split_once(')').unwrap();
    let (x, y) = xy.split_once(' ').unwrap();
    (num(x), num(y))
}

#[test]
fn svg_figure() {
    let dir = tempfile::tempdir().unwrap();
    for (name, markers) in [("straight_ahead.json", 5), ("circular.json", 7)] {
        let out = dir.path().join("fig.svg");
        let n = markers.to_string();
        let o = run_on("svg", name, &[out.to_str().unwrap(), "--markers", &n]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let text = fs::read_to_string(&out).unwrap();
        let doc = roxmltree::Document::parse(&text).unwrap();
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        assert_eq!(root.attribute("version"), Some("1.1"));

        let paths: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("path")).collect();
        assert_eq!(paths.len(), 2);
        let dashed = paths.iter().filter(|p| p.attribute("stroke-dasharray").is_some()).count();
        assert_eq!(dashed, 1);
        assert!(paths.iter().find(|p| p.attribute("class") == Some("target")).unwrap().attribute("stroke-dasharray").is_some());

        let markers_of = |class: &str| -> Vec<(f64, f64)> {
            doc.descendants()
                .filter(|n| n.attribute("class") == Some(&format!("marker {class}")))
                .map(translate)
                .collect()
        };
        let (car, target) = (markers_of("car"), markers_of("target"));
        assert_eq!(car.len(), markers);
        assert_eq!(target.len(), markers);
        let (a, b) = (car.last().unwrap(), target.last().unwrap());
        assert!((a.0 - b.0).hypot(a.1 - b.1) <= 1e-3, "{a:?} vs {b:?}");
        assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), 2);
    }
}

#[test]
fn svg_unwritable_path() {
    let o = run_on("svg", "straight_ahead.json", &["/nonexistent-dir/fig.svg"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run_on("svg", "receding.json", &["/tmp/never-written.svg"]);
    assert_eq!(o.status.code(), Some(2));
}
