use std::fs;
use std::path::Path;

use adderkit::analysis::{compare, table3_roster, MetricsReport};
use adderkit::{
    build, AdderSpec, AreaModel, CarryInMode, GateKind, Netlist, NetlistBuilder, TimingModel,
};
use adderkit_cli::{emit_plot_data, export_verilog, run_with, Metric, PlotError};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("adderkit").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn build_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = p(dir.path(), "fbha.json");
    let (code, out, _) = run(&[
        "build",
        "--arch",
        "fbha",
        "--width",
        "32",
        "--k",
        "24",
        "--modules",
        "2,2,4,4,4,8",
        "--style",
        "optimized",
        "--out",
        &file,
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("FBHA_8_24[8,4,4,4,2,2]/opt"));
    let netlist = Netlist::from_json(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(netlist.gate_count(), 409);

    let (code, out, _) = run(&[
        "verify",
        "--netlist",
        &file,
        "--mode",
        "random",
        "--vectors",
        "100000",
        "--seed",
        "42",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("pass, 100000 vectors"));
    assert!(out.contains("directed: pass"));
}

#[test]
fn verify_failure_exits_one_with_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let rca = build(&AdderSpec::rca(4)).unwrap();
    let or = rca
        .gates
        .iter()
        .find(|g| g.kind == GateKind::Or2)
        .unwrap()
        .id;
    let bad = rca.with_gate_kind(or, GateKind::And2).unwrap();
    let file = p(dir.path(), "bad.json");
    fs::write(&file, bad.to_json()).unwrap();
    let (code, out, _) = run(&["verify", "--netlist", &file, "--mode", "exhaustive"]);
    assert_eq!(code, 1);
    assert!(out.contains("counterexample a="), "{out}");
}

#[test]
fn sweep_reports_argmin_at_k24() {
    let dir = tempfile::tempdir().unwrap();
    let file = p(dir.path(), "sweep.json");
    let (code, out, _) = run(&[
        "sweep",
        "--width",
        "32",
        "--csla-sizes",
        "4,8,12,16",
        "--module-size",
        "4",
        "--timing",
        "unit",
        "--vectors",
        "2000",
        "--out",
        &file,
    ]);
    assert_eq!(code, 0);
    assert!(
        out.contains("best: FBHA_8_24[4,4,4,4,4,4]/opt (X=8, K=24)"),
        "{out}"
    );
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(json["argmin"], 1);
    assert_eq!(json["rows"][3]["dominant"], "csla");
}

#[test]
fn named_decomposition_sweep() {
    let (code, out, _) = run(&[
        "sweep",
        "--width",
        "32",
        "--k",
        "24",
        "--named",
        "--vectors",
        "500",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines().filter(|l| l.starts_with("FBHA_8_24")).count(),
        8
    );
    assert!(out.contains("844422"));
}

#[test]
fn usage_errors_exit_two_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let file = p(dir.path(), "never.json");
    for args in [
        vec!["build", "--arch", "cska", "--width", "32", "--out", &file],
        vec![
            "build", "--arch", "rca", "--width", "32", "--bogus", "--out", &file,
        ],
        vec!["build", "--arch", "warp", "--width", "8", "--out", &file],
        vec!["build", "--width", "8", "--out", &file],
        vec!["build", "--arch", "rca", "--width", "0", "--out", &file],
        vec!["compare", "--timing", "fast", "--out", &file],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
    let (_, _, err) = run(&["build", "--arch", "cska", "--width", "32"]);
    assert!(err.contains("--block-size"), "{err}");
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn file_errors_name_the_path() {
    let (code, _, err) = run(&["verify", "--netlist", "/nonexistent/x.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/x.json"));
}

#[test]
fn spec_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let spec = AdderSpec::csla(16, &[4, 4, 8]).with_carry_in(CarryInMode::Variable);
    let file = p(dir.path(), "spec.json");
    fs::write(&file, serde_json::to_string(&spec).unwrap()).unwrap();
    let (code, out, _) = run(&["build", "--spec", &file]);
    assert_eq!(code, 0);
    assert_eq!(Netlist::from_json(&out).unwrap(), build(&spec).unwrap());
}

#[test]
fn compare_and_plot_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let json = p(dir.path(), &format!("r{i}.json"));
        let csv = p(dir.path(), &format!("r{i}.csv"));
        let (code, _, err) = run(&[
            "compare",
            "--vectors",
            "5000",
            "--seed",
            "42",
            "--out",
            &json,
            "--csv",
            &csv,
        ]);
        assert_eq!(code, 0, "{err}");
        outputs.push((fs::read(&json).unwrap(), fs::read(&csv).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    let csv = String::from_utf8(outputs[0].1.clone()).unwrap();
    assert_eq!(
        csv.lines().next(),
        Some("name,delay,area,gates,power_proxy,pdp,normalized_pdp")
    );
    assert_eq!(csv.lines().count(), 11);
    assert!(csv.contains("\"CSLA_32[8,8,8,8]\""));

    let plot_csv = p(dir.path(), "plot.csv");
    let (code, out, _) = run(&[
        "plot",
        "--report",
        &p(dir.path(), "r0.json"),
        "--metric",
        "pdp",
        "--normalize",
        "--csv",
        &plot_csv,
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 11);
    let twin = fs::read_to_string(&plot_csv).unwrap();
    assert_eq!(twin.lines().next(), Some("label,pdp"));
    let (code, _, err) = run(&[
        "plot",
        "--report",
        &p(dir.path(), "r0.json"),
        "--metric",
        "speed",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("speed"));
}

#[test]
fn plot_data_semantics() {
    let report = compare(
        &table3_roster(),
        &TimingModel::unit(),
        &AreaModel::tcount(),
        2000,
        42,
    )
    .unwrap();
    let pdp = emit_plot_data(&report, Metric::Pdp, true).unwrap();
    assert_eq!(pdp.points.len(), 10);
    assert_eq!(pdp.points.iter().map(|p| p.1).fold(0.0, f64::max), 1.0);
    let delay = emit_plot_data(&report, Metric::Delay, false).unwrap();
    let max = delay
        .points
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    assert_eq!(max.0, "RCA_32");
    let empty = MetricsReport {
        rows: vec![],
        ..report
    };
    assert_eq!(
        emit_plot_data(&empty, Metric::Area, false),
        Err(PlotError::Empty)
    );
    assert!(matches!(
        "bogus".parse::<Metric>(),
        Err(PlotError::UnknownMetric(_))
    ));
}

fn instances(text: &str) -> usize {
    text.lines()
        .map(str::trim)
        .filter(|l| {
            let head = l.split_whitespace().next().unwrap_or("");
            ["not", "and", "or", "nand", "nor", "xor", "xnor"].contains(&head)
                || l.starts_with("assign n")
        })
        .count()
}

#[test]
fn verilog_half_adder() {
    let mut b = NetlistBuilder::new("half", 1, CarryInMode::None);
    let a = b.add_input("a0");
    let bb = b.add_input("b0");
    let s = b.xor(a, bb).unwrap();
    let c = b.and(a, bb).unwrap();
    let n = b.finish(vec![s, c]).unwrap();
    let v = export_verilog(&n).unwrap();
    assert_eq!(instances(&v), 2);
    assert!(v.contains("  xor g0 (n2, a[0], b[0]);"));
    assert!(v.contains("  and g1 (n3, a[0], b[0]);"));
    assert!(v.contains("  input [0:0] a;") && v.contains("  output cout;"));
}

#[test]
fn verilog_instance_count_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let specs = table3_roster().into_iter().chain([
        AdderSpec::cond_sum(8).with_carry_in(CarryInMode::Constant1),
        AdderSpec::rca(4).with_carry_in(CarryInMode::Variable),
    ]);
    for spec in specs {
        let n = build(&spec).unwrap();
        let direct = export_verilog(&n).unwrap();
        assert_eq!(instances(&direct), n.gate_count(), "{}", n.name);
        assert_eq!(direct, export_verilog(&n).unwrap());
        let file = p(dir.path(), "n.json");
        fs::write(&file, n.to_json()).unwrap();
        let (code, out, _) = run(&["export", "--netlist", &file]);
        assert_eq!(code, 0);
        assert_eq!(out, direct);
    }
}
