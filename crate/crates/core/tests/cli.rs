use std::path::PathBuf;
use std::process::{Command, Output};

use paired_egress::{Network, RoutingPlan, SwitchState};

fn pegress(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pegress")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn route_four_ports() {
    let out = pegress(&["route", "--design", "triangular", "--ports", "4", "--pairs", "0-3,1-2"]);
    assert_eq!(out.status.code(), Some(0));
    let plan = RoutingPlan::from_json(&stdout(&out)).unwrap();
    assert_eq!(plan.states.0, vec![SwitchState::Cross, SwitchState::Cross]);
    assert!(plan.permuted.chunks(2).all(|p| p[0] + p[1] == 3));
}

#[test]
fn generate_render_round_trip() {
    let net_path = tmp("chevron10.json");
    let plan_path = tmp("chevron10-plan.json");
    let svg_path = tmp("chevron10.svg");
    let out = pegress(&["generate", "--design", "chevron", "--ports", "10", "--out", net_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let net = Network::from_json(&std::fs::read_to_string(&net_path).unwrap()).unwrap();
    assert_eq!(net.len(), 20);

    let out = pegress(&[
        "route", "--design", "chevron", "--ports", "10", "--pairs", "0-9,1-8,2-7,3-6,4-5",
        "--out", plan_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = pegress(&[
        "render", "--net", net_path.to_str().unwrap(), "--states", plan_path.to_str().unwrap(),
        "--svg", svg_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches(" cross\"").count(), 20);

    let out = pegress(&["render", "--net", net_path.to_str().unwrap(), "--ascii"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches('?').count(), 20);
}

#[test]
fn reversed_network_is_flagged() {
    let out = pegress(&["generate", "--design", "brickwork", "--ports", "8", "--reverse"]);
    assert_eq!(out.status.code(), Some(0));
    let net = Network::from_json(&stdout(&out)).unwrap();
    assert!(net.reversed);
}

#[test]
fn verify_all_small_networks() {
    let out = pegress(&["verify", "--design", "all", "--ports", "4..12", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 15);
    assert!(reports.iter().all(|r| r["passed"] == true));
    assert_eq!(reports.last().unwrap()["demands_checked"], 10395);
}

#[test]
fn verify_sampled() {
    let out = pegress(&["verify", "--design", "brickwork", "--ports", "32", "--samples", "50", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn minimality_passes() {
    let out = pegress(&["minimality", "--design", "triangular", "--ports", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["deletions"].as_array().unwrap().len(), 6);
}

#[test]
fn metrics_writes_csv() {
    let csv = tmp("series.csv");
    let out = pegress(&["metrics", "--ports", "4..16", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("scheme,N,switches,crosspoints,max_depth"));
    assert!(text.lines().any(|l| l.starts_with("benes,8,20,16,")));
    assert!(stdout(&out).contains("66"));
}

#[test]
fn exhaustive_cap_is_a_usage_error() {
    let out = pegress(&["verify", "--design", "chevron", "--ports", "14", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(pegress(&["generate", "--design", "chevron", "--ports", "7"]).status.code(), Some(2));
    assert_eq!(pegress(&["route", "--design", "chevron", "--ports", "4", "--pairs", "0-1,0-2"]).status.code(), Some(2));
    assert_eq!(pegress(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pegress(&["render", "--net", "/nonexistent.json", "--ascii"]).status.code(), Some(2));

    let net_path = tmp("tri4.json");
    let states_path = tmp("tri4-short.json");
    assert_eq!(
        pegress(&["generate", "--design", "triangular", "--ports", "4", "--out", net_path.to_str().unwrap()]).status.code(),
        Some(0)
    );
    std::fs::write(&states_path, r#"{"0":"cross"}"#).unwrap();
    let out = pegress(&[
        "render", "--net", net_path.to_str().unwrap(), "--states", states_path.to_str().unwrap(), "--ascii",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
