use std::process::{Command, Output};

use rank74::certificates::{exp_rank_certificate, verify_torus, TorusWitness};
use rank74::cobordism::{close_up, CanonicalWord};
use rank74::fixtures::golden_rgraphs;
use rank74::rgraph::{parse_rgraph_dot, r_graph};
use serde_json::Value;

fn rank74(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rank74")).args(args).output().expect("binary runs")
}

fn status(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn csv_row(o: &Output, n: usize) -> Vec<String> {
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    let line = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .find(|l| l.split(',').next() == Some(&n.to_string()))
        .expect("row present");
    line.split(',').map(String::from).collect()
}

#[test]
fn build_closes_up() {
    let x00 = rank74(&["build", "--word", "X00"]);
    assert_eq!(status(&x00), 0);
    let v = json(&x00);
    assert_eq!(v["result"]["presentation"]["triangles"].as_array().unwrap().len(), 8);
    assert_eq!(v["result"]["valid"], true);
    assert!(v["result"]["group"]["relators"].is_array());
    assert_eq!(v["config"]["word"], "X00");

    let omega0 = json(&rank74(&["build", "--word", "Y00.Y00.Y00"]));
    assert_eq!(omega0["result"]["presentation"]["triangles"].as_array().unwrap().len(), 24);
}

#[test]
fn bad_input_is_a_usage_error() {
    let o = rank74(&["build", "--word", "X99"]);
    assert_eq!(status(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("X99"));
    assert_eq!(status(&rank74(&["build"])), 1);
    assert_eq!(status(&rank74(&["build", "--word", "X00", "--format", "dot"])), 1);
    assert_eq!(status(&rank74(&["certify", "--word", "X00", "--kind", "h2"])), 1);
}

#[test]
fn word_from_file() {
    let dir = std::env::temp_dir().join(format!("rank74-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("word.txt");
    std::fs::write(&path, "X01.X00\n").unwrap();
    let o = rank74(&["build", "--input", path.to_str().unwrap()]);
    assert_eq!(status(&o), 0);
    assert_eq!(json(&o)["result"]["word"], "X01.X00");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rgraph_fixtures_pass() {
    for g in golden_rgraphs() {
        let o = rank74(&["rgraph", "--word", &g.word, "--fixture"]);
        assert_eq!(status(&o), 0, "{}", g.word);
    }
    let v = json(&rank74(&["rgraph", "--word", "X00.Y00", "--fixture", "--format", "json"]));
    assert_eq!(v["result"]["fixture"]["pass"], true);
}

#[test]
fn rgraph_without_fixture_is_an_error() {
    assert_eq!(status(&rank74(&["rgraph", "--word", "Y11", "--fixture"])), 1);
}

#[test]
fn rgraph_dot_round_trip() {
    let o = rank74(&["rgraph", "--word", "Y00", "--format", "dot"]);
    assert_eq!(status(&o), 0);
    let edges = parse_rgraph_dot(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(r_graph(&"Y00".parse().unwrap()).unwrap().same_multigraph(&edges));
}

#[test]
fn certify_z2_witness_verifies() {
    let o = rank74(&["certify", "--word", "X01.X00", "--kind", "z2"]);
    assert_eq!(status(&o), 0);
    let v = json(&o);
    assert_eq!(v["result"]["status"], "witness");
    let t: TorusWitness = serde_json::from_value(v["result"]["witness"].clone()).unwrap();
    assert!(verify_torus(&t, &close_up(&"X01.X00".parse().unwrap()).unwrap()));
}

#[test]
fn certify_meso_statuses() {
    assert_eq!(status(&rank74(&["certify", "--word", "Y00.X00.Y00.X00.Y00", "--kind", "meso"])), 2);
    let o = rank74(&["certify", "--word", "Y00.Y00.Y00", "--kind", "meso"]);
    assert_eq!(status(&o), 0);
    assert_eq!(json(&o)["result"]["witness"]["checks"]["a1_strip"], true);
    // The geodesic A has length 6, so a shorter annulus bound cannot finish.
    let short = rank74(&["certify", "--word", "Y00.Y00.Y00", "--kind", "meso", "--annulus-L", "4"]);
    assert_eq!(status(&short), 3);
    assert_eq!(json(&short)["result"]["bounds"]["annulus_len"], 4);
}

#[test]
fn certify_exprank_statuses() {
    let words = CanonicalWord::all(3);
    let yes = words.iter().map(|c| c.representative()).find(|w| exp_rank_certificate(w).is_some()).unwrap();
    let no = words.iter().map(|c| c.representative()).find(|w| exp_rank_certificate(w).is_none()).unwrap();
    assert_eq!(status(&rank74(&["certify", "--word", &yes.to_string(), "--kind", "exprank"])), 0);
    assert_eq!(status(&rank74(&["certify", "--word", &no.to_string(), "--kind", "exprank"])), 2);
}

#[test]
fn census_rows() {
    let o = rank74(&["census", "--n-max", "3", "--pattern", "Y00Y00", "--mode", "recurrence"]);
    assert_eq!(status(&o), 0);
    assert_eq!(csv_row(&o, 3)[..4], ["3", "54", "46", "5"]);
    let o = rank74(&["census", "--n-max", "2"]);
    assert_eq!(csv_row(&o, 2)[..6], ["2", "18", "17", "1", "1", "18"]);
}

#[test]
fn census_json_embeds_config() {
    let v = json(&rank74(&["census", "--n-max", "8", "--format", "json"]));
    assert_eq!(v["config"]["n_max"], 8);
    assert_eq!(v["config"]["pattern"], "Y00Y00");
    assert_eq!(v["result"]["table"]["rows"].as_array().unwrap().len(), 8);
    assert!(v["versions"]["rank74"].is_string());
}

#[test]
fn census_enumeration_bound() {
    let o = rank74(&["census", "--n-max", "13", "--mode", "enumeration"]);
    assert_eq!(status(&o), 1);
}

#[test]
fn sample_is_reproducible() {
    let args = ["sample", "--n", "2", "--trials", "10000", "--property", "exprank-pattern-a", "--seed", "1"];
    let a = rank74(&args);
    let b = rank74(&args);
    assert_eq!(status(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["config"]["rng"], "ChaCha8Rng");
    let (lo, hi) = (v["result"]["lower"].as_f64().unwrap(), v["result"]["upper"].as_f64().unwrap());
    assert!(lo <= 1.0 / 18.0 && 1.0 / 18.0 <= hi, "[{lo}, {hi}]");
}
