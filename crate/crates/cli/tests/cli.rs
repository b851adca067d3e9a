use std::fs;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_semitotal")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out, err) = run(&all);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn gen_families() {
    let g = json(&["gen", "lcf:[5,-5]^7"]);
    assert_eq!((g["n"].as_u64(), g["edges"].as_array().unwrap().len()), (Some(14), 21));
    assert_eq!(json(&["gen", "gp:5,2"])["n"], 10);
    assert_eq!(json(&["gen", "kmn:3,3"])["edges"].as_array().unwrap().len(), 9);
    assert_eq!(json(&["gen", "mobius_ladder_3k:2"])["n"], 12);
    assert_eq!(json(&["gen", "petersen"])["n"], 10);
    assert_eq!(run(&["gen", "wheel:5"]).0, 2);
}

#[test]
fn reduce_text_ends_with_summary() {
    let (code, out, _) = run(&["reduce", "-c", "heawood"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last(), Some("Hea(9,9,9,8)=Hea(8,9^3)"));
}

#[test]
fn lift_dodecahedron_over_petersen_doubles_gamma() {
    let v = json(&["lift", "--source", "dodecahedron"]);
    assert_eq!((v["fold"].as_u64(), v["target_gamma"].as_u64()), (Some(2), Some(1)));
    assert_eq!(v["listing"]["listing"]["gamma"], 2);
    assert_eq!(v["is_tc"], true);
    let c = json(&["verify-cover", "--source", "prism8", "--target", "q3"]);
    assert_eq!(c["fold"], 2);
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let (_, g, _) = run(&["gen", "prism:8"]);
    fs::write(&graph, g).unwrap();
    let (code, coloring, err) = run(&["color", "-g", graph.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let cpath = dir.path().join("c.json");
    fs::write(&cpath, &coloring).unwrap();
    let v = json(&["validate", "--coloring", cpath.to_str().unwrap()]);
    assert_eq!(v["is_stc"], true);

    // break it: an endpoint of edge 0 takes that edge's color
    let mut c: Value = serde_json::from_str(&coloring).unwrap();
    let u = c["graph"]["edges"][0][0].as_u64().unwrap() as usize;
    let e0 = c["edge_colors"][0].clone();
    c["vertex_colors"][u] = e0;
    fs::write(&cpath, c.to_string()).unwrap();
    let (code, out, _) = run(&["validate", "--coloring", cpath.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("stc=false"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["listing", "-c", "no_such_graph"]).0, 1);
    assert_eq!(run(&["listing"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    // over the default cap without consent
    assert_eq!(run(&["oracle", "chi", "-c", "petersen", "--cap", "30"]).0, 1);
    let (code, out, _) = run(&["oracle", "min-gamma", "-c", "k33"]);
    assert_eq!(code, 0);
    assert!(out.contains("no total coloring"));
}

#[test]
fn dot_export_carries_colors() {
    let p = json(&["mcaps", "-c", "q3"]);
    let verts: Vec<String> = p[0]["vertices"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    let (code, dot, _) = run(&["export-dot", "-c", "q3", "--highlight", &verts.join(",")]);
    assert_eq!(code, 0);
    assert!(dot.contains("penwidth=3"));
    assert!(run(&["export-dot", "-c", "q3"]).1.contains("tcolor="));
    assert_eq!(run(&["export-dot", "-c", "q3", "--highlight", "0,5"]).0, 1);
}
