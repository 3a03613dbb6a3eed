use std::fs;

use fsr_cli::render::{Artifact, Json, RendererRegistry};
use fsr_cli::run_with;
use fsr_cli::workspace::{Outcome, Workspace};
use serde_json::Value;

fn fsr(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fsr").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = fsr(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}; stderr {err}"));
    (code, v)
}

#[test]
fn rabbit_fsr_has_quadrilateral_and_octagon() {
    let (code, v) = json(&["mate", "fsr", "1/6", "1/6"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["tile_types"], serde_json::json!(["quadrilateral", "octagon"]));
    assert_eq!(v["result"]["base"]["vertices"], 6);
    assert_eq!(v["result"]["base"]["edges"], 6);
}

#[test]
fn obstructed_pair_exits_three_with_witnesses() {
    let (code, v) = json(&["mate", "fsr", "7/8", "1/4"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["status"], "obstructed");
    assert!(!v["result"]["obstruction"]["witnesses"].as_array().unwrap().is_empty());
    let (code, v) = json(&["mate", "obstruction", "7/8", "1/4"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["status"], "obstructed");
    let (code, v) = json(&["mate", "obstruction", "1/6", "1/6"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "clean");
}

#[test]
fn single_tree_alpha_gives_one_ten_gon() {
    let (code, v) = json(&["mate", "fsr", "7/8", "1/4", "--single-tree", "alpha"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["tile_types"], serde_json::json!(["10-gon"]));
    assert_eq!(v["result"]["rule"]["census"], serde_json::json!([[2]]));
}

#[test]
fn pinched_pair_exits_four() {
    let (code, v) = json(&["mate", "pseudo-equator", "1/6", "13/14"]);
    assert_eq!(code, 4);
    assert_eq!(v["result"]["status"], "pinched");
    assert!(!v["result"]["pinch"]["classes"].as_array().unwrap().is_empty());
}

#[test]
fn rabbit_pseudo_equator_recovers_the_pair() {
    let (code, v) = json(&["mate", "pseudo-equator", "1/6", "1/6"]);
    assert_eq!(code, 0);
    let d = &v["result"]["decomposition"];
    assert_eq!(d["lambda"], 2);
    assert_eq!(d["v"], serde_json::json!(["1/6", "1/3", "1/6", "1/3"]));
    assert_eq!(d["recovered_pair"], serde_json::json!(["1/6", "1/6"]));
    assert_eq!(v["result"]["matrix"], serde_json::json!([[0, 1, 0, 0], [1, 0, 1, 1], [0, 1, 0, 0], [1, 0, 1, 1]]));
}

#[test]
fn invalid_inputs_have_their_exit_codes() {
    let (code, v) = json(&["mate", "validate", "1/4", "3/4"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["reason"], "ConjugateLimbs");
    assert_eq!(fsr(&["mate", "partition", "1/4", "3/4"]).0, 2);
    assert_eq!(fsr(&["poly", "tree", "1/5"]).0, 2);
    let (code, _, err) = fsr(&["poly", "tree", "0.5"]);
    assert_eq!(code, 64);
    assert!(err.contains("exact angle"));
    assert_eq!(fsr(&["mate", "frobnicate"]).0, 64);
    assert_eq!(fsr(&["render", "--format", "svg", "--target", "tree", "1/6", "1/4"]).0, 64);
    assert_eq!(fsr(&["--help"]).0, 0);
}

#[test]
fn bounds_exceeded_exit_five() {
    let (code, _, err) = fsr(&["render", "--format", "svg", "--target", "complex", "--level", "7", "1/6", "1/6"]);
    assert_eq!(code, 5);
    assert!(err.contains("expansion bound 6"));
    let args =
        ["--expansion-bound", "1", "render", "--format", "dot", "--target", "complex", "--level", "2", "1/6", "1/6"];
    assert_eq!(fsr(&args).0, 5);
    assert_eq!(fsr(&["--limb-bound", "2", "poly", "tree", "1/6"]).0, 5);
}

#[test]
fn poly_tree_reports_the_tripod() {
    let (code, v) = json(&["poly", "tree", "1/6"]);
    assert_eq!(code, 0);
    let verts = v["result"]["tree"]["vertices"].as_array().unwrap();
    assert_eq!(verts.len(), 4);
    assert!(verts.iter().any(|x| x["angles"] == serde_json::json!(["1/7", "2/7", "4/7"])));
    assert_eq!(v["result"]["limb"]["wake"], serde_json::json!(["1/7", "2/7"]));
}

#[test]
fn rabbit_complex_svg_counts_cells() {
    let args = ["render", "--format", "svg", "--target", "complex", "--level", "0", "1/6", "1/6"];
    let (code, svg, _) = fsr(&args);
    assert_eq!(code, 0);
    assert_eq!(svg.matches("class=\"vertex\"").count(), 6);
    assert_eq!(svg.matches("class=\"edge ").count(), 6);
    assert_eq!(svg.matches("class=\"face\"").count(), 2);
    assert_eq!(fsr(&args).1, svg);
}

#[test]
fn pullback_level_renders_four_faces() {
    let (code, svg, _) = fsr(&["render", "--format", "svg", "--target", "complex", "--level", "1", "1/6", "1/6"]);
    assert_eq!(code, 0);
    assert_eq!(svg.matches("class=\"face\"").count(), 4);
    assert_eq!(svg.matches("class=\"vertex\"").count(), 10);
}

#[test]
fn explicit_expansion_matches_the_census() {
    let (code, svg, _) = fsr(&["render", "--format", "svg", "--target", "complex", "--level", "3", "1/6", "1/6"]);
    assert_eq!(code, 0);
    assert_eq!(svg.matches("class=\"tile\"").count(), 16);
}

#[test]
fn rule_census_levels() {
    let (code, v) = json(&["render", "--format", "json", "--target", "rule", "--level", "3", "1/6", "1/6"]);
    assert_eq!(code, 0);
    assert_eq!(v["levels"], serde_json::json!([[1, 1], [2, 2], [4, 4], [8, 8]]));
    let (code, v) = json(&["rule", "iterate", "1/6", "1/6", "--levels", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["levels"], serde_json::json!([[1, 1], [2, 2], [4, 4], [8, 8]]));
    assert_eq!(v["result"]["expanded_census"], serde_json::json!([8, 8]));
}

#[test]
fn dot_preserves_adjacency() {
    let (code, dot, _) = fsr(&["render", "--format", "dot", "--target", "tree", "1/6"]);
    assert_eq!(code, 0);
    assert_eq!(dot.matches(" -- ").count(), 3);
    assert!(dot.contains("\"1/7 2/7 4/7\""));
    let (_, dot, _) = fsr(&["render", "--format", "dot", "--target", "complex", "1/6", "1/6"]);
    assert_eq!(dot.matches(" -- ").count(), 6);
}

#[test]
fn every_target_renders_in_every_format() {
    for target in ["partition", "complex", "rule", "equator", "decomposition"] {
        for format in ["json", "dot", "svg"] {
            let (code, out, err) = fsr(&["render", "--format", format, "--target", target, "1/6", "1/6"]);
            assert_eq!(code, 0, "{target} {format}: {err}");
            assert!(!out.is_empty());
        }
    }
    let (code, _, _) = fsr(&["render", "--format", "svg", "--target", "equator", "1/6", "13/14"]);
    assert_eq!(code, 4);
}

#[test]
fn output_file_is_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rabbit.svg");
    let p = path.to_str().unwrap();
    let (code, out, _) = fsr(&["render", "--format", "svg", "--target", "complex", "1/6", "1/6", "--output", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let direct = fsr(&["render", "--format", "svg", "--target", "complex", "1/6", "1/6"]).1;
    assert_eq!(fs::read_to_string(&path).unwrap(), direct);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn workspace_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().to_str().unwrap();
    for args in [vec!["mate", "fsr", "1/6", "1/6"], vec!["mate", "fsr", "7/8", "1/4"], vec!["poly", "tree", "1/4"]] {
        let plain = fsr(&args);
        let mut cached = vec!["--workspace", ws];
        cached.extend(&args);
        assert_eq!(fsr(&cached), plain, "first run {args:?}");
        assert_eq!(fsr(&cached), plain, "cache hit {args:?}");
    }
    assert_eq!(fs::read_dir(dir.path().join("cache")).unwrap().count(), 3);
}

#[test]
fn stale_schema_entries_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let ws = Workspace::open(dir.path()).unwrap();
    let hit = Outcome::ok("cached\n".into());
    ws.put("k 1/6", &hit).unwrap();
    assert_eq!(ws.get("k 1/6"), Some(hit));
    assert_eq!(ws.get("k 1/7"), None);
    let file = fs::read_dir(dir.path().join("cache")).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&file).unwrap().replace("\"schema\":1", "\"schema\":0");
    fs::write(&file, text).unwrap();
    assert_eq!(ws.get("k 1/6"), None);
}

#[test]
fn cache_hits_skip_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().to_str().unwrap();
    fsr(&["--workspace", ws, "poly", "tree", "1/6"]);
    let file = fs::read_dir(dir.path().join("cache")).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&file).unwrap().replace("1/7", "1/9");
    fs::write(&file, text).unwrap();
    let (_, out, _) = fsr(&["--workspace", ws, "poly", "tree", "1/6"]);
    assert!(out.contains("1/9"));
}

#[test]
fn renderer_registry_by_name() {
    let mut reg = RendererRegistry::default();
    assert_eq!(reg.names(), vec!["json", "dot", "svg"]);
    reg.register(Box::new(Json));
    assert_eq!(reg.names(), vec!["dot", "svg", "json"]);
    assert!(reg.get("png").is_none());
    let empty = Artifact::Expansion { level: 0, types: vec![], roots: vec![] };
    assert!(reg.get("json").unwrap().render(&empty).unwrap().contains("\"level\": 0"));
}
