use fsr_core::angle_dynamics::Angle;
use fsr_core::complexes::{
    build_complex, check_subdivision, construct, digon_repair, extract_rule, iterate_rule, pullback_complex,
    pullback_complex_unchecked, quotient_skeleton, single_tree_skeleton, trace_faces, CWComplex2, Essential,
    RuleImages, SkeletonInput, SkeletonStrategy, StrategyRegistry,
};
use fsr_core::mating::{Mating, Side};
use fsr_core::{Engine, FsrError};

fn a(s: &str) -> Angle {
    s.parse().unwrap()
}

fn mating(e: &Engine, x: &str, y: &str) -> Mating {
    e.mating(&a(x), &a(y)).unwrap()
}

fn sorted_sizes(c: &CWComplex2) -> Vec<usize> {
    let mut s = c.face_sizes();
    s.sort();
    s
}

fn assert_sphere(c: &CWComplex2) {
    assert_eq!(c.euler_characteristic(), 2);
    assert_eq!(c.face_sizes().iter().sum::<usize>(), 2 * c.graph.edge_count());
}

#[test]
fn rabbit_pair_skeleton_is_quadrilateral_and_octagon() {
    let e = Engine::default();
    let m = mating(&e, "1/6", "1/6");
    let part = m.essential_partition().unwrap();
    let input = quotient_skeleton(&m, &part).unwrap();
    let c = build_complex(&m, &input).unwrap();
    assert_eq!(c.graph.vertex_count(), 6);
    assert_eq!(c.graph.edge_count(), 6);
    assert_eq!(sorted_sizes(&c), vec![4, 8]);
    assert_sphere(&c);
    let merged = c.graph.vertices.iter().filter(|v| v.members.len() > 1).count();
    assert_eq!(merged, 2);
}

#[test]
fn rabbit_pair_pullback_subdivides() {
    let e = Engine::default();
    let m = mating(&e, "1/6", "1/6");
    let part = m.essential_partition().unwrap();
    let input = quotient_skeleton(&m, &part).unwrap();
    let base = build_complex(&m, &input).unwrap();
    let pull = pullback_complex(&m, &input, &part).unwrap();
    assert_eq!(pull.graph.vertex_count(), 10);
    assert_eq!(pull.graph.edge_count(), 12);
    assert_eq!(sorted_sizes(&pull), vec![4, 4, 8, 8]);
    assert_sphere(&pull);
    let check = check_subdivision(&base, &pull);
    assert!(check.ok, "{:?}", check.failure);
    let emb = check.embedding.unwrap();
    let oct = base.faces.iter().position(|f| f.len() == 8).unwrap();
    let mut inside: Vec<usize> =
        (0..pull.faces.len()).filter(|&f| emb.face_map[f] == oct).map(|f| pull.faces[f].len()).collect();
    inside.sort();
    assert_eq!(inside, vec![4, 4, 8]);
}

#[test]
fn rabbit_pair_rule_and_iteration() {
    let e = Engine::default();
    let m = mating(&e, "1/6", "1/6");
    let reg = StrategyRegistry::default();
    let fsr = construct(&m, reg.get("essential").unwrap()).unwrap();
    let rule = &fsr.rule;
    assert_eq!(rule.tile_types.len(), 2);
    let q = rule.type_named("quadrilateral").unwrap();
    let o = rule.type_named("octagon").unwrap();
    assert_eq!(rule.census[q][q], 0);
    assert_eq!(rule.census[q][o], 1);
    assert_eq!(rule.census[o][q], 2);
    assert_eq!(rule.census[o][o], 1);
    assert!(rule.ambiguous.is_empty());
    let it = iterate_rule(rule, &rule.initial, 4, 6).unwrap();
    let expect: Vec<Vec<u128>> = (0..=4).map(|k| vec![1u128 << k, 1u128 << k]).collect();
    assert_eq!(it.levels, expect);
    let two = iterate_rule(rule, &rule.initial, 2, 6).unwrap();
    let explicit = two.expanded_census(2).unwrap();
    assert_eq!(explicit.iter().map(|&x| x as u128).collect::<Vec<_>>(), two.levels[2]);
    let zero = iterate_rule(rule, &rule.initial, 0, 6).unwrap();
    assert_eq!(zero.levels, vec![vec![1, 1]]);
}

#[test]
fn octagon_pattern_is_a_disk() {
    let e = Engine::default();
    let m = mating(&e, "1/6", "1/6");
    let fsr = construct(&m, &Essential).unwrap();
    for t in &fsr.rule.tile_types {
        let n = t.pattern.subtiles.len();
        assert!(t.pattern.adjacency.len() + 1 >= n, "subtiles of {} are not connected", t.name);
    }
}

#[test]
fn non_example_is_obstructed_and_not_a_subdivision() {
    let e = Engine::default();
    let m = mating(&e, "7/8", "1/4");
    let part = m.essential_partition().unwrap();
    let raw = build_complex(&m, &quotient_skeleton(&m, &part).unwrap()).unwrap();
    assert_sphere(&raw);
    assert!(raw.face_sizes().contains(&2));
    let (input, base) = Essential.skeleton(&m, &part).unwrap();
    assert_sphere(&base);
    assert!(base.face_sizes().iter().all(|&s| s >= 3));
    assert_eq!(pullback_complex(&m, &input, &part).unwrap_err(), FsrError::ObstructedMating);
    let pull = pullback_complex_unchecked(&m, &input, &part).unwrap();
    assert_sphere(&pull);
    let check = check_subdivision(&base, &pull);
    assert!(!check.ok);
    assert!(check.failure.unwrap().contains("pinched"));
    match construct(&m, &Essential) {
        Err(FsrError::ObstructedMating) => {}
        other => panic!("expected ObstructedMating, got {:?}", other.map(|c| c.rule)),
    }
}

#[test]
fn interior_identifications_keep_the_skeleton_planar() {
    let e = Engine::default();
    for (x, y) in [("1/6", "5/14"), ("5/6", "9/14")] {
        let m = mating(&e, x, y);
        let part = m.essential_partition().unwrap();
        let (_, c) = Essential.skeleton(&m, &part).unwrap();
        assert_sphere(&c);
    }
}

#[test]
fn single_tree_repair_gives_ten_gon_rule() {
    let e = Engine::default();
    let m = mating(&e, "7/8", "1/4");
    let part = m.essential_partition().unwrap();
    let (_, base) = single_tree_skeleton(&m, Side::Alpha, &part).unwrap();
    assert_eq!(base.graph.vertex_count(), 6);
    assert_eq!(base.graph.edge_count(), 5);
    assert_eq!(base.face_sizes(), vec![10]);
    let reg = StrategyRegistry::default();
    let fsr = construct(&m, reg.get("single-tree-alpha").unwrap()).unwrap();
    assert_eq!(sorted_sizes(&fsr.pullback), vec![10, 10]);
    assert_eq!(fsr.rule.tile_types.len(), 1);
    assert_eq!(fsr.rule.tile_types[0].name, "10-gon");
    assert_eq!(fsr.rule.census, vec![vec![2]]);
    let it = iterate_rule(&fsr.rule, &[1], 3, 6).unwrap();
    assert_eq!(it.levels, vec![vec![1], vec![2], vec![4], vec![8]]);
}

#[test]
fn single_tree_fails_when_orbit_is_split() {
    let e = Engine::default();
    let m = mating(&e, "1/6", "1/6");
    let part = m.essential_partition().unwrap();
    match single_tree_skeleton(&m, Side::Alpha, &part) {
        Err(FsrError::CriterionFailed(why)) => assert!(why[0].contains("postcritical")),
        other => panic!("expected CriterionFailed, got {other:?}"),
    }
}

#[test]
fn formal_pair_has_disconnected_skeleton() {
    let e = Engine::default();
    let m = mating(&e, "1/6", "1/4");
    let part = m.essential_partition().unwrap();
    let err = quotient_skeleton(&m, &part).and_then(|i| build_complex(&m, &i)).unwrap_err();
    assert_eq!(err, FsrError::DisconnectedSkeleton);
}

#[test]
fn complex_embeds_in_itself() {
    let e = Engine::default();
    let m = mating(&e, "1/6", "1/6");
    let part = m.essential_partition().unwrap();
    let c = build_complex(&m, &quotient_skeleton(&m, &part).unwrap()).unwrap();
    let check = check_subdivision(&c, &c);
    assert!(check.ok);
    let emb = check.embedding.unwrap();
    assert_eq!(emb.vertex_map, (0..c.graph.vertex_count()).collect::<Vec<_>>());
    assert_eq!(emb.face_map, (0..c.faces.len()).collect::<Vec<_>>());
    let rule = extract_rule(&c, &c, &emb, &RuleImages::identity(&c)).unwrap();
    for (i, row) in rule.census.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            assert_eq!(x, u64::from(i == j));
        }
    }
}

#[test]
fn single_edge_is_a_digon_and_repair_fixes_it() {
    let e = Engine::default();
    let m = mating(&e, "1/2", "1/6");
    let input = SkeletonInput { trees: vec![(Side::Alpha, m.tree(Side::Alpha).clone())], classes: vec![] };
    let c = build_complex(&m, &input).unwrap();
    assert_eq!(c.face_sizes(), vec![2]);
    assert_sphere(&c);
    let (fixed, c2) = digon_repair(&m, input).unwrap();
    assert!(c2.face_sizes().iter().all(|&s| s >= 3));
    assert_sphere(&c2);
    let t = fixed.tree(Side::Alpha).unwrap();
    assert!(t.len() > 2);
    assert!(t.flags.iter().any(|f| f.extra));
}

#[test]
fn repair_leaves_good_complexes_alone() {
    let e = Engine::default();
    let m = mating(&e, "1/6", "1/6");
    let part = m.essential_partition().unwrap();
    let input = quotient_skeleton(&m, &part).unwrap();
    let before = build_complex(&m, &input).unwrap();
    let (_, after) = digon_repair(&m, input).unwrap();
    assert_eq!(before.face_sizes(), after.face_sizes());
    assert_eq!(before.graph.darts, after.graph.darts);
}

#[test]
fn trace_rejects_disconnected_graphs() {
    let e = Engine::default();
    let m = mating(&e, "1/6", "1/4");
    let input = SkeletonInput { trees: Side::BOTH.iter().map(|&s| (s, m.tree(s).clone())).collect(), classes: vec![] };
    let g = fsr_core::complexes::embed(&m, &input).unwrap();
    assert_eq!(trace_faces(g).unwrap_err(), FsrError::DisconnectedSkeleton);
}

#[test]
fn registry_lists_strategies() {
    let reg = StrategyRegistry::default();
    assert_eq!(reg.names(), vec!["essential", "single-tree-alpha", "single-tree-beta"]);
    assert!(reg.get("nope").is_none());
}
