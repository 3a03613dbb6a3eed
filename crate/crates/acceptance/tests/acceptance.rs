//! One line per acceptance criterion, with the time it took against its budget.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use fsr_acceptance::misiurewicz_angles;
use fsr_acceptance::oracle::{brute_tree, limb_wake};
use fsr_acceptance::sweep::{pair_suite, tree_suite};
use fsr_core::angle_dynamics::{Angle, Dendrite};
use fsr_core::complexes::{
    build_complex, check_subdivision, construct, iterate_rule, quotient_skeleton, Essential, SingleTree,
};
use fsr_core::error::InvalidReason;
use fsr_core::mating::Side;
use fsr_core::pseudo_equator::{build_equator, decompose, EquatorOutcome};
use fsr_core::{Engine, FsrError};

type Check = fn() -> Result<String, String>;

fn a(s: &str) -> Angle {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: FsrError) -> String {
    e.to_string()
}

fn orbit_structure() -> Result<String, String> {
    let o = a("1/6").orbit();
    ensure(o.preperiod == 1 && o.period == 2, format!("preperiod {} period {}", o.preperiod, o.period))?;
    ensure(o.orbit == [a("1/6"), a("1/3"), a("2/3")], format!("orbit {:?}", o.orbit))?;
    let t = Engine::default().tree(&a("1/6")).map_err(err)?;
    let idx = |s: &str| t.vertices.iter().position(|v| v.contains(&a(s))).unwrap();
    let (c1, c2, c3) = (idx("1/6"), idx("1/3"), idx("2/3"));
    ensure(t.dynamics[c1] == c2 && t.dynamics[c2] == c3 && t.dynamics[c3] == c2, "c1 -> c2 -> c3 -> c2")?;
    Ok("orbit 1/6 -> 1/3 -> 2/3 -> 1/3".into())
}

fn tree_of_one_sixth() -> Result<String, String> {
    let d = Dendrite::new(&a("1/6")).map_err(err)?;
    let t = Engine::default().tree(&a("1/6")).map_err(err)?;
    let (verts, edges) = brute_tree(&d, 64, 8, 3);
    let mine: Vec<Vec<Angle>> = t.vertices.iter().map(|v| v.angles().to_vec()).collect();
    let mut sorted = mine.clone();
    sorted.sort();
    ensure(sorted == verts, format!("vertices {mine:?} vs oracle {verts:?}"))?;
    let mut mine_edges: Vec<(usize, usize)> = t
        .edges
        .iter()
        .map(|&(i, j)| {
            let (x, y) =
                (verts.iter().position(|v| *v == mine[i]).unwrap(), verts.iter().position(|v| *v == mine[j]).unwrap());
            (x.min(y), x.max(y))
        })
        .collect();
    mine_edges.sort();
    ensure(mine_edges == edges, format!("edges {mine_edges:?} vs oracle {edges:?}"))?;
    ensure(t.len() == 4, "four vertices")?;
    let branch =
        t.vertices.iter().position(|v| v.angles() == [a("1/7"), a("2/7"), a("4/7")]).ok_or("no branch class")?;
    ensure(t.neighbours(branch).len() == 3, "tripod")?;
    let crit = d.point(&a("1/12")).map_err(err)?;
    ensure(crit.angles() == [a("1/12"), a("7/12")] && t.on_tree(&crit), "critical class on tree")?;
    Ok("tripod about {1/7,2/7,4/7}, equal to brute-force hull".into())
}

fn partition_of_rabbit() -> Result<String, String> {
    let m = Engine::default().mating(&a("1/6"), &a("1/6")).map_err(err)?;
    let p = m.essential_partition().map_err(err)?;
    let got: Vec<String> = p.tau_classes.iter().map(|c| c.to_string()).collect();
    let want = [
        "[α{1/3} β{2/3}]",
        "[α{2/3} β{1/3}]",
        "[α{1/6} β{5/6}]",
        "[α{5/6} β{1/6}]",
        "[α{1/12,7/12} β{5/12} β{11/12}]",
        "[α{5/12} α{11/12} β{1/12,7/12}]",
    ];
    ensure(got == want, format!("{got:?}"))?;
    for c in &p.tau_classes {
        for n in &c.nodes {
            for t in n.point.angles() {
                let r = n.side.ray(t);
                let other = n.side.other();
                let partner = m.node(other, &other.own(&r)).map_err(err)?;
                ensure(c.contains(&partner), format!("{c} is not closed under ray pairing"))?;
            }
        }
    }
    Ok("6 classes, each closed under ray pairing".into())
}

fn skeleton_of_rabbit() -> Result<String, String> {
    let m = Engine::default().mating(&a("1/6"), &a("1/6")).map_err(err)?;
    let p = m.essential_partition().map_err(err)?;
    let c = build_complex(&m, &quotient_skeleton(&m, &p).map_err(err)?).map_err(err)?;
    let mut sizes = c.face_sizes();
    sizes.sort();
    let (v, e) = (c.graph.vertex_count(), c.graph.edge_count());
    ensure(v == 6 && e == 6 && sizes == [4, 8], format!("V={v} E={e} faces {sizes:?}"))?;
    Ok("V=6 E=6 faces {4,8}".into())
}

fn rule_of_rabbit() -> Result<String, String> {
    let m = Engine::default().mating(&a("1/6"), &a("1/6")).map_err(err)?;
    let f = construct(&m, &Essential).map_err(err)?;
    ensure(check_subdivision(&f.base, &f.pullback).ok, "check_subdivision")?;
    let q = f.rule.type_named("quadrilateral").ok_or("no quadrilateral")?;
    let o = f.rule.type_named("octagon").ok_or("no octagon")?;
    let c = &f.rule.census;
    ensure(c[q][q] == 0 && c[q][o] == 1 && c[o][q] == 2 && c[o][o] == 1, format!("census {c:?}"))?;
    let it = iterate_rule(&f.rule, &f.rule.initial, 4, 6).map_err(err)?;
    for k in 0..=3 {
        let want = 1u128 << k;
        ensure(it.levels[k][q] == want && it.levels[k][o] == want, format!("level {k}: {:?}", it.levels[k]))?;
    }
    let two = iterate_rule(&f.rule, &f.rule.initial, 2, 6).map_err(err)?;
    let explicit = two.expanded_census(2).ok_or("no expansion")?;
    ensure(explicit.iter().map(|&x| x as u128).eq(two.levels[2].iter().copied()), "explicit level 2")?;
    Ok("Q -> O, O -> 2Q + O; levels (1,1) (2,2) (4,4) (8,8)".into())
}

fn obstruction() -> Result<String, String> {
    let e = Engine::default();
    let m = e.mating(&a("7/8"), &a("1/4")).map_err(err)?;
    let r = m.obstruction_check(&m.essential_partition().map_err(err)?).map_err(err)?;
    ensure(!r.is_clean() && !r.witnesses.is_empty(), "(7/8,1/4) should be obstructed with a witness")?;
    let m = e.mating(&a("1/6"), &a("1/6")).map_err(err)?;
    ensure(m.obstruction_check(&m.essential_partition().map_err(err)?).map_err(err)?.is_clean(), "(1/6,1/6) clean")?;
    Ok(format!("(7/8,1/4) obstructed with {} witnesses; (1/6,1/6) clean", r.witnesses.len()))
}

fn single_tree_repair() -> Result<String, String> {
    let m = Engine::default().mating(&a("7/8"), &a("1/4")).map_err(err)?;
    let f = construct(&m, &SingleTree(Side::Alpha)).map_err(err)?;
    let names: Vec<&str> = f.rule.tile_types.iter().map(|t| t.name.as_str()).collect();
    ensure(names == ["10-gon"] && f.rule.census == [[2]], format!("{names:?} {:?}", f.rule.census))?;
    let (mut out, mut errs) = (Vec::new(), Vec::new());
    let code = fsr_cli::run_with(["fsr", "mate", "fsr", "7/8", "1/4", "--single-tree", "alpha"], &mut out, &mut errs);
    let v: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    ensure(code == 0 && v["result"]["tile_types"] == serde_json::json!(["10-gon"]), "CLI --single-tree alpha")?;
    Ok("one 10-gon type, subdivided into two 10-gons".into())
}

fn pseudo_equator_of_rabbit() -> Result<String, String> {
    let m = Engine::default().mating(&a("1/6"), &a("1/6")).map_err(err)?;
    let p = m.essential_partition().map_err(err)?;
    let c = build_complex(&m, &quotient_skeleton(&m, &p).map_err(err)?).map_err(err)?;
    let EquatorOutcome::Jordan(curve) = build_equator(&m, &c, &p).map_err(err)? else {
        return Err("pinched".into());
    };
    ensure(curve.jordan && curve.points.len() == 4, "Jordan curve through 4 points")?;
    let d = decompose(&m, &c, &p).map_err(err)?;
    let paper = [[0u64, 1, 0, 0], [1, 0, 1, 1], [0, 1, 0, 0], [1, 0, 1, 1]];
    let cyclic = (0..4).any(|s| (0..4).all(|i| (0..4).all(|j| d.matrix.rows[(i + s) % 4][(j + s) % 4] == paper[i][j])));
    ensure(cyclic, format!("matrix {:?}", d.matrix.rows))?;
    let r = &d.result;
    let v: Vec<String> = r.v.iter().map(|x| x.to_string()).collect();
    let theta: Vec<String> = r.theta.iter().map(|x| x.to_string()).collect();
    ensure(r.lambda == 2 && v == ["1/6", "1/3", "1/6", "1/3"], format!("lambda {} v {v:?}", r.lambda))?;
    ensure(theta == ["1/6", "1/3", "2/3", "5/6"], format!("theta {theta:?}"))?;
    ensure(r.recovered_pair == (a("1/6"), a("1/6")), "recovered pair")?;
    Ok("lambda 2, v (1/6,1/3,1/6,1/3), theta (1/6,1/3,2/3,5/6), pair (1/6,1/6)".into())
}

fn pinch_detection() -> Result<String, String> {
    let m = Engine::default().mating(&a("1/6"), &a("13/14")).map_err(err)?;
    let p = m.essential_partition().map_err(err)?;
    let (_, c) = fsr_core::complexes::SkeletonStrategy::skeleton(&Essential, &m, &p).map_err(err)?;
    let EquatorOutcome::Pinched(report) = build_equator(&m, &c, &p).map_err(err)? else {
        return Err("expected a pinch".into());
    };
    let (mut out, mut errs) = (Vec::new(), Vec::new());
    let code = fsr_cli::run_with(["fsr", "mate", "pseudo-equator", "1/6", "13/14"], &mut out, &mut errs);
    ensure(code == 4, format!("CLI exit {code}"))?;
    Ok(format!("{} pinched classes; CLI exit 4", report.classes.len()))
}

fn validity_gate() -> Result<String, String> {
    let e = Engine::default();
    match e.validate(&a("1/4"), &a("3/4")) {
        Err(FsrError::InvalidMating { reason: InvalidReason::ConjugateLimbs, .. }) => {}
        other => return Err(format!("(1/4,3/4): {other:?}")),
    }
    let wake = e.limb(&a("1/6")).map_err(err)?.wake;
    let (p, q, lo, hi) = limb_wake(&a("1/6"), 16).ok_or("oracle found no limb")?;
    ensure(
        wake == (lo.clone(), hi.clone()) && wake == (a("1/7"), a("2/7")),
        format!("wake {wake:?} oracle {lo} {hi}"),
    )?;
    Ok(format!("(1/4,3/4) conjugate; limb {p}/{q} wake (1/7, 2/7)"))
}

fn tree_properties() -> Result<String, String> {
    let angles = misiurewicz_angles(120);
    let t = tree_suite(&Engine::default(), &angles);
    let line = format!("{} angles: {t}", angles.len());
    if t.is_ok() {
        Ok(line)
    } else {
        Err(line)
    }
}

fn pair_properties() -> Result<String, String> {
    let angles = misiurewicz_angles(30);
    let t = pair_suite(&Engine::default(), &angles, 4);
    let line = format!("{} angles: {t}", angles.len());
    if t.is_ok() {
        Ok(line)
    } else {
        Err(line)
    }
}

fn main() {
    let ms = Duration::from_millis;
    let criteria: [(&str, &str, Duration, Check); 12] = [
        ("1", "orbit structure", ms(1000), orbit_structure),
        ("2", "tree of f_1/6", ms(1000), tree_of_one_sixth),
        ("3", "essential partition of (1/6,1/6)", ms(1000), partition_of_rabbit),
        ("4", "skeleton of (1/6,1/6)", ms(1000), skeleton_of_rabbit),
        ("5", "subdivision rule of (1/6,1/6)", ms(5000), rule_of_rabbit),
        ("6", "obstruction", ms(5000), obstruction),
        ("7", "single-tree repair", ms(5000), single_tree_repair),
        ("8", "pseudo-equator of (1/6,1/6)", ms(5000), pseudo_equator_of_rabbit),
        ("9", "pinch detection", ms(5000), pinch_detection),
        ("10", "validity gate", ms(1000), validity_gate),
        ("11a", "property suite: trees, denominator <= 120", ms(60_000), tree_properties),
        ("11b", "property suite: pairs, denominator <= 30", ms(60_000), pair_properties),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check));
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(Ok(d)) if took <= budget => (true, d),
            Ok(Ok(d)) => (false, format!("over budget: {d}")),
            Ok(Err(d)) => (false, d),
            Err(_) => (false, "panicked".into()),
        };
        failed += usize::from(!ok);
        println!("{} criterion {id:<3} {name} [{took:.2?} / {budget:?}] {detail}", if ok { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
