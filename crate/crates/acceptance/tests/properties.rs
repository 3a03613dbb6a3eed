use fsr_acceptance::misiurewicz_angles;
use fsr_acceptance::oracle::{brute_tree, limb_wake};
use fsr_core::angle_dynamics::{Angle, Dendrite};
use fsr_core::Engine;
use proptest::prelude::*;

fn angle_upto(max_den: u64) -> impl Strategy<Value = Angle> {
    let all = misiurewicz_angles(max_den);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn cli(args: &[String]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fsr".to_string()).chain(args.iter().cloned());
    (fsr_cli::run_with(argv, &mut out, &mut err), out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn limb_matches_rotation_orbit_oracle(theta in angle_upto(60)) {
        let limb = Engine::default().limb(&theta).unwrap();
        if let Some((_, _, lo, hi)) = limb_wake(&theta, 12) {
            prop_assert_eq!(limb.wake, (lo, hi));
        }
    }

    #[test]
    fn cli_output_is_deterministic_and_cache_transparent(x in angle_upto(16), y in angle_upto(16)) {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path().to_string_lossy().into_owned();
        let pair = [x.to_string(), y.to_string()];
        for cmd in [["mate", "fsr"], ["mate", "pseudo-equator"]] {
            let args: Vec<String> = cmd.iter().map(|s| s.to_string()).chain(pair.iter().cloned()).collect();
            let plain = cli(&args);
            prop_assert_eq!(&cli(&args), &plain);
            let mut cached = vec!["--workspace".to_string(), dir.clone()];
            cached.extend(args.iter().cloned());
            prop_assert_eq!(&cli(&cached), &plain);
            prop_assert_eq!(&cli(&cached), &plain);
        }
    }
}

#[test]
fn every_small_tree_equals_brute_force_hull() {
    let engine = Engine::default();
    for theta in misiurewicz_angles(20) {
        let d = Dendrite::new(&theta).unwrap();
        let t = engine.tree(&theta).unwrap();
        let (verts, edges) = brute_tree(&d, 64, 10, 3);
        let mut mine: Vec<Vec<Angle>> = t.vertices.iter().map(|v| v.angles().to_vec()).collect();
        mine.sort();
        assert_eq!(mine, verts, "vertices of {theta}");
        let at = |i: usize| verts.iter().position(|v| v.as_slice() == t.vertices[i].angles()).unwrap();
        let mut mine_edges: Vec<(usize, usize)> =
            t.edges.iter().map(|&(i, j)| (at(i).min(at(j)), at(i).max(at(j)))).collect();
        mine_edges.sort();
        assert_eq!(mine_edges, edges, "edges of {theta}");
    }
}
