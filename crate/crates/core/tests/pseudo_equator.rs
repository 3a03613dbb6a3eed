use fsr_core::angle_dynamics::Angle;
use fsr_core::complexes::{build_complex, quotient_skeleton, CWComplex2};
use fsr_core::mating::{EssentialPartition, Mating};
use fsr_core::pseudo_equator::{
    build_equator, decompose, leading_eigen, pullback_curve, recover_angles, replacement_matrix, EdgeReplacementMatrix,
    EquatorCurve, EquatorOutcome,
};
use fsr_core::{Engine, FsrError};
use num_rational::BigRational;

fn a(s: &str) -> Angle {
    s.parse().unwrap()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn setup(e: &Engine, x: &str, y: &str) -> (Mating, EssentialPartition, CWComplex2) {
    let m = e.mating(&a(x), &a(y)).unwrap();
    let part = m.essential_partition().unwrap();
    let c = build_complex(&m, &quotient_skeleton(&m, &part).unwrap()).unwrap();
    (m, part, c)
}

fn jordan(m: &Mating, part: &EssentialPartition, c: &CWComplex2) -> EquatorCurve {
    match build_equator(m, c, part).unwrap() {
        EquatorOutcome::Jordan(curve) => curve,
        EquatorOutcome::Pinched(p) => panic!("unexpected pinch {p:?}"),
    }
}

fn matrix(rows: &[&[u64]]) -> EdgeReplacementMatrix {
    EdgeReplacementMatrix { rows: rows.iter().map(|r| r.to_vec()).collect() }
}

#[test]
fn rabbit_pair_equator_has_four_points() {
    let e = Engine::default();
    let (m, part, c) = setup(&e, "1/6", "1/6");
    let curve = jordan(&m, &part, &c);
    assert!(curve.jordan);
    assert!(curve.forward_consistent);
    let pos: Vec<String> = curve.points.iter().map(|p| p.position.to_string()).collect();
    assert_eq!(pos, ["1/6", "1/3", "2/3", "5/6"]);
    assert_eq!(curve.edges.len(), 4);
    for (i, arc) in curve.edges.iter().enumerate() {
        assert_eq!((arc.from, arc.to), (i, (i + 1) % 4));
    }
    for i in 0..4 {
        let image = &curve.points[curve.dynamics[i]].position;
        assert_eq!(curve.points[i].position.double(), *image);
    }
}

#[test]
fn rabbit_pair_matrix_eigen_and_recovery() {
    let e = Engine::default();
    let (m, part, c) = setup(&e, "1/6", "1/6");
    let curve = jordan(&m, &part, &c);
    let lifted = pullback_curve(&m, &curve, &part).unwrap();
    assert_eq!(lifted.crossings.len(), 2);
    let mat = replacement_matrix(&lifted);
    assert_eq!(mat, matrix(&[&[0, 1, 0, 0], &[1, 0, 1, 1], &[0, 1, 0, 0], &[1, 0, 1, 1]]));
    let total: u64 = mat.rows.iter().flatten().sum();
    assert_eq!(total as usize, lifted.sub_edges.len());
    assert!(mat.rows.iter().all(|row| row.iter().sum::<u64>() >= 1));
    let eig = leading_eigen(&mat, 16).unwrap();
    assert_eq!(eig.lambda, 2);
    assert_eq!(eig.v, vec![r(1, 6), r(1, 3), r(1, 6), r(1, 3)]);
    let res = recover_angles(&m, &eig, &curve).unwrap();
    let theta: Vec<String> = res.theta.iter().map(|t| t.to_string()).collect();
    assert_eq!(theta, ["1/6", "1/3", "2/3", "5/6"]);
    assert_eq!(res.critical_values, (0, 3));
    assert_eq!(res.recovered_pair, (a("1/6"), a("1/6")));
}

#[test]
fn quarter_pair_matrix() {
    let e = Engine::default();
    let (m, part, c) = setup(&e, "1/4", "1/4");
    let d = decompose(&m, &c, &part).unwrap();
    assert_eq!(d.matrix, matrix(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[1, 1, 0, 0], &[0, 0, 1, 1]]));
    assert_eq!(d.result.lambda, 2);
    assert_eq!(d.result.recovered_pair, (a("1/4"), a("1/4")));
}

#[test]
fn pinched_pair_is_reported() {
    let e = Engine::default();
    let (m, part, c) = setup(&e, "1/6", "13/14");
    match build_equator(&m, &c, &part).unwrap() {
        EquatorOutcome::Pinched(p) => {
            assert!(!p.classes.is_empty());
            for k in &p.classes {
                assert!(k.nodes.len() >= 2);
                assert!(k.nodes.iter().all(|n| n.side == k.side));
            }
        }
        EquatorOutcome::Jordan(_) => panic!("expected a pinch"),
    }
    assert_eq!(decompose(&m, &c, &part).unwrap_err(), FsrError::Pinched);
}

#[test]
fn eigen_contracts() {
    assert_eq!(
        leading_eigen(&matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 16).unwrap_err(),
        FsrError::ReducibleMatrix
    );
    let one = leading_eigen(&matrix(&[&[2]]), 16).unwrap();
    assert_eq!((one.lambda, one.v.clone()), (2, vec![r(1, 1)]));
    assert_eq!(
        leading_eigen(&matrix(&[&[1, 1], &[1, 1]]), 16).unwrap(),
        fsr_core::pseudo_equator::LeadingEigen { lambda: 2, v: vec![r(1, 2), r(1, 2)] }
    );
    assert_eq!(
        leading_eigen(&matrix(&[&[0, 1], &[1, 0]]), 16).unwrap_err(),
        FsrError::NoIntegerEigenvalue { bound: 16 }
    );
}

#[test]
fn serialized_result_uses_exact_strings() {
    let e = Engine::default();
    let (m, part, c) = setup(&e, "1/6", "1/6");
    let d = decompose(&m, &c, &part).unwrap();
    let json = serde_json::to_value(&d.result).unwrap();
    assert_eq!(json["v"], serde_json::json!(["1/6", "1/3", "1/6", "1/3"]));
    assert_eq!(json["theta"][3], "5/6");
    assert_eq!(json["recovered_pair"], serde_json::json!(["1/6", "1/6"]));
    assert_eq!(json["lambda"], 2);
}
