use fsr_core::angle_dynamics::{Angle, Dendrite};
use fsr_core::hubbard_tree::*;
use fsr_core::FsrError;

const B: usize = DEFAULT_TRIOD_BOUND;

fn a(s: &str) -> Angle {
    s.parse().unwrap()
}

fn pt(d: &Dendrite, s: &str) -> JuliaPoint {
    d.point(&a(s)).unwrap()
}

fn sets(t: &PlanarTree) -> Vec<String> {
    t.vertices.iter().map(|v| v.to_string()).collect()
}

fn edge_sets(t: &PlanarTree) -> Vec<(String, String)> {
    t.edges.iter().map(|&(i, j)| (t.vertices[i].to_string(), t.vertices[j].to_string())).collect()
}

#[test]
fn triod_examples() {
    let d = Dendrite::new(&a("1/6")).unwrap();
    let (c1, c2, c3) = (pt(&d, "1/6"), pt(&d, "1/3"), pt(&d, "2/3"));
    let alpha = triod_middle(&d, &c1, &c2, &c3, B).unwrap();
    assert_eq!(alpha.to_string(), "{1/7,2/7,4/7}");
    assert_eq!(triod_middle(&d, &c1, &c1, &c2, B).unwrap(), c1);
    let crit = d.critical_point();
    assert_eq!(triod_middle(&d, &alpha, &c3, &crit, B).unwrap(), crit);
}

#[test]
fn triod_is_symmetric() {
    let d = Dendrite::new(&a("7/8")).unwrap();
    let pts: Vec<JuliaPoint> = ["7/8", "3/4", "1/2", "0/1", "1/16", "5/12"].iter().map(|s| pt(&d, s)).collect();
    for x in &pts {
        for y in &pts {
            for z in &pts {
                let m = triod_middle(&d, x, y, z, B).unwrap();
                assert_eq!(triod_middle(&d, y, z, x, B).unwrap(), m);
                assert_eq!(triod_middle(&d, z, y, x, B).unwrap(), m);
            }
        }
    }
}

#[test]
fn tree_of_one_sixth_is_a_tripod() {
    let d = Dendrite::new(&a("1/6")).unwrap();
    let t = build_tree(&d, B).unwrap();
    assert_eq!(sets(&t), ["{1/7,2/7,4/7}", "{1/6}", "{1/3}", "{2/3}"]);
    assert_eq!(t.edges, vec![(0, 1), (0, 2), (0, 3)]);
    assert!(t.flags[0].branch && !t.flags[0].postcritical);
    assert!(t.flags[1..].iter().all(|f| f.postcritical));
    assert!(t.on_tree(&d.critical_point()));
    assert!(!t.contains(&d.critical_point()));
    assert!(t.invariant_violations(&d).is_empty());
}

#[test]
fn on_tree_examples() {
    let d = Dendrite::new(&a("1/6")).unwrap();
    let t = build_tree(&d, B).unwrap();
    assert!(t.on_tree(&pt(&d, "1/7")));
    assert!(!t.on_tree(&pt(&d, "5/6")));
    assert!(t.on_tree(&pt(&d, "1/12")));
    assert!(!t.on_tree(&pt(&d, "5/12")));
    assert!(!t.on_tree(&pt(&d, "1/24")));
    assert!(t.on_tree(&pt(&d, "7/24")));
}

#[test]
fn tree_of_one_quarter() {
    // The period-three fixed point separates all three postcritical points.
    let d = Dendrite::new(&a("1/4")).unwrap();
    let t = build_tree(&d, B).unwrap();
    assert_eq!(sets(&t), ["{0/1}", "{1/7,2/7,4/7}", "{1/4}", "{1/2}"]);
    assert_eq!(t.edges, vec![(0, 1), (1, 2), (1, 3)]);
}

#[test]
fn tree_of_seven_eighths() {
    let d = Dendrite::new(&a("7/8")).unwrap();
    let t = build_tree(&d, B).unwrap();
    assert_eq!(sets(&t), ["{0/1}", "{7/15,11/15,13/15,14/15}", "{1/2}", "{3/4}", "{7/8}"]);
    let centre = 1;
    assert_eq!(t.neighbours(centre).len(), 4);
    assert!(t.invariant_violations(&d).is_empty());
}

#[test]
fn tree_of_thirteen_fourteenths() {
    let d = Dendrite::new(&a("13/14")).unwrap();
    let t = build_tree(&d, B).unwrap();
    assert_eq!(t.len(), 5);
    let centre = t.index_of(&pt(&d, "7/15")).unwrap();
    assert_eq!(t.neighbours(centre).len(), 4);
}

#[test]
fn tree_of_one_half_is_an_edge() {
    let d = Dendrite::new(&a("1/2")).unwrap();
    let t = build_tree(&d, B).unwrap();
    assert_eq!(edge_sets(&t), [("{0/1}".to_string(), "{1/2}".to_string())]);
}

#[test]
fn extend_marking_examples() {
    let d = Dendrite::new(&a("1/6")).unwrap();
    let t = build_tree(&d, B).unwrap();
    let crit = d.critical_point();
    let t2 = extend_marking(&d, &t, std::slice::from_ref(&crit), B).unwrap();
    assert_eq!(t2.len(), 5);
    assert_eq!(t2.edges.len(), 4);
    let k = t2.index_of(&crit).unwrap();
    let mut nb: Vec<String> = t2.neighbours(k).iter().map(|&j| t2.vertices[j].to_string()).collect();
    nb.sort();
    assert_eq!(nb, ["{1/7,2/7,4/7}", "{2/3}"]);
    assert!(t2.flags[k].critical && t2.flags[k].extra);

    let same = extend_marking(&d, &t, &[pt(&d, "1/6")], B).unwrap();
    assert_eq!(sets(&same), sets(&t));
    assert_eq!(same.edges, t.edges);

    let err = extend_marking(&d, &t, &[pt(&d, "5/6")], B).unwrap_err();
    assert!(matches!(err, FsrError::NotOnTree(_)));
}

#[test]
fn lifted_tripod() {
    let d = Dendrite::new(&a("1/6")).unwrap();
    let t = build_tree(&d, B).unwrap();
    let l = lift_tree(&d, &t, B).unwrap();
    assert_eq!(l.tree.len(), 2 * 4 - 1);
    assert_eq!(l.tree.vertices[l.critical_class], d.critical_point());
    for v in &t.vertices {
        assert!(l.tree.contains(v));
    }
    check_two_copies(&t, &l);
}

#[test]
fn lifted_quarter_tree() {
    let d = Dendrite::new(&a("1/4")).unwrap();
    let t = build_tree(&d, B).unwrap();
    let l = lift_tree(&d, &t, B).unwrap();
    check_two_copies(&t, &l);
}

fn check_two_copies(t: &HubbardTree, l: &DoubledTree) {
    let n = l.tree.len();
    let c = l.critical_class;
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if s == c || comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = count;
        while let Some(x) = stack.pop() {
            for &y in l.tree.neighbours(x) {
                if y != c && comp[y] == usize::MAX {
                    comp[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    for k in 0..count {
        let mut img: Vec<usize> =
            (0..n).filter(|&i| comp[i] == k || i == c).map(|i| l.projection[i].unwrap()).collect();
        img.sort();
        let len = img.len();
        img.dedup();
        assert_eq!(img.len(), len, "projection not injective on a copy");
        assert_eq!(img, (0..t.len()).collect::<Vec<_>>(), "copy does not cover the base");
    }
    assert!(count >= 2);
}
