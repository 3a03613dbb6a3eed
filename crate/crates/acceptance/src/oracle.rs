//! Brute-force references: rotation orbits by exhaustive search and Hubbard trees as
//! hulls found by testing every candidate point against the postcritical set.

use std::collections::BTreeSet;

use fsr_core::angle_dynamics::{Angle, Dendrite};

/// The period-`q` doubling cycle with combinatorial rotation number `p/q`, found by
/// scanning every angle `k/(2^q-1)`.
pub fn rotation_orbit(p: u64, q: u64) -> Option<Vec<Angle>> {
    let m = (1u64 << q) - 1;
    for k in 1..m {
        let mut orbit = vec![k];
        let mut x = (2 * k) % m;
        while x != k && orbit.len() <= q as usize {
            orbit.push(x);
            x = (2 * x) % m;
        }
        if orbit.len() != q as usize {
            continue;
        }
        let mut sorted = orbit.clone();
        sorted.sort();
        // Doubling moves every point `p` places around the cycle.
        let rotates = orbit.iter().all(|&y| {
            let i = sorted.iter().position(|&z| z == y).unwrap();
            sorted[(i + p as usize) % q as usize] == (2 * y) % m
        });
        if rotates {
            return Some(sorted.into_iter().map(|y| Angle::new(y, m)).collect());
        }
    }
    None
}

fn to_pair(a: &Angle) -> (u128, u128) {
    let n: u128 = a.numerator().to_string().parse().expect("small numerator");
    let d: u128 = a.denominator().to_string().parse().expect("small denominator");
    (n, d)
}

fn less(a: &Angle, b: &Angle) -> bool {
    let ((an, ad), (bn, bd)) = (to_pair(a), to_pair(b));
    an * bd < bn * ad
}

/// Length of the counterclockwise arc from `a` to `b`, as a fraction.
fn gap(a: &Angle, b: &Angle) -> (u128, u128) {
    let ((an, ad), (bn, bd)) = (to_pair(a), to_pair(b));
    let d = ad * bd;
    let (x, y) = (an * bd, bn * ad);
    (if y > x { y - x } else { y + d - x }, d)
}

/// The wake `(t-, t+)` of the `p/q` limb containing `theta`, searching `q <= max_q`:
/// the shortest gap of the rotation orbit.
pub fn limb_wake(theta: &Angle, max_q: u64) -> Option<(u64, u64, Angle, Angle)> {
    for q in 2..=max_q {
        for p in 1..q {
            if crate::gcd(p, q) != 1 {
                continue;
            }
            let Some(orbit) = rotation_orbit(p, q) else { continue };
            let n = orbit.len();
            let (lo, hi) = (0..n)
                .map(|i| (&orbit[i], &orbit[(i + 1) % n]))
                .min_by(|x, y| {
                    let (gx, gy) = (gap(x.0, x.1), gap(y.0, y.1));
                    (gx.0 * gy.1).cmp(&(gy.0 * gx.1))
                })
                .unwrap();
            let inside =
                if less(lo, hi) { less(lo, theta) && less(theta, hi) } else { less(lo, theta) || less(theta, hi) };
            if inside {
                return Some((p, q, lo.clone(), hi.clone()));
            }
        }
    }
    None
}

/// `x` (a set of angles landing together) separates `a` from `b` when the rays of `x`
/// put a ray of `a` and a ray of `b` into different complementary arcs.
pub fn separates(x: &[Angle], a: &[Angle], b: &[Angle]) -> bool {
    let arc = |t: &Angle| x.iter().filter(|s| !less(t, s)).count() % x.len();
    let (ra, rb) = (arc(&a[0]), arc(&b[0]));
    let shared = |u: &[Angle]| u.iter().any(|t| x.contains(t));
    !shared(a) && !shared(b) && ra != rb
}

/// The Hubbard tree by brute force. Candidates are landing classes of every angle with
/// denominator at most `max_den`, and of every periodic angle of period at most
/// `max_period` together with its iterated preimages down to `max_preperiod`; a candidate is a vertex when it is postcritical,
/// splits the postcritical points into at least three groups, or is a forward image of
/// such a branch point. Two vertices are joined when no other vertex separates them.
pub fn brute_tree(
    d: &Dendrite,
    max_den: u64,
    max_period: u32,
    max_preperiod: u32,
) -> (Vec<Vec<Angle>>, Vec<(usize, usize)>) {
    let post: Vec<Vec<Angle>> =
        d.theta().orbit().orbit.iter().map(|t| d.landing_class(t).expect("landing class")).collect();
    let mut candidates: BTreeSet<Angle> = BTreeSet::new();
    for q in 2..=max_den {
        candidates.extend((0..q).map(|p| Angle::new(p, q)));
    }
    for n in 1..=max_period {
        for j in 0..=max_preperiod {
            let den = ((1u64 << n) - 1) << j;
            candidates.extend((0..den).map(|k| Angle::new(k, den)));
        }
    }
    let mut classes: BTreeSet<Vec<Angle>> = post.iter().cloned().collect();
    let mut covered: BTreeSet<Angle> = BTreeSet::new();
    for t in &candidates {
        if covered.contains(t) {
            continue;
        }
        if let Ok(c) = d.landing_class(t) {
            covered.extend(c.iter().cloned());
            classes.insert(c);
        }
    }
    let mut vertices: Vec<Vec<Angle>> = Vec::new();
    for c in &classes {
        if post.contains(c) {
            vertices.push(c.clone());
            continue;
        }
        let mut groups: BTreeSet<usize> = BTreeSet::new();
        let arc = |t: &Angle| c.iter().filter(|s| !less(t, s)).count() % c.len();
        for p in &post {
            groups.insert(arc(&p[0]));
        }
        if c.len() >= 3 && groups.len() >= 3 {
            vertices.push(c.clone());
        }
    }
    let mut k = 0;
    while k < vertices.len() {
        let image = d.landing_class(&vertices[k][0].double()).expect("landing class");
        if !vertices.contains(&image) {
            vertices.push(image);
        }
        k += 1;
    }
    vertices.sort();
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let blocked =
                (0..vertices.len()).any(|k| k != i && k != j && separates(&vertices[k], &vertices[i], &vertices[j]));
            if !blocked {
                edges.push((i, j));
            }
        }
    }
    (vertices, edges)
}
