//! Pseudo-equators of essential matings: the curve through the postcritical set, its
//! edge replacement matrix and the external angles recovered from it.

use std::collections::BTreeSet;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::angle_dynamics::Angle;
use crate::complexes::{CWComplex2, RaySense};
use crate::error::{FsrError, Result};
use crate::mating::{EssentialPartition, Mating, RayClass, RayNode, Side};

/// A postcritical node together with the orbit angle that defines it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Member {
    pub node: RayNode,
    pub angle: Angle,
}

impl Member {
    pub fn ray(&self) -> Angle {
        self.node.side.ray(&self.angle)
    }
}

/// A point of the postcritical set of the mating.
#[derive(Clone, Debug, Serialize)]
pub struct EquatorPoint {
    pub members: Vec<Member>,
    /// Circle coordinate: the first alpha member's ray, else the first member's.
    pub position: Angle,
    /// Vertex of the skeleton holding the point.
    pub vertex: usize,
    pub class: Option<usize>,
}

impl EquatorPoint {
    pub fn holds(&self, n: &RayNode) -> bool {
        self.members.iter().any(|m| &m.node == n)
    }
}

/// An arc from `from` to the next point, running inside `face`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquatorArc {
    pub from: usize,
    pub to: usize,
    pub face: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquatorCurve {
    pub points: Vec<EquatorPoint>,
    pub edges: Vec<EquatorArc>,
    pub jordan: bool,
    /// Positions double along the dynamics: `2 x_i = x_{dynamics[i]}`.
    pub forward_consistent: bool,
    /// `dynamics[i]` is the index of the image of point `i`.
    pub dynamics: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PinchedClass {
    pub tau_index: usize,
    pub side: Side,
    pub nodes: Vec<RayNode>,
}

/// Classes holding several critical-orbit points of one polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct PinchReport {
    pub classes: Vec<PinchedClass>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EquatorOutcome {
    Jordan(EquatorCurve),
    Pinched(PinchReport),
}

pub fn pinch_report(mating: &Mating, partition: &EssentialPartition) -> PinchReport {
    let mut classes = Vec::new();
    for (k, c) in partition.tau_classes.iter().enumerate() {
        for side in Side::BOTH {
            let nodes: Vec<RayNode> = c.nodes_on(side).filter(|n| mating.is_critical_orbit(n)).cloned().collect();
            if nodes.len() >= 2 {
                classes.push(PinchedClass { tau_index: k, side, nodes });
            }
        }
    }
    PinchReport { classes }
}

fn class_index(classes: &[RayClass], n: &RayNode) -> Option<usize> {
    classes.iter().position(|c| c.contains(n))
}

/// The Jordan curve through the postcritical set, or the classes pinching it.
pub fn build_equator(mating: &Mating, complex: &CWComplex2, partition: &EssentialPartition) -> Result<EquatorOutcome> {
    let pinch = pinch_report(mating, partition);
    if !pinch.classes.is_empty() {
        return Ok(EquatorOutcome::Pinched(pinch));
    }
    let taus = &partition.tau_classes;
    let mut groups: Vec<(Option<usize>, Vec<Member>)> = Vec::new();
    for side in Side::BOTH {
        for t in mating.spec.theta(side).orbit().orbit {
            let node = mating.node(side, &t)?;
            let cls = class_index(taus, &node);
            let member = Member { node, angle: t };
            let slot = groups.iter_mut().find(|(c, ms)| match cls {
                Some(_) => *c == cls,
                None => ms.iter().any(|m| m.node == member.node),
            });
            match slot {
                Some((_, ms)) => {
                    if !ms.iter().any(|m| m.node == member.node) {
                        ms.push(member);
                    }
                }
                None => groups.push((cls, vec![member])),
            }
        }
    }
    let graph = &complex.graph;
    let mut points = Vec::with_capacity(groups.len());
    for (class, members) in groups {
        let lead = members.iter().find(|m| m.node.side == Side::Alpha).unwrap_or(&members[0]);
        let position = lead.ray();
        let vertex = graph.vertex_of_node(&members[0].node).ok_or_else(|| {
            FsrError::ConsistencyFailure(format!("postcritical point {} is not a skeleton vertex", members[0].node))
        })?;
        points.push(EquatorPoint { members, position, vertex, class });
    }
    points.sort_by(|a, b| a.position.cmp(&b.position));
    let n = points.len();

    let mut dynamics = Vec::with_capacity(n);
    for p in &points {
        let image = mating.image(&p.members[0].node)?;
        let j = points.iter().position(|q| q.holds(&image)).ok_or_else(|| {
            FsrError::ConsistencyFailure(format!("image {image} of a postcritical point is not postcritical"))
        })?;
        dynamics.push(j);
    }

    let corner_face = |p: &EquatorPoint, want: RaySense| -> Result<usize> {
        let x = p.members[0].ray();
        let hits: Vec<usize> = graph.rotation[p.vertex]
            .iter()
            .filter(|c| c.rays.iter().any(|r| r.ray == x && (r.sense == want || r.sense == RaySense::Both)))
            .map(|c| complex.face_of_corner(c.dart))
            .collect();
        match hits.as_slice() {
            [f] => Ok(*f),
            _ => Err(FsrError::ConsistencyFailure(format!("ray {x} meets {} corners at its vertex", hits.len()))),
        }
    };
    let mut above = Vec::with_capacity(n);
    let mut below = Vec::with_capacity(n);
    for p in &points {
        above.push(corner_face(p, RaySense::Above)?);
        below.push(corner_face(p, RaySense::Below)?);
    }
    let mut edges = Vec::with_capacity(n);
    let mut jordan = true;
    for i in 0..n {
        let j = (i + 1) % n;
        if above[i] != below[j] {
            jordan = false;
        }
        edges.push(EquatorArc { from: i, to: j, face: above[i] });
    }
    let distinct: BTreeSet<usize> = points.iter().map(|p| p.vertex).collect();
    jordan &= distinct.len() == n;
    let forward_consistent = (0..n).all(|i| points[i].position.double() == points[dynamics[i]].position);
    Ok(EquatorOutcome::Jordan(EquatorCurve { points, edges, jordan, forward_consistent, dynamics }))
}

/// An arc of the lifted curve between consecutive preimages of curve points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubEdge {
    /// Curve edge whose preimage contains this arc.
    pub parent: usize,
    pub from: Angle,
    pub to: Angle,
    /// Curve edge onto which the arc maps.
    pub image: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftedCurve {
    pub size: usize,
    /// Circle coordinates of the preimages of the curve points, ascending.
    pub preimages: Vec<Angle>,
    pub sub_edges: Vec<SubEdge>,
    /// Pairs of preimage indices identified at a critical point.
    pub crossings: Vec<(usize, usize)>,
}

/// Lifts the curve under the mating: preimages of the marked points cut the lifted
/// circle into sub-edges, each mapping onto one curve edge.
pub fn pullback_curve(mating: &Mating, curve: &EquatorCurve, partition: &EssentialPartition) -> Result<LiftedCurve> {
    if !curve.jordan {
        return Err(FsrError::ConsistencyFailure("curve is not a Jordan curve".into()));
    }
    if !curve.forward_consistent {
        return Err(FsrError::ConsistencyFailure("curve positions do not double along the dynamics".into()));
    }
    if !mating.obstruction_check(partition)?.is_clean() {
        return Err(FsrError::ObstructedMating);
    }
    let xs: Vec<Angle> = curve.points.iter().map(|p| p.position.clone()).collect();
    let n = xs.len();
    let pre: Vec<Angle> = xs
        .iter()
        .flat_map(|x| {
            let (a, b) = x.halves();
            [a, b]
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let m = pre.len();
    if let Some(x) = xs.iter().find(|x| pre.binary_search(x).is_err()) {
        return Err(FsrError::ConsistencyFailure(format!("curve point {x} is not a preimage of a curve point")));
    }
    let label: Vec<usize> =
        pre.iter().map(|y| xs.iter().position(|x| *x == y.double()).expect("half of a curve point")).collect();
    let mut sub_edges = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let mut k = pre.binary_search(x).expect("checked above");
        loop {
            let j = label[k];
            let next = (k + 1) % m;
            if pre[next].double() != xs[(j + 1) % n] {
                return Err(FsrError::ConsistencyFailure(format!(
                    "sub-edge from {} does not cover a curve edge",
                    pre[k]
                )));
            }
            sub_edges.push(SubEdge { parent: i, from: pre[k].clone(), to: pre[next].clone(), image: j });
            k = next;
            if pre[k] == xs[(i + 1) % n] {
                break;
            }
            if sub_edges.len() > m {
                return Err(FsrError::ConsistencyFailure("lifted curve does not close".into()));
            }
        }
    }
    let mut crossings = Vec::new();
    for side in Side::BOTH {
        let cv = mating.node(side, mating.spec.theta(side))?;
        if let Some(p) = curve.points.iter().find(|p| p.holds(&cv)) {
            let (h1, h2) = p.position.halves();
            if let (Ok(a), Ok(b)) = (pre.binary_search(&h1), pre.binary_search(&h2)) {
                crossings.push((a.min(b), a.max(b)));
            }
        }
    }
    crossings.sort();
    crossings.dedup();
    Ok(LiftedCurve { size: n, preimages: pre, sub_edges, crossings })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct EdgeReplacementMatrix {
    pub rows: Vec<Vec<u64>>,
}

impl EdgeReplacementMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn is_irreducible(&self) -> bool {
        let n = self.size();
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    let w = if forward { self.rows[i][j] } else { self.rows[j][i] };
                    if w > 0 && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        n > 0 && reach(true) && reach(false)
    }
}

/// `a[i][j]` = number of sub-edges over edge `i` mapping onto edge `j`.
pub fn replacement_matrix(lifted: &LiftedCurve) -> EdgeReplacementMatrix {
    let mut rows = vec![vec![0u64; lifted.size]; lifted.size];
    for s in &lifted.sub_edges {
        rows[s.parent][s.image] += 1;
    }
    EdgeReplacementMatrix { rows }
}

fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn serialize_ratios<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ratio_string))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeadingEigen {
    pub lambda: u64,
    #[serde(serialize_with = "serialize_ratios")]
    pub v: Vec<BigRational>,
}

/// Nullspace basis of a rational matrix by row reduction.
fn nullspace(mut m: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in &mut m[r] {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let d = &f * &m[r][k];
                    m[i][k] = &m[i][k] - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Smallest integer eigenvalue in `2..=bound` with a positive eigenvector, normalized to
/// sum one.
pub fn leading_eigen(a: &EdgeReplacementMatrix, bound: usize) -> Result<LeadingEigen> {
    if !a.is_irreducible() {
        return Err(FsrError::ReducibleMatrix);
    }
    let n = a.size();
    for lambda in 2..=bound as u64 {
        let shifted: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let x = BigInt::from(a.rows[i][j]) - if i == j { BigInt::from(lambda) } else { BigInt::zero() };
                        BigRational::from_integer(x)
                    })
                    .collect()
            })
            .collect();
        for v in nullspace(shifted) {
            let total: BigRational = v.iter().cloned().fold(BigRational::zero(), |s, x| s + x);
            if total.is_zero() {
                continue;
            }
            let v: Vec<BigRational> = v.into_iter().map(|x| x / &total).collect();
            if v.iter().all(Signed::is_positive) {
                return Ok(LeadingEigen { lambda, v });
            }
        }
    }
    Err(FsrError::NoIntegerEigenvalue { bound })
}

fn to_angle(r: &BigRational) -> Angle {
    let frac = r - r.floor();
    let num = frac.numer().to_biguint().expect("non-negative");
    let den = frac.denom().to_biguint().expect("positive");
    Angle::from_ratio(num, den).expect("nonzero denominator")
}

fn to_ratio(t: &Angle) -> BigRational {
    BigRational::new(
        BigInt::from_biguint(Sign::Plus, t.numerator().clone()),
        BigInt::from_biguint(Sign::Plus, t.denominator().clone()),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionResult {
    pub lambda: u64,
    #[serde(serialize_with = "serialize_ratios")]
    pub v: Vec<BigRational>,
    pub theta: Vec<Angle>,
    /// Curve points holding the alpha and the beta critical value.
    pub critical_values: (usize, usize),
    pub recovered_pair: (Angle, Angle),
}

/// Angles of the curve points from edge lengths: θ(p_i) = θ(p_0) + v_0 + … + v_{i-1},
/// with θ(p_0) forced by 2θ(p_i) = θ(p_σ(i)).
pub fn recover_angles(mating: &Mating, eigen: &LeadingEigen, curve: &EquatorCurve) -> Result<DecompositionResult> {
    let n = curve.points.len();
    if eigen.v.len() != n {
        return Err(FsrError::ConsistencyFailure(format!("{} edge lengths for {n} points", eigen.v.len())));
    }
    let mut partial = vec![BigRational::zero(); n];
    for i in 1..n {
        partial[i] = &partial[i - 1] + &eigen.v[i - 1];
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let candidates: Vec<Angle> =
        (0..n).map(|i| to_angle(&(&partial[curve.dynamics[i]] - &two * &partial[i]))).collect();
    let theta0 = candidates[0].clone();
    if candidates.iter().any(|c| *c != theta0) {
        let residuals: Vec<String> = candidates.iter().map(|c| c.sub(&theta0).to_string()).collect();
        return Err(FsrError::NoConsistentSolution(format!("θ(p_0) residuals [{}]", residuals.join(", "))));
    }
    let base = to_ratio(&theta0);
    let theta: Vec<Angle> = partial.iter().map(|s| to_angle(&(&base + s))).collect();
    for i in 0..n {
        if theta[i].double() != theta[curve.dynamics[i]] {
            return Err(FsrError::NoConsistentSolution(format!("doubling fails at p_{i}")));
        }
    }
    let find = |side: Side| -> Result<usize> {
        let cv = mating.node(side, mating.spec.theta(side))?;
        curve
            .points
            .iter()
            .position(|p| p.holds(&cv))
            .ok_or_else(|| FsrError::ConsistencyFailure(format!("critical value {cv} is not on the curve")))
    };
    let (ia, ib) = (find(Side::Alpha)?, find(Side::Beta)?);
    let recovered_pair = (theta[ia].clone(), theta[ib].negate());
    Ok(DecompositionResult {
        lambda: eigen.lambda,
        v: eigen.v.clone(),
        theta,
        critical_values: (ia, ib),
        recovered_pair,
    })
}

/// Everything from the curve to the recovered pair.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub curve: EquatorCurve,
    pub lifted: LiftedCurve,
    pub matrix: EdgeReplacementMatrix,
    pub result: DecompositionResult,
}

pub fn decompose(mating: &Mating, complex: &CWComplex2, partition: &EssentialPartition) -> Result<Decomposition> {
    let curve = match build_equator(mating, complex, partition)? {
        EquatorOutcome::Jordan(c) => c,
        EquatorOutcome::Pinched(_) => return Err(FsrError::Pinched),
    };
    let lifted = pullback_curve(mating, &curve, partition)?;
    let matrix = replacement_matrix(&lifted);
    let eigen = leading_eigen(&matrix, mating.config.eigen_bound)?;
    let result = recover_angles(mating, &eigen, &curve)?;
    Ok(Decomposition { curve, lifted, matrix, result })
}
