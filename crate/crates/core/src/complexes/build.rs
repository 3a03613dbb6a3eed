use std::collections::BTreeSet;

use serde::Serialize;

use crate::angle_dynamics::Angle;
use crate::error::{FsrError, Result};
use crate::hubbard_tree::{build_marked_tree, extend_marking, HubbardTree, JuliaPoint};
use crate::mating::{EssentialPartition, Mating, RayClass, Side};

use super::graph::{trace_faces, CWComplex2, EmbeddedGraph, SkeletonTree};

/// Marked trees and the classes gluing them, from which a skeleton is built.
#[derive(Clone, Debug, Serialize)]
pub struct SkeletonInput {
    pub trees: Vec<(Side, HubbardTree)>,
    #[serde(skip)]
    pub classes: Vec<RayClass>,
}

impl SkeletonInput {
    pub fn tree(&self, side: Side) -> Option<&HubbardTree> {
        self.trees.iter().find(|(s, _)| *s == side).map(|(_, t)| t)
    }
}

/// The glued graph of the input trees.
pub fn embed(mating: &Mating, input: &SkeletonInput) -> Result<EmbeddedGraph> {
    let trees = input.trees.iter().map(|(side, t)| SkeletonTree { side: *side, tree: t.tree.clone() }).collect();
    EmbeddedGraph::build(mating, trees, input.classes.clone())
}

pub fn build_complex(mating: &Mating, input: &SkeletonInput) -> Result<CWComplex2> {
    trace_faces(embed(mating, input)?)
}

/// Both Hubbard trees glued along the τ classes.
///
/// Where a class meets the trees at two or more points, its on-tree points that are
/// not yet vertices are marked, with their forward orbits, so that every identification
/// happens at a vertex.
pub fn quotient_skeleton(mating: &Mating, partition: &EssentialPartition) -> Result<SkeletonInput> {
    if partition.is_empty() {
        return Err(FsrError::DisconnectedSkeleton);
    }
    let mut trees = Vec::new();
    for side in Side::BOTH {
        let base = mating.tree(side);
        let mut extra: BTreeSet<JuliaPoint> = BTreeSet::new();
        for c in &partition.tau_classes {
            let on: Vec<_> = c.nodes.iter().filter(|n| mating.tree(n.side).on_tree(&n.point)).collect();
            if on.len() >= 2 {
                extra.extend(
                    on.into_iter().filter(|n| n.side == side && !base.contains(&n.point)).map(|n| n.point.clone()),
                );
            }
        }
        let tree = if extra.is_empty() {
            base.clone()
        } else {
            let extra: Vec<JuliaPoint> = extra.into_iter().collect();
            extend_marking(mating.dendrite(side), base, &extra, mating.config.triod_bound)?
        };
        trees.push((side, tree));
    }
    Ok(SkeletonInput { trees, classes: partition.tau_classes.clone() })
}

/// One side's tree, quotiented by the τ classes, standing in for the whole skeleton.
///
/// Fails unless every critical-orbit node of the mating is represented on the tree
/// and the resulting complex is planar, connected and forward invariant.
pub fn single_tree_skeleton(
    mating: &Mating,
    side: Side,
    partition: &EssentialPartition,
) -> Result<(SkeletonInput, CWComplex2)> {
    let base = mating.tree(side);
    let mut extra: BTreeSet<JuliaPoint> = BTreeSet::new();
    for c in &partition.tau_classes {
        if c.contains_critical_orbit() {
            extra.extend(c.nodes_on(side).filter(|n| base.on_tree(&n.point)).map(|n| n.point.clone()));
        }
    }
    let extra: Vec<JuliaPoint> = extra.into_iter().collect();
    let tree = build_marked_tree(mating.dendrite(side), &extra, mating.config.triod_bound)?;

    let mut failures = Vec::new();
    let represented = |n: &crate::mating::RayNode| {
        if n.side == side {
            return tree.contains(&n.point);
        }
        partition
            .class_of(n)
            .map(|k| partition.tau_classes[k].nodes_on(side).any(|m| tree.contains(&m.point)))
            .unwrap_or(false)
    };
    let mut orbit: Vec<_> = mating.postcritical_nodes().to_vec();
    orbit.extend(Side::BOTH.map(|s| mating.critical_node(s)));
    let missing: Vec<String> = orbit.iter().filter(|n| !represented(n)).map(|n| n.to_string()).collect();
    if !missing.is_empty() {
        failures.push(format!("contains the postcritical set: missing {}", missing.join(", ")));
        return Err(FsrError::CriterionFailed(failures));
    }

    let input = SkeletonInput { trees: vec![(side, tree)], classes: partition.tau_classes.clone() };
    let complex = match build_complex(mating, &input) {
        Ok(c) => c,
        Err(FsrError::DisconnectedSkeleton) => {
            return Err(FsrError::CriterionFailed(vec!["connected".into()]));
        }
        Err(FsrError::EulerViolation { .. }) => {
            return Err(FsrError::CriterionFailed(vec!["planar".into()]));
        }
        Err(e) => return Err(e),
    };
    let pull = super::pullback::pullback_complex_unchecked(mating, &input, partition)?;
    let check = super::pullback::check_subdivision(&complex, &pull);
    if !check.ok {
        failures.push(format!("forward invariant: {}", check.failure.unwrap_or_default()));
        return Err(FsrError::CriterionFailed(failures));
    }
    Ok((input, complex))
}

/// Marks a point inside an edge of every face with fewer than three sides until none
/// remains.
pub fn digon_repair(mating: &Mating, input: SkeletonInput) -> Result<(SkeletonInput, CWComplex2)> {
    let mut input = input;
    let attempts = mating.config.repair_attempts;
    for _ in 0..=attempts {
        let complex = build_complex(mating, &input)?;
        let Some(face) = complex.faces.iter().find(|f| f.len() < 3) else {
            return Ok((input, complex));
        };
        let edges: Vec<_> = face.iter().map(|&d| complex.graph.darts[d]).collect();
        let (k, p) = repair_point(mating, &input, &edges)?;
        let (side, tree) = &input.trees[k];
        let marked = extend_marking(mating.dendrite(*side), tree, &[p], mating.config.triod_bound)?;
        input.trees[k].1 = marked;
    }
    Err(FsrError::RepairFailed { attempts })
}

/// Smallest-denominator strictly preperiodic point interior to one of `edges`, skipping
/// points that a class would merge away. Small denominators are scanned directly; when
/// the edges are too short for those, iterated preimages of the tree vertices are used.
fn repair_point(mating: &Mating, input: &SkeletonInput, edges: &[super::graph::Dart]) -> Result<(usize, JuliaPoint)> {
    let trees: BTreeSet<usize> = edges.iter().map(|e| e.tree).collect();
    let hit = |k: usize, t: &Angle| -> Result<Option<JuliaPoint>> {
        let (side, tree) = &input.trees[k];
        let x = mating.dendrite(*side).point(t)?;
        let node = crate::mating::RayNode { side: *side, point: x.clone() };
        if tree.contains(&x) || input.classes.iter().any(|c| c.contains(&node)) {
            return Ok(None);
        }
        let inside = edges.iter().any(|e| e.tree == k && x.separates(&tree.vertices[e.from], &tree.vertices[e.to]));
        Ok(inside.then_some(x))
    };
    let top = 2 * mating.config.search_bound as u64;
    for q in (2..=top).step_by(2) {
        for p in 1..q {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let t = Angle::new(p, q);
            for &k in &trees {
                if let Some(x) = hit(k, &t)? {
                    return Ok((k, x));
                }
            }
        }
    }
    let mut frontier: Vec<BTreeSet<Angle>> = trees
        .iter()
        .map(|&k| input.trees[k].1.vertices.iter().flat_map(|v| v.angles().iter().cloned()).collect())
        .collect();
    for _ in 0..mating.config.search_bound {
        let mut best: Option<(Angle, usize)> = None;
        for (slot, &k) in trees.iter().enumerate() {
            frontier[slot] = frontier[slot]
                .iter()
                .flat_map(|t| {
                    let (x, y) = t.halves();
                    [x, y]
                })
                .collect();
            let mut candidates: Vec<&Angle> = frontier[slot].iter().collect();
            candidates.sort_by(|a, b| (a.denominator(), a.numerator()).cmp(&(b.denominator(), b.numerator())));
            for t in candidates {
                if best.as_ref().is_some_and(|(b, _)| b.denominator() < t.denominator()) {
                    break;
                }
                if hit(k, t)?.is_some() {
                    best = Some((t.clone(), k));
                    break;
                }
            }
        }
        if let Some((t, k)) = best {
            let x = hit(k, &t)?.expect("candidate was checked");
            return Ok((k, x));
        }
    }
    Err(FsrError::RepairFailed { attempts: mating.config.repair_attempts })
}
