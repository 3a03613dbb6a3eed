use std::collections::BTreeSet;

use serde::Serialize;

use crate::angle_dynamics::Dendrite;
use crate::error::{FsrError, Result};

use super::tree::{hull, PlanarTree};
use super::{HubbardTree, JuliaPoint};

/// The full preimage of a Hubbard tree: two copies joined at the critical point.
#[derive(Clone, Debug, Serialize)]
pub struct DoubledTree {
    pub tree: PlanarTree,
    /// Base vertex under each lifted vertex; `None` for marked points whose image is
    /// interior to a base edge.
    pub projection: Vec<Option<usize>>,
    pub critical_class: usize,
}

pub fn lift_tree(d: &Dendrite, base: &HubbardTree, bound: usize) -> Result<DoubledTree> {
    lift_tree_with(d, base, &[], bound)
}

/// Lifts `base`, additionally marking `extra` points of the preimage tree.
pub fn lift_tree_with(d: &Dendrite, base: &HubbardTree, extra: &[JuliaPoint], bound: usize) -> Result<DoubledTree> {
    let mut points: BTreeSet<JuliaPoint> = BTreeSet::new();
    for v in &base.vertices {
        for t in v.angles() {
            let (x, y) = t.halves();
            points.insert(d.point(&x)?);
            points.insert(d.point(&y)?);
        }
    }
    let lifted_vertices = points.len();
    points.extend(extra.iter().cloned());
    let list: Vec<JuliaPoint> = points.iter().cloned().collect();
    let tree = hull(d, &list, bound)?;
    if tree.len() != points.len() {
        return Err(FsrError::ConsistencyFailure(format!(
            "preimage hull gained {} unexpected branch points",
            tree.len() - points.len()
        )));
    }
    debug_assert!(tree.len() >= lifted_vertices);
    for v in &base.vertices {
        if !tree.contains(v) {
            return Err(FsrError::ConsistencyFailure(format!("base vertex {v} is missing from its preimage tree")));
        }
    }
    let mut projection = Vec::with_capacity(tree.len());
    for v in &tree.vertices {
        projection.push(base.index_of(&d.point(&v.rep().double())?));
    }
    for &(i, j) in &tree.edges {
        if let (Some(a), Some(b)) = (projection[i], projection[j]) {
            if !base.neighbours(a).contains(&b) {
                return Err(FsrError::ConsistencyFailure(format!(
                    "lifted edge {}–{} does not cover a base edge",
                    tree.vertices[i], tree.vertices[j]
                )));
            }
        }
    }
    let critical_class = tree
        .index_of(&d.critical_point())
        .ok_or_else(|| FsrError::ConsistencyFailure("critical point not lifted".into()))?;
    Ok(DoubledTree { tree, projection, critical_class })
}
