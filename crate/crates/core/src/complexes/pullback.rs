use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::error::{FsrError, Result};
use crate::hubbard_tree::{lift_tree_with, JuliaPoint};
use crate::mating::{EssentialPartition, Mating, RayClass};

use super::build::SkeletonInput;
use super::graph::{trace_faces, CWComplex2, EmbeddedGraph, SkeletonTree};

/// Preimage of the skeleton under the mating; refuses obstructed matings.
pub fn pullback_complex(mating: &Mating, input: &SkeletonInput, partition: &EssentialPartition) -> Result<CWComplex2> {
    if !mating.obstruction_check(partition)?.is_clean() {
        return Err(FsrError::ObstructedMating);
    }
    pullback_complex_unchecked(mating, input, partition)
}

/// Lifted trees glued along every preimage component of every τ class.
pub fn pullback_complex_unchecked(
    mating: &Mating,
    input: &SkeletonInput,
    partition: &EssentialPartition,
) -> Result<CWComplex2> {
    let mut classes: Vec<RayClass> = Vec::new();
    let mut seen: HashSet<RayClass> = HashSet::new();
    for tau in &partition.tau_classes {
        for cc in mating.preimage_components(tau)? {
            if seen.insert(cc.clone()) {
                classes.push(cc);
            }
        }
    }
    classes.sort_by(|a, b| a.min_ray().cmp(b.min_ray()));

    let bound = mating.config.triod_bound;
    let mut trees = Vec::new();
    for (side, base) in &input.trees {
        let d = mating.dendrite(*side);
        let plain = lift_tree_with(d, base, &[], bound)?;
        let mut extra: BTreeSet<JuliaPoint> = BTreeSet::new();
        for c in &classes {
            let mut on = Vec::new();
            for n in &c.nodes {
                if let Some(t) = input.tree(n.side) {
                    if t.on_tree(&mating.image(n)?.point) {
                        on.push(n);
                    }
                }
            }
            if on.len() >= 2 {
                extra.extend(
                    on.into_iter()
                        .filter(|n| n.side == *side && !plain.tree.contains(&n.point))
                        .map(|n| n.point.clone()),
                );
            }
        }
        let lifted = if extra.is_empty() {
            plain
        } else {
            let extra: Vec<JuliaPoint> = extra.into_iter().collect();
            lift_tree_with(d, base, &extra, bound)?
        };
        trees.push(SkeletonTree { side: *side, tree: lifted.tree });
    }
    trace_faces(EmbeddedGraph::build(mating, trees, classes)?)
}

/// How a base complex sits inside its pullback.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Embedding {
    /// Pullback vertex of each base vertex.
    pub vertex_map: Vec<usize>,
    /// Pullback darts tracing each base dart.
    pub edge_paths: Vec<Vec<usize>>,
    /// Base face containing each pullback face.
    pub face_map: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubdivisionCheck {
    pub ok: bool,
    pub failure: Option<String>,
    pub embedding: Option<Embedding>,
}

impl SubdivisionCheck {
    fn fail(msg: impl Into<String>) -> Self {
        SubdivisionCheck { ok: false, failure: Some(msg.into()), embedding: None }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }
}

/// Whether the base 1-skeleton embeds in the pullback with every pullback face inside
/// one base face.
pub fn check_subdivision(base: &CWComplex2, pull: &CWComplex2) -> SubdivisionCheck {
    let g0 = &base.graph;
    let g1 = &pull.graph;
    let tree_map: Option<Vec<usize>> = g0.trees.iter().map(|st| g1.tree_index(st.side)).collect();
    let Some(tree_map) = tree_map else {
        return SubdivisionCheck::fail("pullback lacks a tree of the base");
    };
    let local =
        |k: usize, i: usize| -> Option<usize> { g1.trees[tree_map[k]].tree.index_of(&g0.trees[k].tree.vertices[i]) };

    let mut vertex_map = Vec::with_capacity(g0.vertex_count());
    for (k, v) in g0.vertices.iter().enumerate() {
        let mut images = BTreeSet::new();
        for &(t, i) in &v.members {
            match local(t, i).and_then(|j| g1.vertex_of(tree_map[t], j)) {
                Some(w) => {
                    images.insert(w);
                }
                None => return SubdivisionCheck::fail(format!("base vertex {k} is not a pullback vertex")),
            }
        }
        if images.len() != 1 {
            return SubdivisionCheck::fail(format!("base vertex {k} splits"));
        }
        vertex_map.push(*images.iter().next().expect("one image"));
    }
    let image_set: HashSet<usize> = vertex_map.iter().copied().collect();
    if image_set.len() != vertex_map.len() {
        return SubdivisionCheck::fail("base vertices pinched");
    }

    let mut used: HashMap<usize, usize> = HashMap::new();
    let mut edge_paths = Vec::with_capacity(g0.darts.len());
    for (d0, dart) in g0.darts.iter().enumerate() {
        let t1 = tree_map[dart.tree];
        let (Some(a), Some(b)) = (local(dart.tree, dart.from), local(dart.tree, dart.to)) else {
            return SubdivisionCheck::fail(format!("base dart {d0} has no image"));
        };
        let path = g1.trees[t1].tree.path(a, b);
        let darts: Vec<usize> = path.windows(2).map(|w| g1.dart(t1, w[0], w[1]).expect("tree edge")).collect();
        let edge = d0.min(g0.rev(d0));
        for &x in &path[1..path.len() - 1] {
            let w = g1.vertex_of(t1, x).expect("tree vertex");
            if image_set.contains(&w) {
                return SubdivisionCheck::fail("edge interior hits base vertex");
            }
            if *used.entry(w).or_insert(edge) != edge {
                return SubdivisionCheck::fail("edge interiors pinched");
            }
        }
        edge_paths.push(darts);
    }

    let mut base_face_of: HashMap<usize, usize> = HashMap::new();
    for (d0, p) in edge_paths.iter().enumerate() {
        for &d1 in p {
            base_face_of.insert(d1, base.face_of_dart[d0]);
        }
    }
    let mut uf = UnionFind((0..pull.faces.len()).collect());
    for d1 in 0..g1.darts.len() {
        if !base_face_of.contains_key(&d1) {
            let (a, b) = (uf.find(pull.face_of_dart[d1]), uf.find(pull.face_of_dart[g1.rev(d1)]));
            uf.0[a] = b;
        }
    }
    let mut region_face: HashMap<usize, usize> = HashMap::new();
    for (&d1, &bf) in &base_face_of {
        let r = uf.find(pull.face_of_dart[d1]);
        if *region_face.entry(r).or_insert(bf) != bf {
            return SubdivisionCheck::fail("face straddles");
        }
    }
    let mut face_map = Vec::with_capacity(pull.faces.len());
    for f in 0..pull.faces.len() {
        match region_face.get(&uf.find(f)) {
            Some(&bf) => face_map.push(bf),
            None => return SubdivisionCheck::fail("face unassigned"),
        }
    }
    SubdivisionCheck { ok: true, failure: None, embedding: Some(Embedding { vertex_map, edge_paths, face_map }) }
}

/// The base dart covered by a pullback dart under the dynamics.
pub fn project_dart(mating: &Mating, base: &CWComplex2, pull: &CWComplex2, d1: usize) -> Result<usize> {
    let g0 = &base.graph;
    let g1 = &pull.graph;
    let dart = g1.darts[d1];
    let side = g1.trees[dart.tree].side;
    let k = g0.tree_index(side).ok_or_else(|| FsrError::ConsistencyFailure(format!("base has no {side} tree")))?;
    let t0 = &g0.trees[k].tree;
    let t1 = &g1.trees[dart.tree].tree;
    let d = mating.dendrite(side);
    let a = d.point(&t1.vertices[dart.from].rep().double())?;
    let b = d.point(&t1.vertices[dart.to].rep().double())?;
    let (ia, ib) = (t0.index_of(&a), t0.index_of(&b));
    if let (Some(i), Some(j)) = (ia, ib) {
        return g0
            .dart(k, i, j)
            .ok_or_else(|| FsrError::ConsistencyFailure(format!("image of {} is not a base edge", a)));
    }
    let on = |p: &JuliaPoint, idx: Option<usize>, x: usize, y: usize| {
        idx == Some(x) || idx == Some(y) || p.separates(&t0.vertices[x], &t0.vertices[y])
    };
    for &(x, y) in &t0.edges {
        if on(&a, ia, x, y) && on(&b, ib, x, y) {
            let forward =
                ia == Some(x) || ib == Some(y) || (ia.is_none() && ib.is_none() && a.separates(&t0.vertices[x], &b));
            let (i, j) = if forward { (x, y) } else { (y, x) };
            return Ok(g0.dart(k, i, j).expect("tree edge"));
        }
    }
    Err(FsrError::ConsistencyFailure(format!("image of {a}–{b} crosses a base vertex")))
}

/// The base face onto which each pullback face maps.
pub fn face_images(mating: &Mating, base: &CWComplex2, pull: &CWComplex2) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(pull.faces.len());
    for (k, f) in pull.faces.iter().enumerate() {
        let mut images = BTreeSet::new();
        for &d in f {
            images.insert(base.face_of_dart[project_dart(mating, base, pull, d)?]);
        }
        if images.len() != 1 {
            return Err(FsrError::ConsistencyFailure(format!(
                "pullback face {k} maps onto {} base faces",
                images.len()
            )));
        }
        out.push(*images.iter().next().expect("one image"));
    }
    Ok(out)
}
