use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::angle_dynamics::{Angle, Dendrite};
use crate::error::{FsrError, Result};

use super::triod::triod_middle;
use super::JuliaPoint;

/// A finite tree of dendrite points with the planar structure induced by external angles.
#[derive(Clone, Debug, Serialize)]
pub struct PlanarTree {
    pub parameter: Angle,
    pub vertices: Vec<JuliaPoint>,
    pub edges: Vec<(usize, usize)>,
    /// Neighbours of each vertex in counterclockwise order, starting from the sector
    /// after the vertex's minimal angle.
    pub rotation: Vec<Vec<usize>>,
    #[serde(skip)]
    index: HashMap<JuliaPoint, usize>,
}

impl PlanarTree {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, p: &JuliaPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &JuliaPoint) -> bool {
        self.index.contains_key(p)
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.rotation[i]
    }

    /// The sector of vertex `i` through which the edge towards `j` leaves.
    pub fn sector_towards(&self, i: usize, j: usize) -> usize {
        self.vertices[i].sector_of(self.vertices[j].rep()).expect("distinct points")
    }

    /// `p` is a vertex or lies in the interior of an edge.
    pub fn on_tree(&self, p: &JuliaPoint) -> bool {
        self.contains(p) || self.edges.iter().any(|&(i, j)| p.separates(&self.vertices[i], &self.vertices[j]))
    }

    /// The edge whose interior contains `p`, if any.
    pub fn edge_containing(&self, p: &JuliaPoint) -> Option<(usize, usize)> {
        self.edges.iter().copied().find(|&(i, j)| p.separates(&self.vertices[i], &self.vertices[j]))
    }

    /// Vertex path from `a` to `b`.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.len()];
        prev[a] = a;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.rotation[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![b];
        while *path.last().expect("nonempty") != a {
            path.push(prev[*path.last().expect("nonempty")]);
        }
        path.reverse();
        path
    }

    pub(crate) fn from_parts(
        parameter: Angle,
        points: Vec<JuliaPoint>,
        adjacency: Vec<BTreeSet<usize>>,
    ) -> Result<Self> {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| points[i].cmp(&points[j]));
        let mut new_of = vec![0; points.len()];
        for (n, &o) in order.iter().enumerate() {
            new_of[o] = n;
        }
        let vertices: Vec<JuliaPoint> = order.iter().map(|&o| points[o].clone()).collect();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (o, nbrs) in adjacency.iter().enumerate() {
            for &q in nbrs {
                let (i, j) = (new_of[o], new_of[q]);
                if i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort();
        let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for &(i, j) in &edges {
            rotation[i].push(j);
            rotation[j].push(i);
        }
        for (i, nb) in rotation.iter_mut().enumerate() {
            let mut keyed: Vec<(usize, usize)> =
                nb.iter().map(|&j| (vertices[i].sector_of(vertices[j].rep()).expect("distinct"), j)).collect();
            keyed.sort();
            if keyed.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(FsrError::ConsistencyFailure(format!(
                    "two edges leave {} through one sector",
                    vertices[i]
                )));
            }
            *nb = keyed.into_iter().map(|(_, j)| j).collect();
        }
        if !vertices.is_empty() && edges.len() + 1 != vertices.len() {
            return Err(FsrError::ConsistencyFailure(format!("{} vertices but {} edges", vertices.len(), edges.len())));
        }
        let index = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(PlanarTree { parameter, vertices, edges, rotation, index })
    }
}

/// Grows the hull of a point set one point at a time.
pub(crate) struct TreeBuilder<'a> {
    dendrite: &'a Dendrite,
    bound: usize,
    points: Vec<JuliaPoint>,
    adjacency: Vec<BTreeSet<usize>>,
    index: HashMap<JuliaPoint, usize>,
}

impl<'a> TreeBuilder<'a> {
    pub fn new(dendrite: &'a Dendrite, bound: usize) -> Self {
        TreeBuilder { dendrite, bound, points: Vec::new(), adjacency: Vec::new(), index: HashMap::new() }
    }

    pub fn from_tree(dendrite: &'a Dendrite, bound: usize, tree: &PlanarTree) -> Self {
        let mut b = Self::new(dendrite, bound);
        for v in &tree.vertices {
            b.add_point(v.clone());
        }
        for &(i, j) in &tree.edges {
            b.link(i, j);
        }
        b
    }

    pub fn contains(&self, p: &JuliaPoint) -> bool {
        self.index.contains_key(p)
    }

    pub fn points(&self) -> &[JuliaPoint] {
        &self.points
    }

    fn add_point(&mut self, p: JuliaPoint) -> usize {
        let i = self.points.len();
        self.index.insert(p.clone(), i);
        self.points.push(p);
        self.adjacency.push(BTreeSet::new());
        i
    }

    fn link(&mut self, i: usize, j: usize) {
        self.adjacency[i].insert(j);
        self.adjacency[j].insert(i);
    }

    fn unlink(&mut self, i: usize, j: usize) {
        self.adjacency[i].remove(&j);
        self.adjacency[j].remove(&i);
    }

    fn vertex(&mut self, p: &JuliaPoint) -> usize {
        match self.index.get(p) {
            Some(&i) => i,
            None => self.add_point(p.clone()),
        }
    }

    /// Adds `p` and whatever branch point is needed to attach it.
    ///
    /// Walks from a vertex towards `p` through the sector containing `p`. Stopping at a
    /// vertex with no edge in that sector attaches `p` there; reaching an edge whose far
    /// end does not separate its near end from `p` means `p` hangs off that edge's
    /// interior, located by one triod.
    pub fn insert(&mut self, p: &JuliaPoint) -> Result<usize> {
        if let Some(&i) = self.index.get(p) {
            return Ok(i);
        }
        if self.points.is_empty() {
            return Ok(self.add_point(p.clone()));
        }
        let mut w = 0;
        let mut steps = 0;
        loop {
            steps += 1;
            if steps > self.points.len() + 1 {
                return Err(FsrError::ConsistencyFailure(format!("walk towards {p} does not terminate")));
            }
            let here = self.points[w].clone();
            let sector = here.sector_of(p.rep());
            let next = self.adjacency[w].iter().copied().find(|&u| here.sector_of(self.points[u].rep()) == sector);
            let Some(u) = next else {
                let i = self.add_point(p.clone());
                self.link(w, i);
                return Ok(i);
            };
            let there = self.points[u].clone();
            if there.separates(&here, p) {
                w = u;
                continue;
            }
            let m = triod_middle(self.dendrite, &here, &there, p, self.bound)?;
            if m == here || m == there {
                return Err(FsrError::ConsistencyFailure(format!(
                    "triod of {here}, {there}, {p} resolves to an endpoint"
                )));
            }
            let k = self.vertex(&m);
            self.unlink(w, u);
            self.link(w, k);
            self.link(k, u);
            if &m == p {
                return Ok(k);
            }
            let i = self.add_point(p.clone());
            self.link(k, i);
            return Ok(i);
        }
    }

    pub fn finish(self) -> Result<PlanarTree> {
        PlanarTree::from_parts(self.dendrite.theta().clone(), self.points, self.adjacency)
    }
}

/// The hull of a finite point set.
pub fn hull(dendrite: &Dendrite, points: &[JuliaPoint], bound: usize) -> Result<PlanarTree> {
    let mut b = TreeBuilder::new(dendrite, bound);
    for p in points {
        b.insert(p)?;
    }
    b.finish()
}
