use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::angle_dynamics::Angle;
use crate::error::{FsrError, Result};
use crate::hubbard_tree::PlanarTree;
use crate::mating::{Mating, RayClass, RayNode, Side};

/// Which hemisphere a ray crossing at a merged vertex borders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RaySense {
    /// Crossed from an alpha node to a beta node.
    Below,
    /// Crossed from a beta node to an alpha node.
    Above,
    /// A ray whose partner is outside the vertex.
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerRay {
    pub ray: Angle,
    pub sense: RaySense,
}

/// An outgoing dart and the rays swept before the next outgoing dart.
#[derive(Clone, Debug, Serialize)]
pub struct Corner {
    pub dart: usize,
    pub rays: Vec<CornerRay>,
}

/// A directed tree edge; darts `2k` and `2k+1` are reverses of each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dart {
    pub tree: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeletonTree {
    pub side: Side,
    pub tree: PlanarTree,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VertexMarks {
    pub postcritical: bool,
    pub critical: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphVertex {
    /// Tree vertices `(tree, index)` merged into this vertex.
    pub members: Vec<(usize, usize)>,
    pub nodes: Vec<RayNode>,
    pub class: Option<usize>,
    pub marks: VertexMarks,
}

/// Trees glued along ray classes, with a rotation system on the sphere.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddedGraph {
    pub trees: Vec<SkeletonTree>,
    #[serde(skip)]
    pub classes: Vec<RayClass>,
    pub vertices: Vec<GraphVertex>,
    pub darts: Vec<Dart>,
    pub rotation: Vec<Vec<Corner>>,
    #[serde(skip)]
    vertex_of: HashMap<(usize, usize), usize>,
    #[serde(skip)]
    dart_of: HashMap<(usize, usize, usize), usize>,
    #[serde(skip)]
    position: Vec<usize>,
}

enum Step {
    Dart(usize),
    Ray(CornerRay),
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

impl EmbeddedGraph {
    /// Glues the trees along every class containing at least one of their vertices.
    pub fn build(mating: &Mating, trees: Vec<SkeletonTree>, classes: Vec<RayClass>) -> Result<Self> {
        let mut flat: Vec<(usize, usize)> = Vec::new();
        let mut flat_of: HashMap<(usize, usize), usize> = HashMap::new();
        let mut node_of: Vec<RayNode> = Vec::new();
        for (k, st) in trees.iter().enumerate() {
            for (i, v) in st.tree.vertices.iter().enumerate() {
                flat_of.insert((k, i), flat.len());
                flat.push((k, i));
                node_of.push(RayNode { side: st.side, point: v.clone() });
            }
        }
        let by_node: HashMap<&RayNode, usize> = node_of.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut class_of: Vec<Option<usize>> = vec![None; flat.len()];
        let mut uf = UnionFind::new(flat.len());
        for (ci, c) in classes.iter().enumerate() {
            let members: Vec<usize> = c.nodes.iter().filter_map(|n| by_node.get(n).copied()).collect();
            for &m in &members {
                class_of[m] = Some(ci);
                uf.union(members[0], m);
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..flat.len() {
            groups.entry(uf.find(x)).or_default().push(x);
        }
        let position = |x: usize| {
            let n = &node_of[x];
            (n.side.ray(n.point.rep()), n.side, x)
        };
        let mut groups: Vec<Vec<usize>> = groups.into_values().collect();
        for g in &mut groups {
            g.sort_by_key(|&x| position(x));
        }
        groups.sort_by_key(|g| position(g[0]));

        let mut darts = Vec::new();
        let mut dart_of = HashMap::new();
        for (k, st) in trees.iter().enumerate() {
            for &(i, j) in &st.tree.edges {
                dart_of.insert((k, i, j), darts.len());
                darts.push(Dart { tree: k, from: i, to: j });
                dart_of.insert((k, j, i), darts.len());
                darts.push(Dart { tree: k, from: j, to: i });
            }
        }

        let mut vertex_of = HashMap::new();
        let mut vertices = Vec::new();
        let mut rotation = Vec::new();
        for (vi, g) in groups.iter().enumerate() {
            let members: Vec<(usize, usize)> = g.iter().map(|&x| flat[x]).collect();
            for &m in &members {
                vertex_of.insert(m, vi);
            }
            let class = g.iter().find_map(|&x| class_of[x]);
            let nodes: Vec<RayNode> = g.iter().map(|&x| node_of[x].clone()).collect();
            let marks = VertexMarks {
                postcritical: nodes.iter().any(|n| mating.is_postcritical(n)),
                critical: nodes.iter().any(|n| *n == mating.critical_node(n.side)),
            };
            let walk_nodes: Vec<RayNode> = match class {
                Some(ci) => classes[ci].nodes.clone(),
                None => nodes.clone(),
            };
            rotation.push(walk(&trees, &members, &walk_nodes, &dart_of)?);
            vertices.push(GraphVertex { members, nodes, class, marks });
        }
        let mut position = vec![0; darts.len()];
        for corners in &rotation {
            for (k, c) in corners.iter().enumerate() {
                position[c.dart] = k;
            }
        }
        Ok(EmbeddedGraph { trees, classes, vertices, darts, rotation, vertex_of, dart_of, position })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn vertex_of(&self, tree: usize, index: usize) -> Option<usize> {
        self.vertex_of.get(&(tree, index)).copied()
    }

    pub fn vertex_of_node(&self, n: &RayNode) -> Option<usize> {
        self.trees.iter().enumerate().find_map(|(k, st)| {
            if st.side != n.side {
                return None;
            }
            st.tree.index_of(&n.point).and_then(|i| self.vertex_of(k, i))
        })
    }

    pub fn dart(&self, tree: usize, from: usize, to: usize) -> Option<usize> {
        self.dart_of.get(&(tree, from, to)).copied()
    }

    pub fn tree_index(&self, side: Side) -> Option<usize> {
        self.trees.iter().position(|st| st.side == side)
    }

    pub fn tail(&self, d: usize) -> usize {
        let x = self.darts[d];
        self.vertex_of[&(x.tree, x.from)]
    }

    pub fn head(&self, d: usize) -> usize {
        let x = self.darts[d];
        self.vertex_of[&(x.tree, x.to)]
    }

    pub fn rev(&self, d: usize) -> usize {
        d ^ 1
    }

    /// The next outgoing dart after `d` counterclockwise around its tail.
    pub fn succ(&self, d: usize) -> usize {
        let corners = &self.rotation[self.tail(d)];
        corners[(self.position[d] + 1) % corners.len()].dart
    }

    /// The corner following outgoing dart `d`.
    pub fn corner(&self, d: usize) -> &Corner {
        &self.rotation[self.tail(d)][self.position[d]]
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for c in &self.rotation[v] {
                let w = self.head(c.dart);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Rotation at a merged vertex: walk the boundary of the class's ray graph
/// counterclockwise, recording tree darts and crossed rays in order.
fn walk(
    trees: &[SkeletonTree],
    members: &[(usize, usize)],
    nodes: &[RayNode],
    dart_of: &HashMap<(usize, usize, usize), usize>,
) -> Result<Vec<Corner>> {
    let mut by_ray: HashMap<Angle, Vec<usize>> = HashMap::new();
    for (k, n) in nodes.iter().enumerate() {
        for r in n.rays() {
            by_ray.entry(r).or_default().push(k);
        }
    }
    let mut dart_at: HashMap<(usize, usize), usize> = HashMap::new();
    let mut expected = 0;
    for &(t, i) in members {
        let st = &trees[t];
        let node = RayNode { side: st.side, point: st.tree.vertices[i].clone() };
        let k = nodes
            .iter()
            .position(|n| *n == node)
            .ok_or_else(|| FsrError::ConsistencyFailure(format!("tree vertex {node} missing from its class")))?;
        for &j in st.tree.neighbours(i) {
            let sector = st.tree.sector_towards(i, j);
            dart_at.insert((k, sector), dart_of[&(t, i, j)]);
            expected += 1;
        }
    }
    let start = (0..nodes.len())
        .min_by(|&a, &b| (nodes[a].side, nodes[a].point.rep()).cmp(&(nodes[b].side, nodes[b].point.rep())))
        .expect("nonempty class");
    let limit = nodes.iter().map(|n| n.point.valence()).sum::<usize>() + 1;
    let (mut n, mut sector) = (start, 0);
    let mut seq: Vec<Step> = Vec::new();
    for _ in 0..limit {
        if let Some(&d) = dart_at.get(&(n, sector)) {
            seq.push(Step::Dart(d));
        }
        let here = &nodes[n];
        let angles = here.point.angles();
        let t = &angles[(sector + 1) % angles.len()];
        let r = here.side.ray(t);
        let others: Vec<usize> = by_ray[&r].iter().copied().filter(|&m| m != n).collect();
        let (m, sense) = match others.as_slice() {
            [] => (n, RaySense::Both),
            [m] => (*m, if here.side == Side::Alpha { RaySense::Below } else { RaySense::Above }),
            _ => {
                return Err(FsrError::ConsistencyFailure(format!("ray {r} joins more than two nodes")));
            }
        };
        seq.push(Step::Ray(CornerRay { ray: r.clone(), sense }));
        let there = &nodes[m];
        let mt = there.side.own(&r);
        sector = there.point.angles().binary_search(&mt).expect("ray at node");
        n = m;
        if (n, sector) == (start, 0) {
            break;
        }
    }
    if (n, sector) != (start, 0) {
        return Err(FsrError::ConsistencyFailure("class boundary walk did not close".into()));
    }
    let first = seq
        .iter()
        .position(|s| matches!(s, Step::Dart(_)))
        .ok_or_else(|| FsrError::ConsistencyFailure("vertex without edges".into()))?;
    seq.rotate_left(first);
    let mut corners: Vec<Corner> = Vec::new();
    for s in seq {
        match s {
            Step::Dart(d) => corners.push(Corner { dart: d, rays: Vec::new() }),
            Step::Ray(r) => corners.last_mut().expect("starts with dart").rays.push(r),
        }
    }
    if corners.len() != expected {
        return Err(FsrError::ConsistencyFailure(format!("boundary walk met {} of {} darts", corners.len(), expected)));
    }
    Ok(corners)
}

/// A 2-complex on the sphere: the graph and its traced faces.
#[derive(Clone, Debug, Serialize)]
pub struct CWComplex2 {
    pub graph: EmbeddedGraph,
    /// Faces as cyclic dart sequences.
    pub faces: Vec<Vec<usize>>,
    #[serde(skip)]
    pub face_of_dart: Vec<usize>,
}

impl CWComplex2 {
    pub fn face_sizes(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.graph.vertex_count() as i64 - self.graph.edge_count() as i64 + self.faces.len() as i64
    }

    /// Face traversed through the corner after outgoing dart `d`.
    pub fn face_of_corner(&self, d: usize) -> usize {
        self.face_of_dart[self.graph.rev(d)]
    }
}

/// Traces faces: after dart `d`, continue with the rotation successor of its reverse.
pub fn trace_faces(graph: EmbeddedGraph) -> Result<CWComplex2> {
    if !graph.is_connected() {
        return Err(FsrError::DisconnectedSkeleton);
    }
    let n = graph.darts.len();
    let mut face_of_dart = vec![usize::MAX; n];
    let mut faces = Vec::new();
    for d0 in 0..n {
        if face_of_dart[d0] != usize::MAX {
            continue;
        }
        let mut face = Vec::new();
        let mut d = d0;
        while face_of_dart[d] == usize::MAX {
            face_of_dart[d] = faces.len();
            face.push(d);
            d = graph.succ(graph.rev(d));
        }
        faces.push(face);
    }
    let c = CWComplex2 { graph, faces, face_of_dart };
    if c.euler_characteristic() != 2 {
        return Err(FsrError::EulerViolation { v: c.graph.vertex_count(), e: c.graph.edge_count(), f: c.faces.len() });
    }
    Ok(c)
}
