use std::collections::HashSet;
use std::ops::Deref;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::angle_dynamics::{Angle, Dendrite};
use crate::error::{FsrError, Result};

use super::tree::{PlanarTree, TreeBuilder};
use super::JuliaPoint;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VertexFlags {
    pub postcritical: bool,
    pub branch: bool,
    pub critical: bool,
    pub extra: bool,
}

/// The Hubbard tree of a Misiurewicz parameter with its vertex dynamics.
#[derive(Clone, Debug)]
pub struct HubbardTree {
    pub tree: PlanarTree,
    pub dynamics: Vec<usize>,
    pub flags: Vec<VertexFlags>,
}

impl Deref for HubbardTree {
    type Target = PlanarTree;

    fn deref(&self) -> &PlanarTree {
        &self.tree
    }
}

/// Landing points of the critical value orbit.
pub fn postcritical_points(d: &Dendrite) -> Result<Vec<JuliaPoint>> {
    d.theta().orbit().orbit.iter().map(|t| d.point(t)).collect()
}

pub fn build_tree(d: &Dendrite, bound: usize) -> Result<HubbardTree> {
    build_marked_tree(d, &[], bound)
}

/// The hull of the postcritical set together with `extra` and all forward orbits.
pub fn build_marked_tree(d: &Dendrite, extra: &[JuliaPoint], bound: usize) -> Result<HubbardTree> {
    let post = postcritical_points(d)?;
    let mut b = TreeBuilder::new(d, bound);
    for p in &post {
        b.insert(p)?;
    }
    for p in extra {
        b.insert(p)?;
    }
    close_forward(d, &mut b)?;
    finish(d, b, &post, extra)
}

/// Adds `extra` points, which must already lie on `t`, with their forward orbits.
pub fn extend_marking(d: &Dendrite, t: &HubbardTree, extra: &[JuliaPoint], bound: usize) -> Result<HubbardTree> {
    if let Some(p) = extra.iter().find(|p| !t.on_tree(p)) {
        return Err(FsrError::NotOnTree(p.to_string()));
    }
    let post = postcritical_points(d)?;
    let mut b = TreeBuilder::from_tree(d, bound, &t.tree);
    for p in extra {
        b.insert(p)?;
    }
    close_forward(d, &mut b)?;
    let mut marked: Vec<JuliaPoint> =
        t.vertices.iter().zip(&t.flags).filter(|(_, f)| f.extra).map(|(v, _)| v.clone()).collect();
    marked.extend_from_slice(extra);
    finish(d, b, &post, &marked)
}

fn close_forward(d: &Dendrite, b: &mut TreeBuilder<'_>) -> Result<()> {
    let mut k = 0;
    while k < b.points().len() {
        let image = d.point(&b.points()[k].rep().double())?;
        if !b.contains(&image) {
            b.insert(&image)?;
        }
        k += 1;
    }
    Ok(())
}

fn finish(d: &Dendrite, b: TreeBuilder<'_>, post: &[JuliaPoint], extra: &[JuliaPoint]) -> Result<HubbardTree> {
    let tree = b.finish()?;
    let post: HashSet<&JuliaPoint> = post.iter().collect();
    let mut extra_orbit: HashSet<JuliaPoint> = HashSet::new();
    for p in extra {
        let mut x = p.clone();
        while extra_orbit.insert(x.clone()) {
            x = d.point(&x.rep().double())?;
        }
    }
    let critical = d.critical_point();
    let mut dynamics = Vec::with_capacity(tree.len());
    let mut flags = Vec::with_capacity(tree.len());
    for (i, v) in tree.vertices.iter().enumerate() {
        let image = d.point(&v.rep().double())?;
        dynamics.push(
            tree.index_of(&image)
                .ok_or_else(|| FsrError::ConsistencyFailure(format!("image of {v} is not a vertex")))?,
        );
        let postcritical = post.contains(v);
        let branch = tree.neighbours(i).len() >= 3;
        flags.push(VertexFlags {
            postcritical,
            branch,
            critical: *v == critical,
            extra: !postcritical && !branch && extra_orbit.contains(v),
        });
    }
    Ok(HubbardTree { tree, dynamics, flags })
}

impl HubbardTree {
    pub fn parameter(&self) -> &Angle {
        &self.tree.parameter
    }

    /// Lists every violated structural invariant.
    pub fn invariant_violations(&self, d: &Dendrite) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.len();
        if self.edges.len() + 1 != n {
            out.push(format!("{} vertices, {} edges", n, self.edges.len()));
        }
        if n > 0 {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(x) = stack.pop() {
                for &y in self.neighbours(x) {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                out.push("disconnected".into());
            }
        }
        match postcritical_points(d) {
            Ok(post) => {
                for p in post {
                    if !self.contains(&p) {
                        out.push(format!("postcritical point {p} missing"));
                    }
                }
            }
            Err(e) => out.push(e.to_string()),
        }
        for i in 0..n {
            let v = &self.vertices[i];
            if self.neighbours(i).len() >= 3 && (!self.flags[i].branch || v.valence() < 3) {
                out.push(format!("branch vertex {v} badly flagged"));
            }
            let mut doubled: Vec<Angle> = v.angles().iter().map(Angle::double).collect();
            doubled.sort();
            doubled.dedup();
            if self.vertices[self.dynamics[i]].angles() != &doubled[..] {
                out.push(format!("dynamics at {v} is not angle doubling"));
            }
            let sectors: Vec<usize> = self.neighbours(i).iter().map(|&j| self.sector_towards(i, j)).collect();
            if sectors.windows(2).any(|w| w[0] >= w[1]) {
                out.push(format!("rotation at {v} disagrees with angle order"));
            }
        }
        out
    }
}

impl Serialize for HubbardTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Vertex<'a> {
            angles: &'a [Angle],
            flags: VertexFlags,
        }
        let vertices: Vec<Vertex<'_>> =
            self.vertices.iter().zip(&self.flags).map(|(v, f)| Vertex { angles: v.angles(), flags: *f }).collect();
        let mut st = s.serialize_struct("HubbardTree", 5)?;
        st.serialize_field("parameter", self.parameter())?;
        st.serialize_field("vertices", &vertices)?;
        st.serialize_field("edges", &self.edges)?;
        st.serialize_field("rotation", &self.rotation)?;
        st.serialize_field("dynamics", &self.dynamics)?;
        st.end()
    }
}
