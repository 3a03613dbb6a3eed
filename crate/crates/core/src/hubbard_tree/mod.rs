//! Combinatorial Hubbard trees: landing points, triods, hulls and lifts.

mod hubbard;
mod lift;
mod point;
mod tree;
mod triod;

pub use hubbard::{build_marked_tree, build_tree, extend_marking, postcritical_points, HubbardTree, VertexFlags};
pub use lift::{lift_tree, lift_tree_with, DoubledTree};
pub use point::JuliaPoint;
pub use tree::{hull, PlanarTree};
pub use triod::{triod_middle, DEFAULT_TRIOD_BOUND};

/// `p` lies on the tree: it is a vertex or interior to an edge.
pub fn on_tree(t: &PlanarTree, p: &JuliaPoint) -> bool {
    t.on_tree(p)
}
