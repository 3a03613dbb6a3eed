//! Subdivision complexes: glued trees on the sphere, their pullbacks and the
//! combinatorial replacement rule read off from them.

mod build;
mod graph;
mod pullback;
mod rule;
mod strategy;

pub use build::{build_complex, digon_repair, embed, quotient_skeleton, single_tree_skeleton, SkeletonInput};
pub use graph::{
    trace_faces, CWComplex2, Corner, CornerRay, Dart, EmbeddedGraph, GraphVertex, RaySense, SkeletonTree, VertexMarks,
};
pub use pullback::{
    check_subdivision, face_images, project_dart, pullback_complex, pullback_complex_unchecked, Embedding,
    SubdivisionCheck,
};
pub use rule::{
    extract_rule, iterate_rule, EdgeType, ReplacementPattern, RuleImages, RuleIteration, SubTile, SubdivisionRuleData,
    TileNode, TileType,
};
pub use strategy::{construct, Essential, FsrConstruction, SingleTree, SkeletonStrategy, StrategyRegistry};
