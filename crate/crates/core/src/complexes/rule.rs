use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{FsrError, Result};
use crate::mating::{Mating, Side};

use super::graph::CWComplex2;
use super::pullback::{face_images, project_dart, Embedding};

/// Where the dynamics sends each pullback face and dart.
#[derive(Clone, Debug, Serialize)]
pub struct RuleImages {
    pub faces: Vec<usize>,
    pub darts: Vec<usize>,
}

impl RuleImages {
    pub fn compute(mating: &Mating, base: &CWComplex2, pull: &CWComplex2) -> Result<Self> {
        let faces = face_images(mating, base, pull)?;
        let darts = (0..pull.graph.darts.len()).map(|d| project_dart(mating, base, pull, d)).collect::<Result<_>>()?;
        Ok(RuleImages { faces, darts })
    }

    /// Each cell maps to itself; pairs with the embedding of a complex in itself.
    pub fn identity(c: &CWComplex2) -> Self {
        RuleImages { faces: (0..c.faces.len()).collect(), darts: (0..c.graph.darts.len()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeType {
    pub side: Side,
    /// Types of the base edges covered by the sub-edges, in order.
    pub subdivision: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubTile {
    pub tile_type: usize,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplacementPattern {
    pub subtiles: Vec<SubTile>,
    /// Pairs of subtiles sharing an interior edge.
    pub adjacency: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TileType {
    pub name: String,
    pub size: usize,
    /// Cyclic word of edge types, in least rotation.
    pub boundary: Vec<usize>,
    pub pattern: ReplacementPattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionRuleData {
    pub edge_types: Vec<EdgeType>,
    pub tile_types: Vec<TileType>,
    /// `census[i][j]`: type-j subtiles in a type-i tile.
    pub census: Vec<Vec<u64>>,
    /// Type of each base face.
    pub face_types: Vec<usize>,
    /// Tile counts of the base complex.
    pub initial: Vec<u64>,
    /// Boundary words carried by more than one type.
    pub ambiguous: Vec<Vec<usize>>,
}

impl SubdivisionRuleData {
    pub fn type_named(&self, name: &str) -> Option<usize> {
        self.tile_types.iter().position(|t| t.name == name)
    }
}

fn least_rotation(w: &[usize]) -> Vec<usize> {
    (0..w.len().max(1))
        .map(|k| w.iter().cycle().skip(k).take(w.len()).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Refines a labelling by a key until the number of labels stops growing.
fn refine<K: Ord + Clone>(initial: Vec<K>, mut key: impl FnMut(&[usize], usize) -> Vec<usize>) -> Vec<usize> {
    fn index<T: Ord>(keys: &[T]) -> Vec<usize> {
        let sorted: BTreeSet<&T> = keys.iter().collect();
        let map: BTreeMap<&T, usize> = sorted.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        keys.iter().map(|k| map[k]).collect()
    }
    let count = |l: &[usize]| l.iter().max().map_or(0, |m| m + 1);
    let mut labels = index(&initial);
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..labels.len()).map(|i| (labels[i], key(&labels, i))).collect();
        let next = index(&keys);
        if count(&next) == count(&labels) {
            return next;
        }
        labels = next;
    }
}

fn tile_name(size: usize) -> String {
    match size {
        1 => "monogon".into(),
        2 => "digon".into(),
        3 => "triangle".into(),
        4 => "quadrilateral".into(),
        5 => "pentagon".into(),
        6 => "hexagon".into(),
        8 => "octagon".into(),
        n => format!("{n}-gon"),
    }
}

/// Reads the replacement rule off a base complex, its pullback and the embedding.
pub fn extract_rule(
    base: &CWComplex2,
    pull: &CWComplex2,
    embedding: &Embedding,
    images: &RuleImages,
) -> Result<SubdivisionRuleData> {
    let g0 = &base.graph;
    let edges: Vec<usize> = (0..g0.darts.len()).step_by(2).collect();
    let edge_of_dart = |d: usize| d / 2;

    let edge_initial: Vec<(Side, usize)> =
        edges.iter().map(|&d| (g0.trees[g0.darts[d].tree].side, embedding.edge_paths[d].len())).collect();
    let edge_labels = refine(edge_initial, |labels, e| {
        embedding.edge_paths[edges[e]].iter().map(|&d1| labels[edge_of_dart(images.darts[d1])]).collect()
    });
    let edge_count = edge_labels.iter().max().map_or(0, |m| m + 1);
    let mut edge_types: Vec<Option<EdgeType>> = vec![None; edge_count];
    for (e, &l) in edge_labels.iter().enumerate() {
        if edge_types[l].is_none() {
            edge_types[l] = Some(EdgeType {
                side: g0.trees[g0.darts[edges[e]].tree].side,
                subdivision: embedding.edge_paths[edges[e]]
                    .iter()
                    .map(|&d1| edge_labels[edge_of_dart(images.darts[d1])])
                    .collect(),
            });
        }
    }
    let edge_types: Vec<EdgeType> = edge_types.into_iter().map(|t| t.expect("every label used")).collect();

    let words: Vec<Vec<usize>> = base
        .faces
        .iter()
        .map(|f| least_rotation(&f.iter().map(|&d| edge_labels[edge_of_dart(d)]).collect::<Vec<_>>()))
        .collect();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); base.faces.len()];
    for (f1, &f0) in embedding.face_map.iter().enumerate() {
        children[f0].push(f1);
    }
    let initial: Vec<(usize, Vec<usize>)> =
        words.iter().enumerate().map(|(f, w)| (base.faces[f].len(), w.clone())).collect();
    let labels = refine(initial, |labels, f| {
        let mut sub: Vec<usize> = children[f].iter().map(|&f1| labels[images.faces[f1]]).collect();
        sub.sort();
        sub
    });
    let type_count = labels.iter().max().map_or(0, |m| m + 1);

    let mut by_word: BTreeMap<&Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
    for (f, w) in words.iter().enumerate() {
        by_word.entry(w).or_default().insert(labels[f]);
    }
    let ambiguous: Vec<Vec<usize>> =
        by_word.into_iter().filter(|(_, ts)| ts.len() > 1).map(|(w, _)| w.clone()).collect();

    let mut representative = vec![usize::MAX; type_count];
    for (f, &l) in labels.iter().enumerate() {
        if representative[l] == usize::MAX {
            representative[l] = f;
        }
    }
    let mut tile_types = Vec::with_capacity(type_count);
    let mut census = vec![vec![0u64; type_count]; type_count];
    for (t, &f) in representative.iter().enumerate() {
        let subs = &children[f];
        let position: BTreeMap<usize, usize> = subs.iter().enumerate().map(|(k, &f1)| (f1, k)).collect();
        let subtiles: Vec<SubTile> = subs
            .iter()
            .map(|&f1| SubTile { tile_type: labels[images.faces[f1]], size: pull.faces[f1].len() })
            .collect();
        for s in &subtiles {
            census[t][s.tile_type] += 1;
        }
        let mut adjacency = BTreeSet::new();
        for &f1 in subs {
            for &d in &pull.faces[f1] {
                let other = pull.face_of_dart[pull.graph.rev(d)];
                if let (Some(&a), Some(&b)) = (position.get(&f1), position.get(&other)) {
                    if a != b {
                        adjacency.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
        tile_types.push(TileType {
            name: tile_name(base.faces[f].len()),
            size: base.faces[f].len(),
            boundary: words[f].clone(),
            pattern: ReplacementPattern { subtiles, adjacency: adjacency.into_iter().collect() },
        });
    }
    for (f, &l) in labels.iter().enumerate() {
        let mut counts = vec![0u64; type_count];
        for &f1 in &children[f] {
            counts[labels[images.faces[f1]]] += 1;
        }
        if counts != census[l] {
            return Err(FsrError::ConsistencyFailure(format!("face {f} subdivides unlike its type")));
        }
    }
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for t in &mut tile_types {
        let k = seen.entry(t.name.clone()).or_insert(0);
        *k += 1;
        if *k > 1 {
            t.name = format!("{}#{}", t.name, k);
        }
    }
    let mut initial = vec![0u64; type_count];
    for &l in &labels {
        initial[l] += 1;
    }
    Ok(SubdivisionRuleData { edge_types, tile_types, census, face_types: labels, initial, ambiguous })
}

/// A tile with its subdivision to some depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TileNode {
    pub tile_type: usize,
    pub children: Vec<TileNode>,
}

impl TileNode {
    fn expand(tile_type: usize, rule: &SubdivisionRuleData, depth: usize) -> Self {
        let children = if depth == 0 {
            Vec::new()
        } else {
            rule.tile_types[tile_type]
                .pattern
                .subtiles
                .iter()
                .map(|s| TileNode::expand(s.tile_type, rule, depth - 1))
                .collect()
        };
        TileNode { tile_type, children }
    }

    fn census(&self, out: &mut [u64]) {
        if self.children.is_empty() {
            out[self.tile_type] += 1;
        }
        for c in &self.children {
            c.census(out);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RuleIteration {
    /// Tile counts per type at levels `0..=n`.
    pub levels: Vec<Vec<u128>>,
    /// Explicit tile hierarchy, present when `n` is within the expansion bound.
    pub expansion: Option<Vec<TileNode>>,
}

impl RuleIteration {
    /// Leaf census of the explicit hierarchy.
    pub fn expanded_census(&self, types: usize) -> Option<Vec<u64>> {
        self.expansion.as_ref().map(|roots| {
            let mut out = vec![0; types];
            for r in roots {
                r.census(&mut out);
            }
            out
        })
    }
}

/// Tile census by powers of the census matrix, and the explicit hierarchy up to `bound`.
pub fn iterate_rule(rule: &SubdivisionRuleData, start: &[u64], n: usize, bound: usize) -> Result<RuleIteration> {
    let k = rule.tile_types.len();
    if start.len() != k {
        return Err(FsrError::ConsistencyFailure(format!("start census has {} entries for {k} types", start.len())));
    }
    let mut levels: Vec<Vec<u128>> = vec![start.iter().map(|&x| x as u128).collect()];
    for _ in 0..n {
        let prev = levels.last().expect("level 0");
        let mut next = vec![0u128; k];
        for i in 0..k {
            for j in 0..k {
                let add = prev[i]
                    .checked_mul(rule.census[i][j] as u128)
                    .and_then(|x| next[j].checked_add(x))
                    .ok_or(FsrError::DepthExceeded { what: "tile census".into(), bound: n })?;
                next[j] = add;
            }
        }
        levels.push(next);
    }
    let expansion = (n <= bound).then(|| {
        start
            .iter()
            .enumerate()
            .flat_map(|(t, &c)| (0..c).map(move |_| t))
            .map(|t| TileNode::expand(t, rule, n))
            .collect()
    });
    Ok(RuleIteration { levels, expansion })
}
