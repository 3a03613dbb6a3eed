use std::fmt::Write;

use fsr_core::complexes::TileNode;
use fsr_core::mating::{RayClass, Side};
use fsr_core::Result;

use super::{angle_list, side_name, Artifact, Renderer};

pub struct Dot;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Rays of a class as (alpha node, beta node, ray) triples.
fn class_rays(c: &RayClass) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    for (i, a) in c.nodes.iter().enumerate().filter(|(_, n)| n.side == Side::Alpha) {
        for t in a.point.angles() {
            let r = Side::Alpha.ray(t);
            let own = Side::Beta.own(&r);
            if let Some(j) = c.nodes.iter().position(|n| n.side == Side::Beta && n.point.contains(&own)) {
                out.push((i, j, r.to_string()));
            }
        }
    }
    out
}

fn tiles(out: &mut String, node: &TileNode, types: &[String], next: &mut usize) -> usize {
    let id = *next;
    *next += 1;
    writeln!(out, "  t{id} [label={}];", quote(&types[node.tile_type])).unwrap();
    for c in &node.children {
        let child = tiles(out, c, types, next);
        writeln!(out, "  t{id} -> t{child};").unwrap();
    }
    id
}

impl Renderer for Dot {
    fn name(&self) -> &'static str {
        "dot"
    }

    fn render(&self, artifact: &Artifact) -> Result<String> {
        let mut out = String::new();
        match artifact {
            Artifact::Tree(t) => {
                writeln!(out, "graph tree {{\n  label={};", quote(&format!("Hubbard tree {}", t.parameter()))).unwrap();
                for (i, (v, f)) in t.vertices.iter().zip(&t.flags).enumerate() {
                    let shape = if f.postcritical { "doublecircle" } else { "circle" };
                    writeln!(out, "  v{i} [label={}, shape={shape}];", quote(&angle_list(v.angles()))).unwrap();
                }
                for &(a, b) in &t.edges {
                    writeln!(out, "  v{a} -- v{b};").unwrap();
                }
            }
            Artifact::Partition(p) => {
                writeln!(out, "graph partition {{").unwrap();
                for (k, c) in p.tau_classes.iter().enumerate() {
                    writeln!(
                        out,
                        "  subgraph cluster_{k} {{\n    label={};",
                        quote(&format!("tau {k} (generation {})", p.generation[k]))
                    )
                    .unwrap();
                    for (i, n) in c.nodes.iter().enumerate() {
                        let label = format!("{} {}", side_name(n.side), angle_list(n.point.angles()));
                        writeln!(out, "    c{k}n{i} [label={}];", quote(&label)).unwrap();
                    }
                    for (i, j, r) in class_rays(c) {
                        writeln!(out, "    c{k}n{i} -- c{k}n{j} [label={}];", quote(&r)).unwrap();
                    }
                    writeln!(out, "  }}").unwrap();
                }
            }
            Artifact::Complex { level, complex } => {
                let g = &complex.graph;
                writeln!(
                    out,
                    "graph complex {{\n  label={};",
                    quote(&format!("level {level}, faces {:?}", complex.face_sizes()))
                )
                .unwrap();
                for (i, v) in g.vertices.iter().enumerate() {
                    let label = v
                        .nodes
                        .iter()
                        .map(|n| format!("{} {}", side_name(n.side), angle_list(n.point.angles())))
                        .collect::<Vec<_>>()
                        .join("\\n");
                    let shape = if v.marks.postcritical { "doublecircle" } else { "circle" };
                    writeln!(out, "  v{i} [label={}, shape={shape}];", quote(&label)).unwrap();
                }
                for d in (0..g.darts.len()).step_by(2) {
                    let side = side_name(g.trees[g.darts[d].tree].side);
                    writeln!(out, "  v{} -- v{} [class={side}];", g.tail(d), g.head(d)).unwrap();
                }
            }
            Artifact::Expansion { level, types, roots } => {
                writeln!(out, "digraph expansion {{\n  label={};", quote(&format!("level {level}"))).unwrap();
                let mut next = 0;
                for r in roots {
                    tiles(&mut out, r, types, &mut next);
                }
            }
            Artifact::Rule { rule, .. } => {
                writeln!(out, "digraph rule {{").unwrap();
                for (i, t) in rule.tile_types.iter().enumerate() {
                    writeln!(out, "  t{i} [label={}];", quote(&format!("{} ({})", t.name, t.size))).unwrap();
                }
                for (i, row) in rule.census.iter().enumerate() {
                    for (j, &c) in row.iter().enumerate().filter(|(_, &c)| c > 0) {
                        writeln!(out, "  t{i} -> t{j} [label=\"{c}\"];").unwrap();
                    }
                }
            }
            Artifact::Equator(c) => {
                writeln!(out, "digraph equator {{").unwrap();
                for (i, p) in c.points.iter().enumerate() {
                    writeln!(out, "  p{i} [label={}];", quote(&p.position.to_string())).unwrap();
                }
                for (k, e) in c.edges.iter().enumerate() {
                    writeln!(out, "  p{} -> p{} [dir=none, label=\"E{k}\"];", e.from, e.to).unwrap();
                }
                for (i, &j) in c.dynamics.iter().enumerate() {
                    writeln!(out, "  p{i} -> p{j} [style=dashed];").unwrap();
                }
            }
            Artifact::Decomposition(d) => {
                writeln!(out, "digraph decomposition {{\n  label={};", quote(&format!("lambda {}", d.result.lambda)))
                    .unwrap();
                for (i, v) in d.result.v.iter().enumerate() {
                    writeln!(out, "  e{i} [label={}];", quote(&format!("E{i} length {v}"))).unwrap();
                }
                for (i, row) in d.matrix.rows.iter().enumerate() {
                    for (j, &c) in row.iter().enumerate().filter(|(_, &c)| c > 0) {
                        writeln!(out, "  e{i} -> e{j} [label=\"{c}\"];").unwrap();
                    }
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}
