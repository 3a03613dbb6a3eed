use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt::Write;

use fsr_core::angle_dynamics::Angle;
use fsr_core::complexes::TileNode;
use fsr_core::Result;

use super::layout::{distinct, tree_walk, tutte};
use super::{angle_list, side_name, Artifact, Renderer};

pub struct Svg;

const SIZE: f64 = 480.0;
const RADIUS: f64 = 200.0;
const PALETTE: [&str; 6] = ["#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6", "#ffff99"];

fn px((x, y): (f64, f64)) -> (f64, f64) {
    (SIZE / 2.0 + RADIUS * x, SIZE / 2.0 + RADIUS * y)
}

fn angle_f64(a: &Angle) -> f64 {
    let n: f64 = a.numerator().to_string().parse().expect("decimal digits");
    let d: f64 = a.denominator().to_string().parse().expect("decimal digits");
    n / d
}

/// Point of the unit circle at external angle `t`, counterclockwise on screen.
fn on_circle(t: f64) -> (f64, f64) {
    ((TAU * t).cos(), -(TAU * t).sin())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn header(out: &mut String, title: &str) {
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", escape(title)).unwrap();
}

fn vertex(out: &mut String, p: (f64, f64), filled: bool, label: &str) {
    let (x, y) = px(p);
    let fill = if filled { "black" } else { "white" };
    writeln!(
        out,
        "<circle class=\"vertex\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"{fill}\" stroke=\"black\"><title>{}</title></circle>",
        escape(label)
    )
    .unwrap();
}

fn edge(out: &mut String, a: (f64, f64), b: (f64, f64), class: &str) {
    let ((x1, y1), (x2, y2)) = (px(a), px(b));
    writeln!(
        out,
        "<line class=\"edge {class}\" x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"black\"/>"
    )
    .unwrap();
}

fn text(out: &mut String, x: f64, y: f64, s: &str) {
    writeln!(out, "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"12\">{}</text>", escape(s)).unwrap();
}

fn guide_circle(out: &mut String) {
    let c = SIZE / 2.0;
    writeln!(out, "<circle class=\"circle\" cx=\"{c}\" cy=\"{c}\" r=\"{RADIUS}\" fill=\"none\" stroke=\"#999\"/>")
        .unwrap();
}

/// Counterclockwise circle arc from angle `a` to angle `b`.
fn arc(out: &mut String, a: f64, b: f64, class: &str, label: &str) {
    let (x1, y1) = px(on_circle(a));
    let (x2, y2) = px(on_circle(b));
    let sweep = (b - a).rem_euclid(1.0);
    let large = u8::from(sweep > 0.5);
    writeln!(
        out,
        "<path class=\"{class}\" d=\"M {x1:.2} {y1:.2} A {RADIUS} {RADIUS} 0 {large} 0 {x2:.2} {y2:.2}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"><title>{}</title></path>",
        escape(label)
    )
    .unwrap();
}

/// Nested rectangles, alternating the split direction with depth.
fn treemap(out: &mut String, node: &TileNode, types: &[String], rect: (f64, f64, f64, f64), depth: usize) {
    let (x, y, w, h) = rect;
    if node.children.is_empty() {
        let fill = PALETTE[node.tile_type % PALETTE.len()];
        writeln!(
            out,
            "<rect class=\"tile\" x=\"{x:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"{fill}\" stroke=\"black\"><title>{}</title></rect>",
            escape(&types[node.tile_type])
        )
        .unwrap();
        return;
    }
    let k = node.children.len() as f64;
    for (i, c) in node.children.iter().enumerate() {
        let i = i as f64;
        let sub = if depth.is_multiple_of(2) { (x + w * i / k, y, w / k, h) } else { (x, y + h * i / k, w, h / k) };
        treemap(out, c, types, sub, depth + 1);
    }
}

impl Renderer for Svg {
    fn name(&self) -> &'static str {
        "svg"
    }

    fn render(&self, artifact: &Artifact) -> Result<String> {
        let mut out = String::new();
        match artifact {
            Artifact::Tree(t) => {
                header(&mut out, &format!("Hubbard tree {}", t.parameter()));
                let leaves = tree_walk(&t.rotation).into_iter().filter(|&v| t.rotation[v].len() <= 1);
                let outer = distinct(leaves);
                let pos = tutte(t.len(), &outer, &t.edges);
                for &(a, b) in &t.edges {
                    edge(&mut out, pos[a], pos[b], "tree");
                }
                for (i, v) in t.vertices.iter().enumerate() {
                    vertex(&mut out, pos[i], t.flags[i].postcritical, &angle_list(v.angles()));
                }
            }
            Artifact::Complex { level, complex } => {
                let g = &complex.graph;
                header(&mut out, &format!("complex level {level}"));
                let outer_face = (0..complex.faces.len())
                    .max_by_key(|&f| (complex.faces[f].len(), std::cmp::Reverse(f)))
                    .unwrap_or(0);
                let outer = distinct(complex.faces.get(outer_face).into_iter().flatten().map(|&d| g.tail(d)));
                let edges: Vec<(usize, usize)> =
                    (0..g.darts.len()).step_by(2).map(|d| (g.tail(d), g.head(d))).collect();
                let pos = tutte(g.vertex_count(), &outer, &edges);
                for (f, face) in complex.faces.iter().enumerate() {
                    let pts: Vec<String> = face
                        .iter()
                        .map(|&d| {
                            let (x, y) = px(pos[g.tail(d)]);
                            format!("{x:.2},{y:.2}")
                        })
                        .collect();
                    writeln!(
                        out,
                        "<polygon class=\"face\" data-face=\"{f}\" data-size=\"{}\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.3\" stroke=\"none\"/>",
                        face.len(),
                        pts.join(" "),
                        PALETTE[f % PALETTE.len()]
                    )
                    .unwrap();
                }
                for d in (0..g.darts.len()).step_by(2) {
                    edge(&mut out, pos[g.tail(d)], pos[g.head(d)], side_name(g.trees[g.darts[d].tree].side));
                }
                for (i, v) in g.vertices.iter().enumerate() {
                    let label = v
                        .nodes
                        .iter()
                        .map(|n| format!("{} {}", side_name(n.side), angle_list(n.point.angles())))
                        .collect::<Vec<_>>()
                        .join("; ");
                    vertex(&mut out, pos[i], v.marks.postcritical, &label);
                }
            }
            Artifact::Partition(p) => {
                header(&mut out, "essential partition");
                guide_circle(&mut out);
                for (k, c) in p.tau_classes.iter().enumerate() {
                    let rays: BTreeSet<Angle> =
                        c.nodes.iter().flat_map(|n| n.point.angles().iter().map(move |t| n.side.ray(t))).collect();
                    let pts: Vec<String> = rays
                        .iter()
                        .map(|r| {
                            let (x, y) = px(on_circle(angle_f64(r)));
                            format!("{x:.2},{y:.2}")
                        })
                        .collect();
                    writeln!(
                        out,
                        "<polygon class=\"class\" data-class=\"{k}\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.5\" stroke=\"black\"><title>{}</title></polygon>",
                        pts.join(" "),
                        PALETTE[k % PALETTE.len()],
                        escape(&angle_list(&rays.iter().collect::<Vec<_>>()))
                    )
                    .unwrap();
                }
            }
            Artifact::Expansion { level, types, roots } => {
                header(&mut out, &format!("expansion level {level}"));
                let k = roots.len().max(1) as f64;
                for (i, r) in roots.iter().enumerate() {
                    let w = (SIZE - 40.0) / k;
                    treemap(&mut out, r, types, (20.0 + w * i as f64, 20.0, w, SIZE - 40.0), 1);
                }
            }
            Artifact::Rule { rule, .. } => {
                header(&mut out, "subdivision rule");
                let k = rule.tile_types.len().max(1) as f64;
                for (i, t) in rule.tile_types.iter().enumerate() {
                    let cx = SIZE * (i as f64 + 0.5) / k;
                    let r = 0.4 * SIZE / k.max(2.0);
                    let pts: Vec<String> = (0..t.size)
                        .map(|j| {
                            let a = TAU * j as f64 / t.size as f64;
                            format!("{:.2},{:.2}", cx + r * a.cos(), SIZE / 3.0 - r * a.sin())
                        })
                        .collect();
                    writeln!(
                        out,
                        "<polygon class=\"tile-type\" points=\"{}\" fill=\"{}\" stroke=\"black\"/>",
                        pts.join(" "),
                        PALETTE[i % PALETTE.len()]
                    )
                    .unwrap();
                    text(&mut out, cx - r, SIZE / 3.0 + r + 20.0, &t.name);
                    let row: Vec<String> = rule.census[i]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c > 0)
                        .map(|(j, c)| format!("{c} {}", rule.tile_types[j].name))
                        .collect();
                    text(&mut out, cx - r, SIZE / 3.0 + r + 40.0, &format!("-> {}", row.join(", ")));
                }
            }
            Artifact::Equator(c) => {
                header(&mut out, "pseudo-equator");
                for e in &c.edges {
                    let (a, b) = (&c.points[e.from].position, &c.points[e.to].position);
                    arc(&mut out, angle_f64(a), angle_f64(b), "arc", &format!("face {}", e.face));
                }
                for p in &c.points {
                    vertex(&mut out, on_circle(angle_f64(&p.position)), true, &p.position.to_string());
                }
            }
            Artifact::Decomposition(d) => {
                header(&mut out, &format!("decomposition, lambda {}", d.result.lambda));
                let theta: Vec<f64> = d.result.theta.iter().map(angle_f64).collect();
                let n = theta.len();
                for i in 0..n {
                    arc(&mut out, theta[i], theta[(i + 1) % n], "arc", &format!("E{i} length {}", d.result.v[i]));
                }
                for (t, a) in theta.iter().zip(&d.result.theta) {
                    vertex(&mut out, on_circle(*t), true, &a.to_string());
                }
                let (x, y) = d.result.recovered_pair.clone();
                text(&mut out, 10.0, SIZE - 10.0, &format!("recovered pair ({x}, {y})"));
            }
        }
        out.push_str("</svg>\n");
        Ok(out)
    }
}
