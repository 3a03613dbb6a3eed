//! Deterministic renderers for pipeline artifacts. JSON is normative; DOT and SVG
//! are visual aids derived from the same data.

mod dot;
pub(crate) mod json;
mod layout;
mod svg;

use std::sync::Arc;

use fsr_core::complexes::{CWComplex2, RuleIteration, SubdivisionRuleData, TileNode};
use fsr_core::hubbard_tree::HubbardTree;
use fsr_core::mating::{EssentialPartition, Side};
use fsr_core::pseudo_equator::{Decomposition, EquatorCurve};
use fsr_core::{FsrError, Result};

pub use dot::Dot;
pub(crate) use json::census_levels;
pub use json::Json;
pub use svg::Svg;

/// Anything the CLI can render.
#[derive(Clone, Debug)]
pub enum Artifact {
    Tree(Arc<HubbardTree>),
    Partition(EssentialPartition),
    /// Level 0 is the base complex, level 1 its pullback.
    Complex {
        level: usize,
        complex: Box<CWComplex2>,
    },
    /// Explicit tile hierarchy of the rule at levels beyond the pullback.
    Expansion {
        level: usize,
        types: Vec<String>,
        roots: Vec<TileNode>,
    },
    Rule {
        rule: Box<SubdivisionRuleData>,
        iteration: RuleIteration,
    },
    Equator(Box<EquatorCurve>),
    Decomposition(Box<Decomposition>),
}

pub trait Renderer: Send + Sync {
    fn name(&self) -> &'static str;
    fn render(&self, artifact: &Artifact) -> Result<String>;
}

/// Renderers registered by format name.
pub struct RendererRegistry {
    entries: Vec<Box<dyn Renderer>>,
}

impl Default for RendererRegistry {
    fn default() -> Self {
        let mut r = RendererRegistry { entries: Vec::new() };
        r.register(Box::new(Json));
        r.register(Box::new(Dot));
        r.register(Box::new(Svg));
        r
    }
}

impl RendererRegistry {
    /// Adds `r`, replacing any renderer of the same name.
    pub fn register(&mut self, r: Box<dyn Renderer>) {
        self.entries.retain(|e| e.name() != r.name());
        self.entries.push(r);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Renderer> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }
}

/// Rejects explicit complexes deeper than the expansion bound.
pub fn check_level(level: usize, bound: usize) -> Result<()> {
    if level > bound {
        return Err(FsrError::LevelTooDeep { level, bound });
    }
    Ok(())
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Alpha => "alpha",
        Side::Beta => "beta",
    }
}

fn angle_list<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
