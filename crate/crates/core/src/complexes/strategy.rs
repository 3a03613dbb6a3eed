use serde::Serialize;

use crate::error::{FsrError, Result};
use crate::mating::{EssentialPartition, Mating, Side};

use super::build::{digon_repair, quotient_skeleton, single_tree_skeleton, SkeletonInput};
use super::graph::CWComplex2;
use super::pullback::{check_subdivision, pullback_complex, pullback_complex_unchecked, Embedding};
use super::rule::{extract_rule, RuleImages, SubdivisionRuleData};

/// A way of choosing the base skeleton of a subdivision rule.
pub trait SkeletonStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn skeleton(&self, mating: &Mating, partition: &EssentialPartition) -> Result<(SkeletonInput, CWComplex2)>;

    fn pullback(&self, mating: &Mating, input: &SkeletonInput, partition: &EssentialPartition) -> Result<CWComplex2>;
}

/// Both trees glued along the τ classes; requires a clean obstruction check.
pub struct Essential;

impl SkeletonStrategy for Essential {
    fn name(&self) -> &'static str {
        "essential"
    }

    fn skeleton(&self, mating: &Mating, partition: &EssentialPartition) -> Result<(SkeletonInput, CWComplex2)> {
        digon_repair(mating, quotient_skeleton(mating, partition)?)
    }

    fn pullback(&self, mating: &Mating, input: &SkeletonInput, partition: &EssentialPartition) -> Result<CWComplex2> {
        pullback_complex(mating, input, partition)
    }
}

/// One quotiented tree carrying the whole critical orbit.
pub struct SingleTree(pub Side);

impl SkeletonStrategy for SingleTree {
    fn name(&self) -> &'static str {
        match self.0 {
            Side::Alpha => "single-tree-alpha",
            Side::Beta => "single-tree-beta",
        }
    }

    fn skeleton(&self, mating: &Mating, partition: &EssentialPartition) -> Result<(SkeletonInput, CWComplex2)> {
        single_tree_skeleton(mating, self.0, partition)
    }

    fn pullback(&self, mating: &Mating, input: &SkeletonInput, partition: &EssentialPartition) -> Result<CWComplex2> {
        pullback_complex_unchecked(mating, input, partition)
    }
}

/// Strategies by name, in registration order.
pub struct StrategyRegistry {
    entries: Vec<Box<dyn SkeletonStrategy>>,
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut r = StrategyRegistry { entries: Vec::new() };
        r.register(Box::new(Essential));
        r.register(Box::new(SingleTree(Side::Alpha)));
        r.register(Box::new(SingleTree(Side::Beta)));
        r
    }
}

impl StrategyRegistry {
    /// Adds a strategy, replacing any with the same name.
    pub fn register(&mut self, s: Box<dyn SkeletonStrategy>) {
        self.entries.retain(|e| e.name() != s.name());
        self.entries.push(s);
    }

    pub fn get(&self, name: &str) -> Option<&dyn SkeletonStrategy> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }
}

/// Everything produced on the way from a mating to its rule.
#[derive(Clone, Debug, Serialize)]
pub struct FsrConstruction {
    pub strategy: &'static str,
    pub partition: EssentialPartition,
    pub input: SkeletonInput,
    pub base: CWComplex2,
    pub pullback: CWComplex2,
    pub embedding: Embedding,
    pub images: RuleImages,
    pub rule: SubdivisionRuleData,
}

pub fn construct(mating: &Mating, strategy: &dyn SkeletonStrategy) -> Result<FsrConstruction> {
    let partition = mating.essential_partition()?;
    let (input, base) = strategy.skeleton(mating, &partition)?;
    let pullback = strategy.pullback(mating, &input, &partition)?;
    let check = check_subdivision(&base, &pullback);
    let embedding = match check.embedding {
        Some(e) if check.ok => e,
        _ => return Err(FsrError::NotASubdivision(check.failure.unwrap_or_default())),
    };
    let images = RuleImages::compute(mating, &base, &pullback)?;
    let rule = extract_rule(&base, &pullback, &embedding, &images)?;
    Ok(FsrConstruction { strategy: strategy.name(), partition, input, base, pullback, embedding, images, rule })
}
