use serde_json::{json, Value};

use fsr_core::Result;

use super::{Artifact, Renderer};

pub struct Json;

pub(crate) fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("artifacts serialize")
}

/// Counts as JSON numbers while they fit in 64 bits, decimal strings beyond.
pub(crate) fn census_levels(levels: &[Vec<u128>]) -> Value {
    levels
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from))
                .collect::<Value>()
        })
        .collect()
}

impl Renderer for Json {
    fn name(&self) -> &'static str {
        "json"
    }

    fn render(&self, artifact: &Artifact) -> Result<String> {
        let v = match artifact {
            Artifact::Tree(t) => to_value(t.as_ref()),
            Artifact::Partition(p) => to_value(p),
            Artifact::Complex { level, complex } => json!({
                "level": level,
                "face_sizes": complex.face_sizes(),
                "complex": to_value(complex.as_ref()),
            }),
            Artifact::Expansion { level, types, roots } => json!({ "level": level, "types": types, "tiles": roots }),
            Artifact::Rule { rule, iteration } => json!({
                "rule": to_value(rule.as_ref()),
                "levels": census_levels(&iteration.levels),
                "expanded_census": iteration.expanded_census(rule.tile_types.len()),
            }),
            Artifact::Equator(c) => to_value(c.as_ref()),
            Artifact::Decomposition(d) => to_value(d.as_ref()),
        };
        Ok(serde_json::to_string_pretty(&v).expect("values serialize") + "\n")
    }
}
