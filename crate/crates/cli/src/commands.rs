use serde_json::{json, Value};

use fsr_core::angle_dynamics::Angle;
use fsr_core::complexes::{construct, iterate_rule, CWComplex2, FsrConstruction, StrategyRegistry};
use fsr_core::mating::Mating;
use fsr_core::pseudo_equator::{build_equator, decompose, EquatorOutcome};
use fsr_core::{Config, Engine, FsrError, Result};

use crate::args::{Command, MateCommand, Pair, PolyCommand, RenderArgs, RuleCommand, SideArg, Target};
use crate::render::{check_level, Artifact, RendererRegistry};
use crate::workspace::{Outcome, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_OBSTRUCTED: i32 = 3;
pub const EXIT_PINCHED: i32 = 4;
pub const EXIT_BOUND: i32 = 5;
pub const EXIT_USAGE: i32 = 64;

pub fn exit_code(e: &FsrError) -> i32 {
    match e {
        FsrError::InvalidMating { .. } | FsrError::NotMisiurewicz(_) => EXIT_INVALID,
        FsrError::ObstructedMating => EXIT_OBSTRUCTED,
        FsrError::Pinched => EXIT_PINCHED,
        FsrError::LimbNotFound { .. }
        | FsrError::DepthExceeded { .. }
        | FsrError::ClosureDepthExceeded { .. }
        | FsrError::GenerationBoundExceeded { .. }
        | FsrError::RepairFailed { .. }
        | FsrError::NoIntegerEigenvalue { .. }
        | FsrError::LevelTooDeep { .. } => EXIT_BOUND,
        FsrError::Parse(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn failure(e: &FsrError) -> Outcome {
    Outcome { code: exit_code(e), stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn envelope(command: &str, input: Value, result: Value) -> String {
    let v = json!({ "schema_version": SCHEMA_VERSION, "command": command, "input": input, "result": result });
    serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn pair_input(p: &Pair) -> Value {
    json!({ "alpha": p.alpha, "beta": p.beta })
}

fn strategy_name(single: Option<SideArg>) -> &'static str {
    match single {
        None => "essential",
        Some(SideArg::Alpha) => "single-tree-alpha",
        Some(SideArg::Beta) => "single-tree-beta",
    }
}

fn summary(c: &CWComplex2) -> Value {
    json!({
        "vertices": c.graph.vertex_count(),
        "edges": c.graph.edge_count(),
        "faces": c.faces.len(),
        "face_sizes": c.face_sizes(),
    })
}

/// Canonical cache key: the operation and its arguments, with the configuration.
pub fn cache_key(command: &Command, config: &Config) -> String {
    let pair = |p: &Pair| format!("{} {}", p.alpha, p.beta);
    let op = match command {
        Command::Poly(PolyCommand::Tree { angle }) => format!("poly-tree {angle}"),
        Command::Mate(MateCommand::Validate(p)) => format!("mate-validate {}", pair(p)),
        Command::Mate(MateCommand::Partition(p)) => format!("mate-partition {}", pair(p)),
        Command::Mate(MateCommand::Fsr { pair: p, single_tree }) => {
            format!("mate-fsr {} {}", pair(p), strategy_name(*single_tree))
        }
        Command::Mate(MateCommand::Obstruction(p)) => format!("mate-obstruction {}", pair(p)),
        Command::Mate(MateCommand::PseudoEquator(p)) => format!("mate-pseudo-equator {}", pair(p)),
        Command::Rule(RuleCommand::Iterate { pair: p, levels, single_tree }) => {
            format!("rule-iterate {} {} {levels}", pair(p), strategy_name(*single_tree))
        }
        Command::Render(r) => format!(
            "render {} {} {} {} {}",
            r.format.name(),
            r.target.name(),
            r.angles.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" "),
            r.level,
            strategy_name(r.single_tree)
        ),
    };
    format!("{op} {}", serde_json::to_string(config).expect("config serializes"))
}

pub fn execute(command: &Command, config: &Config) -> Outcome {
    let engine = Engine::new(config.clone());
    let result = match command {
        Command::Poly(PolyCommand::Tree { angle }) => poly_tree(&engine, angle),
        Command::Mate(MateCommand::Validate(p)) => return validate(&engine, p),
        Command::Mate(MateCommand::Partition(p)) => partition(&engine, p),
        Command::Mate(MateCommand::Fsr { pair, single_tree }) => fsr(&engine, pair, *single_tree),
        Command::Mate(MateCommand::Obstruction(p)) => obstruction(&engine, p),
        Command::Mate(MateCommand::PseudoEquator(p)) => pseudo_equator(&engine, p),
        Command::Rule(RuleCommand::Iterate { pair, levels, single_tree }) => {
            rule_iterate(&engine, pair, *levels, *single_tree)
        }
        Command::Render(r) => render(&engine, r),
    };
    result.unwrap_or_else(|e| failure(&e))
}

fn poly_tree(engine: &Engine, angle: &Angle) -> Result<Outcome> {
    if !angle.is_misiurewicz() {
        return Err(FsrError::NotMisiurewicz(angle.clone()));
    }
    let tree = engine.tree(angle)?;
    let limb = engine.limb(angle)?;
    let result = json!({ "orbit": angle.orbit(), "limb": limb, "tree": value(tree.as_ref()) });
    Ok(Outcome::ok(envelope("poly tree", json!({ "angle": angle }), result)))
}

fn validate(engine: &Engine, p: &Pair) -> Outcome {
    match engine.validate(&p.alpha, &p.beta) {
        Ok(spec) => Outcome::ok(envelope("mate validate", pair_input(p), json!({ "valid": true, "spec": spec }))),
        Err(FsrError::InvalidMating { reason, .. }) => Outcome {
            code: EXIT_INVALID,
            stdout: envelope("mate validate", pair_input(p), json!({ "valid": false, "reason": reason })),
            stderr: String::new(),
        },
        Err(e) => failure(&e),
    }
}

fn partition(engine: &Engine, p: &Pair) -> Result<Outcome> {
    let m = engine.mating(&p.alpha, &p.beta)?;
    let part = m.essential_partition()?;
    let result = json!({ "class_count": part.tau_classes.len(), "partition": part });
    Ok(Outcome::ok(envelope("mate partition", pair_input(p), result)))
}

fn obstruction(engine: &Engine, p: &Pair) -> Result<Outcome> {
    let m = engine.mating(&p.alpha, &p.beta)?;
    let report = m.obstruction_check(&m.essential_partition()?)?;
    let code = if report.is_clean() { EXIT_OK } else { EXIT_OBSTRUCTED };
    Ok(Outcome { code, stdout: envelope("mate obstruction", pair_input(p), value(&report)), stderr: String::new() })
}

fn build(m: &Mating, single: Option<SideArg>) -> Result<FsrConstruction> {
    let registry = StrategyRegistry::default();
    let strategy = registry.get(strategy_name(single)).expect("registered strategy");
    construct(m, strategy)
}

fn fsr(engine: &Engine, p: &Pair, single: Option<SideArg>) -> Result<Outcome> {
    let m = engine.mating(&p.alpha, &p.beta)?;
    let mut input = pair_input(p);
    input["strategy"] = json!(strategy_name(single));
    if single.is_none() {
        let report = m.obstruction_check(&m.essential_partition()?)?;
        if !report.is_clean() {
            return Ok(Outcome {
                code: EXIT_OBSTRUCTED,
                stdout: envelope("mate fsr", input, json!({ "status": "obstructed", "obstruction": report })),
                stderr: String::new(),
            });
        }
    }
    let c = build(&m, single)?;
    let result = json!({
        "status": "ok",
        "strategy": c.strategy,
        "tile_types": c.rule.tile_types.iter().map(|t| t.name.as_str()).collect::<Vec<_>>(),
        "base": summary(&c.base),
        "pullback": summary(&c.pullback),
        "rule": c.rule,
    });
    Ok(Outcome::ok(envelope("mate fsr", input, result)))
}

fn pseudo_equator(engine: &Engine, p: &Pair) -> Result<Outcome> {
    let m = engine.mating(&p.alpha, &p.beta)?;
    let part = m.essential_partition()?;
    let registry = StrategyRegistry::default();
    let (_, base) = registry.get("essential").expect("registered strategy").skeleton(&m, &part)?;
    if let EquatorOutcome::Pinched(report) = build_equator(&m, &base, &part)? {
        return Ok(Outcome {
            code: EXIT_PINCHED,
            stdout: envelope("mate pseudo-equator", pair_input(p), json!({ "status": "pinched", "pinch": report })),
            stderr: String::new(),
        });
    }
    let d = decompose(&m, &base, &part)?;
    let positions: Vec<&Angle> = d.curve.points.iter().map(|q| &q.position).collect();
    let result = json!({
        "status": "jordan",
        "points": positions,
        "matrix": d.matrix,
        "decomposition": d.result,
    });
    Ok(Outcome::ok(envelope("mate pseudo-equator", pair_input(p), result)))
}

fn rule_iterate(engine: &Engine, p: &Pair, levels: usize, single: Option<SideArg>) -> Result<Outcome> {
    let m = engine.mating(&p.alpha, &p.beta)?;
    let c = build(&m, single)?;
    let it = iterate_rule(&c.rule, &c.rule.initial, levels, engine.config.expansion_bound)?;
    let mut input = pair_input(p);
    input["strategy"] = json!(strategy_name(single));
    input["levels"] = json!(levels);
    let result = json!({
        "tile_types": c.rule.tile_types.iter().map(|t| t.name.as_str()).collect::<Vec<_>>(),
        "census": c.rule.census,
        "levels": crate::render::census_levels(&it.levels),
        "expanded_census": it.expanded_census(c.rule.tile_types.len()),
    });
    Ok(Outcome::ok(envelope("rule iterate", input, result)))
}

fn artifact(engine: &Engine, r: &RenderArgs) -> Result<Artifact> {
    let bound = engine.config.expansion_bound;
    if r.target == Target::Tree {
        let [angle] = r.angles.as_slice() else {
            return Err(FsrError::Parse("target tree takes exactly one angle".into()));
        };
        if !angle.is_misiurewicz() {
            return Err(FsrError::NotMisiurewicz(angle.clone()));
        }
        return Ok(Artifact::Tree(engine.tree(angle)?));
    }
    let [alpha, beta] = r.angles.as_slice() else {
        return Err(FsrError::Parse(format!("target {} takes two angles", r.target.name())));
    };
    let m = engine.mating(alpha, beta)?;
    let registry = StrategyRegistry::default();
    let strategy = registry.get(strategy_name(r.single_tree)).expect("registered strategy");
    let part = m.essential_partition()?;
    Ok(match r.target {
        Target::Tree => unreachable!("handled above"),
        Target::Partition => Artifact::Partition(part),
        Target::Complex => {
            check_level(r.level, bound)?;
            match r.level {
                0 => Artifact::Complex { level: 0, complex: Box::new(strategy.skeleton(&m, &part)?.1) },
                1 => {
                    let (input, _) = strategy.skeleton(&m, &part)?;
                    Artifact::Complex { level: 1, complex: Box::new(strategy.pullback(&m, &input, &part)?) }
                }
                level => {
                    let c = construct(&m, strategy)?;
                    let it = iterate_rule(&c.rule, &c.rule.initial, level, bound)?;
                    Artifact::Expansion {
                        level,
                        types: c.rule.tile_types.iter().map(|t| t.name.clone()).collect(),
                        roots: it.expansion.unwrap_or_default(),
                    }
                }
            }
        }
        Target::Rule => {
            let c = construct(&m, strategy)?;
            let iteration = iterate_rule(&c.rule, &c.rule.initial, r.level, bound)?;
            Artifact::Rule { rule: Box::new(c.rule), iteration }
        }
        Target::Equator => {
            let (_, base) = strategy.skeleton(&m, &part)?;
            match build_equator(&m, &base, &part)? {
                EquatorOutcome::Jordan(curve) => Artifact::Equator(Box::new(curve)),
                EquatorOutcome::Pinched(_) => return Err(FsrError::Pinched),
            }
        }
        Target::Decomposition => {
            let (_, base) = strategy.skeleton(&m, &part)?;
            Artifact::Decomposition(Box::new(decompose(&m, &base, &part)?))
        }
    })
}

fn render(engine: &Engine, r: &RenderArgs) -> Result<Outcome> {
    let a = artifact(engine, r)?;
    let registry = RendererRegistry::default();
    let renderer = registry.get(r.format.name()).expect("registered renderer");
    Ok(Outcome::ok(renderer.render(&a)?))
}
