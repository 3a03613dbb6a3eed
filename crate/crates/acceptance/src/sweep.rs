//! Property checks over every tree with denominator up to a bound and every admissible
//! pair with denominator up to a bound.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use fsr_core::angle_dynamics::Angle;
use fsr_core::complexes::{construct, iterate_rule, CWComplex2, Essential, SkeletonStrategy};
use fsr_core::mating::{Mating, RayClass};
use fsr_core::pseudo_equator::{build_equator, decompose, EquatorOutcome};
use fsr_core::{Engine, FsrError};

/// Counts of checked cases, of cases a property does not apply to, and failures.
#[derive(Debug, Default)]
pub struct Tally {
    pub checked: BTreeMap<&'static str, usize>,
    pub skipped: BTreeMap<&'static str, usize>,
    pub failures: Vec<String>,
}

impl Tally {
    fn pass(&mut self, what: &'static str) {
        *self.checked.entry(what).or_default() += 1;
    }

    fn skip(&mut self, why: &'static str) {
        *self.skipped.entry(why).or_default() += 1;
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    fn check(&mut self, what: &'static str, ok: bool, ctx: impl FnOnce() -> String) {
        if ok {
            self.pass(what);
        } else {
            self.fail(format!("{what}: {}", ctx()));
        }
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |m: &BTreeMap<&str, usize>| m.iter().map(|(k, v)| format!("{k} {v}")).collect::<Vec<_>>().join(", ");
        write!(f, "checked [{}]", list(&self.checked))?;
        if !self.skipped.is_empty() {
            write!(f, "; not applicable [{}]", list(&self.skipped))?;
        }
        if !self.failures.is_empty() {
            write!(f, "; {} failures, first: {}", self.failures.len(), self.failures[0])?;
        }
        Ok(())
    }
}

/// Co-landing is an equivalence relation and the tree invariants hold, for each angle.
pub fn tree_suite(engine: &Engine, angles: &[Angle]) -> Tally {
    let mut t = Tally::default();
    for theta in angles {
        let (d, tree) = match (engine.dendrite(theta), engine.tree(theta)) {
            (Ok(d), Ok(tree)) => (d, tree),
            (Err(e), _) | (_, Err(e)) => {
                t.fail(format!("{theta}: {e}"));
                continue;
            }
        };
        let v = tree.invariant_violations(&d);
        t.check("tree invariants", v.is_empty(), || format!("{theta}: {v:?}"));
        let leaves_ok = (0..tree.len()).all(|i| tree.neighbours(i).len() > 1 || tree.flags[i].postcritical);
        t.check("leaves postcritical", leaves_ok, || format!("{theta}"));

        let mut universe: Vec<Angle> = tree
            .vertices
            .iter()
            .flat_map(|v| {
                v.angles().iter().flat_map(|a| {
                    let (x, y) = a.halves();
                    [a.clone(), x, y]
                })
            })
            .collect();
        universe.sort();
        universe.dedup();
        let n = universe.len();
        let rel: Vec<Vec<bool>> =
            universe.iter().map(|a| universe.iter().map(|b| d.co_lands(a, b)).collect()).collect();
        let reflexive = (0..n).all(|i| rel[i][i]);
        let symmetric = (0..n).all(|i| (0..n).all(|j| rel[i][j] == rel[j][i]));
        let transitive = (0..n).all(|i| (0..n).all(|j| !rel[i][j] || (0..n).all(|k| !rel[j][k] || rel[i][k])));
        t.check("co-landing equivalence", reflexive && symmetric && transitive, || format!("{theta}"));
    }
    t
}

fn sphere(c: &CWComplex2) -> bool {
    c.euler_characteristic() == 2 && c.face_sizes().iter().sum::<usize>() == 2 * c.graph.edge_count()
}

fn within(c: &RayClass, outer: &RayClass) -> bool {
    c.nodes.iter().all(|n| outer.contains(n))
}

fn classes(t: &mut Tally, m: &Mating, name: &str) -> Option<fsr_core::mating::EssentialPartition> {
    let part = match m.essential_partition() {
        Ok(p) => p,
        Err(e) => {
            t.fail(format!("{name} partition: {e}"));
            return None;
        }
    };
    for c in &part.tau_classes {
        let seed = &c.nodes[0];
        match m.tilde_t_component(seed) {
            Ok(top) => t.check("essential refines topological", within(c, &top), || name.to_string()),
            Err(e) => t.fail(format!("{name} ~t: {e}")),
        }
        let images: Result<Vec<_>, FsrError> = c.nodes.iter().map(|n| m.image(n)).collect();
        match images.and_then(|img| m.ray_component(&img[0]).map(|k| (img, k))) {
            Ok((img, k)) => {
                t.check("doubling maps classes into classes", img.iter().all(|n| k.contains(n)), || name.to_string())
            }
            Err(e) => t.fail(format!("{name} image: {e}")),
        }
    }
    Some(part)
}

/// Partition, complex, rule and pseudo-equator properties for every admissible pair.
pub fn pair_suite(engine: &Engine, angles: &[Angle], levels: usize) -> Tally {
    let mut t = Tally::default();
    for x in angles {
        for y in angles {
            let name = format!("({x},{y})");
            let m = match engine.mating(x, y) {
                Ok(m) => m,
                Err(FsrError::InvalidMating { .. }) => {
                    t.skip("conjugate limbs");
                    continue;
                }
                Err(e) => {
                    t.fail(format!("{name}: {e}"));
                    continue;
                }
            };
            let Some(part) = classes(&mut t, &m, &name) else { continue };
            let (_, base) = match Essential.skeleton(&m, &part) {
                Ok(s) => s,
                Err(FsrError::DisconnectedSkeleton) => {
                    t.check("disconnected only when formal", part.is_empty(), || name.clone());
                    continue;
                }
                Err(e) => {
                    t.fail(format!("{name} skeleton: {e}"));
                    continue;
                }
            };
            t.check("euler and face sizes", sphere(&base), || format!("{name} level 0"));
            t.check("faces have three sides", base.face_sizes().iter().all(|&s| s >= 3), || name.clone());
            let clean = match m.obstruction_check(&part) {
                Ok(r) => r.is_clean(),
                Err(e) => {
                    t.fail(format!("{name} obstruction: {e}"));
                    continue;
                }
            };
            match construct(&m, &Essential) {
                Ok(c) => {
                    t.check("euler and face sizes", sphere(&c.pullback), || format!("{name} level 1"));
                    match iterate_rule(&c.rule, &c.rule.initial, levels, levels) {
                        Ok(it) => {
                            let k = c.rule.tile_types.len();
                            let explicit = it.expanded_census(k).unwrap_or_default();
                            let predicted: Vec<u64> = it.levels[levels].iter().map(|&v| v as u64).collect();
                            t.check("explicit census matches matrix", explicit == predicted, || name.clone());
                        }
                        Err(e) => t.fail(format!("{name} iterate: {e}")),
                    }
                }
                Err(FsrError::ObstructedMating) if !clean => t.skip("obstructed"),
                Err(e) => t.fail(format!("{name} construct: {e}")),
            }
            if !clean {
                continue;
            }
            let curve = match build_equator(&m, &base, &part) {
                Ok(EquatorOutcome::Jordan(c)) => c,
                Ok(EquatorOutcome::Pinched(_)) => {
                    t.skip("pinched");
                    continue;
                }
                Err(e) => {
                    t.fail(format!("{name} equator: {e}"));
                    continue;
                }
            };
            if !curve.jordan || !curve.forward_consistent {
                t.skip("curve not a Jordan curve with doubling positions");
                continue;
            }
            match decompose(&m, &base, &part) {
                Ok(d) => {
                    let lambda = BigRational::from_integer(BigInt::from(d.result.lambda));
                    let av_ok = d.matrix.rows.iter().zip(&d.result.v).all(|(row, vi)| {
                        let s: BigRational = row
                            .iter()
                            .zip(&d.result.v)
                            .map(|(&a, vj)| BigRational::from_integer(BigInt::from(a)) * vj)
                            .sum();
                        s == &lambda * vi
                    });
                    t.check("a v = lambda v", av_ok, || name.clone());
                    t.check("round trip", d.result.recovered_pair == (x.clone(), y.clone()), || {
                        format!("{name} gave {:?}", d.result.recovered_pair)
                    });
                }
                Err(e) => t.fail(format!("{name} decompose: {e}")),
            }
        }
    }
    t
}
