//! Ray-graph structure of the formal mating and the essential equivalence.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::angle_dynamics::{Angle, Dendrite};
use crate::engine::{Config, Engine};
use crate::error::{FsrError, Result};
use crate::hubbard_tree::{HubbardTree, JuliaPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Alpha,
    Beta,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Alpha, Side::Beta];

    pub fn other(self) -> Side {
        match self {
            Side::Alpha => Side::Beta,
            Side::Beta => Side::Alpha,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Position on the shared equator of this side's angle `t`: alpha `t ↦ t`,
    /// beta `s ↦ 1 − s`.
    pub fn ray(self, t: &Angle) -> Angle {
        match self {
            Side::Alpha => t.clone(),
            Side::Beta => t.negate(),
        }
    }

    /// Inverse of [`Side::ray`].
    pub fn own(self, r: &Angle) -> Angle {
        self.ray(r)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Alpha => "alpha",
            Side::Beta => "beta",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validity {
    pub alpha_misiurewicz: bool,
    pub beta_misiurewicz: bool,
    pub conjugate_limbs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatingSpec {
    pub theta_alpha: Angle,
    pub theta_beta: Angle,
    pub validity: Validity,
}

impl MatingSpec {
    pub fn theta(&self, side: Side) -> &Angle {
        match side {
            Side::Alpha => &self.theta_alpha,
            Side::Beta => &self.theta_beta,
        }
    }
}

/// Validity gate with default bounds.
pub fn validate(theta_alpha: &Angle, theta_beta: &Angle) -> Result<MatingSpec> {
    Engine::default().validate(theta_alpha, theta_beta)
}

/// A landing point on one of the two hemispheres.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RayNode {
    pub side: Side,
    #[serde(rename = "angles")]
    pub point: JuliaPoint,
}

impl RayNode {
    /// Equator positions of all rays at this node.
    pub fn rays(&self) -> impl Iterator<Item = Angle> + '_ {
        self.point.angles().iter().map(move |t| self.side.ray(t))
    }

    /// Sort key: equator position of the representative ray.
    fn key(&self) -> (Angle, Side) {
        (self.side.ray(self.point.rep()), self.side)
    }
}

impl fmt::Display for RayNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.side == Side::Alpha { "α" } else { "β" }, self.point)
    }
}

/// A connected graph of rays and landing points, closed under equator gluing and
/// co-landing.
#[derive(Clone, Debug, Serialize)]
pub struct RayClass {
    pub nodes: Vec<RayNode>,
    /// Equator positions of the rays joining the nodes, ascending.
    pub rays: Vec<Angle>,
    pub postcritical_count: usize,
    pub critical_orbit_count: usize,
}

impl PartialEq for RayClass {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
    }
}

impl Eq for RayClass {}

impl std::hash::Hash for RayClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nodes.hash(state);
    }
}

impl RayClass {
    pub fn contains(&self, n: &RayNode) -> bool {
        self.nodes.binary_search(n).is_ok()
    }

    pub fn contains_critical_orbit(&self) -> bool {
        self.critical_orbit_count > 0
    }

    pub fn nodes_on(&self, side: Side) -> impl Iterator<Item = &RayNode> {
        self.nodes.iter().filter(move |n| n.side == side)
    }

    pub fn min_ray(&self) -> &Angle {
        &self.rays[0]
    }
}

impl fmt::Display for RayClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, n) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("]")
    }
}

/// The classes τ that generate the essential equivalence.
#[derive(Clone, Debug, Serialize)]
pub struct EssentialPartition {
    pub l_classes: Vec<RayClass>,
    /// All τ, the `l` classes first (generation 0), ordered by generation then ray.
    pub tau_classes: Vec<RayClass>,
    pub generation: Vec<usize>,
}

impl EssentialPartition {
    pub fn is_empty(&self) -> bool {
        self.tau_classes.is_empty()
    }

    pub fn class_of(&self, n: &RayNode) -> Option<usize> {
        self.tau_classes.iter().position(|c| c.contains(n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObstructionStatus {
    Clean,
    Obstructed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub x: RayNode,
    pub y: RayNode,
    pub tau_index: usize,
    pub component: RayClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub status: ObstructionStatus,
    pub witnesses: Vec<Witness>,
}

impl ObstructionReport {
    pub fn is_clean(&self) -> bool {
        self.status == ObstructionStatus::Clean
    }
}

/// One admissible pair with its dendrites and Hubbard trees.
#[derive(Clone, Debug)]
pub struct Mating {
    pub spec: MatingSpec,
    pub config: Config,
    dendrites: [Arc<Dendrite>; 2],
    trees: [Arc<HubbardTree>; 2],
    postcritical: Vec<RayNode>,
    critical_orbit: HashSet<RayNode>,
}

impl Mating {
    pub fn new(
        spec: MatingSpec,
        dendrites: [Arc<Dendrite>; 2],
        trees: [Arc<HubbardTree>; 2],
        config: Config,
    ) -> Result<Self> {
        let mut postcritical = Vec::new();
        let mut critical_orbit = HashSet::new();
        for side in Side::BOTH {
            let d = &dendrites[side.index()];
            for t in d.theta().orbit().orbit {
                let n = RayNode { side, point: d.point(&t)? };
                critical_orbit.insert(n.clone());
                postcritical.push(n);
            }
            critical_orbit.insert(RayNode { side, point: d.point(&d.critical_rays()[0])? });
        }
        Ok(Mating { spec, config, dendrites, trees, postcritical, critical_orbit })
    }

    pub fn dendrite(&self, side: Side) -> &Dendrite {
        &self.dendrites[side.index()]
    }

    pub fn tree(&self, side: Side) -> &HubbardTree {
        &self.trees[side.index()]
    }

    pub fn node(&self, side: Side, t: &Angle) -> Result<RayNode> {
        Ok(RayNode { side, point: self.dendrite(side).point(t)? })
    }

    /// Postcritical nodes: the alpha orbit then the beta orbit, in orbit order.
    pub fn postcritical_nodes(&self) -> &[RayNode] {
        &self.postcritical
    }

    pub fn is_postcritical(&self, n: &RayNode) -> bool {
        self.postcritical.contains(n)
    }

    /// Postcritical nodes of both sides and both critical points.
    pub fn is_critical_orbit(&self, n: &RayNode) -> bool {
        self.critical_orbit.contains(n)
    }

    pub fn critical_node(&self, side: Side) -> RayNode {
        RayNode { side, point: self.dendrite(side).critical_point() }
    }

    /// The node reached by applying the dynamics.
    pub fn image(&self, n: &RayNode) -> Result<RayNode> {
        self.node(n.side, &n.point.rep().double())
    }

    /// Closure of `seed` under equator gluing and co-landing.
    pub fn ray_component(&self, seed: &RayNode) -> Result<RayClass> {
        let bound = self.config.closure_bound;
        let mut nodes: HashSet<RayNode> = HashSet::from([seed.clone()]);
        let mut rays: BTreeSet<Angle> = BTreeSet::new();
        let mut queue = VecDeque::from([seed.clone()]);
        let mut joins = 0usize;
        while let Some(n) = queue.pop_front() {
            for t in n.point.angles() {
                joins += 1;
                if joins > bound {
                    return Err(FsrError::ClosureDepthExceeded { bound });
                }
                rays.insert(n.side.ray(t));
                let other = n.side.other();
                let m = self.node(other, &t.negate())?;
                if nodes.insert(m.clone()) {
                    queue.push_back(m);
                }
            }
        }
        let mut nodes: Vec<RayNode> = nodes.into_iter().collect();
        nodes.sort();
        let postcritical_count = nodes.iter().filter(|n| self.is_postcritical(n)).count();
        let critical_orbit_count = nodes.iter().filter(|n| self.is_critical_orbit(n)).count();
        Ok(RayClass { nodes, rays: rays.into_iter().collect(), postcritical_count, critical_orbit_count })
    }

    /// The same closure, used where no postcritical filtering is intended.
    pub fn tilde_t_component(&self, seed: &RayNode) -> Result<RayClass> {
        self.ray_component(seed)
    }

    /// Components through postcritical points holding at least two of them.
    pub fn postcritical_components(&self) -> Result<Vec<RayClass>> {
        let mut seeds = self.postcritical.clone();
        seeds.sort_by_key(RayNode::key);
        let mut seen: HashSet<RayNode> = HashSet::new();
        let mut out = Vec::new();
        for s in seeds {
            if seen.contains(&s) {
                continue;
            }
            let c = self.ray_component(&s)?;
            seen.extend(c.nodes.iter().cloned());
            if c.postcritical_count >= 2 {
                out.push(c);
            }
        }
        out.sort_by(|a, b| a.min_ray().cmp(b.min_ray()));
        Ok(out)
    }

    /// Components of the preimage of a class, ordered by minimal ray.
    pub fn preimage_components(&self, c: &RayClass) -> Result<Vec<RayClass>> {
        let mut pre: BTreeSet<RayNode> = BTreeSet::new();
        for n in &c.nodes {
            for t in n.point.angles() {
                let (x, y) = t.halves();
                pre.insert(self.node(n.side, &x)?);
                pre.insert(self.node(n.side, &y)?);
            }
        }
        let mut seen: HashSet<RayNode> = HashSet::new();
        let mut out = Vec::new();
        for n in &pre {
            if seen.contains(n) {
                continue;
            }
            let cc = self.ray_component(n)?;
            if let Some(stray) = cc.nodes.iter().find(|m| !pre.contains(m)) {
                return Err(FsrError::ConsistencyFailure(format!(
                    "preimage component of {c} leaves the preimage at {stray}"
                )));
            }
            seen.extend(cc.nodes.iter().cloned());
            out.push(cc);
        }
        out.sort_by(|a, b| a.min_ray().cmp(b.min_ray()));
        Ok(out)
    }

    /// The l classes and all preimage components meeting the critical orbit.
    pub fn essential_partition(&self) -> Result<EssentialPartition> {
        let l_classes = self.postcritical_components()?;
        let mut tau_classes: Vec<RayClass> = l_classes.clone();
        let mut generation = vec![0; tau_classes.len()];
        let mut known: HashMap<Vec<RayNode>, usize> =
            tau_classes.iter().enumerate().map(|(i, c)| (c.nodes.clone(), i)).collect();
        let mut frontier: Vec<usize> = (0..tau_classes.len()).collect();
        let mut g = 0;
        while !frontier.is_empty() {
            g += 1;
            if g > self.config.generation_bound {
                return Err(FsrError::GenerationBoundExceeded { bound: self.config.generation_bound });
            }
            let mut fresh: Vec<RayClass> = Vec::new();
            for &k in &frontier {
                for cc in self.preimage_components(&tau_classes[k])? {
                    if cc.contains_critical_orbit() && !known.contains_key(&cc.nodes) {
                        known.insert(cc.nodes.clone(), usize::MAX);
                        fresh.push(cc);
                    }
                }
            }
            fresh.sort_by(|a, b| a.min_ray().cmp(b.min_ray()));
            frontier.clear();
            for cc in fresh {
                known.insert(cc.nodes.clone(), tau_classes.len());
                frontier.push(tau_classes.len());
                tau_classes.push(cc);
                generation.push(g);
            }
        }
        Ok(EssentialPartition { l_classes, tau_classes, generation })
    }

    /// Searches preimages of each τ for topologically identified tree points that the
    /// essential equivalence keeps apart.
    pub fn obstruction_check(&self, partition: &EssentialPartition) -> Result<ObstructionReport> {
        let mut witnesses = Vec::new();
        for (k, tau) in partition.tau_classes.iter().enumerate() {
            for cc in self.preimage_components(tau)? {
                if partition.tau_classes.contains(&cc) {
                    continue;
                }
                let on: Vec<&RayNode> = cc.nodes.iter().filter(|n| self.tree(n.side).on_tree(&n.point)).collect();
                if on.len() >= 2 {
                    witnesses.push(Witness { x: on[0].clone(), y: on[1].clone(), tau_index: k, component: cc.clone() });
                }
            }
        }
        let status = if witnesses.is_empty() { ObstructionStatus::Clean } else { ObstructionStatus::Obstructed };
        Ok(ObstructionReport { status, witnesses })
    }
}
