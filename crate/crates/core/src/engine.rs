use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::angle_dynamics::{
    in_open_arc, limb_with_bound, Angle, Dendrite, LimbId, DEFAULT_LIMB_BOUND, DEFAULT_SEARCH_BOUND,
};
use crate::error::{FsrError, InvalidReason, Result};
use crate::hubbard_tree::{build_tree, HubbardTree, DEFAULT_TRIOD_BOUND};
use crate::mating::{Mating, MatingSpec, Validity};

/// Search and termination bounds; every bound fails loudly when exceeded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub search_bound: usize,
    pub triod_bound: usize,
    pub limb_bound: usize,
    pub closure_bound: usize,
    pub generation_bound: usize,
    pub eigen_bound: usize,
    pub expansion_bound: usize,
    pub repair_attempts: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            search_bound: DEFAULT_SEARCH_BOUND,
            triod_bound: DEFAULT_TRIOD_BOUND,
            limb_bound: DEFAULT_LIMB_BOUND,
            closure_bound: 10_000,
            generation_bound: 64,
            eigen_bound: 16,
            expansion_bound: 6,
            repair_attempts: 8,
        }
    }
}

/// Shared memo tables for dendrites, trees and limbs, keyed by parameter angle.
#[derive(Debug, Default)]
pub struct Engine {
    pub config: Config,
    dendrites: Mutex<HashMap<Angle, Arc<Dendrite>>>,
    trees: Mutex<HashMap<Angle, Arc<HubbardTree>>>,
    limbs: Mutex<HashMap<Angle, LimbId>>,
}

impl Engine {
    pub fn new(config: Config) -> Self {
        Engine { config, ..Default::default() }
    }

    pub fn dendrite(&self, theta: &Angle) -> Result<Arc<Dendrite>> {
        if let Some(d) = self.dendrites.lock().expect("cache poisoned").get(theta) {
            return Ok(d.clone());
        }
        let d = Arc::new(Dendrite::with_bound(theta, self.config.search_bound)?);
        self.dendrites.lock().expect("cache poisoned").insert(theta.clone(), d.clone());
        Ok(d)
    }

    pub fn tree(&self, theta: &Angle) -> Result<Arc<HubbardTree>> {
        if let Some(t) = self.trees.lock().expect("cache poisoned").get(theta) {
            return Ok(t.clone());
        }
        let d = self.dendrite(theta)?;
        let t = Arc::new(build_tree(&d, self.config.triod_bound)?);
        self.trees.lock().expect("cache poisoned").insert(theta.clone(), t.clone());
        Ok(t)
    }

    pub fn limb(&self, theta: &Angle) -> Result<LimbId> {
        if let Some(l) = self.limbs.lock().expect("cache poisoned").get(theta) {
            return Ok(l.clone());
        }
        let l = limb_with_bound(theta, self.config.limb_bound)?;
        self.limbs.lock().expect("cache poisoned").insert(theta.clone(), l.clone());
        Ok(l)
    }

    /// Admissibility of the pair: both Misiurewicz and not in conjugate limbs.
    pub fn validate(&self, theta_alpha: &Angle, theta_beta: &Angle) -> Result<MatingSpec> {
        let invalid = |reason| FsrError::InvalidMating {
            theta_alpha: theta_alpha.clone(),
            theta_beta: theta_beta.clone(),
            reason,
        };
        let alpha_misiurewicz = theta_alpha.is_misiurewicz();
        let beta_misiurewicz = theta_beta.is_misiurewicz();
        if !alpha_misiurewicz || !beta_misiurewicz {
            return Err(invalid(InvalidReason::NotMisiurewicz));
        }
        let wake = self.limb(theta_alpha)?.wake;
        let conjugate = in_open_arc(&wake.0, &wake.1, &theta_beta.negate());
        if conjugate {
            return Err(invalid(InvalidReason::ConjugateLimbs));
        }
        Ok(MatingSpec {
            theta_alpha: theta_alpha.clone(),
            theta_beta: theta_beta.clone(),
            validity: Validity { alpha_misiurewicz, beta_misiurewicz, conjugate_limbs: conjugate },
        })
    }

    pub fn mating(&self, theta_alpha: &Angle, theta_beta: &Angle) -> Result<Mating> {
        let spec = self.validate(theta_alpha, theta_beta)?;
        Mating::new(
            spec,
            [self.dendrite(theta_alpha)?, self.dendrite(theta_beta)?],
            [self.tree(theta_alpha)?, self.tree(theta_beta)?],
            self.config.clone(),
        )
    }
}
