//! Exact symbolic dynamics of angle doubling on ℝ/ℤ.

mod angle;
mod dendrite;
mod itinerary;
mod limb;

pub use angle::{in_open_arc, sector_index, Angle, OrbitInfo};
pub use dendrite::{Dendrite, DEFAULT_SEARCH_BOUND};
pub use itinerary::{Itinerary, Symbol};
pub use limb::{
    conjugate_limbs, conjugate_limbs_with_bound, has_rotation_number, limb, limb_with_bound, rotation_orbit,
    shortest_gap, LimbId, DEFAULT_LIMB_BOUND,
};

use crate::error::{FsrError, Result};

pub fn double(t: &Angle) -> Angle {
    t.double()
}

pub fn halves(t: &Angle) -> (Angle, Angle) {
    t.halves()
}

pub fn orbit(t: &Angle) -> OrbitInfo {
    t.orbit()
}

pub fn is_misiurewicz_angle(t: &Angle) -> bool {
    t.is_misiurewicz()
}

fn require_misiurewicz(theta: &Angle) -> Result<()> {
    if theta.is_misiurewicz() {
        Ok(())
    } else {
        Err(FsrError::NotMisiurewicz(theta.clone()))
    }
}

/// Itinerary of `t` with respect to the partition by `θ/2` and `(θ+1)/2`.
pub fn itinerary(theta: &Angle, t: &Angle) -> Result<Itinerary> {
    require_misiurewicz(theta)?;
    Ok(Dendrite::new(theta)?.angle_itinerary(t))
}

pub fn co_lands(theta: &Angle, t: &Angle, u: &Angle) -> Result<bool> {
    Ok(Dendrite::new(theta)?.co_lands(t, u))
}

pub fn landing_partition(theta: &Angle, universe: &[Angle]) -> Result<Vec<Vec<Angle>>> {
    Ok(Dendrite::new(theta)?.landing_partition(universe))
}
