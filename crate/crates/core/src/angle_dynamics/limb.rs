use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::angle::{in_open_arc, Angle};
use crate::error::{FsrError, Result};

pub const DEFAULT_LIMB_BOUND: usize = 64;

/// The `p/q` limb of the Mandelbrot set together with its wake `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimbId {
    pub p: usize,
    pub q: usize,
    pub wake: (Angle, Angle),
}

/// The unique period-`q` cycle of doubling with combinatorial rotation number `p/q`.
pub fn rotation_orbit(p: usize, q: usize) -> Vec<Angle> {
    let digits: Vec<u8> = (0..q).map(|k| u8::from((k * p) % q >= q - p)).collect();
    let x0 = Angle::from_binary(&[], &digits);
    let mut orbit = x0.orbit().orbit;
    orbit.sort();
    orbit
}

/// Doubling acts on the sorted cycle as the shift by `p`.
pub fn has_rotation_number(orbit: &[Angle], p: usize) -> bool {
    let q = orbit.len();
    (0..q).all(|i| orbit[i].double() == orbit[(i + p) % q])
}

/// Endpoints of the shortest gap of a sorted cycle.
pub fn shortest_gap(orbit: &[Angle]) -> (Angle, Angle) {
    let q = orbit.len();
    (0..q)
        .map(|i| (orbit[i].clone(), orbit[(i + 1) % q].clone()))
        .min_by(|x, y| x.1.sub(&x.0).cmp(&y.1.sub(&y.0)))
        .expect("nonempty orbit")
}

pub fn limb(theta: &Angle) -> Result<LimbId> {
    limb_with_bound(theta, DEFAULT_LIMB_BOUND)
}

pub fn limb_with_bound(theta: &Angle, bound: usize) -> Result<LimbId> {
    if !theta.is_misiurewicz() {
        return Err(FsrError::NotMisiurewicz(theta.clone()));
    }
    for q in 2..=bound {
        for p in (1..q).filter(|p| p.gcd(&q) == 1) {
            let orbit = rotation_orbit(p, q);
            let (a, b) = shortest_gap(&orbit);
            if in_open_arc(&a, &b, theta) {
                debug_assert!(has_rotation_number(&orbit, p));
                return Ok(LimbId { p, q, wake: (a, b) });
            }
        }
    }
    Err(FsrError::LimbNotFound { theta: theta.clone(), bound })
}

/// The two parameters sit in mirror-image limbs.
pub fn conjugate_limbs(theta_a: &Angle, theta_b: &Angle) -> Result<bool> {
    conjugate_limbs_with_bound(theta_a, theta_b, DEFAULT_LIMB_BOUND)
}

pub fn conjugate_limbs_with_bound(theta_a: &Angle, theta_b: &Angle, bound: usize) -> Result<bool> {
    let la = limb_with_bound(theta_a, bound)?;
    if !theta_b.is_misiurewicz() {
        return Err(FsrError::NotMisiurewicz(theta_b.clone()));
    }
    Ok(in_open_arc(&la.wake.0, &la.wake.1, &theta_b.negate()))
}
