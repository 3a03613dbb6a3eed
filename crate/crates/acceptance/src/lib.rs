//! Enumerations of parameter angles, brute-force oracles that share no code with the
//! constructions they check, and property sweeps over whole ranges of parameters.

pub mod oracle;
pub mod sweep;

use fsr_core::angle_dynamics::Angle;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Reduced `p/q` with `q <= max_den` and even `q`, in increasing order.
pub fn misiurewicz_angles(max_den: u64) -> Vec<Angle> {
    let mut out: Vec<Angle> = (2..=max_den)
        .step_by(2)
        .flat_map(|q| (1..q).filter(move |&p| gcd(p, q) == 1).map(move |p| Angle::new(p, q)))
        .collect();
    out.sort();
    out
}
