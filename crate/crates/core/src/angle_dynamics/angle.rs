use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::FsrError;

/// A point of the circle ℝ/ℤ stored as an exact reduced fraction in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Angle {
    num: BigUint,
    den: BigUint,
}

/// Preperiod, period and the distinct orbit points of an angle under doubling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInfo {
    pub preperiod: usize,
    pub period: usize,
    pub orbit: Vec<Angle>,
}

impl OrbitInfo {
    /// The periodic cycle reached by the orbit.
    pub fn cycle(&self) -> &[Angle] {
        &self.orbit[self.preperiod..]
    }

    /// Image index of orbit entry `i`.
    pub fn next_index(&self, i: usize) -> usize {
        if i + 1 < self.orbit.len() {
            i + 1
        } else {
            self.preperiod
        }
    }
}

impl Angle {
    pub fn zero() -> Self {
        Angle { num: BigUint::zero(), den: BigUint::one() }
    }

    /// Reduces `num/den` modulo 1.
    pub fn from_ratio(num: BigUint, den: BigUint) -> Result<Self, FsrError> {
        if den.is_zero() {
            return Err(FsrError::Parse("zero denominator".into()));
        }
        let num = num % &den;
        let g = num.gcd(&den);
        Ok(Angle { num: num / &g, den: den / g })
    }

    /// Convenience constructor for small fractions; panics on a zero denominator.
    pub fn new(num: u64, den: u64) -> Self {
        Self::from_ratio(num.into(), den.into()).expect("nonzero denominator")
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `2t mod 1`.
    pub fn double(&self) -> Angle {
        if self.den.is_even() {
            let half = &self.den >> 1u32;
            let num = if self.num >= half { &self.num - &half } else { self.num.clone() };
            Angle { num, den: half }
        } else {
            let mut num: BigUint = &self.num << 1u32;
            if num >= self.den {
                num -= &self.den;
            }
            Angle { num, den: self.den.clone() }
        }
    }

    /// The two preimages `t/2 < (t+1)/2` under doubling.
    pub fn halves(&self) -> (Angle, Angle) {
        let half = |n: BigUint| {
            if n.is_even() {
                Angle { num: n >> 1u32, den: self.den.clone() }
            } else {
                Angle { num: n, den: &self.den << 1u32 }
            }
        };
        (half(self.num.clone()), half(&self.num + &self.den))
    }

    /// `1 - t mod 1`, the reflection used by the equator gluing.
    pub fn negate(&self) -> Angle {
        if self.num.is_zero() {
            self.clone()
        } else {
            Angle { num: &self.den - &self.num, den: self.den.clone() }
        }
    }

    pub fn add(&self, other: &Angle) -> Angle {
        let num = &self.num * &other.den + &other.num * &self.den;
        Angle::from_ratio(num, &self.den * &other.den).expect("nonzero")
    }

    pub fn sub(&self, other: &Angle) -> Angle {
        self.add(&other.negate())
    }

    pub fn mul_u64(&self, k: u64) -> Angle {
        Angle::from_ratio(&self.num * BigUint::from(k), self.den.clone()).expect("nonzero")
    }

    pub fn orbit(&self) -> OrbitInfo {
        let mut seen: HashMap<Angle, usize> = HashMap::new();
        let mut orbit = Vec::new();
        let mut x = self.clone();
        while !seen.contains_key(&x) {
            seen.insert(x.clone(), orbit.len());
            let next = x.double();
            orbit.push(x);
            x = next;
        }
        let preperiod = seen[&x];
        OrbitInfo { preperiod, period: orbit.len() - preperiod, orbit }
    }

    /// Strictly preperiodic under doubling, i.e. the reduced denominator is even.
    pub fn is_misiurewicz(&self) -> bool {
        self.den.is_even()
    }

    /// Preperiod of the orbit: the power of two in the denominator.
    pub fn preperiod(&self) -> usize {
        self.den.trailing_zeros().unwrap_or(0) as usize
    }

    /// Approximation used only for pruning and layout, never for decisions.
    pub fn to_f64(&self) -> f64 {
        match (self.num.to_u64(), self.den.to_u64()) {
            (Some(n), Some(d)) => n as f64 / d as f64,
            _ => {
                let shift = self.den.bits().saturating_sub(60);
                let n = (&self.num >> shift).to_f64().unwrap_or(0.0);
                let d = (&self.den >> shift).to_f64().unwrap_or(1.0);
                n / d
            }
        }
    }

    /// The eventually periodic binary expansion `0.b_0…b_{L-1}(c_0…c_{P-1})`.
    pub fn from_binary(prefix: &[u8], block: &[u8]) -> Angle {
        let value = |bits: &[u8]| bits.iter().fold(BigUint::zero(), |acc, &b| (acc << 1u32) + BigUint::from(b));
        let pv = value(prefix);
        let bv = value(block);
        let rep = (BigUint::one() << block.len()) - BigUint::one();
        let num = pv * &rep + bv;
        let den = rep << prefix.len();
        Angle::from_ratio(num, den).expect("nonzero")
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b), Some(c), Some(d)) =
            (self.num.to_u64(), self.den.to_u64(), other.num.to_u64(), other.den.to_u64())
        {
            return (a as u128 * d as u128).cmp(&(c as u128 * b as u128));
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = FsrError;

    /// Accepts only `p/q` with `0 <= p < q`; decimals are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FsrError::Parse(format!("expected an exact angle p/q in [0,1), got {s:?}"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: BigUint = p.trim().parse().map_err(|_| bad())?;
        let q: BigUint = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() || p >= q {
            return Err(bad());
        }
        Angle::from_ratio(p, q)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Index of the open sector of the sorted cyclic list `rays` containing `t`.
/// Sector `i` runs counterclockwise from `rays[i]` to `rays[i+1]`.
pub fn sector_index(rays: &[Angle], t: &Angle) -> Option<usize> {
    match rays.binary_search(t) {
        Ok(_) => None,
        Err(k) => Some((k + rays.len() - 1) % rays.len()),
    }
}

/// Strictly inside the open counterclockwise arc from `a` to `b`.
pub fn in_open_arc(a: &Angle, b: &Angle, t: &Angle) -> bool {
    if a < b {
        a < t && t < b
    } else {
        t > a || t < b
    }
}
