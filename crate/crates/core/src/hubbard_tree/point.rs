use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::angle_dynamics::{sector_index, Angle};

/// A landing point of the dendrite: the full set of external angles landing there.
#[derive(Clone)]
pub struct JuliaPoint(Arc<Inner>);

struct Inner {
    parameter: Angle,
    angles: Vec<Angle>,
}

impl JuliaPoint {
    /// `angles` must be ascending and form one complete landing class.
    pub fn from_sorted(parameter: Angle, angles: Vec<Angle>) -> Self {
        debug_assert!(!angles.is_empty() && angles.windows(2).all(|w| w[0] < w[1]));
        JuliaPoint(Arc::new(Inner { parameter, angles }))
    }

    pub fn parameter(&self) -> &Angle {
        &self.0.parameter
    }

    pub fn angles(&self) -> &[Angle] {
        &self.0.angles
    }

    /// Canonical representative: the minimal angle.
    pub fn rep(&self) -> &Angle {
        &self.0.angles[0]
    }

    pub fn contains(&self, t: &Angle) -> bool {
        self.0.angles.binary_search(t).is_ok()
    }

    pub fn valence(&self) -> usize {
        self.0.angles.len()
    }

    /// The complementary sector of this point containing the ray `t`.
    pub fn sector_of(&self, t: &Angle) -> Option<usize> {
        sector_index(&self.0.angles, t)
    }

    /// `self` lies strictly between `a` and `b` on the dendrite.
    pub fn separates(&self, a: &JuliaPoint, b: &JuliaPoint) -> bool {
        if self == a || self == b {
            return false;
        }
        self.sector_of(a.rep()) != self.sector_of(b.rep())
    }
}

impl PartialEq for JuliaPoint {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.angles == other.0.angles && self.0.parameter == other.0.parameter)
    }
}

impl Eq for JuliaPoint {}

impl Hash for JuliaPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep().hash(state);
        self.0.angles.len().hash(state);
    }
}

impl Ord for JuliaPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.angles.cmp(&other.0.angles).then_with(|| self.0.parameter.cmp(&other.0.parameter))
    }
}

impl PartialOrd for JuliaPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for JuliaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.angles().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for JuliaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for JuliaPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.angles().serialize(s)
    }
}
