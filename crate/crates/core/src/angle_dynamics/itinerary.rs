use std::fmt;

use serde::{Deserialize, Serialize};

use super::angle::Angle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "*")]
    Star,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::Zero => "0",
            Symbol::One => "1",
            Symbol::Star => "*",
        })
    }
}

/// An eventually periodic symbol sequence in minimal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Itinerary {
    pub parameter: Angle,
    pub preperiodic_part: Vec<Symbol>,
    pub periodic_part: Vec<Symbol>,
}

impl Itinerary {
    /// Builds the minimal form of `syms[..pre]` followed by `syms[pre..]` repeating.
    pub fn from_symbols(parameter: Angle, syms: &[Symbol], pre: usize) -> Self {
        let (prefix, cycle) = syms.split_at(pre);
        assert!(!cycle.is_empty(), "empty periodic part");
        let n = cycle.len();
        let p = (1..=n).find(|&p| n % p == 0 && (0..n).all(|i| cycle[i] == cycle[i % p])).unwrap_or(n);
        let mut periodic: Vec<Symbol> = cycle[..p].to_vec();
        let mut prefix = prefix.to_vec();
        while let (Some(&a), Some(&b)) = (prefix.last(), periodic.last()) {
            if a != b {
                break;
            }
            prefix.pop();
            periodic.rotate_right(1);
        }
        Itinerary { parameter, preperiodic_part: prefix, periodic_part: periodic }
    }

    pub fn symbol_at(&self, n: usize) -> Symbol {
        let l = self.preperiodic_part.len();
        if n < l {
            self.preperiodic_part[n]
        } else {
            self.periodic_part[(n - l) % self.periodic_part.len()]
        }
    }

    pub fn preperiod(&self) -> usize {
        self.preperiodic_part.len()
    }

    pub fn period(&self) -> usize {
        self.periodic_part.len()
    }

    /// The sequence with its first symbol removed.
    pub fn shift(&self) -> Itinerary {
        let pre = self.preperiod().saturating_sub(1);
        let syms: Vec<Symbol> = (1..=pre + self.period()).map(|n| self.symbol_at(n)).collect();
        Itinerary::from_symbols(self.parameter.clone(), &syms, pre)
    }

    /// `syms` followed by this sequence.
    pub fn prepend(&self, syms: &[Symbol]) -> Itinerary {
        let mut all = syms.to_vec();
        all.extend_from_slice(&self.preperiodic_part);
        let pre = all.len();
        all.extend_from_slice(&self.periodic_part);
        Itinerary::from_symbols(self.parameter.clone(), &all, pre)
    }
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.preperiodic_part {
            write!(f, "{s}")?;
        }
        f.write_str("(")?;
        for s in &self.periodic_part {
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}
