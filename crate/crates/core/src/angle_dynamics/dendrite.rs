use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use super::angle::Angle;
use super::itinerary::{Itinerary, Symbol};
use crate::error::{FsrError, Result};
use crate::hubbard_tree::JuliaPoint;

/// Which kind of itinerary a digit search should match.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    /// Symbols taken literally against the partition points.
    Angle,
    /// Symbol `⋆` whenever the next image is a ray landing at the critical value.
    Point,
}

/// Combinatorial model of the dendrite Julia set of a Misiurewicz parameter.
///
/// Landing points are identified through point itineraries: position `n` carries `⋆`
/// when `2^{n+1} t` lands at the critical value and otherwise records the side of
/// `2^n t` relative to `θ/2` and `(θ+1)/2`. Results are memoised; the caches never
/// change observable values.
#[derive(Debug)]
pub struct Dendrite {
    theta: Angle,
    lo: Angle,
    hi: Angle,
    kneading: Itinerary,
    value_rays: Vec<Angle>,
    critical_rays: Vec<Angle>,
    search_bound: usize,
    points: Mutex<HashMap<Angle, Arc<Itinerary>>>,
    classes: Mutex<HashMap<Angle, JuliaPoint>>,
}

pub const DEFAULT_SEARCH_BOUND: usize = 64;

const EPS: f64 = 1e-12;

impl Dendrite {
    pub fn new(theta: &Angle) -> Result<Self> {
        Self::with_bound(theta, DEFAULT_SEARCH_BOUND)
    }

    pub fn with_bound(theta: &Angle, search_bound: usize) -> Result<Self> {
        if !theta.is_misiurewicz() {
            return Err(FsrError::NotMisiurewicz(theta.clone()));
        }
        let (lo, hi) = theta.halves();
        let mut d = Dendrite {
            theta: theta.clone(),
            lo,
            hi,
            kneading: Itinerary::from_symbols(theta.clone(), &[Symbol::Zero], 0),
            value_rays: Vec::new(),
            critical_rays: Vec::new(),
            search_bound,
            points: Mutex::new(HashMap::new()),
            classes: Mutex::new(HashMap::new()),
        };
        d.kneading = d.angle_itinerary(theta);
        d.value_rays = d.search(&d.kneading.clone(), Mode::Angle)?;
        let mut crit: Vec<Angle> = d
            .value_rays
            .iter()
            .flat_map(|c| {
                let (a, b) = c.halves();
                [a, b]
            })
            .collect();
        crit.sort();
        d.critical_rays = crit;
        Ok(d)
    }

    pub fn theta(&self) -> &Angle {
        &self.theta
    }

    /// Itinerary of the critical value ray θ.
    pub fn kneading(&self) -> &Itinerary {
        &self.kneading
    }

    /// All rays landing at the critical value, ascending.
    pub fn value_rays(&self) -> &[Angle] {
        &self.value_rays
    }

    /// All rays landing at the critical point, ascending.
    pub fn critical_rays(&self) -> &[Angle] {
        &self.critical_rays
    }

    pub fn side(&self, t: &Angle) -> Symbol {
        if t == &self.lo || t == &self.hi {
            Symbol::Star
        } else if &self.lo < t && t < &self.hi {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    /// Itinerary of the angle itself, `⋆` exactly at the partition points.
    pub fn angle_itinerary(&self, t: &Angle) -> Itinerary {
        let o = t.orbit();
        let syms: Vec<Symbol> = o.orbit.iter().map(|x| self.side(x)).collect();
        Itinerary::from_symbols(self.theta.clone(), &syms, o.preperiod)
    }

    /// Itinerary of the landing point of `t`.
    pub fn point_itinerary(&self, t: &Angle) -> Arc<Itinerary> {
        if let Some(it) = self.points.lock().expect("cache poisoned").get(t) {
            return it.clone();
        }
        let o = t.orbit();
        let n = o.orbit.len();
        let syms: Vec<Symbol> = (0..n)
            .map(|i| {
                let next = &o.orbit[o.next_index(i)];
                if self.value_rays.binary_search(next).is_ok() {
                    Symbol::Star
                } else {
                    self.side(&o.orbit[i])
                }
            })
            .collect();
        let it = Arc::new(Itinerary::from_symbols(self.theta.clone(), &syms, o.preperiod));
        self.points.lock().expect("cache poisoned").insert(t.clone(), it.clone());
        it
    }

    pub fn co_lands(&self, t: &Angle, u: &Angle) -> bool {
        t == u || self.point_itinerary(t) == self.point_itinerary(u)
    }

    /// The landing point of `t` with its complete angle set.
    pub fn point(&self, t: &Angle) -> Result<JuliaPoint> {
        if let Some(c) = self.classes.lock().expect("cache poisoned").get(t) {
            return Ok(c.clone());
        }
        let it = self.point_itinerary(t);
        let found = self.search(&it, Mode::Point)?;
        if found.binary_search(t).is_err() {
            return Err(FsrError::ConsistencyFailure(format!(
                "landing class search for {t} under θ={} missed the seed",
                self.theta
            )));
        }
        let point = JuliaPoint::from_sorted(self.theta.clone(), found);
        let mut cache = self.classes.lock().expect("cache poisoned");
        for a in point.angles() {
            cache.insert(a.clone(), point.clone());
        }
        Ok(point)
    }

    /// Every angle whose ray lands at the same point as `t`, ascending.
    pub fn landing_class(&self, t: &Angle) -> Result<Vec<Angle>> {
        Ok(self.point(t)?.angles().to_vec())
    }

    /// The landing point of the critical value ray.
    pub fn critical_value(&self) -> JuliaPoint {
        JuliaPoint::from_sorted(self.theta.clone(), self.value_rays.clone())
    }

    /// The critical point of the polynomial.
    pub fn critical_point(&self) -> JuliaPoint {
        JuliaPoint::from_sorted(self.theta.clone(), self.critical_rays.clone())
    }

    /// Angles whose landing point has the given point itinerary.
    pub fn angles_with_point_itinerary(&self, it: &Itinerary) -> Result<Vec<Angle>> {
        self.search(it, Mode::Point)
    }

    /// Partition of a finite angle set into co-landing blocks, ordered by minimal member.
    pub fn landing_partition(&self, universe: &[Angle]) -> Vec<Vec<Angle>> {
        let mut blocks: BTreeMap<Angle, Vec<Angle>> = BTreeMap::new();
        let mut keys: Vec<(Arc<Itinerary>, Angle)> = Vec::new();
        let mut sorted: Vec<Angle> = universe.to_vec();
        sorted.sort();
        sorted.dedup();
        for t in sorted {
            let it = self.point_itinerary(&t);
            match keys.iter().find(|(k, _)| *k == it) {
                Some((_, first)) => blocks.get_mut(first).expect("block").push(t),
                None => {
                    keys.push((it, t.clone()));
                    blocks.insert(t.clone(), vec![t]);
                }
            }
        }
        blocks.into_values().collect()
    }

    /// Depth-first search over eventually periodic binary expansions.
    ///
    /// All rays landing at one point share a period, so the search widens the period
    /// in multiples of the itinerary period and stops at the first multiple with hits.
    /// Pruning compares dyadic intervals with the closed arcs of each symbol using a
    /// tolerance; only exact verification admits a candidate.
    fn search(&self, it: &Itinerary, mode: Mode) -> Result<Vec<Angle>> {
        let l = it.preperiod();
        let p = it.period();
        let lo = self.lo.to_f64();
        let hi = self.hi.to_f64();
        let stars: Vec<f64> = match mode {
            Mode::Angle => vec![lo, hi],
            Mode::Point => self.critical_rays.iter().map(Angle::to_f64).collect(),
        };
        let symbols: Vec<Symbol> = (0..l + p * self.search_bound).map(|n| it.symbol_at(n)).collect();
        for r in 1..=self.search_bound {
            let n = l + p * r;
            let mut ctx = Search {
                lo,
                hi,
                stars: &stars,
                symbols: &symbols[..n],
                digits: Vec::with_capacity(n),
                found: Vec::new(),
                prefix_len: l,
            };
            ctx.descend(&[]);
            let mut hits: Vec<Angle> = ctx
                .found
                .into_iter()
                .filter(|t| match mode {
                    Mode::Angle => &self.angle_itinerary(t) == it,
                    Mode::Point => *self.point_itinerary(t) == *it,
                })
                .collect();
            if !hits.is_empty() {
                hits.sort();
                hits.dedup();
                return Ok(hits);
            }
        }
        Err(FsrError::DepthExceeded {
            what: format!("angle search for itinerary {it} under θ={}", self.theta),
            bound: self.search_bound,
        })
    }
}

struct Search<'a> {
    lo: f64,
    hi: f64,
    stars: &'a [f64],
    symbols: &'a [Symbol],
    digits: Vec<u8>,
    found: Vec<Angle>,
    prefix_len: usize,
}

impl Search<'_> {
    fn admissible(&self, sym: Symbol, start: f64, width: f64) -> bool {
        let end = start + width;
        match sym {
            Symbol::One => !(end < self.lo - EPS || start > self.hi + EPS),
            Symbol::Zero => start <= self.lo + EPS || end >= self.hi - EPS,
            Symbol::Star => self.stars.iter().any(|&s| start - EPS <= s && s <= end + EPS),
        }
    }

    /// `intervals[j]` is the dyadic interval of the shifted expansion starting at digit `j`.
    fn descend(&mut self, intervals: &[(f64, f64)]) {
        let m = self.digits.len();
        if m == self.symbols.len() {
            let (prefix, block) = self.digits.split_at(self.prefix_len);
            self.found.push(Angle::from_binary(prefix, block));
            return;
        }
        for bit in [0u8, 1u8] {
            let b = bit as f64;
            let mut next = Vec::with_capacity(m + 1);
            let mut ok = true;
            for (j, &(s, w)) in intervals.iter().enumerate() {
                let half = w / 2.0;
                let s2 = s + b * half;
                if !self.admissible(self.symbols[j], s2, half) {
                    ok = false;
                    break;
                }
                next.push((s2, half));
            }
            if !ok {
                continue;
            }
            let s = 0.5 * b;
            if !self.admissible(self.symbols[m], s, 0.5) {
                continue;
            }
            next.push((s, 0.5));
            self.digits.push(bit);
            self.descend(&next);
            self.digits.pop();
        }
    }
}
