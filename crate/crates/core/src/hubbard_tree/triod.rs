use std::collections::HashMap;

use crate::angle_dynamics::{sector_index, Angle, Dendrite, Itinerary, Symbol};
use crate::error::{FsrError, Result};

use super::JuliaPoint;

pub const DEFAULT_TRIOD_BOUND: usize = 10_000;

/// The centre of the triod spanned by three dendrite points.
///
/// Points are tracked by representative rays; `None` stands for the critical point.
/// Each step either resolves the centre (two points coincide, or the critical point
/// separates them) or applies the dynamics to all three while recording the common
/// side. A repeated configuration yields a periodic centre itinerary.
pub fn triod_middle(d: &Dendrite, a: &JuliaPoint, b: &JuliaPoint, c: &JuliaPoint, bound: usize) -> Result<JuliaPoint> {
    if a == b || a == c {
        return Ok(a.clone());
    }
    if b == c {
        return Ok(b.clone());
    }
    let crit = d.critical_rays();
    let normal = |t: Angle| if crit.binary_search(&t).is_ok() { None } else { Some(t) };
    let mut state: [Option<Angle>; 3] = [normal(a.rep().clone()), normal(b.rep().clone()), normal(c.rep().clone())];
    let same = |x: &Option<Angle>, y: &Option<Angle>| match (x, y) {
        (None, None) => true,
        (Some(x), Some(y)) => d.co_lands(x, y),
        _ => false,
    };
    let sec = |x: &Angle| sector_index(crit, x).expect("non-critical ray");

    let mut syms: Vec<Symbol> = Vec::new();
    let mut seen: HashMap<[Option<Angle>; 3], usize> = HashMap::new();
    let itinerary: Itinerary = loop {
        if syms.len() > bound {
            return Err(FsrError::DepthExceeded { what: "triod resolution".into(), bound });
        }
        if let Some(&start) = seen.get(&state) {
            break Itinerary::from_symbols(d.theta().clone(), &syms, start);
        }
        seen.insert(state.clone(), syms.len());

        let [x, y, z] = &state;
        let mut resolved: Option<Option<Angle>> = None;
        if same(x, y) || same(x, z) {
            resolved = Some(x.clone());
        } else if same(y, z) {
            resolved = Some(y.clone());
        }
        let mut symbol = Symbol::Zero;
        if resolved.is_none() {
            if let Some(i) = state.iter().position(Option::is_none) {
                let others: Vec<&Angle> =
                    (0..3).filter(|&j| j != i).map(|j| state[j].as_ref().expect("finite")).collect();
                if sec(others[0]) == sec(others[1]) {
                    symbol = d.side(others[0]);
                } else {
                    resolved = Some(None);
                }
            } else {
                let s: Vec<usize> = state.iter().map(|w| sec(w.as_ref().expect("finite"))).collect();
                if s[0] == s[1] && s[1] == s[2] {
                    symbol = d.side(state[0].as_ref().expect("finite"));
                } else if s[0] != s[1] && s[1] != s[2] && s[0] != s[2] {
                    resolved = Some(None);
                } else {
                    let odd = (0..3)
                        .find(|&i| (0..3).filter(|&j| j != i).all(|j| s[j] != s[i]))
                        .expect("exactly one odd sector");
                    state[odd] = None;
                    let w = state.iter().flatten().next().expect("finite point");
                    symbol = d.side(w);
                }
            }
        }
        if let Some(res) = resolved {
            let tail = match &res {
                None => d.point_itinerary(&crit[0]),
                Some(t) => d.point_itinerary(t),
            };
            break tail.prepend(&syms);
        }
        syms.push(symbol);
        for w in state.iter_mut() {
            *w = match w.take() {
                None => Some(d.theta().clone()),
                Some(t) => normal(t.double()),
            };
        }
    };
    for w in [a, b, c] {
        if *d.point_itinerary(w.rep()) == itinerary {
            return Ok(w.clone());
        }
    }
    let found = d.angles_with_point_itinerary(&itinerary)?;
    d.point(&found[0])
}
