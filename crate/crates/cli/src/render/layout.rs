use std::f64::consts::TAU;

/// Tutte layout: `outer` on a circle, every other vertex at the mean of its neighbours.
/// Fixed sweep count and order keep the coordinates reproducible.
pub fn tutte(n: usize, outer: &[usize], edges: &[(usize, usize)]) -> Vec<(f64, f64)> {
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    let k = outer.len().max(1) as f64;
    for (i, &v) in outer.iter().enumerate() {
        let a = TAU * i as f64 / k;
        pos[v] = (a.cos(), -a.sin());
        fixed[v] = true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for _ in 0..400 {
        for v in 0..n {
            if fixed[v] || adj[v].is_empty() {
                continue;
            }
            let m = adj[v].len() as f64;
            let (sx, sy) = adj[v].iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            pos[v] = (sx / m, sy / m);
        }
    }
    pos
}

/// Distinct entries in order of first appearance.
pub fn distinct(xs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut seen = std::collections::BTreeSet::new();
    xs.into_iter().filter(|x| seen.insert(*x)).collect()
}

/// Boundary walk of a plane tree from vertex 0, listing the vertex at each step.
pub fn tree_walk(rotation: &[Vec<usize>]) -> Vec<usize> {
    let Some(&first) = rotation.first().and_then(|r| r.first()) else {
        return (0..rotation.len()).collect();
    };
    let (mut u, mut v) = (0usize, first);
    let mut walk = vec![0];
    loop {
        walk.push(v);
        let r = &rotation[v];
        let i = r.iter().position(|&w| w == u).expect("rotation lists every neighbour");
        let w = r[(i + 1) % r.len()];
        (u, v) = (v, w);
        if (u, v) == (0, first) {
            break;
        }
    }
    walk.pop();
    walk
}
