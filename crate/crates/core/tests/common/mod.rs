//! Brute-force reference implementations. Written straight from the
//! definitions with dense structures; shares no code with the library
//! beyond reading instance fields.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use mllon::{NkInstance, OperatorKind};

pub fn bit(s: u64, i: usize) -> u64 {
    (s >> i) & 1
}

/// Mean of the sub-function values, walking the definition term by term.
pub fn fitness(inst: &NkInstance, s: u64) -> f64 {
    let n = inst.n();
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let mut index = bit(s, i) as usize;
        let mut place = 2usize;
        for &j in &inst.links()[i] {
            index += place * bit(s, j) as usize;
            place *= 2;
        }
        values.push(inst.tables()[i][index]);
    }
    values.iter().sum::<f64>() / n as f64
}

pub fn fitness_table(inst: &NkInstance) -> Vec<f64> {
    (0..1u64 << inst.n()).map(|s| fitness(inst, s)).collect()
}

/// Neighbors by scanning the whole space.
pub fn neighbors(n: usize, op: OperatorKind, s: u64) -> Vec<u64> {
    (0..1u64 << n)
        .filter(|&t| {
            let diff: Vec<usize> = (0..n).filter(|&i| bit(s, i) != bit(t, i)).collect();
            match op {
                OperatorKind::BitFlip => diff.len() == 1,
                OperatorKind::OneSwap => diff.len() == 2 && bit(s, diff[0]) != bit(s, diff[1]),
            }
        })
        .collect()
}

pub fn move_probability(n: usize, op: OperatorKind, s: u64, t: u64) -> f64 {
    let nb = neighbors(n, op, s);
    if nb.contains(&t) {
        1.0 / nb.len() as f64
    } else {
        0.0
    }
}

/// One best-improvement step: rank every neighbor by (fitness desc,
/// encoding asc) and accept the head only if strictly better.
pub fn climb_step(f: &[f64], n: usize, op: OperatorKind, s: u64) -> u64 {
    let mut ranked = neighbors(n, op, s);
    ranked.sort_by(|&a, &b| f[b as usize].partial_cmp(&f[a as usize]).unwrap().then(a.cmp(&b)));
    match ranked.first() {
        Some(&best) if f[s as usize] < f[best as usize] => best,
        _ => s,
    }
}

pub fn hill_climb(f: &[f64], n: usize, op: OperatorKind, s0: u64) -> u64 {
    let mut s = s0;
    loop {
        let t = climb_step(f, n, op, s);
        if t == s {
            return s;
        }
        s = t;
    }
}

/// Local optimum (as a solution) reached from each solution.
pub fn basins(inst: &NkInstance, op: OperatorKind) -> Vec<u64> {
    let f = fitness_table(inst);
    (0..1u64 << inst.n()).map(|s| hill_climb(&f, inst.n(), op, s)).collect()
}

pub fn optima(target: &[u64]) -> BTreeSet<u64> {
    target.iter().copied().collect()
}

pub fn basin_of(target: &[u64], optimum: u64) -> HashSet<u64> {
    (0..target.len() as u64).filter(|&s| target[s as usize] == optimum).collect()
}

/// `(1/|B_i|) Σ_{s∈B_i} Σ_{s'∈B_i} p(s→s')` for every optimum, ascending.
pub fn self_mass(inst: &NkInstance, op: OperatorKind) -> Vec<f64> {
    let target = basins(inst, op);
    optima(&target)
        .into_iter()
        .map(|o| {
            let b = basin_of(&target, o);
            let total: f64 = b
                .iter()
                .flat_map(|&s| b.iter().map(move |&t| (s, t)))
                .map(|(s, t)| move_probability(inst.n(), op, s, t))
                .sum();
            total / b.len() as f64
        })
        .collect()
}

/// Literal double sum `(1/|B_i|) Σ_{s∈B_i} Σ_{s'∈B_j} p(s→s')` for every
/// ordered pair of distinct optima with positive weight, keyed by optimum
/// solutions.
pub fn lon_weights(inst: &NkInstance, op: OperatorKind) -> BTreeMap<(u64, u64), f64> {
    let n = inst.n();
    let target = basins(inst, op);
    let opts: Vec<u64> = optima(&target).into_iter().collect();
    let members: Vec<Vec<u64>> = opts
        .iter()
        .map(|&o| {
            let mut v: Vec<u64> = basin_of(&target, o).into_iter().collect();
            v.sort();
            v
        })
        .collect();
    let mut out = BTreeMap::new();
    for (a, &oi) in opts.iter().enumerate() {
        for (b, &oj) in opts.iter().enumerate() {
            if a == b {
                continue;
            }
            let mut total = 0.0;
            for &s in &members[a] {
                for &t in &members[b] {
                    total += move_probability(n, op, s, t);
                }
            }
            let w = total / members[a].len() as f64;
            if w > 0.0 {
                out.insert((oi, oj), w);
            }
        }
    }
    out
}

pub fn jaccard(a: &HashSet<u64>, b: &HashSet<u64>) -> f64 {
    let inter = a.intersection(b).count();
    let union = a.union(b).count();
    inter as f64 / union as f64
}

/// Dense weighted digraph with node attributes.
#[derive(Clone, Debug)]
pub struct Dense {
    pub w: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    pub basin: Vec<f64>,
    pub global: Vec<bool>,
}

impl Dense {
    pub fn nv(&self) -> usize {
        self.w.len()
    }

    pub fn ne(&self) -> usize {
        self.w.iter().flatten().filter(|&&x| x > 0.0).count()
    }

    pub fn strength(&self, i: usize) -> f64 {
        self.w[i].iter().sum()
    }
}

/// Pearson as the cosine of the centered vectors.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() < 2 || x.iter().all(|&a| a == x[0]) || y.iter().all(|&b| b == y[0]) {
        return None;
    }
    let center = |v: &[f64]| {
        let m = v.iter().sum::<f64>() / v.len() as f64;
        v.iter().map(|a| a - m).collect::<Vec<f64>>()
    };
    let (cx, cy) = (center(x), center(y));
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
    Some(dot(&cx, &cy) / (dot(&cx, &cx).sqrt() * dot(&cy, &cy).sqrt()))
}

fn neighbor_average(g: &Dense, value: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![];
    let mut ys = vec![];
    for i in 0..g.nv() {
        let st = g.strength(i);
        if st > 0.0 {
            xs.push(value[i]);
            ys.push((0..g.nv()).map(|j| g.w[i][j] / st * value[j]).sum());
        }
    }
    (xs, ys)
}

pub fn knn(g: &Dense) -> Option<f64> {
    let st: Vec<f64> = (0..g.nv()).map(|i| g.strength(i)).collect();
    let (x, y) = neighbor_average(g, &st);
    pearson(&x, &y)
}

pub fn fnn(g: &Dense) -> Option<f64> {
    let (x, y) = neighbor_average(g, &g.fitness);
    pearson(&x, &y)
}

/// Barrat coefficient by the literal ordered-pair sum on the symmetrized graph.
pub fn barrat(g: &Dense) -> Vec<f64> {
    let n = g.nv();
    let sym: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (g.w[i][j] + g.w[j][i]) / 2.0).collect()).collect();
    let a = |i: usize, j: usize| if sym[i][j] > 0.0 { 1.0 } else { 0.0 };
    (0..n)
        .map(|i| {
            let k: f64 = (0..n).map(|j| a(i, j)).sum();
            if k < 2.0 {
                return 0.0;
            }
            let s: f64 = sym[i].iter().sum();
            let mut total = 0.0;
            for j in 0..n {
                for h in 0..n {
                    if j != h {
                        total += (sym[i][j] + sym[i][h]) / 2.0 * a(i, j) * a(i, h) * a(j, h);
                    }
                }
            }
            total / (s * (k - 1.0))
        })
        .collect()
}

/// Floyd–Warshall over the given edge lengths (`None` = no edge).
pub fn floyd(n: usize, len: impl Fn(usize, usize) -> Option<f64>) -> Vec<Vec<f64>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for i in 0..n {
        d[i][i] = 0.0;
        for j in 0..n {
            if i != j {
                if let Some(l) = len(i, j) {
                    d[i][j] = l;
                }
            }
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][m] + d[m][j] < d[i][j] {
                    d[i][j] = d[i][m] + d[m][j];
                }
            }
        }
    }
    d
}

/// (mean hop distance over reachable ordered pairs, reachable fraction).
pub fn hop_stats(g: &Dense) -> (Option<f64>, f64) {
    let n = g.nv();
    let d = floyd(n, |i, j| (g.w[i][j] > 0.0).then_some(1.0));
    let finite: Vec<f64> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| d[i][j])
        .filter(|x| x.is_finite())
        .collect();
    let mean = (!finite.is_empty()).then(|| finite.iter().sum::<f64>() / finite.len() as f64);
    let frac = if n < 2 { 0.0 } else { finite.len() as f64 / (n * (n - 1)) as f64 };
    (mean, frac)
}

/// (mean distance to the nearest global optimum with `1 - w` lengths, reach fraction).
pub fn go_stats(g: &Dense) -> (Option<f64>, f64) {
    let n = g.nv();
    let d = floyd(n, |i, j| (g.w[i][j] > 0.0).then(|| 1.0 - g.w[i][j]));
    let gos: Vec<usize> = (0..n).filter(|&i| g.global[i]).collect();
    let best: Vec<f64> =
        (0..n).map(|i| gos.iter().map(|&t| d[i][t]).fold(f64::INFINITY, f64::min)).filter(|x| x.is_finite()).collect();
    let mean = (!best.is_empty()).then(|| best.iter().sum::<f64>() / best.len() as f64);
    (mean, best.len() as f64 / n as f64)
}

/// (st, y2, zout) means over nodes with out-edges.
pub fn strength_means(g: &Dense) -> (Option<f64>, Option<f64>, Option<f64>) {
    let mut st = vec![];
    let mut y2 = vec![];
    let mut z = vec![];
    for i in 0..g.nv() {
        let out: Vec<f64> = g.w[i].iter().copied().filter(|&x| x > 0.0).collect();
        if out.is_empty() {
            continue;
        }
        let s: f64 = out.iter().sum();
        st.push(s);
        y2.push(out.iter().map(|x| (x / s) * (x / s)).sum::<f64>());
        z.push(out.len() as f64);
    }
    let mean = |v: &[f64]| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
    (mean(&st), mean(&y2), mean(&z))
}

pub fn random_baseline(g: &Dense) -> Option<f64> {
    let n = g.nv();
    (n >= 2).then(|| ((2.0 * g.ne() as f64 / n as f64) / (n as f64 - 1.0)).clamp(0.0, 1.0))
}

pub fn cumulative(values: &[f64]) -> Vec<(f64, f64)> {
    let distinct: BTreeSet<u64> = values.iter().map(|v| v.to_bits()).collect();
    let mut xs: Vec<f64> = distinct.into_iter().map(f64::from_bits).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.into_iter().map(|c| (c, values.iter().filter(|&&v| v >= c).count() as f64 / values.len() as f64)).collect()
}

/// Every metric of the report, in `MetricsReport::FIELDS` order.
pub fn report_values(g: &Dense) -> [Option<f64>; 13] {
    let (l, lf) = hop_stats(g);
    let (st, y2, z) = strength_means(g);
    let (go, gof) = go_stats(g);
    let wcc = barrat(g).iter().sum::<f64>() / g.nv() as f64;
    [
        Some(g.nv() as f64),
        Some(g.ne() as f64),
        knn(g),
        fnn(g),
        Some(wcc),
        random_baseline(g),
        l,
        Some(lf),
        st,
        y2,
        z,
        go,
        Some(gof),
    ]
}

/// Oracle LON of an instance as a dense graph, nodes in ascending optimum encoding.
pub fn dense_lon(inst: &NkInstance, op: OperatorKind) -> Dense {
    let target = basins(inst, op);
    let opts: Vec<u64> = optima(&target).into_iter().collect();
    let f = fitness_table(inst);
    let best = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights = lon_weights(inst, op);
    let idx = |o: u64| opts.iter().position(|&x| x == o).unwrap();
    let mut w = vec![vec![0.0; opts.len()]; opts.len()];
    for (&(a, b), &x) in &weights {
        w[idx(a)][idx(b)] = x;
    }
    Dense {
        w,
        fitness: opts.iter().map(|&o| f[o as usize]).collect(),
        basin: opts.iter().map(|&o| basin_of(&target, o).len() as f64).collect(),
        global: opts.iter().map(|&o| f[o as usize] == best).collect(),
    }
}

/// Oracle flattened two-layer network (bit-flip layer first), nodes layer-major.
pub fn dense_mllon(inst: &NkInstance, p_co_mirror: f64, p_co_diff: f64) -> Dense {
    let layers = [OperatorKind::BitFlip, OperatorKind::OneSwap];
    let targets: Vec<Vec<u64>> = layers.iter().map(|&op| basins(inst, op)).collect();
    let opts: Vec<Vec<u64>> = targets.iter().map(|t| optima(t).into_iter().collect()).collect();
    let parts: Vec<Dense> = layers.iter().map(|&op| dense_lon(inst, op)).collect();
    let sizes: Vec<usize> = parts.iter().map(Dense::nv).collect();
    let total = sizes.iter().sum();
    let mut g = Dense { w: vec![vec![0.0; total]; total], fitness: vec![], basin: vec![], global: vec![] };
    let mut offset = 0;
    for p in &parts {
        for i in 0..p.nv() {
            for j in 0..p.nv() {
                g.w[offset + i][offset + j] = p.w[i][j];
            }
        }
        g.fitness.extend(&p.fitness);
        g.basin.extend(&p.basin);
        g.global.extend(&p.global);
        offset += p.nv();
    }
    for (i, &a) in opts[0].iter().enumerate() {
        for (j, &b) in opts[1].iter().enumerate() {
            let (x, y) = (i, sizes[0] + j);
            let w = if a == b {
                p_co_mirror
            } else {
                p_co_diff * jaccard(&basin_of(&targets[0], a), &basin_of(&targets[1], b))
            };
            g.w[x][y] = w;
            g.w[y][x] = w;
        }
    }
    g
}

/// Reads a library graph into the dense form (the only bridge to library types).
pub fn to_dense(g: &mllon::Digraph) -> Dense {
    let n = g.nv();
    let mut w = vec![vec![0.0; n]; n];
    for (i, j, x) in g.edges() {
        w[i][j] = x;
    }
    Dense {
        w,
        fitness: g.nodes().iter().map(|v| v.fitness.unwrap_or(f64::NAN)).collect(),
        basin: g.nodes().iter().map(|v| v.basin_size.map_or(f64::NAN, |b| b as f64)).collect(),
        global: g.nodes().iter().map(|v| v.is_global).collect(),
    }
}

/// The instance battery used for equivalence checks: every (n, k) with
/// n <= 6, two seeds each.
pub fn small_instances() -> Vec<NkInstance> {
    let mut out = vec![];
    for n in 1..=6 {
        for k in 0..n {
            for seed in [7, 1000 + (n * 10 + k) as u64] {
                out.push(NkInstance::generate(n, k, seed).unwrap());
            }
        }
    }
    out
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn close_opt(a: Option<f64>, b: Option<f64>, tol: f64) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => close(x, y, tol),
        _ => false,
    }
}
