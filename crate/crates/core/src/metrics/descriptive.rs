//! Node/edge counts and the two neighbor correlations.

use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Descriptive {
    pub nv: usize,
    pub ne: usize,
    pub knn: Option<f64>,
    pub fnn: Option<f64>,
}

/// Pearson correlation; `None` with fewer than two points or when either
/// variable has zero variance.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 || xs.iter().all(|&x| x == xs[0]) || ys.iter().all(|&y| y == ys[0]) {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Pairs `(value_i, Σ_j (w_ij/st_i) value_j)` over nodes with positive out-strength.
fn neighbor_average_pairs(g: &Digraph, value: &[f64], strength: &[f64]) -> (Vec<f64>, Vec<f64>) {
    (0..g.nv())
        .filter(|&i| strength[i] > 0.0)
        .map(|i| {
            let avg = g.out_edges(i).map(|(j, w)| w / strength[i] * value[j]).sum::<f64>();
            (value[i], avg)
        })
        .unzip()
}

pub fn descriptive_stats(g: &Digraph) -> Result<Descriptive> {
    if g.nv() == 0 {
        return Err(Error::InvalidArgument("graph has no nodes".into()));
    }
    let strength: Vec<f64> = (0..g.nv()).map(|i| g.out_weights(i).iter().sum()).collect();
    let (x, y) = neighbor_average_pairs(g, &strength, &strength);
    let knn = pearson(&x, &y);
    let fnn = g.nodes().iter().map(|n| n.fitness).collect::<Option<Vec<f64>>>().and_then(|fitness| {
        let (x, y) = neighbor_average_pairs(g, &fitness, &strength);
        pearson(&x, &y)
    });
    Ok(Descriptive { nv: g.nv(), ne: g.ne(), knn, fnn })
}
