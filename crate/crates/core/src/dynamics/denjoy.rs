//! Denjoy-type circle homeomorphisms: the orbit of `0` under rotation by `α`
//! is blown up into open gaps, and the base map sends gap `k` affinely onto
//! gap `k + 1`. The product with a fiber rotation gives a torus map whose
//! minimal set is (Cantor set) × circle.

use serde::Serialize;

use super::map::TorusMapSpec;
use crate::error::{Error, Result};
use crate::grid::{Adjacency, GridResolution, TorusGridSet};

/// One excised interval `(start, start + len)` of the base circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Gap {
    pub index: i64,
    pub start: f64,
    pub len: f64,
}

impl Gap {
    pub fn end(&self) -> f64 {
        self.start + self.len
    }
}

/// Piecewise-linear circle lift through monotone knots.
#[derive(Clone, Debug)]
pub struct DenjoyBase {
    alpha: f64,
    gap_budget: f64,
    truncation: usize,
    gaps: Vec<Gap>,
    /// Knot positions in `[0, 1)`, increasing.
    xs: Vec<f64>,
    /// Lifted knot images, increasing, `ys[last] < ys[0] + 1`.
    ys: Vec<f64>,
}

fn frac(v: f64) -> f64 {
    v - v.floor()
}

impl DenjoyBase {
    /// Gaps at the orbit points `kα mod 1`, `|k| <= truncation`, with
    /// lengths proportional to `1 / (1 + k²)` summing to `gap_budget`.
    pub fn new(alpha: f64, gap_budget: f64, truncation: usize) -> Result<Self> {
        if !(gap_budget > 0.0 && gap_budget < 1.0) || !alpha.is_finite() {
            return Err(Error::GapBudgetInfeasible);
        }
        let m = truncation as i64;
        let theta = |k: i64| frac(k as f64 * alpha);
        let weight = |k: i64| 1.0 / (1.0 + (k * k) as f64);
        let total: f64 = (-m..=m).map(weight).sum();
        let c = gap_budget / total;

        // Orbit points of the gaps plus the two points just beyond the
        // truncation; the map's knots sit there too.
        let mut pts: Vec<(f64, i64)> = (-m - 1..=m + 1).map(|k| (theta(k), k)).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut min_sep = f64::INFINITY;
        for w in 0..pts.len() {
            let next = if w + 1 < pts.len() {
                pts[w + 1].0
            } else {
                pts[0].0 + 1.0
            };
            min_sep = min_sep.min(next - pts[w].0);
        }
        if min_sep < 1e-12 {
            return Err(Error::GapBudgetInfeasible);
        }

        let b = gap_budget;
        let gap_thetas: Vec<(f64, i64)> = pts.iter().copied().filter(|p| p.1.abs() <= m).collect();
        // P(t) = (1 − b) t + Σ_{θ_k < t} ℓ_k, extended with P(t + 1) = P(t) + 1.
        let place = |t: f64| -> f64 {
            let shift = t.floor();
            let t0 = t - shift;
            let jumps: f64 = gap_thetas.iter().filter(|p| p.0 < t0).map(|p| c * weight(p.1)).sum();
            (1.0 - b) * t0 + jumps + shift
        };
        let mut gaps: Vec<Gap> = gap_thetas
            .iter()
            .map(|&(t, k)| Gap {
                index: k,
                start: place(t),
                len: c * weight(k),
            })
            .collect();
        gaps.sort_by_key(|g| g.index);

        // Tiny intervals standing in for the gaps just beyond the truncation.
        let eta = 0.25 * (1.0 - b) * min_sep;
        let gap = |k: i64| gaps[(k + m) as usize];
        let mut knots: Vec<(f64, f64)> = Vec::new();
        for k in -m - 1..=m {
            let (x0, x1) = if k == -m - 1 {
                let a = place(theta(k));
                (a, a + eta)
            } else {
                (gap(k).start, gap(k).end())
            };
            let (y0, y1) = if k == m {
                let a = place(theta(k + 1));
                (a, a + eta)
            } else {
                (gap(k + 1).start, gap(k + 1).end())
            };
            // Images follow the lift t ↦ t + α.
            let shift = (theta(k) + alpha).floor();
            knots.push((x0, y0 + shift));
            knots.push((x1, y1 + shift));
        }
        knots.sort_by(|p, q| p.0.total_cmp(&q.0));
        let ok = knots.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
            && knots.last().unwrap().1 < knots[0].1 + 1.0
            && knots.last().unwrap().0 < 1.0;
        if !ok {
            return Err(Error::GapBudgetInfeasible);
        }
        let (xs, ys) = knots.into_iter().unzip();
        Ok(DenjoyBase {
            alpha,
            gap_budget,
            truncation,
            gaps,
            xs,
            ys,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gap_budget(&self) -> f64 {
        self.gap_budget
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Gaps sorted by index `−M..=M`.
    pub fn gaps(&self) -> &[Gap] {
        &self.gaps
    }

    pub fn gap(&self, index: i64) -> Option<Gap> {
        let m = self.truncation as i64;
        (index.abs() <= m).then(|| self.gaps[(index + m) as usize])
    }

    fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
        let shift = x.floor();
        let t = x - shift;
        let last = xs.len() - 1;
        let (x0, y0, x1, y1) = if t < xs[0] {
            (xs[last] - 1.0, ys[last] - 1.0, xs[0], ys[0])
        } else if t >= xs[last] {
            (xs[last], ys[last], xs[0] + 1.0, ys[0] + 1.0)
        } else {
            let i = xs.partition_point(|&v| v <= t) - 1;
            (xs[i], ys[i], xs[i + 1], ys[i + 1])
        };
        y0 + (y1 - y0) * (t - x0) / (x1 - x0) + shift
    }

    /// Lift of the base map: increasing, `G(x + 1) = G(x) + 1`.
    pub fn eval(&self, x: f64) -> f64 {
        Self::interpolate(&self.xs, &self.ys, x)
    }

    pub fn eval_inverse(&self, y: f64) -> f64 {
        // Normalize the knot images into one period of the inverse.
        let shift = self.ys[0].floor();
        let mut pairs: Vec<(f64, f64)> = self
            .ys
            .iter()
            .zip(&self.xs)
            .map(|(&y, &x)| {
                let k = (y - shift).floor();
                (y - shift - k, x - k)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (ys, xs): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        Self::interpolate(&ys, &xs, y - shift)
    }

    /// Index of the gap containing `x mod 1`.
    pub fn gap_at(&self, x: f64) -> Option<i64> {
        let t = frac(x);
        self.gaps.iter().find(|g| g.start < t && t < g.end()).map(|g| g.index)
    }
}

/// The rasterized minimal set of a Denjoy product.
#[derive(Clone, Debug)]
pub struct DenjoyProduct {
    pub set: TorusGridSet,
    pub map: TorusMapSpec,
    /// For each gap (by index order `−M..=M`), its run of removed columns.
    pub gap_columns: Vec<(i64, std::ops::Range<usize>)>,
}

/// `C × T¹` for the Denjoy Cantor set `C`, rasterized so that a column is in
/// the set iff its closed cell interval misses every gap. Every gap therefore
/// removes at least one column.
pub fn denjoy_product_set(
    alpha: f64,
    beta: f64,
    gap_budget: f64,
    truncation: usize,
    n: GridResolution,
) -> Result<DenjoyProduct> {
    let base = DenjoyBase::new(alpha, gap_budget, truncation)?;
    let nn = n.n();
    let nf = nn as f64;
    let mut gap_columns: Vec<(i64, std::ops::Range<usize>)> = base
        .gaps()
        .iter()
        .map(|g| {
            // Columns i with i/n < end and (i+1)/n > start.
            let first = (g.start * nf).floor() as usize;
            let last = ((g.end() * nf).ceil() as usize).min(nn);
            (g.index, first..last)
        })
        .collect();
    let mut by_pos = gap_columns.clone();
    by_pos.sort_by_key(|(_, r)| r.start);
    for w in 0..by_pos.len() {
        let (ka, ra) = &by_pos[w];
        let (kb, rb) = &by_pos[(w + 1) % by_pos.len()];
        let next_start = if w + 1 < by_pos.len() { rb.start } else { rb.start + nn };
        if by_pos.len() > 1 && next_start <= ra.end {
            return Err(Error::Raster(format!("gaps {ka} and {kb} merge at n={nn}")));
        }
    }
    let mut removed = vec![false; nn];
    for (_, r) in &gap_columns {
        for c in r.clone() {
            removed[c] = true;
        }
    }
    gap_columns.sort_by_key(|(k, _)| *k);
    let set = TorusGridSet::from_fn(n, Adjacency::EIGHT, |i, _| !removed[i]);
    let map = TorusMapSpec::denjoy_product(base, beta);
    Ok(DenjoyProduct { set, map, gap_columns })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> f64 {
        (5f64.sqrt() - 1.0) / 2.0
    }

    #[test]
    fn gaps_are_disjoint_and_budgeted() {
        let b = DenjoyBase::new(golden(), 0.5, 16).unwrap();
        let total: f64 = b.gaps().iter().map(|g| g.len).sum();
        assert!((total - 0.5).abs() < 1e-12);
        let mut sorted = b.gaps().to_vec();
        sorted.sort_by(|a, c| a.start.total_cmp(&c.start));
        for w in sorted.windows(2) {
            assert!(w[0].end() < w[1].start);
        }
        assert!(sorted.last().unwrap().end() < 1.0);
    }

    #[test]
    fn gap_k_maps_onto_gap_k_plus_one() {
        let b = DenjoyBase::new(golden(), 0.4, 10).unwrap();
        for k in -10..10 {
            let g = b.gap(k).unwrap();
            let h = b.gap(k + 1).unwrap();
            for s in [0.1, 0.5, 0.9] {
                let x = g.start + s * g.len;
                let y = b.eval(x);
                assert_eq!(b.gap_at(y), Some(k + 1), "gap {k}");
                // Affine on the gap.
                let want = h.start + s * h.len;
                assert!((y - y.floor() - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn base_map_is_a_monotone_degree_one_lift() {
        let b = DenjoyBase::new(golden(), 0.5, 8).unwrap();
        let mut prev = b.eval(-1.0);
        for i in 1..=4000 {
            let x = -1.0 + i as f64 / 2000.0;
            let y = b.eval(x);
            assert!(y > prev);
            prev = y;
        }
        for x in [0.0, 0.3, 0.77] {
            assert!((b.eval(x + 1.0) - b.eval(x) - 1.0).abs() < 1e-12);
            assert!((b.eval_inverse(b.eval(x)) - x).abs() < 1e-12);
        }
    }

    #[test]
    fn infeasible_budgets() {
        assert_eq!(
            DenjoyBase::new(golden(), 1.0, 4).unwrap_err(),
            Error::GapBudgetInfeasible
        );
        assert_eq!(
            DenjoyBase::new(golden(), 0.0, 4).unwrap_err(),
            Error::GapBudgetInfeasible
        );
        // A rational angle puts two gaps on the same point.
        assert_eq!(DenjoyBase::new(0.25, 0.5, 4).unwrap_err(), Error::GapBudgetInfeasible);
    }

    #[test]
    fn single_gap_product() {
        let n = GridResolution::new(64).unwrap();
        let d = denjoy_product_set(golden(), 0.1, 0.3, 0, n).unwrap();
        assert_eq!(d.gap_columns.len(), 1);
        assert!(d.set.len() < 64 * 64);
        assert!(!d.set.contains(0, 5));
    }
}
