//! Essential continua in an annulus chart `T¹ × [−H, H]`: the components of
//! the complement that are unbounded above or below, the upper circloid
//! frontier `C⁺(A) = strip ∖ (U⁺⁻(A) ∪ U⁺⁻⁺(A))`, the order `≺` and limits of
//! monotone or iterated families.
//!
//! A strip set is closed and carries the set adjacency (eight neighbors by
//! default); complements and the open sets `U` use the dual one.

use serde::Serialize;

use crate::dynamics::rotation::ChartLift;
use crate::dynamics::{Point, TorusMapSpec};
use crate::error::{Error, Result};
use crate::fill::lift_component;
use crate::grid::{self, directed_distance, Adjacency, GridResolution, Shape, TorusGridSet};
use crate::homotopy::{homotopy_of_connected, HomotopyType};
use crate::lattice::{completing_basis, Mat2};

pub const DEFAULT_HEIGHT: usize = 4;
pub const MAX_HEIGHT: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AnnulusChart {
    basis: Mat2,
    height: usize,
}

/// Chart whose first basis vector is `(p, q)`: in chart coordinates a
/// `(p, q)` loop runs horizontally.
pub fn annulus_chart(p: i64, q: i64) -> Result<AnnulusChart> {
    let basis = completing_basis(p, q).ok_or(Error::NonPrimitiveVector)?;
    Ok(AnnulusChart {
        basis,
        height: DEFAULT_HEIGHT,
    })
}

impl AnnulusChart {
    pub fn with_height(self, height: usize) -> Self {
        assert!(height >= 1, "strip height must be positive");
        AnnulusChart { height, ..self }
    }

    pub fn basis(&self) -> Mat2 {
        self.basis
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn vector(&self) -> [i64; 2] {
        self.basis.column(0)
    }
}

/// Cells of the `n × 2Hn` strip grid; row `v` covers `[v/n, (v+1)/n)` for
/// `v ∈ [−Hn, Hn)`, columns wrap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripSet {
    chart: AnnulusChart,
    n: GridResolution,
    adjacency: Adjacency,
    cells: Vec<bool>,
}

impl StripSet {
    pub fn empty(chart: AnnulusChart, n: GridResolution) -> Self {
        let len = n.n() * 2 * chart.height * n.n();
        StripSet {
            chart,
            n,
            adjacency: Adjacency::EIGHT,
            cells: vec![false; len],
        }
    }

    pub fn from_fn(chart: AnnulusChart, n: GridResolution, mut f: impl FnMut(usize, i64) -> bool) -> Self {
        let mut s = Self::empty(chart, n);
        let w = n.n();
        for r in 0..s.rows() {
            for x in 0..w {
                s.cells[r * w + x] = f(x, r as i64 + s.v_min());
            }
        }
        s
    }

    fn with_mask(&self, cells: Vec<bool>, adjacency: Adjacency) -> Self {
        StripSet {
            chart: self.chart,
            n: self.n,
            adjacency,
            cells,
        }
    }

    pub fn chart(&self) -> AnnulusChart {
        self.chart
    }

    pub fn resolution(&self) -> GridResolution {
        self.n
    }

    pub fn adjacency(&self) -> Adjacency {
        self.adjacency
    }

    pub fn with_adjacency(mut self, adjacency: Adjacency) -> Self {
        self.adjacency = adjacency;
        self
    }

    pub fn width(&self) -> usize {
        self.n.n()
    }

    pub fn rows(&self) -> usize {
        2 * self.chart.height * self.n.n()
    }

    /// Lowest row coordinate, `−Hn`.
    pub fn v_min(&self) -> i64 {
        -((self.chart.height * self.n.n()) as i64)
    }

    pub(crate) fn shape(&self) -> Shape {
        Shape::cylinder(self.width(), self.rows())
    }

    pub fn mask(&self) -> &[bool] {
        &self.cells
    }

    fn slot(&self, x: usize, v: i64) -> Option<usize> {
        let r = v - self.v_min();
        (0..self.rows() as i64)
            .contains(&r)
            .then(|| r as usize * self.width() + x % self.width())
    }

    pub fn contains(&self, x: usize, v: i64) -> bool {
        self.slot(x, v).is_some_and(|k| self.cells[k])
    }

    pub fn insert(&mut self, x: usize, v: i64) -> Result<()> {
        let k = self.slot(x, v).ok_or(Error::StripExhausted)?;
        self.cells[k] = true;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.contains(&true)
    }

    /// Member cells as `(x, v)`, row by row from the bottom.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        let w = self.width();
        let v0 = self.v_min();
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(move |(k, _)| (k % w, (k / w) as i64 + v0))
    }

    pub fn same_cells(&self, other: &StripSet) -> bool {
        self.cells == other.cells
    }

    pub fn is_subset(&self, other: &StripSet) -> bool {
        self.cells.iter().zip(&other.cells).all(|(&a, &b)| !a || b)
    }

    pub fn is_disjoint(&self, other: &StripSet) -> bool {
        self.cells.iter().zip(&other.cells).all(|(&a, &b)| !(a && b))
    }

    pub fn union(&self, other: &StripSet) -> StripSet {
        self.with_mask(
            self.cells.iter().zip(&other.cells).map(|(&a, &b)| a || b).collect(),
            self.adjacency,
        )
    }

    pub fn difference(&self, other: &StripSet) -> StripSet {
        self.with_mask(
            self.cells.iter().zip(&other.cells).map(|(&a, &b)| a && !b).collect(),
            self.adjacency,
        )
    }

    /// Complement in the strip, with the dual adjacency.
    pub fn complement(&self) -> StripSet {
        self.with_mask(self.cells.iter().map(|&c| !c).collect(), self.adjacency.dual())
    }

    /// Mirror image under `v ↦ −1 − v`.
    pub fn reflect(&self) -> StripSet {
        let w = self.width();
        let rows = self.rows();
        let mut cells = vec![false; self.cells.len()];
        for (k, &c) in self.cells.iter().enumerate() {
            cells[(rows - 1 - k / w) * w + k % w] = c;
        }
        self.with_mask(cells, self.adjacency)
    }

    pub fn touches_edge(&self) -> bool {
        let w = self.width();
        let top = (self.rows() - 1) * w;
        self.cells[..w].contains(&true) || self.cells[top..].contains(&true)
    }

    /// Cells with a dual-adjacent cell outside the set.
    pub fn boundary(&self) -> StripSet {
        let cells = grid::shape::boundary_mask(&self.shape(), &self.cells, &self.adjacency.dual().offsets());
        self.with_mask(cells, self.adjacency)
    }

    /// The set together with its dual neighbors; an open set's closure.
    pub fn closure(&self) -> StripSet {
        let cells = grid::shape::dilate_mask(&self.shape(), &self.cells, &self.adjacency.offsets());
        self.with_mask(cells, self.adjacency.dual())
    }

    /// Cells within Chebyshev distance `r`.
    pub fn dilate(&self, r: usize) -> StripSet {
        let r = r as i64;
        let offsets: Vec<_> = (-r..=r).flat_map(|a| (-r..=r).map(move |b| [a, b])).collect();
        self.with_mask(
            grid::shape::dilate_mask(&self.shape(), &self.cells, &offsets),
            self.adjacency,
        )
    }

    pub fn component_count(&self) -> usize {
        grid::shape::label(&self.shape(), &self.cells, &self.adjacency.offsets()).count
    }

    /// Some component wraps around the strip (rank-one holonomy).
    pub fn is_essential(&self) -> bool {
        let shape = self.shape();
        let offsets = self.adjacency.offsets();
        let labels = grid::shape::label(&shape, &self.cells, &offsets);
        grid::shape::component_periods(&shape, &labels, &offsets)
            .iter()
            .any(|p| !p.is_empty())
    }

    /// Hausdorff distance between cell centers, in torus units.
    pub fn hausdorff(&self, other: &StripSet) -> Result<f64> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyHausdorff);
        }
        let shape = self.shape();
        let d = directed_distance(&shape, &self.cells, &other.cells).max(directed_distance(
            &shape,
            &other.cells,
            &self.cells,
        ));
        Ok(d / self.width() as f64)
    }

    /// Re-embedded in a strip of another height; cells that do not fit are an
    /// error.
    pub fn with_height(&self, height: usize) -> Result<StripSet> {
        let mut out = StripSet::empty(self.chart.with_height(height), self.n).with_adjacency(self.adjacency);
        for (x, v) in self.iter() {
            out.insert(x, v)?;
        }
        Ok(out)
    }

    /// A connected torus set of type `±(p, q)` lifted through the chart into
    /// the strip, centered vertically.
    pub fn from_torus_component(c: &TorusGridSet, chart: AnnulusChart) -> Result<StripSet> {
        let t = homotopy_of_connected(c)?;
        let v = chart.vector();
        if t != HomotopyType::Essential(v[0], v[1]) && t != HomotopyType::Essential(-v[0], -v[1]) {
            return Err(Error::Precondition(format!(
                "component of type {t} does not fit chart ({},{})",
                v[0], v[1]
            )));
        }
        let inv = chart.basis.inverse().expect("unimodular");
        let moved = c.transform(inv)?;
        let lift = lift_component(&moved, true);
        let mid = (lift.lo[1] + lift.hi[1]).div_euclid(2);
        let mut out = StripSet::empty(chart, c.resolution()).with_adjacency(moved.adjacency());
        for (_, p) in &lift.cells {
            out.insert(p[0] as usize, p[1] - mid)?;
        }
        Ok(out)
    }

    /// Projection to the torus through the chart.
    pub fn to_torus(&self) -> TorusGridSet {
        let n = self.width() as i64;
        let b = self.chart.basis;
        let mut out = TorusGridSet::empty(self.n, self.adjacency.transformed(b));
        for (x, v) in self.iter() {
            let z = b.apply([x as i64, v.rem_euclid(n)]);
            out.insert(z[0].rem_euclid(n) as usize, z[1].rem_euclid(n) as usize);
        }
        out
    }
}

fn touching(s: &StripSet, mask: &[bool], top: bool) -> Vec<bool> {
    let shape = s.shape();
    let labels = grid::shape::label(&shape, mask, &s.adjacency.dual().offsets());
    let w = s.width();
    let row = if top { (s.rows() - 1) * w } else { 0 };
    let mut hit = vec![false; labels.count];
    for x in 0..w {
        if let Some(l) = labels.get(row + x) {
            hit[l] = true;
        }
    }
    (0..shape.len())
        .map(|c| labels.get(c).is_some_and(|l| hit[l]))
        .collect()
}

/// Components of the complement of a closed set touching the top (`U⁺`) or
/// the bottom (`U⁻`) edge, as open sets.
fn open_side(a: &StripSet, top: bool) -> StripSet {
    let comp: Vec<bool> = a.cells.iter().map(|&c| !c).collect();
    a.with_mask(touching(a, &comp, top), a.adjacency.dual())
}

/// `(U⁺(a), U⁻(a))`.
pub fn unbounded_components(a: &StripSet) -> Result<(StripSet, StripSet)> {
    if a.touches_edge() {
        return Err(Error::StripExhausted);
    }
    Ok((open_side(a, true), open_side(a, false)))
}

/// Applies the operators named by `word` left to right: `'+'` is `U⁺` and
/// `'-'` is `U⁻`, each taken of the closure of the previous open set.
/// `frontier_word(a, "+-")` is `U⁺⁻(a)`.
pub fn frontier_word(a: &StripSet, word: &str) -> Result<StripSet> {
    if a.touches_edge() {
        return Err(Error::StripExhausted);
    }
    let mut closed = a.clone();
    let mut open = None;
    for ch in word.chars() {
        let top = match ch {
            '+' => true,
            '-' => false,
            _ => return Err(Error::InvalidInput(format!("frontier word has '{ch}'"))),
        };
        let u = open_side(&closed, top);
        closed = u.closure();
        open = Some(u);
    }
    open.ok_or_else(|| Error::InvalidInput("empty frontier word".into()))
}

#[derive(Clone, Debug)]
pub struct Circloid {
    pub body: StripSet,
    /// `U⁺⁻⁺`: everything above the body.
    pub upper: StripSet,
    /// `U⁺⁻`: everything below the body.
    pub lower: StripSet,
}

pub fn circloid_upper_frontier(a: &StripSet) -> Result<Circloid> {
    let (up, down) = unbounded_components(a)?;
    if !up.is_disjoint(&down) {
        return Err(Error::NotEssential);
    }
    let lower = open_side(&up.closure(), false);
    let upper = open_side(&lower.closure(), true);
    let body = a.with_mask(
        lower.cells.iter().zip(&upper.cells).map(|(&l, &u)| !l && !u).collect(),
        a.adjacency,
    );
    Ok(Circloid { body, upper, lower })
}

/// `C⁻(a)`, the upper frontier of the mirror image, mirrored back.
pub fn circloid_lower_frontier(a: &StripSet) -> Result<Circloid> {
    let c = circloid_upper_frontier(&a.reflect())?;
    Ok(Circloid {
        body: c.body.reflect(),
        upper: c.lower.reflect(),
        lower: c.upper.reflect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EssentialOrder {
    Below,
    Above,
    Incomparable,
}

/// `Below` when `e1 ⊆ U⁻(e2)`, `Above` when `e1 ⊆ U⁺(e2)`.
pub fn essential_order(e1: &StripSet, e2: &StripSet) -> EssentialOrder {
    if e1.is_empty() {
        return EssentialOrder::Incomparable;
    }
    if e1.is_subset(&open_side(e2, false)) {
        EssentialOrder::Below
    } else if e1.is_subset(&open_side(e2, true)) {
        EssentialOrder::Above
    } else {
        EssentialOrder::Incomparable
    }
}

/// Boundary from above of `⋃ U⁻(e_k)` for an increasing sequence, stopping
/// once consecutive members are closer than `tol`.
pub fn monotone_limit(es: &[StripSet], tol: f64) -> Result<StripSet> {
    let first = es.first().ok_or_else(|| Error::InvalidInput("empty sequence".into()))?;
    let mut lower = open_side(first, false);
    for w in es.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if !a.same_cells(b) && essential_order(a, b) != EssentialOrder::Below {
            return Err(Error::NotMonotone);
        }
        lower = lower.union(&open_side(b, false));
        if a.hausdorff(b)? < tol {
            break;
        }
    }
    let cl = lower.closure();
    Ok(cl.difference(&lower).with_adjacency(first.adjacency))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LimitParams {
    /// Hausdorff tolerance in torus units; `None` means two cells.
    pub tol: Option<f64>,
    pub max_iter: usize,
}

impl Default for LimitParams {
    fn default() -> Self {
        LimitParams {
            tol: None,
            max_iter: 4096,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IteratedLimit {
    pub circloid: Circloid,
    /// Iterate count of the accepted raster.
    pub iterations: usize,
    pub order_reversing: bool,
    /// The raster needed a one-cell dilation to separate the strip.
    pub dilated: bool,
}

fn rasterize(cloud: &[Point], chart: AnnulusChart, n: GridResolution, adjacency: Adjacency) -> Result<StripSet> {
    let nf = n.n() as f64;
    let mut s = StripSet::empty(chart, n).with_adjacency(adjacency);
    for p in cloud {
        let x = (p[0].rem_euclid(1.0) * nf).floor() as usize % n.n();
        s.insert(x, (p[1] * nf).floor() as i64)?;
    }
    Ok(s)
}

/// Iterates `e` under the chart lift (its square when the lift reverses
/// the strip's orientation) as a cloud of 4 × 4 points per cell. Stops at
/// the first `k = 2^j` with `d_H(E_k, E_2k) < tol` and returns the upper
/// frontier of `E_2k`. The strip doubles in height up to `MAX_HEIGHT` when
/// the cloud nears an edge.
pub fn iterated_essential_limit(map: &TorusMapSpec, e: &StripSet, params: &LimitParams) -> Result<IteratedLimit> {
    let [p, q] = e.chart.vector();
    let lift = ChartLift::new(map, p, q)?;
    let reps = if lift.order_reversing { 2 } else { 1 };
    let n = e.resolution();
    let nf = n.n() as f64;
    let tol = params.tol.unwrap_or(2.0 / nf);
    let mut chart = e.chart;
    let mut cloud: Vec<Point> = e
        .iter()
        .flat_map(|(x, v)| {
            (0..16).map(move |s| {
                let (a, b) = ((s % 4) as f64, (s / 4) as f64);
                [(x as f64 + (a + 0.5) / 4.0) / nf, (v as f64 + (b + 0.5) / 4.0) / nf]
            })
        })
        .collect();
    let mut snapshot = cloud.clone();
    let mut t = 0;
    loop {
        t += 1;
        if t > params.max_iter {
            return Err(Error::LimitNotReached);
        }
        let mut top = 0.0f64;
        for z in cloud.iter_mut() {
            let mut w = *z;
            for _ in 0..reps {
                w = lift.eval(w);
            }
            *z = [w[0].rem_euclid(1.0), w[1]];
            top = top.max(w[1].abs());
        }
        if !top.is_finite() {
            return Err(Error::UnboundedOrbit);
        }
        while top + 2.0 / nf >= chart.height as f64 {
            if chart.height * 2 > MAX_HEIGHT {
                return Err(Error::UnboundedOrbit);
            }
            chart = chart.with_height(chart.height * 2);
        }
        if t.is_power_of_two() {
            let now = rasterize(&cloud, chart, n, e.adjacency)?;
            if t >= 2 {
                let before = rasterize(&snapshot, chart, n, e.adjacency)?;
                if before.hausdorff(&now)? < tol {
                    let (limit, dilated) = match circloid_upper_frontier(&now) {
                        Err(Error::NotEssential) => (now.dilate(1), true),
                        _ => (now, false),
                    };
                    let circloid = circloid_upper_frontier(&limit)?;
                    return Ok(IteratedLimit {
                        circloid,
                        iterations: t * reps,
                        order_reversing: lift.order_reversing,
                        dilated,
                    });
                }
            }
            snapshot.clone_from(&cloud);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::hausdorff_distance;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn chart() -> AnnulusChart {
        annulus_chart(1, 0).unwrap()
    }

    fn res(n: usize) -> GridResolution {
        GridResolution::new(n).unwrap()
    }

    fn rows(vs: &[i64]) -> StripSet {
        StripSet::from_fn(chart(), res(16), |_, v| vs.contains(&v))
    }

    #[test]
    fn chart_examples() {
        assert_eq!(annulus_chart(1, 0).unwrap().basis(), Mat2::IDENTITY);
        assert_eq!(annulus_chart(0, 1).unwrap().basis(), Mat2::new(0, -1, 1, 0));
        let c = annulus_chart(2, 1).unwrap().basis();
        assert_eq!((c.column(0), c.det()), ([2, 1], 1));
        assert_eq!(annulus_chart(2, 2).unwrap_err(), Error::NonPrimitiveVector);
        assert_eq!(annulus_chart(0, 0).unwrap_err(), Error::NonPrimitiveVector);
    }

    #[test]
    fn unbounded_components_of_a_circle() {
        let (up, down) = unbounded_components(&rows(&[0])).unwrap();
        assert!(up.iter().all(|(_, v)| v > 0) && up.len() == 16 * 63);
        assert!(down.iter().all(|(_, v)| v < 0) && down.len() == 16 * 64);
        let mut dot = StripSet::empty(chart(), res(16));
        dot.insert(3, 0).unwrap();
        let (up, down) = unbounded_components(&dot).unwrap();
        assert!(up.same_cells(&down));
        let mut edge = StripSet::empty(chart(), res(16));
        edge.insert(0, 63).unwrap();
        assert_eq!(unbounded_components(&edge).unwrap_err(), Error::StripExhausted);
    }

    #[test]
    fn upper_frontier_examples() {
        let c = circloid_upper_frontier(&rows(&[0])).unwrap();
        assert!(c.body.same_cells(&rows(&[0])));
        let c = circloid_upper_frontier(&rows(&[0, 5])).unwrap();
        assert!(c.body.same_cells(&rows(&[5])));
        // A thick band collapses onto its top row.
        let c = circloid_upper_frontier(&rows(&[0, 1, 2])).unwrap();
        assert!(c.body.same_cells(&rows(&[2])));
        let l = circloid_lower_frontier(&rows(&[0, 1, 2])).unwrap();
        assert!(l.body.same_cells(&rows(&[0])));
        let mut dot = StripSet::empty(chart(), res(16));
        dot.insert(3, 0).unwrap();
        assert_eq!(circloid_upper_frontier(&dot).unwrap_err(), Error::NotEssential);
    }

    #[test]
    fn frontier_with_hole_keeps_the_band_around_it() {
        // A three-row band with a one-cell hole: the hole is trivial, so the
        // frontier is the top row.
        let mut a = rows(&[0, 1, 2]);
        a.cells[(1 + 64) * 16 + 5] = false;
        let c = circloid_upper_frontier(&a).unwrap();
        assert!(c.body.same_cells(&rows(&[2])));
        assert!(c.body.boundary().is_subset(&a.boundary()));
    }

    #[test]
    fn partition_and_idempotence() {
        let a = StripSet::from_fn(chart(), res(16), |x, v| {
            let h = [0, 1, 2, 2, 1, 0, -1, -1, 0, 1, 3, 2, 1, 0, 0, 0][x];
            v == h || (x % 5 == 0 && (v - h).abs() <= 2)
        });
        let c = circloid_upper_frontier(&a).unwrap();
        let all = c.body.union(&c.upper).union(&c.lower);
        assert!(all.cells.iter().all(|&m| m));
        assert!(c.upper.is_disjoint(&c.lower));
        let pm = frontier_word(&a, "+-").unwrap();
        assert!(frontier_word(&a, "+-+-").unwrap().same_cells(&pm));
        assert!(pm.same_cells(&c.lower));
        assert!(c.body.is_essential() && c.body.component_count() == 1);
    }

    #[test]
    fn order_examples() {
        let (a, b) = (rows(&[0]), rows(&[8]));
        assert_eq!(essential_order(&a, &b), EssentialOrder::Below);
        assert_eq!(essential_order(&b, &a), EssentialOrder::Above);
        assert_eq!(essential_order(&a, &a), EssentialOrder::Incomparable);
        let wave = StripSet::from_fn(chart(), res(16), |x, v| v == (x as i64 % 4) - 1);
        assert_eq!(essential_order(&wave, &a), EssentialOrder::Incomparable);
    }

    #[test]
    fn monotone_limit_examples() {
        let seq: Vec<StripSet> = (0..=8).map(|v| rows(&[v])).collect();
        let lim = monotone_limit(&seq, 0.5 / 16.0).unwrap();
        assert!(lim.same_cells(&rows(&[8])));
        let constant = vec![rows(&[3]); 3];
        assert!(monotone_limit(&constant, 0.01).unwrap().same_cells(&rows(&[3])));
        let back: Vec<StripSet> = seq.into_iter().rev().collect();
        assert_eq!(monotone_limit(&back, 0.01).unwrap_err(), Error::NotMonotone);
    }

    #[test]
    fn identity_limit_is_the_circle() {
        let id = TorusMapSpec::translation(0.0, 0.0);
        let e = rows(&[2]);
        let l = iterated_essential_limit(&id, &e, &LimitParams::default()).unwrap();
        assert!(l.circloid.body.same_cells(&e));
        assert_eq!(l.iterations, 2);
    }

    #[test]
    fn reversing_map_uses_the_square() {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let flip = TorusMapSpec::linear_toral(Mat2::new(1, 0, 0, -1), g, 0.0).unwrap();
        let e = rows(&[0]);
        let l = iterated_essential_limit(&flip, &e, &LimitParams::default()).unwrap();
        assert!(l.order_reversing);
        assert!(l.circloid.body.same_cells(&e));
    }

    #[test]
    fn attracting_circle_is_found() {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let lift = Arc::new(move |[x, y]: Point| {
            [
                x + g,
                y + 0.2 * (2.0 * PI * x).sin() * (2.0 * PI * y).sin() / (2.0 * PI),
            ]
        });
        let map = TorusMapSpec::custom(Mat2::IDENTITY, lift, None).unwrap();
        let n = res(64);
        let e = StripSet::from_fn(chart(), n, |_, v| v == 1);
        let l = iterated_essential_limit(&map, &e, &LimitParams::default()).unwrap();
        let circle = StripSet::from_fn(chart(), n, |_, v| v == 0);
        assert!(l.circloid.body.hausdorff(&circle).unwrap() <= 2.0 / 64.0);
    }

    #[test]
    fn escaping_orbit_is_reported() {
        let drift = TorusMapSpec::translation(0.1, 0.37);
        let e = rows(&[0]);
        assert_eq!(
            iterated_essential_limit(&drift, &e, &LimitParams::default()).unwrap_err(),
            Error::UnboundedOrbit
        );
    }

    #[test]
    fn torus_round_trip_through_a_chart() {
        let n = res(32);
        let band = TorusGridSet::from_fn(n, Adjacency::EIGHT, |i, j| (i + 2 * j) % 32 < 2);
        let t = homotopy_of_connected(&band).unwrap();
        let [p, q] = t.vector().unwrap();
        let s = StripSet::from_torus_component(&band, annulus_chart(p, q).unwrap()).unwrap();
        assert!(s.is_essential());
        let back = s.to_torus();
        assert!(back.same_cells(&band));
        assert_eq!(hausdorff_distance(&back, &band).unwrap(), 0.0);
    }
}
