//! Subsets of the torus ℝ²/ℤ² as cell sets on a periodic `n × n` grid.
//!
//! Cell `(i, j)` is the square `[i/n, (i+1)/n) × [j/n, (j+1)/n)`; storage and
//! every reported ordering is row-major (`j` outer, `i` inner).
//!
//! Open and closed intent is carried by the adjacency: closed sets use eight
//! neighbors, open sets four, and a complement always takes the dual. An
//! adjacency also carries a unimodular *frame* so that an index map by
//! `B ∈ GL(2,ℤ)` is a graph isomorphism: the image set's neighbors are the
//! images of the original neighbors.

mod distance;
pub mod pgm;
pub(crate) mod shape;
mod window;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Mat2, Vec2i};

pub(crate) use distance::directed_distance;
pub(crate) use shape::{Labels, Shape};
pub use window::{lift_window, CoverWindow, PlanarSet};

/// Cells per axis. Always a power of two and at least 8 so that resolution
/// ladders nest exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct GridResolution(usize);

impl GridResolution {
    pub fn new(n: usize) -> Result<Self> {
        if n >= 8 && n.is_power_of_two() {
            Ok(GridResolution(n))
        } else {
            Err(Error::InvalidResolution(n))
        }
    }

    pub fn n(self) -> usize {
        self.0
    }

    pub fn cell_count(self) -> usize {
        self.0 * self.0
    }

    /// Cell containing the projection of a point of ℝ².
    pub fn cell_of(self, p: [f64; 2]) -> (usize, usize) {
        let n = self.0 as f64;
        let c = |v: f64| {
            let k = (v.rem_euclid(1.0) * n).floor() as i64;
            k.rem_euclid(self.0 as i64) as usize
        };
        (c(p[0]), c(p[1]))
    }

    pub fn center(self, i: usize, j: usize) -> [f64; 2] {
        let n = self.0 as f64;
        [(i as f64 + 0.5) / n, (j as f64 + 0.5) / n]
    }
}

impl TryFrom<usize> for GridResolution {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        GridResolution::new(n)
    }
}

impl From<GridResolution> for usize {
    fn from(r: GridResolution) -> usize {
        r.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Connectivity {
    Four,
    Eight,
}

/// Neighborhood structure of a cell set: four or eight neighbors, expressed in
/// a unimodular frame (identity for ordinary grids).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Adjacency {
    connectivity: Connectivity,
    frame: Mat2,
}

impl Adjacency {
    pub const FOUR: Adjacency = Adjacency {
        connectivity: Connectivity::Four,
        frame: Mat2::IDENTITY,
    };
    pub const EIGHT: Adjacency = Adjacency {
        connectivity: Connectivity::Eight,
        frame: Mat2::IDENTITY,
    };

    pub fn new(connectivity: Connectivity, frame: Mat2) -> Result<Self> {
        if !frame.is_unimodular() {
            return Err(Error::InvalidInput(format!(
                "adjacency frame {frame} is not unimodular"
            )));
        }
        Ok(Adjacency {
            connectivity,
            frame: canonical_frame(frame),
        })
    }

    pub fn connectivity(self) -> Connectivity {
        self.connectivity
    }

    pub fn frame(self) -> Mat2 {
        self.frame
    }

    pub fn dual(self) -> Self {
        let connectivity = match self.connectivity {
            Connectivity::Four => Connectivity::Eight,
            Connectivity::Eight => Connectivity::Four,
        };
        Adjacency {
            connectivity,
            frame: self.frame,
        }
    }

    /// The adjacency seen after moving cells by the index map `b`.
    pub fn transformed(self, b: Mat2) -> Self {
        Adjacency {
            connectivity: self.connectivity,
            frame: canonical_frame(b.mul(&self.frame)),
        }
    }

    pub fn offsets(self) -> Vec<Vec2i> {
        let base: &[Vec2i] = match self.connectivity {
            Connectivity::Four => &[[1, 0], [0, 1], [-1, 0], [0, -1]],
            Connectivity::Eight => &[[1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1]],
        };
        base.iter().map(|&d| self.frame.apply(d)).collect()
    }

    /// Largest coordinate of any neighbor offset.
    pub fn reach(self) -> usize {
        self.offsets()
            .iter()
            .map(|d| d[0].unsigned_abs().max(d[1].unsigned_abs()))
            .max()
            .unwrap_or(1) as usize
    }
}

/// Representative of `f · g` over the eight signed permutations `g`, all of
/// which give the same neighbor stencil. Prefers a positive diagonal, so the
/// standard stencil maps back to the identity.
fn canonical_frame(f: Mat2) -> Mat2 {
    let key = |m: &Mat2| (-m.0[0][0], -m.0[1][1], *m);
    let mut best = f;
    for g in [
        Mat2::new(1, 0, 0, 1),
        Mat2::new(-1, 0, 0, 1),
        Mat2::new(1, 0, 0, -1),
        Mat2::new(-1, 0, 0, -1),
        Mat2::new(0, 1, 1, 0),
        Mat2::new(0, -1, 1, 0),
        Mat2::new(0, 1, -1, 0),
        Mat2::new(0, -1, -1, 0),
    ] {
        let c = f.mul(&g);
        if key(&c) < key(&best) {
            best = c;
        }
    }
    best
}

/// A subset of the torus at a fixed resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusGridSet {
    resolution: GridResolution,
    cells: Vec<bool>,
    adjacency: Adjacency,
}

impl TorusGridSet {
    pub fn empty(resolution: GridResolution, adjacency: Adjacency) -> Self {
        TorusGridSet {
            resolution,
            cells: vec![false; resolution.cell_count()],
            adjacency,
        }
    }

    pub fn full(resolution: GridResolution, adjacency: Adjacency) -> Self {
        TorusGridSet {
            resolution,
            cells: vec![true; resolution.cell_count()],
            adjacency,
        }
    }

    pub fn from_fn(resolution: GridResolution, adjacency: Adjacency, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let n = resolution.n();
        let cells = (0..n * n).map(|k| f(k % n, k / n)).collect();
        TorusGridSet {
            resolution,
            cells,
            adjacency,
        }
    }

    pub fn from_cells(
        resolution: GridResolution,
        adjacency: Adjacency,
        cells: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut s = Self::empty(resolution, adjacency);
        for (i, j) in cells {
            s.insert(i, j);
        }
        s
    }

    pub(crate) fn from_mask(resolution: GridResolution, adjacency: Adjacency, cells: Vec<bool>) -> Self {
        debug_assert_eq!(cells.len(), resolution.cell_count());
        TorusGridSet {
            resolution,
            cells,
            adjacency,
        }
    }

    pub fn resolution(&self) -> GridResolution {
        self.resolution
    }

    pub fn n(&self) -> usize {
        self.resolution.n()
    }

    pub fn adjacency(&self) -> Adjacency {
        self.adjacency
    }

    pub fn with_adjacency(mut self, adjacency: Adjacency) -> Self {
        self.adjacency = adjacency;
        self
    }

    pub fn mask(&self) -> &[bool] {
        &self.cells
    }

    pub(crate) fn shape(&self) -> Shape {
        Shape::torus(self.n())
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        (j % self.n()) * self.n() + (i % self.n())
    }

    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx % self.n(), idx / self.n())
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.cells[self.index(i, j)]
    }

    pub fn contains_point(&self, p: [f64; 2]) -> bool {
        let (i, j) = self.resolution.cell_of(p);
        self.contains(i, j)
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        let k = self.index(i, j);
        self.cells[k] = true;
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        let k = self.index(i, j);
        self.cells[k] = false;
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&c| c)
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(|&c| c)
    }

    /// Member cells in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(move |(k, _)| (k % n, k / n))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().enumerate().filter(|(_, &c)| c).map(|(k, _)| k)
    }

    fn zip_with(&self, other: &TorusGridSet, f: impl Fn(bool, bool) -> bool) -> TorusGridSet {
        assert_eq!(self.resolution, other.resolution, "resolution mismatch");
        TorusGridSet {
            resolution: self.resolution,
            cells: self.cells.iter().zip(&other.cells).map(|(&a, &b)| f(a, b)).collect(),
            adjacency: self.adjacency,
        }
    }

    pub fn union(&self, other: &TorusGridSet) -> TorusGridSet {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &TorusGridSet) -> TorusGridSet {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &TorusGridSet) -> TorusGridSet {
        self.zip_with(other, |a, b| a && !b)
    }

    pub fn is_subset(&self, other: &TorusGridSet) -> bool {
        self.cells.iter().zip(&other.cells).all(|(&a, &b)| !a || b)
    }

    pub fn is_disjoint(&self, other: &TorusGridSet) -> bool {
        self.cells.iter().zip(&other.cells).all(|(&a, &b)| !(a && b))
    }

    /// Same cells, compared without regard to adjacency.
    pub fn same_cells(&self, other: &TorusGridSet) -> bool {
        self.resolution == other.resolution && self.cells == other.cells
    }

    pub fn translate(&self, di: i64, dj: i64) -> TorusGridSet {
        let n = self.n() as i64;
        let mut out = Self::empty(self.resolution, self.adjacency);
        for (i, j) in self.iter() {
            out.insert(
                (i as i64 + di).rem_euclid(n) as usize,
                (j as i64 + dj).rem_euclid(n) as usize,
            );
        }
        out
    }

    /// Image under the index map `(i, j) ↦ B·(i, j) mod n`, with the adjacency
    /// frame carried along.
    pub fn transform(&self, b: Mat2) -> Result<TorusGridSet> {
        if !b.is_unimodular() {
            return Err(Error::InvalidInput(format!("index map {b} is not unimodular")));
        }
        let n = self.n() as i64;
        let mut out = Self::empty(self.resolution, self.adjacency.transformed(b));
        for (i, j) in self.iter() {
            let v = b.apply([i as i64, j as i64]);
            out.insert(v[0].rem_euclid(n) as usize, v[1].rem_euclid(n) as usize);
        }
        Ok(out)
    }

    /// Cells within Chebyshev distance `r` of the set.
    pub fn dilate(&self, r: usize) -> TorusGridSet {
        let r = r as i64;
        let offsets: Vec<Vec2i> = (-r..=r).flat_map(|a| (-r..=r).map(move |b| [a, b])).collect();
        TorusGridSet {
            resolution: self.resolution,
            cells: shape::dilate_mask(&self.shape(), &self.cells, &offsets),
            adjacency: self.adjacency,
        }
    }

    /// Coarsen to `n / 2^levels`: a coarse cell is a member iff any child is.
    pub fn coarsen(&self, levels: u32) -> Result<TorusGridSet> {
        let f = 1usize << levels;
        let res = GridResolution::new(self.n() / f)?;
        let mut out = Self::empty(res, self.adjacency);
        for (i, j) in self.iter() {
            out.insert(i / f, j / f);
        }
        Ok(out)
    }
}

/// Torus complement; the result carries the dual adjacency.
pub fn complement(s: &TorusGridSet) -> TorusGridSet {
    TorusGridSet {
        resolution: s.resolution,
        cells: s.cells.iter().map(|&c| !c).collect(),
        adjacency: s.adjacency.dual(),
    }
}

/// Connected components of a torus set.
#[derive(Clone, Debug)]
pub struct ComponentLabeling {
    n: usize,
    pub(crate) labels: Labels,
}

impl ComponentLabeling {
    pub fn count(&self) -> usize {
        self.labels.count
    }

    pub fn label(&self, i: usize, j: usize) -> Option<usize> {
        self.labels.get((j % self.n) * self.n + (i % self.n))
    }

    pub fn label_index(&self, idx: usize) -> Option<usize> {
        self.labels.get(idx)
    }

    /// First cell of each component in row-major order.
    pub fn representative(&self, id: usize) -> (usize, usize) {
        let r = self.labels.reps[id];
        (r % self.n, r / self.n)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.labels.sizes()
    }

    /// Component `id` as its own set, with the parent set's adjacency.
    pub fn component(&self, s: &TorusGridSet, id: usize) -> TorusGridSet {
        let cells = self.labels.labels.iter().map(|&l| l as usize == id).collect();
        TorusGridSet::from_mask(s.resolution, s.adjacency, cells)
    }

    /// Member cell indices grouped by component.
    pub fn cells_by_component(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.labels.count];
        for (k, &l) in self.labels.labels.iter().enumerate() {
            if l != shape::NO_LABEL {
                out[l as usize].push(k);
            }
        }
        out
    }
}

pub fn connected_components(s: &TorusGridSet) -> ComponentLabeling {
    let labels = shape::label(&s.shape(), &s.cells, &s.adjacency.offsets());
    ComponentLabeling { n: s.n(), labels }
}

/// Cells of `s` with at least one dual-adjacent cell outside `s`.
pub fn boundary(s: &TorusGridSet) -> TorusGridSet {
    let cells = shape::boundary_mask(&s.shape(), &s.cells, &s.adjacency.dual().offsets());
    TorusGridSet::from_mask(s.resolution, s.adjacency, cells)
}

/// Directed sup-inf distance from `c` to `d` between cell centers under the
/// flat torus metric.
pub fn directed_hausdorff(c: &TorusGridSet, d: &TorusGridSet) -> Result<f64> {
    if c.is_empty() || d.is_empty() {
        return Err(Error::EmptyHausdorff);
    }
    if c.resolution != d.resolution {
        return Err(Error::InvalidInput("resolution mismatch".into()));
    }
    Ok(directed_distance(&c.shape(), &c.cells, &d.cells) / c.n() as f64)
}

/// Hausdorff distance between cell-center sets, in torus units.
pub fn hausdorff_distance(c: &TorusGridSet, d: &TorusGridSet) -> Result<f64> {
    Ok(directed_hausdorff(c, d)?.max(directed_hausdorff(d, c)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(n: usize) -> GridResolution {
        GridResolution::new(n).unwrap()
    }

    #[test]
    fn resolution_must_be_power_of_two() {
        assert!(GridResolution::new(8).is_ok());
        assert!(GridResolution::new(1024).is_ok());
        assert_eq!(GridResolution::new(4), Err(Error::InvalidResolution(4)));
        assert_eq!(GridResolution::new(48), Err(Error::InvalidResolution(48)));
    }

    #[test]
    fn complement_examples() {
        let r = res(8);
        let full = TorusGridSet::full(r, Adjacency::EIGHT);
        assert!(complement(&full).is_empty());
        assert_eq!(complement(&full).adjacency(), Adjacency::FOUR);
        assert!(complement(&TorusGridSet::empty(r, Adjacency::FOUR)).is_full());
        let single = TorusGridSet::from_cells(r, Adjacency::EIGHT, [(0, 0)]);
        let c = complement(&single);
        assert_eq!(c.len(), 63);
        assert!(!c.contains(0, 0));
        let back = complement(&c);
        assert_eq!(back, single);
    }

    #[test]
    fn component_examples() {
        let r = res(8);
        let two = TorusGridSet::from_cells(r, Adjacency::EIGHT, [(1, 1), (5, 5)]);
        assert_eq!(connected_components(&two).count(), 2);
        assert_eq!(connected_components(&TorusGridSet::full(r, Adjacency::FOUR)).count(), 1);
        // Diagonal neighbors join under eight-adjacency only.
        let diag = TorusGridSet::from_cells(r, Adjacency::EIGHT, [(1, 1), (2, 2)]);
        assert_eq!(connected_components(&diag).count(), 1);
        assert_eq!(
            connected_components(&diag.clone().with_adjacency(Adjacency::FOUR)).count(),
            2
        );
        // Wrap-around joins the first and last column.
        let wrap = TorusGridSet::from_cells(r, Adjacency::FOUR, [(0, 3), (7, 3)]);
        assert_eq!(connected_components(&wrap).count(), 1);
    }

    #[test]
    fn component_ids_follow_row_major_order() {
        let r = res(8);
        let s = TorusGridSet::from_cells(r, Adjacency::FOUR, [(6, 0), (2, 3), (1, 5)]);
        let l = connected_components(&s);
        assert_eq!(l.representative(0), (6, 0));
        assert_eq!(l.representative(1), (2, 3));
        assert_eq!(l.representative(2), (1, 5));
    }

    #[test]
    fn boundary_examples() {
        let r = res(16);
        assert!(boundary(&TorusGridSet::full(r, Adjacency::FOUR)).is_empty());
        let single = TorusGridSet::from_cells(r, Adjacency::EIGHT, [(3, 3)]);
        assert_eq!(boundary(&single), single);
        let block = TorusGridSet::from_fn(r, Adjacency::FOUR, |i, j| (4..8).contains(&i) && (4..8).contains(&j));
        let b = boundary(&block);
        // Perimeter of a 4x4 block, enumerated directly.
        let perimeter: Vec<(usize, usize)> = block
            .iter()
            .filter(|&(i, j)| i == 4 || i == 7 || j == 4 || j == 7)
            .collect();
        assert_eq!(perimeter.len(), 12);
        assert_eq!(b.iter().collect::<Vec<_>>(), perimeter);
    }

    #[test]
    fn hausdorff_examples() {
        let r = res(8);
        let a = TorusGridSet::from_cells(r, Adjacency::EIGHT, [(0, 0)]);
        let b = TorusGridSet::from_cells(r, Adjacency::EIGHT, [(0, 4)]);
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        assert!((hausdorff_distance(&a, &b).unwrap() - 0.5).abs() < 1e-15);
        let e = TorusGridSet::empty(r, Adjacency::EIGHT);
        assert_eq!(hausdorff_distance(&a, &e), Err(Error::EmptyHausdorff));
        // Wrap: (0,0) and (7,0) are neighbors.
        let c = TorusGridSet::from_cells(r, Adjacency::EIGHT, [(7, 0)]);
        assert!((hausdorff_distance(&a, &c).unwrap() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn transform_carries_frame() {
        let r = res(16);
        let s = TorusGridSet::from_cells(r, Adjacency::FOUR, [(1, 0), (1, 1)]);
        let shear = Mat2::new(1, 1, 0, 1);
        let t = s.transform(shear).unwrap();
        assert!(t.contains(1, 0) && t.contains(2, 1));
        assert_eq!(connected_components(&t).count(), 1);
        let back = t.transform(shear.inverse().unwrap()).unwrap();
        assert_eq!(back, s);
        // Signed permutations leave the standard stencil alone.
        let rot = s.transform(Mat2::new(0, -1, 1, 0)).unwrap();
        assert_eq!(rot.adjacency(), Adjacency::FOUR);
    }

    #[test]
    fn coarsen_merges_children() {
        let r = res(16);
        let s = TorusGridSet::from_cells(r, Adjacency::EIGHT, [(3, 3), (15, 0)]);
        let c = s.coarsen(1).unwrap();
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![(7, 0), (1, 1)]);
    }
}
