//! Finite pieces of the universal cover (and of the cylinder cover): planar
//! cell sets with an optional horizontal wrap.

use super::shape::{self, Shape};
use super::{Adjacency, TorusGridSet};

/// A cell set on a `width × height` grid; `wrap_x` makes it a cylinder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarSet {
    pub width: usize,
    pub height: usize,
    pub wrap_x: bool,
    pub cells: Vec<bool>,
    pub adjacency: Adjacency,
}

impl PlanarSet {
    pub fn empty(width: usize, height: usize, wrap_x: bool, adjacency: Adjacency) -> Self {
        PlanarSet {
            width,
            height,
            wrap_x,
            cells: vec![false; width * height],
            adjacency,
        }
    }

    pub fn from_fn(width: usize, height: usize, adjacency: Adjacency, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let cells = (0..width * height).map(|k| f(k % width, k / width)).collect();
        PlanarSet {
            width,
            height,
            wrap_x: false,
            cells,
            adjacency,
        }
    }

    pub(crate) fn shape(&self) -> Shape {
        Shape {
            width: self.width,
            height: self.height,
            wrap_x: self.wrap_x,
            wrap_y: false,
        }
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.cells[y * self.width + x]
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.cells[y * self.width + x] = true;
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&c| c)
    }

    pub fn component_count(&self) -> usize {
        shape::label(&self.shape(), &self.cells, &self.adjacency.offsets()).count
    }

    /// Cells within `band` of a bounded edge.
    pub(crate) fn in_frame(&self, idx: usize, band: usize) -> bool {
        let (x, y) = (idx % self.width, idx / self.width);
        let vertical = y < band || y + band >= self.height;
        let horizontal = !self.wrap_x && (x < band || x + band >= self.width);
        vertical || horizontal
    }
}

/// `k × k` fundamental domains of the planar cover of a torus set.
#[derive(Clone, Debug)]
pub struct CoverWindow {
    pub k: usize,
    pub base: TorusGridSet,
    pub lifted: PlanarSet,
}

impl CoverWindow {
    /// Projection of a window cell to its torus cell.
    pub fn project(&self, x: usize, y: usize) -> (usize, usize) {
        let n = self.base.n();
        (x % n, y % n)
    }
}

pub fn lift_window(s: &TorusGridSet, k: usize) -> CoverWindow {
    assert!(k >= 1, "window needs at least one fundamental domain");
    let n = s.n();
    let side = k * n;
    let lifted = PlanarSet::from_fn(side, side, s.adjacency(), |x, y| s.contains(x % n, y % n));
    CoverWindow {
        k,
        base: s.clone(),
        lifted,
    }
}
