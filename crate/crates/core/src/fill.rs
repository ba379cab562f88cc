//! Fill-in: the smallest filled-in superset of a planar set, of a torus
//! domain, or of a torus continuum.
//!
//! A component with trivial holonomy is filled on its planar lift. An
//! essential component of type `(p, q)` is moved by the completing basis so
//! that its type becomes `(1, 0)` and filled on the vertical cylinder cover.
//! A doubly essential component fills the whole torus.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{self, connected_components, Adjacency, PlanarSet, TorusGridSet};
use crate::homotopy::{all_holonomies, classify_homotopy, set_homotopy_census, HomotopyType};
use crate::lattice::{completing_basis, Mat2, Vec2i};

/// Largest window multiplier tried before giving up.
pub const K_MAX: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarFillResult {
    pub filled: PlanarSet,
    /// Ids of the absorbed complement components, in row-major order.
    pub enclosed: Vec<usize>,
}

/// Planar fill inside a window: complement components (under the dual
/// adjacency) that reach the outer band are exterior, every other one is
/// absorbed. The band is as thick as the longest neighbor step, so a
/// component that avoids it cannot escape the window without crossing it.
pub fn fill_planar(p: &PlanarSet) -> Result<PlanarFillResult> {
    let band = p.adjacency.reach();
    if p.cells.iter().enumerate().any(|(c, &m)| m && p.in_frame(c, band)) {
        return Err(Error::WindowExhausted);
    }
    let shape = p.shape();
    let comp: Vec<bool> = p.cells.iter().map(|&c| !c).collect();
    let labels = grid::shape::label(&shape, &comp, &p.adjacency.dual().offsets());
    let mut exterior = vec![false; labels.count];
    for c in 0..shape.len() {
        if let Some(l) = labels.get(c) {
            if p.in_frame(c, band) {
                exterior[l] = true;
            }
        }
    }
    let mut filled = p.clone();
    for c in 0..shape.len() {
        if let Some(l) = labels.get(c) {
            if !exterior[l] {
                filled.cells[c] = true;
            }
        }
    }
    let enclosed = (0..labels.count).filter(|&l| !exterior[l]).collect();
    Ok(PlanarFillResult { filled, enclosed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FillClass {
    BoundedDisk,
    /// Trivial holonomy with unbounded lifts. Never produced on a finite
    /// grid, where trivial components always lift to bounded pieces.
    UnboundedDisk,
    Annulus(i64, i64),
    WholeTorus,
}

#[derive(Clone, Debug)]
pub struct TorusFillResult {
    pub filled: TorusGridSet,
    pub classification: FillClass,
    /// Components of `filled ∖ input` under the dual adjacency, row-major.
    pub enclosed_disks: Vec<TorusGridSet>,
}

/// A component lifted to the plane (or to the cylinder when `wrap`), with
/// coordinates in cells.
pub(crate) struct Lift {
    pub cells: Vec<(usize, Vec2i)>,
    pub lo: Vec2i,
    pub hi: Vec2i,
}

pub(crate) fn lift_component(s: &TorusGridSet, wrap: bool) -> Lift {
    let shape = s.shape();
    let offsets = s.adjacency().offsets();
    let labels = grid::shape::label(&shape, s.mask(), &offsets);
    debug_assert_eq!(labels.count, 1);
    let n = s.n() as i64;
    let cells: Vec<(usize, Vec2i)> = grid::shape::tree_lift(&shape, &labels, &offsets, 0)
        .into_iter()
        .map(|(idx, l)| {
            let (x, y) = shape.xy(idx);
            let px = if wrap { x as i64 } else { x as i64 + l[0] * n };
            (idx, [px, y as i64 + l[1] * n])
        })
        .collect();
    let mut lo = [i64::MAX; 2];
    let mut hi = [i64::MIN; 2];
    for (_, p) in &cells {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    Lift { cells, lo, hi }
}

/// Fills a lifted component in the smallest window of `k·n` cells (k a
/// power of two from 2 to `k_max`) that leaves room for the outer band.
/// Returns absolute lift coordinates of the filled cells.
fn fill_lift(lift: &Lift, n: usize, adjacency: Adjacency, wrap: bool, k_max: usize) -> Result<Vec<Vec2i>> {
    let band = adjacency.reach() as i64;
    let span = [lift.hi[0] - lift.lo[0] + 1, lift.hi[1] - lift.lo[1] + 1];
    let mut k = 2;
    while k <= k_max {
        let side = (k * n) as i64;
        let fits = span[1] + 2 * band <= side && (wrap || span[0] + 2 * band <= side);
        if fits {
            let width = if wrap { n as i64 } else { side };
            let origin = [
                if wrap { 0 } else { lift.lo[0] - (side - span[0]) / 2 },
                lift.lo[1] - (side - span[1]) / 2,
            ];
            let mut p = PlanarSet::empty(width as usize, side as usize, wrap, adjacency);
            for (_, c) in &lift.cells {
                p.insert((c[0] - origin[0]) as usize, (c[1] - origin[1]) as usize);
            }
            match fill_planar(&p) {
                Ok(f) => {
                    return Ok(f
                        .filled
                        .cells
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| m)
                        .map(|(c, _)| {
                            let c = c as i64;
                            [c % width + origin[0], c / width + origin[1]]
                        })
                        .collect())
                }
                Err(Error::WindowExhausted) => {}
                Err(e) => return Err(e),
            }
        }
        k *= 2;
    }
    Err(Error::WindowLimit {
        k_max,
        detail: format!("component lift spans {}x{} cells at n={n}", span[0], span[1]),
    })
}

/// Fill of one connected component of known type, as a torus mask.
fn fill_component(c: &TorusGridSet, homotopy: HomotopyType, k_max: usize) -> Result<Vec<bool>> {
    let n = c.n() as i64;
    let project = |cells: Vec<Vec2i>, back: Mat2| {
        let mut mask = vec![false; c.resolution().cell_count()];
        for v in cells {
            let w = back.apply([v[0].rem_euclid(n), v[1].rem_euclid(n)]);
            mask[(w[1].rem_euclid(n) * n + w[0].rem_euclid(n)) as usize] = true;
        }
        mask
    };
    match homotopy {
        HomotopyType::DoublyEssential => Ok(vec![true; c.resolution().cell_count()]),
        HomotopyType::Trivial => {
            let lift = lift_component(c, false);
            let cells = fill_lift(&lift, c.n(), c.adjacency(), false, k_max)?;
            Ok(project(cells, Mat2::IDENTITY))
        }
        HomotopyType::Essential(p, q) => {
            let a = completing_basis(p, q).ok_or(Error::NonPrimitiveVector)?;
            let chart = c.transform(a.inverse().expect("unimodular"))?;
            let lift = lift_component(&chart, true);
            let cells = fill_lift(&lift, chart.n(), chart.adjacency(), true, k_max)?;
            Ok(project(cells, a))
        }
    }
}

/// Absolute coordinates of the planar fill of a connected trivial set's lift,
/// rooted at its first cell in row-major order.
pub fn lifted_fill(a: &TorusGridSet) -> Result<Vec<Vec2i>> {
    let t = crate::homotopy::homotopy_of_connected(a)?;
    if t != HomotopyType::Trivial {
        return Err(Error::Precondition(format!("lifted fill needs a trivial set, got {t}")));
    }
    let lift = lift_component(a, false);
    let mut cells = fill_lift(&lift, a.n(), a.adjacency(), false, K_MAX)?;
    cells.sort_by_key(|v| (v[1], v[0]));
    Ok(cells)
}

pub fn fill_torus(a: &TorusGridSet, connectedness_required: bool) -> Result<TorusFillResult> {
    fill_torus_with_limit(a, connectedness_required, K_MAX)
}

pub fn fill_torus_with_limit(a: &TorusGridSet, connectedness_required: bool, k_max: usize) -> Result<TorusFillResult> {
    if a.is_empty() {
        return Err(Error::Precondition("fill of an empty set".into()));
    }
    let labels = connected_components(a);
    if connectedness_required && labels.count() != 1 {
        return Err(Error::Precondition(format!(
            "connected input required, found {} components",
            labels.count()
        )));
    }
    let types = all_holonomies(a, &labels)
        .iter()
        .map(classify_homotopy)
        .collect::<Result<Vec<_>>>()?;

    let (mask, classification) = if types.contains(&HomotopyType::DoublyEssential) {
        (vec![true; a.resolution().cell_count()], FillClass::WholeTorus)
    } else {
        let parts = (0..labels.count())
            .into_par_iter()
            .map(|id| fill_component(&labels.component(a, id), types[id], k_max))
            .collect::<Result<Vec<_>>>()?;
        let mut mask = a.mask().to_vec();
        for part in parts {
            for (m, p) in mask.iter_mut().zip(part) {
                *m |= p;
            }
        }
        let class = match types.iter().find_map(|t| t.vector()) {
            Some([p, q]) => FillClass::Annulus(p, q),
            None => FillClass::BoundedDisk,
        };
        (mask, class)
    };
    let filled = TorusGridSet::from_mask(a.resolution(), a.adjacency(), mask);
    let added = filled.difference(a).with_adjacency(a.adjacency().dual());
    let dl = connected_components(&added);
    let enclosed_disks = (0..dl.count()).map(|id| dl.component(&added, id)).collect();
    Ok(TorusFillResult {
        filled,
        classification,
        enclosed_disks,
    })
}

/// Whether fill commutes with the index map `sigma`, cell for cell.
pub fn fill_equivariance_check(a: &TorusGridSet, sigma: Mat2) -> Result<bool> {
    let lhs = fill_torus(a, false)?.filled.transform(sigma)?;
    let rhs = fill_torus(&a.transform(sigma)?, false)?.filled;
    Ok(lhs.same_cells(&rhs))
}

/// Places every whole translate of the disks' planar fills that fits in a
/// `k × k` window and reports whether the rest of the window is connected.
pub fn disjoint_disks_complement_connected(disks: &[TorusGridSet], k: usize) -> Result<bool> {
    let Some(first) = disks.first() else { return Ok(true) };
    let n = first.n() as i64;
    let side = k as i64 * n;
    let adjacency = first.adjacency();
    let margin = adjacency.reach() as i64;
    for (i, d) in disks.iter().enumerate() {
        for e in &disks[i + 1..] {
            if !d.is_disjoint(e) {
                return Err(Error::Precondition("disks overlap".into()));
            }
        }
    }
    let mut window = vec![false; (side * side) as usize];
    for d in disks {
        let fill = lifted_fill(d)?;
        let (mut lo, mut hi) = ([i64::MAX; 2], [i64::MIN; 2]);
        for c in &fill {
            for a in 0..2 {
                lo[a] = lo[a].min(c[a]);
                hi[a] = hi[a].max(c[a]);
            }
        }
        if hi[0] - lo[0] + 1 + 2 * margin > side || hi[1] - lo[1] + 1 + 2 * margin > side {
            return Err(Error::WindowExhausted);
        }
        let range = |a: usize| {
            let first = (margin - lo[a]).div_euclid(n) - 1;
            let last = (side - margin - 1 - hi[a]).div_euclid(n) + 1;
            first..=last
        };
        for tx in range(0) {
            for ty in range(1) {
                let (dx, dy) = (tx * n, ty * n);
                let inside = lo[0] + dx >= margin
                    && hi[0] + dx < side - margin
                    && lo[1] + dy >= margin
                    && hi[1] + dy < side - margin;
                if inside {
                    for c in &fill {
                        window[((c[1] + dy) * side + c[0] + dx) as usize] = true;
                    }
                }
            }
        }
    }
    let free: Vec<bool> = window.iter().map(|&w| !w).collect();
    let shape = grid::Shape::plane(side as usize, side as usize);
    let labels = grid::shape::label(&shape, &free, &adjacency.dual().offsets());
    Ok(labels.count <= 1)
}

/// Whether the complement has a doubly essential component.
pub fn bounded_complement_doubly_essential(a: &TorusGridSet) -> Result<bool> {
    Ok(set_homotopy_census(&grid::complement(a))?
        .iter()
        .any(|e| e.homotopy == HomotopyType::DoublyEssential))
}

/// Absolute lift coordinates as a set, for overlap tests.
pub fn coordinate_set(cells: &[Vec2i]) -> HashSet<Vec2i> {
    cells.iter().copied().collect()
}
