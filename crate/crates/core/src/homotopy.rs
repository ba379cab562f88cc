//! Holonomy of set components: the subgroup of ℤ² of deck translations that
//! stabilize a lift, and the homotopy type it determines.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::{self, connected_components, ComponentLabeling, TorusGridSet};
use crate::lattice::{hermite_basis, is_primitive, Mat2, Vec2i};

/// A subgroup of ℤ² in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HolonomyGroup {
    basis: Vec<Vec2i>,
}

impl HolonomyGroup {
    pub fn trivial() -> Self {
        HolonomyGroup { basis: Vec::new() }
    }

    pub fn generated_by<I: IntoIterator<Item = Vec2i>>(gens: I) -> Self {
        HolonomyGroup {
            basis: hermite_basis(gens),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec2i] {
        &self.basis
    }

    /// Image of the group under `b`.
    pub fn transformed(&self, b: Mat2) -> Self {
        Self::generated_by(self.basis.iter().map(|&v| b.apply(v)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HomotopyType {
    Trivial,
    /// Primitive generator, first nonzero coordinate positive.
    Essential(i64, i64),
    DoublyEssential,
}

impl HomotopyType {
    pub fn vector(self) -> Option<Vec2i> {
        match self {
            HomotopyType::Essential(p, q) => Some([p, q]),
            _ => None,
        }
    }
}

impl fmt::Display for HomotopyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyType::Trivial => write!(f, "Trivial"),
            HomotopyType::Essential(p, q) => write!(f, "Essential({p},{q})"),
            HomotopyType::DoublyEssential => write!(f, "DoublyEssential"),
        }
    }
}

impl Serialize for HomotopyType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn classify_homotopy(g: &HolonomyGroup) -> Result<HomotopyType> {
    match g.basis() {
        [] => Ok(HomotopyType::Trivial),
        [v] => {
            if !is_primitive(*v) {
                return Err(Error::NonPrimitiveHolonomy);
            }
            Ok(HomotopyType::Essential(v[0], v[1]))
        }
        _ => Ok(HomotopyType::DoublyEssential),
    }
}

/// Holonomy groups of every component, indexed by component id.
pub fn all_holonomies(s: &TorusGridSet, labels: &ComponentLabeling) -> Vec<HolonomyGroup> {
    grid::shape::component_periods(&s.shape(), &labels.labels, &s.adjacency().offsets())
        .into_iter()
        .map(HolonomyGroup::generated_by)
        .collect()
}

pub fn component_holonomy(s: &TorusGridSet, component: usize) -> HolonomyGroup {
    let labels = connected_components(s);
    assert!(component < labels.count(), "component id {component} out of range");
    all_holonomies(s, &labels).swap_remove(component)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub component: usize,
    pub homotopy: HomotopyType,
    /// Rank-zero holonomy; at finite resolution every trivial component lifts
    /// to bounded pieces.
    pub bounded: bool,
}

pub fn set_homotopy_census(s: &TorusGridSet) -> Result<Vec<CensusEntry>> {
    let labels = connected_components(s);
    census_with_labels(s, &labels)
}

pub(crate) fn census_with_labels(s: &TorusGridSet, labels: &ComponentLabeling) -> Result<Vec<CensusEntry>> {
    all_holonomies(s, labels)
        .iter()
        .enumerate()
        .map(|(component, g)| {
            let homotopy = classify_homotopy(g)?;
            Ok(CensusEntry {
                component,
                homotopy,
                bounded: homotopy == HomotopyType::Trivial,
            })
        })
        .collect()
}

/// Homotopy type of a connected set (the type of its only component).
pub fn homotopy_of_connected(s: &TorusGridSet) -> Result<HomotopyType> {
    let labels = connected_components(s);
    if labels.count() != 1 {
        return Err(Error::Precondition(format!(
            "expected a connected set, found {} components",
            labels.count()
        )));
    }
    classify_homotopy(&all_holonomies(s, &labels)[0])
}

/// Holonomy as witnessed on a finite cover window: the planar component of
/// the representative's lift in domain `(1, 1)` of a `k × k` window, tested
/// against every translation with `|v|∞ <= reach`.
pub fn window_holonomy(s: &TorusGridSet, component: usize, k: usize, reach: i64) -> HolonomyGroup {
    window_holonomies(s, k, reach).swap_remove(component)
}

/// [`window_holonomy`] for every component, sharing one window.
pub fn window_holonomies(s: &TorusGridSet, k: usize, reach: i64) -> Vec<HolonomyGroup> {
    let n = s.n();
    let labels = connected_components(s);
    let w = grid::lift_window(s, k);
    let side = k * n;
    let planar = grid::shape::label(&w.lifted.shape(), &w.lifted.cells, &s.adjacency().offsets());
    // Translations that carry some cell of a planar component into itself.
    let mut found: Vec<Vec<Vec2i>> = vec![Vec::new(); planar.count];
    for vx in -reach..=reach {
        for vy in -reach..=reach {
            if (vx, vy) == (0, 0) {
                continue;
            }
            let mut hit = vec![false; planar.count];
            for c in 0..side * side {
                let Some(id) = planar.get(c) else { continue };
                if hit[id] {
                    continue;
                }
                let x = (c % side) as i64 + vx * n as i64;
                let y = (c / side) as i64 + vy * n as i64;
                if (0..side as i64).contains(&x)
                    && (0..side as i64).contains(&y)
                    && planar.get(y as usize * side + x as usize) == Some(id)
                {
                    hit[id] = true;
                }
            }
            for (id, h) in hit.into_iter().enumerate() {
                if h {
                    found[id].push([vx, vy]);
                }
            }
        }
    }
    (0..labels.count())
        .map(|c| {
            let (ri, rj) = labels.representative(c);
            match planar.get((rj + n) * side + ri + n) {
                Some(id) => HolonomyGroup::generated_by(found[id].iter().copied()),
                None => HolonomyGroup::trivial(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{complement, Adjacency, GridResolution};

    fn res(n: usize) -> GridResolution {
        GridResolution::new(n).unwrap()
    }

    #[test]
    fn holonomy_examples() {
        let r = res(16);
        let single = TorusGridSet::from_cells(r, Adjacency::EIGHT, [(3, 3)]);
        assert_eq!(component_holonomy(&single, 0).rank(), 0);
        let band = TorusGridSet::from_fn(r, Adjacency::EIGHT, |_, j| j == 5);
        assert_eq!(component_holonomy(&band, 0).basis(), &[[1, 0]]);
        let full = TorusGridSet::full(r, Adjacency::FOUR);
        assert_eq!(component_holonomy(&full, 0).basis(), &[[1, 0], [0, 1]]);
    }

    #[test]
    fn diagonal_loop_is_essential() {
        let r = res(16);
        let diag = TorusGridSet::from_fn(r, Adjacency::EIGHT, |i, j| i == j);
        assert_eq!(homotopy_of_connected(&diag).unwrap(), HomotopyType::Essential(1, 1));
        let anti = TorusGridSet::from_fn(r, Adjacency::EIGHT, |i, j| (i + j) % 16 == 0);
        assert_eq!(homotopy_of_connected(&anti).unwrap(), HomotopyType::Essential(1, -1));
        // Under four-adjacency the diagonal falls apart into cells.
        let four = diag.with_adjacency(Adjacency::FOUR);
        assert_eq!(connected_components(&four).count(), 16);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_homotopy(&HolonomyGroup::trivial()).unwrap(),
            HomotopyType::Trivial
        );
        let g = HolonomyGroup::generated_by([[2, -2], [-1, 1]]);
        assert_eq!(classify_homotopy(&g).unwrap(), HomotopyType::Essential(1, -1));
        let bad = HolonomyGroup::generated_by([[2, -2]]);
        assert_eq!(classify_homotopy(&bad), Err(Error::NonPrimitiveHolonomy));
        let two = HolonomyGroup::generated_by([[1, 0], [0, 2]]);
        assert_eq!(classify_homotopy(&two).unwrap(), HomotopyType::DoublyEssential);
    }

    #[test]
    fn census_examples() {
        let r = res(16);
        let band = TorusGridSet::from_fn(r, Adjacency::EIGHT, |_, j| j == 0);
        let c = set_homotopy_census(&complement(&band)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].homotopy, HomotopyType::Essential(1, 0));
        assert!(!c[0].bounded);

        // A diamond loop of 8 cells, enclosing 5 cells under four-adjacency.
        let lp = [(4, 2), (5, 3), (6, 4), (5, 5), (4, 6), (3, 5), (2, 4), (3, 3)];
        let ring = TorusGridSet::from_cells(r, Adjacency::EIGHT, lp);
        let c = set_homotopy_census(&complement(&ring)).unwrap();
        let types: Vec<_> = c.iter().map(|e| e.homotopy).collect();
        assert_eq!(types, vec![HomotopyType::DoublyEssential, HomotopyType::Trivial]);
        assert!(c[1].bounded);

        let empty = TorusGridSet::empty(r, Adjacency::EIGHT);
        assert!(set_homotopy_census(&empty).unwrap().is_empty());
    }

    #[test]
    fn window_holonomy_matches_on_band() {
        let r = res(8);
        let band = TorusGridSet::from_fn(r, Adjacency::EIGHT, |i, j| (i + 2 * j) % 8 < 2);
        let tree = component_holonomy(&band, 0);
        assert_eq!(window_holonomy(&band, 0, 4, 2), tree);
    }

    #[test]
    fn bands_of_different_types_intersect() {
        let r = res(32);
        let h = TorusGridSet::from_fn(r, Adjacency::EIGHT, |_, j| j == 7);
        for b in [Mat2::new(1, 1, 0, 1), Mat2::new(0, -1, 1, 0), Mat2::new(2, 1, 1, 1)] {
            let other = h.transform(b).unwrap();
            let t = homotopy_of_connected(&other).unwrap();
            let v = t.vector().unwrap();
            if v != [1, 0] {
                assert!(!h.is_disjoint(&other), "{t} band misses the horizontal band");
            }
        }
    }
}
