//! Orbit rasters, invariance and minimality checks, and the fate of the
//! complementary components of an invariant set.

use rayon::prelude::*;
use serde::Serialize;

use super::map::{Point, TorusMapSpec};
use crate::error::{Error, Result};
use crate::grid::{complement, connected_components, directed_hausdorff, GridResolution, TorusGridSet};
use crate::homotopy::{census_with_labels, HomotopyType};

#[derive(Clone, Debug)]
pub struct OrbitRaster {
    /// Cells visited by the orbit, eight-connected.
    pub set: TorusGridSet,
    pub seed: Point,
    pub iterations: usize,
    /// Iteration count at the end of the first batch followed by
    /// `stability_window` batches that added no cell; `None` when the
    /// iteration budget ran out first.
    pub stabilized_at: Option<usize>,
}

/// Rasterizes the forward orbit of `seed` in batches of `batch` steps until
/// `stability_window` consecutive batches add nothing or `max_iter` steps
/// have been taken.
pub fn orbit_closure_raster(
    map: &TorusMapSpec,
    seed: Point,
    n: GridResolution,
    batch: usize,
    stability_window: usize,
    max_iter: usize,
) -> OrbitRaster {
    let batch = batch.max(1);
    let mut set = TorusGridSet::empty(n, crate::grid::Adjacency::EIGHT);
    let mut z = [seed[0].rem_euclid(1.0), seed[1].rem_euclid(1.0)];
    let (i, j) = n.cell_of(z);
    set.insert(i, j);
    let mut last_growth = 0;
    let mut quiet = 0;
    let mut t = 0;
    while t < max_iter {
        let before = set.len();
        for _ in 0..batch.min(max_iter - t) {
            z = map.eval_torus(z);
            let (i, j) = n.cell_of(z);
            set.insert(i, j);
            t += 1;
        }
        if set.len() > before {
            last_growth = t;
            quiet = 0;
        } else {
            quiet += 1;
            if quiet >= stability_window.max(1) {
                return OrbitRaster {
                    set,
                    seed,
                    iterations: t,
                    stabilized_at: Some(last_growth),
                };
            }
        }
    }
    OrbitRaster {
        set,
        seed,
        iterations: t,
        stabilized_at: None,
    }
}

/// Cells hit by the images of the cell centers of `s`.
pub fn image_raster(map: &TorusMapSpec, s: &TorusGridSet) -> TorusGridSet {
    let n = s.resolution();
    let mut out = TorusGridSet::empty(n, s.adjacency());
    for (i, j) in s.iter() {
        let (a, b) = n.cell_of(map.eval_torus(n.center(i, j)));
        out.insert(a, b);
    }
    out
}

/// `F(s) ⊆ dilate(s, 1)` at cell-center resolution.
pub fn is_invariant(map: &TorusMapSpec, s: &TorusGridSet) -> bool {
    image_raster(map, s).is_subset(&s.dilate(1))
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityProbe {
    pub cell: (usize, usize),
    /// Directed Hausdorff distance from the set to the probe's orbit raster.
    pub deficit: f64,
    pub stabilized_at: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityCertificate {
    pub probes: Vec<MinimalityProbe>,
    pub max_deficit: f64,
    pub eps: f64,
    pub horizon: usize,
    pub passed: bool,
}

/// Orbits from `probes` evenly spaced cells of `s` must come within `eps`
/// of every cell of `s` in `horizon` steps.
pub fn minimality_check(
    map: &TorusMapSpec,
    s: &TorusGridSet,
    probes: usize,
    horizon: usize,
    eps: f64,
) -> Result<MinimalityCertificate> {
    if s.is_empty() {
        return Err(Error::Precondition("empty set".into()));
    }
    if !is_invariant(map, s) {
        return Err(Error::Precondition("set is not invariant at this resolution".into()));
    }
    let cells: Vec<usize> = s.indices().collect();
    let count = probes.clamp(1, cells.len());
    let picks: Vec<usize> = (0..count).map(|k| cells[k * cells.len() / count]).collect();
    let n = s.resolution();
    let probes = picks
        .into_par_iter()
        .map(|idx| {
            let (i, j) = s.coords(idx);
            let orbit = orbit_closure_raster(map, n.center(i, j), n, horizon, usize::MAX, horizon);
            let deficit = directed_hausdorff(s, &orbit.set)?;
            Ok(MinimalityProbe {
                cell: (i, j),
                deficit,
                stabilized_at: orbit.stabilized_at,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_deficit = probes.iter().map(|p| p.deficit).fold(0.0, f64::max);
    Ok(MinimalityCertificate {
        passed: max_deficit <= eps,
        probes,
        max_deficit,
        eps,
        horizon,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Behavior {
    Periodic(usize),
    Wandering,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentVerdict {
    pub component: usize,
    pub homotopy: HomotopyType,
    pub size: usize,
    /// Component holding most of the ensemble after one step.
    pub image: Option<usize>,
    pub behavior: Behavior,
    /// The ensemble left every component (landed on the set) at some step.
    pub escaped: bool,
}

/// Most points per cell component before a tie counts as ambiguous.
const AMBIGUITY_SHARE: f64 = 0.4;
const ENSEMBLE: usize = 4096;

/// Follows an ensemble of cell centers from each complementary component of
/// `s` for up to `horizon` steps and reports its first return.
pub fn component_dynamics(map: &TorusMapSpec, s: &TorusGridSet, horizon: usize) -> Result<Vec<ComponentVerdict>> {
    let comp = complement(s);
    let labels = connected_components(&comp);
    let census = census_with_labels(&comp, &labels)?;
    let n = s.resolution();
    let groups = labels.cells_by_component();
    groups
        .par_iter()
        .enumerate()
        .map(|(c, cells)| {
            let stride = cells.len().div_ceil(ENSEMBLE);
            let mut pts: Vec<Point> = cells
                .iter()
                .step_by(stride)
                .map(|&idx| {
                    let (i, j) = comp.coords(idx);
                    n.center(i, j)
                })
                .collect();
            let mut image = None;
            let mut behavior = Behavior::Wandering;
            let mut escaped = false;
            let mut hits = vec![0usize; labels.count()];
            for t in 1..=horizon {
                hits.iter_mut().for_each(|h| *h = 0);
                let mut total = 0;
                for z in pts.iter_mut() {
                    *z = map.eval_torus(*z);
                    let (i, j) = n.cell_of(*z);
                    if let Some(l) = labels.label(i, j) {
                        hits[l] += 1;
                        total += 1;
                    }
                }
                if total == 0 {
                    escaped = true;
                    break;
                }
                let mut order: Vec<usize> = (0..hits.len()).collect();
                order.sort_by(|a, b| hits[*b].cmp(&hits[*a]).then(a.cmp(b)));
                let (first, second) = (order[0], order.get(1).copied());
                if let Some(sec) = second {
                    let share = |h: usize| h as f64 / total as f64;
                    if share(hits[first]) >= AMBIGUITY_SHARE && share(hits[sec]) >= AMBIGUITY_SHARE {
                        return Err(Error::AmbiguousTracking);
                    }
                }
                if t == 1 {
                    image = Some(first);
                }
                if first == c {
                    behavior = Behavior::Periodic(t);
                    break;
                }
            }
            Ok(ComponentVerdict {
                component: c,
                homotopy: census[c].homotopy,
                size: cells.len(),
                image,
                behavior,
                escaped,
            })
        })
        .collect()
}
