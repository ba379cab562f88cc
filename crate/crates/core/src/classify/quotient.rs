//! The decomposition of the torus into filled components of a set plus
//! singletons, and the resolution-ladder test telling a periodic orbit of
//! classes from a Cantor set of them.

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::TorusMapSpec;
use crate::error::{Error, Result};
use crate::fill::fill_torus;
use crate::grid::{connected_components, GridResolution, TorusGridSet};
use crate::homotopy::{census_with_labels, HomotopyType};

#[derive(Clone, Debug)]
pub struct MooreQuotient {
    n: usize,
    /// Class of every cell: `0..m_classes` are filled components of the set,
    /// the rest are singletons in row-major order.
    pub class_map: Vec<u32>,
    pub class_count: usize,
    pub m_classes: usize,
    pub representatives: Vec<(usize, usize)>,
}

impl MooreQuotient {
    pub fn class_of(&self, i: usize, j: usize) -> usize {
        self.class_map[(j % self.n) * self.n + i % self.n] as usize
    }

    /// Cells of class `c`.
    pub fn class_cells(&self, c: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.class_map
            .iter()
            .enumerate()
            .filter(move |(_, &k)| k as usize == c)
            .map(move |(idx, _)| (idx % n, idx / n))
    }
}

/// Classes are the fills of the components of `m` (which must be trivial and
/// have disjoint fills) plus one singleton per remaining cell.
pub fn moore_quotient(m: &TorusGridSet) -> Result<MooreQuotient> {
    let labels = connected_components(m);
    let census = census_with_labels(m, &labels)?;
    if let Some(e) = census.iter().find(|e| e.homotopy != HomotopyType::Trivial) {
        return Err(Error::Precondition(format!(
            "Moore quotient needs trivial components, component {} is {}",
            e.component, e.homotopy
        )));
    }
    let fills: Vec<TorusGridSet> = (0..labels.count())
        .into_par_iter()
        .map(|c| Ok(fill_torus(&labels.component(m, c), true)?.filled))
        .collect::<Result<_>>()?;
    let n = m.n();
    let mut class_map = vec![u32::MAX; n * n];
    let mut representatives = Vec::with_capacity(fills.len());
    for (c, f) in fills.iter().enumerate() {
        for idx in f.indices() {
            if class_map[idx] != u32::MAX {
                return Err(Error::DecompositionNotDisjoint);
            }
            class_map[idx] = c as u32;
        }
        representatives.push(labels.representative(c));
    }
    let mut next = fills.len() as u32;
    for (idx, k) in class_map.iter_mut().enumerate() {
        if *k == u32::MAX {
            *k = next;
            next += 1;
            representatives.push((idx % n, idx / n));
        }
    }
    Ok(MooreQuotient {
        n,
        class_map,
        class_count: next as usize,
        m_classes: fills.len(),
        representatives,
    })
}

/// Squared cell distance within which two classes count as accumulating.
pub const ACCUMULATION_RADIUS2: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderRung {
    pub n: usize,
    pub m_classes: usize,
    pub class_count: usize,
    /// Image class of each set class, when every image was matched.
    pub class_map: Option<Vec<usize>>,
    /// Length of the cycle when the class map is a single cycle.
    pub cycle: Option<usize>,
    /// Every set class lies within `√ACCUMULATION_RADIUS2` cells of another.
    pub accumulated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LadderVerdict {
    PeriodicOrbitExtension(usize),
    CantorExtension,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderEvidence {
    pub rungs: Vec<LadderRung>,
    pub verdict: LadderVerdict,
}

/// The class hit by `F(center of rep)`, searching the cell and then its
/// eight neighbors in row-major order.
fn image_class(map: &TorusMapSpec, q: &MooreQuotient, res: GridResolution, c: usize) -> Option<usize> {
    let (i, j) = q.representatives[c];
    let (a, b) = res.cell_of(map.eval_torus(res.center(i, j)));
    let n = res.n() as i64;
    let hit = |di: i64, dj: i64| {
        let k = q.class_of(
            (a as i64 + di).rem_euclid(n) as usize,
            (b as i64 + dj).rem_euclid(n) as usize,
        );
        (k < q.m_classes).then_some(k)
    };
    hit(0, 0).or_else(|| {
        (-1..=1)
            .flat_map(|dj| (-1..=1).map(move |di| (di, dj)))
            .find_map(|(di, dj)| hit(di, dj))
    })
}

fn single_cycle(perm: &[usize]) -> Option<usize> {
    let k = perm.len();
    if k == 0 {
        return None;
    }
    let mut c = 0;
    for step in 1..=k {
        c = perm[c];
        if c == 0 {
            return (step == k).then_some(k);
        }
    }
    None
}

fn accumulated(q: &MooreQuotient) -> bool {
    if q.m_classes < 2 {
        return false;
    }
    let n = q.n as i64;
    let r = 4;
    let mut near = vec![false; q.m_classes];
    for (idx, &k) in q.class_map.iter().enumerate() {
        let k = k as usize;
        if k >= q.m_classes || near[k] {
            continue;
        }
        let (i, j) = ((idx % q.n) as i64, (idx / q.n) as i64);
        'search: for dj in -r..=r {
            for di in -r..=r {
                if di * di + dj * dj > ACCUMULATION_RADIUS2 {
                    continue;
                }
                let o = q.class_of((i + di).rem_euclid(n) as usize, (j + dj).rem_euclid(n) as usize);
                if o != k && o < q.m_classes {
                    near[k] = true;
                    break 'search;
                }
            }
        }
    }
    near.iter().all(|&b| b)
}

fn rung(map: &TorusMapSpec, m: &TorusGridSet) -> Result<LadderRung> {
    let q = moore_quotient(m)?;
    let res = m.resolution();
    let images: Option<Vec<usize>> = (0..q.m_classes).map(|c| image_class(map, &q, res, c)).collect();
    let cycle = images.as_deref().and_then(single_cycle);
    Ok(LadderRung {
        n: m.n(),
        m_classes: q.m_classes,
        class_count: q.class_count,
        accumulated: accumulated(&q),
        class_map: images,
        cycle,
    })
}

/// Counts set classes at every rung of `ladder`. Equal counts `k` with a
/// single `k`-cycle everywhere give a periodic orbit; strictly increasing
/// counts with every class accumulated give a Cantor set; anything else is
/// undecided.
pub fn periodic_vs_cantor(
    map: &TorusMapSpec,
    source: &(dyn Fn(GridResolution) -> Result<TorusGridSet> + Sync),
    ladder: &[GridResolution],
) -> Result<LadderEvidence> {
    if ladder.windows(2).any(|w| w[0] >= w[1]) || ladder.is_empty() {
        return Err(Error::InvalidInput("ladder must be strictly increasing".into()));
    }
    let rungs: Vec<LadderRung> = ladder
        .par_iter()
        .map(|&n| rung(map, &source(n)?))
        .collect::<Result<_>>()?;
    let k = rungs[0].m_classes;
    let verdict = if k >= 1 && rungs.iter().all(|r| r.m_classes == k && r.cycle == Some(k)) {
        LadderVerdict::PeriodicOrbitExtension(k)
    } else if rungs.len() >= 2
        && rungs.windows(2).all(|w| w[0].m_classes < w[1].m_classes)
        && rungs.iter().all(|r| r.accumulated)
    {
        LadderVerdict::CantorExtension
    } else {
        LadderVerdict::Undecided
    };
    Ok(LadderEvidence { rungs, verdict })
}

/// Ladder `n/4, n/2, n` of coarsenings of `m`.
pub fn default_ladder(n: GridResolution) -> Vec<GridResolution> {
    [4, 2, 1]
        .iter()
        .filter_map(|&f| GridResolution::new(n.n() / f).ok())
        .collect()
}

/// A source that coarsens `m` to any resolution dividing its own.
pub fn coarsening_source(m: &TorusGridSet) -> impl Fn(GridResolution) -> Result<TorusGridSet> + Sync + '_ {
    move |r: GridResolution| {
        if r.n() > m.n() {
            return Err(Error::InvalidInput(format!(
                "cannot refine a raster from n={} to n={}",
                m.n(),
                r.n()
            )));
        }
        m.coarsen((m.n() / r.n()).trailing_zeros())
    }
}
