//! Rectangular cell grids with optional periodic wrap in either axis, and the
//! traversal primitives shared by the torus, strip and planar-window types.

use std::collections::{BTreeSet, VecDeque};

use crate::lattice::Vec2i;

pub(crate) const NO_LABEL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Shape {
    pub width: usize,
    pub height: usize,
    pub wrap_x: bool,
    pub wrap_y: bool,
}

impl Shape {
    pub fn torus(n: usize) -> Self {
        Shape {
            width: n,
            height: n,
            wrap_x: true,
            wrap_y: true,
        }
    }

    pub fn cylinder(width: usize, height: usize) -> Self {
        Shape {
            width,
            height,
            wrap_x: true,
            wrap_y: false,
        }
    }

    pub fn plane(width: usize, height: usize) -> Self {
        Shape {
            width,
            height,
            wrap_x: false,
            wrap_y: false,
        }
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn xy(&self, idx: usize) -> (usize, usize) {
        (idx % self.width, idx / self.width)
    }

    pub fn idx(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    /// Neighbor of `idx` along `d`, with the number of times the step wrapped
    /// around each periodic axis. `None` when the step leaves a bounded axis.
    #[inline]
    pub fn step(&self, idx: usize, d: Vec2i) -> Option<(usize, Vec2i)> {
        let (x, y) = self.xy(idx);
        let nx = x as i64 + d[0];
        let ny = y as i64 + d[1];
        let w = self.width as i64;
        let h = self.height as i64;
        let (fx, wx) = if self.wrap_x {
            (nx.rem_euclid(w), nx.div_euclid(w))
        } else if (0..w).contains(&nx) {
            (nx, 0)
        } else {
            return None;
        };
        let (fy, wy) = if self.wrap_y {
            (ny.rem_euclid(h), ny.div_euclid(h))
        } else if (0..h).contains(&ny) {
            (ny, 0)
        } else {
            return None;
        };
        Some((self.idx(fx as usize, fy as usize), [wx, wy]))
    }
}

/// Component labels over a masked grid; ids follow row-major order of each
/// component's first cell.
#[derive(Clone, Debug)]
pub(crate) struct Labels {
    pub labels: Vec<u32>,
    pub count: usize,
    pub reps: Vec<usize>,
}

impl Labels {
    pub fn get(&self, idx: usize) -> Option<usize> {
        let l = self.labels[idx];
        (l != NO_LABEL).then_some(l as usize)
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.count];
        for &l in &self.labels {
            if l != NO_LABEL {
                s[l as usize] += 1;
            }
        }
        s
    }
}

pub(crate) fn label(shape: &Shape, mask: &[bool], offsets: &[Vec2i]) -> Labels {
    let mut labels = vec![NO_LABEL; shape.len()];
    let mut reps = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..shape.len() {
        if !mask[start] || labels[start] != NO_LABEL {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(start);
        labels[start] = id;
        queue.push_back(start);
        while let Some(c) = queue.pop_front() {
            for &d in offsets {
                if let Some((nb, _)) = shape.step(c, d) {
                    if mask[nb] && labels[nb] == NO_LABEL {
                        labels[nb] = id;
                        queue.push_back(nb);
                    }
                }
            }
        }
    }
    Labels {
        count: reps.len(),
        labels,
        reps,
    }
}

/// Spanning-tree holonomy for every component at once.
///
/// Each component gets a BFS tree rooted at its representative; every cell
/// gets the lift coordinate (in units of the periodic axes) of its tree path.
/// Each adjacency then contributes the mismatch between the lift reached
/// through that edge and the stored lift of its endpoint.
pub(crate) fn component_periods(shape: &Shape, labels: &Labels, offsets: &[Vec2i]) -> Vec<BTreeSet<Vec2i>> {
    let mut lift: Vec<Vec2i> = vec![[0, 0]; shape.len()];
    let mut seen = vec![false; shape.len()];
    let mut queue = VecDeque::new();
    for &rep in &labels.reps {
        seen[rep] = true;
        queue.push_back(rep);
        while let Some(c) = queue.pop_front() {
            let lc = lift[c];
            for &d in offsets {
                if let Some((nb, w)) = shape.step(c, d) {
                    if labels.labels[nb] == labels.labels[c] && !seen[nb] {
                        seen[nb] = true;
                        lift[nb] = [lc[0] + w[0], lc[1] + w[1]];
                        queue.push_back(nb);
                    }
                }
            }
        }
    }
    let mut periods = vec![BTreeSet::new(); labels.count];
    for c in 0..shape.len() {
        let l = labels.labels[c];
        if l == NO_LABEL {
            continue;
        }
        let lc = lift[c];
        for &d in offsets {
            if let Some((nb, w)) = shape.step(c, d) {
                if labels.labels[nb] == l {
                    let ln = lift[nb];
                    let p = [lc[0] + w[0] - ln[0], lc[1] + w[1] - ln[1]];
                    if p != [0, 0] {
                        periods[l as usize].insert(p);
                    }
                }
            }
        }
    }
    periods
}

/// Lift coordinates of one component's spanning tree, restricted to its cells.
pub(crate) fn tree_lift(shape: &Shape, labels: &Labels, offsets: &[Vec2i], comp: usize) -> Vec<(usize, Vec2i)> {
    let rep = labels.reps[comp];
    let mut out = vec![(rep, [0, 0])];
    let mut lift = std::collections::HashMap::new();
    lift.insert(rep, [0i64, 0i64]);
    let mut head = 0;
    while head < out.len() {
        let (c, lc) = out[head];
        head += 1;
        for &d in offsets {
            if let Some((nb, w)) = shape.step(c, d) {
                if labels.labels[nb] as usize == comp && !lift.contains_key(&nb) {
                    let l = [lc[0] + w[0], lc[1] + w[1]];
                    lift.insert(nb, l);
                    out.push((nb, l));
                }
            }
        }
    }
    out
}

/// Cells of `mask` having at least one `dual_offsets` neighbor outside the
/// mask; steps leaving a bounded axis count as outside.
pub(crate) fn boundary_mask(shape: &Shape, mask: &[bool], dual_offsets: &[Vec2i]) -> Vec<bool> {
    (0..shape.len())
        .map(|c| {
            mask[c]
                && dual_offsets.iter().any(|&d| match shape.step(c, d) {
                    Some((nb, _)) => !mask[nb],
                    None => true,
                })
        })
        .collect()
}

/// `mask` together with every cell reachable by one step in `offsets`.
pub(crate) fn dilate_mask(shape: &Shape, mask: &[bool], offsets: &[Vec2i]) -> Vec<bool> {
    let mut out = mask.to_vec();
    for c in 0..shape.len() {
        if !mask[c] {
            continue;
        }
        for &d in offsets {
            if let Some((nb, _)) = shape.step(c, d) {
                out[nb] = true;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FOUR: [Vec2i; 4] = [[1, 0], [-1, 0], [0, 1], [0, -1]];

    #[test]
    fn torus_step_wraps_and_reports_shift() {
        let s = Shape::torus(8);
        assert_eq!(s.step(s.idx(7, 3), [1, 0]), Some((s.idx(0, 3), [1, 0])));
        assert_eq!(s.step(s.idx(0, 0), [0, -1]), Some((s.idx(0, 7), [0, -1])));
        assert_eq!(s.step(s.idx(0, 0), [-17, 9]), Some((s.idx(7, 1), [-3, 1])));
    }

    #[test]
    fn plane_step_stops_at_edge() {
        let s = Shape::plane(4, 4);
        assert_eq!(s.step(s.idx(3, 0), [1, 0]), None);
        let c = Shape::cylinder(4, 4);
        assert!(c.step(c.idx(3, 0), [1, 0]).is_some());
        assert!(c.step(c.idx(0, 0), [0, -1]).is_none());
    }

    #[test]
    fn row_on_torus_has_horizontal_period() {
        let s = Shape::torus(8);
        let mask: Vec<bool> = (0..64).map(|i| i / 8 == 2).collect();
        let l = label(&s, &mask, &FOUR);
        assert_eq!(l.count, 1);
        let p = component_periods(&s, &l, &FOUR);
        assert_eq!(p[0].iter().copied().collect::<Vec<_>>(), vec![[-1, 0], [1, 0]]);
    }
}
