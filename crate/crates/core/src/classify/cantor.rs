//! A synthetic Cantor cross-section with known component counts: at level
//! `L` (resolution `64·2^(L−1)`) there are `4^L` square leaves of side
//! `9 − L`, grouped recursively in 2 × 2 blocks two cells apart.

use crate::error::{Error, Result};
use crate::grid::{Adjacency, GridResolution, TorusGridSet};

const BASE_N: usize = 64;
const LEAF_SIDE: usize = 8;
const GAP: usize = 2;
const OFFSET: usize = 8;

/// Level of the cross-section drawn at `n`.
pub fn cantor_level(n: GridResolution) -> Result<u32> {
    let n = n.n();
    if n < BASE_N || !(n / BASE_N).is_power_of_two() {
        return Err(Error::InvalidInput(format!(
            "Cantor cross-section needs n = 64·2^k, got {n}"
        )));
    }
    let level = (n / BASE_N).trailing_zeros() + 1;
    if level as usize >= LEAF_SIDE {
        return Err(Error::InvalidInput(format!(
            "Cantor cross-section has no level {level}"
        )));
    }
    Ok(level)
}

/// The level-`L` cross-section at `n = 64·2^(L−1)`.
pub fn cantor_cross_section(n: GridResolution) -> Result<TorusGridSet> {
    let level = cantor_level(n)?;
    let leaf = LEAF_SIDE + 1 - level as usize;
    let mut side = vec![leaf];
    for g in 1..=level as usize {
        side.push(2 * side[g - 1] + GAP);
    }
    let mut out = TorusGridSet::empty(n, Adjacency::EIGHT);
    fn place(out: &mut TorusGridSet, side: &[usize], g: usize, x: usize, y: usize) {
        if g == 0 {
            for j in y..y + side[0] {
                for i in x..x + side[0] {
                    out.insert(i, j);
                }
            }
            return;
        }
        let step = side[g - 1] + GAP;
        for (dx, dy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            place(out, side, g - 1, x + dx * step, y + dy * step);
        }
    }
    place(&mut out, &side, level as usize, OFFSET, OFFSET);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::connected_components;

    #[test]
    fn known_counts() {
        for (n, count, leaf) in [(64, 4, 8), (128, 16, 7), (256, 64, 6)] {
            let s = cantor_cross_section(GridResolution::new(n).unwrap()).unwrap();
            let l = connected_components(&s);
            assert_eq!(l.count(), count);
            assert!(l.sizes().iter().all(|&z| z == leaf * leaf));
        }
        assert!(cantor_cross_section(GridResolution::new(32).unwrap()).is_err());
    }
}
