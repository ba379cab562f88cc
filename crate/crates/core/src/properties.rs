//! Seeded property suites over random inputs. Each trial draws from its own
//! ChaCha stream, so a suite's outcome depends only on the seed and the
//! trial count, never on the thread count.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circloid::{annulus_chart, circloid_upper_frontier, frontier_word, StripSet};
use crate::fill::{
    coordinate_set, disjoint_disks_complement_connected, fill_equivariance_check, fill_torus, lifted_fill,
};
use crate::grid::{boundary, complement, connected_components, Adjacency, GridResolution, TorusGridSet};
use crate::homotopy::{all_holonomies, census_with_labels, set_homotopy_census, window_holonomies, HomotopyType};
use crate::lattice::Mat2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub trials: usize,
    pub violations: usize,
    /// Description of the first failing trial, by trial index.
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Per-trial generator: stream `trial` of the suite's seed.
pub fn trial_rng(seed: u64, salt: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(trial as u64);
    rng
}

fn run_suite<F>(name: &str, salt: u64, seed: u64, trials: usize, check: F) -> SuiteOutcome
where
    F: Fn(&mut ChaCha8Rng) -> std::result::Result<(), String> + Sync,
{
    let results: Vec<Option<String>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            check(&mut trial_rng(seed, salt, t))
                .err()
                .map(|e| format!("trial {t}: {e}"))
        })
        .collect();
    SuiteOutcome {
        name: name.to_string(),
        trials,
        violations: results.iter().filter(|r| r.is_some()).count(),
        first_failure: results.into_iter().flatten().next(),
    }
}

fn res(n: usize) -> GridResolution {
    GridResolution::new(n).expect("suite resolutions are powers of two")
}

/// Random unimodular matrix, a short word in the shears and the quarter turn.
pub fn random_unimodular(rng: &mut impl Rng) -> Mat2 {
    let gens = [
        Mat2::new(1, 1, 0, 1),
        Mat2::new(1, -1, 0, 1),
        Mat2::new(1, 0, 1, 1),
        Mat2::new(1, 0, -1, 1),
        Mat2::new(0, -1, 1, 0),
        Mat2::new(1, 0, 0, -1),
    ];
    let mut m = Mat2::IDENTITY;
    for _ in 0..rng.gen_range(1..=3) {
        m = m.mul(&gens[rng.gen_range(0..gens.len())]);
    }
    m
}

fn random_walk(rng: &mut impl Rng, s: &mut TorusGridSet, start: (i64, i64), len: usize, half_box: i64) {
    let n = s.n() as i64;
    let (mut x, mut y) = (0i64, 0i64);
    for _ in 0..len {
        s.insert(
            (start.0 + x).rem_euclid(n) as usize,
            (start.1 + y).rem_euclid(n) as usize,
        );
        x = (x + rng.gen_range(-1..=1)).clamp(-half_box, half_box);
        y = (y + rng.gen_range(-1..=1)).clamp(-half_box, half_box);
    }
}

fn rect(s: &mut TorusGridSet, x: i64, y: i64, w: i64, h: i64, outline: bool) {
    let n = s.n() as i64;
    for j in 0..h {
        for i in 0..w {
            if !outline || i == 0 || j == 0 || i == w - 1 || j == h - 1 {
                s.insert((x + i).rem_euclid(n) as usize, (y + j).rem_euclid(n) as usize);
            }
        }
    }
}

/// A closed set made of a few rectangles, rectangle outlines, random walks
/// and, now and then, an essential band.
pub fn random_domain(rng: &mut impl Rng, n: GridResolution) -> TorusGridSet {
    let nn = n.n() as i64;
    let mut s = TorusGridSet::empty(n, Adjacency::EIGHT);
    for _ in 0..rng.gen_range(1..=4) {
        let (x, y) = (rng.gen_range(0..nn), rng.gen_range(0..nn));
        match rng.gen_range(0..10) {
            0..=2 => rect(&mut s, x, y, rng.gen_range(1..nn / 3), rng.gen_range(1..nn / 3), false),
            3..=5 => rect(&mut s, x, y, rng.gen_range(3..nn / 2), rng.gen_range(3..nn / 2), true),
            6..=8 => {
                let len = rng.gen_range(10..300);
                random_walk(rng, &mut s, (x, y), len, nn / 3)
            }
            _ => {
                let v: [i64; 2] = [[1, 0], [0, 1], [1, 1], [1, -1], [2, 1]][rng.gen_range(0..5)];
                for t in 0..nn * v[0].abs().max(1) * v[1].abs().max(1) * 2 {
                    let i = x + t * v[0] / 2;
                    let j = y + t * v[1] / 2;
                    s.insert(i.rem_euclid(nn) as usize, j.rem_euclid(nn) as usize);
                }
            }
        }
    }
    s
}

/// Fill properties on random domains: the boundary of the fill lies in the
/// boundary of the set, fill is idempotent and commutes with index maps, and
/// the lifted fill of a trivial component misses its translates.
pub fn fill_suite(seed: u64, trials: usize) -> SuiteOutcome {
    run_suite("fill", 1, seed, trials, |rng| {
        let a = random_domain(rng, res(64));
        let f = fill_torus(&a, false).map_err(|e| e.to_string())?;
        if !boundary(&f.filled).is_subset(&boundary(&a)) {
            return Err("boundary of fill leaves the boundary of the set".into());
        }
        let again = fill_torus(&f.filled, false).map_err(|e| e.to_string())?;
        if !again.filled.same_cells(&f.filled) {
            return Err("fill is not idempotent".into());
        }
        for _ in 0..10 {
            let b = random_unimodular(rng);
            if !fill_equivariance_check(&a, b).map_err(|e| e.to_string())? {
                return Err(format!("fill does not commute with {b}"));
            }
        }
        let labels = connected_components(&a);
        let census = census_with_labels(&a, &labels).map_err(|e| e.to_string())?;
        let n = a.n() as i64;
        for e in census.iter().filter(|e| e.homotopy == HomotopyType::Trivial) {
            let lift = lifted_fill(&labels.component(&a, e.component)).map_err(|e| e.to_string())?;
            let cells = coordinate_set(&lift);
            for vx in -2..=2i64 {
                for vy in -2..=2i64 {
                    if (vx, vy) != (0, 0) && lift.iter().any(|c| cells.contains(&[c[0] + vx * n, c[1] + vy * n])) {
                        return Err(format!(
                            "lifted fill of component {} meets its ({vx},{vy}) translate",
                            e.component
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

/// Up to `max` pairwise disjoint rectangles of side at most 12.
pub fn random_blocks(rng: &mut impl Rng, n: GridResolution, max: usize) -> Vec<TorusGridSet> {
    let nn = n.n() as i64;
    let mut taken = TorusGridSet::empty(n, Adjacency::EIGHT);
    let mut out = Vec::new();
    let want = rng.gen_range(1..=max);
    for _ in 0..want * 20 {
        if out.len() == want {
            break;
        }
        let mut b = TorusGridSet::empty(n, Adjacency::EIGHT);
        let (x, y) = (rng.gen_range(0..nn), rng.gen_range(0..nn));
        rect(&mut b, x, y, rng.gen_range(1..=12), rng.gen_range(1..=12), false);
        if b.is_disjoint(&taken) {
            taken = taken.union(&b);
            out.push(b);
        }
    }
    out
}

/// Disjoint bounded blocks lifted to a doubled window leave a connected
/// remainder.
pub fn disk_complement_suite(seed: u64, trials: usize) -> SuiteOutcome {
    run_suite("disjoint-disks", 2, seed, trials, |rng| {
        let blocks = random_blocks(rng, res(128), 20);
        match disjoint_disks_complement_connected(&blocks, 2) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("{} blocks disconnect the window", blocks.len())),
            Err(e) => Err(e.to_string()),
        }
    })
}

/// A connected set with trivial holonomy: random walks and outlines kept
/// inside a box of half the torus.
pub fn random_trivial_continuum(rng: &mut impl Rng, n: GridResolution) -> TorusGridSet {
    let nn = n.n() as i64;
    let quarter = nn / 4 - 1;
    let start = (rng.gen_range(0..nn), rng.gen_range(0..nn));
    let mut s = TorusGridSet::empty(n, Adjacency::EIGHT);
    let len = rng.gen_range(1..120);
    random_walk(rng, &mut s, start, len, quarter);
    if rng.gen_bool(0.5) {
        let w = rng.gen_range(3..=quarter);
        let h = rng.gen_range(3..=quarter);
        rect(&mut s, start.0, start.1, w, h, true);
    }
    s
}

/// The complement of a trivial continuum has exactly one doubly essential
/// component.
pub fn trivial_continuum_suite(seed: u64, trials: usize) -> SuiteOutcome {
    run_suite("trivial-continuum", 3, seed, trials, |rng| {
        let a = random_trivial_continuum(rng, res(32));
        let census = set_homotopy_census(&a).map_err(|e| e.to_string())?;
        if census.len() != 1 || census[0].homotopy != HomotopyType::Trivial {
            return Err("generator produced a non-trivial continuum".into());
        }
        let comp = set_homotopy_census(&complement(&a)).map_err(|e| e.to_string())?;
        let doubly = comp
            .iter()
            .filter(|e| e.homotopy == HomotopyType::DoublyEssential)
            .count();
        let others_trivial = comp
            .iter()
            .all(|e| matches!(e.homotopy, HomotopyType::Trivial | HomotopyType::DoublyEssential));
        if doubly != 1 || !others_trivial {
            return Err(format!("complement census has {doubly} doubly essential components"));
        }
        Ok(())
    })
}

/// An essential strip set: a closed wavy curve, thickened in places, with
/// holes punched off the curve and loose blobs above and below.
pub fn random_essential_strip(rng: &mut impl Rng, n: GridResolution, height: usize) -> StripSet {
    let nn = n.n();
    let chart = annulus_chart(1, 0).expect("primitive").with_height(height);
    let reach = (height * nn) as i64 / 2;
    let mut steps: Vec<i64> = (0..nn).map(|_| rng.gen_range(-1..=1)).collect();
    // Close the curve: cancel the net drift one step at a time.
    let mut drift: i64 = steps.iter().sum();
    while drift != 0 {
        let k = rng.gen_range(0..nn);
        let want = steps[k] - drift.signum();
        if (-1..=1).contains(&want) {
            steps[k] = want;
            drift -= drift.signum();
        }
    }
    let mut h = Vec::with_capacity(nn);
    let mut y = 0;
    for s in &steps {
        h.push(y);
        y += s;
    }
    let lo = *h.iter().min().unwrap();
    let hi = *h.iter().max().unwrap();
    let base = rng.gen_range(-reach + 8 - lo..=reach - 8 - hi);
    for v in &mut h {
        *v += base;
    }
    let mut cells = HashSet::new();
    for (x, &v) in h.iter().enumerate() {
        for d in -rng.gen_range(0..=3)..=rng.gen_range(0..=3) {
            cells.insert((x, v + d));
        }
    }
    for _ in 0..rng.gen_range(0..=nn / 8) {
        let x = rng.gen_range(0..nn);
        let d = rng.gen_range(-3..=3);
        if d != 0 {
            cells.remove(&(x, h[x] + d));
        }
    }
    for _ in 0..rng.gen_range(0..4) {
        let (mut x, mut v) = (rng.gen_range(0..nn) as i64, h[0] + rng.gen_range(-12..=12));
        for _ in 0..rng.gen_range(1..60) {
            cells.insert((x.rem_euclid(nn as i64) as usize, v));
            x += rng.gen_range(-1..=1);
            v = (v + rng.gen_range(-1..=1)).clamp(-reach, reach);
        }
    }
    StripSet::from_fn(chart, n, |x, v| cells.contains(&(x, v)))
}

/// Frontier idempotence `U⁺⁻⁺⁻ = U⁺⁻`, `∂C⁺(A) ⊆ ∂A`, and `C⁺(A)` an
/// essential continuum.
pub fn circloid_suite(seed: u64, trials: usize) -> SuiteOutcome {
    run_suite("circloid", 4, seed, trials, |rng| {
        let a = random_essential_strip(rng, res(128), 4);
        let pm = frontier_word(&a, "+-").map_err(|e| e.to_string())?;
        let pmpm = frontier_word(&a, "+-+-").map_err(|e| e.to_string())?;
        if !pm.same_cells(&pmpm) {
            return Err("U+-+- differs from U+-".into());
        }
        let c = circloid_upper_frontier(&a).map_err(|e| e.to_string())?;
        if !c.body.boundary().is_subset(&a.boundary()) {
            return Err("frontier boundary leaves the boundary of the set".into());
        }
        if !c.body.is_essential() || c.body.component_count() != 1 {
            return Err(format!(
                "frontier has {} components, essential: {}",
                c.body.component_count(),
                c.body.is_essential()
            ));
        }
        Ok(())
    })
}

/// Spanning-tree holonomy equals the holonomy witnessed on a 4 × 4 cover
/// window for every component of a Bernoulli set.
pub fn holonomy_suite(seed: u64, trials: usize) -> SuiteOutcome {
    run_suite("holonomy", 5, seed, trials, |rng| {
        let p = rng.gen_range(0.15..0.65);
        let adjacency = if rng.gen_bool(0.5) {
            Adjacency::EIGHT
        } else {
            Adjacency::FOUR
        };
        let s = TorusGridSet::from_fn(res(32), adjacency, |_, _| rng.gen_bool(p));
        let labels = connected_components(&s);
        let tree = all_holonomies(&s, &labels);
        let window = window_holonomies(&s, 4, 2);
        match tree.iter().zip(&window).position(|(a, b)| a != b) {
            None => Ok(()),
            Some(c) => Err(format!(
                "component {c}: tree {:?} window {:?}",
                tree[c].basis(),
                window[c].basis()
            )),
        }
    })
}

/// Trial counts used by the acceptance run.
pub const FILL_TRIALS: usize = 1000;
pub const DISK_TRIALS: usize = 500;
pub const CONTINUUM_TRIALS: usize = 500;
pub const CIRCLOID_TRIALS: usize = 200;
pub const HOLONOMY_TRIALS: usize = 500;

/// Every suite at its full trial count.
pub fn run_all(seed: u64) -> Vec<SuiteOutcome> {
    vec![
        fill_suite(seed, FILL_TRIALS),
        disk_complement_suite(seed, DISK_TRIALS),
        trivial_continuum_suite(seed, CONTINUUM_TRIALS),
        circloid_suite(seed, CIRCLOID_TRIALS),
        holonomy_suite(seed, HOLONOMY_TRIALS),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_runs() {
        for o in [
            fill_suite(7, 20),
            disk_complement_suite(7, 10),
            trivial_continuum_suite(7, 20),
            circloid_suite(7, 10),
            holonomy_suite(7, 20),
        ] {
            assert!(o.passed(), "{o:?}");
        }
    }

    #[test]
    fn trials_are_reproducible() {
        let a = random_domain(&mut trial_rng(3, 1, 5), res(64));
        let b = random_domain(&mut trial_rng(3, 1, 5), res(64));
        assert!(a.same_cells(&b));
        let c = random_domain(&mut trial_rng(3, 1, 6), res(64));
        assert!(!a.same_cells(&c));
    }

    #[test]
    fn random_unimodular_has_unit_determinant() {
        let mut rng = trial_rng(0, 9, 0);
        for _ in 0..100 {
            assert_eq!(random_unimodular(&mut rng).det().abs(), 1);
        }
    }

    #[test]
    fn essential_strips_are_essential() {
        for t in 0..20 {
            let s = random_essential_strip(&mut trial_rng(1, 4, t), res(128), 4);
            assert!(!s.touches_edge());
            assert!(circloid_upper_frontier(&s).is_ok());
        }
    }
}
