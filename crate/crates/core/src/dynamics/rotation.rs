//! Rotation sets of maps homotopic to the identity, orthogonal rotation
//! numbers in an annulus chart, and a continued-fraction rationality test.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::map::{wrap_unit, Point, TorusMapSpec};
use crate::error::{Error, Result};
use crate::lattice::{completing_basis, is_primitive, Mat2};

#[derive(Clone, Debug, Serialize)]
pub struct RotationSetEstimate {
    /// Displacement averages, one per seed in seed order.
    pub samples: Vec<Point>,
    /// Convex hull, counter-clockwise from the lexicographic minimum.
    pub hull: Vec<Point>,
    pub diameter: f64,
    pub area: f64,
    /// Largest gap between an orbit's late-half average and its full average.
    pub max_deviation: f64,
    pub n_iter: usize,
    pub n_samples: usize,
}

/// Seeds on the corners of a `k × k` grid, `k = ⌈√count⌉`, row-major.
pub fn seed_grid(count: usize) -> Vec<Point> {
    let k = (count as f64).sqrt().ceil().max(1.0) as usize;
    (0..count)
        .map(|s| [(s % k) as f64 / k as f64, (s / k) as f64 / k as f64])
        .collect()
}

/// Mean displacement of one orbit after a burn-in of `n_iter / 10` steps,
/// plus the mean over the late half.
fn displacement(map: &TorusMapSpec, z0: Point, n_iter: usize) -> (Point, Point) {
    let burn = n_iter / 10;
    let mut z = z0;
    for _ in 0..burn {
        z = map.eval_torus(z);
    }
    let steps = n_iter - burn;
    let half = steps / 2;
    let mut sum = [0.0, 0.0];
    let mut late = [0.0, 0.0];
    for t in 0..steps {
        let w = map.eval_lift(z);
        let d = [w[0] - z[0], w[1] - z[1]];
        sum[0] += d[0];
        sum[1] += d[1];
        if t >= half {
            late[0] += d[0];
            late[1] += d[1];
        }
        z = [wrap_unit(w[0]), wrap_unit(w[1])];
    }
    let s = steps as f64;
    let l = (steps - half) as f64;
    ([sum[0] / s, sum[1] / s], [late[0] / l, late[1] / l])
}

pub fn rotation_set_estimate(map: &TorusMapSpec, n_samples: usize, n_iter: usize) -> Result<RotationSetEstimate> {
    if map.homology() != Mat2::IDENTITY {
        return Err(Error::NotIdentityClass);
    }
    if n_iter < 100 || n_samples == 0 {
        return Err(Error::InvalidInput(
            "rotation set needs n_iter >= 100 and at least one sample".into(),
        ));
    }
    let runs: Vec<(Point, Point)> = seed_grid(n_samples)
        .into_par_iter()
        .map(|z| displacement(map, z, n_iter))
        .collect();
    let samples: Vec<Point> = runs.iter().map(|r| r.0).collect();
    let max_deviation = runs
        .iter()
        .map(|(a, b)| (a[0] - b[0]).hypot(a[1] - b[1]))
        .fold(0.0, f64::max);
    let hull = convex_hull(&samples);
    Ok(RotationSetEstimate {
        diameter: diameter(&hull),
        area: polygon_area(&hull),
        hull,
        samples,
        max_deviation,
        n_iter,
        n_samples,
    })
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Monotone-chain hull, counter-clockwise, starting at the lexicographic
/// minimum; collinear points are dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut p: Vec<Point> = points.to_vec();
    p.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0.0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0.0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn polygon_area(hull: &[Point]) -> f64 {
    if hull.len() < 3 {
        return 0.0;
    }
    let s: f64 = (0..hull.len())
        .map(|i| {
            let a = hull[i];
            let b = hull[(i + 1) % hull.len()];
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    s.abs() / 2.0
}

pub fn diameter(points: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max((a[0] - b[0]).hypot(a[1] - b[1]));
        }
    }
    d
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0)
    };
    (p[0] - a[0] - t * d[0]).hypot(p[1] - a[1] - t * d[1])
}

/// Distance from a point to a convex polygon (counter-clockwise vertices;
/// points and segments allowed).
pub fn distance_to_convex(p: Point, poly: &[Point]) -> f64 {
    match poly.len() {
        0 => f64::INFINITY,
        1 => (p[0] - poly[0][0]).hypot(p[1] - poly[0][1]),
        2 => segment_distance(p, poly[0], poly[1]),
        m => {
            let inside = (0..m).all(|i| cross(poly[i], poly[(i + 1) % m], p) >= 0.0);
            if inside {
                return 0.0;
            }
            (0..m)
                .map(|i| segment_distance(p, poly[i], poly[(i + 1) % m]))
                .fold(f64::INFINITY, f64::min)
        }
    }
}

/// Hausdorff distance between convex polygons; attained at vertices.
pub fn polygon_hausdorff(a: &[Point], b: &[Point]) -> f64 {
    let ab = a.iter().map(|&p| distance_to_convex(p, b)).fold(0.0, f64::max);
    let ba = b.iter().map(|&p| distance_to_convex(p, a)).fold(0.0, f64::max);
    ab.max(ba)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalVerdict {
    Rational(i64, i64),
    Irrational,
    Undecided,
}

impl fmt::Display for RationalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalVerdict::Rational(a, b) => write!(f, "Rational({a}/{b})"),
            RationalVerdict::Irrational => write!(f, "Irrational"),
            RationalVerdict::Undecided => write!(f, "Undecided"),
        }
    }
}

impl Serialize for RationalVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Continued-fraction convergents `a/b` of `value` with `b <= max_den`.
pub fn convergents(value: f64, max_den: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (1i64, value.floor() as i64);
    let (mut k0, mut k1) = (0i64, 1i64);
    out.push((h1, k1));
    let mut rest = value - value.floor();
    while rest > 1e-15 && out.len() < 64 {
        let inv = 1.0 / rest;
        let a = inv.floor();
        rest = inv - a;
        let a = a as i64;
        let (h2, k2) = (
            a.saturating_mul(h1).saturating_add(h0),
            a.saturating_mul(k1).saturating_add(k0),
        );
        if k2 > max_den || k2 <= 0 {
            break;
        }
        out.push((h2, k2));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    out
}

/// Rational when a convergent with denominator at most `max_den` lies within
/// `tol`; irrational when every such convergent misses by more than `10·tol`
/// and by at least `1 / (max_den · b²)`, as badly approximable numbers do;
/// undecided otherwise.
pub fn rationality_test(value: f64, max_den: i64, tol: f64) -> RationalVerdict {
    let cs = convergents(value, max_den.max(1));
    for &(a, b) in &cs {
        if (value - a as f64 / b as f64).abs() < tol {
            return RationalVerdict::Rational(a, b);
        }
    }
    let clear = cs.iter().all(|&(a, b)| {
        let miss = (value - a as f64 / b as f64).abs();
        miss > 10.0 * tol && miss * (b * b) as f64 >= 1.0 / max_den as f64
    });
    if clear {
        RationalVerdict::Irrational
    } else {
        RationalVerdict::Undecided
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalRotation {
    pub vector: [i64; 2],
    /// Mean transverse displacement divided by `‖(p,q)‖`, reduced into
    /// `[0, ‖(p,q)‖)`.
    pub value: f64,
    /// Mean chart displacement before normalization.
    pub raw: f64,
    /// Smallest and largest per-seed normalized displacement.
    pub interval: [f64; 2],
    pub order_reversing: bool,
    /// Verdict on the chart rotation number `raw mod 1`.
    pub rational_verdict: RationalVerdict,
    pub n_iter: usize,
    pub seed_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RotationParams {
    pub n_iter: usize,
    pub seed_count: usize,
    pub tol: f64,
    pub max_denominator: i64,
}

impl Default for RotationParams {
    fn default() -> Self {
        RotationParams {
            n_iter: 100_000,
            seed_count: 16,
            tol: 1e-6,
            max_denominator: 100,
        }
    }
}

/// The lift conjugated into the annulus chart of `(p, q)`: `A⁻¹ F(A w)`.
#[derive(Clone, Debug)]
pub struct ChartLift {
    pub chart: Mat2,
    inverse: Mat2,
    map: TorusMapSpec,
    pub order_reversing: bool,
}

impl ChartLift {
    pub fn new(map: &TorusMapSpec, p: i64, q: i64) -> Result<Self> {
        if !is_primitive([p, q]) {
            return Err(Error::NonPrimitiveVector);
        }
        let image = map.homology().apply([p, q]);
        if image != [p, q] && image != [-p, -q] {
            return Err(Error::ClassNotPreserved);
        }
        let chart = completing_basis(p, q).ok_or(Error::NonPrimitiveVector)?;
        let inverse = chart.inverse().expect("unimodular");
        let mut lift = ChartLift {
            chart,
            inverse,
            map: map.clone(),
            order_reversing: false,
        };
        let w0 = [0.1234, 0.4321];
        let a = lift.eval(w0);
        let b = lift.eval([w0[0], w0[1] + 1.0]);
        lift.order_reversing = (b[1] - a[1]) < 0.0;
        Ok(lift)
    }

    pub fn eval(&self, w: Point) -> Point {
        self.inverse.apply_f64(self.map.eval_lift(self.chart.apply_f64(w)))
    }
}

pub fn orthogonal_rotation(map: &TorusMapSpec, p: i64, q: i64, params: &RotationParams) -> Result<OrthogonalRotation> {
    let lift = ChartLift::new(map, p, q)?;
    let reps = if lift.order_reversing { 2 } else { 1 };
    let step = |w: Point| {
        let mut v = w;
        for _ in 0..reps {
            v = lift.eval(v);
        }
        v
    };
    let burn = params.n_iter / 10;
    let steps = (params.n_iter - burn).max(1);
    let per_seed: Vec<f64> = seed_grid(params.seed_count)
        .into_par_iter()
        .map(|w0| {
            // Only the transverse coordinate is tracked in the lift; the
            // periodic one is reduced so the chart stays well conditioned.
            let mut w = w0;
            for _ in 0..burn {
                let v = step(w);
                w = [wrap_unit(v[0]), v[1] - v[1].floor()];
            }
            let mut sum = 0.0;
            for _ in 0..steps {
                let v = step(w);
                sum += v[1] - w[1];
                w = [wrap_unit(v[0]), v[1] - v[1].floor()];
            }
            sum / steps as f64 / reps as f64
        })
        .collect();
    let raw = per_seed.iter().sum::<f64>() / per_seed.len() as f64;
    let norm = ((p * p + q * q) as f64).sqrt();
    let mut value = (raw / norm).rem_euclid(norm);
    if norm - value < 1e-12 {
        value = 0.0;
    }
    let lo = per_seed.iter().copied().fold(f64::INFINITY, f64::min) / norm;
    let hi = per_seed.iter().copied().fold(f64::NEG_INFINITY, f64::max) / norm;
    let mut unit = raw.rem_euclid(1.0);
    if 1.0 - unit < 1e-12 {
        unit = 0.0;
    }
    let rational_verdict = match rationality_test(unit, params.max_denominator, params.tol) {
        RationalVerdict::Rational(a, b) if a == b => RationalVerdict::Rational(0, 1),
        v => v,
    };
    Ok(OrthogonalRotation {
        vector: [p, q],
        value,
        raw,
        interval: [lo, hi],
        order_reversing: lift.order_reversing,
        rational_verdict,
        n_iter: params.n_iter,
        seed_count: params.seed_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: f64 = 0.618_033_988_749_894_8;

    #[test]
    fn rationality_examples() {
        assert_eq!(rationality_test(0.5, 10, 1e-6), RationalVerdict::Rational(1, 2));
        assert_eq!(rationality_test(GOLDEN, 100, 1e-9), RationalVerdict::Irrational);
        assert_eq!(rationality_test(0.3333, 100, 1e-2), RationalVerdict::Rational(1, 3));
        assert_eq!(rationality_test(0.3333, 100, 1e-6), RationalVerdict::Undecided);
        assert_eq!(rationality_test(0.0, 100, 1e-6), RationalVerdict::Rational(0, 1));
    }

    #[test]
    fn golden_convergents_are_fibonacci() {
        let c = convergents(GOLDEN, 100);
        assert_eq!(
            c,
            vec![
                (0, 1),
                (1, 1),
                (1, 2),
                (2, 3),
                (3, 5),
                (5, 8),
                (8, 13),
                (13, 21),
                (21, 34),
                (34, 55),
                (55, 89)
            ]
        );
    }

    #[test]
    fn hull_is_deterministic_and_convex() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.5, 0.5], [1.0, 1.0], [0.0, 1.0], [0.5, 0.0]];
        let h = convex_hull(&pts);
        assert_eq!(h, vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        assert!((polygon_area(&h) - 1.0).abs() < 1e-15);
        for p in pts {
            assert_eq!(distance_to_convex(p, &h), 0.0);
        }
        assert_eq!(convex_hull(&[[0.2, 0.3], [0.2, 0.3]]), vec![[0.2, 0.3]]);
        assert_eq!(
            convex_hull(&[[0.0, 0.0], [0.25, 0.0], [0.5, 0.0]]),
            vec![[0.0, 0.0], [0.5, 0.0]]
        );
    }

    #[test]
    fn translation_rotation_set_is_a_point() {
        let t = TorusMapSpec::translation(0.3, 0.7);
        let r = rotation_set_estimate(&t, 16, 1000).unwrap();
        assert!(r.diameter < 1e-9);
        assert!((r.hull[0][0] - 0.3).abs() < 1e-9 && (r.hull[0][1] - 0.7).abs() < 1e-9);
        let cat = TorusMapSpec::linear_toral(Mat2::new(2, 1, 1, 1), 0.0, 0.0).unwrap();
        assert_eq!(
            rotation_set_estimate(&cat, 4, 1000).unwrap_err(),
            Error::NotIdentityClass
        );
    }

    #[test]
    fn orthogonal_rotation_of_translations_is_the_projection() {
        let (a, b) = (0.137, 0.291);
        let t = TorusMapSpec::translation(a, b);
        let params = RotationParams {
            n_iter: 1000,
            seed_count: 4,
            ..Default::default()
        };
        for (p, q) in [(1i64, 0i64), (0, 1), (1, 1), (2, 1)] {
            let r = orthogonal_rotation(&t, p, q, &params).unwrap();
            let norm = ((p * p + q * q) as f64).sqrt();
            let proj = ((-(q as f64) * a + p as f64 * b) / norm).rem_euclid(norm);
            assert!((r.value - proj).abs() < 1e-9, "({p},{q}): {} vs {proj}", r.value);
            assert!(!r.order_reversing);
        }
    }

    #[test]
    fn order_reversal_is_detected() {
        let flip = TorusMapSpec::linear_toral(Mat2::new(1, 0, 0, -1), GOLDEN, 0.0).unwrap();
        let params = RotationParams {
            n_iter: 1000,
            seed_count: 4,
            ..Default::default()
        };
        let r = orthogonal_rotation(&flip, 1, 0, &params).unwrap();
        assert!(r.order_reversing);
        assert!(r.interval[0] <= 1e-12 && r.interval[1] >= -1e-12);
        assert_eq!(r.rational_verdict, RationalVerdict::Rational(0, 1));
        assert_eq!(
            orthogonal_rotation(&flip, 1, 1, &params).unwrap_err(),
            Error::ClassNotPreserved
        );
    }
}
