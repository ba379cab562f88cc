//! Torus homeomorphisms given by a lift `F: ℝ² → ℝ²` with
//! `F(z + v) = F(z) + M v` for the homology matrix `M`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::denjoy::DenjoyBase;
use crate::error::{Error, Result};
use crate::lattice::Mat2;

pub type Point = [f64; 2];

/// A lift as a closure; used by the `custom` family.
pub type LiftFn = Arc<dyn Fn(Point) -> Point + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum MapFamily {
    Translation,
    LinearToral,
    DehnTwistPlus,
    SkewShear,
    DenjoyProduct,
    Custom,
}

impl MapFamily {
    pub fn name(self) -> &'static str {
        match self {
            MapFamily::Translation => "translation",
            MapFamily::LinearToral => "linearToral",
            MapFamily::DehnTwistPlus => "dehnTwistPlus",
            MapFamily::SkewShear => "skewShear",
            MapFamily::DenjoyProduct => "denjoyProduct",
            MapFamily::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            MapFamily::Translation,
            MapFamily::LinearToral,
            MapFamily::DehnTwistPlus,
            MapFamily::SkewShear,
            MapFamily::DenjoyProduct,
            MapFamily::Custom,
        ]
        .into_iter()
        .find(|f| f.name() == s)
    }
}

#[derive(Clone)]
enum Kind {
    Translation,
    Linear,
    DehnTwist,
    Shear,
    Denjoy(Arc<DenjoyBase>),
    Custom { lift: LiftFn, inverse: Option<LiftFn> },
}

/// A torus map family with its parameters.
#[derive(Clone)]
pub struct TorusMapSpec {
    family: MapFamily,
    kind: Kind,
    alpha: f64,
    beta: f64,
    eps: f64,
    matrix: Mat2,
}

impl fmt::Debug for TorusMapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusMapSpec")
            .field("family", &self.family)
            .field("alpha", &self.alpha)
            .field("beta", &self.beta)
            .field("eps", &self.eps)
            .field("matrix", &self.matrix)
            .finish()
    }
}

impl TorusMapSpec {
    fn build(family: MapFamily, kind: Kind, alpha: f64, beta: f64, eps: f64, matrix: Mat2) -> Self {
        TorusMapSpec {
            family,
            kind,
            alpha,
            beta,
            eps,
            matrix,
        }
    }

    /// `(x, y) ↦ (x + α, y + β)`.
    pub fn translation(alpha: f64, beta: f64) -> Self {
        Self::build(
            MapFamily::Translation,
            Kind::Translation,
            alpha,
            beta,
            0.0,
            Mat2::IDENTITY,
        )
    }

    /// `z ↦ M z + (α, β)`.
    pub fn linear_toral(matrix: Mat2, alpha: f64, beta: f64) -> Result<Self> {
        if !matrix.is_unimodular() {
            return Err(Error::InvalidInput(format!("matrix {matrix} is not unimodular")));
        }
        Ok(Self::build(
            MapFamily::LinearToral,
            Kind::Linear,
            alpha,
            beta,
            0.0,
            matrix,
        ))
    }

    /// `(x, y) ↦ (x + y + α + ε sin 2πy, y + β)`.
    pub fn dehn_twist_plus(alpha: f64, beta: f64, eps: f64) -> Self {
        Self::build(
            MapFamily::DehnTwistPlus,
            Kind::DehnTwist,
            alpha,
            beta,
            eps,
            Mat2::new(1, 1, 0, 1),
        )
    }

    /// `(x, y) ↦ (x + α + ε sin²(πy), y + β)`.
    pub fn skew_shear(alpha: f64, beta: f64, eps: f64) -> Self {
        Self::build(MapFamily::SkewShear, Kind::Shear, alpha, beta, eps, Mat2::IDENTITY)
    }

    /// `(x, y) ↦ (G(x), y + β)` for a Denjoy base map `G`.
    pub fn denjoy_product(base: DenjoyBase, beta: f64) -> Self {
        let alpha = base.alpha();
        Self::build(
            MapFamily::DenjoyProduct,
            Kind::Denjoy(Arc::new(base)),
            alpha,
            beta,
            0.0,
            Mat2::IDENTITY,
        )
    }

    /// A lift given as a closure; the caller vouches for `F(z + v) = F(z) + M v`.
    pub fn custom(matrix: Mat2, lift: LiftFn, inverse: Option<LiftFn>) -> Result<Self> {
        if !matrix.is_unimodular() {
            return Err(Error::InvalidInput(format!("matrix {matrix} is not unimodular")));
        }
        Ok(Self::build(
            MapFamily::Custom,
            Kind::Custom { lift, inverse },
            0.0,
            0.0,
            0.0,
            matrix,
        ))
    }

    pub fn family(&self) -> MapFamily {
        self.family
    }

    pub fn homology(&self) -> Mat2 {
        self.matrix
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn denjoy_base(&self) -> Option<&DenjoyBase> {
        match &self.kind {
            Kind::Denjoy(b) => Some(b),
            _ => None,
        }
    }

    pub fn eval_lift(&self, z: Point) -> Point {
        let [x, y] = z;
        match &self.kind {
            Kind::Translation => [x + self.alpha, y + self.beta],
            Kind::Linear => {
                let w = self.matrix.apply_f64(z);
                [w[0] + self.alpha, w[1] + self.beta]
            }
            Kind::DehnTwist => [x + y + self.alpha + self.eps * (2.0 * PI * y).sin(), y + self.beta],
            Kind::Shear => {
                let s = (PI * y).sin();
                [x + self.alpha + self.eps * s * s, y + self.beta]
            }
            Kind::Denjoy(b) => [b.eval(x), y + self.beta],
            Kind::Custom { lift, .. } => lift(z),
        }
    }

    /// The map on the torus, with both coordinates reduced to `[0, 1)`.
    pub fn eval_torus(&self, z: Point) -> Point {
        let w = self.eval_lift(z);
        [wrap_unit(w[0]), wrap_unit(w[1])]
    }

    /// Lift of the inverse map, when the family provides one.
    pub fn inverse(&self) -> Option<TorusMapSpec> {
        let inv_m = self.matrix.inverse()?;
        let (a, b, e) = (self.alpha, self.beta, self.eps);
        let lift: LiftFn = match &self.kind {
            Kind::Translation => Arc::new(move |[x, y]: Point| [x - a, y - b]),
            Kind::Linear => Arc::new(move |[x, y]: Point| inv_m.apply_f64([x - a, y - b])),
            Kind::DehnTwist => Arc::new(move |[x, y]: Point| {
                let y0 = y - b;
                [x - y0 - a - e * (2.0 * PI * y0).sin(), y0]
            }),
            Kind::Shear => Arc::new(move |[x, y]: Point| {
                let y0 = y - b;
                let s = (PI * y0).sin();
                [x - a - e * s * s, y0]
            }),
            Kind::Denjoy(base) => {
                let base = base.clone();
                Arc::new(move |[x, y]: Point| [base.eval_inverse(x), y - b])
            }
            Kind::Custom { lift, inverse } => {
                let inv = inverse.clone()?;
                let fwd = lift.clone();
                return Some(Self::build(
                    MapFamily::Custom,
                    Kind::Custom {
                        lift: inv,
                        inverse: Some(fwd),
                    },
                    0.0,
                    0.0,
                    0.0,
                    inv_m,
                ));
            }
        };
        let fwd = self.clone();
        let back: LiftFn = Arc::new(move |z| fwd.eval_lift(z));
        Some(Self::build(
            MapFamily::Custom,
            Kind::Custom {
                lift,
                inverse: Some(back),
            },
            0.0,
            0.0,
            0.0,
            inv_m,
        ))
    }

    /// Largest `|F(z + v) − F(z) − M v|` over the given probes.
    pub fn equivariance_defect(&self, probes: &[(Point, [i64; 2])]) -> f64 {
        probes
            .iter()
            .map(|&(z, v)| {
                let zv = [z[0] + v[0] as f64, z[1] + v[1] as f64];
                let a = self.eval_lift(zv);
                let b = self.eval_lift(z);
                let mv = self.matrix.apply_f64([v[0] as f64, v[1] as f64]);
                (a[0] - b[0] - mv[0]).abs().max((a[1] - b[1] - mv[1]).abs())
            })
            .fold(0.0, f64::max)
    }
}

pub fn eval_lift(map: &TorusMapSpec, z: Point) -> Point {
    map.eval_lift(z)
}

pub(crate) fn wrap_unit(v: f64) -> f64 {
    let r = v.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lift_examples() {
        let t = TorusMapSpec::translation(0.25, 0.5);
        assert_eq!(t.eval_lift([0.0, 0.0]), [0.25, 0.5]);
        let cat = TorusMapSpec::linear_toral(Mat2::new(2, 1, 1, 1), 0.0, 0.0).unwrap();
        assert_eq!(cat.eval_lift([0.5, 0.5]), [1.5, 1.0]);
        let d = cat.eval_lift([1.3, 0.2]);
        let e = cat.eval_lift([0.3, 0.2]);
        assert!((d[0] - e[0] - 2.0).abs() < 1e-12 && (d[1] - e[1] - 1.0).abs() < 1e-12);
        assert!(TorusMapSpec::linear_toral(Mat2::new(2, 0, 0, 1), 0.0, 0.0).is_err());
    }

    #[test]
    fn inverses_undo_the_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let maps = [
            TorusMapSpec::translation(0.3, 0.7),
            TorusMapSpec::linear_toral(Mat2::new(2, 1, 1, 1), 0.1, 0.2).unwrap(),
            TorusMapSpec::dehn_twist_plus(0.1, 0.3, 0.05),
            TorusMapSpec::skew_shear(0.2, 0.1, 0.5),
        ];
        for m in &maps {
            let inv = m.inverse().unwrap();
            assert_eq!(inv.homology(), m.homology().inverse().unwrap());
            for _ in 0..100 {
                let z = [rng.gen::<f64>() * 4.0 - 2.0, rng.gen::<f64>() * 4.0 - 2.0];
                let back = inv.eval_lift(m.eval_lift(z));
                assert!((back[0] - z[0]).abs() < 1e-9 && (back[1] - z[1]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in [
            "translation",
            "linearToral",
            "dehnTwistPlus",
            "skewShear",
            "denjoyProduct",
            "custom",
        ] {
            assert_eq!(MapFamily::parse(f).unwrap().name(), f);
        }
        assert!(MapFamily::parse("anosov").is_none());
    }
}
