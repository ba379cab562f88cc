//! Classification of a minimal set from its raster: the shape of the
//! complement (all disks, annuli plus disks, or one doubly essential
//! component plus disks) and the finer case of types 2 and 3.

pub mod cantor;
pub mod quotient;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::circloid::{annulus_chart, circloid_upper_frontier, StripSet};
use crate::dynamics::orbit::{component_dynamics, image_raster, is_invariant, minimality_check, Behavior};
use crate::dynamics::rotation::{orthogonal_rotation, rationality_test, rotation_set_estimate};
use crate::dynamics::{ComponentVerdict, OrthogonalRotation, RationalVerdict, RotationParams, TorusMapSpec};
use crate::error::{Error, Result};
use crate::fill::fill_torus;
use crate::grid::{complement, connected_components, directed_hausdorff, GridResolution, TorusGridSet};
use crate::homotopy::{census_with_labels, set_homotopy_census, CensusEntry, HomotopyType};
use crate::lattice::Mat2;

pub use cantor::cantor_cross_section;
pub use quotient::{
    coarsening_source, default_ladder, moore_quotient, periodic_vs_cantor, LadderEvidence, LadderRung, LadderVerdict,
    MooreQuotient,
};

/// Shape of the complement of a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComplementShape {
    WholeTorus,
    Type1,
    Type2(i64, i64),
    Type3,
}

/// Reads the complement census: a doubly essential component makes type 3,
/// essential ones type 2, and only disks type 1.
pub fn classify_complement(m: &TorusGridSet) -> Result<ComplementShape> {
    if m.is_empty() {
        return Err(Error::Precondition("empty set".into()));
    }
    if m.is_full() {
        return Ok(ComplementShape::WholeTorus);
    }
    shape_of_census(&set_homotopy_census(&complement(m))?)
}

fn shape_of_census(census: &[CensusEntry]) -> Result<ComplementShape> {
    let doubly = census
        .iter()
        .filter(|e| e.homotopy == HomotopyType::DoublyEssential)
        .count();
    let mut essential = census.iter().filter_map(|e| e.homotopy.vector());
    if doubly > 1 {
        return Err(Error::CensusContradiction(format!(
            "{doubly} doubly essential components"
        )));
    }
    if doubly == 1 {
        if let Some(v) = essential.next() {
            return Err(Error::CensusContradiction(format!(
                "doubly essential component beside an essential ({},{}) one",
                v[0], v[1]
            )));
        }
        return Ok(ComplementShape::Type3);
    }
    match essential.next() {
        None => Ok(ComplementShape::Type1),
        Some(v) => match essential.find(|w| *w != v) {
            Some(w) => Err(Error::CensusContradiction(format!(
                "essential components of types ({},{}) and ({},{})",
                v[0], v[1], w[0], w[1]
            ))),
            None => Ok(ComplementShape::Type2(v[0], v[1])),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Type2Case {
    PeriodicCircloid,
    IrrationalSemiconjugacy,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Type3Case {
    PeriodicOrbitExtension(usize),
    CantorExtension,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimalSetClass {
    WholeTorus,
    Type1,
    Type2 { case: Type2Case, homotopy: [i64; 2] },
    Type3 { case: Type3Case },
}

impl MinimalSetClass {
    pub fn tag(&self) -> &'static str {
        match self {
            MinimalSetClass::WholeTorus => "WholeTorus",
            MinimalSetClass::Type1 => "Type1",
            MinimalSetClass::Type2 { .. } => "Type2",
            MinimalSetClass::Type3 { .. } => "Type3",
        }
    }

    pub fn subcase(&self) -> Option<String> {
        match self {
            MinimalSetClass::Type2 { case, .. } => Some(format!("{case:?}")),
            MinimalSetClass::Type3 {
                case: Type3Case::PeriodicOrbitExtension(k),
            } => Some(format!("PeriodicOrbitExtension({k})")),
            MinimalSetClass::Type3 { case } => Some(format!("{case:?}")),
            _ => None,
        }
    }

    pub fn homotopy(&self) -> Option<[i64; 2]> {
        match self {
            MinimalSetClass::Type2 { homotopy, .. } => Some(*homotopy),
            _ => None,
        }
    }
}

impl fmt::Display for MinimalSetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.subcase(), self.homotopy()) {
            (Some(s), Some([p, q])) => write!(f, "{} {s} ({p},{q})", self.tag()),
            (Some(s), None) => write!(f, "{} {s}", self.tag()),
            _ => write!(f, "{}", self.tag()),
        }
    }
}

impl Serialize for MinimalSetClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifyParams {
    /// Horizon for tracking complementary components.
    pub horizon: usize,
    pub minimality_eps: f64,
    pub minimality_horizon: usize,
    pub minimality_probes: usize,
    pub rotation: RotationParams,
    /// Samples and iterations for the rotation-set cross-check.
    pub rotation_set_samples: usize,
    pub rotation_set_iter: usize,
    /// Ladder resolutions; `None` means `n/4, n/2, n`.
    pub ladder: Option<Vec<usize>>,
    pub nonwandering: bool,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        ClassifyParams {
            horizon: 200,
            minimality_eps: 0.1,
            minimality_horizon: 10_000,
            minimality_probes: 8,
            rotation: RotationParams::default(),
            rotation_set_samples: 64,
            rotation_set_iter: 10_000,
            ladder: None,
            nonwandering: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RotationSetSummary {
    pub hull: Vec<[f64; 2]>,
    pub area: f64,
    pub diameter: f64,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RotationEvidence {
    pub orthogonal: Option<OrthogonalRotation>,
    /// Hausdorff distance between the set and the orbit of the circloid
    /// boundary, in cells.
    pub circloid_coverage: Option<f64>,
    pub rotation_set: Option<RotationSetSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub class: MinimalSetClass,
    pub subcase: Option<String>,
    pub homotopy: Option<[i64; 2]>,
    pub census: Vec<CensusEntry>,
    pub component_verdicts: Vec<ComponentVerdict>,
    pub rotation: Option<RotationEvidence>,
    pub quotient_ladder: Option<LadderEvidence>,
    pub caveats: Vec<String>,
    pub params: ClassifyParams,
    /// Body of the extracted circloid, projected to the torus.
    #[serde(skip)]
    pub circloid: Option<TorusGridSet>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub const UNBOUNDED_DISK_CAVEAT: &str = "trivial complementary components are represented as bounded disks; \
     unbounded disks cannot be seen at finite resolution";

/// Largest gap, in cells, between the set and the orbit of its circloid
/// boundary that still counts as coverage.
pub const COVERAGE_CELLS: f64 = std::f64::consts::SQRT_2;

/// The source a ladder draws its rasters from.
pub type LadderSource<'a> = &'a (dyn Fn(GridResolution) -> Result<TorusGridSet> + Sync);

/// Runs the classification pipeline on `m`. The ladder for type 3 draws from
/// `ladder_source` when given and otherwise coarsens `m`.
pub fn classify_minimal_set(
    map: &TorusMapSpec,
    m: &TorusGridSet,
    params: &ClassifyParams,
    ladder_source: Option<LadderSource<'_>>,
) -> Result<ClassificationReport> {
    if m.is_empty() {
        return Err(Error::Precondition("empty set".into()));
    }
    if !is_invariant(map, m) {
        return Err(Error::Precondition("set is not invariant within one cell".into()));
    }
    let mut caveats = vec![UNBOUNDED_DISK_CAVEAT.to_string()];
    let cert = minimality_check(
        map,
        m,
        params.minimality_probes,
        params.minimality_horizon,
        params.minimality_eps,
    )?;
    caveats.push(format!(
        "minimality {} approximately: {} probes, horizon {}, eps {}, worst deficit {:.6}",
        if cert.passed { "certified" } else { "NOT certified" },
        cert.probes.len(),
        cert.horizon,
        cert.eps,
        cert.max_deficit
    ));

    let comp = complement(m);
    let labels = connected_components(&comp);
    let census = census_with_labels(&comp, &labels)?;
    let shape = if m.is_full() {
        ComplementShape::WholeTorus
    } else {
        shape_of_census(&census)?
    };
    let component_verdicts = component_dynamics(map, m, params.horizon)?;
    if !component_verdicts.is_empty() {
        caveats.push(format!("wandering means wandering up to horizon {}", params.horizon));
    }

    let mut rotation = None;
    let mut quotient_ladder = None;
    let mut circloid = None;
    let class = match shape {
        ComplementShape::WholeTorus => MinimalSetClass::WholeTorus,
        ComplementShape::Type1 => {
            forbid_periodic_disks(&component_verdicts, "type 1")?;
            MinimalSetClass::Type1
        }
        ComplementShape::Type2(p, q) => {
            forbid_periodic_disks(&component_verdicts, "type 2")?;
            let rot = orthogonal_rotation(map, p, q, &params.rotation)?;
            caveats.push(format!(
                "rationality judged at tolerance {} with denominators up to {}",
                params.rotation.tol, params.rotation.max_denominator
            ));
            let mut coverage = None;
            let case = match rot.rational_verdict {
                RationalVerdict::Rational(_, b) => {
                    let (body, cov) = circloid_orbit_coverage(map, m, [p, q], b as usize)?;
                    if cov > COVERAGE_CELLS + 1e-9 {
                        return Err(Error::TheoremViolation(format!(
                            "circloid boundary orbit misses the set by {cov:.3} cells"
                        )));
                    }
                    coverage = Some(cov);
                    circloid = Some(body);
                    Type2Case::PeriodicCircloid
                }
                RationalVerdict::Irrational => {
                    if let Some(c) = component_verdicts.iter().find(|c| c.behavior != Behavior::Wandering) {
                        return Err(Error::TheoremViolation(format!(
                            "component {} is periodic under an irrational orthogonal rotation",
                            c.component
                        )));
                    }
                    Type2Case::IrrationalSemiconjugacy
                }
                RationalVerdict::Undecided => {
                    caveats.push("orthogonal rotation number neither clearly rational nor irrational".into());
                    Type2Case::Undecided
                }
            };
            rotation = Some(RotationEvidence {
                orthogonal: Some(rot),
                circloid_coverage: coverage,
                rotation_set: None,
            });
            MinimalSetClass::Type2 { case, homotopy: [p, q] }
        }
        ComplementShape::Type3 => {
            let ladder: Vec<GridResolution> = match &params.ladder {
                Some(l) => l.iter().map(|&n| GridResolution::new(n)).collect::<Result<_>>()?,
                None => default_ladder(m.resolution()),
            };
            let coarse = coarsening_source(m);
            let source: LadderSource<'_> = ladder_source.unwrap_or(&coarse);
            let ev = periodic_vs_cantor(map, source, &ladder)?;
            caveats.push(format!(
                "periodic-versus-Cantor judged on a resolution ladder {:?}",
                ladder.iter().map(|r| r.n()).collect::<Vec<_>>()
            ));
            let case = match ev.verdict {
                LadderVerdict::PeriodicOrbitExtension(k) => Type3Case::PeriodicOrbitExtension(k),
                LadderVerdict::CantorExtension => Type3Case::CantorExtension,
                LadderVerdict::Undecided => Type3Case::Undecided,
            };
            quotient_ladder = Some(ev);
            MinimalSetClass::Type3 { case }
        }
    };

    cross_checks(map, &class, params, &mut rotation, &mut caveats)?;
    let mut report = ClassificationReport {
        class,
        subcase: class.subcase(),
        homotopy: class.homotopy(),
        census,
        component_verdicts,
        rotation,
        quotient_ladder,
        caveats,
        params: params.clone(),
        circloid,
    };
    if let Some(r) = nonwandering_refine(&report, m, params.nonwandering) {
        report.caveats.push(format!("non-wandering refinement: {r}"));
    }
    Ok(report)
}

fn forbid_periodic_disks(verdicts: &[ComponentVerdict], kind: &str) -> Result<()> {
    match verdicts
        .iter()
        .find(|c| c.homotopy == HomotopyType::Trivial && matches!(c.behavior, Behavior::Periodic(_)))
    {
        Some(c) => Err(Error::TheoremViolation(format!(
            "bounded disk {} is periodic in a {kind} complement",
            c.component
        ))),
        None => Ok(()),
    }
}

/// Lifts an essential component of `m` into the strip, takes its upper
/// circloid, and compares the orbit of the circloid's boundary over `period`
/// steps with `m`. Returns the circloid body on the torus and the Hausdorff
/// distance in cells.
fn circloid_orbit_coverage(
    map: &TorusMapSpec,
    m: &TorusGridSet,
    v: [i64; 2],
    period: usize,
) -> Result<(TorusGridSet, f64)> {
    let chart = annulus_chart(v[0], v[1])?;
    let labels = connected_components(m);
    let census = census_with_labels(m, &labels)?;
    let fits = |t: HomotopyType| t == HomotopyType::Essential(v[0], v[1]) || t == HomotopyType::Essential(-v[0], -v[1]);
    let comp = census
        .iter()
        .find(|e| fits(e.homotopy))
        .ok_or_else(|| Error::Precondition(format!("no component of the set has type ({},{})", v[0], v[1])))?;
    let strip = StripSet::from_torus_component(&labels.component(m, comp.component), chart)?;
    let c = circloid_upper_frontier(&strip)?;
    let body = c.body.to_torus();
    let mut orbit = c.body.boundary().to_torus();
    let mut step = orbit.clone();
    for _ in 1..period.max(1) {
        step = image_raster(map, &step);
        orbit = orbit.union(&step);
    }
    let n = m.n() as f64;
    let d = directed_hausdorff(m, &orbit)?.max(directed_hausdorff(&orbit, m)?) * n;
    Ok((body, d))
}

fn cross_checks(
    map: &TorusMapSpec,
    class: &MinimalSetClass,
    params: &ClassifyParams,
    rotation: &mut Option<RotationEvidence>,
    caveats: &mut Vec<String>,
) -> Result<()> {
    let is_type3 = matches!(class, MinimalSetClass::Type3 { .. });
    let trace = map.homology().trace();
    if map.homology().det() == 1 && trace.abs() > 2 && !is_type3 {
        caveats.push(format!(
            "CROSS-CHECK: homology has trace {trace}, so every minimal set should be type 3; verdict is {}",
            class.tag()
        ));
    }
    if map.homology() != Mat2::IDENTITY {
        return Ok(());
    }
    let est = rotation_set_estimate(map, params.rotation_set_samples, params.rotation_set_iter)?;
    let slack = 10.0 / params.rotation_set_iter as f64;
    if est.area > 1e-4 && !is_type3 {
        caveats.push(format!(
            "CROSS-CHECK: rotation set has interior (area {:.3e}), so minimal sets should be type 3; verdict is {}",
            est.area,
            class.tag()
        ));
    }
    if est.diameter < slack {
        let rho = est.samples[0];
        let combos = [rho[0], rho[1], rho[0] + rho[1], rho[0] - rho[1]];
        let irrational = combos.iter().all(|&x| {
            !matches!(
                rationality_test(x.rem_euclid(1.0), 20, slack),
                RationalVerdict::Rational(..)
            )
        });
        let cantor = matches!(
            class,
            MinimalSetClass::Type3 {
                case: Type3Case::CantorExtension
            }
        );
        // Only binding for non-wandering maps.
        if irrational && !cantor && params.nonwandering {
            caveats.push(format!(
                "CROSS-CHECK: looks like a non-wandering totally irrational pseudo-rotation with vector \
                 ({:.6}, {:.6}); expected a Cantor extension, verdict is {}",
                rho[0], rho[1], class
            ));
        }
    }
    let summary = RotationSetSummary {
        hull: est.hull.clone(),
        area: est.area,
        diameter: est.diameter,
        max_deviation: est.max_deviation,
    };
    match rotation {
        Some(r) => r.rotation_set = Some(summary),
        None => {
            *rotation = Some(RotationEvidence {
                orthogonal: None,
                circloid_coverage: None,
                rotation_set: Some(summary),
            })
        }
    }
    Ok(())
}

/// Case names under the extra assumption that the map is non-wandering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonwanderingCase {
    /// A periodic orbit of points.
    PeriodicOrbit(usize),
    /// The orbit of a periodic circloid.
    CircloidOrbit,
    /// A Cantor extension whose set components are all non-separating.
    CantorNonSeparating,
    /// The refinement needs evidence the report does not hold.
    Unresolved(String),
    Inconsistent(String),
}

impl fmt::Display for NonwanderingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonwanderingCase::PeriodicOrbit(k) => write!(f, "(1nw) periodic orbit of period {k}"),
            NonwanderingCase::CircloidOrbit => write!(f, "(2nw) orbit of a periodic circloid"),
            NonwanderingCase::CantorNonSeparating => {
                write!(f, "(3nw) Cantor extension with non-separating components")
            }
            NonwanderingCase::Unresolved(s) => write!(f, "unresolved: {s}"),
            NonwanderingCase::Inconsistent(s) => write!(f, "inconsistent with non-wandering: {s}"),
        }
    }
}

/// Refines the verdict when the map is assumed non-wandering; `None` when the
/// assumption is off or says nothing about the class.
pub fn nonwandering_refine(report: &ClassificationReport, m: &TorusGridSet, assumed: bool) -> Option<NonwanderingCase> {
    if !assumed {
        return None;
    }
    Some(match report.class {
        MinimalSetClass::WholeTorus => return None,
        MinimalSetClass::Type1 => NonwanderingCase::Inconsistent(
            "non-wandering maps have no type 1 proper minimal sets at this resolution".into(),
        ),
        MinimalSetClass::Type2 {
            case: Type2Case::PeriodicCircloid,
            ..
        } => NonwanderingCase::CircloidOrbit,
        MinimalSetClass::Type2 { .. } => NonwanderingCase::Inconsistent(
            "a type 2 minimal set of a non-wandering map is the orbit of a periodic circloid".into(),
        ),
        MinimalSetClass::Type3 {
            case: Type3Case::PeriodicOrbitExtension(k),
        } => {
            let labels = connected_components(m);
            let points = labels.count() == k && labels.sizes().iter().all(|&s| s <= 4);
            if points {
                NonwanderingCase::PeriodicOrbit(k)
            } else {
                NonwanderingCase::Unresolved("set classes are not points; a circloid-orbit check is needed".into())
            }
        }
        MinimalSetClass::Type3 {
            case: Type3Case::CantorExtension,
        } => {
            let labels = connected_components(m);
            let separating = (0..labels.count()).find(|&c| {
                let piece = labels.component(m, c);
                match fill_torus(&piece, true) {
                    Ok(f) => !f.filled.same_cells(&piece),
                    Err(_) => true,
                }
            });
            match separating {
                None => NonwanderingCase::CantorNonSeparating,
                Some(c) => NonwanderingCase::Inconsistent(format!("component {c} separates the torus")),
            }
        }
        MinimalSetClass::Type3 {
            case: Type3Case::Undecided,
        } => NonwanderingCase::Unresolved("ladder verdict undecided".into()),
    })
}
