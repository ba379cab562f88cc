//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
//! Runs without the libtest harness so the lines are always printed.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use torus_minimal::classify::{
    cantor_cross_section, classify_minimal_set, periodic_vs_cantor, ClassifyParams, LadderSource, LadderVerdict,
    MinimalSetClass, Type2Case, Type3Case,
};
use torus_minimal::dynamics::rotation::polygon_hausdorff;
use torus_minimal::dynamics::{
    denjoy_product_set, orbit_closure_raster, rotation_set_estimate, Behavior, RationalVerdict, TorusMapSpec,
};
use torus_minimal::grid::{Adjacency, GridResolution, TorusGridSet};
use torus_minimal::homotopy::HomotopyType;
use torus_minimal::lattice::Mat2;
use torus_minimal::properties::{
    circloid_suite, disk_complement_suite, fill_suite, holonomy_suite, trivial_continuum_suite, SuiteOutcome,
    CIRCLOID_TRIALS, CONTINUUM_TRIALS, DISK_TRIALS, FILL_TRIALS, HOLONOMY_TRIALS,
};

const GOLDEN: f64 = 0.618_033_988_749_894_9;
const SQRT2_M1: f64 = 0.414_213_562_373_095_1;

const ANOSOV_BUDGET: Duration = Duration::from_secs(10);
const ROTATION_SET_BUDGET: Duration = Duration::from_secs(5);
const CIRCLE_ROTATION_TOL: f64 = 1e-6;
const COVERAGE_CELLS: f64 = 1.0;
const DENJOY_ROTATION_TOL: f64 = 1e-3;
const DENJOY_MAX_DENOMINATOR: i64 = 100;
const DENJOY_ANNULI: usize = 129;
const TRANSLATION_HULL_DIAMETER: f64 = 1e-9;
const SHEAR_HULL_HAUSDORFF: f64 = 1e-3;
const SUITE_SEED: u64 = 0;

fn res(n: usize) -> GridResolution {
    GridResolution::new(n).unwrap()
}

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn anosov() -> Outcome {
    let start = Instant::now();
    let map = TorusMapSpec::linear_toral(Mat2::new(2, 1, 1, 1), 0.0, 0.0).map_err(|e| e.to_string())?;
    let n = res(256);
    let m = TorusGridSet::from_cells(n, Adjacency::EIGHT, [(0, 0)]);
    let r = classify_minimal_set(&map, &m, &ClassifyParams::default(), None).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    check(
        r.class
            == MinimalSetClass::Type3 {
                case: Type3Case::PeriodicOrbitExtension(1),
            }
            && t < ANOSOV_BUDGET,
        format!("{} in {t:.2?}", r.class),
    )
}

fn invariant_circle() -> Outcome {
    let map = TorusMapSpec::translation(GOLDEN, 0.0);
    let m = TorusGridSet::from_fn(res(256), Adjacency::EIGHT, |_, j| j == 0);
    let mut params = ClassifyParams::default();
    params.rotation.tol = CIRCLE_ROTATION_TOL;
    let r = classify_minimal_set(&map, &m, &params, None).map_err(|e| e.to_string())?;
    let rot = r.rotation.as_ref().ok_or("no rotation evidence")?;
    let orth = rot.orthogonal.as_ref().ok_or("no orthogonal rotation")?;
    let coverage = rot.circloid_coverage.ok_or("no coverage")?;
    check(
        r.class
            == MinimalSetClass::Type2 {
                case: Type2Case::PeriodicCircloid,
                homotopy: [1, 0],
            }
            && orth.rational_verdict == RationalVerdict::Rational(0, 1)
            && coverage <= COVERAGE_CELLS,
        format!(
            "{} {:?}, {}, coverage {coverage:.3} cells",
            r.class, r.homotopy, orth.rational_verdict
        ),
    )
}

fn denjoy() -> Outcome {
    let d = denjoy_product_set(GOLDEN, SQRT2_M1, 0.5, 64, res(1024)).map_err(|e| e.to_string())?;
    let mut params = ClassifyParams::default();
    params.rotation.max_denominator = DENJOY_MAX_DENOMINATOR;
    let r = classify_minimal_set(&d.map, &d.set, &params, None).map_err(|e| e.to_string())?;
    let annuli = r
        .census
        .iter()
        .filter(|e| e.homotopy == HomotopyType::Essential(0, 1))
        .count();
    let wandering = r.component_verdicts.iter().all(|c| c.behavior == Behavior::Wandering);
    let orth = r
        .rotation
        .as_ref()
        .and_then(|x| x.orthogonal.as_ref())
        .ok_or("no orthogonal rotation")?;
    // The (0,1) chart reverses the x axis, so the value may come out as 1 − α.
    let err = (orth.value - GOLDEN).abs().min((1.0 - orth.value - GOLDEN).abs());
    check(
        r.class
            == MinimalSetClass::Type2 {
                case: Type2Case::IrrationalSemiconjugacy,
                homotopy: [0, 1],
            }
            && r.census.len() == DENJOY_ANNULI
            && annuli == DENJOY_ANNULI
            && wandering
            && err < DENJOY_ROTATION_TOL
            && orth.rational_verdict == RationalVerdict::Irrational,
        format!(
            "{} {:?}, {annuli}/{} Essential(0,1), all wandering: {wandering}, rotation {:.6} (off by {err:.2e}), {}",
            r.class,
            r.homotopy,
            r.census.len(),
            orth.value,
            orth.rational_verdict
        ),
    )
}

fn rotation_sets() -> Outcome {
    let start = Instant::now();
    let t = TorusMapSpec::translation(GOLDEN, SQRT2_M1);
    let est = rotation_set_estimate(&t, 1024, 10_000).map_err(|e| e.to_string())?;
    let t_time = start.elapsed();
    let off = est
        .samples
        .iter()
        .map(|s| (s[0] - GOLDEN).abs().max((s[1] - SQRT2_M1).abs()))
        .fold(0.0, f64::max);

    let start = Instant::now();
    let shear = TorusMapSpec::skew_shear(0.0, 0.0, 0.5);
    let sh = rotation_set_estimate(&shear, 1024, 10_000).map_err(|e| e.to_string())?;
    let s_time = start.elapsed();
    let h = polygon_hausdorff(&sh.hull, &[[0.0, 0.0], [0.5, 0.0]]);
    check(
        est.diameter < TRANSLATION_HULL_DIAMETER
            && off < TRANSLATION_HULL_DIAMETER
            && h < SHEAR_HULL_HAUSDORFF
            && t_time < ROTATION_SET_BUDGET
            && s_time < ROTATION_SET_BUDGET,
        format!(
            "translation diameter {:.1e} offset {off:.1e} in {t_time:.2?}; shear Hausdorff {h:.1e} in {s_time:.2?}",
            est.diameter
        ),
    )
}

fn suite(o: SuiteOutcome) -> Outcome {
    let line = format!("{}: {} trials, {} violations", o.name, o.trials, o.violations);
    match o.first_failure {
        Some(f) if o.violations > 0 => Err(format!("{line}; {f}")),
        _ => Ok(line),
    }
}

fn ladder() -> Outcome {
    let t = TorusMapSpec::translation(1.0 / 3.0, 0.0);
    let source = |r: GridResolution| Ok(orbit_closure_raster(&t, [0.0, 0.0], r, 64, 4, 10_000).set);
    let m = source(res(256)).map_err(|e: torus_minimal::Error| e.to_string())?;
    let params = ClassifyParams {
        ladder: Some(vec![64, 128, 256]),
        ..ClassifyParams::default()
    };
    let r = classify_minimal_set(&t, &m, &params, Some(&source as LadderSource<'_>)).map_err(|e| e.to_string())?;

    let id = TorusMapSpec::translation(0.0, 0.0);
    let ev =
        periodic_vs_cantor(&id, &cantor_cross_section, &[res(64), res(128), res(256)]).map_err(|e| e.to_string())?;
    let counts: Vec<usize> = ev.rungs.iter().map(|x| x.m_classes).collect();
    check(
        r.class
            == MinimalSetClass::Type3 {
                case: Type3Case::PeriodicOrbitExtension(3),
            }
            && counts == [4, 16, 64]
            && ev.verdict == LadderVerdict::CantorExtension,
        format!("period 3: {}; Cantor counts {counts:?}: {:?}", r.class, ev.verdict),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let configs = [
        ("cat", "command=simulate\nfamily=linearToral\nmatrix=2,1,1,1\nn=256\n"),
        (
            "circle",
            "command=simulate\nfamily=translation\nalpha=0.6180339887498949\nbeta=0\nn=128\n",
        ),
        (
            "shear",
            "command=rotation-set\nfamily=skewShear\nalpha=0\nbeta=0\neps=0.5\nn_samples=256\nn_iter=2000\n",
        ),
    ];
    let mut lines = Vec::new();
    for (name, text) in configs {
        let cfg = dir.path().join(format!("{name}.cfg"));
        std::fs::write(&cfg, text).map_err(|e| e.to_string())?;
        let mut reports = Vec::new();
        for threads in [1, 8] {
            let out = dir.path().join(format!("{name}-{threads}"));
            reports.push(run_cli(&cfg, &out, threads)?);
        }
        if reports[0] != reports[1] {
            return Err(format!("{name}: report.json differs between 1 and 8 threads"));
        }
        lines.push(format!("{name} {} bytes", reports[0].len()));
    }
    Ok(format!("identical with 1 and 8 threads: {}", lines.join(", ")))
}

fn run_cli(cfg: &Path, out: &Path, threads: usize) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_torus-minimal"))
        .args(["--config".as_ref(), cfg.as_os_str(), "--out".as_ref(), out.as_os_str()])
        .args(["--threads", &threads.to_string(), "--no-cache"])
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            status.status.code(),
            String::from_utf8_lossy(&status.stderr)
        ));
    }
    std::fs::read(out.join("report.json")).map_err(|e| e.to_string())
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("anosov fixed point is type 3", Box::new(anosov)),
        ("invariant circle is a periodic circloid", Box::new(invariant_circle)),
        ("Denjoy product is an irrational semiconjugacy", Box::new(denjoy)),
        ("rotation-set fidelity", Box::new(rotation_sets)),
        (
            "fill properties",
            Box::new(|| suite(fill_suite(SUITE_SEED, FILL_TRIALS))),
        ),
        (
            "disjoint disks leave a connected complement",
            Box::new(|| suite(disk_complement_suite(SUITE_SEED, DISK_TRIALS))),
        ),
        (
            "trivial continua have one doubly essential complement",
            Box::new(|| suite(trivial_continuum_suite(SUITE_SEED, CONTINUUM_TRIALS))),
        ),
        (
            "circloid frontiers",
            Box::new(|| suite(circloid_suite(SUITE_SEED, CIRCLOID_TRIALS))),
        ),
        (
            "tree holonomy matches the cover window",
            Box::new(|| suite(holonomy_suite(SUITE_SEED, HOLONOMY_TRIALS))),
        ),
        ("ladder discriminator", Box::new(ladder)),
        ("report determinism across thread counts", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(d) => println!("PASS {:>2} {name}: {d}", k + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {d}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
