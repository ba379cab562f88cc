//! Experiment configs: one `key=value` per line, `#` starts a comment line.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use crate::dynamics::{DenjoyBase, MapFamily, TorusMapSpec};
use crate::grid::GridResolution;
use crate::lattice::Mat2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Simulate,
    AnalyzeSet,
    RotationSet,
    PropertySuite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::AnalyzeSet => "analyze-set",
            Command::RotationSet => "rotation-set",
            Command::PropertySuite => "property-suite",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [
            Command::Simulate,
            Command::AnalyzeSet,
            Command::RotationSet,
            Command::PropertySuite,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }

    fn keys(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Command::Simulate => (
                &["family", "n"],
                &[
                    "horizon",
                    "ladder",
                    "tol",
                    "max_denominator",
                    "nonwandering",
                    "seed_x",
                    "seed_y",
                ],
            ),
            Command::AnalyzeSet => (
                &["family", "input"],
                &["n", "horizon", "ladder", "tol", "max_denominator", "nonwandering"],
            ),
            Command::RotationSet => (&["family"], &["n_samples", "n_iter"]),
            Command::PropertySuite => (&[], &[]),
        }
    }
}

const KEYS: &[&str] = &[
    "command",
    "family",
    "alpha",
    "beta",
    "matrix",
    "eps",
    "gap_budget",
    "truncation",
    "n",
    "horizon",
    "ladder",
    "input",
    "tol",
    "max_denominator",
    "n_samples",
    "n_iter",
    "nonwandering",
    "seed_x",
    "seed_y",
];

fn family_keys(f: MapFamily) -> (&'static [&'static str], &'static [&'static str]) {
    match f {
        MapFamily::Translation => (&["alpha", "beta"], &[]),
        MapFamily::LinearToral => (&["matrix"], &["alpha", "beta"]),
        MapFamily::DehnTwistPlus | MapFamily::SkewShear => (&["alpha", "beta", "eps"], &[]),
        MapFamily::DenjoyProduct => (&["alpha", "beta", "truncation"], &["gap_budget"]),
        MapFamily::Custom => (&[], &[]),
    }
}

/// One diagnostic line per offending key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join("\n"))
    }
}

impl std::error::Error for ConfigErrors {}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub family: Option<MapFamily>,
    pub alpha: f64,
    pub beta: f64,
    pub matrix: Mat2,
    pub eps: f64,
    pub gap_budget: f64,
    pub truncation: usize,
    pub n: Option<GridResolution>,
    pub horizon: usize,
    pub ladder: Option<Vec<usize>>,
    pub input: Option<PathBuf>,
    pub tol: f64,
    pub max_denominator: i64,
    pub n_samples: usize,
    pub n_iter: usize,
    pub nonwandering: bool,
    pub seed_point: [f64; 2],
    canonical: String,
}

impl ExperimentConfig {
    /// Sorted `key=value` lines with whitespace trimmed; the cache key is
    /// derived from this text.
    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    pub fn map(&self) -> Option<TorusMapSpec> {
        let (a, b) = (self.alpha, self.beta);
        Some(match self.family? {
            MapFamily::Translation => TorusMapSpec::translation(a, b),
            MapFamily::LinearToral => TorusMapSpec::linear_toral(self.matrix, a, b).ok()?,
            MapFamily::DehnTwistPlus => TorusMapSpec::dehn_twist_plus(a, b, self.eps),
            MapFamily::SkewShear => TorusMapSpec::skew_shear(a, b, self.eps),
            MapFamily::DenjoyProduct => {
                TorusMapSpec::denjoy_product(DenjoyBase::new(a, self.gap_budget, self.truncation).ok()?, b)
            }
            MapFamily::Custom => return None,
        })
    }
}

fn parse_f64(v: &str) -> Result<f64, String> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(format!("expected a decimal number, got `{v}`")),
    }
}

fn parse_usize(v: &str) -> Result<usize, String> {
    v.parse()
        .map_err(|_| format!("expected a non-negative integer, got `{v}`"))
}

fn parse_resolution(v: &str) -> Result<GridResolution, String> {
    GridResolution::new(parse_usize(v)?).map_err(|e| e.to_string())
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigErrors> {
    let mut errors = Vec::new();
    let mut raw: BTreeMap<&str, &str> = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            errors.push(format!("line {}: expected key=value, got `{line}`", lineno + 1));
            continue;
        };
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            errors.push(format!("key `{k}`: unknown key"));
        } else if raw.insert(k, v).is_some() {
            errors.push(format!("key `{k}`: given more than once"));
        }
    }

    let command = match raw.get("command") {
        None => {
            errors.push("key `command`: required".into());
            None
        }
        Some(v) => Command::parse(v).or_else(|| {
            errors.push(format!(
                "key `command`: expected simulate, analyze-set, rotation-set or property-suite, got `{v}`"
            ));
            None
        }),
    };
    let family = raw.get("family").and_then(|v| match MapFamily::parse(v) {
        Some(MapFamily::Custom) => {
            errors.push("key `family`: custom maps need a programmatic lift and cannot come from a config".into());
            None
        }
        Some(f) => Some(f),
        None => {
            errors.push(format!(
                "key `family`: expected translation, linearToral, dehnTwistPlus, skewShear or denjoyProduct, got `{v}`"
            ));
            None
        }
    });

    // Which keys the command and family call for.
    if let Some(cmd) = command {
        let (mut required, mut optional) = (cmd.keys().0.to_vec(), cmd.keys().1.to_vec());
        required.push("command");
        if let Some(f) = family {
            if required.contains(&"family") {
                required.extend_from_slice(family_keys(f).0);
                optional.extend_from_slice(family_keys(f).1);
            }
        }
        for k in &required {
            if !raw.contains_key(k) {
                let by = match (family, family_keys(family.unwrap_or(MapFamily::Custom)).0.contains(k)) {
                    (Some(f), true) => format!("family {}", f.name()),
                    _ => format!("command {}", cmd.name()),
                };
                errors.push(format!("key `{k}`: required by {by}"));
            }
        }
        let family_known = family.is_some() || !raw.contains_key("family");
        for k in raw.keys() {
            if KEYS.contains(k) && !required.contains(k) && !optional.contains(k) && family_known {
                errors.push(format!("key `{k}`: not used by command {}", cmd.name()));
            }
        }
    }

    let mut cfg = ExperimentConfig {
        command: command.unwrap_or(Command::PropertySuite),
        family,
        alpha: 0.0,
        beta: 0.0,
        matrix: Mat2::IDENTITY,
        eps: 0.0,
        gap_budget: 0.5,
        truncation: 0,
        n: None,
        horizon: 200,
        ladder: None,
        input: None,
        tol: 1e-6,
        max_denominator: 100,
        n_samples: 1024,
        n_iter: 10_000,
        nonwandering: false,
        seed_point: [0.0, 0.0],
        canonical: raw.iter().map(|(k, v)| format!("{k}={v}\n")).collect(),
    };

    for (&k, &v) in &raw {
        let r: Result<(), String> = (|| {
            match k {
                "alpha" => cfg.alpha = parse_f64(v)?,
                "beta" => cfg.beta = parse_f64(v)?,
                "eps" => cfg.eps = parse_f64(v)?,
                "seed_x" => cfg.seed_point[0] = parse_f64(v)?,
                "seed_y" => cfg.seed_point[1] = parse_f64(v)?,
                "gap_budget" => {
                    cfg.gap_budget = parse_f64(v)?;
                    if !(cfg.gap_budget > 0.0 && cfg.gap_budget < 1.0) {
                        return Err(format!("must lie strictly between 0 and 1, got {v}"));
                    }
                }
                "tol" => {
                    cfg.tol = parse_f64(v)?;
                    if cfg.tol <= 0.0 {
                        return Err(format!("must be positive, got {v}"));
                    }
                }
                "truncation" => cfg.truncation = parse_usize(v)?,
                "horizon" => cfg.horizon = parse_usize(v)?,
                "n_samples" | "n_iter" => {
                    let x = parse_usize(v)?;
                    if x == 0 {
                        return Err("must be positive".into());
                    }
                    if k == "n_samples" {
                        cfg.n_samples = x
                    } else {
                        cfg.n_iter = x
                    }
                }
                "max_denominator" => {
                    cfg.max_denominator = v
                        .parse()
                        .ok()
                        .filter(|&d: &i64| d > 0)
                        .ok_or(format!("expected a positive integer, got `{v}`"))?
                }
                "n" => cfg.n = Some(parse_resolution(v)?),
                "ladder" => {
                    let rs = v
                        .split(',')
                        .map(|s| parse_resolution(s.trim()))
                        .collect::<Result<Vec<_>, _>>()?;
                    if rs.len() < 2 || rs.windows(2).any(|w| w[0].n() >= w[1].n()) {
                        return Err(format!("expected increasing resolutions n0,n1,n2, got `{v}`"));
                    }
                    cfg.ladder = Some(rs.iter().map(|r| r.n()).collect());
                }
                "matrix" => {
                    let xs: Vec<i64> = v
                        .split(',')
                        .map(|s| s.trim().parse::<i64>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| format!("expected four integers a,b,c,d, got `{v}`"))?;
                    if xs.len() != 4 {
                        return Err(format!("expected four integers a,b,c,d, got `{v}`"));
                    }
                    cfg.matrix = Mat2::new(xs[0], xs[1], xs[2], xs[3]);
                    if !cfg.matrix.is_unimodular() {
                        return Err(format!("matrix {} is not unimodular", cfg.matrix));
                    }
                }
                "nonwandering" => {
                    cfg.nonwandering = match v {
                        "true" => true,
                        "false" => false,
                        _ => return Err(format!("expected true or false, got `{v}`")),
                    }
                }
                "input" => cfg.input = Some(PathBuf::from(v)),
                _ => {}
            }
            Ok(())
        })();
        if let Err(e) = r {
            errors.push(format!("key `{k}`: {e}"));
        }
    }

    if errors.is_empty() && cfg.family == Some(MapFamily::DenjoyProduct) {
        if let Err(e) = DenjoyBase::new(cfg.alpha, cfg.gap_budget, cfg.truncation) {
            errors.push(format!("key `truncation`: {e}"));
        }
    }
    if errors.is_empty() {
        Ok(cfg)
    } else {
        Err(ConfigErrors(errors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cat_map_config() {
        let c = parse_config("command=simulate\nfamily=linearToral\nmatrix=2,1,1,1\nn=256\n").unwrap();
        assert_eq!(c.command, Command::Simulate);
        assert_eq!(c.matrix, Mat2::new(2, 1, 1, 1));
        assert_eq!(c.n.unwrap().n(), 256);
        assert_eq!(c.map().unwrap().homology(), Mat2::new(2, 1, 1, 1));
    }

    #[test]
    fn missing_alpha_is_named() {
        let e = parse_config("command=simulate\nfamily=translation\nbeta=0\nn=64\n").unwrap_err();
        assert_eq!(e.0.len(), 1);
        assert!(e.0[0].starts_with("key `alpha`"), "{e}");
    }

    #[test]
    fn one_line_per_offending_key() {
        let e =
            parse_config("command=simulate\nfamily=translation\nalpha=x\nbeta=0\nn=63\nfoo=1\neps=0.1\n").unwrap_err();
        let keys: Vec<&str> = e.0.iter().map(|l| l.split('`').nth(1).unwrap()).collect();
        assert_eq!(e.0.len(), 4, "{e}");
        for k in ["alpha", "n", "foo", "eps"] {
            assert!(keys.contains(&k), "{k} missing from {e}");
        }
    }

    #[test]
    fn canonical_text_ignores_order_and_spacing() {
        let a = parse_config("command=rotation-set\nfamily=translation\nalpha=0.1\nbeta=0.2\n").unwrap();
        let b = parse_config("# note\nbeta = 0.2\n\nalpha=0.1\nfamily=translation\ncommand=rotation-set\n").unwrap();
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn property_suite_takes_no_map() {
        assert!(parse_config("command=property-suite\n").is_ok());
        assert!(parse_config("command=property-suite\nfamily=translation\n").is_err());
    }

    #[test]
    fn bad_values_rejected() {
        for text in [
            "command=simulate\nfamily=linearToral\nmatrix=2,1,1,2\nn=64\n",
            "command=simulate\nfamily=translation\nalpha=0\nbeta=0\nn=64\ntol=0\n",
            "command=simulate\nfamily=translation\nalpha=0\nbeta=0\nn=64\nladder=128,64\n",
            "command=simulate\nfamily=denjoyProduct\nalpha=0.6\nbeta=0\ntruncation=8\ngap_budget=1.5\nn=64\n",
            "command=launch\n",
            "family=translation\n",
            "command=simulate\nfamily=translation\nalpha=0\nalpha=1\nbeta=0\nn=64\n",
        ] {
            assert!(parse_config(text).is_err(), "{text}");
        }
    }
}
