use proptest::prelude::*;

use torus_minimal::classify::{classify_complement, moore_quotient};
use torus_minimal::cli::{config_key, parse_config};
use torus_minimal::dynamics::rotation::{convex_hull, rationality_test};
use torus_minimal::dynamics::RationalVerdict;
use torus_minimal::fill::fill_torus;
use torus_minimal::grid::pgm::{decode_set, encode_set};
use torus_minimal::grid::{complement, connected_components, Adjacency, GridResolution, TorusGridSet};
use torus_minimal::homotopy::{set_homotopy_census, HomotopyType};
use torus_minimal::lattice::{sign_normalize, Mat2};
use torus_minimal::properties::{random_trivial_continuum, random_unimodular, trial_rng};
use torus_minimal::Error;

fn res(n: usize) -> GridResolution {
    GridResolution::new(n).unwrap()
}

fn bernoulli(n: usize, bits: &[bool]) -> TorusGridSet {
    TorusGridSet::from_fn(res(n), Adjacency::EIGHT, |i, j| bits[(j * n + i) % bits.len()])
}

fn types(s: &TorusGridSet) -> Vec<HomotopyType> {
    let mut t: Vec<_> = set_homotopy_census(s)
        .unwrap()
        .into_iter()
        .map(|e| e.homotopy)
        .collect();
    t.sort();
    t
}

/// Fill of a trivial continuum, computed without the fill algorithm: the
/// torus minus the doubly essential component of the complement.
fn fill_oracle(c: &TorusGridSet) -> TorusGridSet {
    let comp = complement(c);
    let labels = connected_components(&comp);
    let census = set_homotopy_census(&comp).unwrap();
    let outer = census
        .iter()
        .find(|e| e.homotopy == HomotopyType::DoublyEssential)
        .unwrap();
    complement(&labels.component(&comp, outer.component)).with_adjacency(c.adjacency())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pgm_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..300), k in 0usize..3) {
        let s = bernoulli(8 << k, &bits);
        let back = decode_set(&encode_set(&s), Adjacency::EIGHT).unwrap();
        prop_assert!(back.same_cells(&s));
    }

    #[test]
    fn complement_census_is_consistent(bits in proptest::collection::vec(any::<bool>(), 1..400)) {
        let s = bernoulli(16, &bits);
        match classify_complement(&s) {
            Err(Error::Precondition(_)) => prop_assert!(s.is_empty()),
            r => prop_assert!(r.is_ok(), "{:?}", r),
        }
    }

    #[test]
    fn census_commutes_with_index_maps(bits in proptest::collection::vec(any::<bool>(), 1..400), seed in any::<u64>()) {
        let s = bernoulli(16, &bits);
        let b = random_unimodular(&mut trial_rng(seed, 0, 0));
        let mut expected: Vec<HomotopyType> = types(&s)
            .into_iter()
            .map(|t| match t.vector() {
                Some(v) => {
                    let w = sign_normalize(b.apply(v));
                    HomotopyType::Essential(w[0], w[1])
                }
                None => t,
            })
            .collect();
        expected.sort();
        prop_assert_eq!(types(&s.transform(b).unwrap()), expected);
    }

    #[test]
    fn census_is_translation_invariant(bits in proptest::collection::vec(any::<bool>(), 1..400), di in 0i64..16, dj in 0i64..16) {
        let s = bernoulli(16, &bits);
        prop_assert_eq!(types(&s.translate(di, dj)), types(&s));
    }

    #[test]
    fn fill_matches_complement_oracle(seed in any::<u64>(), n in prop_oneof![Just(16usize), Just(32)]) {
        let c = random_trivial_continuum(&mut trial_rng(seed, 7, 0), res(n));
        let f = fill_torus(&c, true).unwrap().filled;
        prop_assert!(f.same_cells(&fill_oracle(&c)));
        prop_assert!(c.is_subset(&f));
    }

    #[test]
    fn moore_class_count(seed in any::<u64>(), pieces in 1usize..5) {
        let mut rng = trial_rng(seed, 8, 0);
        let mut m = TorusGridSet::empty(res(32), Adjacency::EIGHT);
        for _ in 0..pieces {
            m = m.union(&random_trivial_continuum(&mut rng, res(32)));
        }
        // Unions of trivial continua can close up into essential loops or
        // nest; the exact count is only claimed for disjoint trivial fills.
        let labels = connected_components(&m);
        let Ok(census) = set_homotopy_census(&m) else { return Ok(()) };
        if census.iter().any(|e| e.homotopy != HomotopyType::Trivial) {
            return Ok(());
        }
        let fills: Vec<TorusGridSet> = (0..labels.count()).map(|c| fill_oracle(&labels.component(&m, c))).collect();
        let covered = fills.iter().fold(TorusGridSet::empty(res(32), Adjacency::EIGHT), |a, f| a.union(f));
        let disjoint = fills.iter().map(|f| f.len()).sum::<usize>() == covered.len();
        match moore_quotient(&m) {
            Ok(q) => {
                prop_assert!(disjoint);
                prop_assert_eq!(q.m_classes, labels.count());
                prop_assert_eq!(q.class_count, labels.count() + 32 * 32 - covered.len());
            }
            Err(_) => prop_assert!(!disjoint),
        }
    }

    #[test]
    fn reduced_fractions_are_rational(q in 1i64..=100, p in 0i64..100) {
        let p = p % q;
        let g = num_gcd(p, q);
        let verdict = rationality_test(p as f64 / q as f64, 100, 1e-9);
        prop_assert_eq!(verdict, RationalVerdict::Rational(p / g, q / g));
    }

    #[test]
    fn hull_contains_every_point(pts in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..60)) {
        let pts: Vec<[f64; 2]> = pts.into_iter().map(|(x, y)| [x, y]).collect();
        let hull = convex_hull(&pts);
        prop_assert!(hull.iter().all(|h| pts.contains(h)));
        if hull.len() >= 3 {
            for k in 0..hull.len() {
                let (a, b) = (hull[k], hull[(k + 1) % hull.len()]);
                for p in &pts {
                    let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
                    prop_assert!(cross >= -1e-12);
                }
            }
        }
    }

    #[test]
    fn config_key_ignores_line_order(lines in Just(vec!["command=simulate", "family=translation", "alpha=0.25", "beta=0.5", "n=64"]).prop_shuffle()) {
        let perm = lines.join("\n");
        let base = parse_config("command=simulate\nfamily=translation\nalpha=0.25\nbeta=0.5\nn=64\n").unwrap();
        let other = parse_config(&perm).unwrap();
        prop_assert_eq!(config_key(&base, 3), config_key(&other, 3));
        prop_assert_ne!(config_key(&base, 3), config_key(&base, 4));
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn identity_index_map_is_identity() {
    let s = bernoulli(16, &[true, false, false, true, true]);
    assert!(s.transform(Mat2::IDENTITY).unwrap().same_cells(&s));
}
