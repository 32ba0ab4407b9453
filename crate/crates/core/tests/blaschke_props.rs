mod common;

use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use schwarzfn::algebra::{BigComplex, ExactComplex};
use schwarzfn::blaschke::{dagger, factor_unimodular, is_circle_preserving, ps_bound_check, PsOutcome};
use schwarzfn::ratmap::{compose, eval_map, MapValue, RationalMap};

const PREC: usize = 128;

fn random_quotient<R: Rng>(rng: &mut R) -> RationalMap {
    let lambda = unit_point(rng.gen_range(0..UNIT_POINTS.len()));
    let zeros: Vec<ExactComplex> = (0..rng.gen_range(0..=3)).map(|_| disk_point(rng)).collect();
    let poles: Vec<ExactComplex> = (0..rng.gen_range(0..=2)).map(|_| disk_point(rng)).collect();
    let f = blaschke_quotient(&lambda, &zeros, &poles);
    if f.is_constant() {
        blaschke_quotient(&lambda, &[gaussian(1, 2, 5)], &[])
    } else {
        f
    }
}

/// Largest `||f(e^{iθ})| − 1|` over `count` circle samples.
fn max_modulus_defect(f: &RationalMap, count: usize) -> f64 {
    (0..count)
        .filter_map(|k| {
            let th = std::f64::consts::TAU * (k as f64 + 0.5) / count as f64;
            match eval_map(f, &BigComplex::from_f64(th.cos(), th.sin(), PREC)).ok()? {
                MapValue::Finite(v) => Some((v.abs_f64() - 1.0).abs()),
                MapValue::Infinity => Some(f64::INFINITY),
            }
        })
        .fold(0.0, f64::max)
}

#[test]
fn blaschke_quotients_are_circle_preserving_and_factor() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..50 {
        let f = random_quotient(&mut rng);
        assert!(is_circle_preserving(&f), "{f}");
        let fac = factor_unimodular(&f, PREC).unwrap_or_else(|e| panic!("{f}: {e}"));
        assert!(fac.residual <= 1e-9, "{f}: residual {}", fac.residual);
        let zeros: usize = fac.zeros.iter().map(|z| z.1).sum();
        let poles: usize = fac.inverse_factors.iter().map(|z| z.1).sum();
        assert_eq!(zeros + poles, f.degree(), "{f}");
    }
}

#[test]
fn non_unimodular_maps_fail_with_a_visible_defect() {
    let mut rng = StdRng::seed_from_u64(12);
    let mut seen = 0;
    while seen < 50 {
        let f = random_map(&mut rng, 3);
        if is_circle_preserving(&f) {
            continue;
        }
        seen += 1;
        assert!(factor_unimodular(&f, PREC).is_err(), "{f}");
        assert!(max_modulus_defect(&f, 1000) > 1e-3, "{f}");
    }
}

#[test]
fn ps_count_never_exceeds_the_bound() {
    let mut rng = StdRng::seed_from_u64(13);
    let mut counted = 0;
    let mut attempts = 0;
    while counted < 100 {
        attempts += 1;
        assert!(attempts < 300, "too many shared pairs");
        let d1 = rng.gen_range(1..=4);
        let d2 = rng.gen_range(1..=4);
        let p1 = RationalMap::polynomial(random_unipoly(&mut rng, d1, 3));
        let p2 = RationalMap::polynomial(random_unipoly(&mut rng, d2, 3));
        if p1.is_constant() || p2.is_constant() {
            continue;
        }
        match ps_bound_check(&p1, &p2, PREC).unwrap_or_else(|e| panic!("{p1}, {p2}: {e}")) {
            PsOutcome::SharedBlaschkeStructure { .. } => continue,
            PsOutcome::Count { count, bound, within_bound, .. } => {
                assert_eq!(bound, (p1.degree() + p2.degree()).pow(2));
                assert!(within_bound && count <= bound, "{p1}, {p2}: {count} > {bound}");
                counted += 1;
            }
        }
    }
}

fn quotient_strategy() -> impl Strategy<Value = RationalMap> {
    any::<u64>().prop_map(|seed| random_quotient(&mut StdRng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn dagger_is_an_involution(f in map_strategy(3)) {
        prop_assert_eq!(dagger(&dagger(&f)), f);
    }

    #[test]
    fn composition_preserves_circle_preservation(f in quotient_strategy(), g in quotient_strategy()) {
        prop_assert!(is_circle_preserving(&compose(&f, &g)));
    }
}
