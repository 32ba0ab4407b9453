mod common;

use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use schwarzfn::algebra::BigComplex;
use schwarzfn::curve::RealCurve;
use schwarzfn::ratmap::{compose, eval_map, image_curve, maps_into, MapValue, RationalMap};

const PREC: usize = 128;

/// Relative residuals of `B` at `f(p)` for `count` points `p` on `A`.
fn sampled_residuals(f: &RationalMap, a: &Shape, b: &RealCurve, count: usize) -> Vec<f64> {
    (0..count)
        .filter_map(|k| {
            let (x, y) = a.point((k as f64 + 0.37) / count as f64);
            let z = BigComplex::from_f64(x, y, PREC);
            let MapValue::Finite(v) = eval_map(f, &z).ok()? else { return None };
            if v.abs_f64() > 1e6 {
                return None;
            }
            let (u, w) = v.to_f64();
            Some(relative_value(b, &BigComplex::from_f64(u, 0.0, PREC), &BigComplex::from_f64(w, 0.0, PREC)))
        })
        .collect()
}

fn random_pairs() -> Vec<(RationalMap, Shape)> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let shapes = corpus_shapes();
    (0..20).map(|k| (random_map(&mut rng, 3), shapes[k % shapes.len()].clone())).collect()
}

#[test]
fn maps_into_its_own_image_curve() {
    for (f, a) in random_pairs() {
        let c = a.curve();
        let img = image_curve(&f, &c).unwrap_or_else(|e| panic!("{f} on {a:?}: {e}"));
        assert!(maps_into(&f, &c, &img).unwrap(), "{f} on {a:?} -> {img}");
    }
}

#[test]
fn positive_decisions_are_sampled_on_the_target() {
    let mut cases: Vec<(RationalMap, Shape, RealCurve)> = random_pairs()
        .into_iter()
        .map(|(f, a)| {
            let img = image_curve(&f, &a.curve()).unwrap();
            (f, a, img)
        })
        .collect();
    cases.push((map("z^2"), corpus_shapes()[0].clone(), curve("x^2+y^2-1")));
    cases.push((map("z+1/z"), corpus_shapes()[0].clone(), curve("y")));
    for (f, a, b) in cases {
        assert!(maps_into(&f, &a.curve(), &b).unwrap());
        let res = sampled_residuals(&f, &a, &b, 500);
        assert!(res.len() > 400, "{f}: too few finite samples");
        let worst = res.iter().cloned().fold(0.0, f64::max);
        assert!(worst <= 1e-9, "{f} on {a:?}: sampled residual {worst:e}");
    }
}

#[test]
fn negative_decisions_have_a_violating_sample() {
    let unit = corpus_shapes()[0].clone();
    let mut cases = vec![
        (map("z+2"), unit.clone(), curve("x^2+y^2-1")),
        (map("z^2"), unit.clone(), curve("x^2-2*x+y^2")),
        (map("z+1/z"), unit.clone(), curve("x")),
    ];
    let mut rng = StdRng::seed_from_u64(7);
    for k in 0..10 {
        let f = random_map(&mut rng, 3);
        cases.push((f, corpus_shapes()[k % 3].clone(), curve("x^2+y^2-1")));
    }
    let mut negatives = 0;
    for (f, a, b) in cases {
        if maps_into(&f, &a.curve(), &b).unwrap() {
            continue;
        }
        negatives += 1;
        let worst = sampled_residuals(&f, &a, &b, 500).into_iter().fold(0.0, f64::max);
        assert!(worst > 1e-3, "{f} on {a:?}: worst sample {worst:e}");
    }
    assert!(negatives >= 10);
}

#[test]
fn image_degree_bound_is_observed() {
    let mut over = Vec::new();
    for (f, a) in random_pairs() {
        let c = a.curve();
        let img = image_curve(&f, &c).unwrap();
        let bound = 2 * f.degree() as u32 * c.degree();
        if img.degree() > bound {
            over.push(format!("{f} on {a:?}: degree {} > {bound}", img.degree()));
        }
    }
    if !over.is_empty() {
        eprintln!("degree bound exceeded:\n{}", over.join("\n"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn composition_is_associative(f in map_strategy(2), g in map_strategy(2), h in map_strategy(2)) {
        prop_assert_eq!(compose(&compose(&f, &g), &h), compose(&f, &compose(&g, &h)));
    }
}
