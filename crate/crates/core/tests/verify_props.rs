mod common;

use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use schwarzfn::algebra::BigComplex;
use schwarzfn::curve::complexify;
use schwarzfn::ratmap::{image_curve, maps_into};
use schwarzfn::verify::{
    continue_schwarz, verify_involution, verify_reflection_identity, ContinuationPath, MapExpr, VerifyConfig,
};

const PREC: usize = 128;

fn presets() -> Vec<Shape> {
    vec![
        Shape::Circle { x0: 0.0, y0: 0.0, r: 1.0 },
        Shape::Circle { x0: 1.0, y0: -0.5, r: 2.0 },
        Shape::Line { x1: 0.0, y1: 1.0, x2: 2.0, y2: 0.5 },
        Shape::Ellipse { a: 2.0, b: 1.0 },
        Shape::Rose { m: 1, a: 2.0, b: 1.0 },
    ]
}

/// Bases on each preset away from the axes of symmetry, where some curves
/// have branch points nearby.
const BASE_PARAMS: [f64; 3] = [0.07, 0.31, 0.61];

fn on_curve(shape: &Shape, t: f64) -> BigComplex {
    let (x, y) = shape.point(t);
    BigComplex::from_f64(x, y, PREC)
}

#[test]
fn involution_holds_for_every_preset() {
    let cfg = VerifyConfig::default();
    for shape in presets() {
        let s = complexify(&shape.curve()).unwrap();
        for &t in &BASE_PARAMS {
            let base = on_curve(&shape, t);
            let r = verify_involution(&s, &base, 40, 1e-9, &cfg).unwrap_or_else(|e| panic!("{shape:?} at {t}: {e}"));
            assert!(r.passed, "{shape:?} at {t}: {r:?}");
        }
    }
    let rose = Shape::Rose { m: 1, a: 2.0, b: 1.0 };
    let r = verify_involution(&complexify(&rose.curve()).unwrap(), &BigComplex::from_f64(0.0, 1.0, PREC), 40, 1e-9, &cfg)
        .unwrap();
    assert!(r.passed, "{r:?}");
}

#[test]
fn doubling_steps_does_not_degrade_the_residual() {
    // residuals at the level of rounding carry no signal
    let floor = 1e-25;
    for shape in presets() {
        let s = complexify(&shape.curve()).unwrap();
        let base = on_curve(&shape, 0.31);
        let mut prev: Option<f64> = None;
        for steps in [16, 32, 64, 128] {
            let cfg = VerifyConfig { steps, ..VerifyConfig::default() };
            let r = verify_involution(&s, &base, 20, 1e-9, &cfg).unwrap();
            if let Some(p) = prev {
                assert!(r.max_residual <= 2.0 * p.max(floor), "{shape:?}: {steps} steps gave {} after {p}", r.max_residual);
            }
            prev = Some(r.max_residual);
        }
    }
}

#[test]
fn reflection_identity_holds_wherever_maps_into_does() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let shapes = corpus_shapes();
    let cfg = VerifyConfig::default();
    let mut verified = 0;
    for k in 0..20 {
        let f = random_map(&mut rng, 3);
        let a = shapes[k % shapes.len()].clone();
        let ca = a.curve();
        let b = image_curve(&f, &ca).unwrap();
        assert!(maps_into(&f, &ca, &b).unwrap());
        let fx = MapExpr::from_map(&f);
        // bases where the continuation is well posed: away from poles of f
        // and from singular or branch points of the image
        let report = [0.13, 0.29, 0.47, 0.71, 0.89]
            .iter()
            .find_map(|&t| verify_reflection_identity(&fx, &ca, &b, &on_curve(&a, t), 100, 1e-9, &cfg).ok());
        if let Some(r) = report {
            assert!(r.passed, "{f} on {a:?}: {r:?}");
            verified += 1;
        }
    }
    assert!(verified >= 15, "only {verified} of 20 pairs had a usable base");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn stationary_path_returns_the_conjugate(k in 0usize..4, t in 0.0f64..1.0) {
        let shape = presets()[k].clone();
        let s = complexify(&shape.curve()).unwrap();
        let p = on_curve(&shape, t);
        let w = continue_schwarz(&s, &ContinuationPath::new(p.clone(), p.clone()), PREC).unwrap();
        prop_assert!(w.dist_f64(&p.conj()) <= 1e-9 * p.abs_f64().max(1.0), "{:?} vs {:?}", w.to_f64(), p.to_f64());
    }
}
