//! Generators shared by the integration tests.
#![allow(dead_code)]

use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use schwarzfn::algebra::{BiPoly, BigComplex, ExactComplex, Poly, UniPoly, VarPair};
use schwarzfn::curve::{RealCurve, SchwarzForm};
use schwarzfn::ratmap::{make_map, RationalMap};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn curve(t: &str) -> RealCurve {
    RealCurve::parse(t).unwrap()
}

pub fn qform(t: &str) -> SchwarzForm {
    SchwarzForm::parse(t).unwrap()
}

pub fn map(t: &str) -> RationalMap {
    RationalMap::parse(t).unwrap()
}

pub fn c(re: f64, im: f64) -> BigComplex {
    BigComplex::from_f64(re, im, 128)
}

/// Modulus-one Gaussian rationals built from Pythagorean triples.
pub const UNIT_POINTS: [(i64, i64, i64); 9] =
    [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (3, 4, 5), (-4, 3, 5), (5, -12, 13), (-8, -15, 17), (7, 24, 25), (20, 21, 29)];

pub fn unit_point(k: usize) -> ExactComplex {
    let (a, b, c) = UNIT_POINTS[k % UNIT_POINTS.len()];
    ExactComplex::new(rat(a, c), rat(b, c))
}

pub fn gaussian(re: i64, im: i64, den: i64) -> ExactComplex {
    ExactComplex::new(rat(re, den), rat(im, den))
}

/// `(z − a)/(1 − ā z)`.
pub fn blaschke_factor(a: &ExactComplex) -> RationalMap {
    let num = UniPoly::from_coeffs(vec![-a, ExactComplex::one()]);
    let den = UniPoly::from_coeffs(vec![ExactComplex::one(), -&a.conj()]);
    make_map(num, den).unwrap()
}

/// `λ ∏ B(zeros) / ∏ B(poles)` as an exact map.
pub fn blaschke_quotient(lambda: &ExactComplex, zeros: &[ExactComplex], poles: &[ExactComplex]) -> RationalMap {
    let mut num = UniPoly::constant(lambda.clone());
    let mut den = UniPoly::one_poly();
    for a in zeros {
        let b = blaschke_factor(a);
        num = schwarzfn::algebra::Ring::mul(&num, b.num());
        den = schwarzfn::algebra::Ring::mul(&den, b.den());
    }
    for a in poles {
        let b = blaschke_factor(a);
        num = schwarzfn::algebra::Ring::mul(&num, b.den());
        den = schwarzfn::algebra::Ring::mul(&den, b.num());
    }
    make_map(num, den).unwrap()
}

/// A Gaussian rational strictly inside the unit disk with denominator 5.
pub fn disk_point<R: Rng>(rng: &mut R) -> ExactComplex {
    loop {
        let (a, b) = (rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64));
        if a * a + b * b < 25 {
            return gaussian(a, b, 5);
        }
    }
}

pub fn random_unipoly<R: Rng>(rng: &mut R, deg: usize, bound: i64) -> UniPoly {
    loop {
        let mut cs: Vec<ExactComplex> =
            (0..=deg).map(|_| gaussian(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound), 1)).collect();
        if cs[deg].is_zero() {
            cs[deg] = ExactComplex::one();
        }
        let p = Poly::from_coeffs(cs);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Nonconstant rational map with numerator and denominator degrees at most
/// `deg`.
pub fn random_map<R: Rng>(rng: &mut R, deg: usize) -> RationalMap {
    loop {
        let dn = rng.gen_range(0..=deg);
        let dd = rng.gen_range(0..=deg);
        let f = make_map(random_unipoly(rng, dn, 3), random_unipoly(rng, dd, 3)).unwrap();
        if !f.is_constant() {
            return f;
        }
    }
}

pub fn random_real_poly<R: Rng>(rng: &mut R, deg: u32, bound: i64) -> BiPoly {
    loop {
        let mut terms = Vec::new();
        for i in 0..=deg {
            for j in 0..=(deg - i) {
                if rng.gen_bool(0.6) {
                    terms.push(((i, j), rng.gen_range(-bound..=bound)));
                }
            }
        }
        let p = BiPoly::from_int_terms(&terms, VarPair::XY);
        if !p.is_constant() {
            return p;
        }
    }
}

pub fn int_unipoly_strategy(max_deg: usize, bound: i64) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-bound..=bound, 2..=max_deg + 1)
        .prop_filter("nonconstant", |v| v.iter().skip(1).any(|&c| c != 0))
        .prop_map(|v| UniPoly::from_ints(&v))
}

pub fn gaussian_unipoly_strategy(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 1..=max_deg + 1)
        .prop_map(|v| Poly::from_coeffs(v.into_iter().map(|(a, b)| gaussian(a, b, 1)).collect()))
        .prop_filter("nonzero", |p: &UniPoly| !p.is_zero())
}

pub fn bipoly_strategy(vars: VarPair, max_deg: u32, gaussian_coeffs: bool) -> impl Strategy<Value = BiPoly> {
    let im: i64 = if gaussian_coeffs { 2 } else { 0 };
    prop::collection::vec(((0..=max_deg), (0..=max_deg), -4i64..=4, -im..=im), 1..8).prop_map(move |ts| {
        BiPoly::from_terms(
            ts.into_iter().filter(|(i, j, _, _)| i + j <= max_deg).map(|(i, j, a, b)| ((i, j), gaussian(a, b, 1))),
            vars,
        )
    })
}

pub fn real_curve_strategy(max_deg: u32) -> impl Strategy<Value = BiPoly> {
    bipoly_strategy(VarPair::XY, max_deg, false).prop_filter("nonconstant", |p| !p.is_constant())
}

pub fn map_strategy(max_deg: usize) -> impl Strategy<Value = RationalMap> {
    (gaussian_unipoly_strategy(max_deg), gaussian_unipoly_strategy(max_deg))
        .prop_filter_map("nonconstant map", |(n, d)| make_map(n, d).ok().filter(|f| !f.is_constant()))
}

/// The three conic presets used across the corpus, with a parametrization
/// of their real locus by `t ∈ [0, 1)`.
#[derive(Clone, Debug)]
pub enum Shape {
    Circle { x0: f64, y0: f64, r: f64 },
    Line { x1: f64, y1: f64, x2: f64, y2: f64 },
    Ellipse { a: f64, b: f64 },
    Rose { m: u32, a: f64, b: f64 },
}

impl Shape {
    pub fn curve(&self) -> RealCurve {
        use schwarzfn::curve::{preset_curve, Preset};
        let q = |x: f64| float_rat(x);
        let e = |x: f64, y: f64| ExactComplex::new(q(x), q(y));
        let p = match *self {
            Shape::Circle { x0, y0, r } => Preset::Circle { z0: e(x0, y0), r: q(r) },
            Shape::Line { x1, y1, x2, y2 } => Preset::Line { z1: e(x1, y1), z2: e(x2, y2) },
            Shape::Ellipse { a, b } => Preset::Ellipse { a: q(a), b: q(b) },
            Shape::Rose { m, a, b } => Preset::Rose { m, a: q(a), b: q(b) },
        };
        preset_curve(&p).unwrap()
    }

    pub fn point(&self, t: f64) -> (f64, f64) {
        let th = std::f64::consts::TAU * t;
        match *self {
            Shape::Circle { x0, y0, r } => (x0 + r * th.cos(), y0 + r * th.sin()),
            Shape::Line { x1, y1, x2, y2 } => {
                let s = (th / 2.0).tan().clamp(-50.0, 50.0);
                (x1 + s * (x2 - x1), y1 + s * (y2 - y1))
            }
            Shape::Ellipse { a, b } => (a * th.cos(), b * th.sin()),
            Shape::Rose { m, a, b } => {
                let r = (a + b * (2.0 * m as f64 * th).cos()).sqrt();
                (r * th.cos(), r * th.sin())
            }
        }
    }
}

/// Exact rational value of a short decimal such as `0.5` or `-1.25`.
pub fn float_rat(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

pub fn corpus_shapes() -> Vec<Shape> {
    vec![
        Shape::Circle { x0: 0.0, y0: 0.0, r: 1.0 },
        Shape::Line { x1: 0.0, y1: 0.0, x2: 1.0, y2: 0.0 },
        Shape::Ellipse { a: 2.0, b: 1.0 },
    ]
}

/// `|P(x, y)| / Σ |c| max(1,|x|)^i max(1,|y|)^j` for a real curve.
pub fn relative_value(c: &RealCurve, x: &BigComplex, y: &BigComplex) -> f64 {
    let prec = x.precision();
    let p = schwarzfn::algebra::numeric::NumBiPoly::from_exact(c.poly(), prec);
    let v = p.eval(x, y);
    let lift = |t: &BigComplex| BigComplex::from_f64(t.abs_f64().max(1.0), 0.0, prec);
    let (_, _, _, scale) = p.eval_with_partials(&lift(x), &lift(y));
    v.abs_f64() / scale
}
