//! Maps preserving the unit circle, as quotients of finite Blaschke
//! products.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::numeric::{roots_of_numeric, NumBiPoly};
use crate::algebra::{real_roots, roots_numeric, BiPoly, BigComplex, ExactComplex, UniPoly, Var, VarPair};
use crate::curve::{apply_shear, eliminate_y, generic_shear, realify_poly, RealCurve};
use crate::error::{Error, Result};
use crate::ratmap::{eval_map, make_map, MapValue, RationalMap};

/// `f†(z) = conj(f(1/conj z))`.
pub fn dagger(f: &RationalMap) -> RationalMap {
    let k = f.degree();
    make_map(f.num().conj().reversed(k), f.den().conj().reversed(k)).expect("reversal of a nonzero denominator")
}

/// Exact test of `f · f† ≡ 1`, i.e. `|f| = 1` on the unit circle.
pub fn is_circle_preserving(f: &RationalMap) -> bool {
    let k = f.degree();
    let lhs = crate::algebra::Ring::mul(f.num(), &f.num().conj().reversed(k));
    let rhs = crate::algebra::Ring::mul(f.den(), &f.den().conj().reversed(k));
    !f.num().is_zero() && lhs == rhs
}

/// `f = λ · B₁ / B₂` with `B₁ = ∏ ((z − a)/(1 − āz))^k` over `zeros` and
/// `B₂` likewise over `inverse_factors`.
#[derive(Clone, Debug)]
pub struct BlaschkeFactorization {
    pub unimodular_constant: BigComplex,
    pub zeros: Vec<(BigComplex, usize)>,
    pub inverse_factors: Vec<(BigComplex, usize)>,
    pub residual: f64,
}

fn blaschke_product(pts: &[(BigComplex, usize)], z: &BigComplex) -> BigComplex {
    let one = BigComplex::one(z.precision());
    pts.iter().fold(one.clone(), |acc, (a, k)| {
        let factor = &(z - a) / &(&one - &(&a.conj() * z));
        &acc * &factor.powi(*k as i64)
    })
}

impl BlaschkeFactorization {
    pub fn eval(&self, z: &BigComplex) -> BigComplex {
        &(&self.unimodular_constant * &blaschke_product(&self.zeros, z)) / &blaschke_product(&self.inverse_factors, z)
    }

    pub fn to_json(&self) -> Value {
        let pts = |v: &[(BigComplex, usize)]| {
            v.iter().map(|(a, k)| json!([a.re_f64(), a.im_f64(), k])).collect::<Vec<_>>()
        };
        json!({
            "lambda": [self.unimodular_constant.re_f64(), self.unimodular_constant.im_f64()],
            "zeros": pts(&self.zeros),
            "inverse_factors": pts(&self.inverse_factors),
            "residual": self.residual,
        })
    }
}

/// Rational points of the unit circle tried in turn when solving for `λ`.
fn circle_points() -> Vec<ExactComplex> {
    let mut v = vec![
        ExactComplex::one(),
        ExactComplex::i(),
        ExactComplex::from_int(-1),
        ExactComplex::from_ints(0, -1),
    ];
    for (a, b, c) in [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)] {
        for (sa, sb) in [(1, 1), (-1, 1), (-1, -1), (1, -1)] {
            v.push(ExactComplex::new(
                num_rational::BigRational::new((sa * a).into(), c.into()),
                num_rational::BigRational::new((sb * b).into(), c.into()),
            ));
        }
    }
    v
}

const RESIDUAL_SAMPLES: usize = 1000;

/// Splits a circle-preserving map into Blaschke factors: zeros inside the
/// disk go to `B₁`, poles inside to `B₂`, and every zero or pole outside
/// must be the reflection `1/ā` of a pole or zero inside.
pub fn factor_unimodular(f: &RationalMap, prec: usize) -> Result<BlaschkeFactorization> {
    if f.is_constant() || !is_circle_preserving(f) {
        return Err(Error::NotCirclePreserving);
    }
    let roots = |p: &UniPoly| -> Result<Vec<(BigComplex, usize)>> {
        if p.degree().unwrap_or(0) == 0 {
            Ok(Vec::new())
        } else {
            roots_numeric(p, prec)
        }
    };
    let zeros = roots(f.num())?;
    let poles = roots(f.den())?;
    let tol = 2f64.powi(-(prec as i32) / 4);
    let split = |v: Vec<(BigComplex, usize)>, what: &str| -> Result<(Vec<_>, Vec<_>)> {
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for (a, k) in v {
            let r = a.abs_f64();
            if (r - 1.0).abs() <= tol {
                return Err(Error::PairingFailure(format!("{what} {a} lies on the unit circle")));
            }
            if r < 1.0 {
                inside.push((a, k));
            } else {
                outside.push((a, k));
            }
        }
        Ok((inside, outside))
    };
    let (zin, zout) = split(zeros, "zero")?;
    let (pin, pout) = split(poles, "pole")?;
    let check = |outside: &[(BigComplex, usize)], inside: &[(BigComplex, usize)], what: &str| -> Result<()> {
        let mut used = vec![false; inside.len()];
        for (a, k) in outside {
            let target = a.conj().recip();
            let hit = inside.iter().enumerate().position(|(idx, (b, kb))| {
                !used[idx] && kb == k && b.dist_f64(&target) <= tol * target.abs_f64().max(1.0)
            });
            match hit {
                Some(idx) => used[idx] = true,
                None => {
                    return Err(Error::PairingFailure(format!("{what} {a} has no reflected partner")));
                }
            }
        }
        let unpaired_nonzero = inside
            .iter()
            .zip(&used)
            .any(|((b, _), u)| !u && b.abs_f64() > tol);
        if unpaired_nonzero {
            return Err(Error::PairingFailure(format!("a {what} reflection inside the disk is unmatched")));
        }
        Ok(())
    };
    check(&zout, &pin, "zero")?;
    check(&pout, &zin, "pole")?;
    let mut fact = BlaschkeFactorization {
        unimodular_constant: BigComplex::one(prec),
        zeros: zin,
        inverse_factors: pin,
        residual: 0.0,
    };
    let lambda = circle_points()
        .into_iter()
        .find_map(|zeta| {
            let fz = f.eval_exact(&zeta)?;
            if fz.is_zero() {
                return None;
            }
            let zb = BigComplex::from_exact(&zeta, prec);
            Some(&BigComplex::from_exact(&fz, prec) / &fact.eval(&zb))
        })
        .ok_or_else(|| Error::PairingFailure("no admissible evaluation point for the constant".into()))?;
    if (lambda.abs_f64() - 1.0).abs() > tol {
        return Err(Error::PairingFailure(format!("constant {lambda} is not unimodular")));
    }
    fact.unimodular_constant = lambda;
    let mut residual: f64 = 0.0;
    for k in 0..RESIDUAL_SAMPLES {
        let th = std::f64::consts::TAU * (k as f64 + 0.5) / RESIDUAL_SAMPLES as f64;
        let z = BigComplex::from_f64(th.cos(), th.sin(), prec);
        if let MapValue::Finite(v) = eval_map(f, &z)? {
            residual = residual.max(v.dist_f64(&fact.eval(&z)));
        }
    }
    fact.residual = residual;
    Ok(fact)
}

/// `num(z)·num*(w) − den(z)·den*(w)` in `(z, w)`.
fn unimodular_form(f: &RationalMap) -> BiPoly {
    let part = |p: &UniPoly| {
        &BiPoly::from_univariate(p, Var::First, VarPair::ZW) * &BiPoly::from_univariate(&p.conj(), Var::Second, VarPair::ZW)
    };
    &part(f.num()) - &part(f.den())
}

/// The real curve `|f(z)| = 1`.
pub fn unimodular_locus(f: &RationalMap) -> Result<RealCurve> {
    let e = unimodular_form(f);
    if e.is_zero() {
        return Err(Error::DegenerateCurve("map is a unimodular constant".into()));
    }
    realify_poly(&e)
}

/// Outcome of comparing the unimodular loci of two maps.
#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PsOutcome {
    /// The loci share a curve component.
    SharedBlaschkeStructure { common: String },
    /// Finitely many common points.
    Count { count: usize, bound: usize, within_bound: bool, points: Vec<(f64, f64)> },
}

/// Distinct real points common to two curves without common components.
pub fn common_real_points(p1: &BiPoly, p2: &BiPoly, prec: usize) -> Result<Vec<(BigComplex, BigComplex)>> {
    let (alpha, a) = generic_shear(p1)?;
    let b = apply_shear(p2, &alpha);
    let r = eliminate_y(&a, &b)?;
    if r.is_zero() {
        return Err(Error::DegenerateCurve("curves share a component".into()));
    }
    if r.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let work = prec + 32;
    let na = NumBiPoly::from_exact(&a, work);
    let nb = NumBiPoly::from_exact(&b, work);
    let tol = 2f64.powi(-(prec as i32) / 4);
    let al = BigComplex::from_exact(&alpha, work);
    let mut out: Vec<(BigComplex, BigComplex)> = Vec::new();
    for (x0, _) in real_roots(&r, work)? {
        for (y0, _) in roots_of_numeric(&na.specialize(Var::First, &x0), work)? {
            if y0.im_f64().abs() > tol * y0.abs_f64().max(1.0) {
                continue;
            }
            let y0 = y0.real_part();
            let (v, _, _, scale) = nb.eval_with_partials(&x0, &y0);
            if v.abs_f64() > tol * scale.max(1.0) {
                continue;
            }
            let x = &x0 + &(&al * &y0);
            let dup = out.iter().any(|(px, py)| px.dist_f64(&x) + py.dist_f64(&y0) <= tol * x.abs_f64().max(y0.abs_f64()).max(1.0));
            if !dup {
                out.push((x, y0));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp_lex(&b.0).then_with(|| a.1.cmp_lex(&b.1)));
    Ok(out.into_iter().map(|(x, y)| (x.with_precision(prec), y.with_precision(prec))).collect())
}

/// Either reports that the loci `|p₁| = 1` and `|p₂| = 1` share a
/// component, or counts their common real points against `(n₁ + n₂)²`.
pub fn ps_bound_check(p1: &RationalMap, p2: &RationalMap, prec: usize) -> Result<PsOutcome> {
    if p1.is_constant() || p2.is_constant() {
        return Err(Error::ConstantMap);
    }
    let c1 = unimodular_locus(p1)?;
    let c2 = unimodular_locus(p2)?;
    let pts = match common_real_points(c1.poly(), c2.poly(), prec) {
        Err(e @ Error::DegenerateCurve(_)) => {
            let g = c1.poly().gcd(c2.poly())?;
            if g.is_constant() {
                return Err(e);
            }
            return Ok(PsOutcome::SharedBlaschkeStructure { common: g.to_string() });
        }
        r => r?,
    };
    let bound = (p1.degree() + p2.degree()).pow(2);
    Ok(PsOutcome::Count {
        count: pts.len(),
        bound,
        within_bound: pts.len() <= bound,
        points: pts.iter().map(|(x, y)| (x.re_f64(), y.re_f64())).collect(),
    })
}
