//! Real plane curves and their complexified defining forms.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::numeric::{roots_of_numeric, NumBiPoly};
use crate::algebra::{BiPoly, BigComplex, ExactComplex, Var, VarPair};
use crate::error::{Error, Result};

/// A real algebraic curve `P(x, y) = 0`, stored in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealCurve {
    p: BiPoly,
}

impl RealCurve {
    /// Validates a polynomial as a curve: real coefficients and positive
    /// degree. Any variable pair is accepted and relabelled to `(x, y)`.
    pub fn new(p: BiPoly) -> Result<Self> {
        let p = p.relabel(VarPair::XY);
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if p.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !p.is_real() {
            return Err(Error::NotReal);
        }
        Ok(Self { p: p.normalized() })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(crate::algebra::parse_poly(text, VarPair::XY)?)
    }

    pub fn poly(&self) -> &BiPoly {
        &self.p
    }

    pub fn degree(&self) -> u32 {
        self.p.total_degree().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!({ "P": self.p.to_string(), "degree": self.degree() })
    }

    /// A note when the defining polynomial visibly splits: a repeated
    /// factor, or a factor in a single variable.
    pub fn reducibility_warning(&self) -> Option<String> {
        let sf = self.p.squarefree_full();
        if !sf.equals_up_to_scalar(&self.p) {
            return Some(format!("polynomial has a repeated factor; using its squarefree part {sf}"));
        }
        for v in [Var::First, Var::Second] {
            if self.p.degree_in(v).unwrap_or(0) == 0 {
                continue;
            }
            let content = self.p.to_recursive(v).content();
            if content.degree().unwrap_or(0) > 0 {
                let name = VarPair::XY.name_of(v.other());
                return Some(format!(
                    "polynomial is reducible: it has a factor in `{name}` alone ({})",
                    content.to_string_var(name)
                ));
            }
        }
        None
    }
}

impl std::fmt::Display for RealCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.p.fmt(f)
    }
}

/// The complexified curve `Q(z, w) = 0`; the Schwarz function is the
/// algebraic function `w = S(z)` it defines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchwarzForm {
    q: BiPoly,
}

impl SchwarzForm {
    /// Accepts a Hermitian-symmetric polynomial in `(z, w)`, reducing it to
    /// its squarefree normal form.
    pub fn new(q: BiPoly) -> Result<Self> {
        let q = q.relabel(VarPair::ZW);
        if q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if q.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !q.is_hermitian() {
            return Err(Error::SymmetryViolation);
        }
        let q = q.squarefree_full();
        if q.degree_in(Var::Second).unwrap_or(0) == 0 {
            return Err(Error::DegenerateCurve("no dependence on w".into()));
        }
        Ok(Self { q })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(crate::algebra::parse_poly(text, VarPair::ZW)?)
    }

    pub fn poly(&self) -> &BiPoly {
        &self.q
    }

    /// Degree in `w`, the number of Schwarz branches.
    pub fn n(&self) -> u32 {
        self.q.degree_in(Var::Second).unwrap_or(0)
    }

    /// The `n` values of `w` with `Q(z, w) = 0` at a numeric `z`, with
    /// multiplicity. Fewer are returned where the leading coefficient in
    /// `w` vanishes.
    pub fn solve_w(&self, z: &BigComplex, prec: usize) -> Result<Vec<BigComplex>> {
        let num = NumBiPoly::from_exact(&self.q, prec);
        let coeffs = num.specialize(Var::First, &z.with_precision(prec));
        let roots = roots_of_numeric(&coeffs, prec)?;
        Ok(roots
            .into_iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r, m))
            .collect())
    }
}

impl std::fmt::Display for SchwarzForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.q.fmt(f)
    }
}

fn zw_linear(cz: ExactComplex, cw: ExactComplex) -> BiPoly {
    BiPoly::from_terms([((1, 0), cz), ((0, 1), cw)], VarPair::ZW)
}

/// `Q(z, w) = (2i)^d P((z + w)/2, (z − w)/(2i))`, squarefree and normalized.
pub fn complexify(c: &RealCurve) -> Result<SchwarzForm> {
    let p = c.poly().squarefree_full();
    let half = ExactComplex::from_frac(1, 2);
    let x = zw_linear(half.clone(), half);
    let half_i = ExactComplex::new(BigRational::zero(), BigRational::new(1.into(), 2.into()));
    let y = zw_linear(-&half_i, half_i);
    let d = p.total_degree().unwrap_or(0);
    let q = p.substitute(&x, &y)?.scale(&ExactComplex::from_ints(0, 2).pow(d)).normalized();
    if q.is_constant() {
        return Err(Error::DegenerateCurve(format!("complexification of {c} is constant")));
    }
    SchwarzForm::new(q)
}

/// Inverse of [`complexify`]: `P(x, y) ∝ Q(x + iy, x − iy)` with real
/// coefficients.
pub fn realify(s: &SchwarzForm) -> Result<RealCurve> {
    realify_poly(s.poly())
}

pub(crate) fn realify_poly(q: &BiPoly) -> Result<RealCurve> {
    if q.hermitian_unit().is_none() {
        return Err(Error::SymmetryViolation);
    }
    let z = BiPoly::from_terms([((1, 0), ExactComplex::one()), ((0, 1), ExactComplex::i())], VarPair::XY);
    let w = BiPoly::from_terms([((1, 0), ExactComplex::one()), ((0, 1), -ExactComplex::i())], VarPair::XY);
    let r = q.relabel(VarPair::ZW).substitute(&z, &w)?;
    let lead = r.leading_term().ok_or(Error::ZeroPolynomial)?.1.clone();
    let r = r.scale(&lead.inv());
    if !r.is_real() {
        return Err(Error::SymmetryViolation);
    }
    RealCurve::new(r)
}

/// A point where `P = ∂P/∂x = ∂P/∂y = 0`.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub x: BigComplex,
    pub y: BigComplex,
    /// Whether both coordinates are real within `2^{-prec/4}`.
    pub real: bool,
}

impl SingularPoint {
    pub fn to_json(&self) -> Value {
        json!({
            "x": [self.x.re_f64(), self.x.im_f64()],
            "y": [self.y.re_f64(), self.y.im_f64()],
            "real": self.real,
        })
    }
}

const SHEARS: [(i64, i64); 4] = [(0, 1), (7, 13), (-5, 11), (3, 17)];

/// `P(x + αy, y)`.
pub(crate) fn apply_shear(p: &BiPoly, alpha: &ExactComplex) -> BiPoly {
    let x = BiPoly::from_terms([((1, 0), ExactComplex::one()), ((0, 1), alpha.clone())], VarPair::XY);
    p.substitute(&x, &BiPoly::var(Var::Second, VarPair::XY)).expect("same pair")
}

/// The first shear from a fixed list after which `P` has a constant
/// leading coefficient in `y`, i.e. no vertical asymptotes.
pub(crate) fn generic_shear(p: &BiPoly) -> Result<(ExactComplex, BiPoly)> {
    let d = p.total_degree().unwrap_or(0);
    SHEARS
        .iter()
        .map(|&(n, m)| ExactComplex::from_frac(n, m))
        .map(|a| {
            let sheared = apply_shear(p, &a);
            (a, sheared)
        })
        .find(|(_, q)| q.degree_in(Var::Second) == Some(d) && !q.coeff(0, d).is_zero())
        .ok_or_else(|| Error::DegenerateCurve("no admissible shear".into()))
}

/// Eliminates `y` between `p` and `g`, or returns `g` itself when it does
/// not involve `y`.
pub(crate) fn eliminate_y(p: &BiPoly, g: &BiPoly) -> Result<crate::algebra::UniPoly> {
    if g.is_zero() {
        return Ok(crate::algebra::UniPoly::zero());
    }
    let r = if g.degree_in(Var::Second).unwrap_or(0) == 0 {
        g.clone()
    } else {
        p.resultant(g, Var::Second)?
    };
    Ok(r.as_univariate(Var::First).expect("y eliminated"))
}

/// All isolated complex solutions of `P = P_x = P_y = 0`.
///
/// The curve is sheared `x ↦ x + αy` so that `P` has constant leading
/// coefficient in `y`; candidates for `x` are the common roots of
/// `Res_y(P, P_x)` and `Res_y(P, P_y)`, and each is paired with the roots of
/// `P(x₀, y)` at which both partials vanish.
pub fn singular_points(c: &RealCurve, prec: usize) -> Result<Vec<SingularPoint>> {
    let (alpha, p) = generic_shear(c.poly())?;
    let px = p.partial(Var::First);
    let py = p.partial(Var::Second);
    let r1 = eliminate_y(&p, &px)?;
    let r2 = eliminate_y(&p, &py)?;
    if (r1.is_zero() && !px.is_zero()) || (r2.is_zero() && !py.is_zero()) || (r1.is_zero() && r2.is_zero()) {
        return Err(Error::NonIsolatedSingularities);
    }
    let g = if r1.is_zero() {
        r2
    } else if r2.is_zero() {
        r1
    } else {
        r1.gcd_monic(&r2)
    };
    if g.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let work = prec + 32;
    let num_p = NumBiPoly::from_exact(&p, work);
    let num_px = NumBiPoly::from_exact(&px, work);
    let num_py = NumBiPoly::from_exact(&py, work);
    let tol = 2f64.powi(-(prec as i32) / 4);
    let mut found: Vec<(BigComplex, BigComplex)> = Vec::new();
    for (x0, _) in crate::algebra::roots_numeric(&g, work)? {
        let coeffs = num_p.specialize(Var::First, &x0);
        for (y0, _) in roots_of_numeric(&coeffs, work)? {
            let (_, _, _, sx) = num_px.eval_with_partials(&x0, &y0);
            let (_, _, _, sy) = num_py.eval_with_partials(&x0, &y0);
            let vx = num_px.eval(&x0, &y0).abs_f64();
            let vy = num_py.eval(&x0, &y0).abs_f64();
            if vx <= tol * sx.max(1.0) && vy <= tol * sy.max(1.0) {
                let ax = BigComplex::from_exact(&alpha, work);
                let x = &x0 + &(&ax * &y0);
                let dup = found
                    .iter()
                    .any(|(a, b)| a.dist_f64(&x) <= tol * x.abs_f64().max(1.0) && b.dist_f64(&y0) <= tol * y0.abs_f64().max(1.0));
                if !dup {
                    found.push((x, y0));
                }
            }
        }
    }
    let mut out: Vec<SingularPoint> = found
        .into_iter()
        .map(|(x, y)| {
            let real = x.im_f64().abs() <= tol * x.abs_f64().max(1.0) && y.im_f64().abs() <= tol * y.abs_f64().max(1.0);
            let (x, y) = if real { (x.real_part(), y.real_part()) } else { (x, y) };
            SingularPoint { x: x.with_precision(prec), y: y.with_precision(prec), real }
        })
        .collect();
    out.sort_by(|a, b| a.x.cmp_lex(&b.x).then_with(|| a.y.cmp_lex(&b.y)));
    Ok(out)
}

/// Parameters of the built-in curve families.
#[derive(Clone, Debug, PartialEq)]
pub enum Preset {
    /// Circle with center `z0` and radius `r`.
    Circle { z0: ExactComplex, r: BigRational },
    /// Line through two distinct points.
    Line { z1: ExactComplex, z2: ExactComplex },
    /// `x²/a² + y²/b² = 1`.
    Ellipse { a: BigRational, b: BigRational },
    /// `r^{2m} = a + b cos 2mθ` in polar coordinates scaled by `r^{2m}`.
    Rose { m: u32, a: BigRational, b: BigRational },
}

fn xy(terms: &[((u32, u32), ExactComplex)]) -> BiPoly {
    BiPoly::from_terms(terms.iter().cloned(), VarPair::XY)
}

fn real(q: &BigRational) -> ExactComplex {
    ExactComplex::real(q.clone())
}

/// `Re (x + iy)^k` as a real polynomial, built by repeated multiplication
/// with `x + iy`.
pub fn re_power(k: u32) -> BiPoly {
    let step = xy(&[((1, 0), ExactComplex::one()), ((0, 1), ExactComplex::i())]);
    let mut acc = BiPoly::constant(ExactComplex::one(), VarPair::XY);
    for _ in 0..k {
        acc = &acc * &step;
    }
    BiPoly::from_terms(acc.terms().map(|(k, c)| (*k, ExactComplex::real(c.re.clone()))), VarPair::XY)
}

/// Defining polynomial of a preset curve.
pub fn preset_curve(kind: &Preset) -> Result<RealCurve> {
    let one = ExactComplex::one();
    let p = match kind {
        Preset::Circle { z0, r } => {
            if !r.is_positive() {
                return Err(Error::InvalidParameter("circle radius must be positive".into()));
            }
            let dx = xy(&[((1, 0), one.clone()), ((0, 0), real(&-z0.re.clone()))]);
            let dy = xy(&[((0, 1), one.clone()), ((0, 0), real(&-z0.im.clone()))]);
            &(&dx.pow(2) + &dy.pow(2)) - &BiPoly::constant(real(&(r * r)), VarPair::XY)
        }
        Preset::Line { z1, z2 } => {
            if z1 == z2 {
                return Err(Error::InvalidParameter("line needs two distinct points".into()));
            }
            let dx = xy(&[((1, 0), one.clone()), ((0, 0), real(&-z1.re.clone()))]);
            let dy = xy(&[((0, 1), one.clone()), ((0, 0), real(&-z1.im.clone()))]);
            &dx.scale(&real(&(&z2.im - &z1.im))) - &dy.scale(&real(&(&z2.re - &z1.re)))
        }
        Preset::Ellipse { a, b } => {
            if !a.is_positive() || !b.is_positive() {
                return Err(Error::InvalidParameter("ellipse semi-axes must be positive".into()));
            }
            let (a2, b2) = (a * a, b * b);
            xy(&[((2, 0), real(&b2)), ((0, 2), real(&a2)), ((0, 0), real(&-(&a2 * &b2)))])
        }
        Preset::Rose { m, a, b } => {
            if *m == 0 {
                return Err(Error::InvalidParameter("rose index m must be positive".into()));
            }
            if b.is_zero() || b.abs() >= *a {
                return Err(Error::InvalidParameter("rose parameters need 0 < |b| < a".into()));
            }
            let r2 = xy(&[((2, 0), one.clone()), ((0, 2), one.clone())]);
            let rm = r2.pow(*m);
            let t = re_power(2 * m);
            &(&rm.pow(2) - &rm.scale(&real(a))) - &t.scale(&real(b))
        }
    };
    RealCurve::new(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn q(t: &str) -> BiPoly {
        crate::algebra::parse_poly(t, VarPair::ZW).unwrap().normalized()
    }

    #[test]
    fn complexify_examples() {
        let s = complexify(&RealCurve::parse("x^2+y^2-1").unwrap()).unwrap();
        assert_eq!(s.poly(), &q("z*w-1"));
        let s = complexify(&RealCurve::parse("y").unwrap()).unwrap();
        assert!(s.poly().equals_up_to_scalar(&q("z-w")));
        let s = complexify(&RealCurve::parse("x^2+y^2-2*x").unwrap()).unwrap();
        assert_eq!(s.poly(), &q("z*w-z-w"));
        let e = preset_curve(&Preset::Ellipse { a: rat(2), b: rat(1) }).unwrap();
        assert_eq!(complexify(&e).unwrap().poly(), &q("3*w^2-10*z*w+3*z^2+16"));
    }

    #[test]
    fn realify_examples() {
        let xyp = |t: &str| crate::algebra::parse_poly(t, VarPair::XY).unwrap();
        assert!(realify(&SchwarzForm::parse("z*w-1").unwrap()).unwrap().poly().equals_up_to_scalar(&xyp("x^2+y^2-1")));
        assert!(realify(&SchwarzForm::parse("z-w").unwrap()).unwrap().poly().equals_up_to_scalar(&xyp("y")));
        assert!(realify(&SchwarzForm::parse("z*w-z-w").unwrap()).unwrap().poly().equals_up_to_scalar(&xyp("x^2+y^2-2*x")));
        assert_eq!(SchwarzForm::parse("z*w-i"), Err(Error::SymmetryViolation));
    }

    #[test]
    fn singular_examples() {
        assert!(singular_points(&RealCurve::parse("x^2+y^2-1").unwrap(), 128).unwrap().is_empty());
        for text in ["y^2-x^3", "x^2-y^2"] {
            let s = singular_points(&RealCurve::parse(text).unwrap(), 128).unwrap();
            assert_eq!(s.len(), 1, "{text}");
            assert!(s[0].real && s[0].x.abs_f64() < 1e-20 && s[0].y.abs_f64() < 1e-20);
        }
        assert!(singular_points(&RealCurve::parse("y").unwrap(), 128).unwrap().is_empty());
    }

    #[test]
    fn presets() {
        let c = preset_curve(&Preset::Circle { z0: ExactComplex::zero(), r: rat(1) }).unwrap();
        assert_eq!(c.to_string(), "x^2 + y^2 - 1");
        let r = preset_curve(&Preset::Rose { m: 1, a: rat(2), b: rat(1) }).unwrap();
        let expected = RealCurve::parse("(x^2+y^2)^2 - 2*(x^2+y^2) - (x^2-y^2)").unwrap();
        assert_eq!(r, expected);
        let l = preset_curve(&Preset::Line { z1: ExactComplex::zero(), z2: ExactComplex::from_ints(1, 1) }).unwrap();
        assert_eq!(l, RealCurve::parse("x-y").unwrap());
        assert!(preset_curve(&Preset::Rose { m: 1, a: rat(1), b: rat(2) }).is_err());
        assert!(preset_curve(&Preset::Circle { z0: ExactComplex::zero(), r: rat(0) }).is_err());
    }

    #[test]
    fn reducibility_is_reported() {
        assert!(RealCurve::parse("x^2+y^2-1").unwrap().reducibility_warning().is_none());
        assert!(RealCurve::parse("(x^2+y^2-1)^2").unwrap().reducibility_warning().is_some());
        assert!(RealCurve::parse("(x-1)*(x*y-1)").unwrap().reducibility_warning().is_some());
    }
}
