//! Rational maps `f = num/den` over the Gaussian rationals, and images of
//! real curves under them.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::poly::resultant;
use crate::algebra::{parse_ast, Ast, BiPoly, BigComplex, ExactComplex, Poly, Ring, UniPoly, Var, VarPair};
use crate::curve::{complexify, realify_poly, RealCurve};
use crate::error::{Error, Result};

/// A reduced quotient of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMap {
    num: UniPoly,
    den: UniPoly,
}

/// Value of a map at a point.
#[derive(Clone, Debug)]
pub enum MapValue {
    Finite(BigComplex),
    Infinity,
}

impl MapValue {
    pub fn finite(&self) -> Option<&BigComplex> {
        match self {
            MapValue::Finite(v) => Some(v),
            MapValue::Infinity => None,
        }
    }
}

/// Cancels the gcd and makes the denominator monic.
pub fn make_map(num: UniPoly, den: UniPoly) -> Result<RationalMap> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RationalMap { num, den: UniPoly::one_poly() });
    }
    let g = num.gcd_monic(&den);
    let num = num.div_exact_field(&g).expect("gcd divides");
    let den = den.div_exact_field(&g).expect("gcd divides");
    let lc = den.lc().inv();
    Ok(RationalMap { num: num.scale(&lc), den: den.scale(&lc) })
}

impl RationalMap {
    pub fn polynomial(p: UniPoly) -> Self {
        Self { num: p, den: UniPoly::one_poly() }
    }

    pub fn identity() -> Self {
        Self::polynomial(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// `f*`: every coefficient conjugated.
    pub fn conj(&self) -> Self {
        Self { num: self.num.conj(), den: self.den.conj() }
    }

    /// Parses text such as `(z^2+1)/(2*z)` in the variable `z`.
    pub fn parse(text: &str) -> Result<Self> {
        let (n, d) = to_fraction(&parse_ast(text)?)?;
        make_map(n, d)
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_string_var("z"), "den": self.den.to_string_var("z") })
    }

    /// Exact value at an exact point; `None` at a pole.
    pub fn eval_exact(&self, z: &ExactComplex) -> Option<ExactComplex> {
        let d = self.den.eval(z);
        (!d.is_zero()).then(|| &self.num.eval(z) / &d)
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.to_string_var("z");
        if self.den.degree() == Some(0) {
            return f.write_str(&n);
        }
        let d = self.den.to_string_var("z");
        let n = if n.contains(' ') { format!("({n})") } else { n };
        let d = if d.chars().all(|c| c.is_ascii_alphanumeric() || c == '^') { d } else { format!("({d})") };
        write!(f, "{n} / {d}")
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn to_fraction(ast: &Ast) -> Result<(UniPoly, UniPoly)> {
    let one = UniPoly::one_poly();
    Ok(match ast {
        Ast::Num(c) => (UniPoly::constant(c.clone()), one),
        Ast::Var { name, pos } => {
            if name != "z" {
                return Err(Error::UnknownVariable { name: name.clone(), pos: *pos });
            }
            (UniPoly::x(), one)
        }
        Ast::Call { .. } => return Err(Error::NotRational),
        Ast::Neg(a) => {
            let (n, d) = to_fraction(a)?;
            (Ring::neg(&n), d)
        }
        Ast::Add(a, b) | Ast::Sub(a, b) => {
            let (n1, d1) = to_fraction(a)?;
            let (n2, d2) = to_fraction(b)?;
            let (l, r) = (Ring::mul(&n1, &d2), Ring::mul(&n2, &d1));
            let n = if matches!(ast, Ast::Add(..)) { Ring::add(&l, &r) } else { Ring::sub(&l, &r) };
            (n, Ring::mul(&d1, &d2))
        }
        Ast::Mul(a, b) => {
            let (n1, d1) = to_fraction(a)?;
            let (n2, d2) = to_fraction(b)?;
            (Ring::mul(&n1, &n2), Ring::mul(&d1, &d2))
        }
        Ast::Div(a, b, _) => {
            let (n1, d1) = to_fraction(a)?;
            let (n2, d2) = to_fraction(b)?;
            if n2.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            (Ring::mul(&n1, &d2), Ring::mul(&d1, &n2))
        }
        Ast::Pow(a, e, _) => {
            let (n, d) = to_fraction(a)?;
            let k = u32::try_from(e.unsigned_abs()).map_err(|_| Error::Overflow)?;
            if *e >= 0 {
                (n.pow(k), d.pow(k))
            } else if n.is_zero() {
                return Err(Error::ZeroDenominator);
            } else {
                (d.pow(k), n.pow(k))
            }
        }
    })
}

/// `num(z)/den(z)` at a numeric point, or infinity at a pole.
pub fn eval_map(f: &RationalMap, z: &BigComplex) -> Result<MapValue> {
    let n = f.num.eval_big(z);
    let d = f.den.eval_big(z);
    let tol = 2f64.powi(-(z.precision() as i32) / 2);
    let scale = |p: &UniPoly| {
        let r = z.abs_f64();
        p.coeffs().iter().enumerate().map(|(k, c)| BigComplex::from_exact(c, 64).abs_f64() * r.powi(k as i32)).sum::<f64>()
    };
    let d_small = d.abs_f64() <= tol * scale(&f.den);
    if d_small {
        if n.abs_f64() <= tol * scale(&f.num) {
            return Err(Error::Indeterminate);
        }
        return Ok(MapValue::Infinity);
    }
    Ok(MapValue::Finite(&n / &d))
}

/// `Σ c_k a^k b^{D-k}` for `p = Σ c_k x^k` and `D ≥ deg p`.
fn homogenize(p: &UniPoly, a: &UniPoly, b: &UniPoly, d: usize) -> UniPoly {
    let mut apow = vec![UniPoly::one_poly()];
    let mut bpow = vec![UniPoly::one_poly()];
    for k in 0..d {
        apow.push(Ring::mul(&apow[k], a));
        bpow.push(Ring::mul(&bpow[k], b));
    }
    p.coeffs().iter().enumerate().fold(UniPoly::zero(), |acc, (k, c)| {
        Ring::add(&acc, &Ring::mul(&apow[k], &bpow[d - k]).scale(c))
    })
}

/// `f ∘ g`.
pub fn compose(f: &RationalMap, g: &RationalMap) -> RationalMap {
    let d = f.degree();
    let n = homogenize(&f.num, &g.num, &g.den, d);
    let m = homogenize(&f.den, &g.num, &g.den, d);
    make_map(n, m).expect("denominator of a composition is nonzero")
}

type Tri = Poly<Poly<UniPoly>>;

/// Lifts a polynomial in one variable into the innermost or middle slot of
/// a bivariate coefficient ring.
fn inner(p: &UniPoly) -> Poly<UniPoly> {
    Poly::constant(p.clone())
}

/// Embeds `Q(z, w)` as a polynomial in `w` with coefficients in `(z, ·)`.
fn lift_w_main(q: &BiPoly) -> Tri {
    let rec = q.to_recursive(Var::Second);
    Poly::from_coeffs(
        rec.coeffs()
            .iter()
            .map(|row| Poly::from_coeffs(row.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect()))
            .collect(),
    )
}

/// `v·b(w) − a(w)` as a polynomial in `w` with coefficients in `(·, v)`.
fn linear_in_v(a: &UniPoly, b: &UniPoly) -> Tri {
    let n = a.coeffs().len().max(b.coeffs().len());
    Poly::from_coeffs(
        (0..n)
            .map(|k| inner(&UniPoly::from_coeffs(vec![-a.coeff(k), b.coeff(k)])))
            .collect(),
    )
}

/// Strips factors in a single variable from an eliminant in `(u, v)`.
fn strip_single_variable_factors(e: &BiPoly) -> BiPoly {
    let mut e = e.clone();
    for v in [Var::First, Var::Second] {
        if e.degree_in(Var::First).unwrap_or(0) == 0 || e.degree_in(Var::Second).unwrap_or(0) == 0 {
            return BiPoly::constant(ExactComplex::one(), e.vars());
        }
        let rec = e.to_recursive(v);
        let c = rec.content();
        if c.degree().unwrap_or(0) > 0 {
            let pp = Poly::from_coeffs(rec.coeffs().iter().map(|x| x.div_exact_field(&c).expect("content divides")).collect());
            e = BiPoly::from_recursive(&pp, v, e.vars());
        }
    }
    e
}

/// The eliminant `E(u, v)` with `E(f(z), f*(w)) = 0` on `Q(z, w) = 0`.
fn eliminant(f: &RationalMap, q: &BiPoly) -> BiPoly {
    let fs = f.conj();
    // eliminate w: coefficients in (z, v)
    let r1: Poly<UniPoly> = resultant(&lift_w_main(q), &linear_in_v(&fs.num, &fs.den));
    // eliminate z: main variable z, coefficients in (u, v)
    let r1_z: Tri = Poly::from_coeffs(r1.coeffs().iter().map(inner).collect());
    let n = f.num.coeffs().len().max(f.den.coeffs().len());
    let l2: Tri = Poly::from_coeffs(
        (0..n)
            .map(|k| {
                Poly::from_coeffs(vec![
                    UniPoly::constant(-f.num.coeff(k)),
                    UniPoly::constant(f.den.coeff(k)),
                ])
            })
            .collect(),
    );
    let e: Poly<UniPoly> = resultant(&r1_z, &l2);
    BiPoly::from_recursive(&e, Var::First, VarPair::UV)
}

/// The real curve containing `f(C)`.
pub fn image_curve(f: &RationalMap, c: &RealCurve) -> Result<RealCurve> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    let q = complexify(c)?;
    let e = eliminant(f, q.poly());
    if e.is_zero() {
        return Err(Error::DegenerateImage("elimination vanished identically".into()));
    }
    let stripped = strip_single_variable_factors(&e);
    if stripped.is_constant() {
        let u = e.to_recursive(Var::Second).content();
        return Err(Error::DegenerateImage(format!("{} = 0", u.to_string_var("u"))));
    }
    let mut sf = stripped.squarefree_full();
    if !sf.is_hermitian() {
        sf = sf.gcd(&sf.conj_swap())?;
        if sf.is_constant() {
            return Err(Error::DegenerateImage("eliminant has no Hermitian part".into()));
        }
    }
    realify_poly(&sf)
}

/// `Q_B(f(z), f*(w))` with denominators cleared.
pub fn pullback(f: &RationalMap, qb: &BiPoly) -> BiPoly {
    let fs = f.conj();
    let du = qb.degree_in(Var::First).unwrap_or(0) as usize;
    let dv = qb.degree_in(Var::Second).unwrap_or(0) as usize;
    let powers = |a: &UniPoly, d: usize| {
        let mut v = vec![UniPoly::one_poly()];
        for k in 0..d {
            v.push(Ring::mul(&v[k], a));
        }
        v
    };
    let (pn, pd) = (powers(&f.num, du), powers(&f.den, du));
    let (sn, sd) = (powers(&fs.num, dv), powers(&fs.den, dv));
    let mut out = BiPoly::zero(VarPair::ZW);
    for (&(i, j), c) in qb.terms() {
        let (i, j) = (i as usize, j as usize);
        let zpart = Ring::mul(&pn[i], &pd[du - i]);
        let wpart = Ring::mul(&sn[j], &sd[dv - j]);
        let a = BiPoly::from_univariate(&zpart, Var::First, VarPair::ZW);
        let b = BiPoly::from_univariate(&wpart, Var::Second, VarPair::ZW);
        out = &out + &(&a * &b).scale(c);
    }
    out
}

const SAMPLES: usize = 25;
const SAMPLE_PRECISION: usize = 256;

fn sample_z(k: usize) -> ExactComplex {
    let k = k as i64;
    &ExactComplex::from_frac(2 * k + 3, 7) + &(&ExactComplex::i() * &ExactComplex::from_frac(k % 5 - 2, 3))
}

/// Whether `N` vanishes at every solution of `Q_A(z, w) = 0` above a
/// sample `z`. Exact when `Q_A` is linear in `w`.
fn vanishes_on_fibre(qa: &BiPoly, n: &BiPoly, z: &ExactComplex) -> Result<Option<bool>> {
    let fibre = qa.specialize(Var::First, z);
    let deg = qa.degree_in(Var::Second).unwrap_or(0) as usize;
    if fibre.degree() != Some(deg) {
        return Ok(None);
    }
    if deg == 1 {
        let w = &-&fibre.coeff(0) / &fibre.coeff(1);
        return Ok(Some(n.eval(z, &w).is_zero()));
    }
    let zb = BigComplex::from_exact(z, SAMPLE_PRECISION);
    let num_n = crate::algebra::numeric::NumBiPoly::from_exact(n, SAMPLE_PRECISION);
    let num_q = crate::algebra::numeric::NumBiPoly::from_exact(qa, SAMPLE_PRECISION);
    let tol = 2f64.powi(-64);
    for (w, _) in crate::algebra::roots_numeric(&fibre, SAMPLE_PRECISION)? {
        let (qv, _, _, qs) = num_q.eval_with_partials(&zb, &w);
        if qv.abs_f64() > tol * qs.max(1.0) {
            return Err(Error::NoConvergence { iterations: 0 });
        }
        let (v, _, _, scale) = num_n.eval_with_partials(&zb, &w);
        if v.abs_f64() > tol * scale.max(1.0) {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// Decides whether `f` maps the curve `A` into the curve `B`: the
/// pulled-back form `N(z, w) = Q_B(f(z), f*(w))` must share every branch
/// with `Q_A` (vanishing resultant) and vanish on sampled fibres of `Q_A`.
pub fn maps_into(f: &RationalMap, a: &RealCurve, b: &RealCurve) -> Result<bool> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    let qa = complexify(a)?;
    let qb = complexify(b)?;
    let n = pullback(f, qb.poly());
    if n.is_zero() {
        return Ok(true);
    }
    let shares = if n.degree_in(Var::Second).unwrap_or(0) == 0 {
        false
    } else {
        qa.poly().resultant(&n, Var::Second)?.is_zero()
    };
    if !shares {
        return Ok(false);
    }
    let mut checked = 0;
    let mut k = 0;
    while checked < SAMPLES {
        match vanishes_on_fibre(qa.poly(), &n, &sample_z(k))? {
            Some(false) => return Ok(false),
            Some(true) => checked += 1,
            None => {}
        }
        k += 1;
    }
    Ok(true)
}
