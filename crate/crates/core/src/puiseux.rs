//! Branch points and Newton–Puiseux expansions of the Schwarz function at
//! infinity.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::numeric::{horner, roots_of_numeric};
use crate::algebra::{roots_numeric, BiPoly, BigComplex, ExactComplex, UniPoly, Var};
use crate::curve::SchwarzForm;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 8;
pub const DEFAULT_PRECISION: usize = 128;
const MAX_DOUBLINGS: u32 = 3;

/// Finite points where some branch of `w(z)` fails to continue
/// analytically: zeros of the discriminant in `w` and of the leading
/// coefficient in `w`. Sorted by `(re, im)`.
pub fn branch_points(s: &SchwarzForm, prec: usize) -> Result<Vec<BigComplex>> {
    let q = s.poly();
    let mut polys: Vec<UniPoly> = Vec::new();
    if s.n() >= 2 {
        let disc = q
            .resultant(&q.partial(Var::Second), Var::Second)?
            .as_univariate(Var::First)
            .expect("w eliminated");
        if disc.is_zero() {
            return Err(Error::ZeroDiscriminant);
        }
        polys.push(disc);
    }
    let n = s.n();
    let lead = UniPoly::from_coeffs(
        (0..=q.degree_in(Var::First).unwrap_or(0))
            .map(|i| q.coeff(i, n))
            .collect(),
    );
    polys.push(lead);
    let mut pts: Vec<(BigComplex, usize)> = Vec::new();
    for p in polys {
        if p.degree().unwrap_or(0) > 0 {
            pts.extend(roots_numeric(&p.squarefree_part(), prec)?.into_iter().map(|(r, _)| (r, 1)));
        }
    }
    Ok(crate::algebra::numeric::cluster(pts, 2f64.powi(-(prec as i32) / 4))
        .into_iter()
        .map(|(r, _)| r)
        .collect())
}

/// A truncated Puiseux series `w = Σ c_k z^{e_k}` at `z = ∞`, with
/// exponents in `(1/m)ℤ` strictly decreasing.
#[derive(Clone, Debug)]
pub struct PuiseuxBranch {
    pub m: u32,
    pub terms: Vec<(BigRational, BigComplex)>,
    pub truncation_order: usize,
    /// The series terminates: the listed terms are the whole branch.
    pub exact: bool,
}

impl PuiseuxBranch {
    /// `None` for the branch `w ≡ 0`.
    pub fn leading_exponent(&self) -> Option<&BigRational> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn leading_coefficient(&self) -> Option<&BigComplex> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coefficient(&self, e: &BigRational) -> Option<&BigComplex> {
        self.terms.iter().find(|(x, _)| x == e).map(|(_, c)| c)
    }

    /// Sums the series at `z`, taking the principal `m`-th root of `z`.
    pub fn eval(&self, z: &BigComplex) -> BigComplex {
        let prec = z.precision();
        let root = z.nth_root(self.m);
        let m = BigInt::from(self.m);
        let mut acc = BigComplex::zero(prec);
        for (e, c) in &self.terms {
            let k = (e * BigRational::from_integer(m.clone())).to_integer().to_i64().expect("small exponent");
            acc = &acc + &(c * &root.powi(k));
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        let class = classify(self);
        json!({
            "m": self.m,
            "terms": self.terms.iter().map(|(e, c)| json!([
                e.numer().to_i64(), e.denom().to_i64(), c.re_f64(), c.im_f64()
            ])).collect::<Vec<_>>(),
            "truncation_order": self.truncation_order,
            "exact": self.exact,
            "class": class.tag,
            "limit": class.limit_json(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AsymptoticTag {
    LinearGrowth,
    BoundedFiniteLimit,
    DecayToZero,
    PoleAtInfinity,
    Other,
}

impl AsymptoticTag {
    pub fn as_str(self) -> &'static str {
        match self {
            AsymptoticTag::LinearGrowth => "LINEAR_GROWTH",
            AsymptoticTag::BoundedFiniteLimit => "BOUNDED_FINITE_LIMIT",
            AsymptoticTag::DecayToZero => "DECAY_TO_ZERO",
            AsymptoticTag::PoleAtInfinity => "POLE_AT_INFINITY",
            AsymptoticTag::Other => "OTHER",
        }
    }
}

impl std::fmt::Display for AsymptoticTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Limit of a branch as `z → ∞`.
#[derive(Clone, Debug)]
pub enum Limit {
    Finite(BigComplex),
    Infinity,
}

#[derive(Clone, Debug)]
pub struct AsymptoticClass {
    pub tag: AsymptoticTag,
    pub limit: Limit,
}

impl AsymptoticClass {
    pub fn limit_json(&self) -> Value {
        match &self.limit {
            Limit::Finite(c) => json!([c.re_f64(), c.im_f64()]),
            Limit::Infinity => json!("inf"),
        }
    }
}

/// Growth class read off the leading exponent.
pub fn classify(b: &PuiseuxBranch) -> AsymptoticClass {
    let Some(e) = b.leading_exponent() else {
        return AsymptoticClass { tag: AsymptoticTag::DecayToZero, limit: Limit::Finite(BigComplex::zero(64)) };
    };
    let prec = b.terms[0].1.precision();
    let tag = if e.is_one() {
        AsymptoticTag::LinearGrowth
    } else if e.is_zero() {
        AsymptoticTag::BoundedFiniteLimit
    } else if e.is_negative() {
        AsymptoticTag::DecayToZero
    } else if e.is_integer() {
        AsymptoticTag::PoleAtInfinity
    } else {
        AsymptoticTag::Other
    };
    let limit = match tag {
        AsymptoticTag::BoundedFiniteLimit => Limit::Finite(b.terms[0].1.clone()),
        AsymptoticTag::DecayToZero => Limit::Finite(BigComplex::zero(prec)),
        _ => Limit::Infinity,
    };
    AsymptoticClass { tag, limit }
}

/// Coefficients of `G(s, v)` keyed by `(power of s, power of v)`, each with
/// the magnitude of the terms that were summed into it.
type Grid = BTreeMap<(i64, u32), (BigComplex, f64)>;

struct Ambiguous(String);

struct Expander {
    order: usize,
    prec: usize,
    zero_rel: f64,
}

struct Edge {
    j1: u32,
    j2: u32,
    k1: i64,
    /// Slope `γ = p/q` in lowest terms, `q > 0`.
    p: i64,
    q: i64,
}

fn lower_hull(points: &[(u32, i64)]) -> Vec<Edge> {
    let mut hull: Vec<(u32, i64)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as i64 - a.0 as i64) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 as i64 - a.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| {
            let (dj, dk) = ((w[1].0 - w[0].0) as i64, w[0].1 - w[1].1);
            let g = dj.gcd(&dk);
            Edge { j1: w[0].0, j2: w[1].0, k1: w[0].1, p: dk / g, q: dj / g }
        })
        .collect()
}

/// Partial branch under construction: `w = Σ terms + s^e v` with `t = s^m`.
#[derive(Clone)]
struct Prefix {
    m: i64,
    e: i64,
    terms: Vec<(BigRational, BigComplex)>,
}

impl Expander {
    fn is_zero(&self, v: &(BigComplex, f64)) -> bool {
        v.0.abs_f64() <= self.zero_rel * v.1
    }

    fn support(&self, g: &Grid) -> Vec<(u32, i64)> {
        let mut lowest: BTreeMap<u32, i64> = BTreeMap::new();
        for (&(k, j), v) in g {
            if !self.is_zero(v) {
                lowest.entry(j).and_modify(|x| *x = (*x).min(k)).or_insert(k);
            }
        }
        lowest.into_iter().collect()
    }

    /// `s^{-κ} G(s^q, s^p (c + v))` with `κ = q k + p j` along the edge.
    fn substitute(&self, g: &Grid, edge: &Edge, c: &BigComplex) -> Grid {
        let kappa = edge.q * edge.k1 + edge.p * edge.j1 as i64;
        let jmax = g.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        let mut cpow = vec![BigComplex::one(self.prec)];
        for l in 0..jmax {
            let next = &cpow[l] * c;
            cpow.push(next);
        }
        let cabs: Vec<f64> = cpow.iter().map(BigComplex::abs_f64).collect();
        let mut binom = vec![vec![1u64]];
        for j in 1..=jmax {
            let prev = &binom[j - 1];
            let row: Vec<u64> = (0..=j)
                .map(|l| if l == 0 || l == j { 1 } else { prev[l - 1] + prev[l] })
                .collect();
            binom.push(row);
        }
        let mut out: Grid = BTreeMap::new();
        for (&(k, j), (a, amag)) in g {
            if self.is_zero(&(a.clone(), *amag)) {
                continue;
            }
            let sk = edge.q * k + edge.p * j as i64 - kappa;
            for l in 0..=j as usize {
                let b = binom[j as usize][l] as f64;
                let term = (a * &cpow[j as usize - l]).scale_f64(b);
                let mag = a.abs_f64() * cabs[j as usize - l] * b;
                let entry = out
                    .entry((sk, l as u32))
                    .or_insert_with(|| (BigComplex::zero(self.prec), 0.0));
                entry.0 = &entry.0 + &term;
                entry.1 += mag;
            }
        }
        out
    }

    /// Roots of the edge polynomial in `u = c^q`, with multiplicity.
    fn edge_roots(
        &self,
        g: &Grid,
        exact: Option<&BiPoly>,
        edge: &Edge,
    ) -> std::result::Result<Vec<(BigComplex, usize)>, Ambiguous> {
        let len = ((edge.j2 - edge.j1) as i64 / edge.q) as usize;
        let on_edge = |l: usize| {
            let j = edge.j1 + (l as i64 * edge.q) as u32;
            let k = edge.k1 - l as i64 * edge.p;
            (k, j)
        };
        if let Some(f) = exact {
            let coeffs: Vec<ExactComplex> = (0..=len)
                .map(|l| {
                    let (k, j) = on_edge(l);
                    f.coeff(k as u32, j)
                })
                .collect();
            return roots_numeric(&UniPoly::from_coeffs(coeffs), self.prec)
                .map_err(|e| Ambiguous(e.to_string()));
        }
        let coeffs: Vec<BigComplex> = (0..=len)
            .map(|l| match g.get(&on_edge(l)) {
                Some(v) if !self.is_zero(v) => v.0.clone(),
                _ => BigComplex::zero(self.prec),
            })
            .collect();
        let roots = roots_of_numeric(&coeffs, self.prec).map_err(|e| Ambiguous(e.to_string()))?;
        if roots.iter().map(|r| r.1).sum::<usize>() != len {
            return Err(Ambiguous("edge polynomial lost roots".into()));
        }
        Ok(roots.into_iter().map(|(u, mu)| (refine_multiple(&coeffs, u, mu), mu)).collect())
    }

    fn expand(
        &self,
        g: Grid,
        exact: Option<&BiPoly>,
        prefix: Prefix,
        separated: bool,
        expected: Option<usize>,
        out: &mut Vec<PuiseuxBranch>,
    ) -> std::result::Result<(), Ambiguous> {
        let finish = |prefix: &Prefix, exact: bool, out: &mut Vec<PuiseuxBranch>| {
            out.push(PuiseuxBranch {
                m: prefix.m as u32,
                terms: prefix.terms.clone(),
                truncation_order: self.order,
                exact,
            })
        };
        if separated && prefix.terms.len() >= self.order {
            finish(&prefix, false, out);
            return Ok(());
        }
        let support = self.support(&g);
        let Some(&(jmin, _)) = support.first() else {
            return Err(Ambiguous("expansion vanished".into()));
        };
        for _ in 0..jmin {
            finish(&prefix, true, out);
        }
        let level0 = expected.is_none();
        let mut edges = lower_hull(&support);
        if !level0 {
            edges.retain(|e| e.p > 0);
            let count: usize = edges.iter().map(|e| (e.j2 - e.j1) as usize).sum();
            if count + jmin as usize != expected.unwrap_or(0) {
                return Err(Ambiguous(format!(
                    "expected {} small roots, polygon shows {}",
                    expected.unwrap_or(0),
                    count + jmin as usize
                )));
            }
        }
        for edge in &edges {
            for (u, mu) in self.edge_roots(&g, exact, edge)? {
                let c = u.nth_root(edge.q as u32);
                let e = prefix.e * edge.q + edge.p;
                let m = prefix.m * edge.q;
                let mut terms: Vec<(BigRational, BigComplex)> = prefix
                    .terms
                    .iter()
                    .map(|(x, y)| (x.clone(), y.clone()))
                    .collect();
                terms.push((BigRational::new(BigInt::from(-e), BigInt::from(m)), c.clone()));
                let g1 = self.substitute(&g, edge, &c);
                self.expand(g1, None, Prefix { m, e, terms }, mu == 1, Some(mu), out)?;
            }
        }
        Ok(())
    }
}

/// Polishes a numeric root of multiplicity `mu` by Newton's method on the
/// `(mu-1)`-th derivative, where it is simple.
fn refine_multiple(coeffs: &[BigComplex], u: BigComplex, mu: usize) -> BigComplex {
    if mu <= 1 {
        let mut x = u;
        for _ in 0..4 {
            let (v, d) = horner(coeffs, &x);
            if d.is_zero() {
                break;
            }
            x = &x - &(&v / &d);
        }
        return x;
    }
    let mut d: Vec<BigComplex> = coeffs.to_vec();
    for _ in 0..mu - 1 {
        d = d.iter().enumerate().skip(1).map(|(k, c)| c.scale_f64(k as f64)).collect();
    }
    let mut x = u.clone();
    for _ in 0..6 {
        let (v, dv) = horner(&d, &x);
        if dv.is_zero() {
            break;
        }
        let step = &v / &dv;
        x = &x - &step;
    }
    if x.is_finite() && x.dist_f64(&u) <= 2f64.powi(-8) * u.abs_f64().max(1.0) {
        x
    } else {
        u
    }
}

fn cmp_approx(a: &BigComplex, b: &BigComplex) -> Ordering {
    let tol = 1e-12 * a.abs_f64().max(b.abs_f64()).max(1.0);
    let (ar, ai) = a.to_f64();
    let (br, bi) = b.to_f64();
    if (ar - br).abs() > tol {
        return ar.partial_cmp(&br).unwrap_or(Ordering::Equal);
    }
    if (ai - bi).abs() > tol {
        return ai.partial_cmp(&bi).unwrap_or(Ordering::Equal);
    }
    Ordering::Equal
}

fn branch_order(a: &PuiseuxBranch, b: &PuiseuxBranch) -> Ordering {
    match (a.leading_exponent(), b.leading_exponent()) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some(x), Some(y)) => y.cmp(x).then_with(|| {
            for ((_, ca), (_, cb)) in a.terms.iter().zip(&b.terms) {
                match cmp_approx(ca, cb) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        }),
    }
}

fn expand_at(s: &SchwarzForm, order: usize, prec: usize) -> std::result::Result<Vec<PuiseuxBranch>, Ambiguous> {
    let q = s.poly();
    let dz = q.degree_in(Var::First).unwrap_or(0);
    // F(t, w) = t^{dz} Q(1/t, w), keyed by (power of t, power of w)
    let f = BiPoly::from_terms(q.terms().map(|(&(i, j), c)| ((dz - i, j), c.clone())), q.vars());
    let grid: Grid = f
        .terms()
        .map(|(&(k, j), c)| {
            let b = BigComplex::from_exact(c, prec);
            let mag = b.abs_f64();
            ((k as i64, j), (b, mag))
        })
        .collect();
    let ex = Expander { order, prec, zero_rel: 2f64.powi(-(prec as i32) / 2) };
    let mut out = Vec::new();
    let start = Prefix { m: 1, e: 0, terms: Vec::new() };
    ex.expand(grid, Some(&f), start, false, None, &mut out)?;
    let total: u32 = out.iter().map(|b| b.m).sum();
    if total != s.n() {
        return Err(Ambiguous(format!("found {total} of {} branches", s.n())));
    }
    out.sort_by(branch_order);
    Ok(out)
}

/// Newton–Puiseux expansions of all branches of `w(z)` at `z = ∞`, each
/// carried to at least `order` terms (or until it terminates). Precision is
/// doubled up to three times when roots of a polygon edge cannot be told
/// apart.
pub fn branches_at_infinity(s: &SchwarzForm, order: usize, prec: usize) -> Result<Vec<PuiseuxBranch>> {
    if order == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    if prec < crate::algebra::bigcomplex::MIN_PRECISION {
        return Err(Error::InvalidParameter("precision must be at least 64 bits".into()));
    }
    let mut p = prec;
    let mut reason = String::new();
    for _ in 0..=MAX_DOUBLINGS {
        match expand_at(s, order, p) {
            Ok(b) => return Ok(b),
            Err(Ambiguous(r)) => reason = r,
        }
        p *= 2;
    }
    Err(Error::PrecisionExhausted { bits: p / 2, reason })
}

/// Whether some branch tends to a finite limit at infinity; returns the
/// first such branch.
pub fn condition_a_holds(s: &SchwarzForm, order: usize, prec: usize) -> Result<(bool, Option<PuiseuxBranch>)> {
    let witness = branches_at_infinity(s, order, prec)?
        .into_iter()
        .find(|b| b.leading_exponent().is_none_or(|e| !e.is_positive()));
    Ok((witness.is_some(), witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(t: &str) -> SchwarzForm {
        SchwarzForm::parse(t).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn unit_circle_branch() {
        let b = branches_at_infinity(&form("z*w-1"), 8, 128).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].m, 1);
        assert!(b[0].exact);
        assert_eq!(b[0].terms.len(), 1);
        assert_eq!(b[0].leading_exponent(), Some(&rat(-1, 1)));
        assert!((b[0].terms[0].1.re_f64() - 1.0).abs() < 1e-30);
        assert_eq!(classify(&b[0]).tag, AsymptoticTag::DecayToZero);
    }

    #[test]
    fn shifted_circle_is_geometric() {
        let b = branches_at_infinity(&form("z*w-z-w"), 8, 128).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].terms.len(), 8);
        for (k, (e, c)) in b[0].terms.iter().enumerate() {
            assert_eq!(*e, rat(-(k as i64), 1));
            assert!((c.re_f64() - 1.0).abs() < 1e-25 && c.im_f64().abs() < 1e-25);
        }
        let cl = classify(&b[0]);
        assert_eq!(cl.tag, AsymptoticTag::BoundedFiniteLimit);
    }

    #[test]
    fn ellipse_linear_branches() {
        let b = branches_at_infinity(&form("3*w^2-10*z*w+3*z^2+16"), 6, 128).unwrap();
        assert_eq!(b.len(), 2);
        assert!((b[0].terms[0].1.re_f64() - 1.0 / 3.0).abs() < 1e-25);
        assert!((b[1].terms[0].1.re_f64() - 3.0).abs() < 1e-25);
        for br in &b {
            assert_eq!(classify(br).tag, AsymptoticTag::LinearGrowth);
        }
    }

    #[test]
    fn real_axis_fails_condition() {
        let (ok, w) = condition_a_holds(&form("z-w"), 8, 128).unwrap();
        assert!(!ok && w.is_none());
    }

    #[test]
    fn branch_point_examples() {
        let b = branch_points(&form("z*w-1"), 128).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].is_zero());
        assert!(branch_points(&form("w-z"), 128).unwrap().is_empty());
        let b = branch_points(&form("3*w^2-10*z*w+3*z^2+16"), 128).unwrap();
        assert_eq!(b.len(), 2);
        assert!((b[1].re_f64() - 3f64.sqrt()).abs() < 1e-30);
    }

    fn residual_slope(s: &SchwarzForm, b: &PuiseuxBranch) -> f64 {
        let q = crate::algebra::numeric::NumBiPoly::from_exact(s.poly(), 256);
        let at = |r: f64| {
            let z = BigComplex::from_f64(r * 0.6, r * 0.8, 256);
            q.eval(&z, &b.eval(&z)).abs_f64().ln()
        };
        (at(1e5) - at(1e3)) / (1e5f64.ln() - 1e3f64.ln())
    }

    #[test]
    fn parabola_ramifies() {
        let c = crate::curve::RealCurve::parse("y - x^2").unwrap();
        let s = crate::curve::complexify(&c).unwrap();
        let b = branches_at_infinity(&s, 6, 128).unwrap();
        assert_eq!(b.iter().map(|x| x.m).sum::<u32>(), s.n());
        assert!(b.iter().any(|x| x.m == 2));
        for br in &b {
            assert!(residual_slope(&s, br) < 1.0, "{br:?}");
        }
    }

    #[test]
    fn rose_limit() {
        use crate::curve::{complexify, preset_curve, Preset};
        let c = preset_curve(&Preset::Rose { m: 1, a: rat(2, 1), b: rat(1, 1) }).unwrap();
        let s = complexify(&c).unwrap();
        let (ok, w) = condition_a_holds(&s, 8, 128).unwrap();
        assert!(ok);
        let w = w.unwrap();
        let lim = match classify(&w).limit {
            Limit::Finite(c) => c.abs_f64(),
            Limit::Infinity => f64::INFINITY,
        };
        assert!((lim - 0.5f64.sqrt()).abs() < 1e-12);
    }
}
