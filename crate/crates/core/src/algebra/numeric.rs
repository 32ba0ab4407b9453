//! Multiprecision polynomial evaluation and simultaneous root finding.

use num_complex::Complex64;

use super::bigcomplex::BigComplex;
use super::bipoly::BiPoly;
use crate::error::{Error, Result};

/// A bivariate polynomial with multiprecision coefficients, for fast
/// repeated evaluation.
#[derive(Clone, Debug)]
pub struct NumBiPoly {
    terms: Vec<(u32, u32, BigComplex)>,
    prec: usize,
}

impl NumBiPoly {
    pub fn from_exact(p: &BiPoly, prec: usize) -> Self {
        Self {
            terms: p
                .terms()
                .map(|(&(i, j), c)| (i, j, BigComplex::from_exact(c, prec)))
                .collect(),
            prec,
        }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    fn powers(x: &BigComplex, n: u32) -> Vec<BigComplex> {
        let mut v = Vec::with_capacity(n as usize + 1);
        v.push(BigComplex::one(x.precision()));
        for k in 0..n as usize {
            let next = &v[k] * x;
            v.push(next);
        }
        v
    }

    fn max_exps(&self) -> (u32, u32) {
        self.terms
            .iter()
            .fold((0, 0), |(a, b), (i, j, _)| (a.max(*i), b.max(*j)))
    }

    /// Coefficients (ascending) of the univariate polynomial obtained by
    /// fixing one variable to `value`.
    pub fn specialize(&self, fixed: super::Var, value: &BigComplex) -> Vec<BigComplex> {
        let p = self.prec.max(value.precision());
        let (ma, mb) = self.max_exps();
        let (mf, mo) = match fixed {
            super::Var::First => (ma, mb),
            super::Var::Second => (mb, ma),
        };
        let pw = Self::powers(value, mf);
        let mut out = vec![BigComplex::zero(p); mo as usize + 1];
        for (i, j, c) in &self.terms {
            let (f, o) = match fixed {
                super::Var::First => (*i, *j),
                super::Var::Second => (*j, *i),
            };
            out[o as usize] = &out[o as usize] + &(c * &pw[f as usize]);
        }
        out
    }

    pub fn eval(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        self.eval_with_partials(a, b).0
    }

    /// `(P, ∂P/∂a, ∂P/∂b, scale)` where `scale = Σ |c| |a|^i |b|^j` is the
    /// magnitude against which residuals are judged.
    pub fn eval_with_partials(
        &self,
        a: &BigComplex,
        b: &BigComplex,
    ) -> (BigComplex, BigComplex, BigComplex, f64) {
        let p = self.prec.max(a.precision()).max(b.precision());
        let (ma, mb) = self.max_exps();
        let pa = Self::powers(a, ma);
        let pb = Self::powers(b, mb);
        let mut val = BigComplex::zero(p);
        let mut da = BigComplex::zero(p);
        let mut db = BigComplex::zero(p);
        let mut scale = 0.0;
        let (aa, bb) = (a.abs_f64(), b.abs_f64());
        for (i, j, c) in &self.terms {
            let (i, j) = (*i as usize, *j as usize);
            let cb = c * &pb[j];
            val = &val + &(&cb * &pa[i]);
            if i > 0 {
                da = &da + &(&cb * &pa[i - 1]).scale_f64(i as f64);
            }
            if j > 0 {
                db = &db + &(&(c * &pa[i]) * &pb[j - 1]).scale_f64(j as f64);
            }
            scale += c.abs_f64() * aa.powi(i as i32) * bb.powi(j as i32);
        }
        (val, da, db, scale)
    }
}

/// Horner evaluation of `Σ coeffs[k] x^k` together with its derivative.
pub fn horner(coeffs: &[BigComplex], x: &BigComplex) -> (BigComplex, BigComplex) {
    let p = x.precision();
    let mut v = BigComplex::zero(p);
    let mut d = BigComplex::zero(p);
    for c in coeffs.iter().rev() {
        d = &(&d * x) + &v;
        v = &(&v * x) + c;
    }
    (v, d)
}

/// The root-modulus bound `max_i (n |a_i/a_n|)^{1/(n-i)}` in floating point.
pub fn root_bound_f64(moduli: &[f64]) -> f64 {
    let n = moduli.len() - 1;
    let lead = moduli[n];
    (0..n)
        .map(|i| (n as f64 * moduli[i] / lead).powf(1.0 / (n - i) as f64))
        .fold(0.0, f64::max)
}

/// Result of the simultaneous iteration.
pub struct AberthRoots {
    pub roots: Vec<BigComplex>,
    pub converged: bool,
    pub iterations: usize,
}

fn aberth_f64(coeffs: &[Complex64], guesses: &mut [Complex64]) -> bool {
    let n = guesses.len();
    let dc: Vec<Complex64> = coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
    let ev = |cs: &[Complex64], x: Complex64| cs.iter().rev().fold(Complex64::new(0.0, 0.0), |a, c| a * x + c);
    for _ in 0..500 {
        let mut done = true;
        for k in 0..n {
            let z = guesses[k];
            let pz = ev(coeffs, z);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / ev(&dc, z);
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z - guesses[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                return false;
            }
            guesses[k] = z - w;
            if w.norm() > 1e-14 * z.norm().max(1e-300) {
                done = false;
            }
        }
        if done {
            return true;
        }
    }
    false
}

/// Aberth–Ehrlich iteration for all roots of `Σ coeffs[k] x^k` at `prec`
/// bits. Guesses start on the circle of radius `bound` (the root-modulus
/// bound). A double-precision pass seeds the multiprecision refinement when
/// the coefficients fit in `f64`.
pub fn aberth(coeffs: &[BigComplex], prec: usize, max_iter: usize) -> AberthRoots {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return AberthRoots { roots: Vec::new(), converged: true, iterations: 0 };
    }
    let moduli: Vec<f64> = coeffs.iter().map(BigComplex::abs_f64).collect();
    let bound = root_bound_f64(&moduli).max(1e-300);
    let seed = |k: usize| {
        let th = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
        Complex64::from_polar(bound, th)
    };
    let mut g64: Vec<Complex64> = (0..n).map(seed).collect();
    let c64: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c.re_f64(), c.im_f64())).collect();
    let finite = c64.iter().all(|c| c.re.is_finite() && c.im.is_finite()) && moduli[n] > 0.0;
    if finite && !aberth_f64(&c64, &mut g64) {
        g64 = (0..n).map(seed).collect();
    }
    let mut roots: Vec<BigComplex> = g64.iter().map(|c| BigComplex::from_f64(c.re, c.im, prec)).collect();
    let coeffs: Vec<BigComplex> = coeffs.iter().map(|c| c.with_precision(prec)).collect();
    let dcoeffs: Vec<BigComplex> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale_f64(k as f64))
        .collect();
    let tol = 2f64.powi(-(prec as i32) + 6);
    let eps = 2f64.powi(-(prec as i32));
    let one = BigComplex::one(prec);
    for it in 0..max_iter {
        let mut done = true;
        for k in 0..n {
            let z = roots[k].clone();
            let (pz, _) = horner(&coeffs, &z);
            if pz.is_zero() {
                continue;
            }
            let (dz, _) = horner(&dcoeffs, &z);
            let ratio = &pz / &dz;
            let mut s = BigComplex::zero(prec);
            for (j, r) in roots.iter().enumerate() {
                if j != k {
                    s = &s + &(&z - r).recip();
                }
            }
            let w = &ratio / &(&one - &(&ratio * &s));
            if !w.is_finite() {
                continue;
            }
            // corrections below the rounding noise of evaluating p at z
            // cannot shrink further
            let za = z.abs_f64();
            let magnitude: f64 = moduli.iter().rev().fold(0.0, |acc, m| acc * za + m);
            let noise = 16.0 * eps * magnitude / dz.abs_f64();
            if w.abs_f64() > (tol * za.max(tol)).max(noise) {
                done = false;
            }
            roots[k] = &z - &w;
        }
        if done {
            return AberthRoots { roots, converged: true, iterations: it + 1 };
        }
    }
    AberthRoots { roots, converged: false, iterations: max_iter }
}

/// Groups points closer than `radius · max(1, |x|)` (single linkage),
/// returning cluster centroids with their sizes, sorted lexicographically
/// on `(re, im)`.
pub fn cluster(points: Vec<(BigComplex, usize)>, radius: f64) -> Vec<(BigComplex, usize)> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            let scale = points[a].0.abs_f64().max(1.0);
            if points[a].0.dist_f64(&points[b].0) <= radius * scale {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for k in 0..n {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(k);
    }
    let mut out: Vec<(BigComplex, usize)> = groups
        .into_values()
        .map(|idx| {
            let prec = points[idx[0]].0.precision();
            let total: usize = idx.iter().map(|&k| points[k].1).sum();
            let mut sum = BigComplex::zero(prec);
            for &k in &idx {
                sum = &sum + &points[k].0.scale_f64(points[k].1 as f64);
            }
            if idx.len() == 1 {
                return (points[idx[0]].0.clone(), total);
            }
            (&sum / &BigComplex::from_f64(total as f64, 0.0, prec), total)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp_lex(&b.0));
    out
}

/// All roots of a polynomial with multiprecision coefficients, clustered
/// at `2^{-prec/4}`. Exact zero roots are split off first. Leading
/// coefficients below `2^{-prec/2}` relative to the largest are dropped.
pub fn roots_of_numeric(coeffs: &[BigComplex], prec: usize) -> Result<Vec<(BigComplex, usize)>> {
    let max = coeffs.iter().map(BigComplex::abs_f64).fold(0.0, f64::max);
    let mut cs: Vec<BigComplex> = coeffs.to_vec();
    let thr = max * 2f64.powi(-(prec as i32) / 2);
    while cs.last().is_some_and(|c| c.abs_f64() <= thr) {
        cs.pop();
    }
    if cs.len() <= 1 {
        return Ok(Vec::new());
    }
    let zeros = cs.iter().take_while(|c| c.abs_f64() <= thr).count();
    let rest = &cs[zeros..];
    let res = aberth(rest, prec + 32, 200 + 40 * rest.len());
    let mut pts: Vec<(BigComplex, usize)> = res.roots.into_iter().map(|r| (r.with_precision(prec), 1)).collect();
    if zeros > 0 {
        pts.push((BigComplex::zero(prec), zeros));
    }
    if !res.converged {
        // Multiple roots converge linearly; accept when the residuals are
        // small after clustering, otherwise report.
        let clustered = cluster(pts, 2f64.powi(-(prec as i32) / 4));
        let ok = clustered.iter().all(|(r, _)| {
            let (v, _) = horner(&cs, r);
            let scale: f64 = cs
                .iter()
                .enumerate()
                .map(|(k, c)| c.abs_f64() * r.abs_f64().max(1.0).powi(k as i32))
                .sum();
            v.abs_f64() <= scale * 2f64.powi(-(prec as i32) / 8)
        });
        return if ok { Ok(clustered) } else { Err(Error::NoConvergence { iterations: res.iterations }) };
    }
    Ok(cluster(pts, 2f64.powi(-(prec as i32) / 4)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aberth_finds_cube_roots_of_unity() {
        let cs: Vec<BigComplex> = [-1.0, 0.0, 0.0, 1.0].iter().map(|&v| BigComplex::from_f64(v, 0.0, 128)).collect();
        let r = roots_of_numeric(&cs, 128).unwrap();
        assert_eq!(r.len(), 3);
        for (z, m) in &r {
            assert_eq!(*m, 1);
            assert!((&z.powi(3) - &BigComplex::one(128)).abs_f64() < 1e-35);
        }
    }

    #[test]
    fn numeric_double_root_clusters() {
        // (x-1)^2 (x+2)
        let cs: Vec<BigComplex> = [2.0, -3.0, 0.0, 1.0].iter().map(|&v| BigComplex::from_f64(v, 0.0, 128)).collect();
        let r = roots_of_numeric(&cs, 128).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].1, 2);
        assert!((r[1].0.re_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_roots_split_off() {
        let cs: Vec<BigComplex> = [0.0, 0.0, -4.0, 1.0].iter().map(|&v| BigComplex::from_f64(v, 0.0, 128)).collect();
        let r = roots_of_numeric(&cs, 128).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().any(|(z, m)| z.is_zero() && *m == 2));
    }
}
