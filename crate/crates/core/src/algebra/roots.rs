//! Root bounds and numeric roots of exact univariate polynomials.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::bigcomplex::{BigComplex, MIN_PRECISION};
use super::numeric::{aberth, cluster, horner};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

fn log2_approx(q: &BigRational) -> f64 {
    let log2 = |x: &BigInt| {
        let sh = x.bits().saturating_sub(60);
        ((x >> sh).to_f64().unwrap_or(f64::MAX)).log2() + sh as f64
    };
    log2(q.numer()) - log2(q.denom())
}

/// Smallest `m/2^s` (for the chosen `s`) with `m/2^s ≥ y^{1/e}`.
fn upper_root(y: &BigRational, e: u32, slack_bits: u32) -> BigRational {
    if y.is_zero() {
        return BigRational::zero();
    }
    let est = log2_approx(y) / e as f64;
    let s = (slack_bits as f64 + 2.0 - est).ceil().max(0.0) as u64;
    let scaled = y * BigRational::from_integer(BigInt::one() << (s * e as u64));
    let n: BigUint = scaled.ceil().to_integer().magnitude().clone();
    let mut m = n.nth_root(e);
    if num_traits::pow(m.clone(), e as usize) < n {
        m += 1u32;
    }
    BigRational::new(BigInt::from(m), BigInt::one() << s)
}

/// Exact rational upper bound on `max_i (n |a_i/a_n|)^{1/(n-i)}`, which
/// bounds the modulus of every root. Each radical is rounded up with
/// relative slack below `2^-60`.
pub fn root_bound(p: &UniPoly) -> Result<BigRational> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::ConstantPolynomial),
    };
    let lead = p.lc().norm_sqr();
    let nn = BigRational::from_integer(BigInt::from(n * n));
    let mut best = BigRational::zero();
    for (i, a) in p.coeffs()[..n].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let y = &nn * a.norm_sqr() / &lead;
        let r = upper_root(&y, 2 * (n - i) as u32, 60);
        if r > best {
            best = r;
        }
    }
    Ok(best)
}

/// All roots of `p` with multiplicities, to roughly `prec` bits.
///
/// Multiplicities come from an exact squarefree decomposition, and each
/// squarefree factor is solved by simultaneous iteration. Roots from
/// different factors that fall within `2^{-prec/4}` are merged. Output is
/// sorted by `(re, im)`.
pub fn roots_numeric(p: &UniPoly, prec: usize) -> Result<Vec<(BigComplex, usize)>> {
    if prec < MIN_PRECISION {
        return Err(Error::InvalidParameter(format!("precision must be at least {MIN_PRECISION} bits")));
    }
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let work = prec + 32;
    let mut pts = Vec::new();
    for (k, f) in p.squarefree_decomposition() {
        let zeros = f.coeffs().iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            pts.push((BigComplex::zero(prec), k));
        }
        let rest = &f.coeffs()[zeros..];
        if rest.len() < 2 {
            continue;
        }
        let cs: Vec<BigComplex> = rest.iter().map(|c| BigComplex::from_exact(c, work)).collect();
        let res = aberth(&cs, work, 300 + 60 * cs.len());
        if !res.converged {
            return Err(Error::NoConvergence { iterations: res.iterations });
        }
        pts.extend(res.roots.into_iter().map(|r| (r.with_precision(prec), k)));
    }
    let out = cluster(pts, 2f64.powi(-(prec as i32) / 4));
    let pc = p.to_big(work);
    let norm: f64 = pc.iter().map(BigComplex::abs_f64).sum();
    let tol = 2f64.powi(-(prec as i32) / 2);
    for (r, _) in &out {
        let (v, _) = horner(&pc, &r.with_precision(work));
        let scale: f64 = pc
            .iter()
            .enumerate()
            .map(|(j, c)| c.abs_f64() * r.abs_f64().powi(j as i32))
            .sum::<f64>()
            .max(norm);
        if v.abs_f64() > tol * scale {
            return Err(Error::NoConvergence { iterations: 0 });
        }
    }
    Ok(out)
}

/// Real roots of a real polynomial, i.e. the numeric roots whose imaginary
/// part is below `2^{-prec/4}` relative to `max(1, |r|)`.
pub fn real_roots(p: &UniPoly, prec: usize) -> Result<Vec<(BigComplex, usize)>> {
    let tol = 2f64.powi(-(prec as i32) / 4);
    Ok(roots_numeric(p, prec)?
        .into_iter()
        .filter(|(r, _)| r.im_f64().abs() <= tol * r.abs_f64().max(1.0))
        .map(|(r, m)| (r.real_part(), m))
        .collect())
}
