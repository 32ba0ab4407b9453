//! Sampled numeric checks of the Schwarz involution and of the reflection
//! identity `f(conj S_A(z)) = conj S_B(f(z))`.
//!
//! Tolerance comparisons are written as `!(x <= tol)` so that a NaN residual
//! counts as a failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod expr;
mod track;

pub use expr::MapExpr;
pub use track::{continue_schwarz, ContinuationPath, SchwarzTracker, DEFAULT_CLEARANCE_FACTOR, DEFAULT_STEPS};

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::numeric::NumBiPoly;
use crate::algebra::{BigComplex, Var};
use crate::curve::{complexify, realify, RealCurve, SchwarzForm};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: usize = 128;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 200;
/// Sampling radius as a fraction of the local radius of curvature.
pub const RADIUS_FRACTION: f64 = 0.05;
/// Relative distance within which a point counts as lying on a curve.
pub const ON_CURVE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub precision: usize,
    pub steps: usize,
    pub clearance_factor: f64,
    /// Overrides the curvature-based sampling radius.
    pub radius: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            precision: DEFAULT_PRECISION,
            steps: DEFAULT_STEPS,
            clearance_factor: DEFAULT_CLEARANCE_FACTOR,
            radius: None,
        }
    }
}

impl VerifyConfig {
    fn path(&self, a: &BigComplex, b: &BigComplex) -> ContinuationPath {
        let mut p = ContinuationPath::new(a.clone(), b.clone()).with_steps(self.steps);
        p.clearance = self.clearance_factor * p.length();
        p
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerificationReport {
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub failures: Vec<(f64, f64)>,
}

impl VerificationReport {
    fn from_residuals(points: &[BigComplex], residuals: &[f64], tolerance: f64) -> Self {
        let max_residual = residuals.iter().copied().fold(0.0, f64::max);
        let failures = points
            .iter()
            .zip(residuals)
            .filter(|(_, r)| !(**r <= tolerance))
            .map(|(z, _)| z.to_f64())
            .collect();
        Self { samples: points.len(), max_residual, tolerance, passed: max_residual <= tolerance, failures }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.samples,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "failures": self.failures.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

/// A real curve polynomial and its derivatives up to order two, evaluated
/// at real points.
struct LocalFrame {
    p: NumBiPoly,
    px: NumBiPoly,
    py: NumBiPoly,
    pxx: NumBiPoly,
    pxy: NumBiPoly,
    pyy: NumBiPoly,
    prec: usize,
}

impl LocalFrame {
    fn new(c: &RealCurve, prec: usize) -> Self {
        let p = c.poly();
        let px = p.partial(Var::First);
        let py = p.partial(Var::Second);
        let num = |q: &crate::algebra::BiPoly| NumBiPoly::from_exact(q, prec);
        Self {
            p: num(p),
            pxx: num(&px.partial(Var::First)),
            pxy: num(&px.partial(Var::Second)),
            pyy: num(&py.partial(Var::Second)),
            px: num(&px),
            py: num(&py),
            prec,
        }
    }

    fn coords(&self, z: &BigComplex) -> (BigComplex, BigComplex) {
        let z = z.with_precision(self.prec);
        (BigComplex::from_real(z.re().clone(), self.prec), BigComplex::from_real(z.im().clone(), self.prec))
    }

    fn at(q: &NumBiPoly, x: &BigComplex, y: &BigComplex) -> f64 {
        q.eval(x, y).re_f64()
    }

    /// `(P, Px, Py)` at `z = x + iy`.
    fn gradient(&self, z: &BigComplex) -> (f64, f64, f64) {
        let (x, y) = self.coords(z);
        (Self::at(&self.p, &x, &y), Self::at(&self.px, &x, &y), Self::at(&self.py, &x, &y))
    }

    /// First-order distance `|P| / |∇P|` from `z` to the curve.
    fn distance(&self, z: &BigComplex) -> f64 {
        let (v, gx, gy) = self.gradient(z);
        let g = gx.hypot(gy);
        if g == 0.0 {
            if v == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            v.abs() / g
        }
    }

    fn curvature(&self, z: &BigComplex) -> f64 {
        let (x, y) = self.coords(z);
        let (gx, gy) = (Self::at(&self.px, &x, &y), Self::at(&self.py, &x, &y));
        let (hxx, hxy, hyy) = (Self::at(&self.pxx, &x, &y), Self::at(&self.pxy, &x, &y), Self::at(&self.pyy, &x, &y));
        let g = gx.hypot(gy);
        (hxx * gy * gy - 2.0 * hxy * gx * gy + hyy * gx * gx).abs() / (g * g * g)
    }

    /// One Newton step on `P` along the gradient.
    fn project(&self, z: &BigComplex) -> BigComplex {
        let (v, gx, gy) = self.gradient(z);
        let g2 = gx * gx + gy * gy;
        if g2 == 0.0 {
            return z.clone();
        }
        let k = v / g2;
        z - &BigComplex::from_f64(k * gx, k * gy, self.prec)
    }
}

fn frac(x: f64) -> f64 {
    x - x.floor()
}

fn check_base(frame: &LocalFrame, base: &BigComplex) -> Result<()> {
    let d = frame.distance(base);
    if !(d <= ON_CURVE_TOLERANCE * base.abs_f64().max(1.0)) {
        return Err(Error::BaseOffCurve(d));
    }
    let (_, gx, gy) = frame.gradient(base);
    if gx.hypot(gy) == 0.0 {
        return Err(Error::BaseOffCurve(0.0));
    }
    Ok(())
}

fn radius_at(frame: &LocalFrame, base: &BigComplex, cap: f64, config: &VerifyConfig) -> f64 {
    if let Some(r) = config.radius {
        return r;
    }
    let k = frame.curvature(base);
    let by_curvature = if k > 0.0 { RADIUS_FRACTION / k } else { f64::INFINITY };
    by_curvature.min(RADIUS_FRACTION * base.abs_f64().max(1.0)).min(cap)
}

fn samples_around(frame: &LocalFrame, base: &BigComplex, count: usize, radius: f64) -> Vec<BigComplex> {
    let (_, gx, gy) = frame.gradient(base);
    let g = gx.hypot(gy);
    let (nx, ny) = (gx / g, gy / g);
    let (tx, ty) = (-ny, nx);
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let silver = 2f64.sqrt() - 1.0;
    let prec = frame.prec;
    (0..count)
        .map(|k| {
            let kk = k as f64 + 0.5;
            let t = radius * (2.0 * frac(kk * golden) - 1.0);
            let on = frame.project(&(base + &BigComplex::from_f64(t * tx, t * ty, prec)));
            if k % 2 == 0 {
                on
            } else {
                let s = 0.5 * radius * (2.0 * frac(kk * silver) - 1.0);
                &on + &BigComplex::from_f64(s * nx, s * ny, prec)
            }
        })
        .collect()
}

/// Deterministic sample points near `base` on and beside the curve `c`:
/// tangent offsets projected back by one Newton step, every second one
/// then pushed off the curve along the normal.
pub fn sample_points(c: &RealCurve, base: &BigComplex, count: usize, config: &VerifyConfig) -> Result<Vec<BigComplex>> {
    let frame = LocalFrame::new(c, config.precision);
    check_base(&frame, base)?;
    let tracker = SchwarzTracker::new(&complexify(c)?, config.precision)?;
    let r = radius_at(&frame, base, 0.25 * tracker.branch_distance(base), config);
    Ok(samples_around(&frame, base, count, r))
}

fn relative(a: &BigComplex, b: &BigComplex) -> f64 {
    a.dist_f64(b) / b.abs_f64().max(1.0)
}

/// Checks `conj(S(conj(S(z)))) = z` near `base` with both evaluations of
/// `S` continued from `base`.
pub fn verify_involution(
    s: &SchwarzForm,
    base: &BigComplex,
    samples: usize,
    tol: f64,
    config: &VerifyConfig,
) -> Result<VerificationReport> {
    let prec = config.precision;
    let curve = realify(s)?;
    let frame = LocalFrame::new(&curve, prec);
    let base = base.with_precision(prec);
    check_base(&frame, &base)?;
    let tracker = SchwarzTracker::new(s, prec)?;
    let wb = tracker.polish(&base, &base.conj())?;
    let r = radius_at(&frame, &base, 0.25 * tracker.branch_distance(&base), config);
    let points = samples_around(&frame, &base, samples, r);
    let residuals = points
        .iter()
        .map(|z| {
            let w1 = tracker.continue_from(&config.path(&base, z), &wb)?;
            let u = w1.conj();
            let w2 = tracker.continue_from(&config.path(&base, &u), &wb)?;
            Ok(relative(&w2.conj(), z))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::from_residuals(&points, &residuals, tol))
}

/// `|f'(z)|` by a forward difference.
fn derivative_size(f: &MapExpr, z: &BigComplex) -> Result<f64> {
    let h = 2f64.powi(-40);
    let a = f.eval(z)?;
    let b = f.eval(&(z + &BigComplex::from_f64(h, 0.0, z.precision())))?;
    Ok(a.dist_f64(&b) / h)
}

/// Checks `f(conj S_A(z)) = conj S_B(f(z))` near `base` on `a`.
pub fn verify_reflection_identity(
    f: &MapExpr,
    a: &RealCurve,
    b: &RealCurve,
    base: &BigComplex,
    samples: usize,
    tol: f64,
    config: &VerifyConfig,
) -> Result<VerificationReport> {
    let prec = config.precision;
    let base = base.with_precision(prec);
    let frame_a = LocalFrame::new(a, prec);
    check_base(&frame_a, &base)?;
    let fb = f.eval(&base)?;
    let frame_b = LocalFrame::new(b, prec);
    let miss = frame_b.distance(&fb);
    if !(miss <= ON_CURVE_TOLERANCE * fb.abs_f64().max(1.0)) {
        return Err(Error::WrongTarget { distance: miss });
    }
    let ta = SchwarzTracker::new(&complexify(a)?, prec)?;
    let tb = SchwarzTracker::new(&complexify(b)?, prec)?;
    let wa = ta.polish(&base, &base.conj())?;
    let wb = tb.polish(&fb, &fb.conj())?;
    let stretch = derivative_size(f, &base)?.max(1e-12);
    let cap = (0.25 * ta.branch_distance(&base)).min(0.25 * tb.branch_distance(&fb) / stretch);
    let r = radius_at(&frame_a, &base, cap, config);
    let points = samples_around(&frame_a, &base, samples, r);
    let residuals = points
        .iter()
        .map(|z| {
            let sa = ta.continue_from(&config.path(&base, z), &wa)?;
            let lhs = f.eval(&sa.conj())?;
            let fz = f.eval(z)?;
            let sb = tb.continue_from(&config.path(&fb, &fz), &wb)?;
            Ok(relative(&lhs, &sb.conj()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::from_residuals(&points, &residuals, tol))
}
