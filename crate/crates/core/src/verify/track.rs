//! Predictor-corrector continuation of a single Schwarz branch.

use crate::algebra::numeric::NumBiPoly;
use crate::algebra::BigComplex;
use crate::curve::SchwarzForm;
use crate::error::{Error, Result};
use crate::puiseux::branch_points;

pub const DEFAULT_STEPS: usize = 64;
pub const DEFAULT_CLEARANCE_FACTOR: f64 = 1e-3;

/// Smallest parameter step tried before the tracker gives up.
const MIN_STEP: f64 = 1.0 / (1u64 << 30) as f64;
const CORRECTOR_ITERATIONS: usize = 10;
const POLISH_ITERATIONS: usize = 60;

/// Straight segment from `start` to `end` with a minimum allowed distance
/// to every branch point.
#[derive(Clone, Debug)]
pub struct ContinuationPath {
    pub start: BigComplex,
    pub end: BigComplex,
    pub steps: usize,
    pub clearance: f64,
}

impl ContinuationPath {
    /// Default subdivision, with clearance proportional to the length.
    pub fn new(start: BigComplex, end: BigComplex) -> Self {
        let len = start.dist_f64(&end);
        Self { start, end, steps: DEFAULT_STEPS, clearance: DEFAULT_CLEARANCE_FACTOR * len }
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps.max(1);
        self
    }

    pub fn length(&self) -> f64 {
        self.start.dist_f64(&self.end)
    }
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    (p.0 - a.0 - t * dx).hypot(p.1 - a.1 - t * dy)
}

/// Numeric form of `Q` together with its branch points, reused across many
/// continuations.
#[derive(Clone, Debug)]
pub struct SchwarzTracker {
    q: NumBiPoly,
    branch_points: Vec<BigComplex>,
    prec: usize,
}

impl SchwarzTracker {
    pub fn new(s: &SchwarzForm, prec: usize) -> Result<Self> {
        Ok(Self {
            q: NumBiPoly::from_exact(s.poly(), prec),
            branch_points: branch_points(s, prec)?,
            prec,
        })
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn branch_points(&self) -> &[BigComplex] {
        &self.branch_points
    }

    /// Distance from `z` to the nearest branch point, or infinity.
    pub fn branch_distance(&self, z: &BigComplex) -> f64 {
        self.branch_points.iter().map(|b| b.dist_f64(z)).fold(f64::INFINITY, f64::min)
    }

    /// `|Q(z, w)|` and the magnitude scale it is judged against.
    pub fn residual(&self, z: &BigComplex, w: &BigComplex) -> (f64, f64) {
        let (v, _, _, scale) = self.q.eval_with_partials(z, w);
        (v.abs_f64(), scale)
    }

    fn converged(&self, step: &BigComplex, w: &BigComplex) -> bool {
        step.abs_f64() <= 2f64.powi(-(self.prec as i32) + 8) * w.abs_f64().max(1.0)
    }

    /// Newton on `w ↦ Q(z, w)` from `w0`.
    pub fn polish(&self, z: &BigComplex, w0: &BigComplex) -> Result<BigComplex> {
        let mut w = w0.with_precision(self.prec);
        for _ in 0..POLISH_ITERATIONS {
            let (v, _, dw, _) = self.q.eval_with_partials(z, &w);
            if dw.is_zero() {
                return Err(Error::Divergence);
            }
            let step = &v / &dw;
            w = &w - &step;
            if !w.is_finite() {
                return Err(Error::Divergence);
            }
            if self.converged(&step, &w) {
                return Ok(w);
            }
        }
        Err(Error::Divergence)
    }

    fn check_clearance(&self, path: &ContinuationPath) -> Result<()> {
        let a = path.start.to_f64();
        let b = path.end.to_f64();
        for bp in &self.branch_points {
            let d = segment_distance(bp.to_f64(), a, b);
            if d < path.clearance {
                return Err(Error::ClearanceViolation { distance: d, clearance: path.clearance });
            }
        }
        Ok(())
    }

    /// One corrector run from the predicted value. Returns `None` when
    /// Newton fails to contract, which signals a step that is too long.
    fn correct(&self, z: &BigComplex, predicted: &BigComplex, jump: f64) -> Option<BigComplex> {
        let mut w = predicted.clone();
        let mut last = f64::INFINITY;
        for k in 0..CORRECTOR_ITERATIONS {
            let (v, _, dw, _) = self.q.eval_with_partials(z, &w);
            if dw.is_zero() {
                return None;
            }
            let step = &v / &dw;
            let size = step.abs_f64();
            let floor = 2f64.powi(-(self.prec as i32) / 2) * w.abs_f64().max(1.0);
            if k == 0 && size > 0.1 * jump + floor {
                return None;
            }
            if k > 1 && size > floor && size > 0.5 * last {
                return None;
            }
            w = &w - &step;
            if self.converged(&step, &w) {
                return Some(w);
            }
            last = size;
        }
        None
    }

    /// Tracks the branch through `(path.start, w_start)` to `path.end`.
    pub fn continue_from(&self, path: &ContinuationPath, w_start: &BigComplex) -> Result<BigComplex> {
        self.check_clearance(path)?;
        let p = self.prec;
        let z0 = path.start.with_precision(p);
        let dz = &path.end.with_precision(p) - &z0;
        let at = |t: f64| &z0 + &dz.scale_f64(t);
        let mut w = self.polish(&z0, w_start)?;
        let base_h = 1.0 / path.steps.max(1) as f64;
        let mut h = base_h;
        let mut t = 0.0;
        let mut za = z0.clone();
        while t < 1.0 {
            let t1 = (t + h).min(1.0);
            let zb = if t1 >= 1.0 { path.end.with_precision(p) } else { at(t1) };
            let (_, dzq, dwq, _) = self.q.eval_with_partials(&za, &w);
            if dwq.is_zero() {
                return Err(Error::Divergence);
            }
            let slope = -&(&dzq / &dwq);
            let delta = &zb - &za;
            let move_w = &slope * &delta;
            let predicted = &w + &move_w;
            let jump = move_w.abs_f64() + delta.abs_f64();
            match self.correct(&zb, &predicted, jump) {
                Some(next) => {
                    w = next;
                    za = zb;
                    t = t1;
                    h = (2.0 * h).min(base_h);
                }
                None => {
                    h /= 2.0;
                    if h < MIN_STEP {
                        return Err(Error::Divergence);
                    }
                }
            }
        }
        let (r, scale) = self.residual(&za, &w);
        if r > 2f64.powi(-(p as i32) / 2) * scale.max(1.0) {
            return Err(Error::Divergence);
        }
        Ok(w)
    }

    /// Tracks the branch that takes the value `conj(start)` at an on-curve
    /// start point.
    pub fn continue_path(&self, path: &ContinuationPath) -> Result<BigComplex> {
        self.continue_from(path, &path.start.conj())
    }
}

/// `S(end)` along `path` for the branch with `S(start) ≈ conj(start)`.
pub fn continue_schwarz(s: &SchwarzForm, path: &ContinuationPath, prec: usize) -> Result<BigComplex> {
    SchwarzTracker::new(s, prec)?.continue_path(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, 128)
    }

    fn run(q: &str, a: BigComplex, b: BigComplex) -> BigComplex {
        continue_schwarz(&SchwarzForm::parse(q).unwrap(), &ContinuationPath::new(a, b), 128).unwrap()
    }

    #[test]
    fn continuation_examples() {
        assert!(run("z*w-1", c(1.0, 0.0), c(2.0, 0.0)).dist_f64(&c(0.5, 0.0)) < 1e-30);
        assert!(run("z*w-z-w", c(2.0, 0.0), c(3.0, 0.0)).dist_f64(&c(1.5, 0.0)) < 1e-30);
        assert!(run("z-w", c(1.0, 0.0), c(5.0, 1.0)).dist_f64(&c(5.0, 1.0)) < 1e-30);
    }

    #[test]
    fn stationary_path_returns_conjugate() {
        let s = SchwarzForm::parse("3*w^2-10*z*w+3*z^2+16").unwrap();
        let z = c(2.0, 0.0);
        assert!(run("3*w^2-10*z*w+3*z^2+16", z.clone(), z.clone()).dist_f64(&z.conj()) < 1e-30);
        assert_eq!(SchwarzTracker::new(&s, 128).unwrap().branch_points().len(), 2);
    }

    #[test]
    fn clearance_is_enforced() {
        let err = continue_schwarz(
            &SchwarzForm::parse("z*w-1").unwrap(),
            &ContinuationPath::new(c(1.0, 0.0), c(-1.0, 0.0)),
            128,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ClearanceViolation { .. }));
    }
}
