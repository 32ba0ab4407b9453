//! Multiprecision complex floating point.
//!
//! Results of binary operations carry the larger of the operand
//! precisions; nothing here ever rounds to fewer bits than its inputs.

use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::exact::ExactComplex;

/// Lowest precision any value may carry.
pub const MIN_PRECISION: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// `x · 2^e` without overflowing the intermediate power.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

pub(crate) fn float_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let Some((m, _, s, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let l = m.len();
    let mut v = ldexp(m[l - 1] as f64, e as i64 - 64);
    if l > 1 {
        v += ldexp(m[l - 2] as f64, e as i64 - 128);
    }
    if s == Sign::Neg {
        -v
    } else {
        v
    }
}

fn int_to_float(n: &BigInt, p: usize) -> BigFloat {
    let (sign, digits) = n.to_u64_digits();
    if digits.is_empty() {
        return BigFloat::from_word(0, p);
    }
    let s = if sign == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
    let mut f = BigFloat::from_words(&digits, s, (64 * digits.len()) as i32);
    // from_words keeps every input bit; round to the working precision.
    let _ = f.set_precision(p.max(64 * digits.len()), RM);
    f
}

/// Correctly rounded conversion of an exact rational.
pub fn rational_to_float(q: &BigRational, p: usize) -> BigFloat {
    let n = int_to_float(q.numer(), p + 64);
    if q.denom() == &BigInt::from(1) {
        let mut r = n;
        let _ = r.set_precision(p, RM);
        return r;
    }
    let d = int_to_float(q.denom(), p + 64);
    n.div(&d, p, RM)
}

/// Complex number with `astro_float::BigFloat` parts.
#[derive(Clone)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
    prec: usize,
}

impl BigComplex {
    fn from_parts(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        Self { re, im, prec }
    }

    pub fn from_real(re: BigFloat, prec: usize) -> Self {
        let p = prec.max(MIN_PRECISION);
        Self::from_parts(re, BigFloat::from_word(0, p), p)
    }

    pub fn zero(prec: usize) -> Self {
        let p = prec.max(MIN_PRECISION);
        Self::from_parts(BigFloat::from_word(0, p), BigFloat::from_word(0, p), p)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    pub fn i(prec: usize) -> Self {
        Self::from_f64(0.0, 1.0, prec)
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        let p = prec.max(MIN_PRECISION);
        Self::from_parts(BigFloat::from_f64(re, p), BigFloat::from_f64(im, p), p)
    }

    pub fn from_exact(z: &ExactComplex, prec: usize) -> Self {
        let p = prec.max(MIN_PRECISION);
        Self::from_parts(rational_to_float(&z.re, p), rational_to_float(&z.im, p), p)
    }

    pub fn from_rational(q: &BigRational, prec: usize) -> Self {
        Self::from_exact(&ExactComplex::real(q.clone()), prec)
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Same value rounded or padded to `prec` bits (never below the minimum).
    pub fn with_precision(&self, prec: usize) -> Self {
        let p = prec.max(MIN_PRECISION);
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        let _ = re.set_precision(p, RM);
        let _ = im.set_precision(p, RM);
        Self::from_parts(re, im, p)
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    /// The real part as a complex number with zero imaginary part.
    pub fn real_part(&self) -> Self {
        Self::from_parts(self.re.clone(), BigFloat::from_word(0, self.prec), self.prec)
    }

    pub fn re_f64(&self) -> f64 {
        float_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        float_to_f64(&self.im)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re_f64(), self.im_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    pub fn conj(&self) -> Self {
        Self::from_parts(self.re.clone(), self.im.clone().neg(), self.prec)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.prec, RM)
    }

    /// Modulus as `f64`, computed without squaring overflow.
    pub fn abs_f64(&self) -> f64 {
        let (a, b) = self.to_f64();
        if a.is_finite() && b.is_finite() && (a != 0.0 || b != 0.0 || self.is_zero()) {
            return a.hypot(b);
        }
        float_to_f64(&self.abs())
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        self * &Self::from_f64(k, 0.0, self.prec)
    }

    pub fn mul_i(&self) -> Self {
        Self::from_parts(self.im.clone().neg(), self.re.clone(), self.prec)
    }

    pub fn recip(&self) -> Self {
        &Self::one(self.prec) / self
    }

    pub fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.prec);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let p = self.prec;
        with_consts(|cc| {
            let m = self.re.exp(p, RM, cc);
            let c = self.im.cos(p, RM, cc);
            let s = self.im.sin(p, RM, cc);
            Self::from_parts(m.mul(&c, p, RM), m.mul(&s, p, RM), p)
        })
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec;
        if self.is_zero() {
            return Self::zero(p);
        }
        let r = self.abs();
        let two = BigFloat::from_word(2, p);
        // sqrt((r + |re|)/2), then the other part from im / (2·that)
        let t = r.add(&self.re.abs(), p, RM).div(&two, p, RM).sqrt(p, RM);
        let u = self.im.abs().div(&t.mul(&two, p, RM), p, RM);
        let (re, im) = if self.re.is_positive() || self.re.is_zero() {
            (t, u)
        } else {
            (u, t)
        };
        let im = if self.im.is_negative() { im.neg() } else { im };
        Self::from_parts(re, im, p)
    }

    /// Principal `k`-th root, refined by Newton from an `f64` estimate.
    pub fn nth_root(&self, k: u32) -> Self {
        let p = self.prec;
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        if k == 2 {
            return self.sqrt();
        }
        let (a, b) = self.to_f64();
        let r = a.hypot(b).powf(1.0 / k as f64);
        let th = b.atan2(a) / k as f64;
        let mut x = Self::from_f64(r * th.cos(), r * th.sin(), p);
        if !x.is_finite() || x.is_zero() {
            return x;
        }
        let kk = Self::from_f64(k as f64, 0.0, p);
        let tol = 2f64.powi(-(p as i32) + 4);
        for _ in 0..(8 + p / 16) {
            let xk1 = x.powi(k as i64 - 1);
            let step = &(&(&x * &xk1) - self) / &(&kk * &xk1);
            x = &x - &step;
            if step.abs_f64() <= tol * x.abs_f64() {
                break;
            }
        }
        x
    }

    pub fn dist_f64(&self, o: &Self) -> f64 {
        (self - o).abs_f64()
    }

    /// Lexicographic comparison on `(re, im)`.
    pub fn cmp_lex(&self, o: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let c = |a: &BigFloat, b: &BigFloat| match a.cmp(b) {
            Some(x) if x < 0 => Ordering::Less,
            Some(x) if x > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        };
        c(&self.re, &o.re).then_with(|| c(&self.im, &o.im))
    }

    /// Decimal rendering with `digits` significant digits per part.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let (a, b) = self.to_f64();
        let sign = if b < 0.0 { '-' } else { '+' };
        format!("{:.*e}{}{:.*e}i", digits, a, sign, digits, b.abs())
    }
}

fn combine(a: &BigComplex, b: &BigComplex) -> usize {
    a.prec.max(b.prec)
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = combine(self, o);
        BigComplex::from_parts(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM), p)
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = combine(self, o);
        BigComplex::from_parts(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM), p)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = combine(self, o);
        let q = p + 8;
        let re = self.re.mul(&o.re, q, RM).sub(&self.im.mul(&o.im, q, RM), p, RM);
        let im = self.re.mul(&o.im, q, RM).add(&self.im.mul(&o.re, q, RM), p, RM);
        BigComplex::from_parts(re, im, p)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for &BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        let p = combine(self, o);
        let q = p + 8;
        if o.im.is_zero() {
            return BigComplex::from_parts(self.re.div(&o.re, p, RM), self.im.div(&o.re, p, RM), p);
        }
        let d = o.re.mul(&o.re, q, RM).add(&o.im.mul(&o.im, q, RM), q, RM);
        let re = self.re.mul(&o.re, q, RM).add(&self.im.mul(&o.im, q, RM), q, RM);
        let im = self.im.mul(&o.re, q, RM).sub(&self.re.mul(&o.im, q, RM), q, RM);
        BigComplex::from_parts(re.div(&d, p, RM), im.div(&d, p, RM), p)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::from_parts(self.re.clone().neg(), self.im.clone().neg(), self.prec)
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(17))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(15))
    }
}

impl PartialEq for BigComplex {
    fn eq(&self, o: &Self) -> bool {
        self.re.cmp(&o.re) == Some(0) && self.im.cmp(&o.im) == Some(0)
    }
}

/// Exact rational value of a float (used when a numeric coordinate must
/// enter exact arithmetic, e.g. user-supplied base points).
pub fn float_to_rational(x: &BigFloat) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let Some((m, _, s, e, _)) = x.as_raw_parts() else {
        return BigRational::zero();
    };
    let mut n = BigInt::zero();
    for w in m.iter().rev() {
        n = (n << 64) + BigInt::from(*w);
    }
    let shift = e as i64 - 64 * m.len() as i64;
    let mut q = BigRational::from_integer(n);
    if shift >= 0 {
        q *= BigRational::from_integer(BigInt::from(1) << (shift as usize));
    } else {
        q /= BigRational::from_integer(BigInt::from(1) << ((-shift) as usize));
    }
    if s == Sign::Neg {
        -q
    } else {
        q
    }
}

impl BigComplex {
    pub fn to_exact(&self) -> ExactComplex {
        ExactComplex::new(float_to_rational(&self.re), float_to_rational(&self.im))
    }

    /// π at the given precision.
    pub fn pi(prec: usize) -> BigFloat {
        with_consts(|cc| cc.pi(prec.max(MIN_PRECISION), RM))
    }

    /// `e^{iθ}` for `θ = 2π·frac`.
    pub fn unit_root(frac: &BigRational, prec: usize) -> Self {
        let p = prec.max(MIN_PRECISION);
        let th = Self::pi(p + 16)
            .mul(&BigFloat::from_word(2, p), p + 16, RM)
            .mul(&rational_to_float(frac, p + 16), p, RM);
        with_consts(|cc| Self::from_parts(th.cos(p, RM, cc), th.sin(p, RM, cc), p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn conversions_round_trip() {
        for v in [1.0, -3.5, 1e-30, 12345.678, 1e300] {
            let z = BigComplex::from_f64(v, -v, 128);
            assert_eq!(z.to_f64(), (v, -v));
        }
        let q = BigRational::new(1.into(), 3.into());
        let x = BigComplex::from_rational(&q, 128);
        assert!((x.re_f64() - 1.0 / 3.0).abs() < 1e-16);
        let back = x.to_exact();
        assert!((back.re.clone() - q).abs() < BigRational::new(1.into(), BigInt::from(1) << 120));
    }

    #[test]
    fn euler_identity() {
        let pi = BigComplex::pi(128);
        let z = BigComplex::from_parts(BigFloat::from_word(0, 128), pi, 128).exp();
        assert!((&z + &BigComplex::one(128)).abs_f64() < 2f64.powi(-120));
    }

    #[test]
    fn roots_are_principal() {
        let z = BigComplex::from_f64(-4.0, 0.0, 128);
        let s = z.sqrt();
        assert!((s.re_f64()).abs() < 1e-30 && (s.im_f64() - 2.0).abs() < 1e-30);
        let w = BigComplex::from_f64(0.0, -8.0, 128).nth_root(3);
        let back = w.powi(3);
        assert!((&back - &BigComplex::from_f64(0.0, -8.0, 128)).abs_f64() < 1e-35);
        assert!(w.re_f64() > 0.0);
    }

    #[test]
    fn precision_never_drops() {
        let a = BigComplex::from_f64(1.0, 2.0, 256);
        let b = BigComplex::from_f64(3.0, 4.0, 64);
        assert_eq!((&a * &b).precision(), 256);
        assert_eq!(BigComplex::zero(8).precision(), MIN_PRECISION);
    }
}
