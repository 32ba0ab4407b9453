//! Reduction of Gaussian-rational polynomials modulo primes `p ≡ 1 (mod 4)`,
//! where `i` maps to a square root of `-1` in `F_p`. Provides cheap
//! certificates that a gcd is trivial, and a multi-modular gcd whose result
//! is confirmed by exact division.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::exact::ExactComplex;
use super::unipoly::UniPoly;

/// `F_p` together with one square root of `-1`.
#[derive(Clone, Copy, Debug)]
struct Field {
    p: u64,
    i: u64,
}

impl Field {
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b)
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    /// The same field with `i ↦ −i`.
    fn conjugate(self) -> Self {
        Self { p: self.p, i: self.p - self.i }
    }

    fn reduce_int(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits in u64")
    }

    fn reduce_rational(self, q: &BigRational) -> Option<u64> {
        let d = self.reduce_int(q.denom());
        (d != 0).then(|| self.mul(self.reduce_int(q.numer()), self.inv(d)))
    }

    fn reduce(self, c: &ExactComplex) -> Option<u64> {
        Some(self.add(self.reduce_rational(&c.re)?, self.mul(self.i, self.reduce_rational(&c.im)?)))
    }

    fn reduce_poly(self, f: &UniPoly) -> Option<Vec<u64>> {
        f.coeffs().iter().map(|c| self.reduce(c)).collect()
    }

    /// Monic gcd over `F_p`; both inputs are nonzero.
    fn gcd(self, mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
        while !b.is_empty() {
            let lb = self.inv(*b.last().unwrap());
            while a.len() >= b.len() {
                let c = self.mul(*a.last().unwrap(), lb);
                let shift = a.len() - b.len();
                for (k, bk) in b.iter().enumerate() {
                    a[shift + k] = self.sub(a[shift + k], self.mul(c, *bk));
                }
                a = trim(a);
            }
            std::mem::swap(&mut a, &mut b);
        }
        let l = self.inv(*a.last().unwrap());
        a.into_iter().map(|c| self.mul(c, l)).collect()
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let f = Field { p: n, i: 0 };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].iter().all(|&a| {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

const PRIME_COUNT: usize = 400;

/// Primes `p ≡ 1 (mod 4)` just below `2^61`, each with a root of `-1`.
fn fields() -> &'static [Field] {
    static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut p = (1u64 << 61) - 3;
        while out.len() < PRIME_COUNT {
            if is_prime(p) {
                let f = Field { p, i: 0 };
                let i = (2..)
                    .map(|c| f.pow(c, (p - 1) / 4))
                    .find(|&x| f.mul(x, x) == p - 1)
                    .expect("p ≡ 1 mod 4 has a root of -1");
                out.push(Field { p, i });
            }
            p -= 4;
        }
        out
    })
}

/// True when `a` and `b` provably have no common factor of positive degree.
/// `false` means "unknown".
pub(crate) fn certainly_coprime(a: &UniPoly, b: &UniPoly) -> bool {
    let f = fields()[0];
    let (Some(ra), Some(rb)) = (f.reduce_poly(a), f.reduce_poly(b)) else {
        return false;
    };
    let rb = trim(rb);
    if ra.is_empty() || ra.last() == Some(&0) || rb.is_empty() {
        return false;
    }
    f.gcd(ra, rb).len() == 1
}

/// True when `f` is provably squarefree: its reduction keeps its degree and
/// is coprime to its derivative. `false` means "unknown".
pub(crate) fn certainly_squarefree(f: &UniPoly) -> bool {
    f.degree().unwrap_or(0) > 0 && certainly_coprime(f, &f.derivative())
}

/// `n/d ≡ r (mod m)` with `|n|, d ≤ sqrt(m/2)`, if one exists.
fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Residues of the real and imaginary parts of each coefficient, combined
/// over the primes seen so far.
struct Accumulator {
    modulus: BigInt,
    re: Vec<BigInt>,
    im: Vec<BigInt>,
}

impl Accumulator {
    fn new(len: usize) -> Self {
        Self { modulus: BigInt::one(), re: vec![BigInt::zero(); len], im: vec![BigInt::zero(); len] }
    }

    fn absorb(&mut self, f: Field, re: &[u64], im: &[u64]) {
        let p = BigInt::from(f.p);
        let m_inv = BigInt::from(f.inv(f.reduce_int(&self.modulus)));
        for (acc, &r) in self.re.iter_mut().chain(self.im.iter_mut()).zip(re.iter().chain(im)) {
            // acc + M·((r − acc)·M⁻¹ mod p)
            let diff = (BigInt::from(r) - &*acc).mod_floor(&p);
            let k = (diff * &m_inv).mod_floor(&p);
            *acc += &self.modulus * k;
        }
        self.modulus *= p;
    }

    fn reconstruct(&self) -> Option<UniPoly> {
        let part = |v: &BigInt| rational_reconstruction(v, &self.modulus);
        let coeffs = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(a, b)| Some(ExactComplex::new(part(a)?, part(b)?)))
            .collect::<Option<Vec<_>>>()?;
        Some(UniPoly::from_coeffs(coeffs))
    }
}

/// Monic gcd of two nonzero polynomials by reduction modulo many primes,
/// or `None` if the primes run out before a candidate divides both inputs.
pub(crate) fn gcd_monic(a: &UniPoly, b: &UniPoly) -> Option<UniPoly> {
    let mut best: Option<(usize, Accumulator)> = None;
    let mut used = 0usize;
    let mut next_check = 1usize;
    for &f in fields() {
        let g = f.conjugate();
        let images = [f, g].map(|h| {
            let ra = h.reduce_poly(a)?;
            let rb = trim(h.reduce_poly(b)?);
            (ra.last() != Some(&0) && !rb.is_empty()).then(|| h.gcd(ra, rb))
        });
        let [Some(g1), Some(g2)] = images else { continue };
        if g1.len() != g2.len() {
            continue;
        }
        let d = g1.len() - 1;
        if d == 0 {
            return Some(UniPoly::one_poly());
        }
        match &best {
            Some((bd, _)) if d > *bd => continue,
            Some((bd, _)) if d == *bd => {}
            _ => {
                best = Some((d, Accumulator::new(d + 1)));
                used = 0;
                next_check = 1;
            }
        }
        // α = (σ₁ + σ₂)/2 and β = (σ₁ − σ₂)/(2i) recover Re and Im.
        let half = f.inv(2);
        let half_i = f.inv(f.mul(2, f.i));
        let re: Vec<u64> = g1.iter().zip(&g2).map(|(&x, &y)| f.mul(f.add(x, y), half)).collect();
        let im: Vec<u64> = g1.iter().zip(&g2).map(|(&x, &y)| f.mul(f.sub(x, y), half_i)).collect();
        let acc = &mut best.as_mut().expect("set above").1;
        acc.absorb(f, &re, &im);
        used += 1;
        if used == next_check {
            next_check = (next_check * 2).max(used + 1);
            if let Some(cand) = acc.reconstruct() {
                if a.div_exact_field(&cand).is_some() && b.div_exact_field(&cand).is_some() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    #[test]
    fn fields_are_valid() {
        for f in &fields()[..5] {
            assert_eq!(f.p % 4, 1);
            assert_eq!(f.mul(f.i, f.i), f.p - 1);
        }
        assert!(is_prime(2_305_843_009_213_693_921));
        assert!(!is_prime(2_305_843_009_213_693_923));
    }

    #[test]
    fn squarefree_certificates() {
        assert!(certainly_squarefree(&UniPoly::from_ints(&[-1, 0, 1])));
        assert!(!certainly_squarefree(&UniPoly::from_ints(&[1, 2, 1])));
        let g = UniPoly::from_coeffs(vec![ExactComplex::i(), ExactComplex::one()]);
        assert!(certainly_squarefree(&g));
        assert!(!certainly_squarefree(&Ring::mul(&g, &g)));
        // x^2 + 1 = (x - i)(x + i) is squarefree
        assert!(certainly_squarefree(&UniPoly::from_ints(&[1, 0, 1])));
    }

    #[test]
    fn coprimality_certificates() {
        let a = UniPoly::from_ints(&[-1, 1]);
        let b = UniPoly::from_ints(&[1, 1]);
        assert!(certainly_coprime(&a, &b));
        assert!(!certainly_coprime(&a, &UniPoly::from_ints(&[-1, 0, 1])));
        assert!(!certainly_coprime(&a, &UniPoly::zero()));
        assert!(certainly_coprime(&a, &UniPoly::from_ints(&[3])));
    }

    #[test]
    fn reconstruction_recovers_fractions() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        let q = BigRational::new(BigInt::from(-355), BigInt::from(113));
        let r = (q.numer() * BigInt::from(113).modinv(&m).unwrap()).mod_floor(&m);
        assert_eq!(rational_reconstruction(&r, &m), Some(q));
    }

    #[test]
    fn modular_gcd_matches_euclid() {
        let g = UniPoly::from_coeffs(vec![
            ExactComplex::new(BigRational::new(3.into(), 7.into()), BigRational::new((-5).into(), 11.into())),
            ExactComplex::from_ints(2, 1),
            ExactComplex::one(),
        ]);
        let a = Ring::mul(&g, &UniPoly::from_ints(&[5, -1, 4]));
        let b = Ring::mul(&g, &UniPoly::from_coeffs(vec![ExactComplex::from_ints(1, 9), ExactComplex::from_frac(2, 3)]));
        assert_eq!(gcd_monic(&a, &b), Some(g.monic()));
        assert_eq!(gcd_monic(&a, &UniPoly::from_ints(&[1, 1])), Some(UniPoly::one_poly()));
    }
}
