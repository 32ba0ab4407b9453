//! Dense univariate polynomials over an exact integral domain, plus the
//! generic machinery built on them: pseudo-division, primitive remainder
//! sequences, Bareiss determinants and Sylvester resultants.
//!
//! Nesting `Poly<Poly<ExactComplex>>` gives the recursive view of a
//! bivariate polynomial, which is how every elimination in the crate runs.

use std::fmt;

use super::exact::ExactComplex;

/// Exact commutative ring operations needed by the polynomial algorithms.
///
/// Implementors are integral domains with computable gcds; fields return
/// `one` from `gcd` for any nonzero pair.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Quotient when `o` divides `self` exactly, `None` otherwise.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    /// The unit that `self` is divided by to reach its canonical associate.
    fn unit_part(&self) -> Self;
}

impl Ring for ExactComplex {
    fn zero() -> Self {
        ExactComplex::zero()
    }
    fn one() -> Self {
        ExactComplex::one()
    }
    fn from_int(n: i64) -> Self {
        ExactComplex::from_int(n)
    }
    fn is_zero(&self) -> bool {
        ExactComplex::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(self / o)
        }
    }
    fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() && o.is_zero() {
            Self::zero()
        } else {
            Self::one()
        }
    }
    fn unit_part(&self) -> Self {
        if self.is_zero() {
            Self::one()
        } else {
            self.clone()
        }
    }
}

/// Dense polynomial, `coeffs[k]` is the coefficient of `x^k`. No trailing
/// zeros are stored, so the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    /// `x`
    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&R::from_int(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| Ring::add(&Ring::mul(&acc, g), &Self::constant(c.clone())))
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = Ring::mul(&acc, &base);
            }
            base = Ring::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-remainder by zero polynomial");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.clone();
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc();
            r = Ring::sub(&r.scale(&lb), &b.scale(&lr).shift(dr - db));
            steps -= 1;
        }
        // Keep the exponent fixed so the result is a polynomial identity.
        for _ in 0..steps {
            r = r.scale(&lb);
        }
        r
    }

    /// Long division when every leading-coefficient quotient is exact.
    pub fn div_rem(&self, b: &Self) -> Option<(Self, Self)> {
        let db = b.degree()?;
        let lb = b.lc();
        let mut r = self.clone();
        let mut q = vec![R::zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.lc().div_exact(&lb)?;
            r = Ring::sub(&r, &b.scale(&c).shift(dr - db));
            q[dr - db] = c;
        }
        Some((Self::from_coeffs(q), r))
    }

    /// gcd of the coefficients.
    pub fn content(&self) -> R {
        let mut g = R::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g == R::one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        self.map_coeffs(|a| a.div_exact(&c).expect("content divides coefficients"))
    }

    /// Canonical associate: leading coefficient normalized by its unit part.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let u = self.lc().unit_part();
        self.map_coeffs(|a| a.div_exact(&u).expect("unit divides"))
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn from_int(n: i64) -> Self {
        Poly::constant(R::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::from_coeffs(v)
    }
    fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(o)?;
        r.is_zero().then_some(q)
    }
    /// Primitive remainder sequence; the result is normalized.
    fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part().normalized() };
        }
        a.primitive_part().scale(&c).normalized()
    }
    fn unit_part(&self) -> Self {
        Poly::constant(self.lc().unit_part())
    }
}

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact in an integral domain.
pub fn bareiss_determinant<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Sylvester matrix of `a` (degree m) and `b` (degree n), rows ordered from
/// the highest coefficient. Size `(m+n) × (m+n)`.
pub fn sylvester_matrix<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Vec<Vec<R>> {
    let m = a.degree().unwrap_or(0);
    let n = b.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![R::zero(); size];
        for k in 0..=m {
            row[r + k] = a.coeff(m - k);
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![R::zero(); size];
        for k in 0..=n {
            row[r + k] = b.coeff(n - k);
        }
        rows.push(row);
    }
    rows
}

/// Resultant `Res(a, b) = lc(a)^n ∏ b(αᵢ)` over the roots of `a`.
/// Either input may be a nonzero constant; a zero input gives zero.
pub fn resultant<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> R {
    match (a.degree(), b.degree()) {
        (None, _) | (_, None) => R::zero(),
        (Some(0), Some(n)) => pow_ring(&a.lc(), n),
        (Some(m), Some(0)) => pow_ring(&b.lc(), m),
        _ => bareiss_determinant(sylvester_matrix(a, b)),
    }
}

pub(crate) fn pow_ring<R: Ring>(x: &R, e: usize) -> R {
    (0..e).fold(R::one(), |acc, _| acc.mul(x))
}

impl<R: Ring + fmt::Debug> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}
