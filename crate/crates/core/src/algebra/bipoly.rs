//! Sparse bivariate polynomials over the Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::exact::ExactComplex;
use super::poly::{resultant as poly_resultant, Poly, Ring};
use super::unipoly::{write_term, UniPoly};
use crate::error::{Error, Result};

/// Which pair of variable names a polynomial lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarPair {
    XY,
    ZW,
    UV,
}

impl VarPair {
    pub fn names(self) -> (&'static str, &'static str) {
        match self {
            VarPair::XY => ("x", "y"),
            VarPair::ZW => ("z", "w"),
            VarPair::UV => ("u", "v"),
        }
    }

    pub fn var_named(self, name: &str) -> Option<Var> {
        let (a, b) = self.names();
        if name == a {
            Some(Var::First)
        } else if name == b {
            Some(Var::Second)
        } else {
            None
        }
    }

    pub fn name_of(self, v: Var) -> &'static str {
        let (a, b) = self.names();
        match v {
            Var::First => a,
            Var::Second => b,
        }
    }
}

impl fmt::Display for VarPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.names();
        write!(f, "({a},{b})")
    }
}

/// A variable slot within a [`VarPair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    First,
    Second,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::First => Var::Second,
            Var::Second => Var::First,
        }
    }
}

/// Recursive view: a polynomial in one variable whose coefficients are
/// polynomials in the other.
pub type RecPoly = Poly<UniPoly>;

/// `Σ c_ij a^i b^j` stored as a map `(i, j) → c_ij` without zero entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), ExactComplex>,
    vars: VarPair,
}

impl BiPoly {
    pub fn zero(vars: VarPair) -> Self {
        Self { terms: BTreeMap::new(), vars }
    }

    pub fn constant(c: ExactComplex, vars: VarPair) -> Self {
        Self::monomial(c, 0, 0, vars)
    }

    pub fn monomial(c: ExactComplex, i: u32, j: u32, vars: VarPair) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms, vars }
    }

    pub fn var(v: Var, vars: VarPair) -> Self {
        match v {
            Var::First => Self::monomial(ExactComplex::one(), 1, 0, vars),
            Var::Second => Self::monomial(ExactComplex::one(), 0, 1, vars),
        }
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = ((u32, u32), ExactComplex)>,
        vars: VarPair,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(terms: &[((u32, u32), i64)], vars: VarPair) -> Self {
        Self::from_terms(terms.iter().map(|&(k, c)| (k, ExactComplex::from_int(c))), vars)
    }

    pub fn vars(&self) -> VarPair {
        self.vars
    }

    /// Same coefficients read in another variable pair.
    pub fn relabel(&self, vars: VarPair) -> Self {
        Self { terms: self.terms.clone(), vars }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &ExactComplex)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> ExactComplex {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| if v == Var::First { i } else { j }).max()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(ExactComplex::is_real)
    }

    /// Leading term in descending lexicographic order of `(i, j)`.
    pub fn leading_term(&self) -> Option<((u32, u32), &ExactComplex)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    fn add_term(&mut self, k: (u32, u32), c: &ExactComplex) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_default();
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.vars == o.vars {
            Ok(())
        } else {
            Err(Error::VarPairMismatch(self.vars, o.vars))
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c);
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = Self::zero(self.vars);
        for ((i1, j1), a) in &self.terms {
            for ((i2, j2), b) in &o.terms {
                r.add_term((i1 + i2, j1 + j2), &(a * b));
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)), self.vars)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(ExactComplex::one(), self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Every coefficient conjugated.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.conj())), self.vars)
    }

    /// `conj(P)(b, a)`: conjugate coefficients and exchange the variables.
    pub fn conj_swap(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.conj())), self.vars)
    }

    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())), self.vars)
    }

    pub fn partial(&self, v: Var) -> Self {
        Self::from_terms(
            self.terms.iter().filter_map(|(&(i, j), c)| {
                let (e, k) = match v {
                    Var::First => (i, (i.saturating_sub(1), j)),
                    Var::Second => (j, (i, j.saturating_sub(1))),
                };
                (e > 0).then(|| (k, c * &ExactComplex::from_int(e as i64)))
            }),
            self.vars,
        )
    }

    /// Substitutes polynomials (possibly in another variable pair) for the
    /// two variables: `self(a, b)`.
    pub fn substitute(&self, a: &BiPoly, b: &BiPoly) -> Result<BiPoly> {
        a.check(b)?;
        let vars = a.vars;
        let max_i = self.degree_in(Var::First).unwrap_or(0);
        let max_j = self.degree_in(Var::Second).unwrap_or(0);
        let mut pa = vec![BiPoly::constant(ExactComplex::one(), vars)];
        for k in 0..max_i as usize {
            pa.push(&pa[k] * a);
        }
        let mut pb = vec![BiPoly::constant(ExactComplex::one(), vars)];
        for k in 0..max_j as usize {
            pb.push(&pb[k] * b);
        }
        let mut out = BiPoly::zero(vars);
        for (&(i, j), c) in &self.terms {
            out = &out + &(&pa[i as usize] * &pb[j as usize]).scale(c);
        }
        Ok(out)
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, a: &ExactComplex, b: &ExactComplex) -> ExactComplex {
        self.terms.iter().fold(ExactComplex::zero(), |acc, (&(i, j), c)| {
            &acc + &(&(c * &a.pow(i)) * &b.pow(j))
        })
    }

    /// Fixes one variable to an exact value, leaving a polynomial in the other.
    pub fn specialize(&self, v: Var, value: &ExactComplex) -> UniPoly {
        let mut coeffs: Vec<ExactComplex> = Vec::new();
        for (&(i, j), c) in &self.terms {
            let (fixed, free) = match v {
                Var::First => (i, j),
                Var::Second => (j, i),
            };
            let t = c * &value.pow(fixed);
            if coeffs.len() <= free as usize {
                coeffs.resize(free as usize + 1, ExactComplex::zero());
            }
            coeffs[free as usize] = &coeffs[free as usize] + &t;
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Univariate polynomial in `v` when `self` does not involve the other
    /// variable.
    pub fn as_univariate(&self, v: Var) -> Option<UniPoly> {
        if self.degree_in(v.other()).unwrap_or(0) > 0 {
            return None;
        }
        Some(self.specialize(v.other(), &ExactComplex::zero()))
    }

    pub fn from_univariate(p: &UniPoly, v: Var, vars: VarPair) -> Self {
        Self::from_terms(
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let k = k as u32;
                (if v == Var::First { (k, 0) } else { (0, k) }, c.clone())
            }),
            vars,
        )
    }

    /// Polynomial in `main` with coefficients in the other variable.
    pub fn to_recursive(&self, main: Var) -> RecPoly {
        let deg = self.degree_in(main).unwrap_or(0) as usize;
        let mut rows: Vec<Vec<ExactComplex>> = vec![Vec::new(); deg + 1];
        for (&(i, j), c) in &self.terms {
            let (m, o) = if main == Var::First { (i, j) } else { (j, i) };
            let row = &mut rows[m as usize];
            if row.len() <= o as usize {
                row.resize(o as usize + 1, ExactComplex::zero());
            }
            row[o as usize] = c.clone();
        }
        Poly::from_coeffs(rows.into_iter().map(UniPoly::from_coeffs).collect())
    }

    pub fn from_recursive(p: &RecPoly, main: Var, vars: VarPair) -> Self {
        let mut terms = Vec::new();
        for (m, row) in p.coeffs().iter().enumerate() {
            for (o, c) in row.coeffs().iter().enumerate() {
                let k = if main == Var::First { (m as u32, o as u32) } else { (o as u32, m as u32) };
                terms.push((k, c.clone()));
            }
        }
        Self::from_terms(terms, vars)
    }

    /// Canonical representative: Gaussian-integer coefficients with integer
    /// content 1, and the leading coefficient (descending lex order) with
    /// positive real part, or positive imaginary part when the real part is
    /// zero.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
        let mut ints: Vec<((u32, u32), BigInt, BigInt)> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let re = (&c.re * BigRational::from_integer(lcm.clone())).to_integer();
                let im = (&c.im * BigRational::from_integer(lcm.clone())).to_integer();
                (*k, re, im)
            })
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, (_, re, im)| acc.gcd(re).gcd(im));
        let (_, lre, lim) = ints.last().expect("nonzero");
        let flip = lre.is_negative() || (lre.is_zero() && lim.is_negative());
        let g = if flip { -g } else { g };
        for (_, re, im) in &mut ints {
            *re = &*re / &g;
            *im = &*im / &g;
        }
        Self::from_terms(
            ints.into_iter().map(|(k, re, im)| {
                (k, ExactComplex::new(BigRational::from_integer(re), BigRational::from_integer(im)))
            }),
            self.vars,
        )
    }

    /// Exact quotient when `o` divides `self`.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        if self.vars != o.vars {
            return None;
        }
        let q = self.to_recursive(Var::Second).div_exact(&o.to_recursive(Var::Second))?;
        Some(Self::from_recursive(&q, Var::Second, self.vars))
    }

    /// Normalized gcd of two polynomials.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let g = Ring::gcd(&self.to_recursive(Var::Second), &o.to_recursive(Var::Second));
        Ok(Self::from_recursive(&g, Var::Second, self.vars).normalized())
    }

    /// Sylvester resultant eliminating `v`; the result involves only the
    /// other variable. No normalization is applied.
    pub fn resultant(&self, o: &Self, v: Var) -> Result<Self> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree_in(v).unwrap_or(0) == 0 || o.degree_in(v).unwrap_or(0) == 0 {
            return Err(Error::DegreeZero);
        }
        let r = poly_resultant(&self.to_recursive(v), &o.to_recursive(v));
        Ok(Self::from_univariate(&r, v.other(), self.vars))
    }

    /// `self / gcd(self, ∂self/∂v)`, made primitive with respect to `v` and
    /// normalized. Repeated factors involving `v` are reduced to single
    /// copies; factors free of `v` are units over the coefficient field and
    /// are dropped.
    pub fn squarefree_part(&self, v: Var) -> Result<Self> {
        if self.degree_in(v).unwrap_or(0) == 0 {
            return Err(Error::DegreeZero);
        }
        let r = self.to_recursive(v);
        let g = Ring::gcd(&r, &r.derivative());
        let q = r.div_exact(&g).expect("gcd divides").primitive_part();
        Ok(Self::from_recursive(&q, v, self.vars).normalized())
    }

    /// Squarefree part in both variables: `self / gcd(self, ∂₁self, ∂₂self)`.
    pub fn squarefree_full(&self) -> Self {
        if self.is_constant() {
            return self.normalized();
        }
        let r = self.to_recursive(Var::Second);
        let dy = self.partial(Var::Second).to_recursive(Var::Second);
        let dx = self.partial(Var::First).to_recursive(Var::Second);
        let g = if self.coprime_to_derivative_at_sample(r.degree()) {
            let c = Ring::gcd(&Ring::gcd(&r.content(), &dy.content()), &dx.content());
            Poly::constant(c)
        } else {
            Ring::gcd(&Ring::gcd(&r, &dy), &dx)
        };
        let q = r.div_exact(&g).expect("gcd divides");
        Self::from_recursive(&q, Var::Second, self.vars).normalized()
    }

    /// Whether `self(x0, y)` is coprime to its `y`-derivative at some sample
    /// `x0` where the degree in `y` is preserved. Then no factor of `self`
    /// involving `y` is repeated.
    fn coprime_to_derivative_at_sample(&self, deg_y: Option<usize>) -> bool {
        let Some(deg) = deg_y.filter(|&d| d > 0) else {
            return false;
        };
        [(3, 7), (-11, 13), (5, 3), (17, -19)].iter().any(|&(n, d)| {
            let f = self.specialize(Var::First, &ExactComplex::from_frac(n, d));
            f.degree() == Some(deg) && f.gcd_monic(&f.derivative()).degree() == Some(0)
        })
    }

    /// The `u` with `conj_swap(self) = u · self` and `|u| = 1`, if any.
    pub fn hermitian_unit(&self) -> Option<ExactComplex> {
        let ((i, j), lead) = self.leading_term()?;
        let partner = self.terms.get(&(j, i))?;
        let u = &partner.conj() / lead;
        if !u.norm_sqr().is_one() {
            return None;
        }
        (self.conj_swap() == self.scale(&u)).then_some(u)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_unit().is_some()
    }

    /// Whether `self` and `o` agree up to a nonzero constant factor.
    pub fn equals_up_to_scalar(&self, o: &Self) -> bool {
        if self.vars != o.vars || self.terms.len() != o.terms.len() {
            return false;
        }
        let Some((k, a)) = self.leading_term() else {
            return o.is_zero();
        };
        let b = o.coeff(k.0, k.1);
        if b.is_zero() {
            return false;
        }
        let ratio = &b / a;
        self.scale(&ratio) == *o
    }

    /// Numeric evaluation.
    pub fn eval_big(
        &self,
        a: &super::BigComplex,
        b: &super::BigComplex,
    ) -> super::BigComplex {
        crate::algebra::numeric::NumBiPoly::from_exact(self, a.precision().max(b.precision())).eval(a, b)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    /// Panics when the variable pairs differ; see [`BiPoly::checked_add`].
    fn add(self, o: &BiPoly) -> BiPoly {
        self.checked_add(o).expect("BiPoly addition across variable pairs")
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        self.checked_sub(o).expect("BiPoly subtraction across variable pairs")
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        self.checked_mul(o).expect("BiPoly multiplication across variable pairs")
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(), vars: self.vars }
    }
}

impl fmt::Display for BiPoly {
    /// Terms in descending lexicographic order, e.g. `z*w - z - w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (a, b) = self.vars.names();
        let power = |v: &str, e: u32| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let mut s = String::new();
        for (&(i, j), c) in self.terms.iter().rev() {
            let mono = [power(a, i), power(b, j)]
                .into_iter()
                .filter(|m| !m.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            write_term(&mut s, c, &mono);
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[{}]({})", self.vars, self)
    }
}
