//! Univariate polynomials over the Gaussian rationals.

use std::fmt::Write as _;

use num_traits::Zero;

use super::bigcomplex::BigComplex;
use super::exact::ExactComplex;
use super::poly::{Poly, Ring};

pub type UniPoly = Poly<ExactComplex>;

impl Poly<ExactComplex> {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&k| ExactComplex::from_int(k)).collect())
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map_coeffs(ExactComplex::conj)
    }

    pub fn monic(&self) -> Self {
        self.normalized()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd_monic(&self, o: &Self) -> Self {
        if super::modp::certainly_coprime(self, o) {
            return Self::one_poly();
        }
        if !self.is_zero() && !o.is_zero() && self.degree().unwrap_or(0) > 0 && o.degree().unwrap_or(0) > 0 {
            if let Some(g) = super::modp::gcd_monic(self, o) {
                return g;
            }
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("field division");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn div_exact_field(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(o)?;
        r.is_zero().then_some(q)
    }

    /// `x^k · p(1/x)`, requires `k ≥ deg p`.
    pub fn reversed(&self, k: usize) -> Self {
        let mut v = vec![ExactComplex::zero(); k + 1];
        for (i, c) in self.coeffs().iter().enumerate() {
            v[k - i] = c.clone();
        }
        Self::from_coeffs(v)
    }

    pub fn eval_big(&self, z: &BigComplex) -> BigComplex {
        let p = z.precision();
        self.coeffs().iter().rev().fold(BigComplex::zero(p), |acc, c| {
            &(&acc * z) + &BigComplex::from_exact(c, p)
        })
    }

    pub fn to_big(&self, prec: usize) -> Vec<BigComplex> {
        self.coeffs().iter().map(|c| BigComplex::from_exact(c, prec)).collect()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs().iter().all(ExactComplex::is_real)
    }

    /// Yun's algorithm: `self = c · ∏ f_k^k` with each `f_k` monic and
    /// squarefree. Returns `(k, f_k)` for the nonconstant factors.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, Self)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        if super::modp::certainly_squarefree(&f) {
            return vec![(1, f)];
        }
        let df = f.derivative();
        let a0 = f.gcd_monic(&df);
        let mut b = f.div_exact_field(&a0).expect("gcd divides");
        let mut c = df.div_exact_field(&a0).expect("gcd divides");
        let mut d = Ring::sub(&c, &b.derivative());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd_monic(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((k, a.clone()));
            }
            b = b.div_exact_field(&a).expect("gcd divides");
            c = d.div_exact_field(&a).expect("gcd divides");
            d = Ring::sub(&c, &b.derivative());
            k += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Self {
        self.squarefree_decomposition()
            .into_iter()
            .fold(Self::one_poly(), |acc, (_, f)| Ring::mul(&acc, &f))
    }

    pub fn one_poly() -> Self {
        <Self as Ring>::one()
    }

    /// Renders with the given variable name, e.g. `z^2 - 1`.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            write_term(&mut s, c, &mono);
        }
        s
    }
}

/// Appends `± c*mono` in the canonical printed form shared with `BiPoly`.
pub(crate) fn write_term(s: &mut String, c: &ExactComplex, mono: &str) {
    use num_traits::{One, Signed};
    let first = s.is_empty();
    let negative_real = c.im.is_zero() && c.re.is_negative();
    let negative_imag = c.re.is_zero() && c.im.is_negative();
    let (sign, mag) = if negative_real || negative_imag { ('-', -c) } else { ('+', c.clone()) };
    if first {
        if sign == '-' {
            s.push('-');
        }
    } else {
        let _ = write!(s, " {sign} ");
    }
    if mono.is_empty() {
        let _ = write!(s, "{mag}");
    } else if mag.re.is_one() && mag.im.is_zero() {
        s.push_str(mono);
    } else {
        let _ = write!(s, "{mag}*{mono}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        let g = UniPoly::from_ints(&[-1, 0, 1]).gcd_monic(&UniPoly::from_ints(&[-1, 1]));
        assert_eq!(g, UniPoly::from_ints(&[-1, 1]));
        let g = UniPoly::from_ints(&[1, 0, 1]).gcd_monic(&UniPoly::from_ints(&[2, 0, 1]));
        assert_eq!(g, UniPoly::from_ints(&[1]));
        // z³ − z and z² − 1
        let g = UniPoly::from_ints(&[0, -1, 0, 1]).gcd_monic(&UniPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(g, UniPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn yun_multiplicities() {
        // (z-2)^2 (z+3)
        let p = Ring::mul(&UniPoly::from_ints(&[-2, 1]).pow(2), &UniPoly::from_ints(&[3, 1]));
        let d = p.squarefree_decomposition();
        assert_eq!(d, vec![(1, UniPoly::from_ints(&[3, 1])), (2, UniPoly::from_ints(&[-2, 1]))]);
    }

    #[test]
    fn printing() {
        assert_eq!(UniPoly::from_ints(&[-1, 0, 1]).to_string_var("z"), "z^2 - 1");
        let p = UniPoly::from_coeffs(vec![ExactComplex::from_ints(0, -1), ExactComplex::one()]);
        assert_eq!(p.to_string_var("z"), "z - i");
        assert_eq!(p.conj().to_string_var("z"), "z + i");
    }

    #[test]
    fn reversal() {
        let p = UniPoly::from_ints(&[1, 2]);
        assert_eq!(p.reversed(2), UniPoly::from_ints(&[0, 2, 1]));
    }
}
