//! Black-box map expressions in `z`, possibly transcendental.

use std::fmt;

use crate::algebra::{parse_ast, Ast, BigComplex};
use crate::error::{Error, Result};
use crate::ratmap::{make_map, to_fraction, RationalMap};

/// Largest real part accepted by `exp` before reporting overflow.
const EXP_LIMIT: f64 = 1.0e6;

/// Expression over `z`, complex literals, `+ − × ÷`, integer powers and
/// `exp`.
#[derive(Clone, PartialEq)]
pub struct MapExpr {
    ast: Ast,
    text: String,
}

fn validate(ast: &Ast) -> Result<()> {
    match ast {
        Ast::Num(_) => Ok(()),
        Ast::Var { name, pos } => {
            if name == "z" {
                Ok(())
            } else {
                Err(Error::UnknownVariable { name: name.clone(), pos: *pos })
            }
        }
        Ast::Call { name, arg, pos } => {
            if name != "exp" {
                return Err(Error::Syntax { pos: *pos, msg: format!("unknown function `{name}`") });
            }
            validate(arg)
        }
        Ast::Neg(a) | Ast::Pow(a, _, _) => validate(a),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b, _) => {
            validate(a)?;
            validate(b)
        }
    }
}

fn is_rational(ast: &Ast) -> bool {
    match ast {
        Ast::Num(_) | Ast::Var { .. } => true,
        Ast::Call { .. } => false,
        Ast::Neg(a) | Ast::Pow(a, _, _) => is_rational(a),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b, _) => is_rational(a) && is_rational(b),
    }
}

impl MapExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let ast = parse_ast(text)?;
        validate(&ast)?;
        Ok(Self { ast, text: text.trim().to_string() })
    }

    pub fn from_map(f: &RationalMap) -> Self {
        Self::parse(&format!("({}) / ({})", f.num().to_string_var("z"), f.den().to_string_var("z")))
            .expect("printed polynomials parse back")
    }

    pub fn is_rational(&self) -> bool {
        is_rational(&self.ast)
    }

    /// The equivalent normalized rational map, for expressions without
    /// `exp`.
    pub fn to_rational(&self) -> Result<RationalMap> {
        let (n, d) = to_fraction(&self.ast)?;
        make_map(n, d)
    }

    pub fn eval(&self, z: &BigComplex) -> Result<BigComplex> {
        eval_ast(&self.ast, z)
    }
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl fmt::Debug for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MapExpr({})", self.text)
    }
}

fn checked(v: BigComplex) -> Result<BigComplex> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow)
    }
}

fn eval_ast(ast: &Ast, z: &BigComplex) -> Result<BigComplex> {
    let p = z.precision();
    match ast {
        Ast::Num(c) => Ok(BigComplex::from_exact(c, p)),
        Ast::Var { .. } => Ok(z.clone()),
        Ast::Call { arg, .. } => {
            let a = eval_ast(arg, z)?;
            if a.re_f64() > EXP_LIMIT {
                return Err(Error::Overflow);
            }
            checked(a.exp())
        }
        Ast::Neg(a) => Ok(-&eval_ast(a, z)?),
        Ast::Add(a, b) => checked(&eval_ast(a, z)? + &eval_ast(b, z)?),
        Ast::Sub(a, b) => checked(&eval_ast(a, z)? - &eval_ast(b, z)?),
        Ast::Mul(a, b) => checked(&eval_ast(a, z)? * &eval_ast(b, z)?),
        Ast::Div(a, b, _) => {
            let n = eval_ast(a, z)?;
            let d = eval_ast(b, z)?;
            guard_division(&n, &d)?;
            checked(&n / &d)
        }
        Ast::Pow(a, e, _) => {
            let b = eval_ast(a, z)?;
            if *e < 0 {
                guard_division(&BigComplex::one(p), &b)?;
            }
            checked(b.powi(*e))
        }
    }
}

fn guard_division(n: &BigComplex, d: &BigComplex) -> Result<()> {
    let tol = 2f64.powi(-(d.precision() as i32) / 2);
    if d.abs_f64() <= tol * n.abs_f64().max(1.0) {
        Err(Error::NearZeroDivision)
    } else {
        Ok(())
    }
}
