//! Text grammar shared by polynomials and map expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' int)?
//! atom   := number | ident | ident '(' expr ')' | '(' expr ')'
//! ```
//!
//! `i` is the imaginary unit. Implicit multiplication is rejected.

use num_rational::BigRational;

use super::bipoly::{BiPoly, VarPair};
use super::exact::{parse_rational, ExactComplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Num(ExactComplex),
    Var { name: String, pos: usize },
    Call { name: String, arg: Box<Ast>, pos: usize },
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Pow(Box<Ast>, i64, usize),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            // scientific suffix only when digits follow
            if k < chars.len() && (chars[k] == 'e' || chars[k] == 'E') {
                let mut j = k + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    k = j;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                }
            }
            let s: String = chars[start..k].iter().collect();
            let q = parse_rational(&s).ok_or_else(|| Error::Syntax {
                pos: start,
                msg: format!("malformed number `{s}`"),
            })?;
            out.push((Tok::Num(q), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((Tok::Ident(chars[start..k].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), k));
            k += 1;
        } else {
            return Err(Error::Syntax { pos: k, msg: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.peek() == &Tok::Op(op) {
            self.bump();
            Ok(())
        } else {
            Err(Error::Syntax { pos: self.pos(), msg: format!("expected `{op}`") })
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Op('/') => {
                    let pos = self.pos();
                    self.bump();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let paren = self.peek() == &Tok::Op('(');
        if paren {
            self.bump();
        }
        let neg = self.peek() == &Tok::Op('-');
        if neg {
            self.bump();
        }
        let e = match self.bump() {
            (Tok::Num(q), _) if q.is_integer() => {
                i64::try_from(q.to_integer()).map_err(|_| Error::BadExponent { pos })?
            }
            _ => return Err(Error::BadExponent { pos }),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(Ast::Pow(Box::new(base), if neg { -e } else { e }, pos))
    }

    fn atom(&mut self) -> Result<Ast> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Num(q) => Ok(Ast::Num(ExactComplex::real(q))),
            Tok::Ident(name) if name == "i" => Ok(Ast::Num(ExactComplex::i())),
            Tok::Ident(name) => {
                if self.peek() == &Tok::Op('(') {
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(')')?;
                    Ok(Ast::Call { name, arg: Box::new(arg), pos })
                } else {
                    Ok(Ast::Var { name, pos })
                }
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            Tok::Op(c) => Err(Error::Syntax { pos, msg: format!("unexpected `{c}`") }),
        }
    }
}

/// Parses text into an expression tree.
pub fn parse_ast(text: &str) -> Result<Ast> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(Error::Syntax { pos: p.pos(), msg: "expected an operator".into() }),
    }
}

fn to_bipoly(ast: &Ast, vars: VarPair) -> Result<BiPoly> {
    Ok(match ast {
        Ast::Num(c) => BiPoly::constant(c.clone(), vars),
        Ast::Var { name, pos } => match vars.var_named(name) {
            Some(v) => BiPoly::var(v, vars),
            None => return Err(Error::UnknownVariable { name: name.clone(), pos: *pos }),
        },
        Ast::Call { name, pos, .. } => {
            return Err(Error::Syntax { pos: *pos, msg: format!("function `{name}` is not polynomial") })
        }
        Ast::Neg(a) => -&to_bipoly(a, vars)?,
        Ast::Add(a, b) => &to_bipoly(a, vars)? + &to_bipoly(b, vars)?,
        Ast::Sub(a, b) => &to_bipoly(a, vars)? - &to_bipoly(b, vars)?,
        Ast::Mul(a, b) => &to_bipoly(a, vars)? * &to_bipoly(b, vars)?,
        Ast::Div(a, b, pos) => {
            let d = to_bipoly(b, vars)?;
            if !d.is_constant() || d.is_zero() {
                return Err(Error::Syntax {
                    pos: *pos,
                    msg: "division only by a nonzero constant".into(),
                });
            }
            to_bipoly(a, vars)?.scale(&d.coeff(0, 0).inv())
        }
        Ast::Pow(a, e, pos) => {
            if *e < 0 || *e > u32::MAX as i64 {
                return Err(Error::BadExponent { pos: *pos });
            }
            to_bipoly(a, vars)?.pow(*e as u32)
        }
    })
}

/// Parses a polynomial in the named variable pair and expands it. The
/// result is not normalized.
pub fn parse_poly(text: &str, vars: VarPair) -> Result<BiPoly> {
    to_bipoly(&parse_ast(text)?, vars)
}
