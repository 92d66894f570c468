//! Text parsing for the literals used at the CLI boundary: polynomials
//! (`2*T^3+T+1`), rational functions (`(T+1)/(T^2)`), twisted polynomials
//! (`tau` reserved), matrices (rows separated by `;`), Drinfeld-module
//! literals (`rank=2; q=3; L=generic; phiT = T + tau^2`) and imaginary
//! extension literals (`q=3; y^2 = T^3 - T + 1; c = T`).
//!
//! Integer literals denote canonical element indices of `F_q` (reduced mod
//! `q`), matching the printers exactly, so parse/print round-trips are
//! bit-exact.

use crate::error::Result;
use crate::extfield::ExtField;
use crate::field::Field;
use crate::fq::Fq;
use crate::matk::MatK;
use crate::poly::PolyA;
use crate::ratfunc::{KField, RatFunc};
use crate::skew::SkewPoly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&ch) = it.peek() {
        match ch {
            c if c.is_whitespace() => {
                it.next();
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '(' => {
                it.next();
                out.push(Tok::LParen);
            }
            ')' => {
                it.next();
                out.push(Tok::RParen);
            }
            c if c.is_ascii_digit() => {
                let mut v: u64 = 0;
                while let Some(&d) = it.peek() {
                    let Some(digit) = d.to_digit(10) else { break };
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(digit as u64))
                        .ok_or_else(|| {
                            crate::error::ForgeError::Parse("integer literal too large".into())
                        })?;
                    it.next();
                }
                out.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(name));
            }
            other => {
                return Err(crate::error::ForgeError::Parse(format!(
                    "unexpected character '{other}'"
                )))
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Int(u64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

fn perr<T>(msg: &str) -> Result<T> {
    Err(crate::error::ForgeError::Parse(msg.into()))
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    /// sum := product (('+' | '-') product)*
    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    /// product := unary (('*' | '/') unary)*
    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    /// unary := '-' unary | power
    fn unary(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    /// power := atom ('^' integer)?
    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(e)) => return Ok(Expr::Pow(Box::new(base), e)),
                _ => return perr("exponent must be an integer literal"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(Expr::Int(v)),
            Some(Tok::Ident(name)) => Ok(Expr::Var(name)),
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => perr("missing closing parenthesis"),
                }
            }
            _ => perr("expected a term"),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(s)?,
        pos: 0,
    };
    if p.toks.is_empty() {
        return perr("empty expression");
    }
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return perr("trailing input after expression");
    }
    Ok(e)
}

fn eval_ratfunc(e: &Expr, fq: &Fq, var: &str) -> Result<RatFunc> {
    Ok(match e {
        Expr::Int(v) => RatFunc::from_poly(PolyA::constant(fq, v % fq.q())),
        Expr::Var(name) if name == var => RatFunc::var(fq),
        Expr::Var(name) => return perr(&format!("unknown symbol '{name}'")),
        Expr::Neg(a) => eval_ratfunc(a, fq, var)?.neg(),
        Expr::Add(a, b) => eval_ratfunc(a, fq, var)?.add(&eval_ratfunc(b, fq, var)?),
        Expr::Sub(a, b) => eval_ratfunc(a, fq, var)?.sub(&eval_ratfunc(b, fq, var)?),
        Expr::Mul(a, b) => eval_ratfunc(a, fq, var)?.mul(&eval_ratfunc(b, fq, var)?),
        Expr::Div(a, b) => {
            let d = eval_ratfunc(b, fq, var)?;
            eval_ratfunc(a, fq, var)?.mul(&d.inv()?)
        }
        Expr::Pow(a, n) => {
            let n: i64 = (*n)
                .try_into()
                .map_err(|_| crate::error::ForgeError::Parse("exponent too large".into()))?;
            eval_ratfunc(a, fq, var)?.pow_i(n)?
        }
    })
}

/// Parse a rational function in `var` over `F_q`.
pub fn parse_ratfunc(fq: &Fq, s: &str, var: &str) -> Result<RatFunc> {
    eval_ratfunc(&parse_expr(s)?, fq, var)
}

/// Parse a polynomial in `var` over `F_q` (division must cancel).
pub fn parse_poly_var(fq: &Fq, s: &str, var: &str) -> Result<PolyA> {
    let r = parse_ratfunc(fq, s, var)?;
    Ok(r.as_poly()?.clone())
}

/// Parse a polynomial in `T` over `F_q`.
pub fn parse_poly(fq: &Fq, s: &str) -> Result<PolyA> {
    parse_poly_var(fq, s, "T")
}

fn eval_skew<F: Field>(e: &Expr, field: &F, gamma: &F::El, var: &str) -> Result<SkewPoly<F>> {
    Ok(match e {
        Expr::Int(v) => SkewPoly::constant(field, field.scalar(v % field.q())),
        Expr::Var(name) if name == "tau" => SkewPoly::tau(field),
        Expr::Var(name) if name == var => SkewPoly::constant(field, gamma.clone()),
        Expr::Var(name) => return perr(&format!("unknown symbol '{name}'")),
        Expr::Neg(a) => eval_skew(a, field, gamma, var)?.neg(),
        Expr::Add(a, b) => {
            eval_skew(a, field, gamma, var)?.add(&eval_skew(b, field, gamma, var)?)?
        }
        Expr::Sub(a, b) => {
            eval_skew(a, field, gamma, var)?.sub(&eval_skew(b, field, gamma, var)?)?
        }
        Expr::Mul(a, b) => {
            eval_skew(a, field, gamma, var)?.mul(&eval_skew(b, field, gamma, var)?)?
        }
        Expr::Div(a, b) => {
            let d = eval_skew(b, field, gamma, var)?;
            if d.deg_tau().map(|d| d > 0).unwrap_or(true) {
                return perr("division by a non-constant twisted polynomial");
            }
            let inv = field.inv(&d.coeff(0))?;
            eval_skew(a, field, gamma, var)?.scale(&inv)
        }
        Expr::Pow(a, n) => eval_skew(a, field, gamma, var)?.pow(*n as usize)?,
    })
}

/// Parse a twisted polynomial over any coefficient field: `tau` is reserved,
/// `var` denotes the image of `T` (the field generator).
pub fn parse_skew<F: Field>(field: &F, gamma: &F::El, s: &str, var: &str) -> Result<SkewPoly<F>> {
    eval_skew(&parse_expr(s)?, field, gamma, var)
}

/// Parse a matrix literal: rows separated by `;`, entries by `,`, each a
/// rational function in `var`.
pub fn parse_matrix(fq: &Fq, s: &str, var: &str) -> Result<MatK> {
    let rows: Vec<&str> = s.split(';').collect();
    let r = rows.len();
    let mut entries = Vec::with_capacity(r * r);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != r {
            return perr("matrix must be square: each row needs as many entries as rows");
        }
        for cell in cells {
            entries.push(parse_ratfunc(fq, cell, var)?);
        }
    }
    MatK::new(fq, r, entries)
}

/// A parsed Drinfeld-module literal.
pub enum ParsedModule {
    /// generic characteristic: coefficients in `K = F_q(T)`
    Generic(crate::drinfeld::DrinfeldModule<KField>),
    /// over the finite `A`-field `F_q[T]/(ch)`
    Finite(crate::drinfeld::DrinfeldModule<ExtField<Fq>>),
}

/// Split a `key = value; key = value` literal; keys are case-sensitive.
fn split_kv(s: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for part in s.split(';') {
        if part.trim().is_empty() {
            continue;
        }
        let Some((k, v)) = part.split_once('=') else {
            return perr(&format!("expected 'key = value', got '{}'", part.trim()));
        };
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn parse_q(v: &str) -> Result<Fq> {
    let q: u64 = v
        .trim()
        .parse()
        .map_err(|_| crate::error::ForgeError::Parse("q must be an integer".into()))?;
    Fq::new(q)
}

/// Parse `rank=2; q=3; L=generic; phiT = T + g1*tau + g2*tau^2`, where `L`
/// is `generic` or `A/(ch)` for a monic irreducible `ch`.
pub fn parse_module(s: &str) -> Result<ParsedModule> {
    let mut rank: Option<usize> = None;
    let mut fq: Option<Fq> = None;
    let mut base: Option<String> = None;
    let mut phit: Option<String> = None;
    for (k, v) in split_kv(s)? {
        match k.as_str() {
            "rank" => {
                rank = Some(v.parse().map_err(|_| {
                    crate::error::ForgeError::Parse("rank must be an integer".into())
                })?)
            }
            "q" => fq = Some(parse_q(&v)?),
            "L" => base = Some(v),
            "phiT" => phit = Some(v),
            other => return perr(&format!("unknown module field '{other}'")),
        }
    }
    let (Some(rank), Some(fq), Some(base), Some(phit)) = (rank, fq, base, phit) else {
        return perr("module literal needs rank, q, L and phiT");
    };
    fn check_rank<F: Field>(p: &SkewPoly<F>, rank: usize) -> Result<()> {
        if p.deg_tau().ok() != Some(rank) {
            return perr("phiT must have tau-degree equal to the rank");
        }
        Ok(())
    }
    if base == "generic" {
        let field = KField::new(&fq);
        let gamma = field.gen();
        let p = parse_skew(&field, &gamma, &phit, "T")?;
        check_rank(&p, rank)?;
        if p.coeff(0) != gamma {
            return perr("constant term of phiT must be T (generic characteristic)");
        }
        let g = (1..=rank).map(|i| p.coeff(i)).collect();
        Ok(ParsedModule::Generic(
            crate::drinfeld::DrinfeldModule::new_generic(&field, &gamma, g)?,
        ))
    } else if let Some(inner) = base
        .strip_prefix("A/(")
        .and_then(|t| t.strip_suffix(')'))
    {
        let ch = parse_poly(&fq, inner)?;
        if !ch.is_irreducible() {
            return perr("finite A-field modulus must be irreducible");
        }
        let field = ExtField::new(fq.clone(), ch.c.clone(), "T")?;
        let gamma = field.gen();
        let p = parse_skew(&field, &gamma, &phit, "T")?;
        check_rank(&p, rank)?;
        if p.coeff(0) != gamma {
            return perr("constant term of phiT must be T (the image gamma(T))");
        }
        let g = (1..=rank).map(|i| p.coeff(i)).collect();
        Ok(ParsedModule::Finite(
            crate::drinfeld::DrinfeldModule::over_finite(&field, &gamma, g)?,
        ))
    } else {
        perr("L must be 'generic' or 'A/(ch)'")
    }
}

/// A parsed imaginary extension literal, with an optional conductor.
pub struct ExtensionLiteral {
    pub ext: crate::cm::ImaginaryQuadExt,
    pub conductor: Option<PolyA>,
}

/// Parse `q=3; y^2 = T^3 - T + 1` with an optional `; c = T` suffix.
pub fn parse_extension(s: &str) -> Result<ExtensionLiteral> {
    let mut fq: Option<Fq> = None;
    let mut f: Option<String> = None;
    let mut c: Option<String> = None;
    for (k, v) in split_kv(s)? {
        match k.as_str() {
            "q" => fq = Some(parse_q(&v)?),
            "y^2" => f = Some(v),
            "c" => c = Some(v),
            other => return perr(&format!("unknown extension field '{other}'")),
        }
    }
    let (Some(fq), Some(f)) = (fq, f) else {
        return perr("extension literal needs q and y^2");
    };
    let f = parse_poly(&fq, &f)?;
    let ext = crate::cm::ImaginaryQuadExt::new(&fq, &f)?;
    let conductor = match c {
        Some(c) => Some(parse_poly(&fq, &c)?),
        None => None,
    };
    Ok(ExtensionLiteral { ext, conductor })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        let fq = Fq::new(3).unwrap();
        for s in ["2*T^3+T+1", "T^3+2*T+1", "0", "2", "T"] {
            let p = parse_poly(&fq, s).unwrap();
            assert_eq!(p.to_text("T"), s);
        }
        // normalization: minus signs print back canonically
        let p = parse_poly(&fq, "T^3 - T - 1").unwrap();
        assert_eq!(p.to_text("T"), "T^3+2*T+2");
        assert_eq!(parse_poly(&fq, &p.to_text("T")).unwrap(), p);
    }

    #[test]
    fn ratfunc_round_trip() {
        let fq = Fq::new(3).unwrap();
        for s in ["(T+1)/(T^2)", "T^2+2", "(1)/(T)"] {
            let r = parse_ratfunc(&fq, s, "T").unwrap();
            assert_eq!(parse_ratfunc(&fq, &r.to_text("T"), "T").unwrap(), r);
        }
        // reduction happens on parse
        let r = parse_ratfunc(&fq, "(T^2-1)/(T-1)", "T").unwrap();
        assert!(r.is_poly());
    }

    #[test]
    fn skew_round_trip() {
        let fq = Fq::new(3).unwrap();
        let k = KField::with_var(&fq, "y");
        let gamma = k.gen();
        let s = "y^2+(y+y^3)*tau+tau^2";
        let p = parse_skew(&k, &gamma, s, "y").unwrap();
        let printed = p.to_text();
        assert_eq!(parse_skew(&k, &gamma, &printed, "y").unwrap(), p);
        assert_eq!(p.deg_tau().unwrap(), 2);
    }

    #[test]
    fn matrix_round_trip() {
        let fq = Fq::new(3).unwrap();
        let m = parse_matrix(&fq, "1, (T+1)/(T); 0, 1", "T").unwrap();
        assert_eq!(m.r(), 2);
        let again = parse_matrix(&fq, &m.to_text("T"), "T").unwrap();
        assert_eq!(m, again);
        // singular matrices are rejected
        assert!(parse_matrix(&fq, "1, 1; 1, 1", "T").is_err());
    }

    #[test]
    fn module_literals() {
        let m = parse_module("rank=2; q=3; L=generic; phiT = T + tau + tau^2").unwrap();
        let ParsedModule::Generic(phi) = m else {
            panic!("expected generic module")
        };
        assert_eq!(phi.rank(), 2);
        let m = parse_module("rank=2; q=3; L=A/(T^2+1); phiT = T + tau + 2*tau^2").unwrap();
        let ParsedModule::Finite(phi) = m else {
            panic!("expected finite module")
        };
        assert_eq!(phi.char_poly().unwrap().to_text("T"), "T^2+1");
        // wrong constant term
        assert!(parse_module("rank=2; q=3; L=generic; phiT = 1 + tau^2").is_err());
        // wrong rank
        assert!(parse_module("rank=3; q=3; L=generic; phiT = T + tau^2").is_err());
    }

    #[test]
    fn extension_literals() {
        let e = parse_extension("q=3; y^2 = T^3 - T + 1; c = T").unwrap();
        assert_eq!(e.ext.genus(), 1);
        assert_eq!(e.conductor.unwrap().to_text("T"), "T");
        assert!(parse_extension("q=3; y^2 = T^2+1").is_err()); // even degree
        assert!(parse_extension("q=4; y^2 = T^3+T+1").is_err()); // even q
    }

    #[test]
    fn parse_errors_are_parse_errors() {
        let fq = Fq::new(3).unwrap();
        for bad in ["T +", "(T", "T $ 1", "x+1", "T^x"] {
            assert!(matches!(
                parse_poly(&fq, bad),
                Err(crate::error::ForgeError::Parse(_))
            ));
        }
    }
}
