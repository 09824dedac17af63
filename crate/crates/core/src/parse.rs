//! Text formats: polynomial and automorphism-word expressions, instance
//! files, and the sectioned catalog files built on top of them.
//!
//! Grammar, whitespace-insensitive, `#` starts a comment:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | ident | '(' expr ')'
//! word   := gen (';' gen)*            rightmost factor applied first
//! gen    := 'elem1(' expr ')' | 'elem2(' expr ')'
//!         | 'affine([[' e ',' e '],[' e ',' e ']],[' e ',' e '])'
//! ```
//!
//! A divisor must evaluate to a nonzero constant, so `a/b` covers rationals
//! and parameter quotients such as `p/(1-q)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::aut::{AutGenerator, AutWord};
use crate::error::{Error, Result};
use crate::gwa::{GwaAlgebra, GwaElem};
use crate::poly::{Poly2, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

fn err(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Parse { line: pos.line, col: pos.col, msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn lex(text: &str, start: Pos) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line: start.line, col: start.col + i };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[s..i].iter().collect();
            out.push(Token { tok: Tok::Int(digits.parse().expect("digits")), pos });
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[s..i].iter().collect()), pos });
        } else if "+-*/^()[],;".contains(c) {
            out.push(Token { tok: Tok::Sym(c), pos });
            i += 1;
        } else {
            return Err(err(pos, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Expression tree; identifiers are resolved at evaluation time.
#[derive(Clone, Debug)]
pub enum Expr {
    Int(BigInt),
    Ident(String, Pos),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn new(text: &str, start: Pos) -> Result<Self> {
        let toks = lex(text, start)?;
        let end = Pos { line: start.line, col: start.col + text.chars().count() };
        Ok(Parser { toks, at: 0, end })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected `{c}`")))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at < self.toks.len() {
            Err(err(self.pos(), "unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.at += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let e = u32::try_from(n).map_err(|_| err(pos, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(err(pos, "exponent must be a non-negative integer literal")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok(Expr::Ident(s, pos))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(_) => Err(err(pos, "expected a number, a variable or `(`")),
            None => Err(err(pos, "unexpected end of input")),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok((s, pos))
            }
            _ => Err(err(pos, "expected a generator name")),
        }
    }
}

/// How identifiers and products are interpreted.
trait Ring {
    type V: Clone;
    fn constant(&self, c: Rational) -> Self::V;
    fn ident(&self, name: &str) -> Option<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn as_constant(&self, a: &Self::V) -> Option<Rational>;
}

fn eval<R: Ring>(r: &R, e: &Expr) -> Result<R::V> {
    Ok(match e {
        Expr::Int(n) => r.constant(Rational::from_integer(n.clone())),
        Expr::Ident(s, _) => r.ident(s).ok_or_else(|| Error::UnboundParameter(s.clone()))?,
        Expr::Add(a, b) => r.add(&eval(r, a)?, &eval(r, b)?),
        Expr::Sub(a, b) => r.add(&eval(r, a)?, &r.neg(&eval(r, b)?)),
        Expr::Mul(a, b) => r.mul(&eval(r, a)?, &eval(r, b)?),
        Expr::Neg(a) => r.neg(&eval(r, a)?),
        Expr::Div(a, b, pos) => {
            let d = r.as_constant(&eval(r, b)?).ok_or_else(|| err(*pos, "divisor is not a constant"))?;
            if d.is_zero() {
                return Err(err(*pos, "division by zero"));
            }
            r.mul(&eval(r, a)?, &r.constant(d.recip()))
        }
        Expr::Pow(a, n) => {
            let base = eval(r, a)?;
            let mut acc = r.constant(Rational::from_integer(1.into()));
            for _ in 0..*n {
                acc = r.mul(&acc, &base);
            }
            acc
        }
    })
}

/// Commutative evaluation in Q[z1, z2] with rational parameters.
struct PolyRing<'a> {
    params: &'a BTreeMap<String, Rational>,
    allow_vars: bool,
}

impl Ring for PolyRing<'_> {
    type V = Poly2;
    fn constant(&self, c: Rational) -> Poly2 {
        Poly2::constant(c)
    }
    fn ident(&self, name: &str) -> Option<Poly2> {
        match name {
            "z1" if self.allow_vars => Some(Poly2::z1()),
            "z2" if self.allow_vars => Some(Poly2::z2()),
            _ => self.params.get(name).cloned().map(Poly2::constant),
        }
    }
    fn add(&self, a: &Poly2, b: &Poly2) -> Poly2 {
        a + b
    }
    fn neg(&self, a: &Poly2) -> Poly2 {
        -a
    }
    fn mul(&self, a: &Poly2, b: &Poly2) -> Poly2 {
        a * b
    }
    fn as_constant(&self, a: &Poly2) -> Option<Rational> {
        if a.is_zero() {
            Some(Rational::zero())
        } else {
            a.constant_value()
        }
    }
}

/// Noncommutative evaluation in W; identifiers resolve through `bindings`
/// first, then to rational parameters.
struct GwaRing<'a> {
    w: &'a GwaAlgebra,
    bindings: &'a BTreeMap<String, GwaElem>,
    params: &'a BTreeMap<String, Rational>,
}

impl Ring for GwaRing<'_> {
    type V = GwaElem;
    fn constant(&self, c: Rational) -> GwaElem {
        GwaElem::from_poly(Poly2::constant(c))
    }
    fn ident(&self, name: &str) -> Option<GwaElem> {
        self.bindings.get(name).cloned().or_else(|| self.params.get(name).cloned().map(|c| self.constant(c)))
    }
    fn add(&self, a: &GwaElem, b: &GwaElem) -> GwaElem {
        a + b
    }
    fn neg(&self, a: &GwaElem) -> GwaElem {
        -a
    }
    fn mul(&self, a: &GwaElem, b: &GwaElem) -> GwaElem {
        self.w.multiply(a, b)
    }
    fn as_constant(&self, a: &GwaElem) -> Option<Rational> {
        if a.is_zero() {
            return Some(Rational::zero());
        }
        if a.parts().len() == 1 && a.parts().contains_key(&0) {
            a.coeff(0).constant_value()
        } else {
            None
        }
    }
}

const START: Pos = Pos { line: 1, col: 1 };

fn parse_expr_at(text: &str, start: Pos) -> Result<Expr> {
    let mut p = Parser::new(text, start)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    parse_expr_at(text, START)
}

fn poly_at(text: &str, start: Pos, params: &BTreeMap<String, Rational>) -> Result<Poly2> {
    eval(&PolyRing { params, allow_vars: true }, &parse_expr_at(text, start)?)
}

fn constant_of(p: &mut Parser, params: &BTreeMap<String, Rational>) -> Result<Rational> {
    let pos = p.pos();
    let e = p.expr()?;
    let v = eval(&PolyRing { params, allow_vars: false }, &e)?;
    PolyRing { params, allow_vars: false }.as_constant(&v).ok_or_else(|| err(pos, "expected a constant"))
}

/// Parses a polynomial in z1, z2 with the given parameter values.
pub fn parse_poly(text: &str, params: &BTreeMap<String, Rational>) -> Result<Poly2> {
    poly_at(text, START, params)
}

/// Evaluates `text` in W, resolving identifiers through `bindings` then `params`.
pub fn parse_gwa_elem(
    w: &GwaAlgebra,
    text: &str,
    bindings: &BTreeMap<String, GwaElem>,
    params: &BTreeMap<String, Rational>,
) -> Result<GwaElem> {
    gwa_at(w, text, START, bindings, params)
}

fn gwa_at(
    w: &GwaAlgebra,
    text: &str,
    start: Pos,
    bindings: &BTreeMap<String, GwaElem>,
    params: &BTreeMap<String, Rational>,
) -> Result<GwaElem> {
    eval(&GwaRing { w, bindings, params }, &parse_expr_at(text, start)?)
}

/// Bindings z1, z2, x, y for expressions written directly in W.
pub fn standard_bindings() -> BTreeMap<String, GwaElem> {
    BTreeMap::from([
        ("z1".to_string(), GwaElem::from_poly(Poly2::z1())),
        ("z2".to_string(), GwaElem::from_poly(Poly2::z2())),
        ("x".to_string(), GwaElem::x()),
        ("y".to_string(), GwaElem::y()),
    ])
}

fn generator(p: &mut Parser, params: &BTreeMap<String, Rational>) -> Result<AutGenerator> {
    let (name, pos) = p.ident()?;
    p.expect('(')?;
    let g = match name.as_str() {
        "elem1" | "elem2" => {
            let axis: u8 = if name == "elem1" { 1 } else { 2 };
            let arg_pos = p.pos();
            let shift = eval(&PolyRing { params, allow_vars: true }, &p.expr()?)?;
            AutGenerator::elementary(axis, shift).map_err(|e| match e {
                Error::InvalidGenerator(msg) => err(arg_pos, msg),
                other => other,
            })?
        }
        "affine" => {
            let mut m: [[Rational; 2]; 2] = Default::default();
            p.expect('[')?;
            for (r, row) in m.iter_mut().enumerate() {
                if r > 0 {
                    p.expect(',')?;
                }
                p.expect('[')?;
                row[0] = constant_of(p, params)?;
                p.expect(',')?;
                row[1] = constant_of(p, params)?;
                p.expect(']')?;
            }
            p.expect(']')?;
            p.expect(',')?;
            p.expect('[')?;
            let t0 = constant_of(p, params)?;
            p.expect(',')?;
            let t1 = constant_of(p, params)?;
            p.expect(']')?;
            AutGenerator::affine(m, [t0, t1]).map_err(|_| err(pos, "affine matrix is singular"))?
        }
        other => return Err(err(pos, format!("unknown generator `{other}`"))),
    };
    p.expect(')')?;
    Ok(g)
}

fn word_at(text: &str, start: Pos, params: &BTreeMap<String, Rational>) -> Result<AutWord> {
    let mut p = Parser::new(text, start)?;
    let mut factors = vec![generator(&mut p, params)?];
    while p.eat(';') {
        factors.push(generator(&mut p, params)?);
    }
    p.finish()?;
    Ok(AutWord::new(factors))
}

/// Parses an automorphism word such as `elem1(z2^2); affine([[2,0],[0,3]],[0,0])`.
pub fn parse_word(text: &str, params: &BTreeMap<String, Rational>) -> Result<AutWord> {
    word_at(text, START, params)
}

fn pair_at(text: &str, start: Pos, params: &BTreeMap<String, Rational>) -> Result<[Rational; 2]> {
    let mut p = Parser::new(text, start)?;
    let paren = p.eat('(');
    let a = constant_of(&mut p, params)?;
    p.expect(',')?;
    let b = constant_of(&mut p, params)?;
    if paren {
        p.expect(')')?;
    }
    p.finish()?;
    Ok([a, b])
}

/// One non-blank line with its position and comment stripped.
#[derive(Clone, Debug)]
pub struct Line {
    pub pos: Pos,
    pub text: String,
}

impl Line {
    /// Splits `key = value`, returning the value's starting position.
    fn key_value(&self) -> Option<(&str, &str, Pos)> {
        let eq = self.text.find('=')?;
        let key = self.text[..eq].trim();
        let rest = &self.text[eq + 1..];
        let col = self.pos.col + self.text[..eq + 1].chars().count();
        Some((key, rest, Pos { line: self.pos.line, col }))
    }
}

/// A file split into an unnamed preamble and `[name]` sections.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub comments: Vec<String>,
    pub sections: Vec<(String, Vec<Line>)>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = Document { comments: Vec::new(), sections: vec![(String::new(), Vec::new())] };
        for (n, raw) in text.lines().enumerate() {
            let code = raw.split('#').next().unwrap_or("");
            if code.trim().is_empty() {
                if let Some(c) = raw.trim_start().strip_prefix('#') {
                    doc.comments.push(c.trim().to_string());
                }
                continue;
            }
            let lead = code.len() - code.trim_start().len();
            let pos = Pos { line: n + 1, col: lead + 1 };
            let body = code.trim();
            if let Some(name) = body.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                if name.contains('[') {
                    return Err(err(pos, "malformed section header"));
                }
                doc.sections.push((name.trim().to_string(), Vec::new()));
                continue;
            }
            doc.sections.last_mut().expect("preamble").1.push(Line { pos, text: body.to_string() });
        }
        Ok(doc)
    }

    pub fn section(&self, name: &str) -> Option<&[Line]> {
        self.sections.iter().find(|(n, _)| n == name).map(|(_, l)| l.as_slice())
    }
}

/// A parsed instance: the algebra plus optional common-zero hint.
#[derive(Clone, Debug)]
pub struct Instance {
    pub algebra: GwaAlgebra,
    pub lambda: Option<[Rational; 2]>,
    pub parameters: BTreeMap<String, Rational>,
}

/// `phi`, `sigma` and `lambda` lines, with every other `name = value` line a
/// rational parameter. Values in `given` take precedence over the file.
fn instance_from_lines(lines: &[Line], given: &BTreeMap<String, Rational>) -> Result<Option<Instance>> {
    let mut params = given.clone();
    let mut phi = None;
    let mut sigma = None;
    let mut lambda = None;
    for line in lines {
        let (key, _, _) = line.key_value().ok_or_else(|| err(line.pos, "expected `name = value`"))?;
        if key.is_empty() || !key.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(err(line.pos, format!("invalid name `{key}`")));
        }
        match key {
            "phi" => phi = Some(line),
            "sigma" => sigma = Some(line),
            "lambda" => lambda = Some(line),
            "z1" | "z2" | "x" | "y" => return Err(err(line.pos, format!("`{key}` is reserved"))),
            _ => {}
        }
    }
    for line in lines {
        let (key, value, vpos) = line.key_value().expect("checked");
        if matches!(key, "phi" | "sigma" | "lambda") || given.contains_key(key) {
            continue;
        }
        let mut p = Parser::new(value, vpos)?;
        let c = constant_of(&mut p, &params)?;
        p.finish()?;
        params.insert(key.to_string(), c);
    }
    let (Some(phi), Some(sigma)) = (phi, sigma) else {
        return Ok(None);
    };
    let (_, v, pos) = phi.key_value().expect("checked");
    let phi = poly_at(v, pos, &params)?;
    let (_, v, pos) = sigma.key_value().expect("checked");
    let sigma = word_at(v, pos, &params)?;
    let lambda = match lambda {
        Some(l) => {
            let (_, v, pos) = l.key_value().expect("checked");
            Some(pair_at(v, pos, &params)?)
        }
        None => None,
    };
    Ok(Some(Instance { algebra: GwaAlgebra::new(sigma, phi), lambda, parameters: params }))
}

/// Parses an instance file; missing `phi` or `sigma` is a parse error.
pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_with(text, &BTreeMap::new())
}

pub fn parse_instance_with(text: &str, given: &BTreeMap<String, Rational>) -> Result<Instance> {
    let doc = Document::parse(text)?;
    let lines = doc.section("").unwrap_or(&[]);
    instance_from_lines(lines, given)?.ok_or_else(|| {
        let end = lines.last().map_or(START, |l| Pos { line: l.pos.line + 1, col: 1 });
        err(end, "instance needs both `phi` and `sigma`")
    })
}

pub(crate) fn instance_section(lines: &[Line], given: &BTreeMap<String, Rational>) -> Result<Option<Instance>> {
    instance_from_lines(lines, given)
}

/// Parses `p = 1, q = 1/3`.
pub fn parse_bindings(text: &str) -> Result<BTreeMap<String, Rational>> {
    parse_bindings_at(text, START)
}

pub(crate) fn parse_bindings_at(text: &str, start: Pos) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    let mut col = start.col;
    for part in text.split(',') {
        let pos = Pos { line: start.line, col };
        col += part.chars().count() + 1;
        let line = Line { pos, text: part.to_string() };
        let (key, value, vpos) = line.key_value().ok_or_else(|| err(pos, "expected `name = value`"))?;
        let mut p = Parser::new(value, vpos)?;
        let c = constant_of(&mut p, &out)?;
        p.finish()?;
        out.insert(key.to_string(), c);
    }
    Ok(out)
}

/// Evaluates a relation line `lhs` or `lhs = rhs` as lhs − rhs in W.
pub(crate) fn relation_at(
    w: &GwaAlgebra,
    line: &Line,
    bindings: &BTreeMap<String, GwaElem>,
    params: &BTreeMap<String, Rational>,
) -> Result<GwaElem> {
    match line.key_value() {
        Some((_, rhs, rpos)) => {
            let eq = line.text.find('=').expect("has =");
            let lhs = gwa_at(w, &line.text[..eq], line.pos, bindings, params)?;
            let rhs = gwa_at(w, rhs, rpos, bindings, params)?;
            Ok(&lhs - &rhs)
        }
        None => gwa_at(w, &line.text, line.pos, bindings, params),
    }
}

/// Evaluates `name = expr` map lines into W.
pub(crate) fn map_at(
    w: &GwaAlgebra,
    lines: &[Line],
    params: &BTreeMap<String, Rational>,
) -> Result<BTreeMap<String, GwaElem>> {
    let std = standard_bindings();
    let mut out = BTreeMap::new();
    for line in lines {
        let (key, value, vpos) = line.key_value().ok_or_else(|| err(line.pos, "expected `name = value`"))?;
        out.insert(key.to_string(), gwa_at(w, value, vpos, &std, params)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn none() -> BTreeMap<String, Rational> {
        BTreeMap::new()
    }

    #[test]
    fn polynomial_grammar() {
        let p = parse_poly("z1^2 + z2^2 - 1  # circle", &none()).unwrap();
        assert_eq!(p, &(&Poly2::z1().pow(2) + &Poly2::z2().pow(2)) - &Poly2::one());
        let q = parse_poly("-(3/4)*z1*(z2 - 2)", &none()).unwrap();
        assert_eq!(q, &Poly2::term(1, 0, rat(3) / rat(2)) - &Poly2::term(1, 1, ratio(3, 4)));
    }

    #[test]
    fn identity_instance() {
        let inst = parse_instance("phi = z1^2 + z2^2 - 1\nsigma = affine([[1,0],[0,1]],[0,0])\n").unwrap();
        assert!(inst.algebra.sigma().is_identity_map());
        assert_eq!(inst.lambda, None);
    }

    #[test]
    fn parameter_substitution() {
        let inst = parse_instance("q = 3/2\nphi = q*z1*z2\nsigma = elem1(z2)").unwrap();
        assert_eq!(inst.algebra.phi(), &Poly2::term(1, 1, ratio(3, 2)));
    }

    #[test]
    fn shift_in_own_variable_is_rejected() {
        let e = parse_instance("phi = z1\nsigma = elem1(z1)").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, col: 15, .. }), "{e:?}");
    }

    #[test]
    fn unbound_and_malformed() {
        assert_eq!(parse_instance("phi = r*z1\nsigma = elem1(z2)").unwrap_err(), Error::UnboundParameter("r".into()));
        let e = parse_instance("phi = z1 +\nsigma = elem1(z2)").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e:?}");
        let e = parse_poly("z1/(z2)", &none()).unwrap_err();
        assert!(matches!(e, Error::Parse { col: 3, .. }), "{e:?}");
        let e = parse_poly("1/(1-1)", &none()).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }), "{e:?}");
        assert!(parse_instance("phi = z1").is_err());
    }

    #[test]
    fn words_and_lambda() {
        let inst =
            parse_instance("phi = z1^2\nsigma = elem1(z2^2); affine([[2,1],[0,3]],[1,-1])\nlambda = (0, 0)").unwrap();
        assert_eq!(inst.algebra.sigma().factors().len(), 2);
        assert_eq!(inst.lambda, Some([rat(0), rat(0)]));
        assert_eq!(inst.algebra.jacobian(), rat(6));
    }

    #[test]
    fn noncommutative_evaluation() {
        let w = GwaAlgebra::new(AutWord::identity(), Poly2::z1());
        let e = parse_gwa_elem(&w, "y*x - z1", &standard_bindings(), &none()).unwrap();
        assert!(e.is_zero());
        let e = parse_gwa_elem(&w, "x*y", &standard_bindings(), &none()).unwrap();
        assert_eq!(e, GwaElem::from_poly(Poly2::z1()));
    }

    #[test]
    fn bindings_list() {
        let b = parse_bindings("p = 1, q = 1/3").unwrap();
        assert_eq!(b["q"], ratio(1, 3));
    }
}
